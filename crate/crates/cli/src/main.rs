//! `expansive`: command-line front end for the structure decomposition.
//!
//! Exit codes: 0 success, 2 domain-negative (not expansive, verification
//! failed), 1 input error, 64 usage error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use expansive_core::corpus::{all_examples, example, run_example, ExampleRecord};
use expansive_core::interchange::{
    classification_to_value, decomposition_to_value, parse_matrix, parse_pair, planted_to_value, report_to_value,
    selfadjoint_to_value, InterchangeError,
};
use expansive_core::oracle::{plant, PlantSpec};
use expansive_core::structure::format_blocked;
use expansive_core::{
    decompose_with, selfadjoint_decompose, unitary_compression, verify, ComplementOrder, Dims, Error, Matrix,
    Subspace, VerificationReport,
};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_NEGATIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "expansive", version, about = "Exact structure decomposition of H-expansive matrices")]
struct Cli {
    /// Emit JSON instead of the human-readable report.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a pair and print the inertia of its defect.
    Check { pair: String },
    /// Compute the structure decomposition.
    Decompose {
        pair: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Pick the complement M1 from a seeded random order.
        #[arg(long, value_name = "SEED")]
        randomize_complement: Option<u64>,
    },
    /// Check a candidate transform against every identity of the theorem.
    Verify {
        pair: String,
        #[arg(long)]
        transform: String,
        /// Block sizes m,m1,m2,m3.
        #[arg(long, value_parser = parse_dims4)]
        dims: Dims,
    },
    /// Emit a random pair with a planted decomposition.
    Generate {
        /// Block sizes m,m1,m3.
        #[arg(long, value_parser = parse_dims3)]
        dims: (usize, usize, usize),
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Block form of an H-selfadjoint pair relative to an invariant subspace.
    Selfadjoint {
        pair: String,
        /// Matrix whose columns span the invariant subspace.
        #[arg(long)]
        invariant: String,
    },
    /// Run the embedded worked examples.
    Examples {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=5))]
        id: Option<u64>,
    },
}

fn parse_sizes(s: &str, k: usize) -> Result<Vec<usize>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != k {
        return Err(format!("expected {k} comma-separated sizes, got {}", parts.len()));
    }
    parts
        .iter()
        .map(|p| p.parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
        .collect()
}

fn parse_dims4(s: &str) -> Result<Dims, String> {
    let v = parse_sizes(s, 4)?;
    Ok(Dims::new(v[0], v[1], v[2], v[3]))
}

fn parse_dims3(s: &str) -> Result<(usize, usize, usize), String> {
    let v = parse_sizes(s, 3)?;
    Ok((v[0], v[1], v[2]))
}

/// A failure that ends the command with a given exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            msg: msg.into(),
        }
    }
}

impl From<InterchangeError> for Failure {
    fn from(e: InterchangeError) -> Self {
        Failure::input(format!("error[{}]: {e}", e.code()))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotExpansive { .. } | Error::TheoremViolation { .. } => EXIT_NEGATIVE,
            _ => EXIT_INPUT,
        };
        Failure { code, msg: format!("error: {e}") }
    }
}

fn read_input(path: &str) -> Result<Vec<u8>, Failure> {
    if path == "-" {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::input(format!("error: reading stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| Failure::input(format!("error: reading {path}: {e}")))
    }
}

struct Output {
    json: bool,
    text: String,
}

impl Output {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn emit_json(&mut self, v: &Value) {
        self.line(serde_json::to_string_pretty(v).expect("serializable"));
    }
}

fn report_lines(out: &mut Output, r: &VerificationReport) {
    for c in &r.checks {
        out.line(format!("  {:<28} {}", c.name, if c.pass { "pass" } else { "FAIL" }));
        if let Some(w) = &c.witness {
            for l in w.to_string().lines() {
                out.line(format!("      {l}"));
            }
        }
    }
}

fn write_file(path: &PathBuf, v: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
    fs::write(path, text).map_err(|e| Failure::input(format!("error: writing {}: {e}", path.display())))
}

fn cmd_check(out: &mut Output, pair: &str) -> Result<u8, Failure> {
    let doc = parse_pair(&read_input(pair)?)?;
    let c = doc.pair.classify();
    if out.json {
        let mut v = classification_to_value(&c);
        v["defect"] = expansive_core::interchange::matrix_to_value(&doc.pair.defect());
        out.emit_json(&v);
    } else {
        out.line(format!("expansive: {}", c.expansive));
        out.line(format!("unitary: {}", c.unitary));
        out.line(format!("selfadjoint: {}", c.selfadjoint));
        out.line(format!("defect inertia: {}", c.defect_inertia));
        if !c.expansive {
            out.line(format!("defect has {} negative eigenvalue(s)", c.defect_inertia.neg));
        }
    }
    Ok(if c.expansive { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_decompose(out: &mut Output, pair: &str, file: Option<&PathBuf>, seed: Option<u64>) -> Result<u8, Failure> {
    let doc = parse_pair(&read_input(pair)?)?;
    let order = seed.map_or(ComplementOrder::Canonical, ComplementOrder::Seeded);
    let d = decompose_with(&doc.pair, order)?;
    let v = decomposition_to_value(&d);
    if let Some(path) = file {
        write_file(path, &v)?;
    }
    if out.json {
        out.emit_json(&v);
    } else {
        let sizes = d.dims.sizes();
        out.line(format!("dims (m, m1, m2, m3) = {}", d.dims));
        out.line("S =");
        out.line(d.s.to_string());
        out.line("S^-1 A S =");
        out.line(format_blocked(&d.a_transformed, &sizes));
        out.line("S* H S =");
        out.line(format_blocked(&d.h_transformed, &sizes));
        let c = unitary_compression(&d);
        out.line(format!("unitary compression (unitary part: {}):", c.is_unitary_part));
        out.line(format!("A22 =\n{}", c.a22));
        out.line(format!("H22 =\n{}", c.h22));
        out.line("checks:");
        report_lines(out, &d.report);
    }
    Ok(EXIT_OK)
}

fn cmd_verify(out: &mut Output, pair: &str, transform: &str, dims: Dims) -> Result<u8, Failure> {
    let doc = parse_pair(&read_input(pair)?)?;
    let s = parse_matrix(&read_input(transform)?)?;
    let r = verify(&doc.pair, &s, dims)?;
    if out.json {
        out.emit_json(&report_to_value(&r));
    } else {
        out.line(format!("dims (m, m1, m2, m3) = {dims}"));
        report_lines(out, &r);
        out.line(if r.all_pass() { "all checks pass" } else { "verification failed" });
    }
    Ok(if r.all_pass() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_generate(out: &mut Output, dims: (usize, usize, usize), seed: u64, bound: i64, file: Option<&PathBuf>) -> Result<u8, Failure> {
    let spec = PlantSpec::new(dims.0, dims.1, dims.2, seed).with_bound(bound);
    let p = plant(spec)?;
    let v = planted_to_value(&p, Some(format!("planted m={} m1={} m3={} seed={seed}", dims.0, dims.1, dims.2)));
    match file {
        Some(path) => {
            write_file(path, &v)?;
            if out.json {
                out.emit_json(&v);
            } else {
                out.line(format!("wrote n = {} pair with dims {} to {}", spec.n(), p.dims, path.display()));
            }
        }
        None => out.emit_json(&v),
    }
    Ok(EXIT_OK)
}

fn cmd_selfadjoint(out: &mut Output, pair: &str, invariant: &str) -> Result<u8, Failure> {
    let doc = parse_pair(&read_input(pair)?)?;
    let basis = parse_matrix(&read_input(invariant)?)?;
    let n = Subspace::span(&basis, doc.pair.n())?;
    let d = selfadjoint_decompose(&doc.pair, &n)?;
    if out.json {
        out.emit_json(&selfadjoint_to_value(&d));
    } else {
        let sizes = d.dims.sizes();
        out.line(format!("dims (m, m1, m2, m3) = {}", d.dims));
        out.line("S^-1 A S =");
        out.line(format_blocked(&d.a_transformed, &sizes));
        out.line("S* H S =");
        out.line(format_blocked(&d.h_transformed, &sizes));
        out.line("checks:");
        report_lines(out, &d.report);
    }
    Ok(EXIT_OK)
}

fn cmd_examples(out: &mut Output, id: Option<u64>) -> Result<u8, Failure> {
    let records: Vec<ExampleRecord> = match id {
        Some(k) => example(k as usize).into_iter().collect(),
        None => all_examples(),
    };
    let mut all_ok = true;
    let mut json_runs = Vec::new();
    for rec in &records {
        let run = run_example(rec);
        all_ok &= run.pass();
        let decomp = expansive_core::decompose(&rec.doc.pair).ok();
        if out.json {
            let outcomes: Vec<Value> = run.outcomes.iter().map(|(n, ok)| json!({ "name": n, "pass": ok })).collect();
            let mut v = json!({ "id": rec.id, "pass": run.pass(), "outcomes": outcomes });
            if let Some(d) = &decomp {
                let c = unitary_compression(d);
                v["dims"] = json!(d.dims.sizes());
                v["compression"] = json!({
                    "A22": expansive_core::interchange::matrix_to_value(&c.a22),
                    "H22": expansive_core::interchange::matrix_to_value(&c.h22),
                    "is_unitary_part": c.is_unitary_part,
                });
            }
            if let Some(r) = &run.reference_s_report {
                v["reference_transform"] = report_to_value(r);
            }
            json_runs.push(v);
            continue;
        }
        let name = rec.doc.name.as_deref().unwrap_or("");
        out.line(format!("example {}: {}  [{}]", rec.id, name, if run.pass() { "pass" } else { "FAIL" }));
        for (n, ok) in &run.outcomes {
            out.line(format!("  {:<20} {}", n, if *ok { "pass" } else { "FAIL" }));
        }
        if let Some(d) = &decomp {
            let c = unitary_compression(d);
            out.line(format!("  dims {}", d.dims));
            out.line(format!("  A22 = {}", one_line(&c.a22)));
            out.line(format!("  H22 = {}", one_line(&c.h22)));
        }
        if let Some(r) = &run.reference_s_report {
            let note = if r.all_pass() {
                "passes verify".to_string()
            } else {
                format!("fails {}", r.failed().join(", "))
            };
            out.line(format!("  reference transform (informational): {note}"));
        }
    }
    if out.json {
        out.emit_json(&Value::Array(json_runs));
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn one_line(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn run(cli: Cli) -> Result<(u8, String), Failure> {
    let mut out = Output {
        json: cli.json,
        text: String::new(),
    };
    let code = match &cli.command {
        Command::Check { pair } => cmd_check(&mut out, pair)?,
        Command::Decompose {
            pair,
            out: file,
            randomize_complement,
        } => cmd_decompose(&mut out, pair, file.as_ref(), *randomize_complement)?,
        Command::Verify { pair, transform, dims } => cmd_verify(&mut out, pair, transform, *dims)?,
        Command::Generate { dims, seed, bound, out: file } => cmd_generate(&mut out, *dims, *seed, *bound, file.as_ref())?,
        Command::Selfadjoint { pair, invariant } => cmd_selfadjoint(&mut out, pair, invariant)?,
        Command::Examples { id } => cmd_examples(&mut out, *id)?,
    };
    Ok((code, out.text))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((code, text)) => {
            let _ = io::stdout().write_all(text.as_bytes());
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("{}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
