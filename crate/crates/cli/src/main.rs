//! `linset`: build linear sets, analyze subspaces, certify bounds, run sweeps.
//!
//! Exit status: 0 when every verdict passes, 1 on a bound or prediction
//! violation, 2 on a usage or input error.

mod eval;
mod recipe;

use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use linset::bounds::{self, DEFAULT_SEARCH_BUDGET};
use linset::fields::Fe;
use linset::linset::{self as ls, FqSubspace, SubspaceRecord};
use linset::oracle::{self, OracleConfig};
use linset::projgeo::ProjSubspace;

use eval::Row;
use recipe::Recipe;

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "linset", version, about = "Exact computation with F_q-linear sets in PG(d, q^n)")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest field order that may be built or enumerated.
    #[arg(long, global = true)]
    cap: Option<u64>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Candidate subspaces examined by each canonical-section search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    /// Run the rank bound outside its proved range (n prime, n <= q).
    #[arg(long, global = true)]
    override_rank_gate: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Build a construction and check its predicted size and weights.
    Construct {
        #[command(subcommand)]
        recipe: Recipe,
    },
    /// Report size, weights and distribution of a subspace file.
    Analyze { file: PathBuf },
    /// Certify a bound or property of a subspace file.
    Verify {
        #[command(subcommand)]
        check: VerifyCmd,
    },
    /// Build, check and classify every instance of a suite file.
    Sweep { suite: PathBuf },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Size bound at an (r−1)-space meeting L_U in a canonical subgeometry.
    Subgeometry {
        file: PathBuf,
        /// Subspace file whose basis spans Ω over F_{q^n}; searched for when absent.
        #[arg(long)]
        omega: Option<PathBuf>,
    },
    /// Size bound from q, n, d and k.
    Rank { file: PathBuf },
    /// Counting identities, cross-checked against brute-force enumeration.
    Identities { file: PathBuf },
    /// d-minimum and (r, d)-minimum classification.
    Classify { file: PathBuf },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(linset::Error),
}

impl From<linset::Error> for CliError {
    fn from(e: linset::Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_violation() => 1,
            _ => 2,
        }
    }
}

/// A named summary row plus the flags only the table shows.
struct Line {
    name: String,
    row: Row,
    equality: Option<bool>,
    pass: bool,
}

struct Output {
    doc: Value,
    lines: Vec<Line>,
    pass: bool,
}

struct Ctx {
    format: Format,
    cap: Option<u64>,
    seed: u64,
    budget: u64,
    override_rank_gate: bool,
}

impl Ctx {
    fn rows_wanted(&self) -> bool {
        self.format != Format::Json
    }
}

fn tool() -> Value {
    json!({ "name": "linset", "version": env!("CARGO_PKG_VERSION") })
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// A bare subspace record, or any document carrying one under `subspace`.
fn read_record(path: &Path) -> Result<SubspaceRecord, CliError> {
    let mut v = read_json(path)?;
    if let Some(inner) = v.get_mut("subspace") {
        v = inner.take();
    }
    serde_json::from_value(v).map_err(|e| CliError::Usage(format!("{}: not a subspace record: {e}", path.display())))
}

fn load(path: &Path, ctx: &Ctx) -> Result<FqSubspace, CliError> {
    Ok(FqSubspace::from_record(&read_record(path)?, ctx.cap)?)
}

fn construct(recipe: &Recipe, ctx: &Ctx) -> Result<Output, CliError> {
    let inst = recipe.build(ctx.cap, ctx.seed)?;
    let ev = eval::evaluate(&inst)?;
    let mut lines = Vec::new();
    if ctx.rows_wanted() {
        let class = bounds::classify_minimum(&inst.subspace, ctx.budget)?;
        let cert = eval::best_bound(&inst.subspace, &ev.report, Some(&class), ctx.budget)?;
        lines.push(Line {
            name: inst.kind.into(),
            row: eval::row(&inst.subspace, ev.report.size, cert.as_ref(), Some(&class)),
            equality: cert.as_ref().map(|c| c.equality),
            pass: ev.pass,
        });
    }
    let doc = json!({
        "tool": tool(),
        "construction": inst.kind,
        "params": inst.params,
        "subspace": inst.subspace.record(),
        "prediction": inst.built.as_ref().map(|b| &b.prediction),
        "report": ev.report,
        "checks": ev.checks,
        "verdict": verdict(ev.pass),
    });
    Ok(Output { doc, lines, pass: ev.pass })
}

fn analyze(path: &Path, ctx: &Ctx) -> Result<Output, CliError> {
    let u = load(path, ctx)?;
    let report = ls::report(&u)?;
    let pass = report.identities.all();
    let mut lines = Vec::new();
    if ctx.rows_wanted() {
        let class = bounds::classify_minimum(&u, ctx.budget)?;
        let cert = eval::best_bound(&u, &report, Some(&class), ctx.budget)?;
        lines.push(Line {
            name: path.display().to_string(),
            row: eval::row(&u, report.size, cert.as_ref(), Some(&class)),
            equality: cert.as_ref().map(|c| c.equality),
            pass,
        });
    }
    let doc = json!({
        "tool": tool(),
        "subspace": u.record(),
        "field_of_linearity": ls::max_field_of_linearity(&u)?,
        "report": report,
        "verdict": verdict(pass),
    });
    Ok(Output { doc, lines, pass })
}

fn omega_from(path: &Path, u: &FqSubspace) -> Result<ProjSubspace, CliError> {
    let rec = read_record(path)?;
    let t = u.tower();
    if rec.tower != t.record() || rec.ambient_dim != u.ambient().d() {
        return Err(CliError::Usage(format!("{}: Ω must use the same tower and ambient dimension", path.display())));
    }
    let vectors = rec
        .basis
        .iter()
        .map(|v| v.iter().map(|c| t.from_coeffs(c)).collect::<linset::Result<Vec<Fe>>>())
        .collect::<linset::Result<Vec<_>>>()?;
    Ok(ProjSubspace::span(t, u.ambient().dim(), &vectors))
}

fn verify(check: &VerifyCmd, ctx: &Ctx) -> Result<Output, CliError> {
    let (name, file) = match check {
        VerifyCmd::Subgeometry { file, .. } => ("subgeometry", file),
        VerifyCmd::Rank { file } => ("rank", file),
        VerifyCmd::Identities { file } => ("identities", file),
        VerifyCmd::Classify { file } => ("classify", file),
    };
    let u = load(file, ctx)?;
    let line = |row: Row, equality: Option<bool>, pass: bool| Line { name: name.into(), row, equality, pass };
    let (body, lines, pass) = match check {
        VerifyCmd::Subgeometry { omega, .. } => {
            let omega = match omega {
                Some(p) => omega_from(p, &u)?,
                None => {
                    let rep = ls::report(&u)?;
                    eval::default_omega(&u, &rep, ctx.budget)?
                        .ok_or_else(|| CliError::Usage("no canonical subgeometry section found".into()))?
                }
            };
            let cert = bounds::verify_subgeometry_bound(&u, &omega)?;
            let l = line(eval::row(&u, cert.size, Some(&cert), None), Some(cert.equality), true);
            (json!({ "certificate": cert }), vec![l], true)
        }
        VerifyCmd::Rank { .. } => {
            let cert = bounds::verify_rank_bound(&u, ctx.override_rank_gate, ctx.budget)?;
            let l = line(eval::row(&u, cert.size, Some(&cert), None), Some(cert.equality), true);
            (json!({ "certificate": cert, "gate_overridden": ctx.override_rank_gate }), vec![l], true)
        }
        VerifyCmd::Identities { .. } => {
            let report = ls::report(&u)?;
            let cfg = OracleConfig::default();
            let oracle_agrees = match oracle::exhaustive_report(&u, &cfg) {
                Ok(slow) => Some(slow.distribution == report.distribution && slow.size == report.size),
                Err(linset::Error::CapExceeded { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let pass = report.identities.all() && oracle_agrees != Some(false);
            let l = line(eval::row(&u, report.size, None, None), None, pass);
            (json!({ "identities": report.identities, "oracle_agrees": oracle_agrees }), vec![l], pass)
        }
        VerifyCmd::Classify { .. } => {
            let class = bounds::classify_minimum(&u, ctx.budget)?;
            let l = line(eval::row(&u, class.size, None, Some(&class)), None, true);
            (json!({ "class": eval::class_label(&class), "classification": class }), vec![l], true)
        }
    };
    let mut doc = json!({ "tool": tool(), "check": name, "verdict": verdict(pass) });
    doc.as_object_mut().expect("object").extend(body.as_object().expect("object").clone());
    Ok(Output { doc, lines, pass })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Suite {
    name: String,
    instances: Vec<Entry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    name: String,
    build: Recipe,
    #[serde(default)]
    expect: Expect,
}

/// Values an entry must reproduce; absent fields are not checked.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Expect {
    size: Option<u64>,
    equality: Option<bool>,
    class: Option<String>,
}

fn sweep(path: &Path, ctx: &Ctx) -> Result<Output, CliError> {
    let suite: Suite = serde_json::from_value(read_json(path)?)
        .map_err(|e| CliError::Usage(format!("{}: not a suite: {e}", path.display())))?;
    let mut results = Vec::new();
    let mut lines = Vec::new();
    let mut all = true;
    for entry in &suite.instances {
        let inst = entry.build.build(ctx.cap, ctx.seed)?;
        let ev = eval::evaluate(&inst)?;
        let class = bounds::classify_minimum(&inst.subspace, ctx.budget)?;
        let cert = eval::best_bound(&inst.subspace, &ev.report, Some(&class), ctx.budget)?;
        let label = eval::class_label(&class);
        let mut mismatches = Vec::new();
        if let Some(s) = entry.expect.size.filter(|&s| s != ev.report.size) {
            mismatches.push(format!("size {} expected {s}", ev.report.size));
        }
        let equality = cert.as_ref().map(|c| c.equality);
        if let Some(e) = entry.expect.equality.filter(|&e| Some(e) != equality) {
            mismatches.push(format!("equality {equality:?} expected {e}"));
        }
        if let Some(c) = entry.expect.class.as_ref().filter(|&c| *c != label) {
            mismatches.push(format!("class {label} expected {c}"));
        }
        let pass = ev.pass && mismatches.is_empty();
        all &= pass;
        results.push(json!({
            "name": entry.name,
            "construction": inst.kind,
            "params": inst.params,
            "prediction": inst.built.as_ref().map(|b| &b.prediction),
            "report": ev.report,
            "checks": ev.checks,
            "certificate": cert,
            "class": label,
            "classification": class,
            "mismatches": mismatches,
            "verdict": verdict(pass),
        }));
        lines.push(Line {
            name: entry.name.clone(),
            row: eval::row(&inst.subspace, ev.report.size, cert.as_ref(), Some(&class)),
            equality,
            pass,
        });
    }
    let doc = json!({ "tool": tool(), "suite": suite.name, "results": results, "verdict": verdict(all) });
    Ok(Output { doc, lines, pass: all })
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".into(), |x| x.to_string())
}

fn write_table(out: &mut impl Write, lines: &[Line]) -> io::Result<()> {
    let header = ["name", "q", "n", "d", "k", "size", "bound", "slack", "class", "equality", "verdict"];
    let cells: Vec<Vec<String>> = lines
        .iter()
        .map(|l| {
            let r = &l.row;
            vec![
                l.name.clone(),
                r.q.to_string(),
                r.n.to_string(),
                r.d.to_string(),
                r.k.to_string(),
                r.size.to_string(),
                opt(r.bound),
                opt(r.slack),
                r.class.clone(),
                opt(l.equality),
                verdict(l.pass).to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| cells.iter().map(|c| c[i].chars().count()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let fmt_line = |row: Vec<&str>| {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", fmt_line(header.to_vec()))?;
    for c in &cells {
        writeln!(out, "{}", fmt_line(c.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn emit(format: Format, output: &Output) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &output.doc)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for l in &output.lines {
                w.serialize(&l.row)?;
            }
            w.flush()
        }
        Format::Table => write_table(&mut out, &output.lines),
    }
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let ctx = Ctx {
        format: cli.format,
        cap: cli.cap,
        seed: cli.seed,
        budget: cli.budget,
        override_rank_gate: cli.override_rank_gate,
    };
    match &cli.command {
        Command::Construct { recipe } => construct(recipe, &ctx),
        Command::Analyze { file } => analyze(file, &ctx),
        Command::Verify { check } => verify(check, &ctx),
        Command::Sweep { suite } => sweep(suite, &ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(output) => {
            match emit(format, &output) {
                Ok(()) => {}
                // The reader went away; nothing left to report to.
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                Err(e) => {
                    eprintln!("linset: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if output.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("linset: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
