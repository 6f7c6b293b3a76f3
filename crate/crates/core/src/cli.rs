//! Command-line front end. Exit codes: 0 everything passed, 1 a
//! verification failed, 2 the input could not be read or parsed.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::catalog;
use crate::derivations::derivation_space;
use crate::graph::{self, DegenerationGraph};
use crate::report::{self, RunConfig, RunError, RunInputs};
use crate::text::{self, AlgebraFile, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "nilcert", version, about = "Exact checks for degenerations of nilpotent commutative algebras")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Base seed for every random probe.
    #[arg(long, global = true, env = "NILCERT_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Random samples for escape searches (Borel probes use a fifth).
    #[arg(long, global = true, default_value_t = 1000)]
    pub samples: usize,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Comma-separated t values for the floating cross-check, e.g. `1e-4,1e-3+1e-3i`.
    #[arg(long, global = true, value_delimiter = ',', default_value = "1e-4")]
    pub t_samples: Vec<String>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Print JSON on stdout instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every shipped witness and claim and compare the graph with the reference diagram.
    VerifyAll {
        /// Directory with table_c.wit, table_d.cert and figure_b.edges instead of the built-in copies.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Verify the witnesses in a file.
    Verify { file: PathBuf },
    /// Print the invariant fingerprint of an algebra.
    Invariants { file: PathBuf },
    /// Dimension and basis of the derivation algebra.
    Derivations { file: PathBuf },
    /// Catalog algebras with the same invariants.
    Identify { file: PathBuf },
    /// Emit the verified degeneration graph.
    Graph {
        #[arg(long, value_enum, default_value_t = Emit::Dot)]
        emit: Emit,
        #[arg(long, conflicts_with = "hasse")]
        closure: bool,
        #[arg(long)]
        hasse: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Dot,
    Json,
}

/// Failure record written to stderr as one JSON line.
#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub error: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl ErrorRecord {
    fn new(error: &'static str, message: impl Into<String>) -> Self {
        ErrorRecord { error, message: message.into(), file: None, line: None, column: None }
    }

    fn parse(file: &str, e: &ParseError) -> Self {
        ErrorRecord {
            error: "parse",
            message: e.kind.to_string(),
            file: Some(file.to_string()),
            line: e.line,
            column: Some(e.position + 1),
        }
    }
}

/// What a command produced: text for stdout, a JSON document, and an exit code.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: serde_json::Value,
}

pub fn parse_t_samples(items: &[String]) -> Result<Vec<Complex64>, ErrorRecord> {
    items
        .iter()
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<Complex64>()
                .map_err(|_| ErrorRecord::new("argument", format!("bad t sample `{s}`")))
        })
        .collect()
}

fn read(path: &Path) -> Result<String, ErrorRecord> {
    std::fs::read_to_string(path).map_err(|e| {
        let mut r = ErrorRecord::new("io", e.to_string());
        r.file = Some(path.display().to_string());
        r
    })
}

fn read_algebra(path: &Path) -> Result<AlgebraFile, ErrorRecord> {
    let text = read(path)?;
    AlgebraFile::parse(&text).map_err(|e| ErrorRecord::parse(&path.display().to_string(), &e))
}

fn run_config(common: &CommonArgs) -> Result<RunConfig, ErrorRecord> {
    Ok(RunConfig {
        seed: common.seed,
        borel_samples: (common.samples / 5).max(1),
        escape_samples: common.samples,
        t_samples: parse_t_samples(&common.t_samples)?,
        jobs: common.jobs,
        ..RunConfig::default()
    })
}

fn run_error(e: RunError) -> (i32, ErrorRecord) {
    match e {
        RunError::Parse { file, error } => (EXIT_INPUT, ErrorRecord::parse(file, &error)),
        RunError::Catalog(e) => (EXIT_INPUT, ErrorRecord::new("catalog", e.to_string())),
        RunError::Degeneration(e) => (EXIT_INPUT, ErrorRecord::new("witness", e.to_string())),
        RunError::Pool(m) => (EXIT_INPUT, ErrorRecord::new("argument", m)),
    }
}

/// Runs one command. Errors carry the exit code to use.
pub fn execute(cli: &Cli) -> Result<Outcome, (i32, ErrorRecord)> {
    let input = |r: ErrorRecord| (EXIT_INPUT, r);
    match &cli.command {
        Command::VerifyAll { data } => {
            let inputs = match data {
                None => RunInputs::shipped(),
                Some(dir) => RunInputs {
                    witnesses: read(&dir.join("table_c.wit")).map_err(input)?,
                    claims: read(&dir.join("table_d.cert")).map_err(input)?,
                    reference_edges: read(&dir.join("figure_b.edges")).map_err(input)?,
                },
            };
            let config = run_config(&cli.common).map_err(input)?;
            let rep = report::run(&inputs, &config).map_err(run_error)?;
            let code = if rep.passed { EXIT_OK } else { EXIT_FAILED };
            Ok(Outcome { code, text: summarize_run(&rep), json: serde_json::to_value(&rep).expect("report serializes") })
        }
        Command::Verify { file } => {
            let src = read(file).map_err(input)?;
            let witnesses =
                text::parse_witnesses(&src).map_err(|e| input(ErrorRecord::parse(&file.display().to_string(), &e)))?;
            let config = run_config(&cli.common).map_err(input)?;
            let mut text = String::new();
            let mut records = Vec::new();
            let mut ok = true;
            for w in &witnesses {
                let (v, numeric) = report::check_witness(w, &config).map_err(run_error)?;
                ok &= v.is_verified() && v.derivation_check.passed;
                let _ = writeln!(text, "{} {:?}", v.id(), v.status);
                if !v.exceptional_t.is_empty() {
                    let _ = writeln!(text, "  exceptional t: {}", v.exceptional_t.join(", "));
                }
                for e in v.entries.iter().filter(|e| e.status != crate::degeneration::EntryStatus::Ok) {
                    let _ = writeln!(text, "  c{:?}: {} ({:?})", e.index, e.value, e.status);
                }
                if let Some(dev) = numeric.as_ref().and_then(|n| n.max_deviation()) {
                    let _ = writeln!(text, "  numeric max deviation: {dev:.3e}");
                }
                records.push(json!({ "verdict": v, "numeric": numeric }));
            }
            Ok(Outcome { code: if ok { EXIT_OK } else { EXIT_FAILED }, text, json: json!({ "witnesses": records }) })
        }
        Command::Invariants { file } => {
            let a = read_algebra(file).map_err(input)?;
            let fp = catalog::fingerprint(&a.table);
            let text = format!(
                "dim Der = {}\ndim A^k (k = 2..) = {:?}\ndim Ann = {}\nnilpotency index = {}\n",
                fp.dim_der,
                fp.dims_of_powers,
                fp.dim_ann,
                fp.nilpotency_index.map_or("none".to_string(), |k| k.to_string())
            );
            Ok(Outcome { code: EXIT_OK, text, json: json!({ "name": a.name, "fingerprint": fp }) })
        }
        Command::Derivations { file } => {
            let a = read_algebra(file).map_err(input)?;
            let der = derivation_space(&a.table);
            let basis: Vec<Vec<Vec<String>>> = der
                .basis
                .iter()
                .map(|m| m.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect())
                .collect();
            let mut text = format!("{}\n", der.dimension);
            for (n, m) in basis.iter().enumerate() {
                let _ = writeln!(text, "D_{}:", n + 1);
                for row in m {
                    let _ = writeln!(text, "  [{}]", row.join(", "));
                }
            }
            Ok(Outcome { code: EXIT_OK, text, json: json!({ "name": a.name, "dimension": der.dimension, "basis": basis }) })
        }
        Command::Identify { file } => {
            let a = read_algebra(file).map_err(input)?;
            match catalog::identify(&a.table) {
                Ok(c) if !c.is_empty() => {
                    Ok(Outcome { code: EXIT_OK, text: format!("{}\n", c.join(" ")), json: json!({ "candidates": c }) })
                }
                Ok(_) => Ok(Outcome { code: EXIT_FAILED, text: "no catalog match\n".into(), json: json!({ "candidates": [] }) }),
                Err(e) => Err((EXIT_FAILED, ErrorRecord::new("not-in-variety", e.to_string()))),
            }
        }
        Command::Graph { emit, closure, hasse } => {
            let g = verified_graph().map_err(|r| (EXIT_FAILED, r))?;
            let g = if *closure {
                g.closure_graph()
            } else if *hasse {
                g.hasse_graph()
            } else {
                g
            };
            let json = serde_json::to_value(&g).expect("graph serializes");
            let text = match emit {
                Emit::Dot => g.to_dot(),
                Emit::Json => g.to_json() + "\n",
            };
            Ok(Outcome { code: EXIT_OK, text, json })
        }
    }
}

/// Graph of the shipped witnesses, all of which must verify.
pub fn verified_graph() -> Result<DegenerationGraph, ErrorRecord> {
    let witnesses = text::parse_witnesses(crate::data::WITNESSES).map_err(|e| ErrorRecord::parse("table_c.wit", &e))?;
    let verdicts = witnesses
        .iter()
        .map(crate::degeneration::verify)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| ErrorRecord::new("witness", e.to_string()))?;
    graph::build(&verdicts).map_err(|e| ErrorRecord::new("graph", e.to_string()))
}

fn summarize_run(rep: &report::RunReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "witnesses:");
    for w in &rep.witnesses {
        let mut notes = Vec::new();
        if w.implied_by_transitivity {
            notes.push("implied by transitivity".to_string());
        }
        if !w.verdict.exceptional_t.is_empty() {
            notes.push(format!("exceptional t: {}", w.verdict.exceptional_t.join(", ")));
        }
        if let Some(n) = &w.numeric {
            match n.max_deviation() {
                Some(d) => notes.push(format!("numeric {d:.1e}")),
                None => notes.push("numeric ill-conditioned".to_string()),
            }
        }
        let _ = writeln!(s, "  {:<12} {:?}  {}", w.id, w.verdict.status, notes.join("; "));
    }
    let _ = writeln!(s, "claims:");
    for c in &rep.claims {
        let targets: Vec<String> = c.targets.iter().map(|t| format!("{} {:?}", t.target, t.status)).collect();
        let _ = writeln!(s, "  {:<24} {}  [{}]", c.claim, if c.passed { "PASS" } else { "FAIL" }, targets.join(", "));
    }
    let _ = writeln!(s, "graph: {:?}", rep.graph.status);
    if let Some(d) = &rep.graph.diff {
        for (label, edges) in [
            ("missing from closure", &d.closure_missing),
            ("extra in closure", &d.closure_extra),
            ("reference edges not in Hasse reduction", &d.reduction_missing),
            ("Hasse edges not in reference", &d.reduction_extra),
            ("redundant reference edges", &d.reference_redundant),
        ] {
            if !edges.is_empty() {
                let list: Vec<String> = edges.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                let _ = writeln!(s, "  {label}: {}", list.join(", "));
            }
        }
    }
    let _ = writeln!(s, "unexplained non-degenerations: {}", rep.screening.unexplained.len());
    for group in &rep.fingerprint_collisions {
        let _ = writeln!(s, "fingerprint collision: {}", group.join(", "));
    }
    let _ = writeln!(s, "seed: {}", rep.seeds.base);
    let _ = writeln!(s, "{}", if rep.passed { "ALL PASSED" } else { "FAILED" });
    s
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if !e.use_stderr() {
                let _ = e.print();
                return EXIT_OK;
            }
            eprintln!("{}", json!(ErrorRecord::new("argument", e.to_string().trim().to_string())));
            return EXIT_INPUT;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.common.report {
                let body = serde_json::to_string_pretty(&out.json).expect("json") + "\n";
                if let Err(e) = std::fs::write(path, body) {
                    let mut r = ErrorRecord::new("io", e.to_string());
                    r.file = Some(path.display().to_string());
                    eprintln!("{}", json!(r));
                    return EXIT_INPUT;
                }
            }
            if cli.common.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                print!("{}", out.text);
            }
            out.code
        }
        Err((code, record)) => {
            eprintln!("{}", json!(record));
            code
        }
    }
}
