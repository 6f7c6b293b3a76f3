//! The full verification run behind `verify-all`: every witness, every
//! claim, the graph comparison and the screening battery, assembled into one
//! machine-readable report.

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog;
use crate::certificates::{self, ClaimOutcome, NonDegenerationClaim};
use crate::data;
use crate::degeneration::{self, DegenerationWitness, NumericReport, Verdict, DEFAULT_CONDITION_BOUND};
use crate::graph::{self, DegenerationGraph, Edge, EdgeSet, GraphDiff};
use crate::text::{self, ParseError};

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    /// Random flag-preserving matrices per source.
    pub borel_samples: usize,
    /// Random bases per target without an invariant certificate.
    pub escape_samples: usize,
    pub t_samples: Vec<Complex64>,
    pub condition_bound: f64,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            borel_samples: 200,
            escape_samples: 1000,
            t_samples: vec![Complex64::new(1e-4, 0.0)],
            condition_bound: DEFAULT_CONDITION_BOUND,
            jobs: 0,
        }
    }
}

/// Input files of a run, as text.
#[derive(Clone, Debug)]
pub struct RunInputs {
    pub witnesses: String,
    pub claims: String,
    pub reference_edges: String,
}

impl RunInputs {
    pub fn shipped() -> Self {
        RunInputs {
            witnesses: data::WITNESSES.to_string(),
            claims: data::CLAIMS.to_string(),
            reference_edges: data::REFERENCE_EDGES.to_string(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{file}: {error}")]
    Parse { file: &'static str, error: ParseError },
    #[error(transparent)]
    Degeneration(#[from] degeneration::DegenerationError),
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    pub id: String,
    pub verdict: Verdict,
    /// Present in the reference edge list.
    pub in_reference: bool,
    /// The edge also follows from other verified edges.
    pub implied_by_transitivity: bool,
    pub numeric: Option<NumericReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GraphStatus {
    /// Hasse reduction equals the reference edge set.
    Equal,
    /// Same order; the reference additionally lists transitively implied
    /// edges.
    EqualUpToRedundantReferenceEdges,
    Differs,
    /// Some witness failed, so no graph was built.
    NotBuilt,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub status: GraphStatus,
    pub error: Option<String>,
    pub edges: usize,
    pub closure_edges: usize,
    pub hasse_edges: Vec<Edge>,
    pub reference_edges: usize,
    pub sources: Vec<String>,
    pub diff: Option<GraphDiff>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScreeningSummary {
    /// Non-edges of the closure with no invariant or claim explaining them.
    pub unexplained: Vec<Edge>,
    /// Reference edges the screening battery rules out (should be empty).
    pub contradicted_reference_edges: Vec<Edge>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeedRecord {
    pub base: u64,
    /// How per-task streams are derived from `base`.
    pub derivation: &'static str,
    pub tasks: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Environment {
    pub version: &'static str,
    pub os: &'static str,
    pub arch: &'static str,
    pub threads: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub witnesses_ms: u128,
    pub claims_ms: u128,
    pub graph_ms: u128,
    pub screening_ms: u128,
    pub total_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub passed: bool,
    pub witnesses: Vec<WitnessRecord>,
    pub claims: Vec<ClaimOutcome>,
    pub graph: GraphSummary,
    pub screening: ScreeningSummary,
    /// Groups of catalog algebras that the invariant fingerprint cannot
    /// separate.
    pub fingerprint_collisions: Vec<Vec<String>>,
    pub assumptions: Vec<&'static str>,
    pub config: ConfigRecord,
    pub seeds: SeedRecord,
    pub environment: Environment,
    pub timings: Timings,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigRecord {
    pub borel_samples: usize,
    pub escape_samples: usize,
    pub t_samples: Vec<[f64; 2]>,
    pub condition_bound: f64,
}

impl RunReport {
    /// JSON without the timing block, which is the only part that varies
    /// between runs with equal seed and inputs.
    pub fn deterministic_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("timings");
            if let Some(env) = obj.get_mut("environment").and_then(|e| e.as_object_mut()) {
                env.remove("threads");
            }
        }
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub const ASSUMPTIONS: &[&str] = &[
    "`A_1^k = 0` is read as the k-th power of the whole algebra, which does not depend on the basis",
    "a parametric basis is accepted when its determinant is not identically zero; isolated exceptional t are listed per witness",
    "escape of a target without an invariant certificate is random search only (NOT_A_PROOF)",
];

fn parse_inputs(
    inputs: &RunInputs,
) -> Result<(Vec<DegenerationWitness>, Vec<NonDegenerationClaim>, EdgeSet), RunError> {
    let witnesses =
        text::parse_witnesses(&inputs.witnesses).map_err(|error| RunError::Parse { file: "witnesses", error })?;
    let claims = text::parse_claims(&inputs.claims).map_err(|error| RunError::Parse { file: "claims", error })?;
    let reference = text::parse_edges(&inputs.reference_edges)
        .map_err(|error| RunError::Parse { file: "reference edges", error })?
        .into_iter()
        .collect();
    Ok((witnesses, claims, reference))
}

/// Verdict plus optional floating cross-check for one witness.
pub fn check_witness(
    witness: &DegenerationWitness,
    config: &RunConfig,
) -> Result<(Verdict, Option<NumericReport>), RunError> {
    let verdict = degeneration::verify(witness)?;
    let numeric = if config.t_samples.is_empty() || verdict.status == degeneration::VerdictStatus::BranchAmbiguous {
        None
    } else {
        Some(degeneration::numeric_crosscheck(witness, &config.t_samples, config.condition_bound)?)
    };
    Ok((verdict, numeric))
}

pub fn run(inputs: &RunInputs, config: &RunConfig) -> Result<RunReport, RunError> {
    let (witnesses, claims, reference) = parse_inputs(inputs)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| RunError::Pool(e.to_string()))?;
    pool.install(|| run_parsed(&witnesses, &claims, &reference, config))
}

fn run_parsed(
    witnesses: &[DegenerationWitness],
    claims: &[NonDegenerationClaim],
    reference: &EdgeSet,
    config: &RunConfig,
) -> Result<RunReport, RunError> {
    let start = Instant::now();
    let mut timings = Timings::default();

    let t = Instant::now();
    let checked: Vec<(Verdict, Option<NumericReport>)> =
        witnesses.par_iter().map(|w| check_witness(w, config)).collect::<Result<_, _>>()?;
    timings.witnesses_ms = t.elapsed().as_millis();

    let t = Instant::now();
    let outcomes: Vec<ClaimOutcome> = claims
        .par_iter()
        .map(|c| certificates::check_claim(c, config.borel_samples, config.escape_samples, config.seed))
        .collect::<Result<_, _>>()?;
    timings.claims_ms = t.elapsed().as_millis();

    let t = Instant::now();
    let all_verified = checked.iter().all(|(v, _)| v.is_verified() && v.derivation_check.passed);
    let verdicts: Vec<Verdict> = checked.iter().map(|(v, _)| v.clone()).collect();
    let built = if all_verified { Some(graph::build(&verdicts)) } else { None };
    let (summary, hasse) = summarize_graph(built, reference);
    timings.graph_ms = t.elapsed().as_millis();

    let records = checked
        .into_iter()
        .map(|(verdict, numeric)| {
            let edge = (verdict.source.clone(), verdict.target.clone());
            let implied = verdict.proper && hasse.as_ref().is_some_and(|h| !h.contains(&edge));
            WitnessRecord { id: verdict.id(), in_reference: reference.contains(&edge), implied_by_transitivity: implied, numeric, verdict }
        })
        .collect();

    let t = Instant::now();
    let closure = graph::closure_of(&verdicts.iter().filter(|v| v.source != v.target).map(|v| (v.source.clone(), v.target.clone())).collect());
    let closure = with_zero_edges(closure);
    let screening = ScreeningSummary {
        unexplained: certificates::unexplained_non_degenerations(&closure, claims),
        contradicted_reference_edges: reference
            .iter()
            .filter(|(a, b)| !certificates::necessary_conditions(a, b).map(|r| r.passed).unwrap_or(false))
            .cloned()
            .collect(),
    };
    timings.screening_ms = t.elapsed().as_millis();

    let graph_ok = matches!(summary.status, GraphStatus::Equal | GraphStatus::EqualUpToRedundantReferenceEdges);
    let passed = all_verified && outcomes.iter().all(|o| o.passed) && graph_ok;

    let mut tasks = BTreeMap::new();
    for c in claims {
        let id = c.id();
        for s in &c.sources {
            let label = format!("borel {id} {s}");
            tasks.insert(label.clone(), certificates::derive_seed(config.seed, &label));
        }
        for s in &c.targets {
            let label = format!("escape {id} {s}");
            tasks.insert(label.clone(), certificates::derive_seed(config.seed, &label));
        }
    }
    timings.total_ms = start.elapsed().as_millis();

    Ok(RunReport {
        passed,
        witnesses: records,
        claims: outcomes,
        graph: summary,
        screening,
        fingerprint_collisions: catalog::fingerprint_collisions(),
        assumptions: ASSUMPTIONS.to_vec(),
        config: ConfigRecord {
            borel_samples: config.borel_samples,
            escape_samples: config.escape_samples,
            t_samples: config.t_samples.iter().map(|t| [t.re, t.im]).collect(),
            condition_bound: config.condition_bound,
        },
        seeds: SeedRecord {
            base: config.seed,
            derivation: "ChaCha8Rng::seed_from_u64(splitmix64_finalize(base ^ fnv1a64(label)))",
            tasks,
        },
        environment: Environment {
            version: env!("CARGO_PKG_VERSION"),
            os: std::env::consts::OS,
            arch: std::env::consts::ARCH,
            threads: rayon::current_num_threads(),
        },
        timings,
    })
}

fn with_zero_edges(mut closure: EdgeSet) -> EdgeSet {
    for name in catalog::names().filter(|&n| n != catalog::ZERO_ALGEBRA) {
        closure.insert((name.to_string(), catalog::ZERO_ALGEBRA.to_string()));
    }
    closure
}

fn summarize_graph(
    built: Option<Result<DegenerationGraph, graph::GraphError>>,
    reference: &EdgeSet,
) -> (GraphSummary, Option<EdgeSet>) {
    let empty = |status, error| GraphSummary {
        status,
        error,
        edges: 0,
        closure_edges: 0,
        hasse_edges: Vec::new(),
        reference_edges: reference.len(),
        sources: Vec::new(),
        diff: None,
    };
    let g = match built {
        None => return (empty(GraphStatus::NotBuilt, None), None),
        Some(Err(e)) => return (empty(GraphStatus::Differs, Some(e.to_string())), None),
        Some(Ok(g)) => g,
    };
    let diff = graph::compare_with_reference(&g, reference);
    let status = if diff.reduction_equal() {
        GraphStatus::Equal
    } else if diff.closure_equal()
        && diff.reduction_extra.is_empty()
        && diff.reduction_missing.iter().all(|e| diff.reference_redundant.contains(e))
    {
        GraphStatus::EqualUpToRedundantReferenceEdges
    } else {
        GraphStatus::Differs
    };
    let hasse = graph::hasse_reduction(&g);
    let summary = GraphSummary {
        status,
        error: None,
        edges: g.edges.len(),
        closure_edges: graph::transitive_closure(&g).len(),
        hasse_edges: hasse.iter().cloned().collect(),
        reference_edges: reference.len(),
        sources: g.sources(),
        diff: Some(diff),
    };
    (summary, Some(hasse))
}
