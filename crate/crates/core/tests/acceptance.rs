//! Acceptance gate. Prints one PASS/FAIL line per criterion.
//!
//! Criterion 3 (literal equality of the Hasse reduction with the published
//! diagram) cannot hold: the diagram draws two edges that follow from other
//! drawn edges. It is evaluated as stated, reported as FAIL, and the test
//! pins the exact diff so that any other change in the graph is caught.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use nilcert::catalog;
use nilcert::certificates::{
    check_claim, satisfies, ClosedSetSpec, Condition, EscapeStatus, NonDegenerationClaim,
};
use nilcert::data;
use nilcert::degeneration::{numeric_crosscheck, verify, SampleStatus, Verdict, DEFAULT_CONDITION_BOUND};
use nilcert::derivations::derivation_space;
use nilcert::graph::{self, EdgeSet};
use nilcert::text;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Printed `dim Der` column, A_01 … A_24.
const PRINTED_DER: [usize; 24] = [5, 6, 6, 7, 7, 7, 7, 8, 8, 9, 9, 11, 8, 9, 9, 10, 10, 11, 11, 12, 11, 12, 14, 17];
const DER_BUDGET: Duration = Duration::from_secs(5);
const WITNESS_BUDGET: Duration = Duration::from_secs(60);
/// Rows in the two pages of the witness table, counted by hand.
const WITNESS_ROWS: usize = 44;
/// Edges drawn in the diagram, counted by hand (including `A_24 → C5`).
const REFERENCE_EDGE_COUNT: usize = 44;
const BOREL_SAMPLES: usize = 200;
const ESCAPE_SAMPLES: usize = 1000;
const SEED: u64 = 1;
const CONJUGATIONS_PER_ALGEBRA: usize = 50;
const RANDOM_SPARSE_TABLES: usize = 500;
const NUMERIC_T: f64 = 1e-4;
const NUMERIC_TOLERANCE: f64 = 1e-2;

/// Diff expected for criterion 3: diagram edges that are transitively
/// implied by other diagram edges (both via `A_17`).
const KNOWN_REDUNDANT_REFERENCE_EDGES: [(&str, &str); 2] = [("A_11", "A_22"), ("A_15", "A_22")];

struct Line {
    id: u32,
    pass: bool,
    detail: String,
}

fn report(lines: &mut Vec<Line>, id: u32, pass: bool, detail: String) {
    println!("criterion {id}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    lines.push(Line { id, pass, detail });
}

fn names() -> Vec<String> {
    catalog::names().filter(|&n| n != catalog::ZERO_ALGEBRA).map(String::from).collect()
}

fn criterion_1() -> (bool, String) {
    let start = Instant::now();
    let got: Vec<usize> =
        names().iter().map(|n| derivation_space(&catalog::get(n).unwrap().table).dimension).collect();
    let elapsed = start.elapsed();
    let mismatches: Vec<String> = names()
        .iter()
        .zip(got.iter().zip(PRINTED_DER))
        .filter(|(_, (g, e))| **g != *e)
        .map(|(n, (g, e))| format!("{n}: {g} != {e}"))
        .collect();
    let pass = mismatches.is_empty() && elapsed < DER_BUDGET;
    (pass, format!("24 algebras, mismatches {mismatches:?}, {elapsed:.2?} (budget {DER_BUDGET:?})"))
}

fn criterion_2(verdicts: &[Verdict], elapsed: Duration) -> (bool, String) {
    let bad: Vec<String> = verdicts
        .iter()
        .filter(|v| !v.is_verified() || !v.derivation_check.passed)
        .map(|v| format!("{} {:?}", v.id(), v.status))
        .collect();
    let pass = verdicts.len() == WITNESS_ROWS && bad.is_empty() && elapsed < WITNESS_BUDGET;
    (
        pass,
        format!(
            "{} rows (expected {WITNESS_ROWS}), not verified {bad:?}, {elapsed:.2?} (budget {WITNESS_BUDGET:?})",
            verdicts.len()
        ),
    )
}

fn criterion_3(verdicts: &[Verdict], reference: &EdgeSet) -> (bool, String, Vec<(String, String)>, Vec<(String, String)>) {
    let g = graph::build(verdicts).expect("verified witnesses form an acyclic graph");
    let hasse = graph::hasse_reduction(&g);
    let missing: Vec<_> = reference.difference(&hasse).cloned().collect();
    let extra: Vec<_> = hasse.difference(reference).cloned().collect();
    let closure_equal = graph::transitive_closure(&g) == graph::closure_of(reference);
    let pass = reference.len() == REFERENCE_EDGE_COUNT && missing.is_empty() && extra.is_empty();
    let detail = format!(
        "reference {} edges (hand count {REFERENCE_EDGE_COUNT}), Hasse {} edges, closures equal: {closure_equal}, \
         reference-only {missing:?}, Hasse-only {extra:?}",
        reference.len(),
        hasse.len()
    );
    (pass, detail, missing, extra)
}

/// Whole-algebra invariants implied by `spec` that `target` violates,
/// recomputed by brute force.
fn invariant_applies(spec: &ClosedSetSpec, target: &common::Table) -> bool {
    spec.conditions.iter().any(|c| match c {
        Condition::PowerVanish { p: 1, k } => !common::power_vanishes(target, 1, *k),
        Condition::AnnDimAtLeast(d) => common::ann_dim(target) < *d,
        _ => false,
    })
}

fn criterion_4(claims: &[NonDegenerationClaim]) -> (bool, String) {
    let mut problems = Vec::new();
    let mut certified = 0;
    let mut evidential = 0;
    let mut required = BTreeSet::new();
    for claim in claims {
        let outcome = check_claim(claim, BOREL_SAMPLES, ESCAPE_SAMPLES, SEED).expect("catalog names");
        for s in &outcome.sources {
            if !s.in_r {
                problems.push(format!("{}: source {} not in R ({:?})", outcome.claim, s.source, s.failing));
            }
            if s.borel_samples != BOREL_SAMPLES || s.borel_violation.is_some() {
                problems.push(format!("{}: Borel probe on {} found {:?}", outcome.claim, s.source, s.borel_violation));
            }
        }
        for t in &outcome.targets {
            let table = &catalog::get(&t.target).unwrap().table;
            let must_certify = invariant_applies(&claim.spec, table);
            if must_certify {
                required.insert(format!("{}:{}", outcome.claim, t.target));
            }
            match t.status {
                EscapeStatus::Certified => certified += 1,
                EscapeStatus::Evidential if !must_certify && t.random_hits == 0 && t.samples == ESCAPE_SAMPLES => {
                    evidential += 1
                }
                _ => problems.push(format!("{}: target {} {:?} hits {}", outcome.claim, t.target, t.status, t.random_hits)),
            }
        }
    }
    // the rows the criterion names explicitly
    for must in ["A_05, A_06, A_07 -/-> A_21:A_21", "A_03 -/-> A_05, A_07:A_05"] {
        if !required.contains(must) {
            problems.push(format!("{must} not recognised as invariant-certifiable"));
        }
    }
    (
        problems.is_empty(),
        format!(
            "{} claims, {certified} certified, {evidential} evidential with 0/{ESCAPE_SAMPLES} hits, problems {problems:?}",
            claims.len()
        ),
    )
}

fn criterion_5(verdicts: &[Verdict]) -> (bool, String) {
    let mut problems = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    // basis-change invariance of fingerprints
    for name in names() {
        let table = &catalog::get(&name).unwrap().table;
        let fp = catalog::fingerprint(table);
        for _ in 0..CONJUGATIONS_PER_ALGEBRA {
            let g = nilcert::certificates::random_invertible(&mut rng, table.dim());
            if catalog::fingerprint(&table.change_basis(&g).unwrap()) != fp {
                problems.push(format!("fingerprint of {name} changed under {g:?}"));
                break;
            }
        }
    }

    // semicontinuity along verified edges
    let kmax = 6;
    for v in verdicts.iter().filter(|v| v.proper) {
        let a = &catalog::get(&v.source).unwrap().table;
        let b = &catalog::get(&v.target).unwrap().table;
        let (da, db) = (derivation_space(a).dimension, derivation_space(b).dimension);
        if da >= db {
            problems.push(format!("{}: dim Der {da} -> {db}", v.id()));
        }
        let (pa, pb) = (common::power_dims(a, kmax), common::power_dims(b, kmax));
        if pa.iter().zip(&pb).any(|(x, y)| y > x) {
            problems.push(format!("{}: dim A^k {pa:?} -> {pb:?}", v.id()));
        }
        let (na, nb) = (common::ann_dim(a), common::ann_dim(b));
        if nb < na {
            problems.push(format!("{}: dim Ann {na} -> {nb}", v.id()));
        }
    }

    // identities survive the limit
    for v in verdicts {
        let Some(limit) = &v.limit else {
            problems.push(format!("{}: no limit table", v.id()));
            continue;
        };
        let nilpotent = common::power_dims(limit, limit.dim() + 1).last() == Some(&0);
        if !common::is_commutative(limit) || !common::is_associative(limit) || !nilpotent {
            problems.push(format!("{}: limit table leaves the variety", v.id()));
        }
    }

    // closed-set evaluation against brute force
    let mut disagreements = 0;
    for _ in 0..RANDOM_SPARSE_TABLES {
        let n = rand::Rng::gen_range(&mut rng, 2..=5);
        let density = rand::Rng::gen_range(&mut rng, 0.02..0.25);
        let t = common::random_sparse_table(&mut rng, n, density);
        let count = rand::Rng::gen_range(&mut rng, 1..=3);
        let spec = ClosedSetSpec::new((0..count).map(|_| common::random_condition(&mut rng, n)).collect());
        let brute = spec.conditions.iter().all(|c| common::condition_holds(c, &t));
        if satisfies(&spec, &t) != brute {
            disagreements += 1;
            if disagreements <= 3 {
                problems.push(format!("closed set {spec} disagrees with brute force on a {n}-dim table"));
            }
        }
    }
    (
        problems.is_empty(),
        format!(
            "{} fingerprint conjugations, {} edges, {} limit tables, {RANDOM_SPARSE_TABLES} random tables ({disagreements} disagreements), problems {problems:?}",
            CONJUGATIONS_PER_ALGEBRA * 24,
            verdicts.iter().filter(|v| v.proper).count(),
            verdicts.len()
        ),
    )
}

fn criterion_6(verdicts: &[Verdict]) -> (bool, String) {
    let witnesses = text::parse_witnesses(data::WITNESSES).unwrap();
    let t = [Complex64::new(NUMERIC_T, 0.0)];
    let mut checked = 0;
    let mut exempt = Vec::new();
    let mut failures = Vec::new();
    for (w, v) in witnesses.iter().zip(verdicts) {
        if !v.is_verified() {
            continue;
        }
        let rep = numeric_crosscheck(w, &t, DEFAULT_CONDITION_BOUND).unwrap();
        for s in &rep.samples {
            match (s.status, s.max_deviation) {
                (SampleStatus::IllConditioned, _) => exempt.push(w.id()),
                (SampleStatus::Ok, Some(d)) if d < NUMERIC_TOLERANCE => checked += 1,
                (_, d) => failures.push(format!("{}: {d:?}", w.id())),
            }
        }
    }
    (
        failures.is_empty(),
        format!(
            "t = {NUMERIC_T:e}, tolerance {NUMERIC_TOLERANCE:e}, {checked} within tolerance, {} ILL_CONDITIONED (condition > {DEFAULT_CONDITION_BOUND:e}), failures {failures:?}",
            exempt.len()
        ),
    )
}

#[test]
fn acceptance() {
    let mut lines = Vec::new();

    let (pass, detail) = criterion_1();
    report(&mut lines, 1, pass, detail);

    let witnesses = text::parse_witnesses(data::WITNESSES).unwrap();
    let start = Instant::now();
    let verdicts: Vec<Verdict> = witnesses.iter().map(|w| verify(w).unwrap()).collect();
    let (pass, detail) = criterion_2(&verdicts, start.elapsed());
    report(&mut lines, 2, pass, detail);

    let reference: EdgeSet = text::parse_edges(data::REFERENCE_EDGES).unwrap().into_iter().collect();
    let (pass, detail, ref_only, hasse_only) = criterion_3(&verdicts, &reference);
    report(&mut lines, 3, pass, detail);

    let claims = text::parse_claims(data::CLAIMS).unwrap();
    let (pass, detail) = criterion_4(&claims);
    report(&mut lines, 4, pass, detail);

    let (pass, detail) = criterion_5(&verdicts);
    report(&mut lines, 5, pass, detail);

    let (pass, detail) = criterion_6(&verdicts);
    report(&mut lines, 6, pass, detail);

    let failed: Vec<u32> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    println!("acceptance: {} of {} criteria pass; failing {failed:?}", lines.len() - failed.len(), lines.len());

    // Criterion 3 is red for a known reason; require exactly that reason.
    let expected: Vec<(String, String)> =
        KNOWN_REDUNDANT_REFERENCE_EDGES.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    assert_eq!(ref_only, expected, "criterion 3 diff changed");
    assert!(hasse_only.is_empty(), "criterion 3 diff changed");
    for (a, b) in &expected {
        let others: EdgeSet = reference.iter().filter(|e| e.0 != *a || e.1 != *b).cloned().collect();
        assert!(graph::closure_of(&others).contains(&(a.clone(), b.clone())), "{a} -> {b} is not redundant");
    }
    let unexpected: Vec<&Line> = lines.iter().filter(|l| !l.pass && l.id != 3).collect();
    assert!(
        unexpected.is_empty(),
        "failing criteria: {:?}",
        unexpected.iter().map(|l| (l.id, &l.detail)).collect::<Vec<_>>()
    );
}
