mod common;

use common::Table;
use nilcert::algebra::Subspace;
use nilcert::arith::GaussianRational;
use nilcert::catalog;
use nilcert::certificates::{random_invertible, satisfies, ClosedSetSpec};
use nilcert::derivations::{commutator, derivation_space, is_derivation};
use nilcert::linalg::Matrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn catalog_name() -> impl Strategy<Value = String> {
    let names: Vec<String> = catalog::names().map(String::from).collect();
    prop::sample::select(names)
}

/// A seeded RNG per case, so the heavier generators stay outside proptest's
/// shrinking.
fn rng() -> impl Strategy<Value = ChaCha8Rng> {
    any::<u64>().prop_map(ChaCha8Rng::seed_from_u64)
}

fn sparse_table() -> impl Strategy<Value = Table> {
    (2usize..=5, 0.02f64..0.3, rng()).prop_map(|(n, density, mut r)| common::random_sparse_table(&mut r, n, density))
}

fn flatten(m: &Matrix<GaussianRational>) -> Vec<GaussianRational> {
    m.rows().flat_map(|r| r.to_vec()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn powers_match_every_bracketing(t in sparse_table(), p in 1usize..=5, k in 2usize..=4) {
        let n = t.dim();
        let p = p.min(n);
        let brute = common::flag_powers(&t, p, k);
        let got = t.subspace_powers(&Subspace::flag(n, p), k);
        for level in 1..=k {
            prop_assert_eq!(got[level - 1].dim(), brute[level - 1].len(), "level {}", level);
        }
    }

    #[test]
    fn annihilator_matches_oracle(t in sparse_table()) {
        let ann = t.annihilator();
        prop_assert_eq!(ann.dim(), common::ann_dim(&t));
        let n = t.dim();
        for x in ann.basis() {
            for j in 0..n {
                let e = common::unit(n, j);
                prop_assert!(common::mul(&t, x, &e).iter().all(|c| c.is_zero()));
                prop_assert!(common::mul(&t, &e, x).iter().all(|c| c.is_zero()));
            }
        }
    }

    #[test]
    fn closed_sets_match_brute_force(t in sparse_table(), mut r in rng(), count in 1usize..=3) {
        let n = t.dim();
        let spec = ClosedSetSpec::new((0..count).map(|_| common::random_condition(&mut r, n)).collect());
        for c in &spec.conditions {
            prop_assert_eq!(c.holds(&t), common::condition_holds(c, &t), "{}", c);
        }
        let brute = spec.conditions.iter().all(|c| common::condition_holds(c, &t));
        prop_assert_eq!(satisfies(&spec, &t), brute);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn change_of_basis_composes(name in catalog_name(), mut r in rng()) {
        let t = &catalog::get(&name).unwrap().table;
        let g = random_invertible(&mut r, 5);
        let h = random_invertible(&mut r, 5);
        let moved = t.change_basis(&g).unwrap();
        prop_assert_eq!(moved.change_basis(&h).unwrap(), t.change_basis(&h.mul(&g)).unwrap());
        prop_assert_eq!(&moved.change_basis(&g.inverse().unwrap()).unwrap(), t);
    }

    #[test]
    fn conjugation_keeps_the_variety_and_fingerprint(name in catalog_name(), mut r in rng()) {
        let t = &catalog::get(&name).unwrap().table;
        let moved = t.change_basis(&random_invertible(&mut r, 5)).unwrap();
        prop_assert!(common::is_commutative(&moved) && common::is_associative(&moved));
        prop_assert_eq!(catalog::fingerprint(&moved), catalog::fingerprint(t));
        prop_assert!(catalog::identify(&moved).unwrap().contains(&t_name(&name)));
    }

    /// Every basis derivation satisfies the Leibniz rule on basis pairs
    /// (checked with the oracle product) and brackets stay in the span.
    #[test]
    fn derivations_form_a_lie_algebra(name in catalog_name(), mut r in rng(), conjugate in any::<bool>()) {
        let base = &catalog::get(&name).unwrap().table;
        let t = if conjugate { base.change_basis(&random_invertible(&mut r, 5)).unwrap() } else { base.clone() };
        let der = derivation_space(&t);
        let n = t.dim();
        let apply = |d: &Matrix<GaussianRational>, x: &[GaussianRational]| d.left_mul_vec(x);
        for d in &der.basis {
            prop_assert!(is_derivation(&t, d));
            for i in 0..n {
                for j in 0..n {
                    let (ei, ej) = (common::unit(n, i), common::unit(n, j));
                    let lhs = apply(d, &common::mul(&t, &ei, &ej));
                    let a = common::mul(&t, &apply(d, &ei), &ej);
                    let b = common::mul(&t, &ei, &apply(d, &ej));
                    let rhs: Vec<GaussianRational> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
        let span: Vec<Vec<GaussianRational>> = der.basis.iter().map(flatten).collect();
        let rank = common::echelon(span.clone()).len();
        prop_assert_eq!(rank, der.dimension);
        let k = der.basis.len().min(4);
        for a in &der.basis[..k] {
            for b in &der.basis[..k] {
                let mut with = span.clone();
                with.push(flatten(&commutator(a, b)));
                prop_assert_eq!(common::echelon(with).len(), rank);
            }
        }
    }
}

fn t_name(name: &str) -> String {
    catalog::canonical_name(name).unwrap()
}

#[test]
fn printed_der_column_matches_brute_force_rank() {
    // n² − rank of the Leibniz system, assembled independently of the library
    for e in catalog::entries() {
        let t = &e.table;
        let n = t.dim();
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for m in 0..n {
                    let mut row = vec![GaussianRational::zero(); n * n];
                    for k in 0..n {
                        let c = t.get(i, j, k);
                        row[k * n + m] = &row[k * n + m] + c;
                    }
                    for p in 0..n {
                        row[i * n + p] = &row[i * n + p] - t.get(p, j, m);
                        row[j * n + p] = &row[j * n + p] - t.get(i, p, m);
                    }
                    rows.push(row);
                }
            }
        }
        let dim = n * n - common::echelon(rows).len();
        assert_eq!(dim, e.expected_der_dim, "{}", e.name);
    }
}

#[test]
fn catalog_lies_in_the_variety() {
    for e in catalog::entries() {
        assert!(common::is_commutative(&e.table), "{}", e.name);
        assert!(common::is_associative(&e.table), "{}", e.name);
        assert_eq!(common::power_dims(&e.table, 6)[5], 0, "{} is not nilpotent", e.name);
    }
}

#[test]
fn only_known_fingerprint_collision() {
    assert_eq!(catalog::fingerprint_collisions(), vec![vec!["A_11".to_string(), "A_15".to_string()]]);
}
