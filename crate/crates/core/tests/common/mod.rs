//! Brute-force oracles over raw structure constants. None of these go
//! through `Subspace`, `Matrix` or the condition evaluator.

#![allow(dead_code)]

use nilcert::algebra::StructureTable;
use nilcert::arith::GaussianRational;
use nilcert::certificates::{Condition, StructurePolynomial};
use rand::Rng;

pub type Table = StructureTable<GaussianRational>;
type Vector = Vec<GaussianRational>;

fn zero() -> GaussianRational {
    GaussianRational::zero()
}

/// `x y` from the constants directly.
pub fn mul(t: &Table, x: &[GaussianRational], y: &[GaussianRational]) -> Vector {
    let n = t.dim();
    let mut out = vec![zero(); n];
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            let xy = &x[i] * &y[j];
            for (k, o) in out.iter_mut().enumerate() {
                let c = t.get(i, j, k);
                if !c.is_zero() {
                    *o = &*o + &(&xy * c);
                }
            }
        }
    }
    out
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![zero(); n];
    v[i] = GaussianRational::one();
    v
}

/// Row echelon basis of the span of `vectors`.
pub fn echelon(vectors: Vec<Vector>) -> Vec<Vector> {
    let mut rows: Vec<Vector> = vectors.into_iter().filter(|v| v.iter().any(|c| !c.is_zero())).collect();
    let Some(n) = rows.first().map(Vec::len) else { return rows };
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        let pivot: Vector = rows[rank].iter().map(|c| c * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                rows[r] = rows[r].iter().zip(&pivot).map(|(a, b)| a - &(&f * b)).collect();
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// Bases of `A_p^1 … A_p^kmax`, where `A_p^k` is spanned by all products
/// of `k` elements of `A_p` under every bracketing.
pub fn flag_powers(t: &Table, p: usize, kmax: usize) -> Vec<Vec<Vector>> {
    let n = t.dim();
    let first: Vec<Vector> = ((p - 1).min(n)..n).map(|i| unit(n, i)).collect();
    let mut levels = vec![first];
    for k in 2..=kmax {
        let mut gens = Vec::new();
        for a in 1..k {
            for x in &levels[a - 1] {
                for y in &levels[k - a - 1] {
                    gens.push(mul(t, x, y));
                }
            }
        }
        levels.push(echelon(gens));
    }
    levels
}

pub fn power_vanishes(t: &Table, p: usize, k: usize) -> bool {
    flag_powers(t, p, k)[k - 1].is_empty()
}

/// `dim A^k` for `k = 1 … kmax`.
pub fn power_dims(t: &Table, kmax: usize) -> Vec<usize> {
    flag_powers(t, 1, kmax).iter().map(Vec::len).collect()
}

/// `c_ij^k = 0` for `i ≥ p`, `j ≥ q`, `k < r` (all 1-based).
pub fn flag_containment(t: &Table, p: usize, q: usize, r: Option<usize>) -> bool {
    let n = t.dim();
    let r = r.unwrap_or(n + 1);
    for i in p..=n {
        for j in q..=n {
            for k in 1..r.min(n + 1) {
                if !t.get(i - 1, j - 1, k - 1).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// `dim {x : x e_j = e_j x = 0 for all j}`.
pub fn ann_dim(t: &Table) -> usize {
    let n = t.dim();
    // one equation per (side, j, k) in the unknowns x_1 … x_n
    let mut eqs = Vec::new();
    for j in 0..n {
        for k in 0..n {
            eqs.push((0..n).map(|i| t.get(i, j, k).clone()).collect::<Vector>());
            eqs.push((0..n).map(|i| t.get(j, i, k).clone()).collect::<Vector>());
        }
    }
    n - echelon(eqs).len()
}

pub fn evaluate_polynomial(poly: &StructurePolynomial, t: &Table) -> GaussianRational {
    let n = t.dim();
    let mut total = zero();
    for (mono, c) in poly.terms() {
        let mut term = c.clone();
        for &[i, j, k] in mono {
            term = if i.max(j).max(k) > n { zero() } else { &term * t.get(i - 1, j - 1, k - 1) };
        }
        total = &total + &term;
    }
    total
}

pub fn condition_holds(c: &Condition, t: &Table) -> bool {
    match c {
        Condition::FlagContainment { p, q, r } => flag_containment(t, *p, *q, *r),
        Condition::PowerVanish { p, k } => power_vanishes(t, *p, *k),
        Condition::PolynomialEq(poly) => evaluate_polynomial(poly, t).is_zero(),
        Condition::AnnDimAtLeast(d) => ann_dim(t) >= *d,
    }
}

pub fn is_commutative(t: &Table) -> bool {
    let n = t.dim();
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| t.get(i, j, k) == t.get(j, i, k))))
}

pub fn is_associative(t: &Table) -> bool {
    let n = t.dim();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (ea, eb, ec) = (unit(n, a), unit(n, b), unit(n, c));
                if mul(t, &mul(t, &ea, &eb), &ec) != mul(t, &ea, &mul(t, &eb, &ec)) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn random_small<R: Rng>(rng: &mut R) -> GaussianRational {
    let re = GaussianRational::from_int(rng.gen_range(-2..=2));
    let im = GaussianRational::from_int(rng.gen_range(-1..=1));
    &re + &(&GaussianRational::i() * &im)
}

/// Table with each constant nonzero with probability `density`.
pub fn random_sparse_table<R: Rng>(rng: &mut R, n: usize, density: f64) -> Table {
    let mut t = Table::zero(n).expect("positive dimension");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if rng.gen_bool(density) {
                    t.set(i, j, k, random_small(rng));
                }
            }
        }
    }
    t
}

pub fn random_condition<R: Rng>(rng: &mut R, n: usize) -> Condition {
    match rng.gen_range(0..4) {
        0 => Condition::FlagContainment {
            p: rng.gen_range(1..=n),
            q: rng.gen_range(1..=n),
            r: if rng.gen_bool(0.2) { None } else { Some(rng.gen_range(1..=n + 1)) },
        },
        1 => Condition::PowerVanish { p: rng.gen_range(1..=n), k: rng.gen_range(2..=4) },
        2 => {
            let mut poly = StructurePolynomial::zero();
            for _ in 0..rng.gen_range(1..=3) {
                let mut term = StructurePolynomial::constant(random_small(rng));
                for _ in 0..rng.gen_range(0..=2) {
                    term = term.mul(&StructurePolynomial::variable(
                        rng.gen_range(1..=n),
                        rng.gen_range(1..=n),
                        rng.gen_range(1..=n),
                    ));
                }
                poly = poly.add(&term);
            }
            Condition::PolynomialEq(poly)
        }
        _ => Condition::AnnDimAtLeast(rng.gen_range(0..=n)),
    }
}
