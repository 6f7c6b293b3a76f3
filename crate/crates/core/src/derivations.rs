//! Derivation algebras `Der(A)`.
//!
//! A derivation is stored as a matrix whose row `i` is `D(e_i)`.

use crate::algebra::StructureTable;
use crate::arith::Field;
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct DerivationSpace<F> {
    pub dimension: usize,
    pub basis: Vec<Matrix<F>>,
}

/// Solves `D(e_i e_j) = D(e_i) e_j + e_i D(e_j)` for all `i, j` in the `n²`
/// unknowns `D_{p,q}` (unknown `p·n + q`), by exact elimination.
pub fn derivation_space<F: Field>(alg: &StructureTable<F>) -> DerivationSpace<F> {
    let n = alg.dim();
    let mut system: Matrix<F> = Matrix::zeros(n * n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let row = (i * n + j) * n + m;
                // Σ_k c_ij^k D_{k,m}
                for k in 0..n {
                    let c = alg.get(i, j, k);
                    if !c.is_zero() {
                        let col = k * n + m;
                        system[(row, col)] = system[(row, col)].clone() + c;
                    }
                }
                // − Σ_p D_{i,p} c_pj^m − Σ_q D_{j,q} c_iq^m
                for p in 0..n {
                    let c = alg.get(p, j, m);
                    if !c.is_zero() {
                        let col = i * n + p;
                        system[(row, col)] = system[(row, col)].clone() - c.clone();
                    }
                    let c = alg.get(i, p, m);
                    if !c.is_zero() {
                        let col = j * n + p;
                        system[(row, col)] = system[(row, col)].clone() - c.clone();
                    }
                }
            }
        }
    }
    let basis: Vec<Matrix<F>> = system
        .kernel()
        .into_iter()
        .map(|v| Matrix::from_rows(v.chunks(n).map(<[F]>::to_vec).collect()))
        .collect();
    DerivationSpace { dimension: basis.len(), basis }
}

/// `n² − dim Der(A)`, the dimension of the orbit of the structure.
pub fn orbit_dimension<F: Field>(alg: &StructureTable<F>) -> usize {
    let n = alg.dim();
    n * n - derivation_space(alg).dimension
}

/// Checks the Leibniz rule for `d` on every pair of basis vectors.
pub fn is_derivation<F: Field>(alg: &StructureTable<F>, d: &Matrix<F>) -> bool {
    let n = alg.dim();
    let images = d.to_rows();
    for i in 0..n {
        for j in 0..n {
            let lhs = d.left_mul_vec(alg.product_of_basis(i, j));
            let a = alg.multiply_unchecked(&images[i], &crate::algebra::unit(n, j));
            let b = alg.multiply_unchecked(&crate::algebra::unit(n, i), &images[j]);
            let rhs: Vec<F> = a.into_iter().zip(b).map(|(x, y)| x + &y).collect();
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// `[D1, D2] = D1∘D2 − D2∘D1` in the row convention.
pub fn commutator<F: Field>(d1: &Matrix<F>, d2: &Matrix<F>) -> Matrix<F> {
    let a = d2.mul(d1);
    let b = d1.mul(d2);
    let n = a.nrows();
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = a[(i, j)].clone() - b[(i, j)].clone();
        }
    }
    out
}
