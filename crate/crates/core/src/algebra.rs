//! Algebras given by structure constants on a fixed basis.
//!
//! Indices are 0-based in code and 1-based in text: entry `(i, j, k)` is the
//! coefficient of `e_{k+1}` in `e_{i+1}·e_{j+1}`.

use std::fmt;

use serde::Serialize;

use crate::arith::{ArithError, Field, GaussianRational};
use crate::linalg::Matrix;

/// Largest dimension accepted by the exact routines.
pub const MAX_DIM: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis matrix is singular")]
    Singular,
    #[error("dimension {0} outside 1..={MAX_DIM}")]
    BadDimension(usize),
    #[error("basis index {index} outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}

impl From<ArithError> for AlgebraError {
    fn from(_: ArithError) -> Self {
        AlgebraError::Singular
    }
}

/// `n × n × n` tensor of structure constants `c_{i,j}^k`.
#[derive(Clone, PartialEq)]
pub struct StructureTable<F> {
    dim: usize,
    entries: Vec<F>,
}

impl<F: Field> StructureTable<F> {
    pub fn zero(dim: usize) -> Result<Self, AlgebraError> {
        if dim == 0 || dim > MAX_DIM {
            return Err(AlgebraError::BadDimension(dim));
        }
        Ok(StructureTable { dim, entries: vec![F::zero(); dim * dim * dim] })
    }

    /// Builds a table from `(i, j, k, c)` with 1-based indices. With
    /// `symmetric` each entry is mirrored to `(j, i, k)`.
    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, F)>,
        symmetric: bool,
    ) -> Result<Self, AlgebraError> {
        let mut t = Self::zero(dim)?;
        for (i, j, k, c) in entries {
            for index in [i, j, k] {
                if index == 0 || index > dim {
                    return Err(AlgebraError::IndexOutOfRange { index, dim });
                }
            }
            if symmetric && i != j {
                t.set(j - 1, i - 1, k - 1, c.clone());
            }
            t.set(i - 1, j - 1, k - 1, c);
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &F {
        &self.entries[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, c: F) {
        let idx = self.idx(i, j, k);
        self.entries[idx] = c;
    }

    /// `e_i · e_j` as a coordinate vector.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[F] {
        let start = self.idx(i, j, 0);
        &self.entries[start..start + self.dim]
    }

    /// Nonzero entries as 0-based `(i, j, k, c)`.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &F)> {
        let n = self.dim;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(idx, c)| (idx / (n * n), (idx / n) % n, idx % n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(F::is_zero)
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply(&self, x: &[F], y: &[F]) -> Result<Vec<F>, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.multiply_unchecked(x, y))
    }

    fn check_len(&self, v: &[F]) -> Result<(), AlgebraError> {
        if v.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        Ok(())
    }

    pub(crate) fn multiply_unchecked(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let coeff = xi.clone() * yj;
                for (k, c) in self.product_of_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].clone() + &(coeff.clone() * c);
                    }
                }
            }
        }
        out
    }

    fn check_identities_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| ((i + 1)..n).all(|j| self.product_of_basis(i, j) == self.product_of_basis(j, i)))
    }

    pub fn check_identities(&self) -> Identities {
        let n = self.dim;
        let commutative = self.check_identities_commutative();
        let mut associative = true;
        'assoc: for i in 0..n {
            for j in 0..n {
                let ij = self.product_of_basis(i, j).to_vec();
                for k in 0..n {
                    let left = self.multiply_unchecked(&ij, &unit::<F>(n, k));
                    let jk = self.product_of_basis(j, k).to_vec();
                    let right = self.multiply_unchecked(&unit::<F>(n, i), &jk);
                    if left != right {
                        associative = false;
                        break 'assoc;
                    }
                }
            }
        }
        Identities { commutative, associative }
    }

    /// Span of all products `u·w`.
    pub fn subspace_product(&self, u: &Subspace<F>, w: &Subspace<F>) -> Subspace<F> {
        let mut gens = Vec::new();
        for a in u.basis() {
            for b in w.basis() {
                let p = self.multiply_unchecked(a, b);
                if p.iter().any(|c| !c.is_zero()) {
                    gens.push(p);
                }
            }
        }
        Subspace::span(self.dim, gens)
    }

    /// `U^k`, computed as `Σ_{p+q=k} U^p·U^q`.
    pub fn subspace_power(&self, u: &Subspace<F>, k: usize) -> Subspace<F> {
        self.subspace_powers(u, k).pop().expect("k >= 1")
    }

    /// `[U^1, …, U^k]`.
    pub fn subspace_powers(&self, u: &Subspace<F>, k: usize) -> Vec<Subspace<F>> {
        assert!(k >= 1, "powers start at 1");
        let mut powers: Vec<Subspace<F>> = vec![u.clone()];
        for m in 2..=k {
            let mut gens: Vec<Vec<F>> = Vec::new();
            for p in 1..m {
                let q = m - p;
                let prod = self.subspace_product(&powers[p - 1], &powers[q - 1]);
                gens.extend(prod.basis().iter().cloned());
            }
            powers.push(Subspace::span(self.dim, gens));
        }
        powers
    }

    /// `A^k` for the whole algebra.
    pub fn power_ideal(&self, k: usize) -> Subspace<F> {
        self.subspace_power(&Subspace::whole(self.dim), k)
    }

    /// `{x : x·e_j = 0 = e_j·x for all j}`.
    pub fn annihilator(&self) -> Subspace<F> {
        let n = self.dim;
        let mut m = Matrix::zeros(2 * n * n, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    m[(j * n + k, i)] = self.get(i, j, k).clone();
                    m[(n * n + j * n + k, i)] = self.get(j, i, k).clone();
                }
            }
        }
        Subspace::span(n, m.kernel())
    }

    /// Least `k` with `A^k = 0`, searched up to `dim + 1`.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let powers = self.subspace_powers(&Subspace::whole(self.dim), self.dim + 1);
        powers.iter().position(Subspace::is_zero).map(|p| p + 1)
    }

    /// The same multiplication expressed in the basis given by the rows of
    /// `basis` (row `i` holds the coordinates of the new `E_i`).
    pub fn change_basis(&self, basis: &Matrix<F>) -> Result<StructureTable<F>, AlgebraError> {
        let n = self.dim;
        if basis.nrows() != n || basis.ncols() != n {
            return Err(AlgebraError::DimensionMismatch { expected: n, got: basis.nrows() });
        }
        let inv = basis.inverse().map_err(|_| AlgebraError::Singular)?;
        let rows = basis.to_rows();
        let symmetric = self.check_identities_commutative();
        let mut out = Self::zero(n)?;
        for i in 0..n {
            for j in 0..n {
                if symmetric && j < i {
                    for k in 0..n {
                        let c = out.get(j, i, k).clone();
                        out.set(i, j, k, c);
                    }
                    continue;
                }
                let p = self.multiply_unchecked(&rows[i], &rows[j]);
                if p.iter().all(F::is_zero) {
                    continue;
                }
                let coords = inv.left_mul_vec(&p);
                for (k, c) in coords.into_iter().enumerate() {
                    out.set(i, j, k, c);
                }
            }
        }
        Ok(out)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> StructureTable<G> {
        StructureTable { dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }
}

impl StructureTable<GaussianRational> {
    pub fn lift<G: Field>(&self) -> StructureTable<G> {
        self.map(G::from_gaussian)
    }
}

impl<F: Field> fmt::Debug for StructureTable<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StructureTable(dim={}", self.dim)?;
        for (i, j, k, c) in self.nonzero_entries() {
            write!(f, ", c[{},{}]^{}={}", i + 1, j + 1, k + 1, c)?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Identities {
    pub commutative: bool,
    pub associative: bool,
}

pub fn unit<F: Field>(n: usize, k: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[k] = F::one();
    v
}

/// A subspace held as the nonzero rows of its reduced echelon form.
#[derive(Clone, PartialEq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn span(ambient: usize, gens: Vec<Vec<F>>) -> Self {
        if gens.is_empty() {
            return Self::zero(ambient);
        }
        let (r, pivots) = Matrix::from_rows(gens).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::flag(ambient, 1)
    }

    /// `A_p = ⟨e_p, …, e_n⟩` (1-based; `p = n + 1` gives zero).
    pub fn flag(ambient: usize, p: usize) -> Self {
        let start = p.saturating_sub(1);
        let basis = (start..ambient).map(|k| unit(ambient, k)).collect();
        Subspace { ambient, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn contains(&self, v: &[F]) -> bool {
        if v.iter().all(F::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Self::span(self.ambient, gens)
    }
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Subspace<")?;
        for (n, v) in self.basis.iter().enumerate() {
            if n > 0 {
                f.write_str("; ")?;
            }
            let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        f.write_str(">")
    }
}
