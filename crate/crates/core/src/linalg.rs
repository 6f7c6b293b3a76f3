//! Dense exact linear algebra over a [`Field`].
//!
//! Elimination is fraction-free (Bareiss): the working rows are combined as
//! `(p·row − a·pivot_row) / previous_pivot`, which keeps rational-function
//! entries small. The pivot in each column is the first nonzero entry at or
//! below the current row, so results are deterministic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{ArithError, Field, GaussianInteger, GaussianRational, Rational};

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let n = rows.len();
        Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[F]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        self.rows().map(<[F]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + &(a.clone() * b);
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = vec![F::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = &self[(i, j)];
                if !b.is_zero() {
                    *o = o.clone() + &(a.clone() * b);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Fraction-free forward elimination in place. Returns pivot columns and
    /// the number of row swaps.
    fn bareiss_forward(&mut self) -> (Vec<usize>, usize) {
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut prev = F::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                self.swap_rows(p, r);
                swaps += 1;
            }
            let pivot = self[(r, c)].clone();
            let prev_inv = prev.inverse().expect("pivots are nonzero");
            for i in (r + 1)..self.rows {
                let a = self[(i, c)].clone();
                for j in (c + 1)..self.cols {
                    let v = pivot.clone() * &self[(i, j)] - a.clone() * &self[(r, j)];
                    self[(i, j)] = if v.is_zero() { v } else { v * &prev_inv };
                }
                self[(i, c)] = F::zero();
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        (pivots, swaps)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        if let Some((data, pivots)) = F::rref_special(&self.data, self.rows, self.cols) {
            return (Matrix { rows: self.rows, cols: self.cols, data }, pivots);
        }
        self.rref_generic()
    }

    pub(crate) fn rref_generic(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let (pivots, _) = m.bareiss_forward();
        for (r, &c) in pivots.iter().enumerate() {
            let inv = m[(r, c)].inverse().expect("pivot is nonzero");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = m[(r, j)].clone() * &inv;
                }
            }
        }
        for (r, &c) in pivots.iter().enumerate().rev() {
            for i in 0..r {
                let a = m[(i, c)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        let v = m[(i, j)].clone() - a.clone() * &m[(r, j)];
                        m[(i, j)] = v;
                    }
                }
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by Bareiss elimination.
    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return F::one();
        }
        let mut m = self.clone();
        let (pivots, swaps) = m.bareiss_forward();
        if pivots.len() < self.rows {
            return F::zero();
        }
        let d = m[(self.rows - 1, self.cols - 1)].clone();
        if swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// Basis of `{x : self·x = 0}`, one vector per free column, in
    /// increasing order of the free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                let a = &r[(row, free)];
                if !a.is_zero() {
                    v[pc] = -a.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<Matrix<F>, ArithError> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(ArithError::DivisionByZero);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| format!("{:?}", self.data[i * self.cols + j])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// RREF over `ℚ(i)`: each row is scaled to `ℤ[i]` and reduced by its
/// integer content, then fraction-free Gauss–Jordan elimination runs on
/// Gaussian integers, so no gcd is taken until the final normalisation.
pub(crate) fn gaussian_rref(data: &[GaussianRational], rows: usize, cols: usize) -> (Vec<GaussianRational>, Vec<usize>) {
    let mut m: Vec<Vec<GaussianInteger>> = data.chunks(cols.max(1)).take(rows).map(integer_row).collect();
    let mut live: Vec<bool> = m.iter().map(|r| r.iter().any(|x| !x.is_zero())).collect();
    let mut pivots = Vec::new();
    let mut prev = GaussianInteger::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        live.swap(p, r);
        let pivot_row = m[r].clone();
        let pivot = pivot_row[c].clone();
        for i in 0..rows {
            if i == r || !live[i] {
                continue;
            }
            let a = m[i][c].clone();
            let row = &mut m[i];
            for j in 0..cols {
                let mut v = pivot.mul(&row[j]);
                if !a.is_zero() && !pivot_row[j].is_zero() {
                    v = v.sub(&a.mul(&pivot_row[j]));
                }
                row[j] = if v.is_zero() { v } else { v.exact_div(&prev).expect("Bareiss division is exact") };
            }
            live[i] = row.iter().any(|x| !x.is_zero());
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    let mut out = vec![GaussianRational::zero(); rows * cols];
    for (row, &c) in pivots.iter().enumerate() {
        let inv = m[row][c].to_gaussian_rational().inv().expect("pivot is nonzero");
        for j in c..cols {
            if !m[row][j].is_zero() {
                out[row * cols + j] = &m[row][j].to_gaussian_rational() * &inv;
            }
        }
    }
    (out, pivots)
}

fn integer_row(row: &[GaussianRational]) -> Vec<GaussianInteger> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
    let scale = |q: &Rational| q.numer() * (&l / q.denom());
    let mut ints: Vec<GaussianInteger> = row.iter().map(|x| GaussianInteger::new(scale(&x.re), scale(&x.im))).collect();
    let g = ints.iter().flat_map(|x| [&x.re, &x.im]).fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for x in &mut ints {
            x.re /= &g;
            x.im /= &g;
        }
    }
    ints
}
