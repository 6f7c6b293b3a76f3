//! Degeneration witnesses: a parametric basis `E_i(t)` of a source algebra
//! whose structure constants tend to those of a target algebra as `t → 0`.

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{AlgebraError, StructureTable};
use crate::arith::{GaussianRational, HalfIntOrder, LimitError, Poly, Radicand, Rational, TowerElement};
use crate::catalog::{self, CatalogError, Table};
use crate::linalg::Matrix;

#[derive(Debug, thiserror::Error)]
pub enum DegenerationError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("basis matrix is {got}×{got}, expected {expected}×{expected}")]
    Shape { expected: usize, got: usize },
    #[error("parametric basis uses more than one square root")]
    MultipleRadicals,
    #[error("constant basis is singular")]
    SingularBasis,
}

/// Rows are the coordinates of `E_1(t), …, E_n(t)` in the old basis.
#[derive(Clone, Debug)]
pub struct ParametricMatrix {
    entries: Matrix<TowerElement>,
    radicand: Option<Radicand>,
}

impl ParametricMatrix {
    pub fn new(entries: Matrix<TowerElement>) -> Result<Self, DegenerationError> {
        let mut radicand: Option<Radicand> = None;
        for row in entries.rows() {
            for x in row {
                if let Some(r) = x.radicand() {
                    match &radicand {
                        Some(existing) if existing != r => return Err(DegenerationError::MultipleRadicals),
                        _ => radicand = Some(r.clone()),
                    }
                }
            }
        }
        Ok(ParametricMatrix { entries, radicand })
    }

    pub fn identity(n: usize) -> Self {
        ParametricMatrix { entries: Matrix::identity(n), radicand: None }
    }

    pub fn from_constant(m: &Matrix<GaussianRational>) -> Self {
        ParametricMatrix { entries: m.map(|c| TowerElement::constant(c.clone())), radicand: None }
    }

    pub fn entries(&self) -> &Matrix<TowerElement> {
        &self.entries
    }

    pub fn radicand(&self) -> Option<&Radicand> {
        self.radicand.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn determinant(&self) -> TowerElement {
        self.entries.det()
    }

    /// The same family written in the source basis given by the rows of `h`,
    /// i.e. `E(t)·h⁻¹`, a witness for `source.change_basis(h) → target`.
    pub fn conjugate_source(&self, h: &Matrix<GaussianRational>) -> Result<Self, DegenerationError> {
        let inv = h.inverse().map_err(|_| DegenerationError::SingularBasis)?;
        let inv = inv.map(|c| TowerElement::constant(c.clone()));
        Ok(ParametricMatrix { entries: self.entries.mul(&inv), radicand: self.radicand.clone() })
    }
}

#[derive(Clone, Debug)]
pub struct DegenerationWitness {
    pub source: String,
    pub target: String,
    pub basis: ParametricMatrix,
}

impl DegenerationWitness {
    pub fn id(&self) -> String {
        format!("{}->{}", self.source, self.target)
    }

    pub fn is_proper(&self) -> bool {
        self.source != self.target
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictStatus {
    Verified,
    SingularFamily,
    LimitDiverges,
    LimitMismatch,
    BranchAmbiguous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EntryStatus {
    Ok,
    Diverges,
    BranchAmbiguous,
    Mismatch,
}

/// Limit report for one structure constant `c_{i,j}^k(t)` (1-based).
#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub index: [usize; 3],
    pub value: String,
    pub order: HalfIntOrder,
    pub limit: Option<String>,
    pub expected: String,
    pub status: EntryStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivationCheck {
    pub source_dim: usize,
    pub target_dim: usize,
    /// `source < target` for proper claims, `source ≤ target` otherwise.
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub source: String,
    pub target: String,
    pub proper: bool,
    pub status: VerdictStatus,
    pub determinant: String,
    /// Polynomials in `t` whose roots make the family degenerate or undefined.
    pub exceptional_polynomials: Vec<String>,
    /// Nonzero rational values of `t` where the family is not a basis.
    pub exceptional_t: Vec<String>,
    pub entries: Vec<EntryReport>,
    pub derivation_check: DerivationCheck,
    #[serde(skip)]
    pub limit: Option<Table>,
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        self.status == VerdictStatus::Verified
    }

    pub fn id(&self) -> String {
        format!("{}->{}", self.source, self.target)
    }
}

/// True iff `det E(t)` is not identically zero.
pub fn generic_invertibility(m: &ParametricMatrix) -> bool {
    !m.determinant().is_zero()
}

/// Structure constants of `source` in the basis `E_1(t), …, E_n(t)`.
pub fn transformed_constants(
    source: &Table,
    m: &ParametricMatrix,
) -> Result<StructureTable<TowerElement>, AlgebraError> {
    source.lift::<TowerElement>().change_basis(m.entries())
}

/// Entrywise `t → 0` limit, or the first failing index (0-based) with its
/// reason.
pub fn limit_table(
    param: &StructureTable<TowerElement>,
) -> Result<Table, ((usize, usize, usize), LimitError)> {
    let n = param.dim();
    let mut out = Table::zero(n).expect("dimension already validated");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = param.get(i, j, k);
                if c.is_zero() {
                    continue;
                }
                out.set(i, j, k, c.limit_at_zero().map_err(|e| ((i, j, k), e))?);
            }
        }
    }
    Ok(out)
}

fn exceptional_parameters(m: &ParametricMatrix, det: &TowerElement) -> (Vec<String>, Vec<String>) {
    let mut polys: Vec<Poly> = Vec::new();
    let mut push = |p: &Poly| {
        if p.is_constant() {
            return;
        }
        let p = p.monic();
        if !polys.contains(&p) {
            polys.push(p);
        }
    };
    // the norm vanishes exactly where some branch of det does
    let norm = det.as_rational_function().cloned().unwrap_or_else(|| det.norm());
    push(norm.numerator());
    push(norm.denominator());
    for row in m.entries().rows() {
        for x in row {
            push(x.base().denominator());
            push(x.radical().denominator());
        }
    }
    if let Some(r) = m.radicand() {
        push(r.value().numerator());
        push(r.value().denominator());
    }
    let mut roots: Vec<Rational> = Vec::new();
    for p in &polys {
        for r in p.rational_roots() {
            if !r.is_zero() && !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    roots.sort();
    (polys.iter().map(ToString::to_string).collect(), roots.iter().map(ToString::to_string).collect())
}

/// Checks the witness exactly against the catalog tables of its source and
/// target.
pub fn verify(witness: &DegenerationWitness) -> Result<Verdict, DegenerationError> {
    let source = catalog::get(&witness.source)?;
    let target = catalog::get(&witness.target)?;
    let n = source.table.dim();
    if witness.basis.dim() != n {
        return Err(DegenerationError::Shape { expected: n, got: witness.basis.dim() });
    }
    let proper = source.name != target.name;
    let derivation_check = DerivationCheck {
        source_dim: source.expected_der_dim,
        target_dim: target.expected_der_dim,
        passed: if proper {
            source.expected_der_dim < target.expected_der_dim
        } else {
            source.expected_der_dim <= target.expected_der_dim
        },
    };
    let det = witness.basis.determinant();
    let (exceptional_polynomials, exceptional_t) = exceptional_parameters(&witness.basis, &det);
    let mut verdict = Verdict {
        source: source.name.clone(),
        target: target.name.clone(),
        proper,
        status: VerdictStatus::SingularFamily,
        determinant: det.to_string(),
        exceptional_polynomials,
        exceptional_t,
        entries: Vec::new(),
        derivation_check,
        limit: None,
    };
    if det.is_zero() {
        return Ok(verdict);
    }
    let param = transformed_constants(&source.table, &witness.basis)
        .expect("nonzero determinant means the basis is invertible");

    let mut limit = Table::zero(n).expect("valid dimension");
    let (mut diverges, mut ambiguous, mut mismatch) = (false, false, false);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = param.get(i, j, k);
                let expected = target.table.get(i, j, k);
                if c.is_zero() && expected.is_zero() {
                    continue;
                }
                let (lim, status) = match c.limit_at_zero() {
                    Ok(l) if &l == expected => (Some(l), EntryStatus::Ok),
                    Ok(l) => {
                        mismatch = true;
                        (Some(l), EntryStatus::Mismatch)
                    }
                    Err(LimitError::Diverges) => {
                        diverges = true;
                        (None, EntryStatus::Diverges)
                    }
                    Err(LimitError::BranchAmbiguous) => {
                        ambiguous = true;
                        (None, EntryStatus::BranchAmbiguous)
                    }
                };
                if let Some(l) = &lim {
                    limit.set(i, j, k, l.clone());
                }
                verdict.entries.push(EntryReport {
                    index: [i + 1, j + 1, k + 1],
                    value: c.to_string(),
                    order: c.order_at_zero(),
                    limit: lim.map(|l| l.to_string()),
                    expected: expected.to_string(),
                    status,
                });
            }
        }
    }
    verdict.status = if ambiguous {
        VerdictStatus::BranchAmbiguous
    } else if diverges {
        VerdictStatus::LimitDiverges
    } else if mismatch {
        VerdictStatus::LimitMismatch
    } else {
        VerdictStatus::Verified
    };
    if !ambiguous && !diverges {
        verdict.limit = Some(limit);
    }
    Ok(verdict)
}

/// Condition number above which a floating sample is not trusted.
pub const DEFAULT_CONDITION_BOUND: f64 = 1e10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SampleStatus {
    Ok,
    IllConditioned,
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericSample {
    pub t: [f64; 2],
    pub condition: f64,
    pub max_deviation: Option<f64>,
    pub status: SampleStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericReport {
    pub witness: String,
    pub samples: Vec<NumericSample>,
}

impl NumericReport {
    /// Largest deviation over well-conditioned samples.
    pub fn max_deviation(&self) -> Option<f64> {
        self.samples.iter().filter_map(|s| s.max_deviation).reduce(f64::max)
    }
}

/// Floating evaluation of `c(t)` at each sample (principal branch of any
/// square root) compared with the target constants. Advisory only.
pub fn numeric_crosscheck(
    witness: &DegenerationWitness,
    t_samples: &[Complex64],
    condition_bound: f64,
) -> Result<NumericReport, DegenerationError> {
    let source = catalog::get(&witness.source)?;
    let target = catalog::get(&witness.target)?;
    let n = source.table.dim();
    let src: Vec<Complex64> = (0..n * n * n)
        .map(|idx| source.table.get(idx / (n * n), (idx / n) % n, idx % n).to_complex())
        .collect();
    let samples = t_samples
        .iter()
        .map(|&t| {
            let m: Vec<Vec<Complex64>> = witness
                .basis
                .entries()
                .rows()
                .map(|row| row.iter().map(|x| x.eval_complex(t)).collect())
                .collect();
            let Some(inv) = complex_inverse(&m) else {
                return NumericSample { t: [t.re, t.im], condition: f64::INFINITY, max_deviation: None, status: SampleStatus::IllConditioned };
            };
            let condition = inf_norm(&m) * inf_norm(&inv);
            if !condition.is_finite() || condition > condition_bound {
                return NumericSample { t: [t.re, t.im], condition, max_deviation: None, status: SampleStatus::IllConditioned };
            }
            let mut worst: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let mut prod = vec![Complex64::zero(); n];
                    for (p, a) in m[i].iter().enumerate() {
                        for (q, b) in m[j].iter().enumerate() {
                            for (k, out) in prod.iter_mut().enumerate() {
                                let c = src[(p * n + q) * n + k];
                                if c != Complex64::zero() {
                                    *out += a * b * c;
                                }
                            }
                        }
                    }
                    for k in 0..n {
                        let c: Complex64 = (0..n).map(|p| prod[p] * inv[p][k]).sum();
                        let d = (c - target.table.get(i, j, k).to_complex()).norm();
                        worst = worst.max(d);
                    }
                }
            }
            NumericSample { t: [t.re, t.im], condition, max_deviation: Some(worst), status: SampleStatus::Ok }
        })
        .collect();
    Ok(NumericReport { witness: witness.id(), samples })
}

fn inf_norm(m: &[Vec<Complex64>]) -> f64 {
    m.iter().map(|row| row.iter().map(|x| x.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Gauss–Jordan inverse with partial pivoting.
fn complex_inverse(m: &[Vec<Complex64>]) -> Option<Vec<Vec<Complex64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Complex64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].norm().total_cmp(&a[y][c].norm()))?;
        if a[p][c].norm() == 0.0 || !a[p][c].norm().is_finite() {
            return None;
        }
        a.swap(p, c);
        let inv = Complex64::new(1.0, 0.0) / a[c][c];
        for x in a[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                if f != Complex64::zero() {
                    for j in 0..2 * n {
                        let v = a[c][j];
                        a[r][j] -= f * v;
                    }
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}
