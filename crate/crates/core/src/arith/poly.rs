//! Univariate polynomials in `t` over `ℚ(i)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::gaussian::{GaussianInteger, GaussianRational, Rational};

/// Dense coefficient vector, lowest degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// `c·t^k`.
    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> GaussianRational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Multiplicity of `t` as a factor; `None` for zero.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Division with remainder over the field `ℚ(i)`. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.leading().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] = &rem[k + j] - &(&c * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Quotient when the division is known to be exact.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    ///
    /// Coefficients are cleared to `ℤ[i]` and the subresultant remainder
    /// sequence is run there, so intermediate coefficients stay integral and
    /// grow only polynomially.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        let (mut a, mut b) = (to_gaussian_integers(self), to_gaussian_integers(other));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        let mut g = GaussianInteger::one();
        let mut h = GaussianInteger::one();
        loop {
            let delta = a.len() - b.len();
            let r = pseudo_remainder(&a, &b);
            if r.is_empty() {
                return from_gaussian_integers(&b).monic();
            }
            if r.len() == 1 {
                return Poly::one();
            }
            let divisor = g.mul(&h.pow(delta));
            a = b;
            b = r
                .iter()
                .map(|c| c.exact_div(&divisor).expect("subresultant division is exact"))
                .collect();
            g = a.last().cloned().expect("nonzero");
            h = if delta == 0 {
                h
            } else {
                g.pow(delta)
                    .exact_div(&h.pow(delta - 1))
                    .expect("subresultant division is exact")
            };
        }
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_complex();
        }
        acc
    }

    /// Exact square root when `self` is the square of a polynomial over `ℚ(i)`.
    pub fn sqrt(&self) -> Option<Poly> {
        let Some(deg) = self.degree() else {
            return Some(Poly::zero());
        };
        if deg % 2 == 1 {
            return None;
        }
        let m = deg / 2;
        let lead = self.leading().sqrt()?;
        let two_lead_inv = (&lead + &lead).inv()?;
        let mut root = vec![GaussianRational::zero(); m + 1];
        root[m] = lead;
        // coefficient of t^(m+k) is 2·r_m·r_k + Σ_{i,j>k, i+j=m+k} r_i r_j
        for k in (0..m).rev() {
            let mut acc = self.coeff(m + k);
            for i in (k + 1)..=m {
                let j = m + k - i;
                if j > k && j <= m {
                    acc = &acc - &(&root[i] * &root[j]);
                }
            }
            root[k] = &acc * &two_lead_inv;
        }
        let root = Poly::new(root);
        (&root * &root == *self).then_some(root)
    }

    /// All roots in `ℚ` (for polynomials with rational coefficients).
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() || self.coeffs.iter().any(|c| !c.is_real()) {
            return Vec::new();
        }
        let ints: Vec<BigInt> = to_gaussian_integers(self).into_iter().map(|c| c.re).collect();
        let mut roots = Vec::new();
        let zero_order = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if zero_order > 0 {
            roots.push(Rational::zero());
        }
        let ints = &ints[zero_order..];
        if ints.len() < 2 {
            return roots;
        }
        let lead = ints.last().unwrap().clone();
        let constant = ints[0].clone();
        let ps = divisors(&constant);
        let qs = divisors(&lead);
        let reduced = Poly::new(
            ints.iter()
                .map(|c| GaussianRational::from_rational(Rational::from_integer(c.clone())))
                .collect(),
        );
        for p in &ps {
            for q in &qs {
                for sign in [1, -1] {
                    let cand = Rational::new(p * BigInt::from(sign), q.clone());
                    if !roots.contains(&cand)
                        && reduced.eval(&GaussianRational::from_rational(cand.clone())).is_zero()
                    {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = num_traits::Signed::abs(n);
    // Table data stays tiny; trial division is plenty.
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

fn to_gaussian_integers(p: &Poly) -> Vec<GaussianInteger> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
    let scale = Rational::from_integer(lcm);
    p.coeffs
        .iter()
        .map(|c| {
            let re = &c.re * &scale;
            let im = &c.im * &scale;
            GaussianInteger::new(re.to_integer(), im.to_integer())
        })
        .collect()
}

fn from_gaussian_integers(c: &[GaussianInteger]) -> Poly {
    Poly::new(c.iter().map(GaussianInteger::to_gaussian_rational).collect())
}

/// `lc(b)^(deg a - deg b + 1) · a mod b` over `ℤ[i]`.
fn pseudo_remainder(a: &[GaussianInteger], b: &[GaussianInteger]) -> Vec<GaussianInteger> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor").clone();
    let db = b.len() - 1;
    let mut steps = a.len() - b.len() + 1;
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&lr.mul(bc));
        }
        r.pop();
        while r.last().is_some_and(GaussianInteger::is_zero) {
            r.pop();
        }
        steps -= 1;
    }
    let fix = lb.pow(steps);
    for c in r.iter_mut() {
        *c = c.mul(&fix);
    }
    r
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl fmt::Display for Poly {
    /// Parser-compatible rendering, e.g. `1/2+(1/2*i)*t-t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative_real = c.is_real() && c.re < Rational::zero();
            let shown = if negative_real { -c.clone() } else { c.clone() };
            if first {
                if negative_real {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative_real { "-" } else { "+" })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if var.is_empty() {
                if shown.is_compound() {
                    write!(f, "({shown})")?;
                } else {
                    write!(f, "{shown}")?;
                }
            } else if shown.is_one() {
                f.write_str(&var)?;
            } else if shown.is_compound() {
                write!(f, "({shown})*{var}")?;
            } else {
                write!(f, "{shown}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
