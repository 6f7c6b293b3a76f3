//! The scalar tower `ℚ ⊂ ℚ(i) ⊂ ℚ(i)(t) ⊂ ℚ(i)(t)[s]/(s² − r(t))`.
//!
//! A [`TowerElement`] is `base + radical·s`. The square root `s` is never
//! evaluated: only branch-independent limits are accepted.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use super::gaussian::GaussianRational;
use super::ratfunc::RationalFunction;
use super::ArithError;

/// A radicand `r(t)` that is known not to be a square in `ℚ(i)(t)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Radicand(Arc<RationalFunction>);

impl Radicand {
    /// Returns `Err(root)` when `r` is a perfect square.
    pub fn new(r: RationalFunction) -> Result<Self, RationalFunction> {
        match r.sqrt() {
            Some(root) => Err(root),
            None => Ok(Radicand(Arc::new(r))),
        }
    }

    pub fn value(&self) -> &RationalFunction {
        &self.0
    }
}

impl fmt::Debug for Radicand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Radicand({})", self.0)
    }
}

/// `t`-adic order in `½ℤ ∪ {+∞}`, stored in halves.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum HalfIntOrder {
    Finite { halves: i64 },
    Infinity,
}

impl HalfIntOrder {
    pub fn integer(n: i64) -> Self {
        HalfIntOrder::Finite { halves: 2 * n }
    }

    pub fn halves(h: i64) -> Self {
        HalfIntOrder::Finite { halves: h }
    }

    pub fn is_integral(&self) -> bool {
        matches!(self, HalfIntOrder::Finite { halves } if halves % 2 == 0)
    }

    pub fn is_positive(&self) -> bool {
        match self {
            HalfIntOrder::Finite { halves } => *halves > 0,
            HalfIntOrder::Infinity => true,
        }
    }

    /// Order of a product.
    pub fn plus(self, other: Self) -> Self {
        match (self, other) {
            (HalfIntOrder::Finite { halves: a }, HalfIntOrder::Finite { halves: b }) => {
                HalfIntOrder::Finite { halves: a + b }
            }
            _ => HalfIntOrder::Infinity,
        }
    }
}

impl PartialOrd for HalfIntOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfIntOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (HalfIntOrder::Infinity, HalfIntOrder::Infinity) => Ordering::Equal,
            (HalfIntOrder::Infinity, _) => Ordering::Greater,
            (_, HalfIntOrder::Infinity) => Ordering::Less,
            (HalfIntOrder::Finite { halves: a }, HalfIntOrder::Finite { halves: b }) => a.cmp(b),
        }
    }
}

impl fmt::Display for HalfIntOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HalfIntOrder::Infinity => f.write_str("+inf"),
            HalfIntOrder::Finite { halves } if halves % 2 == 0 => write!(f, "{}", halves / 2),
            HalfIntOrder::Finite { halves } => write!(f, "{halves}/2"),
        }
    }
}

impl Serialize for HalfIntOrder {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Why a `t → 0` limit could not be taken.
#[derive(Clone, Copy, PartialEq, Eq, Debug, thiserror::Error)]
pub enum LimitError {
    #[error("limit diverges")]
    Diverges,
    #[error("limit depends on the square-root branch")]
    BranchAmbiguous,
}

/// `base + radical·s` with `s² = radicand`. `radicand` is `None` exactly
/// when `radical` is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TowerElement {
    base: RationalFunction,
    radical: RationalFunction,
    radicand: Option<Radicand>,
}

impl TowerElement {
    pub fn zero() -> Self {
        Self::from(RationalFunction::zero())
    }

    pub fn one() -> Self {
        Self::from(RationalFunction::one())
    }

    pub fn t() -> Self {
        Self::from(RationalFunction::t())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from(RationalFunction::constant(c))
    }

    /// `base + radical·√r`, collapsing the radical when `r` is a square.
    pub fn with_radical(base: RationalFunction, radical: RationalFunction, r: RationalFunction) -> Self {
        match Radicand::new(r) {
            Ok(radicand) => Self::from_parts(base, radical, Some(radicand)),
            Err(root) => Self::from(&base + &(&radical * &root)),
        }
    }

    /// `√r` itself.
    pub fn sqrt_of(r: RationalFunction) -> Self {
        Self::with_radical(RationalFunction::zero(), RationalFunction::one(), r)
    }

    fn from_parts(base: RationalFunction, radical: RationalFunction, radicand: Option<Radicand>) -> Self {
        let radicand = if radical.is_zero() { None } else { radicand };
        let radical = if radicand.is_none() { RationalFunction::zero() } else { radical };
        TowerElement { base, radical, radicand }
    }

    pub fn base(&self) -> &RationalFunction {
        &self.base
    }

    pub fn radical(&self) -> &RationalFunction {
        &self.radical
    }

    pub fn radicand(&self) -> Option<&Radicand> {
        self.radicand.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.radical.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.base.is_one() && self.radical.is_zero()
    }

    /// The element as a rational function if it carries no radical.
    pub fn as_rational_function(&self) -> Option<&RationalFunction> {
        self.radicand.is_none().then_some(&self.base)
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        self.as_rational_function().and_then(RationalFunction::as_constant)
    }

    fn shared_radicand(&self, other: &Self) -> Option<Radicand> {
        match (&self.radicand, &other.radicand) {
            (Some(a), Some(b)) => {
                assert!(a == b, "elements from different radical extensions");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    /// Multiplicative inverse: `(a - b s)/(a² - b² r)`.
    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        match &self.radicand {
            None => Ok(Self::from(self.base.inv().expect("nonzero"))),
            Some(r) => {
                let norm = &(&self.base * &self.base) - &(&(&self.radical * &self.radical) * r.value());
                let norm_inv = norm.inv().expect("radicand is not a square, so the norm is nonzero");
                Ok(Self::from_parts(
                    &self.base * &norm_inv,
                    &(-&self.radical) * &norm_inv,
                    Some(r.clone()),
                ))
            }
        }
    }

    /// `base² − radical²·radicand`, the field norm down to `ℚ(i)(t)`.
    pub fn norm(&self) -> RationalFunction {
        match &self.radicand {
            None => &self.base * &self.base,
            Some(r) => &(&self.base * &self.base) - &(&(&self.radical * &self.radical) * r.value()),
        }
    }

    /// `t`-adic order at zero. With `ord(s) = ord(r)/2` this is the minimum of
    /// the orders of the two terms. When both terms share an integral order
    /// their leading parts may cancel on one branch of `s`, so the result is
    /// then only a lower bound for that branch.
    pub fn order_at_zero(&self) -> HalfIntOrder {
        let base = order_of(&self.base);
        match &self.radicand {
            None => base,
            Some(r) => base.min(self.radical_order(r)),
        }
    }

    fn radical_order(&self, r: &Radicand) -> HalfIntOrder {
        match (self.radical.order_at_zero(), r.value().order_at_zero()) {
            (Some(c), Some(o)) => HalfIntOrder::halves(2 * c + o),
            _ => HalfIntOrder::Infinity,
        }
    }

    /// `lim_{t→0}`, accepted only when independent of the branch of `s`.
    pub fn limit_at_zero(&self) -> Result<GaussianRational, LimitError> {
        let base = order_of(&self.base);
        if let Some(r) = &self.radicand {
            let rad = self.radical_order(r);
            if !rad.is_positive() {
                return Err(match base.cmp(&rad) {
                    Ordering::Less => LimitError::Diverges,
                    // a half-integral negative order cannot cancel an integral one
                    _ if !rad.is_integral() => LimitError::Diverges,
                    Ordering::Greater if rad != HalfIntOrder::integer(0) => LimitError::Diverges,
                    _ => LimitError::BranchAmbiguous,
                });
            }
        }
        self.base.value_at_zero().ok_or(LimitError::Diverges)
    }

    /// Evaluation at a complex `t` on the principal branch of `s`.
    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        let base = self.base.eval_complex(t);
        match &self.radicand {
            None => base,
            Some(r) => base + self.radical.eval_complex(t) * r.value().eval_complex(t).sqrt(),
        }
    }

    pub fn pow(&self, e: i32) -> Result<Self, ArithError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }
}

fn order_of(x: &RationalFunction) -> HalfIntOrder {
    match x.order_at_zero() {
        Some(o) => HalfIntOrder::integer(o),
        None => HalfIntOrder::Infinity,
    }
}

impl From<RationalFunction> for TowerElement {
    fn from(base: RationalFunction) -> Self {
        TowerElement { base, radical: RationalFunction::zero(), radicand: None }
    }
}

impl From<GaussianRational> for TowerElement {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a TowerElement> for &'a TowerElement {
    type Output = TowerElement;
    fn add(self, rhs: &TowerElement) -> TowerElement {
        let r = self.shared_radicand(rhs);
        TowerElement::from_parts(&self.base + &rhs.base, &self.radical + &rhs.radical, r)
    }
}

impl<'a> Sub<&'a TowerElement> for &'a TowerElement {
    type Output = TowerElement;
    fn sub(self, rhs: &TowerElement) -> TowerElement {
        let r = self.shared_radicand(rhs);
        TowerElement::from_parts(&self.base - &rhs.base, &self.radical - &rhs.radical, r)
    }
}

impl<'a> Mul<&'a TowerElement> for &'a TowerElement {
    type Output = TowerElement;
    fn mul(self, rhs: &TowerElement) -> TowerElement {
        let r = self.shared_radicand(rhs);
        match &r {
            None => TowerElement::from(&self.base * &rhs.base),
            Some(rad) => {
                // (a + b s)(c + d s) = ac + bd r + (ad + bc) s
                let mut base = &self.base * &rhs.base;
                if !self.radical.is_zero() && !rhs.radical.is_zero() {
                    base = &base + &(&(&self.radical * &rhs.radical) * rad.value());
                }
                let radical = &(&self.base * &rhs.radical) + &(&self.radical * &rhs.base);
                TowerElement::from_parts(base, radical, r)
            }
        }
    }
}

impl<'a> Div<&'a TowerElement> for &'a TowerElement {
    type Output = TowerElement;
    /// Panics on division by zero.
    fn div(self, rhs: &TowerElement) -> TowerElement {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &TowerElement {
    type Output = TowerElement;
    fn neg(self) -> TowerElement {
        TowerElement::from_parts(-&self.base, -&self.radical, self.radicand.clone())
    }
}

impl Add for TowerElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for TowerElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for TowerElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Div for TowerElement {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        &self / &rhs
    }
}

impl Neg for TowerElement {
    type Output = Self;
    fn neg(self) -> Self {
        -&self
    }
}

impl fmt::Display for TowerElement {
    /// Parser-compatible text, e.g. `(t)*sqrt((-1-t^3)/(t))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.radicand {
            None => write!(f, "{}", self.base),
            Some(r) => {
                if !self.base.is_zero() {
                    write!(f, "({})+", self.base)?;
                }
                write!(f, "({})*sqrt({})", self.radical, r.value())
            }
        }
    }
}

impl fmt::Debug for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TowerElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Poly;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    fn a02_a06_radicand() -> RationalFunction {
        // (-1 - t³)/t
        rf(&[-1, 0, 0, -1], &[0, 1])
    }

    #[test]
    fn perfect_square_radicand_collapses() {
        let x = TowerElement::sqrt_of(rf(&[0, 0, 1], &[1]));
        assert!(x.radicand().is_none());
        assert_eq!(x, TowerElement::t());
    }

    #[test]
    fn radical_order_is_half_integral() {
        // t·s with s² = (-1 - t³)/t has order 1 - 1/2 = 1/2
        let s = TowerElement::sqrt_of(a02_a06_radicand());
        let x = &TowerElement::t() * &s;
        assert_eq!(x.order_at_zero(), HalfIntOrder::halves(1));
        assert_eq!(x.limit_at_zero(), Ok(GaussianRational::zero()));
        assert_eq!(s.limit_at_zero(), Err(LimitError::Diverges));
    }

    #[test]
    fn square_of_radical_plus_t_squared_diverges() {
        // s² + t² = (-1 - t³)/t + t² = -1/t
        let s = TowerElement::sqrt_of(a02_a06_radicand());
        let t = TowerElement::t();
        let x = &(&s * &s) + &(&t * &t);
        assert!(x.radicand().is_none());
        assert_eq!(x, TowerElement::from(rf(&[-1], &[0, 1])));
        assert_eq!(x.limit_at_zero(), Err(LimitError::Diverges));
    }

    #[test]
    fn order_zero_radical_is_ambiguous() {
        // √(1 + t) → ±1
        let s = TowerElement::sqrt_of(rf(&[1, 1], &[1]));
        assert_eq!(s.limit_at_zero(), Err(LimitError::BranchAmbiguous));
        // -1 + √(1+t) vanishes on one branch only
        let x = &s - &TowerElement::one();
        assert_eq!(x.limit_at_zero(), Err(LimitError::BranchAmbiguous));
        // t·√(1+t) + 5 → 5
        let y = &(&TowerElement::t() * &s) + &TowerElement::constant(GaussianRational::from_int(5));
        assert_eq!(y.limit_at_zero(), Ok(GaussianRational::from_int(5)));
    }

    #[test]
    fn inverse_in_extension() {
        let s = TowerElement::sqrt_of(a02_a06_radicand());
        let x = &TowerElement::t() + &s;
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert_eq!(TowerElement::zero().inv(), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn simple_limits() {
        let x = TowerElement::from(rf(&[0, 3, 1], &[0, 1]));
        assert_eq!(x.order_at_zero(), HalfIntOrder::integer(0));
        assert_eq!(x.limit_at_zero(), Ok(GaussianRational::from_int(3)));
        let y = TowerElement::from(rf(&[1], &[0, 1]));
        assert_eq!(y.order_at_zero(), HalfIntOrder::integer(-1));
        assert_eq!(y.limit_at_zero(), Err(LimitError::Diverges));
        assert_eq!(TowerElement::zero().order_at_zero(), HalfIntOrder::Infinity);
    }
}
