//! Rational functions `ℚ(i)(t)` in canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::gaussian::GaussianRational;
use super::poly::Poly;

/// `numerator / denominator` with coprime parts and a monic denominator.
/// Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Builds and normalizes `num / den`. Returns `None` if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g), den.exact_div(&g))
            }
        };
        let lead_inv = den.leading().inv().expect("nonzero denominator");
        if lead_inv.is_one() {
            RationalFunction { num, den }
        } else {
            RationalFunction { num: num.scale(&lead_inv), den: den.scale(&lead_inv) }
        }
    }

    pub fn zero() -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        RationalFunction { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn t() -> Self {
        Self::from_poly(Poly::t())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalized(self.den.clone(), self.num.clone()))
    }

    /// `ord_t(num) - ord_t(den)`; `None` for zero.
    pub fn order_at_zero(&self) -> Option<i64> {
        let n = self.num.order_at_zero()? as i64;
        let d = self.den.order_at_zero().expect("nonzero denominator") as i64;
        Some(n - d)
    }

    /// Coefficient of `t^order` in the Laurent expansion at zero.
    pub fn leading_coefficient_at_zero(&self) -> Option<GaussianRational> {
        let n = self.num.order_at_zero()?;
        let d = self.den.order_at_zero().expect("nonzero denominator");
        let ratio = self.num.coeff(n) / self.den.coeff(d);
        Some(ratio)
    }

    /// Value at `t = 0` when the function is regular there.
    pub fn value_at_zero(&self) -> Option<GaussianRational> {
        match self.order_at_zero() {
            None => Some(GaussianRational::zero()),
            Some(o) if o > 0 => Some(GaussianRational::zero()),
            Some(0) => self.leading_coefficient_at_zero(),
            Some(_) => None,
        }
    }

    pub fn sqrt(&self) -> Option<Self> {
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        Some(Self::normalized(n, d))
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Some(RationalFunction { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        self.num.eval_complex(t) / self.den.eval_complex(t)
    }
}

impl From<GaussianRational> for RationalFunction {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction { num: &self.num * &rhs.num, den: Poly::one() };
        }
        // cross-cancel first to keep the gcd inputs small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let d = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        let lead_inv = d.leading().inv().expect("nonzero denominator");
        RationalFunction { num: n.scale(&lead_inv), den: d.scale(&lead_inv) }
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}
