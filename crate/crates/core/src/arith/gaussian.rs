//! Rationals and Gaussian rationals `ℚ(i)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

fn fmt_rational(q: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// An element `re + im·i` of `ℚ(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(Rational::from_integer(n.into()), Rational::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::new(rational(n, d), Rational::zero())
    }

    pub fn from_rational(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Square root inside `ℚ(i)` when one exists. The returned root has a
    /// positive real part, or is `i·√|re|` on the negative real axis.
    pub fn sqrt(&self) -> Option<Self> {
        if self.im.is_zero() {
            return if self.re.is_negative() {
                rational_sqrt(&-self.re.clone()).map(|r| Self::new(Rational::zero(), r))
            } else {
                rational_sqrt(&self.re).map(Self::from_rational)
            };
        }
        // (x + iy)² = re + i·im  ⇒  x² = (re + |z|)/2, y = im / 2x
        let modulus = rational_sqrt(&self.norm())?;
        let half = rational(1, 2);
        let x = rational_sqrt(&((&self.re + &modulus) * &half))?;
        let y = &self.im / (&x * Rational::from_integer(2.into()));
        Some(Self::new(x, y))
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// True when printing needs surrounding parentheses to act as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        (!self.re.is_zero() && !self.im.is_zero())
            || (self.im.is_zero() && (!self.re.denom().is_one() || self.re.is_negative()))
            || (self.re.is_zero() && (!self.im.denom().is_one() || self.im.is_negative()))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        if !self.re.is_zero() {
            fmt_rational(&self.re, f)?;
            f.write_str(if self.im.is_negative() { "-" } else { "+" })?;
        } else if self.im.is_negative() {
            f.write_str("-")?;
        }
        let im = self.im.abs();
        if im.is_one() {
            f.write_str("i")
        } else {
            fmt_rational(&im, f)?;
            f.write_str("*i")
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_rational(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Div for GaussianRational {
    type Output = Self;
    /// Panics on division by zero.
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.inv().expect("division by zero in Q(i)");
        &self * &inv
    }
}

/// An element of `ℤ[i]`, used as the coefficient domain of the subresultant
/// gcd.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussianInteger {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInteger {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        GaussianInteger { re, im }
    }

    pub fn one() -> Self {
        Self::new(BigInt::one(), BigInt::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient, `None` if `rhs` does not divide `self` in `ℤ[i]`.
    pub fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let norm = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        let conj = Self::new(rhs.re.clone(), -rhs.im.clone());
        let p = self.mul(&conj);
        let (qr, rr) = p.re.div_rem(&norm);
        let (qi, ri) = p.im.div_rem(&norm);
        if rr.is_zero() && ri.is_zero() {
            Some(Self::new(qr, qi))
        } else {
            None
        }
    }

    pub fn to_gaussian_rational(&self) -> GaussianRational {
        GaussianRational::new(
            Rational::from_integer(self.re.clone()),
            Rational::from_integer(self.im.clone()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(GaussianRational::from_ratio(-1, 3).to_string(), "-1/3");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        let z = GaussianRational::new(rational(1, 2), rational(-3, 4));
        assert_eq!(z.to_string(), "1/2-3/4*i");
    }

    #[test]
    fn inverse_round_trip() {
        let z = GaussianRational::new(rational(2, 3), rational(-5, 7));
        let w = z.inv().unwrap();
        assert!((&z * &w).is_one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn square_roots() {
        assert_eq!(
            GaussianRational::from_int(-4).sqrt(),
            Some(GaussianRational::new(Rational::zero(), rational(2, 1)))
        );
        // (1 + 2i)² = -3 + 4i
        let z = GaussianRational::new(rational(-3, 1), rational(4, 1));
        assert_eq!(z.sqrt(), Some(GaussianRational::new(rational(1, 1), rational(2, 1))));
        // 2i = (1 + i)²
        let two_i = GaussianRational::new(Rational::zero(), rational(2, 1));
        let r = two_i.sqrt().unwrap();
        assert_eq!(&r * &r, two_i);
        assert!(GaussianRational::from_int(2).sqrt().is_none());
        assert!(GaussianRational::i().sqrt().is_none());
    }

    #[test]
    fn gaussian_integer_division() {
        let a = GaussianInteger::new(3.into(), 1.into());
        let b = GaussianInteger::new(1.into(), 1.into());
        // (3 + i) / (1 + i) = 2 - i
        assert_eq!(a.exact_div(&b), Some(GaussianInteger::new(2.into(), (-1).into())));
        assert_eq!(GaussianInteger::new(1.into(), 0.into()).exact_div(&b), None);
    }
}
