//! Exact scalar arithmetic.

mod gaussian;
mod poly;
mod ratfunc;
mod tower;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use gaussian::{rational, rational_sqrt, GaussianInteger, GaussianRational, Rational};
pub use poly::Poly;
pub use ratfunc::RationalFunction;
pub use tower::{HalfIntOrder, LimitError, Radicand, TowerElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
}

/// An exact field, as needed by the linear algebra and structure-constant
/// code.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inverse(&self) -> Result<Self, ArithError>;
    fn from_gaussian(c: &GaussianRational) -> Self;

    /// Reduced row echelon form of a row-major `rows × cols` block and its
    /// pivot columns, when the field has a faster route than generic
    /// elimination.
    fn rref_special(_data: &[Self], _rows: usize, _cols: usize) -> Option<(Vec<Self>, Vec<usize>)> {
        None
    }

    fn from_int(n: i64) -> Self {
        Self::from_gaussian(&GaussianRational::from_int(n))
    }
}

impl Add<&GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        &self + rhs
    }
}

impl Mul<&GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        &self * rhs
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn inverse(&self) -> Result<Self, ArithError> {
        self.inv().ok_or(ArithError::DivisionByZero)
    }
    fn from_gaussian(c: &GaussianRational) -> Self {
        c.clone()
    }
    fn rref_special(data: &[Self], rows: usize, cols: usize) -> Option<(Vec<Self>, Vec<usize>)> {
        Some(crate::linalg::gaussian_rref(data, rows, cols))
    }
}

impl Add<&TowerElement> for TowerElement {
    type Output = TowerElement;
    fn add(self, rhs: &TowerElement) -> TowerElement {
        &self + rhs
    }
}

impl Mul<&TowerElement> for TowerElement {
    type Output = TowerElement;
    fn mul(self, rhs: &TowerElement) -> TowerElement {
        &self * rhs
    }
}

impl Field for TowerElement {
    fn zero() -> Self {
        TowerElement::zero()
    }
    fn one() -> Self {
        TowerElement::one()
    }
    fn is_zero(&self) -> bool {
        TowerElement::is_zero(self)
    }
    fn inverse(&self) -> Result<Self, ArithError> {
        self.inv()
    }
    fn from_gaussian(c: &GaussianRational) -> Self {
        TowerElement::constant(c.clone())
    }
}
