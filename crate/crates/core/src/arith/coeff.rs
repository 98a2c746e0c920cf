use core::fmt::Debug;

use num_traits::{One, Zero};

use super::{RatFunc, Rational};

/// Field operations needed of Laurent-series coefficients.
///
/// Implemented for [`Rational`] (the deformation parameter already
/// substituted) and [`RatFunc`] (symbolic in `t`).
pub trait Coeff: Clone + PartialEq + Debug + Zero + One {
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_rational(r: Rational) -> Self;

    /// `self * r` for a scalar `r`.
    fn scale(&self, r: &Rational) -> Self {
        self.mul_ref(&Self::from_rational(r.clone()))
    }
}

impl Coeff for Rational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl Coeff for RatFunc {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: Rational) -> Self {
        RatFunc::constant(r)
    }
    fn scale(&self, r: &Rational) -> Self {
        RatFunc::scale(self, r)
    }
}
