//! Exact scalars: arbitrary-precision rationals, univariate rational
//! polynomials and the cyclotomic fields Q(ζ_n).

mod cyclotomic;
mod rational;
mod upoly;

pub use cyclotomic::{cyclotomic_poly, euler_phi, zeta, Cyclotomic};
pub use rational::{format_rational, parse_rational, rat, Rational};
pub use upoly::UPoly;

use std::fmt::Debug;

/// Errors raised by scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible cyclotomic orders {0} and {1}")]
    OrderMismatch(u32, u32),
    #[error("malformed scalar: {0}")]
    Malformed(String),
}

/// Commutative ring operations shared by every coefficient domain in the
/// crate (cyclotomic numbers, Laurent polynomials, restricted rational
/// functions). Tensors and Lie elements are generic over this trait.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_scalar(c: &Cyclotomic) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn from_rational(q: &Rational) -> Self {
        Self::from_scalar(&Cyclotomic::from_rational(q.clone()))
    }

    fn from_int(i: i64) -> Self {
        Self::from_rational(&Rational::from_integer(i.into()))
    }

    fn scaled(&self, c: &Cyclotomic) -> Self {
        self.times(&Self::from_scalar(c))
    }
}

/// Implements `Add`, `Sub`, `Mul` and `Neg` for owned values and references
/// by delegating to the [`Ring`] methods.
macro_rules! ring_ops {
    ($t:ty) => {
        impl std::ops::Add<&$t> for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                $crate::scalars::Ring::plus(self, rhs)
            }
        }
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::scalars::Ring::plus(&self, &rhs)
            }
        }
        impl std::ops::Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                $crate::scalars::Ring::minus(self, rhs)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $crate::scalars::Ring::minus(&self, &rhs)
            }
        }
        impl std::ops::Mul<&$t> for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                $crate::scalars::Ring::times(self, rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::scalars::Ring::times(&self, &rhs)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::scalars::Ring::negated(self)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::scalars::Ring::negated(&self)
            }
        }
    };
}
pub(crate) use ring_ops;
