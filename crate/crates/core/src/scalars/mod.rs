//! The two arithmetic backends (configurable-precision floats and exact
//! multivariate rational functions), the direction-expression parser, and the
//! integer-witness plumbing shared by all exact group-membership decisions.

pub mod expr;
pub mod poly;
pub mod rational;
pub mod real;

use std::fmt;

use num_bigint::BigInt;
use rug::Float;

pub use expr::DirectionExpr;
pub use poly::{MPoly, Monomial, MAX_VARS};
pub use rational::RatFn;
pub use real::{classify_margin, unit_interval_margin, MarginClass, NumCtx, DEFAULT_PRECISION};

use crate::error::ScalarError;

/// Common surface of the two backends. Values carry their own context
/// (precision for floats), so constants are derived from an existing value.
pub trait Scalar: Clone + PartialEq + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, n: i64) -> Self;
    fn s_add(&self, other: &Self) -> Self;
    fn s_sub(&self, other: &Self) -> Self;
    fn s_mul(&self, other: &Self) -> Self;
    fn s_div(&self, other: &Self) -> Result<Self, ScalarError>;
    fn s_neg(&self) -> Self;
    /// Exact zero test: bit-exact for floats, canonical-form for symbolic.
    fn is_zero_exact(&self) -> bool;
}

impl Scalar for Float {
    fn zero_like(&self) -> Self {
        Float::with_val(self.prec(), 0)
    }

    fn one_like(&self) -> Self {
        Float::with_val(self.prec(), 1)
    }

    fn from_i64_like(&self, n: i64) -> Self {
        Float::with_val(self.prec(), n)
    }

    fn s_add(&self, other: &Self) -> Self {
        Float::with_val(self.prec().max(other.prec()), self + other)
    }

    fn s_sub(&self, other: &Self) -> Self {
        Float::with_val(self.prec().max(other.prec()), self - other)
    }

    fn s_mul(&self, other: &Self) -> Self {
        Float::with_val(self.prec().max(other.prec()), self * other)
    }

    fn s_div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Float::with_val(self.prec().max(other.prec()), self / other))
    }

    fn s_neg(&self) -> Self {
        Float::with_val(self.prec(), -self)
    }

    fn is_zero_exact(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for RatFn {
    fn zero_like(&self) -> Self {
        RatFn::zero()
    }

    fn one_like(&self) -> Self {
        RatFn::one()
    }

    fn from_i64_like(&self, n: i64) -> Self {
        RatFn::from_int(n)
    }

    fn s_add(&self, other: &Self) -> Self {
        self.add(other)
    }

    fn s_sub(&self, other: &Self) -> Self {
        self.sub(other)
    }

    fn s_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }

    fn s_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.div(other)
    }

    fn s_neg(&self) -> Self {
        self.neg()
    }

    fn is_zero_exact(&self) -> bool {
        self.is_zero()
    }
}

/// Integer coefficients `(n_1, ..., n_{d+1})` witnessing membership of a point
/// in the return group `Z f_1 + ... + Z f_{d+1}`.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct IntegerWitness(pub Vec<i64>);

impl IntegerWitness {
    pub fn from_bigints(coeffs: &[BigInt]) -> Result<Self, ScalarError> {
        let mut out = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            out.push(i64::try_from(c).map_err(|_| ScalarError::WitnessOverflow)?);
        }
        Ok(IntegerWitness(out))
    }
}

impl fmt::Display for IntegerWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
