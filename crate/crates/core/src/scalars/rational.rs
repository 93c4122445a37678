//! Exact multivariate rational functions: the symbolic scalar backend.
//!
//! Values are kept in canonical form (gcd removed, denominator monic in
//! graded lex order), so structural equality is exact equality in
//! `Q(t_1, ..., t_d)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rug::Float;

use super::poly::{MPoly, Monomial};
use crate::error::ScalarError;

/// Element of the field of rational functions over Q in `t_1 .. t_d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFn {
    num: MPoly,
    den: MPoly, // nonzero, monic, coprime with num
}

impl RatFn {
    fn canonical(num: MPoly, den: MPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFn {
                num: MPoly::zero(),
                den: MPoly::one(),
            });
        }
        let g = MPoly::gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        // Make the denominator monic; fold its leading coefficient into num.
        let lc = den.leading().expect("den nonzero").1.clone();
        let inv = BigRational::one() / lc;
        Ok(RatFn {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn new(num: MPoly, den: MPoly) -> Result<Self, ScalarError> {
        Self::canonical(num, den)
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFn {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(MPoly::from_int(n))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_poly(MPoly::constant(q))
    }

    /// The indeterminate `t_k`, 1-based.
    pub fn var(k: usize) -> Self {
        Self::from_poly(MPoly::var(k))
    }

    pub fn zero() -> Self {
        Self::from_poly(MPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The underlying polynomial, if the denominator is 1.
    pub fn as_poly(&self) -> Option<&MPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::canonical(num, den).expect("nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::canonical(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominators")
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Self::canonical(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        Self::one().div(self)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.mul(&Self::from_int(n))
    }

    /// Decides whether `self` is a polynomial of the exact shape
    /// `c0 + c1 * t_k` with integer `c0`, `c1` and no other variable involved.
    pub fn integer_affine_pattern(&self, k: usize) -> Option<(BigInt, BigInt)> {
        let p = self.as_poly()?;
        let mut c0 = BigInt::zero();
        let mut c1 = BigInt::zero();
        for (m, c) in p.terms() {
            if !c.is_integer() {
                return None;
            }
            if m.is_one() {
                c0 = c.to_integer();
            } else if *m == Monomial::var(k) {
                c1 = c.to_integer();
            } else {
                return None;
            }
        }
        Some((c0, c1))
    }

    /// Numeric evaluation at `t_i = vals[i-1]`, at the precision of `vals`.
    pub fn eval(&self, vals: &[Float]) -> Result<Float, ScalarError> {
        let den = self.den.eval(vals);
        if den == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.num.eval(vals) / den)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num_simple = self.num.num_terms() <= 1;
        let den_simple = self.den.num_terms() <= 1 && {
            // A bare monomial with coefficient 1 needs no parentheses.
            self.den
                .leading()
                .map(|(_, c)| c.is_one() && !c.is_negative())
                .unwrap_or(true)
        };
        if num_simple {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        write!(f, "/")?;
        if den_simple {
            write!(f, "{}", self.den)
        } else {
            write!(f, "({})", self.den)
        }
    }
}
