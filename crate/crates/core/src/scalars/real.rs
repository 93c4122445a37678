//! Numeric scalar backend: MPFR floats at a configurable precision, plus the
//! margin discipline used by every ordering decision. A comparison that lands
//! within epsilon of a tie is reported as marginal, never silently resolved.

use rug::Float;

pub const DEFAULT_PRECISION: u32 = 128;

/// Construction context for numeric values: precision and default margin.
#[derive(Clone, Debug, PartialEq)]
pub struct NumCtx {
    prec: u32,
}

impl NumCtx {
    pub fn new(prec: u32) -> Self {
        NumCtx { prec: prec.max(16) }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Default margin, scaled with precision: 2^-40 (~1e-12) at 128 bits,
    /// shrinking bit-for-bit at higher precision, floored at 2^-20.
    pub fn default_epsilon(&self) -> Float {
        let shift = (self.prec as i64 - 88).max(20);
        Float::with_val(self.prec, Float::i_exp(1, -(shift as i32)))
    }

    pub fn float(&self, v: f64) -> Float {
        Float::with_val(self.prec, v)
    }

    pub fn from_i64(&self, v: i64) -> Float {
        Float::with_val(self.prec, v)
    }

    pub fn zero(&self) -> Float {
        Float::with_val(self.prec, 0)
    }

    pub fn one(&self) -> Float {
        Float::with_val(self.prec, 1)
    }
}

impl Default for NumCtx {
    fn default() -> Self {
        NumCtx::new(DEFAULT_PRECISION)
    }
}

/// Outcome of a margin-aware comparison.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MarginClass {
    Inside,
    Marginal,
    Outside,
}

/// Signed distance of `s` to the complement of (0, 1): positive inside,
/// negative outside, near zero on the boundary.
pub fn unit_interval_margin(s: &Float) -> Float {
    let prec = s.prec();
    let one_minus = Float::with_val(prec, 1 - s);
    if s < &one_minus {
        Float::with_val(prec, s)
    } else {
        one_minus
    }
}

pub fn classify_margin(margin: &Float, eps: &Float) -> MarginClass {
    let abs = Float::with_val(margin.prec(), margin.abs_ref());
    if &abs <= eps {
        MarginClass::Marginal
    } else if margin.is_sign_positive() {
        MarginClass::Inside
    } else {
        MarginClass::Outside
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_scales_with_precision() {
        let e128 = NumCtx::new(128).default_epsilon().to_f64();
        let e256 = NumCtx::new(256).default_epsilon().to_f64();
        assert!((e128 - 2f64.powi(-40)).abs() < 1e-25);
        assert!(e256 < e128);
        // ~1e-12 at the default precision
        assert!(e128 < 1e-12 && e128 > 1e-13);
    }

    #[test]
    fn margin_classification() {
        let ctx = NumCtx::new(128);
        let eps = ctx.default_epsilon();
        let m = unit_interval_margin(&ctx.float(0.3));
        assert_eq!(classify_margin(&m, &eps), MarginClass::Inside);
        let m = unit_interval_margin(&ctx.float(1.0 + 1e-6));
        assert_eq!(classify_margin(&m, &eps), MarginClass::Outside);
        let m = unit_interval_margin(&ctx.zero());
        assert_eq!(classify_margin(&m, &eps), MarginClass::Marginal);
    }
}
