//! Sparse multivariate polynomials over the rationals in the indeterminates
//! `t_1 .. t_9`, with graded-lexicographic monomial order (`t_1 > t_2 > ...`)
//! and an exact GCD via primitive pseudo-remainder sequences.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rug::ops::Pow;
use rug::Float;

/// Hard cap on the number of indeterminates (the word format limits d+1 to 9).
pub const MAX_VARS: usize = 9;

/// Exponent vector. Variable `t_k` (1-based) lives at slot `k-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// The monomial `t_k`, `k` 1-based.
    pub fn var(k: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&k), "variable index out of range");
        let mut exps = [0u16; MAX_VARS];
        exps[k - 1] = 1;
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_in(&self, k: usize) -> u16 {
        self.exps[k - 1]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i] + other.exps[i];
        }
        Monomial { exps }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div_into(&self, other: &Self) -> Self {
        let mut exps = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = other.exps[i] - self.exps[i];
        }
        Monomial { exps }
    }

    /// Erase the `t_k` exponent (used when splitting off a main variable).
    fn without_var(&self, k: usize) -> Self {
        let mut m = *self;
        m.exps[k - 1] = 0;
        m
    }
}

// Graded lex: higher total degree first, ties broken so that a larger
// exponent on an earlier variable wins (t_1 > t_2 > ...).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in 0..MAX_VARS {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with exact rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MPoly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// The polynomial `t_k`, `k` 1-based.
    pub fn var(k: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(k), BigRational::one());
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(Monomial::is_one)
    }

    /// The constant term (zero if absent).
    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, k: usize) -> u16 {
        self.terms
            .keys()
            .map(|m| m.degree_in(k))
            .max()
            .unwrap_or(0)
    }

    /// Leading (monomial, coefficient) in graded lex order.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// 1-based indices of the variables that actually occur.
    pub fn vars_used(&self) -> Vec<usize> {
        let mut used = [false; MAX_VARS];
        for m in self.terms.keys() {
            for (i, u) in used.iter_mut().enumerate() {
                if m.degree_in(i + 1) > 0 {
                    *u = true;
                }
            }
        }
        used.iter()
            .enumerate()
            .filter(|(_, u)| **u)
            .map(|(i, _)| i + 1)
            .collect()
    }

    fn insert_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect();
        MPoly { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        let terms = self.terms.iter().map(|(m, k)| (*m, k * c)).collect();
        MPoly { terms }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(mm, cc)| (mm.mul(m), cc * c))
            .collect();
        MPoly { terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact multivariate division: `self / div` if the remainder vanishes.
    pub fn div_exact(&self, div: &Self) -> Option<Self> {
        assert!(!div.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        let (lm, lc) = {
            let (m, c) = div.leading().unwrap();
            (*m, c.clone())
        };
        while let Some((rm, rc)) = rem.leading() {
            if !lm.divides(rm) {
                return None;
            }
            let qm = lm.div_into(rm);
            let qc = rc / &lc;
            quot.insert_term(qm, qc.clone());
            rem = rem.sub(&div.mul_monomial(&qm, &qc));
        }
        Some(quot)
    }

    /// Divide by the leading coefficient so the leading term is monic.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, lc)) => {
                let inv = BigRational::one() / lc;
                self.scale(&inv)
            }
        }
    }

    /// Dense coefficient list of `self` viewed as univariate in `t_k`
    /// over polynomials in the remaining variables; index = degree.
    fn coeffs_in_var(&self, k: usize) -> Vec<MPoly> {
        let deg = self.degree_in(k) as usize;
        let mut out = vec![MPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let d = m.degree_in(k) as usize;
            out[d].insert_term(m.without_var(k), c.clone());
        }
        out
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Returns 1 for the zero polynomial.
    pub fn rational_content(&self) -> BigRational {
        use num_integer::Integer;
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num_gcd, den_lcm)
    }

    /// Componentwise-minimal exponent vector over all terms.
    fn common_monomial(&self) -> Monomial {
        let mut exps = [u16::MAX; MAX_VARS];
        for m in self.terms.keys() {
            for i in 0..MAX_VARS {
                exps[i] = exps[i].min(m.exps[i]);
            }
        }
        if self.terms.is_empty() {
            return Monomial::one();
        }
        Monomial { exps }
    }

    fn div_monomial(&self, m: &Monomial) -> MPoly {
        let terms = self
            .terms
            .iter()
            .map(|(mm, c)| (m.div_into(mm), c.clone()))
            .collect();
        MPoly { terms }
    }

    /// GCD, normalized monic. `gcd(0, 0) = 0`.
    pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        // split off the common monomial factor first
        let ma = a.common_monomial();
        let mb = b.common_monomial();
        let shared = {
            let mut exps = [0u16; MAX_VARS];
            for i in 0..MAX_VARS {
                exps[i] = ma.exps[i].min(mb.exps[i]);
            }
            Monomial { exps }
        };
        if !shared.is_one() {
            let inner = MPoly::gcd(&a.div_monomial(&ma), &b.div_monomial(&mb));
            return inner.mul_monomial(&shared, &BigRational::one()).monic();
        }
        let a = a.div_monomial(&ma);
        let b = b.div_monomial(&mb);
        if a.is_constant() || b.is_constant() {
            return MPoly::one();
        }
        // Main variable: smallest index occurring in either operand.
        let k = {
            let mut vars = a.vars_used();
            vars.extend(b.vars_used());
            *vars.iter().min().unwrap()
        };
        if a.degree_in(k) == 0 || b.degree_in(k) == 0 {
            // One operand is free of t_k: gcd divides the t_k-content of the other.
            let (free, other) = if a.degree_in(k) == 0 { (&a, &b) } else { (&b, &a) };
            let cont = content_in_var(other, k);
            return MPoly::gcd(free, &cont);
        }
        let cont_a = content_in_var(&a, k);
        let cont_b = content_in_var(&b, k);
        let pp_a = primitive_scaled(&a.div_exact(&cont_a).expect("content divides"));
        let pp_b = primitive_scaled(&b.div_exact(&cont_b).expect("content divides"));
        let cont_gcd = MPoly::gcd(&cont_a, &cont_b);

        // Primitive PRS on the primitive parts, univariate in t_k; rational
        // contents are stripped after every step to keep coefficients small.
        let (mut f, mut g) = if pp_a.degree_in(k) >= pp_b.degree_in(k) {
            (pp_a, pp_b)
        } else {
            (pp_b, pp_a)
        };
        loop {
            let r = pseudo_rem(&f, &g, k);
            if r.is_zero() {
                let pp_g = g.div_exact(&content_in_var(&g, k)).expect("content divides");
                return cont_gcd.mul(&pp_g).monic();
            }
            if r.degree_in(k) == 0 {
                return cont_gcd.monic();
            }
            let r_prim = primitive_scaled(
                &r.div_exact(&content_in_var(&r, k)).expect("content divides"),
            );
            f = g;
            g = r_prim;
        }
    }

    /// Evaluate at numeric values `vals[i]` for `t_{i+1}`, at the precision of `vals`.
    pub fn eval(&self, vals: &[Float]) -> Float {
        let prec = vals.first().map(|v| v.prec()).unwrap_or(64);
        let mut acc = Float::with_val(prec, 0);
        for (m, c) in &self.terms {
            let mut term = rational_to_float(c, prec);
            for (i, v) in vals.iter().enumerate() {
                let e = m.degree_in(i + 1);
                if e > 0 {
                    term *= Float::with_val(prec, v.pow(e as u32));
                }
            }
            acc += term;
        }
        acc
    }
}

pub fn rational_to_float(q: &BigRational, prec: u32) -> Float {
    // Exact integer conversion through rug, then one correctly rounded division.
    let num = Float::with_val(prec, rug::Integer::from_str_radix(&q.numer().to_string(), 10).unwrap());
    let den = Float::with_val(prec, rug::Integer::from_str_radix(&q.denom().to_string(), 10).unwrap());
    num / den
}

/// Scale to coprime integer coefficients.
fn primitive_scaled(p: &MPoly) -> MPoly {
    let c = p.rational_content();
    let inv = BigRational::one() / c;
    p.scale(&inv)
}

/// GCD of the `t_k`-coefficients of `p` (a polynomial in the other variables).
fn content_in_var(p: &MPoly, k: usize) -> MPoly {
    let coeffs = p.coeffs_in_var(k);
    let mut acc = MPoly::zero();
    for c in &coeffs {
        if !c.is_zero() {
            acc = MPoly::gcd(&acc, c);
            if acc.is_one() {
                break;
            }
        }
    }
    acc
}

/// Pseudo-remainder of `f` by `g` in the variable `t_k`:
/// `lc(g)^(deg f - deg g + 1) * f  mod  g`.
fn pseudo_rem(f: &MPoly, g: &MPoly, k: usize) -> MPoly {
    let dg = g.degree_in(k) as i64;
    let g_coeffs = g.coeffs_in_var(k);
    let lc_g = g_coeffs.last().unwrap().clone();
    let mut r = f.clone();
    loop {
        let dr = r.degree_in(k) as i64;
        if r.is_zero() || dr < dg {
            return r;
        }
        let r_coeffs = r.coeffs_in_var(k);
        let lc_r = r_coeffs.last().unwrap().clone();
        // r <- lc(g)*r - lc(r)*t_k^(dr-dg)*g
        let shift = {
            let mut m = Monomial::one();
            for _ in 0..(dr - dg) {
                m = m.mul(&Monomial::var(k));
            }
            m
        };
        let scaled_g = g.mul(&lc_r).mul_monomial(&shift, &BigRational::one());
        r = r.mul(&lc_g).sub(&scaled_g);
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = abs.is_one();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !coeff_is_one {
                    write!(f, "{abs}*")?;
                }
                let mut first_var = true;
                for k in 1..=MAX_VARS {
                    let e = m.degree_in(k);
                    if e == 0 {
                        continue;
                    }
                    if !first_var {
                        write!(f, "*")?;
                    }
                    first_var = false;
                    if e == 1 {
                        write!(f, "t{k}")?;
                    } else {
                        write!(f, "t{k}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(k: usize) -> MPoly {
        MPoly::var(k)
    }

    #[test]
    fn grlex_order() {
        // t1^2 > t1*t2 > t2^2 > t1 > t2 > 1
        let m = |a: u16, b: u16| {
            let mut e = [0u16; MAX_VARS];
            e[0] = a;
            e[1] = b;
            Monomial { exps: e }
        };
        assert!(m(2, 0) > m(1, 1));
        assert!(m(1, 1) > m(0, 2));
        assert!(m(0, 2) > m(1, 0));
        assert!(m(1, 0) > m(0, 1));
        assert!(m(0, 1) > m(0, 0));
    }

    #[test]
    fn arithmetic_basics() {
        let p = t(1).add(&t(2)); // t1 + t2
        let q = t(1).sub(&t(2)); // t1 - t2
        let prod = p.mul(&q);
        let expect = t(1).mul(&t(1)).sub(&t(2).mul(&t(2)));
        assert_eq!(prod, expect);
    }

    #[test]
    fn exact_division() {
        let p = t(1).pow(2).sub(&t(2).pow(2));
        let d = t(1).sub(&t(2));
        let q = p.div_exact(&d).unwrap();
        assert_eq!(q, t(1).add(&t(2)));
        assert!(p.div_exact(&t(1).add(&MPoly::one())).is_none());
    }

    #[test]
    fn gcd_simple() {
        // gcd((t1^2 - t2^2), (t1 - t2)^2) = t1 - t2
        let a = t(1).pow(2).sub(&t(2).pow(2));
        let b = t(1).sub(&t(2)).pow(2);
        let g = MPoly::gcd(&a, &b);
        assert_eq!(g, t(1).sub(&t(2)));
    }

    #[test]
    fn gcd_coprime_and_constants() {
        let a = t(1).add(&MPoly::one());
        let b = t(2).add(&MPoly::one());
        assert!(MPoly::gcd(&a, &b).is_one());
        assert!(MPoly::gcd(&MPoly::from_int(6), &MPoly::from_int(4)).is_one());
        assert_eq!(MPoly::gcd(&MPoly::zero(), &a), a.monic());
    }

    #[test]
    fn gcd_with_content() {
        // a = t2*(t1+1)^2, b = t2^2*(t1+1) -> gcd = t2*(t1+1)
        let f = t(1).add(&MPoly::one());
        let a = t(2).mul(&f.pow(2));
        let b = t(2).pow(2).mul(&f);
        let g = MPoly::gcd(&a, &b);
        assert_eq!(g, t(2).mul(&f).monic());
    }

    #[test]
    fn eval_matches_structure() {
        let p = t(1).mul(&t(2)).add(&MPoly::from_int(3)); // t1*t2 + 3
        let vals = [Float::with_val(128, 2), Float::with_val(128, 5)];
        let v = p.eval(&vals);
        assert_eq!(v, Float::with_val(128, 13));
    }

    #[test]
    fn display_round_readable() {
        let p = t(1).pow(2).scale(&BigRational::new(3.into(), 2.into())).sub(&t(2)).add(&MPoly::one());
        assert_eq!(p.to_string(), "3/2*t1^2 - t2 + 1");
    }
}
