//! Factor statistics: sliding-window counts, complexity, exact closed-form
//! frequencies (letters for every d, length-2 factors of the cubic case), the
//! interval-cell frequencies of the d = 1 case, and membership in the additive
//! eigenvalue group `Z mu[1] + ... + Z mu[d+1]`.

use std::collections::BTreeMap;

use rug::Float;

use crate::error::LanguageError;
use crate::geometry::Direction;
use crate::scalars::{IntegerWitness, MPoly, Monomial, RatFn, Scalar};

/// Occurrence counts of all factors of one length in a finite word.
#[derive(Clone, Debug)]
pub struct FactorTable {
    pub counts: BTreeMap<Vec<u8>, u64>,
    pub factor_len: usize,
    pub source_len: usize,
}

impl FactorTable {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Number of distinct factors seen: the sampled complexity p(n).
    pub fn complexity(&self) -> usize {
        self.counts.len()
    }
}

/// Exact sliding-window factor counts; every start position up to
/// `len - n` contributes.
pub fn factor_table(word: &[u8], n: usize) -> Result<FactorTable, LanguageError> {
    if n == 0 || n > word.len() {
        return Err(LanguageError::FactorTooLong { n, len: word.len() });
    }
    let mut counts: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
    for w in word.windows(n) {
        *counts.entry(w.to_vec()).or_insert(0) += 1;
    }
    Ok(FactorTable {
        counts,
        factor_len: n,
        source_len: word.len(),
    })
}

/// Where a frequency value came from.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Closed form in the direction components.
    ClosedForm,
    /// Exact measure of the factor's window cell (d = 1 interval chains).
    CellMeasure,
    /// Count over a long sampled prefix.
    Empirical,
}

/// A frequency together with its provenance.
#[derive(Clone, Debug)]
pub struct FrequencyValue {
    pub value: f64,
    pub provenance: Provenance,
}

/// Letter frequencies: `mu[1] = 1/(1 + sum theta_j)`,
/// `mu[i+1] = theta_i/(1 + sum theta_j)`. Works in both backends.
pub fn letter_frequency<S: Scalar>(dir: &Direction<S>, a: u8) -> S {
    assert!(
        (1..=dir.alphabet_size() as u8).contains(&a),
        "letter out of range"
    );
    dir.component(a as usize - 1)
        .s_div(&dir.component_sum())
        .expect("component sum > 0")
}

/// The seven length-2 closed forms of the cubic case in the chamber
/// `theta_1 > theta_2 > 0`, `theta_1 > 1`, as exact rational functions.
/// Pairs outside the language (11, 33) get 0.
pub fn pair_frequency_symbolic_chamber(w: [u8; 2]) -> RatFn {
    let t1 = RatFn::var(1);
    let t2 = RatFn::var(2);
    let s = RatFn::one().add(&t1).add(&t2);
    let two_t1_s = t1.scale_int(2).mul(&s);
    match w {
        [1, 3] | [3, 1] => t2.div(&two_t1_s).unwrap(),
        [1, 2] | [2, 1] => t1.scale_int(2).sub(&t2).div(&two_t1_s).unwrap(),
        [2, 3] | [3, 2] => t2.mul(&t1.scale_int(2).sub(&RatFn::one())).div(&two_t1_s).unwrap(),
        [2, 2] => t1
            .sub(&RatFn::one())
            .mul(&t1.sub(&t2))
            .div(&t1.mul(&s))
            .unwrap(),
        _ => RatFn::zero(),
    }
}

/// Permutation taking a numeric cubic direction into the chamber
/// `theta_1 > theta_2 > 0, theta_1 > 1`, i.e. the second component strictly
/// largest. The largest component moves to the theta_1 slot; the remaining
/// two keep their relative order, the earlier becoming the unit. Old letter
/// `l` plays the role of new letter `letter_map[l-1]`.
#[derive(Clone, Debug)]
pub struct ChamberReduction {
    /// `letter_map[old_letter - 1] = new_letter`
    pub letter_map: [u8; 3],
    /// chamber components (theta'_1, theta'_2)
    pub components: (Float, Float),
    /// true when the direction was already in the chamber
    pub identity: bool,
}

/// Reduce a cubic direction to the chamber, refusing on numeric ties.
pub fn chamber_reduction(
    dir: &Direction<Float>,
    eps: &Float,
) -> Result<ChamberReduction, LanguageError> {
    if dir.dim() != 2 {
        return Err(LanguageError::NotCubic(dir.dim()));
    }
    let prec = dir.ctx().prec();
    let comps: Vec<Float> = (0..3).map(|i| dir.component(i)).collect();
    for i in 0..3 {
        for j in i + 1..3 {
            let diff = Float::with_val(prec, &comps[i] - &comps[j]);
            if diff.abs() <= *eps {
                return Err(LanguageError::ChamberViolation);
            }
        }
    }
    let p_max = (0..3)
        .max_by(|&a, &b| comps[a].partial_cmp(&comps[b]).unwrap())
        .unwrap();
    let rest: Vec<usize> = (0..3).filter(|&i| i != p_max).collect();
    let (p_unit, p_small) = (rest[0], rest[1]);
    let mut letter_map = [0u8; 3];
    letter_map[p_unit] = 1;
    letter_map[p_max] = 2;
    letter_map[p_small] = 3;
    let t1 = Float::with_val(prec, &comps[p_max] / &comps[p_unit]);
    let t2 = Float::with_val(prec, &comps[p_small] / &comps[p_unit]);
    Ok(ChamberReduction {
        letter_map,
        components: (t1, t2),
        identity: p_max == 1,
    })
}

/// Closed-form frequency of a two-letter factor of the cubic billiard,
/// reducing to the supported chamber by the coordinate permutation when
/// needed. The direction components are scaled projectively, which leaves the
/// billiard trajectories and hence the frequencies unchanged.
pub fn pair_frequency_d2(
    dir: &Direction<Float>,
    w: [u8; 2],
    eps: &Float,
) -> Result<Float, LanguageError> {
    let prec = dir.ctx().prec();
    let red = chamber_reduction(dir, eps)?;
    let mapped = [red.letter_map[w[0] as usize - 1], red.letter_map[w[1] as usize - 1]];
    let sym = pair_frequency_symbolic_chamber(mapped);
    let vals = [red.components.0.clone(), red.components.1.clone()];
    sym.eval(&vals)
        .map(|v| Float::with_val(prec, v))
        .map_err(LanguageError::from)
}

/// Decide exactly whether `value = sum n_i mu[i]` with integer `n_i`, for the
/// generic symbolic direction in `d` variables. Equivalent to
/// `value * (1 + t_1 + ... + t_d)` being an integer-coefficient affine
/// polynomial `n_1 + n_2 t_1 + ... + n_{d+1} t_d`.
pub fn eigenvalue_group_membership(value: &RatFn, d: usize) -> Option<IntegerWitness> {
    let mut s = RatFn::one();
    for k in 1..=d {
        s = s.add(&RatFn::var(k));
    }
    let scaled = value.mul(&s);
    let p = scaled.as_poly()?;
    integer_affine_coeffs(p, d).map(|coeffs| {
        IntegerWitness::from_bigints(&coeffs).expect("witness fits i64")
    })
}

/// Coefficients `[c0, c1, ..., cd]` of an integer affine polynomial
/// `c0 + c1 t_1 + ... + cd t_d`, if `p` has that exact shape.
fn integer_affine_coeffs(p: &MPoly, d: usize) -> Option<Vec<num_bigint::BigInt>> {
    use num_traits::Zero;
    let mut coeffs = vec![num_bigint::BigInt::zero(); d + 1];
    for (m, c) in p.terms() {
        if !c.is_integer() {
            return None;
        }
        if m.is_one() {
            coeffs[0] = c.to_integer();
            continue;
        }
        let mut matched = false;
        for k in 1..=d {
            if *m == Monomial::var(k) {
                coeffs[k] = c.to_integer();
                matched = true;
                break;
            }
        }
        if !matched {
            return None;
        }
    }
    Some(coeffs)
}

/// Exact factor frequency for d = 1: measure of the interval cell
/// `{x : E^k(x) in W^(w_k) for all k}` divided by the window length.
/// The window is `[-theta, 1]` in `f_2`-units with `W^(1) = [0,1]`,
/// `W^(2) = [-theta, 0]`, and the exchange adds `f_1 = -theta` resp. `f_2 = 1`.
pub fn sturmian_factor_frequency(
    dir: &Direction<Float>,
    w: &[u8],
) -> Result<Float, LanguageError> {
    if dir.dim() != 1 {
        return Err(LanguageError::NotCubic(dir.dim()));
    }
    let prec = dir.ctx().prec();
    let theta = dir.component(1);
    let window = |i: u8| -> (Float, Float) {
        match i {
            1 => (Float::with_val(prec, 0), Float::with_val(prec, 1)),
            _ => (Float::with_val(prec, -&theta), Float::with_val(prec, 0)),
        }
    };
    assert!(w.iter().all(|&l| l == 1 || l == 2), "letters out of range");
    let last = *w.last().expect("nonempty factor");
    let mut cell: Vec<(Float, Float)> = vec![window(last)];
    for &letter in w.iter().rev().skip(1) {
        // pull back through the branch over W^(letter): subtract f_letter
        let shift = match letter {
            1 => theta.clone(),
            _ => Float::with_val(prec, -1),
        };
        let (wlo, whi) = window(letter);
        let mut next = Vec::with_capacity(cell.len() + 1);
        for (lo, hi) in &cell {
            let lo2 = Float::with_val(prec, lo + &shift).max(&wlo);
            let hi2 = Float::with_val(prec, hi + &shift).min(&whi);
            if lo2 < hi2 {
                next.push((lo2, hi2));
            }
        }
        cell = next;
        if cell.is_empty() {
            return Ok(Float::with_val(prec, 0));
        }
    }
    let mut measure = Float::with_val(prec, 0);
    for (lo, hi) in &cell {
        measure += Float::with_val(prec, hi - lo);
    }
    Ok(measure / Float::with_val(prec, 1 + &theta))
}
