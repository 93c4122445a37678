//! Orbit dynamics: the exchange map on the window, biinfinite word generation
//! from a generic parameter, the induced tiling of the physical line, and an
//! independent mirror-law billiard simulator used for cross-validation.

use std::io::{BufRead, Write};

use rug::Float;

use crate::error::{DynamicsError, GeometryError};
use crate::geometry::{
    basis_vectors, locate_piece, piece_coefficients, Direction, InternalPoint,
};

/// A finite window of a biinfinite coded word. `letters[origin]` is `x_0`.
#[derive(Clone, Debug)]
pub struct CodedWord {
    pub letters: Vec<u8>,
    pub origin: usize,
    pub theta_text: String,
    pub parameter: Vec<Float>,
    pub min_margin: f64,
}

impl CodedWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The one-sided part `x_0 x_1 ...`.
    pub fn forward(&self) -> &[u8] {
        &self.letters[self.origin..]
    }
}

/// One step of the exchange map: locate the piece containing `p` and
/// translate by the matching generator, `p -> p + f_i`.
pub fn exchange_step(
    p: &InternalPoint<Float>,
    dir: &Direction<Float>,
    eps: &Float,
) -> Result<(u8, InternalPoint<Float>), GeometryError> {
    let hit = locate_piece(p, dir, eps)?;
    let basis = basis_vectors(dir);
    Ok((hit.letter, p.add(&basis[hit.letter as usize - 1])))
}

/// Inverse exchange: find the unique `i` with `p - f_i` interior to `W^(i)`.
pub fn exchange_inverse(
    p: &InternalPoint<Float>,
    dir: &Direction<Float>,
    eps: &Float,
) -> Result<(u8, InternalPoint<Float>), GeometryError> {
    let basis = basis_vectors(dir);
    let mut best: Option<(usize, InternalPoint<Float>, Float)> = None;
    for i in 1..=dir.dim() + 1 {
        let q = p.sub(&basis[i - 1]);
        let (_, margin) = piece_coefficients(&q, dir, i);
        if best.as_ref().map(|(_, _, m)| margin > *m).unwrap_or(true) {
            best = Some((i, q, margin));
        }
    }
    let (letter, q, margin) = best.expect("at least one piece");
    match crate::scalars::classify_margin(&margin, eps) {
        crate::scalars::MarginClass::Inside => Ok((letter as u8, q)),
        crate::scalars::MarginClass::Marginal => Err(GeometryError::NearBoundary {
            margin: margin.to_f64(),
        }),
        crate::scalars::MarginClass::Outside => Err(GeometryError::Outside),
    }
}

/// Orbit walker. The current point is represented as
/// `m + sum_i counts[i] * f_i` with exact integer counts, so coordinates are
/// re-derived from `m` each step and rounding does not accumulate with orbit
/// length. Piece margins are classified in f64, which resolves them far below
/// the epsilon scale.
struct OrbitCursor {
    thetas: Vec<Float>, // theta_0 = 1, theta_1, ..., theta_d
    eps_f: f64,
    m: Vec<Float>,
    counts: Vec<i64>,
    coords: Vec<Float>,
    s1: Float,
    sj: Float,
    tmp: Float,
    min_margin: f64,
}

impl OrbitCursor {
    fn new(m: &InternalPoint<Float>, dir: &Direction<Float>, eps: &Float) -> Self {
        let d = dir.dim();
        let prec = dir.ctx().prec();
        OrbitCursor {
            thetas: (0..=d).map(|i| dir.component(i)).collect(),
            eps_f: eps.to_f64(),
            m: m.coeffs.clone(),
            counts: vec![0; d + 1],
            coords: vec![Float::new(prec); d],
            s1: Float::new(prec),
            sj: Float::new(prec),
            tmp: Float::new(prec),
            min_margin: f64::INFINITY,
        }
    }

    fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Refresh `coords` to `a_j = m_j + counts[j] - counts[0] * theta_j`.
    fn refresh_coords(&mut self) {
        use rug::Assign;
        for j in 1..=self.dim() {
            self.tmp.assign(&self.thetas[j]);
            self.tmp *= self.counts[0];
            let a = &mut self.coords[j - 1];
            a.assign(&self.m[j - 1]);
            *a += self.counts[j];
            *a -= &self.tmp;
        }
    }

    /// Piece index of the current point, or the best signed margin on failure.
    fn current_piece(&mut self) -> Result<u8, f64> {
        use rug::Assign;
        self.refresh_coords();
        let d = self.dim();
        let mut best_margin = f64::NEG_INFINITY;
        // candidate i = 1: coefficients are the coordinates themselves
        let mut margin = f64::INFINITY;
        for a in &self.coords {
            margin = margin.min(unit_margin_f64(a));
        }
        if margin > self.eps_f {
            self.min_margin = self.min_margin.min(margin);
            return Ok(1);
        }
        best_margin = best_margin.max(margin);
        // candidates i = 2 ..= d+1: s_1 = -a_i/theta_{i-1}, s_j = a_j + s_1 theta_{j-1}
        for i in 2..=d + 1 {
            self.s1.assign(&self.coords[i - 2]);
            self.s1 = -self.s1.clone();
            self.s1 /= &self.thetas[i - 1];
            let mut margin = unit_margin_f64(&self.s1);
            if margin > self.eps_f {
                for j in 2..=d + 1 {
                    if j == i {
                        continue;
                    }
                    self.sj.assign(&self.s1);
                    self.sj *= &self.thetas[j - 1];
                    self.sj += &self.coords[j - 2];
                    margin = margin.min(unit_margin_f64(&self.sj));
                }
                if margin > self.eps_f {
                    self.min_margin = self.min_margin.min(margin);
                    return Ok(i as u8);
                }
            }
            best_margin = best_margin.max(margin);
        }
        Err(best_margin)
    }

    /// Emit the current letter and advance one step: `x -> x + f_i`.
    fn forward(&mut self) -> Result<u8, f64> {
        let letter = self.current_piece()?;
        self.counts[letter as usize - 1] += 1;
        Ok(letter)
    }

    /// Step back: find `i` with `x - f_i` interior to `W^(i)`, move there.
    fn backward(&mut self) -> Result<u8, f64> {
        let d = self.dim();
        let mut best_margin = f64::NEG_INFINITY;
        for i in 1..=d + 1 {
            self.counts[i - 1] -= 1;
            let saved = self.min_margin;
            match self.current_piece() {
                Ok(letter) if letter as usize == i => return Ok(i as u8),
                Ok(_) => self.min_margin = saved,
                Err(m) => best_margin = best_margin.max(m),
            }
            self.counts[i - 1] += 1;
        }
        Err(best_margin)
    }
}

fn unit_margin_f64(s: &Float) -> f64 {
    let v = s.to_f64();
    v.min(1.0 - v)
}

/// Generate `n_back` letters before the origin and `n_fwd` from it, coding the
/// orbit of `m` under the exchange map. Deterministic in `(m, dir)`.
pub fn generate_word(
    m: &InternalPoint<Float>,
    dir: &Direction<Float>,
    n_back: usize,
    n_fwd: usize,
    eps: &Float,
) -> Result<CodedWord, DynamicsError> {
    if dir.alphabet_size() > 9 {
        return Err(DynamicsError::AlphabetTooLarge(dir.alphabet_size()));
    }
    let mut letters = vec![0u8; n_back + n_fwd];
    let mut min_margin = f64::INFINITY;

    if n_back > 0 {
        let mut cur = OrbitCursor::new(m, dir, eps);
        for k in 0..n_back {
            match cur.backward() {
                Ok(letter) => letters[n_back - 1 - k] = letter,
                Err(margin) => {
                    return Err(DynamicsError::NearBoundary {
                        step: -(k as i64) - 1,
                        margin,
                    })
                }
            }
        }
        min_margin = min_margin.min(cur.min_margin);
    }
    if n_fwd > 0 {
        let mut cur = OrbitCursor::new(m, dir, eps);
        for k in 0..n_fwd {
            match cur.forward() {
                Ok(letter) => letters[n_back + k] = letter,
                Err(margin) => {
                    return Err(DynamicsError::NearBoundary {
                        step: k as i64,
                        margin,
                    })
                }
            }
        }
        min_margin = min_margin.min(cur.min_margin);
    }

    Ok(CodedWord {
        letters,
        origin: n_back,
        theta_text: dir.text().to_string(),
        parameter: m.coeffs.clone(),
        min_margin,
    })
}

/// Rejection-sample a window point whose first 1000 exchange steps clear a
/// margin of `10 * eps`. Deterministic for a fixed seed.
pub fn sample_generic_parameter(
    dir: &Direction<Float>,
    seed: u64,
    eps: &Float,
) -> Result<InternalPoint<Float>, DynamicsError> {
    use rand::Rng;
    use rand::SeedableRng;
    let ctx = dir.ctx();
    let basis = basis_vectors(dir);
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let strict = Float::with_val(ctx.prec(), eps * 10u32);
    const ATTEMPTS: u32 = 100;
    for _ in 0..ATTEMPTS {
        let d = dir.dim();
        let mut p = InternalPoint::new(vec![ctx.zero(); d]);
        for b in &basis {
            let u: f64 = rng.random_range(0.0..1.0);
            p = p.add(&b.scale(&ctx.float(u)));
        }
        let mut cur = OrbitCursor::new(&p, dir, &strict);
        let mut ok = true;
        for _ in 0..1000 {
            if cur.forward().is_err() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(p);
        }
    }
    Err(DynamicsError::SamplingExhausted { attempts: ATTEMPTS })
}

/// One tile of the induced tiling of the physical line.
#[derive(Clone, Debug, PartialEq)]
pub struct Tile {
    pub letter: u8,
    pub length: f64,
}

/// A finite run of the cut-and-project tiling, starting at the origin of the
/// physical line (the parameter lies in the internal hyperplane).
#[derive(Clone, Debug)]
pub struct TilingSegment {
    pub tiles: Vec<Tile>,
    pub start_offset: f64,
}

/// Tile lengths by letter: `<e_i, theta> / |theta| = theta_{i-1} / |theta|`.
pub fn tile_lengths(dir: &Direction<Float>) -> Vec<Float> {
    let prec = dir.ctx().prec();
    let norm = dir.norm();
    (0..dir.alphabet_size())
        .map(|i| Float::with_val(prec, dir.component(i) / &norm))
        .collect()
}

/// The first `count` tiles of the tiling of parameter `m`: tile `k` carries
/// letter `x_k` and the length of that letter.
pub fn cut_project_segment(
    m: &InternalPoint<Float>,
    dir: &Direction<Float>,
    count: usize,
    eps: &Float,
) -> Result<TilingSegment, DynamicsError> {
    let word = generate_word(m, dir, 0, count, eps)?;
    let lengths = tile_lengths(dir);
    let tiles = word
        .forward()
        .iter()
        .map(|&letter| Tile {
            letter,
            length: lengths[letter as usize - 1].to_f64(),
        })
        .collect();
    Ok(TilingSegment {
        tiles,
        start_offset: 0.0,
    })
}

/// Ball state on the boundary of the unit hypercube: a position with exactly
/// one coordinate on a face, and the signs applied to the direction
/// components.
#[derive(Clone, Debug)]
pub struct BilliardState {
    pub position: Vec<Float>,
    pub velocity_signs: Vec<i8>,
}

impl BilliardState {
    /// Deterministic start on the interior of the face `x_1 = 0`, moving with
    /// all-positive velocity.
    pub fn sample_on_face(dir: &Direction<Float>, seed: u64) -> Self {
        use rand::Rng;
        use rand::SeedableRng;
        let ctx = dir.ctx();
        let n = dir.alphabet_size();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        let mut position = Vec::with_capacity(n);
        position.push(ctx.zero());
        for _ in 1..n {
            let u: f64 = rng.random_range(0.05..0.95);
            position.push(ctx.float(u));
        }
        BilliardState {
            position,
            velocity_signs: vec![1; n],
        }
    }

    fn validate(&self, n: usize) -> Result<(), DynamicsError> {
        if self.position.len() != n || self.velocity_signs.len() != n {
            return Err(DynamicsError::BadStartPoint);
        }
        let mut on_face = 0;
        for x in &self.position {
            if *x < 0 || *x > 1 {
                return Err(DynamicsError::BadStartPoint);
            }
            if *x == 0 || *x == 1 {
                on_face += 1;
            }
        }
        if on_face != 1 {
            return Err(DynamicsError::BadStartPoint);
        }
        Ok(())
    }
}

/// Mirror-law simulation: advance to the next face `n` times, emitting the
/// index of the coordinate hyperplane hit (opposite faces share a letter).
pub fn billiard_simulate(
    start: &BilliardState,
    dir: &Direction<Float>,
    n: usize,
    eps: &Float,
) -> Result<Vec<u8>, DynamicsError> {
    let count = dir.alphabet_size();
    start.validate(count)?;
    let prec = dir.ctx().prec();
    let mut pos = start.position.clone();
    let mut signs = start.velocity_signs.clone();
    let mut letters = Vec::with_capacity(n);
    let eps_f = eps.to_f64();
    let mut times = vec![Float::new(prec); count];
    for step in 0..n as u64 {
        for j in 0..count {
            let t = &mut times[j];
            use rug::Assign;
            if signs[j] > 0 {
                t.assign(1 - &pos[j]);
            } else {
                t.assign(&pos[j]);
            }
            *t /= dir.component(j);
        }
        let (mut best, mut second) = (0usize, f64::INFINITY);
        for j in 1..count {
            if times[j] < times[best] {
                second = second.min(times[best].to_f64());
                best = j;
            } else {
                second = second.min(times[j].to_f64());
            }
        }
        if second - times[best].to_f64() <= eps_f {
            return Err(DynamicsError::CornerHit { step });
        }
        let dt = times[best].clone();
        for j in 0..count {
            if j == best {
                continue;
            }
            let mut delta = Float::with_val(prec, &dt * &dir.component(j));
            if signs[j] < 0 {
                delta = -delta;
            }
            pos[j] += delta;
        }
        // snap the bouncing coordinate onto its face and reflect
        use rug::Assign;
        if signs[best] > 0 {
            pos[best].assign(1);
        } else {
            pos[best].assign(0);
        }
        signs[best] = -signs[best];
        letters.push((best + 1) as u8);
    }
    Ok(letters)
}

/// Write a word file: a header line and one ASCII line of digits.
pub fn write_word_file<W: Write>(word: &CodedWord, mut out: W) -> std::io::Result<()> {
    let m_text: Vec<String> = word
        .parameter
        .iter()
        .map(|c| {
            let digits = (c.prec() as f64 * 0.302) as usize + 4;
            c.to_string_radix(10, Some(digits))
        })
        .collect();
    writeln!(
        out,
        "# theta={} m={} origin={}",
        word.theta_text,
        m_text.join(","),
        word.origin
    )?;
    let digits: String = word.letters.iter().map(|l| (b'0' + l) as char).collect();
    writeln!(out, "{digits}")
}

/// Parsed contents of a word file.
#[derive(Clone, Debug, PartialEq)]
pub struct WordFile {
    pub letters: Vec<u8>,
    pub origin: usize,
    pub theta_text: String,
    pub m_text: String,
}

pub fn read_word_file<R: BufRead>(input: R) -> std::io::Result<WordFile> {
    let mut theta_text = String::new();
    let mut m_text = String::new();
    let mut origin = 0usize;
    let mut letters = Vec::new();
    for line in input.lines() {
        let line = line?;
        if let Some(rest) = line.strip_prefix('#') {
            for field in rest.split_whitespace() {
                if let Some(v) = field.strip_prefix("theta=") {
                    theta_text = v.to_string();
                } else if let Some(v) = field.strip_prefix("m=") {
                    m_text = v.to_string();
                } else if let Some(v) = field.strip_prefix("origin=") {
                    origin = v.parse().unwrap_or(0);
                }
            }
        } else {
            for c in line.trim().bytes() {
                if c.is_ascii_digit() && c != b'0' {
                    letters.push(c - b'0');
                } else if !c.is_ascii_whitespace() {
                    return Err(std::io::Error::new(
                        std::io::ErrorKind::InvalidData,
                        format!("unexpected character '{}' in word line", c as char),
                    ));
                }
            }
        }
    }
    Ok(WordFile {
        letters,
        origin,
        theta_text,
        m_text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{parse_direction, ParsedDirection};
    use crate::scalars::NumCtx;
    use std::collections::HashSet;

    fn numeric(text: &str) -> Direction<Float> {
        match parse_direction(text, &NumCtx::new(128)).unwrap() {
            ParsedDirection::Numeric(d) => d,
            _ => unreachable!(),
        }
    }

    fn theta_star() -> Direction<Float> {
        numeric("1,sqrt(3),sqrt(2)")
    }

    fn golden() -> Direction<Float> {
        numeric("1,(sqrt(5)-1)/2")
    }

    fn factor_set(word: &[u8], n: usize) -> HashSet<Vec<u8>> {
        word.windows(n).map(|w| w.to_vec()).collect()
    }

    #[test]
    fn exchange_step_piece_one() {
        // p = 0.3 f_2 + 0.4 f_3 -> letter 1, image p + f_1
        let dir = theta_star();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let p = InternalPoint::new(vec![ctx.float(0.3), ctx.float(0.4)]);
        let (letter, img) = exchange_step(&p, &dir, &eps).unwrap();
        assert_eq!(letter, 1);
        let t1 = dir.component(1).to_f64();
        let t2 = dir.component(2).to_f64();
        assert!((img.coeffs[0].to_f64() - (0.3 - t1)).abs() < 1e-15);
        assert!((img.coeffs[1].to_f64() - (0.4 - t2)).abs() < 1e-15);
    }

    #[test]
    fn exchange_inverse_round_trip() {
        let dir = theta_star();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let m = sample_generic_parameter(&dir, 3, &eps).unwrap();
        let mut p = m.clone();
        for _ in 0..50 {
            let (letter, q) = exchange_step(&p, &dir, &eps).unwrap();
            let (letter_back, back) = exchange_inverse(&q, &dir, &eps).unwrap();
            assert_eq!(letter, letter_back);
            // (p + f_i) - f_i: two correctly rounded ops, so equal to p at
            // working precision
            let tol = 2f64.powi(-120);
            for (a, b) in back.coeffs.iter().zip(&p.coeffs) {
                assert!((a.to_f64() - b.to_f64()).abs() < tol);
            }
            p = q;
        }
    }

    #[test]
    fn orbit_stays_in_window() {
        // containment oracle: every visited point locates in some piece
        let dir = theta_star();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let m = sample_generic_parameter(&dir, 5, &eps).unwrap();
        let word = generate_word(&m, &dir, 0, 100_000, &eps).unwrap();
        assert_eq!(word.len(), 100_000);
        assert!(word.min_margin > eps.to_f64());
    }

    #[test]
    fn sigma_orbit_identity_against_exchange_steps() {
        // Counter-based generation agrees with the incremental exchange map,
        // and after n steps the point equals m + pi(e_{x_0..x_{n-1}}).
        let dir = theta_star();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let m = sample_generic_parameter(&dir, 11, &eps).unwrap();
        let n = 3000;
        let word = generate_word(&m, &dir, 0, n, &eps).unwrap();
        let basis = basis_vectors(&dir);
        let mut p = m.clone();
        for (k, &letter) in word.forward().iter().enumerate() {
            let (step_letter, q) = exchange_step(&p, &dir, &eps).unwrap();
            assert_eq!(step_letter, letter, "letter mismatch at step {k}");
            p = q;
            if (k + 1) % 1000 == 0 {
                // closed form from integer letter counts
                let mut counts = [0i64; 3];
                for &l in &word.forward()[..=k] {
                    counts[l as usize - 1] += 1;
                }
                let mut q2 = m.clone();
                for (i, &c) in counts.iter().enumerate() {
                    q2 = q2.add(&basis[i].scale(&ctx.from_i64(c)));
                }
                let tol = 2f64.powi(-(ctx.prec() as i32) + 24);
                for (a, b) in p.coeffs.iter().zip(&q2.coeffs) {
                    assert!((a.to_f64() - b.to_f64()).abs() < tol);
                }
            }
        }
    }

    #[test]
    fn reversibility_mirrors_letters() {
        let dir = theta_star();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let m = sample_generic_parameter(&dir, 9, &eps).unwrap();
        let n = 500;
        let word = generate_word(&m, &dir, 0, n, &eps).unwrap();
        // walk to the endpoint, then back with the inverse map
        let mut p = m.clone();
        for _ in 0..n {
            p = exchange_step(&p, &dir, &eps).unwrap().1;
        }
        let mut reversed = Vec::with_capacity(n);
        for _ in 0..n {
            let (letter, q) = exchange_inverse(&p, &dir, &eps).unwrap();
            reversed.push(letter);
            p = q;
        }
        reversed.reverse();
        assert_eq!(reversed, word.forward());
    }

    #[test]
    fn backward_generation_consistent_with_forward() {
        // shifting the parameter forward k steps turns x_{-k}.. into x_0..
        let dir = theta_star();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let m = sample_generic_parameter(&dir, 13, &eps).unwrap();
        let k = 40;
        let two_sided = generate_word(&m, &dir, k, 60, &eps).unwrap();
        let mut p = m.clone();
        for _ in 0..60 {
            p = exchange_step(&p, &dir, &eps).unwrap().1;
        }
        // regenerate the whole stretch from k backward steps of that endpoint
        let from_end = generate_word(&p, &dir, k + 60, 0, &eps).unwrap();
        assert_eq!(two_sided.letters, from_end.letters);
    }

    #[test]
    fn empty_generation() {
        let dir = theta_star();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let m = sample_generic_parameter(&dir, 1, &eps).unwrap();
        let word = generate_word(&m, &dir, 0, 0, &eps).unwrap();
        assert!(word.is_empty());
    }

    #[test]
    fn sampling_is_deterministic_and_generic() {
        let dir = theta_star();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let a = sample_generic_parameter(&dir, 42, &eps).unwrap();
        let b = sample_generic_parameter(&dir, 42, &eps).unwrap();
        assert_eq!(a.coeffs, b.coeffs);
        assert!(locate_piece(&a, &dir, &eps).is_ok());
    }

    #[test]
    fn sturmian_complexity_n_plus_one() {
        // d=1 golden direction: p(n) = n + 1 for n <= 20 on a long prefix
        let dir = golden();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let m = sample_generic_parameter(&dir, 42, &eps).unwrap();
        let word = generate_word(&m, &dir, 0, 100_000, &eps).unwrap();
        for n in 1..=20 {
            let distinct = factor_set(word.forward(), n).len();
            assert_eq!(distinct, n + 1, "complexity at length {n}");
        }
    }

    #[test]
    fn seven_length_two_factors_at_reference_direction() {
        let dir = theta_star();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let m = sample_generic_parameter(&dir, 42, &eps).unwrap();
        let word = generate_word(&m, &dir, 0, 200_000, &eps).unwrap();
        let set = factor_set(word.forward(), 2);
        let expected: HashSet<Vec<u8>> = [
            vec![1, 2],
            vec![2, 1],
            vec![1, 3],
            vec![3, 1],
            vec![2, 3],
            vec![3, 2],
            vec![2, 2],
        ]
        .into_iter()
        .collect();
        assert_eq!(set, expected);
    }

    #[test]
    fn distinct_seeds_share_the_language() {
        // minimality: all generic orbits have the same factors
        let dir = theta_star();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let m1 = sample_generic_parameter(&dir, 1, &eps).unwrap();
        let m2 = sample_generic_parameter(&dir, 2, &eps).unwrap();
        assert_ne!(m1.coeffs, m2.coeffs);
        let w1 = generate_word(&m1, &dir, 0, 100_000, &eps).unwrap();
        let w2 = generate_word(&m2, &dir, 0, 100_000, &eps).unwrap();
        for n in 1..=8 {
            assert_eq!(
                factor_set(w1.forward(), n),
                factor_set(w2.forward(), n),
                "factor sets differ at length {n}"
            );
        }
    }

    #[test]
    fn tiling_lengths_and_letter_agreement() {
        let dir = theta_star();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let m = sample_generic_parameter(&dir, 4, &eps).unwrap();
        let n = 10_000;
        let seg = cut_project_segment(&m, &dir, n, &eps).unwrap();
        let word = generate_word(&m, &dir, 0, n, &eps).unwrap();
        assert_eq!(seg.tiles.len(), n);
        // letter/tile agreement
        for (tile, &letter) in seg.tiles.iter().zip(word.forward()) {
            assert_eq!(tile.letter, letter);
        }
        // three lengths: 1/sqrt6, sqrt3/sqrt6, sqrt2/sqrt6
        let lens = tile_lengths(&dir);
        let s6 = 6f64.sqrt();
        assert!((lens[0].to_f64() - 1.0 / s6).abs() < 1e-15);
        assert!((lens[1].to_f64() - 3f64.sqrt() / s6).abs() < 1e-15);
        assert!((lens[2].to_f64() - 2f64.sqrt() / s6).abs() < 1e-15);
        // telescoping: sum of tile lengths = <e_w, theta>/|theta|
        let total: f64 = seg.tiles.iter().map(|t| t.length).sum();
        let mut dot = Float::with_val(128, 0);
        for &letter in word.forward() {
            dot += dir.component(letter as usize - 1);
        }
        let expect = (dot / dir.norm()).to_f64();
        assert!((total - expect).abs() <= 1e-9 * n as f64);
    }

    #[test]
    fn billiard_letter_frequency_d1() {
        // letter 1 crossings happen with frequency 1/(1+theta_1)
        let dir = golden();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let start = BilliardState::sample_on_face(&dir, 8);
        let n = 100_000;
        let letters = billiard_simulate(&start, &dir, n, &eps).unwrap();
        let ones = letters.iter().filter(|&&l| l == 1).count() as f64;
        let mu1 = 1.0 / (1.0 + dir.component(1).to_f64());
        assert!((ones / n as f64 - mu1).abs() < 1e-3);
    }

    #[test]
    fn billiard_matches_cut_and_project_language() {
        // unfolding equivalence: same factor sets up to length 8
        let dir = theta_star();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let start = BilliardState::sample_on_face(&dir, 21);
        let simulated = billiard_simulate(&start, &dir, 100_000, &eps).unwrap();
        let m = sample_generic_parameter(&dir, 21, &eps).unwrap();
        let coded = generate_word(&m, &dir, 0, 100_000, &eps).unwrap();
        for n in 1..=8 {
            assert_eq!(
                factor_set(&simulated, n),
                factor_set(coded.forward(), n),
                "factor sets differ at length {n}"
            );
        }
    }

    #[test]
    fn word_file_round_trip() {
        let dir = theta_star();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let m = sample_generic_parameter(&dir, 6, &eps).unwrap();
        let word = generate_word(&m, &dir, 5, 20, &eps).unwrap();
        let mut buf = Vec::new();
        write_word_file(&word, &mut buf).unwrap();
        let parsed = read_word_file(&buf[..]).unwrap();
        assert_eq!(parsed.letters, word.letters);
        assert_eq!(parsed.origin, 5);
        assert_eq!(parsed.theta_text, dir.text());
    }
}
