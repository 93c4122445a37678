//! Window geometry for the hypercubic billiard: the projection onto the
//! internal hyperplane, the basis vectors `f_i`, the window zonotope and its
//! `d+1` pieces, dual vectors, and the certified letter-discrepancy bound.
//!
//! Conventions used throughout the crate:
//! * letters and faces are `1 ..= d+1`;
//! * ambient axes are indexed `0 ..= d` with component 0 of the direction
//!   fixed to 1, so axis `i` carries `theta_i` (`theta_0 = 1`);
//! * internal points are coordinate vectors over the basis
//!   `(f_2, ..., f_{d+1})`; `coeffs[j]` multiplies `f_{j+2}`. The remaining
//!   generator satisfies `f_1 + theta_1 f_2 + ... + theta_d f_{d+1} = 0`
//!   exactly, in both backends.

use rug::Float;

use crate::error::{DirectionError, GeometryError};
use crate::scalars::{
    classify_margin, expr, unit_interval_margin, MarginClass, NumCtx, RatFn, Scalar,
};

/// Billiard direction `(1, theta_1, ..., theta_d)`.
#[derive(Clone, PartialEq, Debug)]
pub struct Direction<S: Scalar> {
    comps: Vec<S>,
    text: String,
    irrationality_declared: bool,
}

impl<S: Scalar> Direction<S> {
    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.comps.len() + 1
    }

    /// `theta_i` for ambient axis `i` (0-based; `theta_0 = 1`).
    pub fn component(&self, i: usize) -> S {
        if i == 0 {
            self.comps[0].one_like()
        } else {
            self.comps[i - 1].clone()
        }
    }

    pub fn components(&self) -> &[S] {
        &self.comps
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn irrationality_declared(&self) -> bool {
        self.irrationality_declared
    }

    /// `1 + theta_1 + ... + theta_d`.
    pub fn component_sum(&self) -> S {
        let mut acc = self.comps[0].one_like();
        for c in &self.comps {
            acc = acc.s_add(c);
        }
        acc
    }

    /// `1 + theta_1^2 + ... + theta_d^2`.
    pub fn norm_sq(&self) -> S {
        let mut acc = self.comps[0].one_like();
        for c in &self.comps {
            acc = acc.s_add(&c.s_mul(c));
        }
        acc
    }
}

impl Direction<Float> {
    /// Numeric direction from components `theta_1 .. theta_d` (all > 0).
    pub fn numeric(
        comps: Vec<Float>,
        text: impl Into<String>,
        irrationality_declared: bool,
    ) -> Result<Self, DirectionError> {
        if comps.is_empty() || comps.len() > 9 {
            return Err(DirectionError::BadArity(comps.len() + 1));
        }
        for (i, c) in comps.iter().enumerate() {
            if !(c.is_finite() && c.is_sign_positive() && !c.is_zero()) {
                return Err(DirectionError::NonPositiveComponent { index: i + 1 });
            }
        }
        Ok(Direction {
            comps,
            text: text.into(),
            irrationality_declared,
        })
    }

    pub fn ctx(&self) -> NumCtx {
        NumCtx::new(self.comps[0].prec())
    }

    /// Euclidean norm of `(1, theta_1, ..., theta_d)`.
    pub fn norm(&self) -> Float {
        self.norm_sq().sqrt()
    }
}

impl Direction<RatFn> {
    /// The generic symbolic direction `(1, t_1, ..., t_d)`.
    pub fn generic(d: usize, text: impl Into<String>) -> Result<Self, DirectionError> {
        if d == 0 || d > 9 {
            return Err(DirectionError::BadArity(d + 1));
        }
        Ok(Direction {
            comps: (1..=d).map(RatFn::var).collect(),
            text: text.into(),
            irrationality_declared: true,
        })
    }
}

/// A direction parsed from text: one backend or the other.
#[derive(Clone, Debug)]
pub enum ParsedDirection {
    Numeric(Direction<Float>),
    Symbolic(Direction<RatFn>),
}

/// Parse a comma-separated direction per the expression grammar. The first
/// component must evaluate to exactly 1; remaining components must be
/// strictly positive (numeric) or exactly `t_1, ..., t_d` (symbolic).
pub fn parse_direction(text: &str, ctx: &NumCtx) -> Result<ParsedDirection, DirectionError> {
    let parts = expr::split_components(text);
    if parts.len() < 2 || parts.len() > 10 {
        return Err(DirectionError::BadArity(parts.len()));
    }
    let mut exprs = Vec::with_capacity(parts.len());
    for (offset, part) in &parts {
        let e = expr::parse_expr(part).map_err(|e| e.shift(*offset))?;
        exprs.push(e);
    }
    let any_var = exprs.iter().any(expr::DirectionExpr::uses_var);
    let any_sqrt = exprs.iter().any(expr::DirectionExpr::uses_sqrt);
    if any_var && any_sqrt {
        return Err(DirectionError::MixedBackends);
    }
    let d = exprs.len() - 1;
    if any_var {
        // Only the generic direction is meaningful symbolically.
        let first = exprs[0].eval_symbolic()?;
        if !first.is_one() {
            return Err(DirectionError::FirstComponentNotOne);
        }
        for (k, e) in exprs.iter().enumerate().skip(1) {
            if e.eval_symbolic()? != RatFn::var(k) {
                return Err(DirectionError::NonGenericSymbolic);
            }
        }
        Ok(ParsedDirection::Symbolic(Direction::generic(d, text)?))
    } else {
        let values: Vec<Float> = exprs
            .iter()
            .map(|e| e.eval_numeric(ctx.prec()))
            .collect::<Result<_, _>>()?;
        if values[0] != 1 {
            return Err(DirectionError::FirstComponentNotOne);
        }
        Ok(ParsedDirection::Numeric(Direction::numeric(
            values[1..].to_vec(),
            text,
            true,
        )?))
    }
}

/// Point of the internal hyperplane in coordinates over `(f_2, ..., f_{d+1})`.
#[derive(Clone, PartialEq, Debug)]
pub struct InternalPoint<S: Scalar> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> InternalPoint<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        InternalPoint { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.s_add(b))
            .collect();
        InternalPoint { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.s_sub(b))
            .collect();
        InternalPoint { coeffs }
    }

    pub fn neg(&self) -> Self {
        InternalPoint {
            coeffs: self.coeffs.iter().map(Scalar::s_neg).collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        InternalPoint {
            coeffs: self.coeffs.iter().map(|c| c.s_mul(k)).collect(),
        }
    }

    pub fn is_zero_exact(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero_exact)
    }
}

/// The `d+1` projected basis vectors `f_1, ..., f_{d+1}` as internal points.
/// Index 0 holds `f_1 = (-theta_1, ..., -theta_d)`; index `i` holds `f_{i+1}`.
pub fn basis_vectors<S: Scalar>(dir: &Direction<S>) -> Vec<InternalPoint<S>> {
    let d = dir.dim();
    let one = dir.component(0);
    let zero = one.zero_like();
    let mut out = Vec::with_capacity(d + 1);
    out.push(InternalPoint::new(
        (1..=d).map(|j| dir.component(j).s_neg()).collect(),
    ));
    for i in 1..=d {
        let mut coeffs = vec![zero.clone(); d];
        coeffs[i - 1] = one.clone();
        out.push(InternalPoint::new(coeffs));
    }
    out
}

/// Orthogonal projection onto the internal hyperplane, as a `(d+1) x (d+1)`
/// matrix in the canonical ambient basis: `pi = I - theta theta^T / <theta,theta>`.
pub fn projection_matrix<S: Scalar>(dir: &Direction<S>) -> Vec<Vec<S>> {
    let n = dir.alphabet_size();
    let norm_sq = dir.norm_sq();
    let mut rows = Vec::with_capacity(n);
    for a in 0..n {
        let mut row = Vec::with_capacity(n);
        for b in 0..n {
            let prod = dir.component(a).s_mul(&dir.component(b));
            let frac = prod.s_div(&norm_sq).expect("norm_sq > 0");
            let entry = if a == b {
                dir.component(0).one_like().s_sub(&frac)
            } else {
                frac.s_neg()
            };
            row.push(entry);
        }
        rows.push(row);
    }
    rows
}

/// Ambient coordinates of the basis vectors `f_i` (columns of the projection).
pub fn ambient_basis<S: Scalar>(dir: &Direction<S>) -> Vec<Vec<S>> {
    let pi = projection_matrix(dir);
    let n = dir.alphabet_size();
    (0..n)
        .map(|i| (0..n).map(|a| pi[a][i].clone()).collect())
        .collect()
}

/// Ambient coordinates of an internal point (sum of `coeffs[j] * f_{j+2}`).
pub fn to_ambient<S: Scalar>(p: &InternalPoint<S>, dir: &Direction<S>) -> Vec<S> {
    let basis = ambient_basis(dir);
    let n = dir.alphabet_size();
    let zero = dir.component(0).zero_like();
    let mut out = vec![zero; n];
    for (j, c) in p.coeffs.iter().enumerate() {
        for (a, slot) in out.iter_mut().enumerate() {
            *slot = slot.s_add(&c.s_mul(&basis[j + 1][a]));
        }
    }
    out
}

/// The window `W = pi([0,1]^{d+1})` with its `d+1` pieces
/// `W^(i) = { sum_{j != i} s_j f_j : s_j in [0,1] }`.
pub struct WindowZonotope<S: Scalar> {
    pub generators: Vec<InternalPoint<S>>,
}

impl<S: Scalar> WindowZonotope<S> {
    pub fn new(dir: &Direction<S>) -> Self {
        WindowZonotope {
            generators: basis_vectors(dir),
        }
    }

    /// Vertices of piece `i` (letter, 1-based): sums of subsets of the
    /// generators other than `f_i`. Exponential in d; fine for d <= 9.
    pub fn piece_vertex_sums(&self, piece: usize) -> Vec<InternalPoint<S>> {
        let gens: Vec<&InternalPoint<S>> = self
            .generators
            .iter()
            .enumerate()
            .filter(|(k, _)| k + 1 != piece)
            .map(|(_, g)| g)
            .collect();
        subset_sums(&gens)
    }

    /// All subset sums of the generators (the vertex candidates of `W`).
    pub fn vertex_sums(&self) -> Vec<InternalPoint<S>> {
        let gens: Vec<&InternalPoint<S>> = self.generators.iter().collect();
        subset_sums(&gens)
    }
}

fn subset_sums<S: Scalar>(gens: &[&InternalPoint<S>]) -> Vec<InternalPoint<S>> {
    let d = gens
        .first()
        .map(|g| g.dim())
        .expect("at least one generator");
    let zero = gens[0].coeffs[0].zero_like();
    let mut out = vec![InternalPoint::new(vec![zero; d])];
    for g in gens {
        let mut next = Vec::with_capacity(out.len() * 2);
        for p in &out {
            next.push(p.clone());
            next.push(p.add(g));
        }
        out = next;
    }
    out
}

/// Successful piece location: the letter, the piece coefficients, and the
/// minimum distance of any coefficient to {0, 1}.
#[derive(Clone, Debug)]
pub struct PieceHit {
    pub letter: u8,
    pub margin: Float,
}

/// Coefficients of `p` over `{f_j : j != i}` if that solve is possible,
/// together with the margin. `i` is 1-based.
pub(crate) fn piece_coefficients(
    p: &InternalPoint<Float>,
    dir: &Direction<Float>,
    i: usize,
) -> (Vec<Float>, Float) {
    let d = dir.dim();
    let prec = dir.ctx().prec();
    let mut coeffs = Vec::with_capacity(d);
    if i == 1 {
        coeffs.extend(p.coeffs.iter().cloned());
    } else {
        // s_1 = -a_i / theta_{i-1}; s_j = a_j + s_1 theta_{j-1} for j != i
        // (the f_1 summand contributes -s_1 theta_{j-1} to coordinate j).
        let s1 = Float::with_val(prec, -&p.coeffs[i - 2]) / dir.component(i - 1);
        for j in 2..=d + 1 {
            if j == i {
                continue;
            }
            let adj = Float::with_val(prec, &s1 * &dir.component(j - 1));
            coeffs.push(Float::with_val(prec, &p.coeffs[j - 2] + &adj));
        }
        coeffs.push(s1);
    }
    let mut margin = Float::with_val(prec, f64::INFINITY);
    for s in &coeffs {
        let m = unit_interval_margin(s);
        if m < margin {
            margin = m;
        }
    }
    (coeffs, margin)
}

/// Locate the piece `W^(i)` whose interior contains `p`.
///
/// Errors with `NearBoundary` when the best candidate has a coefficient
/// within `eps` of {0, 1}, and `Outside` when every candidate clearly fails.
pub fn locate_piece(
    p: &InternalPoint<Float>,
    dir: &Direction<Float>,
    eps: &Float,
) -> Result<PieceHit, GeometryError> {
    let mut best: Option<(usize, Float)> = None;
    for i in 1..=dir.dim() + 1 {
        let (_, margin) = piece_coefficients(p, dir, i);
        if best.as_ref().map(|(_, m)| margin > *m).unwrap_or(true) {
            best = Some((i, margin));
        }
    }
    let (letter, margin) = best.expect("at least one piece");
    match classify_margin(&margin, eps) {
        MarginClass::Inside => Ok(PieceHit {
            letter: letter as u8,
            margin,
        }),
        MarginClass::Marginal => Err(GeometryError::NearBoundary {
            margin: margin.to_f64(),
        }),
        MarginClass::Outside => Err(GeometryError::Outside),
    }
}

/// Dual vector for one letter: ambient coordinates and `alpha_a = <f_a, v_a>`.
#[derive(Clone, Debug)]
pub struct DualVector {
    pub letter: u8,
    pub ambient: Vec<Float>,
    pub alpha: Float,
}

/// The `d+1` dual vectors `v_a` in the internal hyperplane, pinned by
/// `<f_b, v_a> = 1` for all `b != a`. Then `alpha_a = <f_a, v_a> < 0` and
/// `(alpha_a - 1) mu[a] = -1`.
///
/// Because `v_a` lies in the internal hyperplane, its ambient coordinates obey
/// `(v_a)_b = <f_b, v_a>`, so all entries off `a` equal 1 and orthogonality to
/// the direction pins the remaining one.
pub fn dual_vectors(dir: &Direction<Float>) -> Vec<DualVector> {
    let n = dir.alphabet_size();
    let prec = dir.ctx().prec();
    let mut out = Vec::with_capacity(n);
    for a in 0..n {
        let mut sum_others = Float::with_val(prec, 0);
        for b in 0..n {
            if b != a {
                sum_others += dir.component(b);
            }
        }
        let alpha = Float::with_val(prec, -sum_others / dir.component(a));
        let mut ambient = vec![Float::with_val(prec, 1); n];
        ambient[a] = alpha.clone();
        out.push(DualVector {
            letter: (a + 1) as u8,
            ambient,
            alpha,
        });
    }
    out
}

/// Certified discrepancy bound for a letter:
/// `C_a = mu[a] * (max - min of <v_a, .> over the window)`, the width being
/// evaluated by the zonotope support function `sum_i |<v_a, f_i>|`.
/// Every prefix of every word in the subshift satisfies
/// `|count(a, n) - n mu[a]| <= C_a`.
pub fn letter_discrepancy_bound(dir: &Direction<Float>, a: u8) -> Float {
    let n = dir.alphabet_size();
    let prec = dir.ctx().prec();
    assert!((1..=n as u8).contains(&a), "letter out of range");
    let dual = &dual_vectors(dir)[(a - 1) as usize];
    let f_ambient = ambient_basis(dir);
    let mut width = Float::with_val(prec, 0);
    for f in &f_ambient {
        let mut dot = Float::with_val(prec, 0);
        for (x, y) in f.iter().zip(&dual.ambient) {
            dot += Float::with_val(prec, x * y);
        }
        width += dot.abs();
    }
    let mu = Float::with_val(prec, dir.component(a as usize - 1) / dir.component_sum());
    mu * width
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta_star() -> Direction<Float> {
        let ctx = NumCtx::new(128);
        match parse_direction("1,sqrt(3),sqrt(2)", &ctx).unwrap() {
            ParsedDirection::Numeric(d) => d,
            _ => unreachable!(),
        }
    }

    fn golden() -> Direction<Float> {
        let ctx = NumCtx::new(128);
        match parse_direction("1,(sqrt(5)-1)/2", &ctx).unwrap() {
            ParsedDirection::Numeric(d) => d,
            _ => unreachable!(),
        }
    }

    #[test]
    fn parse_direction_examples() {
        let ctx = NumCtx::new(128);
        let d = theta_star();
        assert!((d.components()[0].to_f64() - 1.7320508).abs() < 1e-7);
        assert!((d.components()[1].to_f64() - 1.4142136).abs() < 1e-7);

        match parse_direction("1,t1,t2", &ctx).unwrap() {
            ParsedDirection::Symbolic(s) => {
                assert_eq!(s.dim(), 2);
                assert_eq!(s.components()[0], RatFn::var(1));
            }
            _ => panic!("expected symbolic"),
        }

        // rational component admitted; irrationality stays a declared assumption
        assert!(matches!(
            parse_direction("1,1/2,sqrt(2)", &ctx).unwrap(),
            ParsedDirection::Numeric(_)
        ));

        assert!(matches!(
            parse_direction("2,sqrt(3)", &ctx),
            Err(DirectionError::FirstComponentNotOne)
        ));
        assert!(matches!(
            parse_direction("1,t1,sqrt(2)", &ctx),
            Err(DirectionError::MixedBackends)
        ));
        assert!(matches!(
            parse_direction("1,0-1", &ctx),
            Err(DirectionError::NonPositiveComponent { index: 1 })
        ));
        assert!(matches!(
            parse_direction("1,t2,t1", &ctx),
            Err(DirectionError::NonGenericSymbolic)
        ));
    }

    #[test]
    fn projection_matrix_reference_entries() {
        // theta = (1, sqrt3, sqrt2): entry (0,0) = 5/6, (0,1) = -sqrt3/6,
        // (1,2) = -sqrt6/6.
        let dir = theta_star();
        let pi = projection_matrix(&dir);
        assert!((pi[0][0].to_f64() - 5.0 / 6.0).abs() < 1e-30);
        assert!((pi[0][1].to_f64() + 3f64.sqrt() / 6.0).abs() < 1e-15);
        assert!((pi[1][2].to_f64() + 6f64.sqrt() / 6.0).abs() < 1e-15);
    }

    #[test]
    fn projection_kills_direction_and_is_idempotent() {
        let dir = theta_star();
        let prec = dir.ctx().prec();
        let pi = projection_matrix(&dir);
        let n = dir.alphabet_size();
        // pi * theta = 0
        for row in &pi {
            let mut dot = Float::with_val(prec, 0);
            for (b, entry) in row.iter().enumerate() {
                dot += Float::with_val(prec, entry * &dir.component(b));
            }
            assert!(dot.abs().to_f64() < 2f64.powi(-120));
        }
        // pi * pi = pi entrywise within 2^(-p+8)
        let tol = 2f64.powi(-(prec as i32) + 8);
        for a in 0..n {
            for b in 0..n {
                let mut dot = Float::with_val(prec, 0);
                for k in 0..n {
                    dot += Float::with_val(prec, &pi[a][k] * &pi[k][b]);
                }
                assert!((dot - &pi[a][b]).abs().to_f64() < tol);
            }
        }
    }

    #[test]
    fn basis_relation_exact_in_both_backends() {
        // f_1 + sum theta_j f_{j+1} = 0
        let dir = theta_star();
        let basis = basis_vectors(&dir);
        let mut acc = basis[0].clone();
        for j in 1..=dir.dim() {
            acc = acc.add(&basis[j].scale(&dir.component(j)));
        }
        assert!(acc.is_zero_exact());

        let sym = Direction::generic(3, "1,t1,t2,t3").unwrap();
        let basis = basis_vectors(&sym);
        let mut acc = basis[0].clone();
        for j in 1..=sym.dim() {
            acc = acc.add(&basis[j].scale(&sym.component(j)));
        }
        assert!(acc.is_zero_exact());
    }

    #[test]
    fn basis_vectors_examples() {
        let dir = theta_star();
        let basis = basis_vectors(&dir);
        assert_eq!(basis[0].coeffs[0], -dir.component(1).clone());
        assert_eq!(basis[0].coeffs[1], -dir.component(2).clone());
        assert_eq!(basis[1].coeffs[0], 1);
        assert_eq!(basis[1].coeffs[1], 0);
        assert_eq!(basis[2].coeffs[0], 0);
        assert_eq!(basis[2].coeffs[1], 1);

        let d1 = golden();
        let basis = basis_vectors(&d1);
        assert_eq!(basis[0].coeffs[0], -d1.component(1).clone());
        assert_eq!(basis[1].coeffs[0], 1);
    }

    #[test]
    fn locate_piece_examples() {
        let dir = theta_star();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        // p = 0.3 f_2 + 0.4 f_3 -> piece 1
        let p = InternalPoint::new(vec![ctx.float(0.3), ctx.float(0.4)]);
        let hit = locate_piece(&p, &dir, &eps).unwrap();
        assert_eq!(hit.letter, 1);

        // origin is a vertex of every piece
        let origin = InternalPoint::new(vec![ctx.zero(), ctx.zero()]);
        assert!(matches!(
            locate_piece(&origin, &dir, &eps),
            Err(GeometryError::NearBoundary { .. })
        ));

        // far outside the window
        let far = InternalPoint::new(vec![ctx.float(50.0), ctx.float(50.0)]);
        assert!(matches!(
            locate_piece(&far, &dir, &eps),
            Err(GeometryError::Outside)
        ));
    }

    #[test]
    fn locate_piece_interior_point_unique_by_brute_force() {
        // p = f_1 + 0.5 f_2 + 0.5 f_3: solve all three candidate systems and
        // check exactly one has coefficients in (0,1).
        let dir = theta_star();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let basis = basis_vectors(&dir);
        let p = basis[0]
            .add(&basis[1].scale(&ctx.float(0.5)))
            .add(&basis[2].scale(&ctx.float(0.5)));
        let mut inside = Vec::new();
        for i in 1..=3 {
            let (coeffs, margin) = piece_coefficients(&p, &dir, i);
            assert_eq!(coeffs.len(), 2);
            if margin > eps {
                inside.push(i);
            }
        }
        assert_eq!(inside.len(), 1);
        let hit = locate_piece(&p, &dir, &eps).unwrap();
        assert_eq!(hit.letter as usize, inside[0]);
    }

    #[test]
    fn piece_tiling_sampled() {
        // Sampled interior points of W locate in exactly one piece except on
        // a margin-thin set.
        use rand::Rng;
        use rand::SeedableRng;
        let dir = theta_star();
        let ctx = dir.ctx();
        let eps = ctx.default_epsilon();
        let basis = basis_vectors(&dir);
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        let mut marginal = 0u32;
        let n = 10_000;
        for _ in 0..n {
            let mut p = InternalPoint::new(vec![ctx.zero(), ctx.zero()]);
            for b in &basis {
                let s: f64 = rng.random_range(0.0..1.0);
                p = p.add(&b.scale(&ctx.float(s)));
            }
            match locate_piece(&p, &dir, &eps) {
                Ok(_) => {}
                Err(GeometryError::NearBoundary { .. }) => marginal += 1,
                Err(e) => panic!("interior sample left the window: {e}"),
            }
        }
        assert!(marginal < n / 100);
    }

    #[test]
    fn dual_vector_identities() {
        let dir = theta_star();
        let prec = dir.ctx().prec();
        let tol16 = 2f64.powi(-(prec as i32) + 16);
        let duals = dual_vectors(&dir);
        let f_ambient = ambient_basis(&dir);
        let s = dir.component_sum();
        for dual in &duals {
            // v_a orthogonal to theta
            let mut dot = Float::with_val(prec, 0);
            for (b, v) in dual.ambient.iter().enumerate() {
                dot += Float::with_val(prec, v * &dir.component(b));
            }
            assert!(dot.abs().to_f64() < tol16);
            // <f_b, v_a> = 1 for b != a, alpha_a on the diagonal
            for (b, f) in f_ambient.iter().enumerate() {
                let mut ip = Float::with_val(prec, 0);
                for (x, y) in f.iter().zip(&dual.ambient) {
                    ip += Float::with_val(prec, x * y);
                }
                if b + 1 == dual.letter as usize {
                    assert!((ip - &dual.alpha).abs().to_f64() < tol16);
                } else {
                    assert!((ip - 1u32).abs().to_f64() < tol16);
                }
            }
            // alpha_a < 0 and (alpha_a - 1) mu[a] = -1
            assert!(dual.alpha.is_sign_negative());
            let mu = Float::with_val(
                prec,
                dir.component(dual.letter as usize - 1) / &s,
            );
            let lhs = Float::with_val(prec, &dual.alpha - 1u32) * mu;
            assert!((lhs + 1u32).abs().to_f64() < tol16);
        }
        // alpha_1 = -(sqrt3 + sqrt2)
        let expect = -(3f64.sqrt() + 2f64.sqrt());
        assert!((duals[0].alpha.to_f64() - expect).abs() < 1e-15);
    }

    #[test]
    fn dual_vector_sturmian_case() {
        // d = 1 at the golden direction: alpha_1 = -theta_1
        let dir = golden();
        let duals = dual_vectors(&dir);
        let diff = Float::with_val(128, &duals[0].alpha + &dir.component(1));
        assert!(diff.abs().to_f64() < 1e-30);
    }

    #[test]
    fn letter_bound_matches_vertex_enumeration_oracle() {
        let dir = theta_star();
        let prec = dir.ctx().prec();
        let duals = dual_vectors(&dir);
        let window = WindowZonotope::new(&dir);
        let s = dir.component_sum();
        for dual in &duals {
            // oracle: max - min of <v_a, .> over all 2^(d+1) vertex sums
            let mut lo = Float::with_val(prec, f64::INFINITY);
            let mut hi = Float::with_val(prec, f64::NEG_INFINITY);
            for v in window.vertex_sums() {
                let amb = to_ambient(&v, &dir);
                let mut ip = Float::with_val(prec, 0);
                for (x, y) in amb.iter().zip(&dual.ambient) {
                    ip += Float::with_val(prec, x * y);
                }
                if ip < lo {
                    lo = ip.clone();
                }
                if ip > hi {
                    hi = ip;
                }
            }
            let width_oracle = hi - lo;
            // width identity: d + |alpha_a|
            let ident = Float::with_val(prec, dir.dim()) + dual.alpha.clone().abs();
            assert!((width_oracle.clone() - &ident).abs().to_f64() < 1e-30);

            let bound = letter_discrepancy_bound(&dir, dual.letter);
            let mu = Float::with_val(prec, dir.component(dual.letter as usize - 1) / &s);
            let via_oracle = mu * width_oracle;
            assert!((bound - via_oracle).abs().to_f64() < 1e-9);
        }
        // frozen reference: C_1 = mu[1]*(2 + sqrt3 + sqrt2) ~ 1.2412
        let c1 = letter_discrepancy_bound(&dir, 1);
        assert!((c1.to_f64() - 1.2412).abs() < 1e-4);
    }

    #[test]
    fn any_d_minors_independent() {
        // every d x d minor of the (d+1) generators is nonsingular
        let dir = theta_star();
        let basis = basis_vectors(&dir);
        for skip in 0..basis.len() {
            let cols: Vec<_> = basis
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != skip)
                .map(|(_, b)| b)
                .collect();
            let det = cols[0].coeffs[0].clone() * &cols[1].coeffs[1]
                - cols[0].coeffs[1].clone() * &cols[1].coeffs[0];
            assert!(det.abs().to_f64() > 1e-12);
        }
    }

    #[test]
    fn window_piece_volumes_sum() {
        // sum of piece volumes = |f2 x f3| + |f1 x f3| + |f1 x f2|
        //                      = 1 + theta_1 + theta_2 (coordinate units),
        // checked against the shoelace area of the hull of the vertex sums.
        let dir = theta_star();
        let window = WindowZonotope::new(&dir);
        let pts: Vec<(f64, f64)> = window
            .vertex_sums()
            .iter()
            .map(|p| (p.coeffs[0].to_f64(), p.coeffs[1].to_f64()))
            .collect();
        let hull = convex_hull(pts);
        let area = polygon_area(&hull);
        let expect = dir.component_sum().to_f64();
        assert!((area - expect).abs() / expect < 1e-9);
    }

    fn convex_hull(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup();
        let cross =
            |o: (f64, f64), a: (f64, f64), b: (f64, f64)| -> f64 {
                (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
            };
        let mut lower: Vec<(f64, f64)> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<(f64, f64)> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        lower
    }

    fn polygon_area(poly: &[(f64, f64)]) -> f64 {
        let mut acc = 0.0;
        for i in 0..poly.len() {
            let (x1, y1) = poly[i];
            let (x2, y2) = poly[(i + 1) % poly.len()];
            acc += x1 * y2 - x2 * y1;
        }
        acc.abs() / 2.0
    }
}
