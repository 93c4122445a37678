//! Bounded-remainder-set decisions for the length-2 factor cells of the cubic
//! billiard. Cells are carried with exact coordinates over `Q(t_1, t_2)`;
//! orientation and ordering predicates are evaluated numerically at the
//! working direction with the margin discipline, while every equality and
//! membership decision is symbolic and exact.
//!
//! A symbolic "not a member" verdict is generic: it holds for every direction
//! with algebraically independent coordinates, and specially related
//! directions may differ. Reports carry that caveat.

mod diophantine;
mod torus;

pub use diophantine::{solve_integer_system, IntegerSolutions};
pub use torus::{internal_to_torus, torus_alpha, torus_visit_discrepancy, TorusGenerator, TorusVisitReport};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rug::Float;
use serde::Serialize;

use crate::error::BrsError;
use crate::geometry::{basis_vectors, Direction, InternalPoint};
use crate::language::{chamber_reduction, ChamberReduction};
use crate::scalars::{IntegerWitness, RatFn};

type SymPoint = InternalPoint<RatFn>;

fn sym_basis() -> [SymPoint; 3] {
    let dir = Direction::generic(2, "1,t1,t2").expect("d = 2");
    let b = basis_vectors(&dir);
    [b[0].clone(), b[1].clone(), b[2].clone()]
}

fn cross(u: &SymPoint, v: &SymPoint) -> RatFn {
    u.coeffs[0]
        .mul(&v.coeffs[1])
        .sub(&u.coeffs[1].mul(&v.coeffs[0]))
}

/// Sign of a symbolic quantity at the working direction: exact zero is 0,
/// otherwise the numeric sign, refusing values inside the margin.
fn hybrid_sign(r: &RatFn, vals: &[Float; 2], eps: &Float) -> Result<i8, BrsError> {
    if r.is_zero() {
        return Ok(0);
    }
    let v = r.eval(&vals[..])?;
    if v.clone().abs() <= *eps {
        return Err(BrsError::DegenerateIntersection);
    }
    Ok(if v.is_sign_positive() { 1 } else { -1 })
}

/// One cell of the length-2 partition: exact vertices in cyclic (CCW) order.
#[derive(Clone, Debug)]
pub struct CellPolygon {
    pub label: [u8; 2],
    pub vertices: Vec<SymPoint>,
}

impl CellPolygon {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Numeric shadows of the vertices at the working direction.
    pub fn numeric_vertices(&self, vals: &[Float; 2]) -> Result<Vec<(f64, f64)>, BrsError> {
        self.vertices
            .iter()
            .map(|v| {
                Ok((
                    v.coeffs[0].eval(&vals[..])?.to_f64(),
                    v.coeffs[1].eval(&vals[..])?.to_f64(),
                ))
            })
            .collect()
    }

    /// Shoelace area of the numeric shadow, in `(f_2, f_3)` coordinate units.
    pub fn area(&self, vals: &[Float; 2]) -> Result<f64, BrsError> {
        let pts = self.numeric_vertices(vals)?;
        let mut acc = 0.0;
        for i in 0..pts.len() {
            let (x1, y1) = pts[i];
            let (x2, y2) = pts[(i + 1) % pts.len()];
            acc += x1 * y2 - x2 * y1;
        }
        Ok(acc.abs() / 2.0)
    }

    pub fn label_string(&self) -> String {
        format!("{}{}", self.label[0], self.label[1])
    }
}

/// Vertices of the rhombus `{ s g_a + t g_b : s, t in [0,1] }` shifted by
/// `offset`, ordered CCW at the working direction.
fn rhombus(
    g_a: &SymPoint,
    g_b: &SymPoint,
    offset: &SymPoint,
    vals: &[Float; 2],
    eps: &Float,
) -> Result<Vec<SymPoint>, BrsError> {
    let origin = offset.clone();
    let pa = offset.add(g_a);
    let pab = pa.add(g_b);
    let pb = offset.add(g_b);
    match hybrid_sign(&cross(g_a, g_b), vals, eps)? {
        1 => Ok(vec![origin, pa, pab, pb]),
        -1 => Ok(vec![origin, pb, pab, pa]),
        _ => Err(BrsError::DegenerateIntersection),
    }
}

/// Sutherland-Hodgman clip of `subject` by the CCW convex polygon `clip`.
/// Intersection points are exact; in/out decisions are hybrid.
fn clip_polygon(
    subject: Vec<SymPoint>,
    clip: &[SymPoint],
    vals: &[Float; 2],
    eps: &Float,
) -> Result<Vec<SymPoint>, BrsError> {
    let mut out = subject;
    for k in 0..clip.len() {
        if out.is_empty() {
            return Ok(out);
        }
        let a = &clip[k];
        let b = &clip[(k + 1) % clip.len()];
        let edge = b.sub(a);
        let input = std::mem::take(&mut out);
        let signs: Vec<i8> = input
            .iter()
            .map(|p| hybrid_sign(&cross(&edge, &p.sub(a)), vals, eps))
            .collect::<Result<_, _>>()?;
        for i in 0..input.len() {
            let j = (i + 1) % input.len();
            let (sp, sq) = (signs[i], signs[j]);
            if sp >= 0 {
                out.push(input[i].clone());
            }
            if sp * sq < 0 {
                // exact intersection of segment PQ with the clip line
                let p = &input[i];
                let q = &input[j];
                let denom = cross(&edge, &q.sub(p));
                let t = cross(&edge, &a.sub(p)).div(&denom)?;
                out.push(p.add(&q.sub(p).scale(&t)));
            }
        }
    }
    // drop exact duplicates and collinear middles
    let mut cleaned: Vec<SymPoint> = Vec::with_capacity(out.len());
    for v in out {
        if cleaned.last().map(|last| *last == v).unwrap_or(false) {
            continue;
        }
        cleaned.push(v);
    }
    while cleaned.len() > 1 && cleaned.first() == cleaned.last() {
        cleaned.pop();
    }
    let mut i = 0;
    while cleaned.len() >= 3 && i < cleaned.len() {
        let prev = &cleaned[(i + cleaned.len() - 1) % cleaned.len()];
        let here = &cleaned[i];
        let next = &cleaned[(i + 1) % cleaned.len()];
        if cross(&here.sub(prev), &next.sub(here)).is_zero() {
            cleaned.remove(i);
            i = 0;
        } else {
            i += 1;
        }
    }
    if cleaned.len() < 3 {
        cleaned.clear();
    }
    Ok(cleaned)
}

/// Construct the seven cells `W^(i) ∩ E^{-1} W^(j)` of the length-2 partition
/// for a cubic direction already in the chamber `theta_1 > theta_2 > 0`,
/// `theta_1 > 1`. Cell `(i, j)` is `W^(i) ∩ (W^(j) - f_i)`; labels are sorted.
pub fn build_cells_d2(dir: &Direction<Float>, eps: &Float) -> Result<Vec<CellPolygon>, BrsError> {
    if dir.dim() != 2 {
        return Err(BrsError::NotCubic(dir.dim()));
    }
    let red = chamber_reduction(dir, eps).map_err(|_| BrsError::ChamberViolation)?;
    if !red.identity {
        return Err(BrsError::ChamberViolation);
    }
    let vals = [dir.component(1), dir.component(2)];
    let f = sym_basis();
    let zero = InternalPoint::new(vec![RatFn::zero(), RatFn::zero()]);
    let mut cells = Vec::new();
    for i in 1..=3u8 {
        let (a, b) = match i {
            1 => (1usize, 2usize),
            2 => (0, 2),
            _ => (0, 1),
        };
        let subject = rhombus(&f[a], &f[b], &zero, &vals, eps)?;
        for j in 1..=3u8 {
            let (ca, cb) = match j {
                1 => (1usize, 2usize),
                2 => (0, 2),
                _ => (0, 1),
            };
            let offset = f[i as usize - 1].neg();
            let clip = rhombus(&f[ca], &f[cb], &offset, &vals, eps)?;
            let cell = clip_polygon(subject.clone(), &clip, &vals, eps)?;
            if cell.is_empty() {
                continue;
            }
            let poly = CellPolygon {
                label: [i, j],
                vertices: cell,
            };
            // guard against boundary-touching slivers
            if poly.area(&vals)? > 1e-12 {
                cells.push(poly);
            }
        }
    }
    cells.sort_by_key(|c| c.label);
    if cells.len() != 7 {
        return Err(BrsError::UnexpectedCellCount(cells.len()));
    }
    Ok(cells)
}

/// Chamber-reduce a cubic direction and build cells in the reduced labels.
/// Returns the reduction so callers can translate labels back.
pub fn cells_with_reduction(
    dir: &Direction<Float>,
    eps: &Float,
) -> Result<(Vec<CellPolygon>, ChamberReduction, Direction<Float>), BrsError> {
    if dir.dim() != 2 {
        return Err(BrsError::NotCubic(dir.dim()));
    }
    let red = chamber_reduction(dir, eps).map_err(|_| BrsError::ChamberViolation)?;
    let chamber_dir = Direction::numeric(
        vec![red.components.0.clone(), red.components.1.clone()],
        format!("chamber-reduction of {}", dir.text()),
        dir.irrationality_declared(),
    )
    .map_err(|_| BrsError::ChamberViolation)?;
    let cells = build_cells_d2(&chamber_dir, eps)?;
    Ok((cells, red, chamber_dir))
}

/// Exact center of symmetry: present iff the vertex count is even and all
/// opposite vertex pairs share one midpoint.
pub fn symmetry_center(poly: &CellPolygon) -> Option<SymPoint> {
    let n = poly.vertices.len();
    if n % 2 != 0 {
        return None;
    }
    let half = RatFn::from_rational(BigRational::new(1.into(), 2.into()));
    let k = n / 2;
    let center = poly.vertices[0].add(&poly.vertices[k]).scale(&half);
    for i in 1..k {
        let c = poly.vertices[i].add(&poly.vertices[i + k]).scale(&half);
        if c != center {
            return None;
        }
    }
    Some(center)
}

/// Exact membership of a symbolic internal point in the return group
/// `Z f_1 + Z f_2 + Z f_3`: coordinate `j` must have the shape
/// `n_{j+1} - n_1 t_j` with one shared integer `n_1`.
pub fn group_membership(p: &SymPoint) -> Option<IntegerWitness> {
    let d = p.coeffs.len();
    let mut shared_n1: Option<BigInt> = None;
    let mut coeffs = vec![BigInt::zero(); d + 1];
    for (j, c) in p.coeffs.iter().enumerate() {
        let (c0, c1) = c.integer_affine_pattern(j + 1)?;
        let n1 = -c1;
        match &shared_n1 {
            None => shared_n1 = Some(n1),
            Some(prev) if *prev == n1 => {}
            _ => return None,
        }
        coeffs[j + 1] = c0;
    }
    coeffs[0] = shared_n1?;
    IntegerWitness::from_bigints(&coeffs).ok()
}

/// Outcome of the Grepstad-Lev condition (1) search on one edge pair.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Condition1Outcome {
    /// Points `p in e1`, `q in e2` with `q - p` in the return group exist.
    Satisfied { witness: IntegerWitness, shift: f64 },
    /// The Diophantine system has no feasible solution: certified failure.
    Fails {},
    /// The solution family escaped the scan bound.
    Undetermined {},
}

/// Decide condition (1) for a pair of parallel edges `e1 = (P0, P1)`,
/// `e2 = (Q0, Q1)`, oriented so that `Q1 - Q0 = rho (P1 - P0)` with
/// `rho > 0`: does some group element `g` equal `D + w u` with
/// `D = Q0 - P0`, `u = P1 - P0`, and a shift `w` realizable by points on the
/// closed edges?
pub fn parallel_edge_condition1(
    e1: (&SymPoint, &SymPoint),
    e2: (&SymPoint, &SymPoint),
    vals: &[Float; 2],
    eps: &Float,
    scan_bound: i64,
) -> Result<Condition1Outcome, BrsError> {
    let f = sym_basis();
    let u = e1.1.sub(e1.0);
    let u2 = e2.1.sub(e2.0);
    if !cross(&u, &u2).is_zero() {
        return Err(BrsError::DegenerateIntersection);
    }
    // orient e2 along u and compute the length ratio rho
    let pick = if !u.coeffs[0].is_zero() { 0 } else { 1 };
    let rho_sym = u2.coeffs[pick].div(&u.coeffs[pick])?;
    let rho = rho_sym.eval(&vals[..])?.to_f64();
    let (q0, rho) = if rho >= 0.0 {
        (e2.0.clone(), rho)
    } else {
        (e2.1.clone(), -rho)
    };
    let d_vec = q0.sub(e1.0);

    // cross(g - D, u) = 0 with g = n1 f1 + n2 f2 + n3 f3, linear in n
    let c: Vec<RatFn> = f.iter().map(|fk| cross(fk, &u)).collect();
    let c0 = cross(&d_vec, &u);
    let rows_rhs = linear_identity_rows(&c, &c0)?;
    let Some(sol) = solve_integer_system(&rows_rhs.0, &rows_rhs.1) else {
        return Ok(Condition1Outcome::Fails {});
    };

    // shift of a solution: w(n) = ((g - D) . pick) / (u . pick)
    let w_of = |n: &[BigInt]| -> Result<f64, BrsError> {
        let mut g = InternalPoint::new(vec![RatFn::zero(), RatFn::zero()]);
        for (k, fk) in f.iter().enumerate() {
            let c = RatFn::from_rational(BigRational::from_integer(n[k].clone()));
            g = g.add(&fk.scale(&c));
        }
        let num = g.sub(&d_vec).coeffs[pick].clone();
        let w = num.div(&u.coeffs[pick])?;
        Ok(w.eval(&vals[..])?.to_f64())
    };

    // feasible shifts: { beta rho - gamma : beta, gamma in [0,1] } = [-1, rho]
    let eps_f = eps.to_f64();
    let feasible = |w: f64| -> bool { w >= -1.0 - eps_f && w <= rho + eps_f };
    let witness_from = |n: Vec<BigInt>, w: f64| -> Result<Condition1Outcome, BrsError> {
        let witness = IntegerWitness::from_bigints(&n)?;
        Ok(Condition1Outcome::Satisfied { witness, shift: w })
    };

    let base_w = w_of(&sol.particular)?;
    match sol.kernel.len() {
        0 => {
            if feasible(base_w) {
                witness_from(sol.particular, base_w)
            } else {
                Ok(Condition1Outcome::Fails {})
            }
        }
        1 => {
            let h = &sol.kernel[0];
            let mut shifted = sol.particular.clone();
            for (s, hk) in shifted.iter_mut().zip(h) {
                *s += hk;
            }
            let slope = w_of(&shifted)? - base_w;
            if slope.abs() < 1e-12 {
                return if feasible(base_w) {
                    witness_from(sol.particular, base_w)
                } else {
                    Ok(Condition1Outcome::Fails {})
                };
            }
            // solve the feasibility band for the parameter and prefer the
            // candidate with the smallest shift
            let (lo, hi) = {
                let a = (-1.0 - eps_f - base_w) / slope;
                let b = (rho + eps_f - base_w) / slope;
                (a.min(b), a.max(b))
            };
            let lam_lo = lo.ceil() as i64;
            let lam_hi = hi.floor() as i64;
            let mut lams: Vec<i64> = (lam_lo..=lam_hi).collect();
            let center = -base_w / slope;
            lams.sort_by(|a, b| {
                (*a as f64 - center)
                    .abs()
                    .partial_cmp(&(*b as f64 - center).abs())
                    .unwrap()
            });
            for lam in lams {
                let n: Vec<BigInt> = sol
                    .particular
                    .iter()
                    .zip(h)
                    .map(|(p, hk)| p + hk * BigInt::from(lam))
                    .collect();
                let w = w_of(&n)?;
                if feasible(w) {
                    return witness_from(n, w);
                }
            }
            if lam_lo.abs().max(lam_hi.abs()) > scan_bound {
                Ok(Condition1Outcome::Undetermined {})
            } else {
                Ok(Condition1Outcome::Fails {})
            }
        }
        _ => {
            // scan a box; the cells of this artifact never reach rank 2
            let r = sol.kernel.len();
            let mut lam = vec![-scan_bound; r];
            loop {
                let mut n = sol.particular.clone();
                for (kr, h) in sol.kernel.iter().enumerate() {
                    for (nk, hk) in n.iter_mut().zip(h) {
                        *nk += hk * BigInt::from(lam[kr]);
                    }
                }
                let w = w_of(&n)?;
                if feasible(w) {
                    return witness_from(n, w);
                }
                let mut carry = 0;
                while carry < r {
                    lam[carry] += 1;
                    if lam[carry] <= scan_bound {
                        break;
                    }
                    lam[carry] = -scan_bound;
                    carry += 1;
                }
                if carry == r {
                    return Ok(Condition1Outcome::Undetermined {});
                }
            }
        }
    }
}

/// Turn the identity `sum_k n_k c_k = c0` over `Q(t_1, t_2)` into integer
/// rows by clearing denominators and matching monomial coefficients.
fn linear_identity_rows(
    c: &[RatFn],
    c0: &RatFn,
) -> Result<(Vec<Vec<BigInt>>, Vec<BigInt>), BrsError> {
    // common denominator: product of all denominators
    let mut lcd = crate::scalars::MPoly::one();
    for r in c.iter().chain(std::iter::once(c0)) {
        lcd = lcd.mul(r.denominator());
    }
    let scaled: Vec<crate::scalars::MPoly> = c
        .iter()
        .map(|r| {
            r.numerator()
                .mul(&lcd.div_exact(r.denominator()).expect("lcd divisible"))
        })
        .collect();
    let rhs_poly = c0
        .numerator()
        .mul(&lcd.div_exact(c0.denominator()).expect("lcd divisible"));
    // collect all monomials
    let mut monomials: Vec<crate::scalars::Monomial> = Vec::new();
    for p in scaled.iter().chain(std::iter::once(&rhs_poly)) {
        for (m, _) in p.terms() {
            if !monomials.contains(m) {
                monomials.push(*m);
            }
        }
    }
    let mut rows = Vec::with_capacity(monomials.len());
    let mut rhs = Vec::with_capacity(monomials.len());
    for m in &monomials {
        let coeffs: Vec<BigRational> = scaled.iter().map(|p| p.coeff(m)).collect();
        let target = rhs_poly.coeff(m);
        // scale the row to integers
        let mut denom = BigInt::from(1);
        for q in coeffs.iter().chain(std::iter::once(&target)) {
            denom = num_integer::lcm(denom.clone(), q.denom().clone());
        }
        let row: Vec<BigInt> = coeffs
            .iter()
            .map(|q| (q * BigRational::from_integer(denom.clone())).to_integer())
            .collect();
        rhs.push((target * BigRational::from_integer(denom.clone())).to_integer());
        rows.push(row);
    }
    Ok((rows, rhs))
}

/// Verdict status.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BrsStatus {
    Brs,
    NotBrs,
    Undetermined,
}

/// Why the verdict holds.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum BrsReason {
    NoSymmetryCenter,
    Condition1Fail { pair: usize },
    Condition2Fail { pair: usize },
    AllConditionsPass,
    ParallelepipedCriterion,
    KestenCriterion,
    NonConvex,
    ScanExceeded { pair: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct BrsVerdict {
    pub status: BrsStatus,
    pub reason: BrsReason,
    pub witnesses: Vec<IntegerWitness>,
}

/// Apply the Grepstad-Lev criterion for convex polygons to one cell:
/// a center of symmetry, and for every pair of parallel edges condition (1)
/// plus condition (2) (midpoints related, or both edge vectors in the group).
pub fn gl_polygon_verdict(
    poly: &CellPolygon,
    vals: &[Float; 2],
    eps: &Float,
    scan_bound: i64,
) -> Result<BrsVerdict, BrsError> {
    // numeric convexity check on the shadow
    let pts = poly.numeric_vertices(vals)?;
    let n = pts.len();
    let mut sign = 0f64;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let c = pts[(i + 2) % n];
        let cr = (b.0 - a.0) * (c.1 - b.1) - (b.1 - a.1) * (c.0 - b.0);
        if cr.abs() > 1e-15 {
            if sign != 0.0 && cr.signum() != sign {
                return Ok(BrsVerdict {
                    status: BrsStatus::Undetermined,
                    reason: BrsReason::NonConvex,
                    witnesses: vec![],
                });
            }
            sign = cr.signum();
        }
    }

    if symmetry_center(poly).is_none() {
        return Ok(BrsVerdict {
            status: BrsStatus::NotBrs,
            reason: BrsReason::NoSymmetryCenter,
            witnesses: vec![],
        });
    }

    let k = poly.vertices.len() / 2;
    let mut witnesses = Vec::new();
    let mut undetermined: Option<usize> = None;
    for pair in 0..k {
        let p0 = &poly.vertices[pair];
        let p1 = &poly.vertices[(pair + 1) % poly.vertices.len()];
        let q0 = &poly.vertices[(pair + k) % poly.vertices.len()];
        let q1 = &poly.vertices[(pair + k + 1) % poly.vertices.len()];
        // condition (1)
        match parallel_edge_condition1((p0, p1), (q0, q1), vals, eps, scan_bound)? {
            Condition1Outcome::Satisfied { witness, .. } => witnesses.push(witness),
            Condition1Outcome::Fails {} => {
                return Ok(BrsVerdict {
                    status: BrsStatus::NotBrs,
                    reason: BrsReason::Condition1Fail { pair },
                    witnesses,
                })
            }
            Condition1Outcome::Undetermined {} => {
                undetermined.get_or_insert(pair);
            }
        }
        // condition (2): midpoints related, or both edge vectors in the group
        let half = RatFn::from_rational(BigRational::new(1.into(), 2.into()));
        let mid1 = p0.add(p1).scale(&half);
        let mid2 = q0.add(q1).scale(&half);
        let mid_related = group_membership(&mid2.sub(&mid1));
        let cond2 = match mid_related {
            Some(w) => {
                witnesses.push(w);
                true
            }
            None => {
                let e1 = group_membership(&p1.sub(p0));
                let e2 = group_membership(&q1.sub(q0));
                match (e1, e2) {
                    (Some(w1), Some(w2)) => {
                        witnesses.push(w1);
                        witnesses.push(w2);
                        true
                    }
                    _ => false,
                }
            }
        };
        if !cond2 {
            return Ok(BrsVerdict {
                status: BrsStatus::NotBrs,
                reason: BrsReason::Condition2Fail { pair },
                witnesses,
            });
        }
    }
    if let Some(pair) = undetermined {
        return Ok(BrsVerdict {
            status: BrsStatus::Undetermined,
            reason: BrsReason::ScanExceeded { pair },
            witnesses,
        });
    }
    Ok(BrsVerdict {
        status: BrsStatus::Brs,
        reason: BrsReason::AllConditionsPass,
        witnesses,
    })
}

/// A generator certified to lie in the return group.
#[derive(Clone, Debug)]
pub struct CertifiedGenerator {
    pub vector: SymPoint,
    pub witness: IntegerWitness,
}

/// Sufficient criterion: a parallelepiped spanned by `d` certified return
/// group elements is a bounded remainder set (the interval case is Kesten's
/// characterization direction).
pub fn parallelepiped_brs(gens: &[CertifiedGenerator]) -> Result<BrsVerdict, BrsError> {
    let d_space = gens
        .first()
        .map(|g| g.vector.dim())
        .ok_or(BrsError::UncertifiedGenerator { index: 0 })?;
    if gens.len() != d_space {
        return Err(BrsError::UncertifiedGenerator { index: gens.len() });
    }
    let dir = Direction::generic(d_space, "generic").expect("1 <= d <= 9");
    let f = basis_vectors(&dir);
    for (index, g) in gens.iter().enumerate() {
        if g.witness.0.len() != d_space + 1 || g.vector.dim() != d_space {
            return Err(BrsError::UncertifiedGenerator { index });
        }
        let mut acc = InternalPoint::new(vec![RatFn::zero(); d_space]);
        for (k, n) in g.witness.0.iter().enumerate() {
            acc = acc.add(&f[k].scale(&RatFn::from_int(*n)));
        }
        if acc != g.vector {
            return Err(BrsError::UncertifiedGenerator { index });
        }
    }
    Ok(BrsVerdict {
        status: BrsStatus::Brs,
        reason: if d_space == 1 {
            BrsReason::KestenCriterion
        } else {
            BrsReason::ParallelepipedCriterion
        },
        witnesses: gens.iter().map(|g| g.witness.clone()).collect(),
    })
}

/// Full verdict report for the seven cells of a cubic direction.
#[derive(Clone, Debug, Serialize)]
pub struct CellVerdictReport {
    pub label: String,
    /// label translated back to the caller's letters when a chamber
    /// permutation was applied
    pub original_label: String,
    pub vertices_symbolic: Vec<[String; 2]>,
    pub vertices_numeric: Vec<[f64; 2]>,
    pub area_fraction: f64,
    pub verdict: BrsVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct BrsReport {
    pub direction: String,
    pub chamber_components: [f64; 2],
    pub permuted: bool,
    pub precision_bits: u32,
    pub epsilon: f64,
    pub cells: Vec<CellVerdictReport>,
    pub notes: Vec<String>,
}

/// Verdict all seven cells, reducing to the chamber when needed.
pub fn brs_report(dir: &Direction<Float>, eps: &Float, scan_bound: i64) -> Result<BrsReport, BrsError> {
    let (cells, red, chamber_dir) = cells_with_reduction(dir, eps)?;
    let vals = [chamber_dir.component(1), chamber_dir.component(2)];
    // invert the letter map to translate labels back
    let mut inverse = [0u8; 3];
    for (old, &new) in red.letter_map.iter().enumerate() {
        inverse[new as usize - 1] = old as u8 + 1;
    }
    let total_area: f64 = cells.iter().map(|c| c.area(&vals).unwrap_or(0.0)).sum();
    let mut out = Vec::with_capacity(cells.len());
    for cell in &cells {
        let verdict = gl_polygon_verdict(cell, &vals, eps, scan_bound)?;
        out.push(CellVerdictReport {
            label: cell.label_string(),
            original_label: format!(
                "{}{}",
                inverse[cell.label[0] as usize - 1],
                inverse[cell.label[1] as usize - 1]
            ),
            vertices_symbolic: cell
                .vertices
                .iter()
                .map(|v| [v.coeffs[0].to_string(), v.coeffs[1].to_string()])
                .collect(),
            vertices_numeric: cell
                .numeric_vertices(&vals)?
                .into_iter()
                .map(|(x, y)| [x, y])
                .collect(),
            area_fraction: cell.area(&vals)? / total_area,
            verdict,
        });
    }
    Ok(BrsReport {
        direction: dir.text().to_string(),
        chamber_components: [vals[0].to_f64(), vals[1].to_f64()],
        permuted: !red.identity,
        precision_bits: dir.ctx().prec(),
        epsilon: eps.to_f64(),
        cells: out,
        notes: vec![
            "irrationality of the direction is a declared assumption; symbolic verdicts are generic and may differ for directions satisfying extra rational relations".to_string(),
        ],
    })
}
