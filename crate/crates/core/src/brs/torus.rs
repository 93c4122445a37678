//! The torus side of the dictionary: internal coordinates over the lattice
//! basis `(f_1 - f_2, f_1 - f_3)` identify the window with the 2-torus, the
//! exchange map becomes the translation by `alpha`, and return-group
//! membership becomes membership in `Z alpha + Z^2`.

use rug::Float;
use serde::Serialize;

use crate::balance::CheckpointMax;
use crate::error::BrsError;
use crate::geometry::{Direction, InternalPoint};

/// The translation vector `alpha = (theta_1/s, ..., theta_d/s)`,
/// `s = 1 + theta_1 + ... + theta_d`.
pub fn torus_alpha(dir: &Direction<Float>) -> Vec<Float> {
    let prec = dir.ctx().prec();
    let s = dir.component_sum();
    (1..=dir.dim())
        .map(|i| Float::with_val(prec, dir.component(i) / &s))
        .collect()
}

/// Coordinates of an internal point over the lattice basis
/// `(f_1 - f_2, f_1 - f_3)` (cubic case). A point `n_1 f_1 + n_2 f_2 + n_3 f_3`
/// lands exactly on `(n_1+n_2+n_3) alpha + (-n_2, -n_3)`.
pub fn internal_to_torus(
    p: &InternalPoint<Float>,
    dir: &Direction<Float>,
) -> Result<[Float; 2], BrsError> {
    if dir.dim() != 2 {
        return Err(BrsError::NotCubic(dir.dim()));
    }
    let prec = dir.ctx().prec();
    let t1 = dir.component(1);
    let t2 = dir.component(2);
    // g1 = (-t1 - 1, -t2), g2 = (-t1, -t2 - 1); det = 1 + t1 + t2
    let det = dir.component_sum();
    let g1 = [
        Float::with_val(prec, -&t1) - 1u32,
        Float::with_val(prec, -&t2),
    ];
    let g2 = [
        Float::with_val(prec, -&t1),
        Float::with_val(prec, -&t2) - 1u32,
    ];
    let x = Float::with_val(prec, &p.coeffs[0] * &g2[1]) - Float::with_val(prec, &p.coeffs[1] * &g2[0]);
    let y = Float::with_val(prec, &g1[0] * &p.coeffs[1]) - Float::with_val(prec, &g1[1] * &p.coeffs[0]);
    Ok([x / det.clone(), y / det])
}

/// A vector of `Z alpha + Z^2`, kept with its certificate `k alpha + z`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TorusGenerator {
    pub alpha_multiple: i64,
    pub integer_part: [i64; 2],
}

impl TorusGenerator {
    pub fn vector(&self, alpha: &[Float]) -> [f64; 2] {
        [
            self.alpha_multiple as f64 * alpha[0].to_f64() + self.integer_part[0] as f64,
            self.alpha_multiple as f64 * alpha[1].to_f64() + self.integer_part[1] as f64,
        ]
    }
}

/// Visit-count statistics of the orbit `{n alpha}` against the parallelogram
/// spanned by two certified generators, projected into the torus.
#[derive(Clone, Debug, Serialize)]
pub struct TorusVisitReport {
    pub area: f64,
    pub maxima: Vec<CheckpointMax>,
    pub final_count: u64,
    pub n: usize,
}

/// Count visits of `R_alpha^n(0)` to the parallelogram
/// `{ s v_1 + t v_2 : s, t in [0,1) }` taken mod `Z^2`, and track the running
/// maximum of `|count - n area|` at the checkpoints.
pub fn torus_visit_discrepancy(
    dir: &Direction<Float>,
    gens: [TorusGenerator; 2],
    checkpoints: &[usize],
) -> Result<TorusVisitReport, BrsError> {
    if dir.dim() != 2 {
        return Err(BrsError::NotCubic(dir.dim()));
    }
    let prec = dir.ctx().prec();
    let alpha = torus_alpha(dir);
    let v1 = gens[0].vector(&alpha);
    let v2 = gens[1].vector(&alpha);
    let det = v1[0] * v2[1] - v1[1] * v2[0];
    if det.abs() < 1e-12 {
        return Err(BrsError::DegenerateIntersection);
    }
    let area = det.abs();
    // bounding box of the parallelogram for the lattice-shift scan
    let xs = [0.0, v1[0], v2[0], v1[0] + v2[0]];
    let ys = [0.0, v1[1], v2[1], v1[1] + v2[1]];
    let kx_lo = (xs.iter().cloned().fold(f64::INFINITY, f64::min) - 1.0).floor() as i64;
    let kx_hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max).ceil() as i64;
    let ky_lo = (ys.iter().cloned().fold(f64::INFINITY, f64::min) - 1.0).floor() as i64;
    let ky_hi = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max).ceil() as i64;
    let inv = [
        [v2[1] / det, -v2[0] / det],
        [-v1[1] / det, v1[0] / det],
    ];
    let contains = |x: f64, y: f64| -> bool {
        for kx in kx_lo..=kx_hi {
            for ky in ky_lo..=ky_hi {
                let px = x + kx as f64;
                let py = y + ky as f64;
                let s = inv[0][0] * px + inv[0][1] * py;
                let t = inv[1][0] * px + inv[1][1] * py;
                if (0.0..1.0).contains(&s) && (0.0..1.0).contains(&t) {
                    return true;
                }
            }
        }
        false
    };

    let n_max = checkpoints.last().copied().unwrap_or(0);
    let mut pos = [Float::with_val(prec, 0), Float::with_val(prec, 0)];
    let mut count = 0u64;
    let mut running_max = 0f64;
    let mut maxima = Vec::with_capacity(checkpoints.len());
    let mut cp = checkpoints.iter().peekable();
    for n in 0..=n_max {
        if contains(pos[0].to_f64(), pos[1].to_f64()) {
            count += 1;
        }
        let d = count as f64 - (n + 1) as f64 * area;
        running_max = running_max.max(d.abs());
        if cp.peek() == Some(&&n) {
            cp.next();
            maxima.push(CheckpointMax { n, running_max });
        }
        for (p, a) in pos.iter_mut().zip(&alpha) {
            *p += a;
            if *p >= 1u32 {
                *p -= 1u32;
            }
        }
    }
    Ok(TorusVisitReport {
        area,
        maxima,
        final_count: count,
        n: n_max,
    })
}
