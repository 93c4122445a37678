//! Fast cross-module invariant suite behind the `selftest` subcommand: one
//! representative exact identity or sampled check per subsystem, sized to run
//! in seconds.

use rug::Float;

use crate::balance::{balance_report_for_word, BalanceVerdict};
use crate::brs::{brs_report, group_membership, BrsReason, BrsStatus};
use crate::dynamics::{generate_word, sample_generic_parameter};
use crate::geometry::{
    basis_vectors, dual_vectors, letter_discrepancy_bound, parse_direction, Direction,
    ParsedDirection,
};
use crate::language::{
    eigenvalue_group_membership, factor_table, letter_frequency, pair_frequency_symbolic_chamber,
};
use crate::scalars::{NumCtx, RatFn};

pub struct CheckResult {
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

fn check(
    out: &mut Vec<CheckResult>,
    name: &'static str,
    f: impl FnOnce() -> Result<(), String>,
) {
    out.push(CheckResult {
        name,
        outcome: f(),
    });
}

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

/// Run the suite at the given precision. Deterministic.
pub fn run(prec: u32) -> Vec<CheckResult> {
    let ctx = NumCtx::new(prec);
    let eps = ctx.default_epsilon();
    let mut out = Vec::new();

    let dir = match parse_direction("1,sqrt(3),sqrt(2)", &ctx) {
        Ok(ParsedDirection::Numeric(d)) => d,
        _ => {
            check(&mut out, "scalars: parse reference direction", || {
                Err("failed to parse the reference direction".into())
            });
            return out;
        }
    };

    check(&mut out, "scalars: exact field cancellation", || {
        let r = RatFn::var(2).div(&RatFn::var(1)).map_err(|e| e.to_string())?;
        ensure(
            RatFn::one().sub(&r).add(&r).is_one(),
            "(1 - t2/t1) + t2/t1 != 1",
        )
    });

    check(&mut out, "scalars: integer affine pattern", || {
        let a = RatFn::one().sub(&RatFn::var(1));
        let ok = a.integer_affine_pattern(1)
            == Some((num_bigint::BigInt::from(1), num_bigint::BigInt::from(-1)));
        ensure(ok, "pattern of 1 - t1")
    });

    check(&mut out, "geometry: basis relation f1 + sum theta_j f_{j+1} = 0", || {
        let basis = basis_vectors(&dir);
        let mut acc = basis[0].clone();
        for j in 1..=dir.dim() {
            acc = acc.add(&basis[j].scale(&dir.component(j)));
        }
        ensure(acc.is_zero_exact(), "relation not exact")
    });

    check(&mut out, "geometry: projection idempotent and kills theta", || {
        let pi = crate::geometry::projection_matrix(&dir);
        let n = dir.alphabet_size();
        let tol = 2f64.powi(-(prec as i32) + 8);
        for a in 0..n {
            let mut dot = Float::with_val(prec, 0);
            for b in 0..n {
                dot += Float::with_val(prec, &pi[a][b] * &dir.component(b));
            }
            if dot.abs().to_f64() >= tol {
                return Err("pi theta != 0".into());
            }
            for b in 0..n {
                let mut entry = Float::with_val(prec, 0);
                for k in 0..n {
                    entry += Float::with_val(prec, &pi[a][k] * &pi[k][b]);
                }
                if (entry - &pi[a][b]).abs().to_f64() >= tol {
                    return Err("pi^2 != pi".into());
                }
            }
        }
        Ok(())
    });

    check(&mut out, "geometry: dual identity (alpha_a - 1) mu[a] = -1", || {
        let tol = 2f64.powi(-(prec as i32) + 16);
        for dual in dual_vectors(&dir) {
            let mu = letter_frequency(&dir, dual.letter);
            let lhs = Float::with_val(prec, &dual.alpha - 1u32) * mu;
            if (lhs + 1u32).abs().to_f64() >= tol {
                return Err(format!("letter {}", dual.letter));
            }
            if !dual.alpha.is_sign_negative() {
                return Err(format!("alpha_{} >= 0", dual.letter));
            }
        }
        Ok(())
    });

    check(&mut out, "geometry: letter bound matches vertex oracle", || {
        let window = crate::geometry::WindowZonotope::new(&dir);
        let duals = dual_vectors(&dir);
        for dual in &duals {
            let mut lo = Float::with_val(prec, f64::INFINITY);
            let mut hi = Float::with_val(prec, f64::NEG_INFINITY);
            for v in window.vertex_sums() {
                let amb = crate::geometry::to_ambient(&v, &dir);
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
            let mu = letter_frequency(&dir, dual.letter);
            let oracle = Float::with_val(prec, hi - lo) * mu;
            let bound = letter_discrepancy_bound(&dir, dual.letter);
            if (oracle - bound).abs().to_f64() >= 1e-9 {
                return Err(format!("letter {}", dual.letter));
            }
        }
        Ok(())
    });

    let m = match sample_generic_parameter(&dir, 42, &eps) {
        Ok(m) => m,
        Err(e) => {
            check(&mut out, "dynamics: generic parameter", || Err(e.to_string()));
            return out;
        }
    };
    let word = match generate_word(&m, &dir, 0, 100_000, &eps) {
        Ok(w) => w,
        Err(e) => {
            check(&mut out, "dynamics: word generation", || Err(e.to_string()));
            return out;
        }
    };

    check(&mut out, "dynamics: deterministic regeneration", || {
        let again = generate_word(&m, &dir, 0, 100_000, &eps).map_err(|e| e.to_string())?;
        ensure(again.letters == word.letters, "letters differ")
    });

    check(&mut out, "dynamics: seven length-2 factors", || {
        let table = factor_table(word.forward(), 2).map_err(|e| e.to_string())?;
        let labels: Vec<String> = table
            .counts
            .keys()
            .map(|k| k.iter().map(|l| (b'0' + l) as char).collect())
            .collect();
        ensure(
            labels == ["12", "13", "21", "22", "23", "31", "32"],
            &format!("factors {labels:?}"),
        )
    });

    check(&mut out, "language: pair table sums to 1 exactly", || {
        let mut sum = RatFn::zero();
        for w in [[1u8, 2], [2, 1], [1, 3], [3, 1], [2, 3], [3, 2], [2, 2]] {
            sum = sum.add(&pair_frequency_symbolic_chamber(w));
        }
        ensure(sum.is_one(), "sum != 1")
    });

    check(&mut out, "language: marginals recover letters", || {
        let sym = Direction::generic(2, "1,t1,t2").map_err(|e| e.to_string())?;
        for a in 1..=3u8 {
            let mut sum = RatFn::zero();
            for b in 1..=3u8 {
                sum = sum.add(&pair_frequency_symbolic_chamber([a, b]));
            }
            if sum != letter_frequency(&sym, a) {
                return Err(format!("letter {a}"));
            }
        }
        Ok(())
    });

    check(&mut out, "language: eigenvalue group membership", || {
        let sym = Direction::generic(2, "1,t1,t2").map_err(|e| e.to_string())?;
        let mu2 = letter_frequency(&sym, 2);
        let w = eigenvalue_group_membership(&mu2, 2).ok_or("mu[2] not a member")?;
        ensure(w.0 == vec![0, 1, 0], "wrong witness")?;
        ensure(
            eigenvalue_group_membership(&pair_frequency_symbolic_chamber([3, 1]), 2).is_none(),
            "mu[31] wrongly a member",
        )?;
        ensure(
            eigenvalue_group_membership(&pair_frequency_symbolic_chamber([2, 2]), 2).is_none(),
            "mu[22] wrongly a member",
        )
    });

    check(&mut out, "balance: letters certified over the sample", || {
        let report = balance_report_for_word(
            &dir,
            word.forward(),
            1,
            &[1_000, 10_000, 100_000],
            0,
            &eps,
        )
        .map_err(|e| e.to_string())?;
        for e in &report.entries {
            if !matches!(e.verdict, BalanceVerdict::CertifiedBoundedByC { .. }) {
                return Err(format!("letter {} not certified", e.factor));
            }
        }
        Ok(())
    });

    check(&mut out, "brs: membership spot checks", || {
        let basis = basis_vectors(&Direction::generic(2, "1,t1,t2").map_err(|e| e.to_string())?);
        let w = group_membership(&basis[0]).ok_or("f1 not a member")?;
        ensure(w.0 == vec![1, 0, 0], "wrong witness for f1")?;
        let b = basis[0].add(
            &basis[2].scale(&RatFn::var(2).div(&RatFn::var(1)).map_err(|e| e.to_string())?),
        );
        ensure(group_membership(&b).is_none(), "OB wrongly a member")
    });

    check(&mut out, "brs: verdict multiset at the reference direction", || {
        let report = brs_report(&dir, &eps, 10).map_err(|e| e.to_string())?;
        let mut no_center = 0;
        let mut cond2 = 0;
        for cell in &report.cells {
            if cell.verdict.status != BrsStatus::NotBrs {
                return Err(format!("cell {} not NotBrs", cell.label));
            }
            match cell.verdict.reason {
                BrsReason::NoSymmetryCenter => no_center += 1,
                BrsReason::Condition2Fail { .. } => cond2 += 1,
                _ => return Err(format!("cell {} unexpected reason", cell.label)),
            }
        }
        ensure(no_center == 6 && cond2 == 1, "wrong multiset")
    });

    check(&mut out, "brs: cell areas proportional to frequencies", || {
        let report = brs_report(&dir, &eps, 10).map_err(|e| e.to_string())?;
        let vals = [dir.component(1), dir.component(2)];
        for cell in &report.cells {
            let label = [
                cell.label.as_bytes()[0] - b'0',
                cell.label.as_bytes()[1] - b'0',
            ];
            let mu = pair_frequency_symbolic_chamber(label)
                .eval(&vals[..])
                .map_err(|e| e.to_string())?
                .to_f64();
            if (cell.area_fraction - mu).abs() / mu >= 1e-9 {
                return Err(format!("cell {}", cell.label));
            }
        }
        Ok(())
    });

    out
}
