//! Discrepancy series `count(w, n) - n mu[w]`, running maxima, and balance
//! verdicts. Letters receive a certified bound from the window geometry;
//! longer factors get finite-data verdicts, growth being the observable face
//! of unbalance. No finite computation proves boundedness, and every report
//! carries the raw maxima so the growth threshold stays auditable.

use serde::Serialize;

use rug::Float;

use crate::error::{BalanceError, ReportError};
use crate::geometry::{letter_discrepancy_bound, Direction};
use crate::language::{
    factor_table, letter_frequency, pair_frequency_d2, sturmian_factor_frequency, Provenance,
};

/// Running maximum of `|D_n|` recorded at one checkpoint.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CheckpointMax {
    pub n: usize,
    pub running_max: f64,
}

/// One sampled row of the series, for export.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SeriesSample {
    pub n: usize,
    pub count: u64,
    pub expected: f64,
    pub d_n: f64,
    pub running_max: f64,
}

/// The discrepancy series of one factor over one word prefix.
#[derive(Clone, Debug, Serialize)]
pub struct DiscrepancySeries {
    pub factor: Vec<u8>,
    pub mu: f64,
    pub provenance: Provenance,
    pub samples: Vec<SeriesSample>,
    pub checkpoints: Vec<CheckpointMax>,
    pub n_max: usize,
    pub final_count: u64,
    pub final_d: f64,
    pub running_max: f64,
    /// Positions where |D_n| exceeded a supplied certified bound (diagnostic;
    /// must stay empty for letters).
    pub bound_violations: u64,
}

fn validate_checkpoints(checkpoints: &[usize], len: usize) -> Result<(), BalanceError> {
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BalanceError::UnorderedCheckpoints);
    }
    if let Some(&last) = checkpoints.last() {
        if last > len {
            return Err(BalanceError::CheckpointTooLarge {
                checkpoint: last,
                len,
            });
        }
    }
    Ok(())
}

/// Exact integer counting of `D_n = count(w, prefix n) - n mu` for
/// `n = 1 ..= max(checkpoints)`, with the running maximum of `|D_n|`.
/// Occurrences are counted at start positions `<= n - |w|`.
pub fn discrepancy_series(
    word: &[u8],
    factor: &[u8],
    mu: f64,
    provenance: Provenance,
    checkpoints: &[usize],
    stride: usize,
    certified_bound: Option<f64>,
) -> Result<DiscrepancySeries, BalanceError> {
    assert!(!factor.is_empty(), "empty factor");
    validate_checkpoints(checkpoints, word.len())?;
    let n_max = checkpoints.last().copied().unwrap_or(word.len());
    let k = factor.len();
    let mut count = 0u64;
    let mut running_max = 0f64;
    let mut samples = Vec::new();
    let mut cp_out = Vec::with_capacity(checkpoints.len());
    let mut cp_iter = checkpoints.iter().peekable();
    let mut violations = 0u64;
    for n in 1..=n_max {
        if n >= k && &word[n - k..n] == factor {
            count += 1;
        }
        let d = count as f64 - n as f64 * mu;
        let abs = d.abs();
        if abs > running_max {
            running_max = abs;
        }
        if let Some(bound) = certified_bound {
            if abs > bound {
                violations += 1;
            }
        }
        if stride > 0 && n % stride == 0 {
            samples.push(SeriesSample {
                n,
                count,
                expected: n as f64 * mu,
                d_n: d,
                running_max,
            });
        }
        if cp_iter.peek() == Some(&&n) {
            cp_iter.next();
            cp_out.push(CheckpointMax { n, running_max });
        }
    }
    let final_d = count as f64 - n_max as f64 * mu;
    Ok(DiscrepancySeries {
        factor: factor.to_vec(),
        mu,
        provenance,
        samples,
        checkpoints: cp_out,
        n_max,
        final_count: count,
        final_d,
        running_max,
        bound_violations: violations,
    })
}

/// Finite-data balance verdict.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum BalanceVerdict {
    /// A certified bound was supplied and never exceeded. Only letters carry
    /// certified bounds.
    CertifiedBoundedByC { bound: f64 },
    /// The running maxima did not grow by the detection factor.
    EmpiricallyBounded {},
    /// Running max at the last checkpoint exceeds the first by >= 1.5.
    GrowthDetected {},
}

/// Growth-detection factor between the first and last checkpoint maxima.
pub const GROWTH_FACTOR: f64 = 1.5;

/// Decide a verdict from checkpoint maxima. Requires at least 3 checkpoints.
pub fn balance_verdict(
    series: &DiscrepancySeries,
    certified_bound: Option<f64>,
) -> Result<BalanceVerdict, BalanceError> {
    if series.checkpoints.len() < 3 {
        return Err(BalanceError::TooFewCheckpoints(series.checkpoints.len()));
    }
    if let Some(bound) = certified_bound {
        if series.bound_violations == 0 && series.running_max <= bound {
            return Ok(BalanceVerdict::CertifiedBoundedByC { bound });
        }
    }
    let first = series.checkpoints.first().unwrap().running_max;
    let last = series.checkpoints.last().unwrap().running_max;
    let grew = if first == 0.0 {
        last > 0.0
    } else {
        last >= GROWTH_FACTOR * first
    };
    if grew {
        Ok(BalanceVerdict::GrowthDetected {})
    } else {
        Ok(BalanceVerdict::EmpiricallyBounded {})
    }
}

/// Verdict plus the evidence for one factor.
#[derive(Clone, Debug, Serialize)]
pub struct FactorVerdict {
    pub factor: String,
    pub mu: f64,
    pub mu_provenance: Provenance,
    pub certified_bound: Option<f64>,
    pub verdict: BalanceVerdict,
    pub checkpoint_maxima: Vec<CheckpointMax>,
    pub running_max: f64,
    pub final_discrepancy: f64,
}

/// Balance report over all factors of length `<= max_factor_len` occurring in
/// a sampled word.
#[derive(Clone, Debug, Serialize)]
pub struct BalanceReport {
    pub direction: String,
    pub precision_bits: u32,
    pub epsilon: f64,
    pub seed: u64,
    pub n_letters: usize,
    pub checkpoints: Vec<usize>,
    pub entries: Vec<FactorVerdict>,
    /// Caveats embedded in every report.
    pub notes: Vec<String>,
}

pub fn standard_notes() -> Vec<String> {
    vec![
        "irrationality of the direction is a declared assumption, not verified from finite input".to_string(),
        "no finite computation proves boundedness; verdicts other than certified bounds are finite-data observations".to_string(),
        "balance on factors of length n+1 implies balance on factors of length n, so growth at one length settles all longer ones".to_string(),
    ]
}

/// Build the report: generate a word, then verdict every factor up to the
/// requested length. Letters get certified bounds; cubic length-2 factors use
/// the closed-form table; d = 1 factors use exact cell measures; everything
/// else falls back to the empirical frequency at full length (labeled).
#[allow(clippy::too_many_arguments)]
pub fn balance_report(
    dir: &Direction<Float>,
    max_factor_len: usize,
    n_letters: usize,
    seed: u64,
    checkpoints: &[usize],
    stride: usize,
    eps: &Float,
) -> Result<BalanceReport, ReportError> {
    let m = crate::dynamics::sample_generic_parameter(dir, seed, eps)?;
    let word = crate::dynamics::generate_word(&m, dir, 0, n_letters, eps)?;
    let mut report = balance_report_for_word(
        dir,
        word.forward(),
        max_factor_len,
        checkpoints,
        stride,
        eps,
    )?;
    report.seed = seed;
    Ok(report)
}

/// Same as [`balance_report`] but over an already generated word.
pub fn balance_report_for_word(
    dir: &Direction<Float>,
    word: &[u8],
    max_factor_len: usize,
    checkpoints: &[usize],
    stride: usize,
    eps: &Float,
) -> Result<BalanceReport, BalanceError> {
    validate_checkpoints(checkpoints, word.len())?;
    let d = dir.dim();
    let mut entries = Vec::new();
    for len in 1..=max_factor_len {
        let table = factor_table(word, len).map_err(|_| BalanceError::CheckpointTooLarge {
            checkpoint: len,
            len: word.len(),
        })?;
        let windows = table.total();
        for (factor, count) in &table.counts {
            let (mu, provenance) = if len == 1 {
                (
                    letter_frequency(dir, factor[0]).to_f64(),
                    Provenance::ClosedForm,
                )
            } else if d == 2 && len == 2 {
                match pair_frequency_d2(dir, [factor[0], factor[1]], eps) {
                    Ok(v) => (v.to_f64(), Provenance::ClosedForm),
                    Err(_) => (*count as f64 / windows as f64, Provenance::Empirical),
                }
            } else if d == 1 {
                match sturmian_factor_frequency(dir, factor) {
                    Ok(v) => (v.to_f64(), Provenance::CellMeasure),
                    Err(_) => (*count as f64 / windows as f64, Provenance::Empirical),
                }
            } else {
                (*count as f64 / windows as f64, Provenance::Empirical)
            };
            let certified = if len == 1 {
                Some(letter_discrepancy_bound(dir, factor[0]).to_f64())
            } else {
                None
            };
            let series = discrepancy_series(
                word,
                factor,
                mu,
                provenance,
                checkpoints,
                stride,
                certified,
            )?;
            let verdict = balance_verdict(&series, certified)?;
            entries.push(FactorVerdict {
                factor: factor.iter().map(|l| (b'0' + l) as char).collect(),
                mu,
                mu_provenance: provenance,
                certified_bound: certified,
                verdict,
                checkpoint_maxima: series.checkpoints.clone(),
                running_max: series.running_max,
                final_discrepancy: series.final_d,
            });
        }
    }
    Ok(BalanceReport {
        direction: dir.text().to_string(),
        precision_bits: dir.ctx().prec(),
        epsilon: eps.to_f64(),
        seed: 0,
        n_letters: word.len(),
        checkpoints: checkpoints.to_vec(),
        entries,
        notes: standard_notes(),
    })
}
