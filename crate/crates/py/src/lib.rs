//! Python bindings: direction parsing, word generation, frequencies, balance
//! verdicts, and BRS reports, driven in-process from Python.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rug::Float;
use std::collections::HashMap;

use billiard_core::balance::balance_report_for_word;
use billiard_core::brs::brs_report;
use billiard_core::dynamics::{generate_word, sample_generic_parameter};
use billiard_core::geometry::{
    letter_discrepancy_bound as core_letter_bound, parse_direction, Direction, ParsedDirection,
};
use billiard_core::language::{factor_table, letter_frequency, pair_frequency_d2};
use billiard_core::scalars::NumCtx;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn numeric(theta: &str, precision: u32) -> PyResult<Direction<Float>> {
    let ctx = NumCtx::new(precision);
    match parse_direction(theta, &ctx).map_err(err)? {
        ParsedDirection::Numeric(d) => Ok(d),
        ParsedDirection::Symbolic(_) => Err(PyValueError::new_err(
            "a numeric direction is required here",
        )),
    }
}

/// A generated billiard word with its provenance.
#[pyclass]
struct BilliardWord {
    letters: Vec<u8>,
    theta: String,
    seed: u64,
    min_margin: f64,
}

#[pymethods]
impl BilliardWord {
    fn __len__(&self) -> usize {
        self.letters.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "BilliardWord(theta={:?}, n={}, seed={})",
            self.theta,
            self.letters.len(),
            self.seed
        )
    }

    /// The word as a digit string.
    fn letters(&self) -> String {
        self.letters.iter().map(|l| (b'0' + l) as char).collect()
    }

    /// Number of distinct factors of length `n` in the sample.
    fn complexity(&self, n: usize) -> PyResult<usize> {
        Ok(factor_table(&self.letters, n).map_err(err)?.complexity())
    }

    /// Occurrence counts of all factors of length `n`.
    fn factor_counts(&self, n: usize) -> PyResult<HashMap<String, u64>> {
        let table = factor_table(&self.letters, n).map_err(err)?;
        Ok(table
            .counts
            .into_iter()
            .map(|(k, v)| (k.iter().map(|l| (b'0' + l) as char).collect(), v))
            .collect())
    }

    /// Smallest piece margin encountered while generating.
    #[getter]
    fn min_margin(&self) -> f64 {
        self.min_margin
    }
}

/// Generate `n` letters of the billiard word for `theta`, from the generic
/// window parameter drawn with `seed`.
#[pyfunction]
#[pyo3(signature = (theta, n, seed = 42, precision = 128))]
fn generate(theta: &str, n: usize, seed: u64, precision: u32) -> PyResult<BilliardWord> {
    let dir = numeric(theta, precision)?;
    let eps = dir.ctx().default_epsilon();
    let m = sample_generic_parameter(&dir, seed, &eps).map_err(err)?;
    let word = generate_word(&m, &dir, 0, n, &eps).map_err(err)?;
    Ok(BilliardWord {
        letters: word.forward().to_vec(),
        theta: theta.to_string(),
        seed,
        min_margin: word.min_margin,
    })
}

/// Exact letter frequencies `mu[1], ..., mu[d+1]`.
#[pyfunction]
#[pyo3(signature = (theta, precision = 128))]
fn letter_frequencies(theta: &str, precision: u32) -> PyResult<Vec<f64>> {
    let dir = numeric(theta, precision)?;
    Ok((1..=dir.alphabet_size() as u8)
        .map(|a| letter_frequency(&dir, a).to_f64())
        .collect())
}

/// Certified discrepancy bound for one letter: every prefix of every word of
/// the subshift satisfies |count - n mu| <= bound.
#[pyfunction]
#[pyo3(signature = (theta, letter, precision = 128))]
fn letter_bound(theta: &str, letter: u8, precision: u32) -> PyResult<f64> {
    let dir = numeric(theta, precision)?;
    if letter == 0 || letter as usize > dir.alphabet_size() {
        return Err(PyValueError::new_err("letter out of range"));
    }
    Ok(core_letter_bound(&dir, letter).to_f64())
}

/// Closed-form frequency of a two-letter factor of the cubic billiard.
#[pyfunction]
#[pyo3(signature = (theta, pair, precision = 128))]
fn pair_frequency(theta: &str, pair: &str, precision: u32) -> PyResult<f64> {
    let dir = numeric(theta, precision)?;
    let bytes: Vec<u8> = pair.bytes().map(|b| b.wrapping_sub(b'0')).collect();
    if bytes.len() != 2 || bytes.iter().any(|&b| b == 0 || b > 3) {
        return Err(PyValueError::new_err("pair must be two letters from 1..3"));
    }
    let eps = dir.ctx().default_epsilon();
    Ok(pair_frequency_d2(&dir, [bytes[0], bytes[1]], &eps)
        .map_err(err)?
        .to_f64())
}

/// Balance verdicts for all factors up to `max_factor_len`, as a JSON string.
#[pyfunction]
#[pyo3(signature = (theta, max_factor_len = 2, n = 100_000, seed = 42, precision = 128))]
fn balance_report_json(
    theta: &str,
    max_factor_len: usize,
    n: usize,
    seed: u64,
    precision: u32,
) -> PyResult<String> {
    let dir = numeric(theta, precision)?;
    let eps = dir.ctx().default_epsilon();
    let m = sample_generic_parameter(&dir, seed, &eps).map_err(err)?;
    let word = generate_word(&m, &dir, 0, n, &eps).map_err(err)?;
    let checkpoints = [(n / 100).max(1), (n / 10).max(2), n];
    let mut report =
        balance_report_for_word(&dir, word.forward(), max_factor_len, &checkpoints, 0, &eps)
            .map_err(err)?;
    report.seed = seed;
    serde_json::to_string(&report).map_err(err)
}

/// Bounded-remainder-set verdicts for the 7 length-2 cells, as a JSON string.
#[pyfunction]
#[pyo3(signature = (theta, precision = 128))]
fn brs_report_json(theta: &str, precision: u32) -> PyResult<String> {
    let dir = numeric(theta, precision)?;
    let eps = dir.ctx().default_epsilon();
    let report = brs_report(&dir, &eps, 10).map_err(err)?;
    serde_json::to_string(&report).map_err(err)
}

#[pymodule]
fn billiard_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<BilliardWord>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(letter_frequencies, m)?)?;
    m.add_function(wrap_pyfunction!(letter_bound, m)?)?;
    m.add_function(wrap_pyfunction!(pair_frequency, m)?)?;
    m.add_function(wrap_pyfunction!(balance_report_json, m)?)?;
    m.add_function(wrap_pyfunction!(brs_report_json, m)?)?;
    Ok(())
}
