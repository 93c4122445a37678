//! Command-line frontend: generation, balance analysis, frequency tables,
//! BRS verdicts, complexity counts, and the invariant selftest.
//!
//! Exit codes: 0 success; 2 direction/usage errors (including symbolic
//! directions passed to numeric commands); 3 generic-parameter sampling
//! exhaustion or a boundary hit during generation; 4 chamber violations in
//! the cubic analyses; 5 any undetermined BRS verdict; 1 selftest failure or
//! other errors.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rug::Float;

use billiard_core::balance::{balance_report_for_word, discrepancy_series, BalanceVerdict};
use billiard_core::brs::{brs_report, BrsStatus};
use billiard_core::dynamics::{generate_word, sample_generic_parameter, write_word_file};
use billiard_core::error::{DirectionError, DynamicsError};
use billiard_core::geometry::{parse_direction, Direction, ParsedDirection};
use billiard_core::language::{
    factor_table, letter_frequency, pair_frequency_d2, sturmian_factor_frequency, Provenance,
};
use billiard_core::scalars::NumCtx;

#[derive(Parser)]
#[command(
    name = "billiard",
    version,
    about = "Hypercubic billiard words: generation, balance measurement, and bounded-remainder-set verdicts"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Direction as comma-separated expressions, e.g. "1,sqrt(3),sqrt(2)" or "1,t1,t2"
    #[arg(long, global = true, default_value = "1,sqrt(3),sqrt(2)")]
    theta: String,

    /// Working precision in bits
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,

    /// Margin for boundary decisions (default scales with precision, ~1e-12 at 128 bits)
    #[arg(long, global = true)]
    epsilon: Option<f64>,

    /// Seed for the generic-parameter sampler
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Number of letters to generate / sample size
    #[arg(long, global = true, default_value_t = 100_000)]
    n: usize,

    /// Discrepancy checkpoints, comma separated (default N/100, N/10, N)
    #[arg(long, global = true, value_delimiter = ',')]
    checkpoints: Option<Vec<usize>>,

    /// Largest factor length to analyze
    #[arg(long, global = true, default_value_t = 2)]
    max_factor_len: usize,

    /// Report format where both are supported
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Output path (stdout when omitted); written atomically
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a word file from a generic window parameter
    Generate,
    /// Per-factor balance verdicts with certified letter bounds
    Balance,
    /// Closed-form vs empirical frequency table
    Freqs,
    /// Bounded-remainder-set verdicts for the 7 length-2 cells (JSON)
    Brs,
    /// Sampled factor complexity p(n)
    Complexity,
    /// Run the cross-module invariant suite
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            exit_code_for(&err)
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> ExitCode {
    for cause in err.chain() {
        if cause.downcast_ref::<DirectionError>().is_some() {
            return ExitCode::from(2);
        }
        if let Some(d) = cause.downcast_ref::<DynamicsError>() {
            if matches!(
                d,
                DynamicsError::SamplingExhausted { .. } | DynamicsError::NearBoundary { .. }
            ) {
                return ExitCode::from(3);
            }
        }
        if let Some(l) = cause.downcast_ref::<billiard_core::error::LanguageError>() {
            if matches!(l, billiard_core::error::LanguageError::ChamberViolation) {
                return ExitCode::from(4);
            }
        }
        if let Some(b) = cause.downcast_ref::<billiard_core::error::BrsError>() {
            if matches!(
                b,
                billiard_core::error::BrsError::ChamberViolation
                    | billiard_core::error::BrsError::NotCubic(_)
            ) {
                return ExitCode::from(4);
            }
        }
        if cause.downcast_ref::<SymbolicNotSupported>().is_some() {
            return ExitCode::from(2);
        }
    }
    ExitCode::from(1)
}

#[derive(Debug, thiserror::Error)]
#[error("this command needs a numeric direction; symbolic directions carry no orbit")]
struct SymbolicNotSupported;

fn numeric_direction(cli: &Cli, ctx: &NumCtx) -> Result<Direction<Float>> {
    match parse_direction(&cli.theta, ctx).context("invalid --theta")? {
        ParsedDirection::Numeric(d) => Ok(d),
        ParsedDirection::Symbolic(_) => Err(SymbolicNotSupported.into()),
    }
}

fn epsilon(cli: &Cli, ctx: &NumCtx) -> Float {
    match cli.epsilon {
        Some(e) => ctx.float(e),
        None => ctx.default_epsilon(),
    }
}

fn checkpoints(cli: &Cli) -> Vec<usize> {
    cli.checkpoints.clone().unwrap_or_else(|| {
        let n = cli.n;
        let mut cps = vec![(n / 100).max(1), (n / 10).max(2), n];
        cps.dedup();
        cps
    })
}

/// Write atomically: temp file in the target directory, then rename.
fn emit(output: &Option<PathBuf>, content: &str) -> Result<()> {
    match output {
        None => {
            print!("{content}");
            std::io::stdout().flush()?;
            Ok(())
        }
        Some(path) => write_atomic(path, content),
    }
}

fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, content).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))?;
    Ok(())
}

fn meta_lines(cli: &Cli, eps: &Float) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# direction={} precision={} epsilon={:e} seed={} n={}",
        cli.theta,
        cli.precision,
        eps.to_f64(),
        cli.seed,
        cli.n
    );
    let _ = writeln!(
        s,
        "# note: irrationality of the direction is a declared assumption, not verified from finite input"
    );
    s
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let ctx = NumCtx::new(cli.precision);
    let eps = epsilon(cli, &ctx);
    match cli.cmd {
        Cmd::Generate => cmd_generate(cli, &ctx, &eps),
        Cmd::Balance => cmd_balance(cli, &ctx, &eps),
        Cmd::Freqs => cmd_freqs(cli, &ctx, &eps),
        Cmd::Brs => cmd_brs(cli, &ctx, &eps),
        Cmd::Complexity => cmd_complexity(cli, &ctx, &eps),
        Cmd::Selftest => cmd_selftest(cli),
    }
}

fn cmd_generate(cli: &Cli, ctx: &NumCtx, eps: &Float) -> Result<ExitCode> {
    let dir = numeric_direction(cli, ctx)?;
    let m = sample_generic_parameter(&dir, cli.seed, eps)?;
    let word = generate_word(&m, &dir, 0, cli.n, eps)?;
    let mut buf = Vec::new();
    write_word_file(&word, &mut buf)?;
    let text = String::from_utf8(buf).expect("ascii word file");
    emit(&cli.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_balance(cli: &Cli, ctx: &NumCtx, eps: &Float) -> Result<ExitCode> {
    let dir = numeric_direction(cli, ctx)?;
    let cps = checkpoints(cli);
    let m = sample_generic_parameter(&dir, cli.seed, eps)?;
    let word = generate_word(&m, &dir, 0, cli.n, eps)?;
    let mut report =
        balance_report_for_word(&dir, word.forward(), cli.max_factor_len, &cps, 0, eps)?;
    report.seed = cli.seed;
    match cli.format {
        Format::Json => emit(&cli.output, &serde_json::to_string_pretty(&report)?)?,
        Format::Csv => {
            let mut s = meta_lines(cli, eps);
            let _ = writeln!(
                s,
                "# note: balance on factors of length n+1 implies balance on factors of length n"
            );
            let _ = writeln!(
                s,
                "factor,mu,mu_provenance,certified_bound,verdict,{},running_max,final_discrepancy",
                cps.iter()
                    .map(|c| format!("max_at_{c}"))
                    .collect::<Vec<_>>()
                    .join(",")
            );
            for e in &report.entries {
                let verdict = match &e.verdict {
                    BalanceVerdict::CertifiedBoundedByC { .. } => "certified-bounded",
                    BalanceVerdict::EmpiricallyBounded {} => "empirically-bounded",
                    BalanceVerdict::GrowthDetected {} => "growth-detected",
                };
                let _ = writeln!(
                    s,
                    "{},{:.12},{},{},{},{},{:.6},{:.6}",
                    e.factor,
                    e.mu,
                    provenance_str(e.mu_provenance),
                    e.certified_bound
                        .map(|b| format!("{b:.6}"))
                        .unwrap_or_default(),
                    verdict,
                    e.checkpoint_maxima
                        .iter()
                        .map(|m| format!("{:.6}", m.running_max))
                        .collect::<Vec<_>>()
                        .join(","),
                    e.running_max,
                    e.final_discrepancy,
                );
            }
            emit(&cli.output, &s)?;
            // per-factor gnuplot series next to the verdict table
            if let Some(path) = &cli.output {
                let stride = (cli.n / 1000).max(1);
                for e in &report.entries {
                    let factor: Vec<u8> = e.factor.bytes().map(|b| b - b'0').collect();
                    let series = discrepancy_series(
                        word.forward(),
                        &factor,
                        e.mu,
                        e.mu_provenance,
                        &cps,
                        stride,
                        None,
                    )?;
                    let mut out = String::from("n,count,expected,d_n,running_max\n");
                    for row in &series.samples {
                        let _ = writeln!(
                            out,
                            "{},{},{:.6},{:.6},{:.6}",
                            row.n, row.count, row.expected, row.d_n, row.running_max
                        );
                    }
                    let series_path = path.with_extension(format!("{}.series.csv", e.factor));
                    write_atomic(&series_path, &out)?;
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn provenance_str(p: Provenance) -> &'static str {
    match p {
        Provenance::ClosedForm => "closed-form",
        Provenance::CellMeasure => "cell-measure",
        Provenance::Empirical => "empirical",
    }
}

#[derive(serde::Serialize)]
struct FreqRow {
    factor: String,
    closed_form: Option<f64>,
    closed_form_provenance: Option<&'static str>,
    empirical: f64,
    abs_error: Option<f64>,
    n: usize,
}

fn cmd_freqs(cli: &Cli, ctx: &NumCtx, eps: &Float) -> Result<ExitCode> {
    let dir = numeric_direction(cli, ctx)?;
    let m = sample_generic_parameter(&dir, cli.seed, eps)?;
    let word = generate_word(&m, &dir, 0, cli.n, eps)?;
    let max_len = cli.max_factor_len.max(1);
    let mut rows = Vec::new();
    for len in 1..=max_len {
        let table = factor_table(word.forward(), len)?;
        let windows = table.total() as f64;
        for (factor, count) in &table.counts {
            let empirical = *count as f64 / windows;
            let closed: Option<(f64, &'static str)> = if len == 1 {
                Some((letter_frequency(&dir, factor[0]).to_f64(), "closed-form"))
            } else if dir.dim() == 2 && len == 2 {
                pair_frequency_d2(&dir, [factor[0], factor[1]], eps)
                    .ok()
                    .map(|v| (v.to_f64(), "closed-form"))
            } else if dir.dim() == 1 {
                sturmian_factor_frequency(&dir, factor)
                    .ok()
                    .map(|v| (v.to_f64(), "cell-measure"))
            } else {
                None
            };
            rows.push(FreqRow {
                factor: factor.iter().map(|l| (b'0' + l) as char).collect(),
                closed_form: closed.map(|(v, _)| v),
                closed_form_provenance: closed.map(|(_, p)| p),
                empirical,
                abs_error: closed.map(|(v, _)| (v - empirical).abs()),
                n: word.len(),
            });
        }
    }
    match cli.format {
        Format::Json => {
            #[derive(serde::Serialize)]
            struct FreqReport<'a> {
                direction: &'a str,
                precision_bits: u32,
                epsilon: f64,
                seed: u64,
                note: &'static str,
                rows: &'a [FreqRow],
            }
            let report = FreqReport {
                direction: &cli.theta,
                precision_bits: cli.precision,
                epsilon: eps.to_f64(),
                seed: cli.seed,
                note: "irrationality of the direction is a declared assumption",
                rows: &rows,
            };
            emit(&cli.output, &serde_json::to_string_pretty(&report)?)?;
        }
        Format::Csv => {
            let mut s = meta_lines(cli, eps);
            let _ = writeln!(s, "factor,closed_form,empirical,abs_error,N");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{:.9},{},{}",
                    r.factor,
                    r.closed_form.map(|v| format!("{v:.9}")).unwrap_or_default(),
                    r.empirical,
                    r.abs_error.map(|v| format!("{v:.2e}")).unwrap_or_default(),
                    r.n
                );
            }
            emit(&cli.output, &s)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_brs(cli: &Cli, ctx: &NumCtx, eps: &Float) -> Result<ExitCode> {
    let dir = numeric_direction(cli, ctx)?;
    let report = brs_report(&dir, eps, 10)?;
    // the verdict report is JSON by contract
    emit(&cli.output, &serde_json::to_string_pretty(&report)?)?;
    let undetermined = report
        .cells
        .iter()
        .any(|c| c.verdict.status == BrsStatus::Undetermined);
    if undetermined {
        Ok(ExitCode::from(5))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn cmd_complexity(cli: &Cli, ctx: &NumCtx, eps: &Float) -> Result<ExitCode> {
    let dir = numeric_direction(cli, ctx)?;
    let m = sample_generic_parameter(&dir, cli.seed, eps)?;
    let word = generate_word(&m, &dir, 0, cli.n, eps)?;
    let max_len = cli.max_factor_len.max(1);
    let mut rows = Vec::new();
    for len in 1..=max_len {
        if len > word.len() {
            break;
        }
        rows.push((len, factor_table(word.forward(), len)?.complexity()));
    }
    match cli.format {
        Format::Json => {
            let report = serde_json::json!({
                "direction": cli.theta,
                "n": word.len(),
                "complexity": rows.iter().map(|(n, p)| serde_json::json!({"len": n, "p": p})).collect::<Vec<_>>(),
            });
            emit(&cli.output, &serde_json::to_string_pretty(&report)?)?;
        }
        Format::Csv => {
            let mut s = meta_lines(cli, eps);
            let _ = writeln!(s, "len,p");
            for (n, p) in rows {
                let _ = writeln!(s, "{n},{p}");
            }
            emit(&cli.output, &s)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(cli: &Cli) -> Result<ExitCode> {
    let results = billiard_core::selftest::run(cli.precision);
    let mut failed = 0;
    let mut s = String::new();
    for r in &results {
        match &r.outcome {
            Ok(()) => {
                let _ = writeln!(s, "[PASS] {}", r.name);
            }
            Err(msg) => {
                failed += 1;
                let _ = writeln!(s, "[FAIL] {}: {}", r.name, msg);
            }
        }
    }
    let _ = writeln!(s, "{} checks, {} failed", results.len(), failed);
    emit(&cli.output, &s)?;
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
