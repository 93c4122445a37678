//! Cross-module agreement checks: the rigorous symbolic verdicts and the
//! empirical balance machinery must tell one story.

use std::sync::OnceLock;

use rug::Float;

use billiard_core::balance::{balance_verdict, discrepancy_series, BalanceVerdict};
use billiard_core::brs::{brs_report, BrsStatus};
use billiard_core::dynamics::{generate_word, sample_generic_parameter};
use billiard_core::geometry::{parse_direction, Direction, ParsedDirection};
use billiard_core::language::{
    eigenvalue_group_membership, letter_frequency, pair_frequency_symbolic_chamber, Provenance,
};
use billiard_core::scalars::NumCtx;

static THETA_STAR_1M: OnceLock<(Direction<Float>, Vec<u8>)> = OnceLock::new();

fn theta_star_word() -> &'static (Direction<Float>, Vec<u8>) {
    THETA_STAR_1M.get_or_init(|| {
        let dir = match parse_direction("1,sqrt(3),sqrt(2)", &NumCtx::new(128)).unwrap() {
            ParsedDirection::Numeric(d) => d,
            _ => unreachable!(),
        };
        let eps = dir.ctx().default_epsilon();
        let m = sample_generic_parameter(&dir, 42, &eps).unwrap();
        let word = generate_word(&m, &dir, 0, 1_000_000, &eps).unwrap();
        let letters = word.forward().to_vec();
        (dir, letters)
    })
}

#[test]
fn every_not_brs_cell_shows_growth_at_1e6() {
    // NotBRS is rigorous unbalance; at 1e6 letters the growth detector must
    // agree on every cell factor. Disagreement flags a bug, not theory.
    let (dir, word) = theta_star_word();
    let eps = dir.ctx().default_epsilon();
    let vals = [dir.component(1), dir.component(2)];
    let report = brs_report(dir, &eps, 10).unwrap();
    for cell in &report.cells {
        assert_eq!(cell.verdict.status, BrsStatus::NotBrs);
        let factor = [
            cell.label.as_bytes()[0] - b'0',
            cell.label.as_bytes()[1] - b'0',
        ];
        let mu = pair_frequency_symbolic_chamber(factor)
            .eval(&vals[..])
            .unwrap()
            .to_f64();
        let series = discrepancy_series(
            word,
            &factor,
            mu,
            Provenance::ClosedForm,
            &[10_000, 100_000, 1_000_000],
            0,
            None,
        )
        .unwrap();
        let verdict = balance_verdict(&series, None).unwrap();
        assert!(
            matches!(verdict, BalanceVerdict::GrowthDetected {}),
            "cell {} is NotBRS but shows no growth: {:?}",
            cell.label,
            series.checkpoints
        );
    }
}

#[test]
fn certified_balanced_factors_are_eigenvalue_members() {
    // letters are the certified-balanced factors; their frequencies must lie
    // in the additive eigenvalue group (they are its generators)
    let sym = Direction::generic(2, "1,t1,t2").unwrap();
    for a in 1..=3u8 {
        let mu = letter_frequency(&sym, a);
        let w = eigenvalue_group_membership(&mu, 2).expect("letter frequency is a generator");
        let mut expected = vec![0i64; 3];
        expected[a as usize - 1] = 1;
        assert_eq!(w.0, expected);
    }
    // the same holds at d = 3
    let sym3 = Direction::generic(3, "1,t1,t2,t3").unwrap();
    for a in 1..=4u8 {
        let mu = letter_frequency(&sym3, a);
        let w = eigenvalue_group_membership(&mu, 3).expect("letter frequency is a generator");
        let mut expected = vec![0i64; 4];
        expected[a as usize - 1] = 1;
        assert_eq!(w.0, expected);
    }
}

#[test]
fn balance_report_at_1e6_has_three_certificates_and_seven_growths() {
    let (dir, word) = theta_star_word();
    let eps = dir.ctx().default_epsilon();
    let report = billiard_core::balance::balance_report_for_word(
        dir,
        word,
        2,
        &[10_000, 100_000, 1_000_000],
        0,
        &eps,
    )
    .unwrap();
    let mut certified = 0;
    let mut grown = 0;
    for e in &report.entries {
        match e.verdict {
            BalanceVerdict::CertifiedBoundedByC { .. } => certified += 1,
            BalanceVerdict::GrowthDetected {} => grown += 1,
            BalanceVerdict::EmpiricallyBounded {} => {}
        }
    }
    assert_eq!(certified, 3);
    assert_eq!(grown, 7, "all seven length-2 factors must show growth");
}
