//! The numerical Schottky test across genera.
//!
//! Every abelian variety of genus <= 3 is a Jacobian (or a limit of them),
//! so sampled period matrices must come back JACOBIAN_LIKE with strict
//! residuals at numerical zero. In genus 4 the Jacobian locus has
//! codimension 1 and random samples miss it, so the certified relaxed lower
//! bound rejects them. Block-diagonal (decomposable) inputs are flagged by
//! the rank test and reported INCONCLUSIVE.
//!
//! Run with: cargo run --release --example kp_schottky_test

use num_complex::Complex64;
use schottky::kp::{strict_min, SolverConfig};
use schottky::theta::{sample_siegel, theta_jet, PeriodMatrix, TruncationPolicy};

fn main() {
    let policy = TruncationPolicy::default();
    let config = SolverConfig::default();

    for g in 1..=4usize {
        let tau = sample_siegel(g, 7, 0.5).unwrap();
        let jet = theta_jet(&tau, &policy).unwrap();
        let report = strict_min(&jet, &config).unwrap();
        println!(
            "g={g}: {:13}  strict/scale = {:.2e}  relaxed/scale = {:.2e}  rank = {}/{}",
            report.decision.as_str(),
            report.strict_residual / report.scale,
            report.relaxed_residual / report.scale,
            report.sasaki_rank,
            jet.num_pairs() + 1,
        );
    }

    // a decomposable point: diag(i, i) is a product of elliptic curves
    let zero = Complex64::new(0.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let tau = PeriodMatrix::new(2, &[i, zero, zero, i]).unwrap();
    let jet = theta_jet(&tau, &policy).unwrap();
    let report = strict_min(&jet, &config).unwrap();
    println!(
        "g=2 decomposable: {:13}  rank = {}/{} (deficient, so residuals are not trusted)",
        report.decision.as_str(),
        report.sasaki_rank,
        jet.num_pairs() + 1,
    );
}
