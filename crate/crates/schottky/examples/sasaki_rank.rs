//! Rank of the matrix of theta constants and first derivatives.
//!
//! The (g(g+1)/2 + 1) x 2^g matrix with rows dTheta[eps]/dtau_ij and
//! Theta[eps] has full rank at irreducible points; cross-block derivative
//! rows vanish at decomposable points and the rank drops. This is the
//! cheap screen the Schottky test uses to route decomposables to an
//! inconclusive verdict.
//!
//! Run with: cargo run --release --example sasaki_rank

use schottky::kp::{default_rank_tol, rank_test, sasaki_matrix};
use schottky::theta::{sample_siegel, theta_jet, PeriodMatrix, TruncationPolicy};

fn block_diag(top: &PeriodMatrix, bottom: &PeriodMatrix) -> PeriodMatrix {
    let g1 = top.genus();
    let g = g1 + bottom.genus();
    let mut raw = vec![num_complex::Complex64::new(0.0, 0.0); g * g];
    for i in 0..g1 {
        for j in 0..g1 {
            raw[i * g + j] = top.entry(i, j);
        }
    }
    for i in g1..g {
        for j in g1..g {
            raw[i * g + j] = bottom.entry(i - g1, j - g1);
        }
    }
    PeriodMatrix::new(g, &raw).unwrap()
}

fn main() {
    let policy = TruncationPolicy::default();
    for g in 2..=3usize {
        let full = g * (g + 1) / 2 + 1;

        let tau = sample_siegel(g, 11, 0.5).unwrap();
        let jet = theta_jet(&tau, &policy).unwrap();
        let (rank, sigma) = rank_test(&sasaki_matrix(&jet), default_rank_tol(g));
        println!(
            "g={g} sampled:        rank {rank}/{full}, sigma_min/sigma_max = {:.2e}",
            sigma.last().unwrap() / sigma[0]
        );

        let top = sample_siegel(1, 3, 0.5).unwrap();
        let bottom = sample_siegel(g - 1, 4, 0.5).unwrap();
        let jet = theta_jet(&block_diag(&top, &bottom), &policy).unwrap();
        let (rank, sigma) = rank_test(&sasaki_matrix(&jet), default_rank_tol(g));
        println!(
            "g={g} block-diagonal: rank {rank}/{full}, sigma_min/sigma_max = {:.2e}",
            sigma.last().unwrap() / sigma[0]
        );
    }
}
