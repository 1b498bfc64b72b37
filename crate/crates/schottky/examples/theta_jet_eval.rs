//! Evaluate theta constants with certified truncation and sanity-check the
//! stored derivatives against finite differences.
//!
//! Run with: cargo run --release --example theta_jet_eval

use num_complex::Complex64;
use schottky::theta::{pair_indices, sample_siegel, theta_jet, TruncationPolicy};

fn main() {
    let g = 3;
    let tau = sample_siegel(g, 42, 0.5).unwrap();
    let policy = TruncationPolicy::default();
    let jet = theta_jet(&tau, &policy).unwrap();

    println!(
        "genus {g}, lambda_min(Im tau) = {:.4}, box radius {}, certified tail {:.2e}",
        tau.min_imag_eigenvalue(),
        jet.radius_used(),
        jet.tail_bound()
    );
    println!();
    for b in 0..jet.num_characteristics() {
        let v = jet.value(b);
        println!("theta[{b}] = {:+.12} {:+.12} i", v.re, v.im);
    }

    // central finite difference along a random symmetric direction vs the
    // contraction of the stored first derivatives
    let dir: Vec<f64> = {
        let mut rng = schottky::rng::SplitMix64::new(7);
        let mut a = vec![0.0; g * g];
        for i in 0..g {
            for j in i..g {
                let x = rng.next_symmetric(0.01);
                a[i * g + j] = x;
                a[j * g + i] = x;
            }
        }
        a
    };
    let h = 1e-5;
    let plus = theta_jet(&tau.perturbed(&dir, h).unwrap(), &policy).unwrap();
    let minus = theta_jet(&tau.perturbed(&dir, -h).unwrap(), &policy).unwrap();

    println!();
    println!("first-derivative check along a random direction (step {h:.0e}):");
    let pairs = pair_indices(g);
    let mut worst = 0.0f64;
    for b in 0..jet.num_characteristics() {
        let fd = (plus.value(b) - minus.value(b)) / (2.0 * h);
        let mut exact = Complex64::new(0.0, 0.0);
        for (a, &(i, j)) in pairs.iter().enumerate() {
            let w = if i == j { 1.0 } else { 2.0 };
            exact += w * dir[i * g + j] * jet.grad_entry(b, a);
        }
        worst = worst.max((fd - exact).norm() / exact.norm());
    }
    println!(
        "  worst relative deviation over all {} characteristics: {:.2e}",
        jet.num_characteristics(),
        worst
    );
}
