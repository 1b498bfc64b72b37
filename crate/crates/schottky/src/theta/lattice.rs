//! Truncated lattice summation with a certified tail.
//!
//! The jet is summed over the box `max_i |m_i + eps_i| <= R`. Every omitted
//! term lies in some shell `r-1 < max_i |p_i| <= r` with `r > R`, where
//! `p = m + eps`. On that shell
//!
//! - the term magnitude is at most `exp(-2 pi lambda_min (r - 1/2)^2)`,
//!   since `|p|_2 >= |p|_inf >= r - 1/2` (coordinates are half-integers),
//! - the worst polynomial prefactor over all stored components is the
//!   hessian's `(2 pi)^2 r^4` (|p_i| <= r entrywise),
//! - the shell holds at most `(2r+1)^g - (2r-1)^g` lattice points.
//!
//! Summing these shell bounds over `r > R` (with a geometric cap once the
//! shell-to-shell ratio drops below 1/2) certifies the absolute tail of every
//! stored component. `R` is the smallest radius whose certificate clears the
//! policy tolerance.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::{num_pairs, pair_indices, PeriodMatrix, TruncationPolicy};

/// Upper bound on the contribution of shell `r`.
fn shell_term(g: usize, lambda_min: f64, r: usize) -> f64 {
    let rf = r as f64;
    let count = (2.0 * rf + 1.0).powi(g as i32) - (2.0 * rf - 1.0).powi(g as i32);
    let prefactor = (2.0 * PI).powi(2) * rf.powi(4);
    count * prefactor * (-2.0 * PI * lambda_min * (rf - 0.5).powi(2)).exp()
}

/// Decreasing upper bound on `shell_term(r+1) / shell_term(r)`.
fn shell_ratio(g: usize, lambda_min: f64, r: usize) -> f64 {
    let rf = r as f64;
    ((2.0 * rf + 3.0) / (2.0 * rf + 1.0)).powi(g as i32)
        * ((rf + 1.0) / rf).powi(4)
        * (-4.0 * PI * lambda_min * rf).exp()
}

/// Certified bound on the total weight of all shells beyond `radius`.
pub fn certified_tail(g: usize, lambda_min: f64, radius: usize) -> f64 {
    let mut total = 0.0;
    let mut r = radius + 1;
    loop {
        let t = shell_term(g, lambda_min, r);
        let rho = shell_ratio(g, lambda_min, r);
        if rho < 0.5 {
            // shell_term(r+k) <= t * rho^k because the ratio is decreasing
            return total + t / (1.0 - rho);
        }
        total += t;
        r += 1;
        if r > radius + 100_000 {
            return f64::INFINITY;
        }
    }
}

/// Smallest radius whose tail certificate clears `policy.tol`, with the
/// certificate value itself.
pub fn required_radius(
    g: usize,
    lambda_min: f64,
    policy: &TruncationPolicy,
) -> Result<(usize, f64)> {
    for radius in 1..=policy.max_radius {
        let tail = certified_tail(g, lambda_min, radius);
        if tail <= policy.tol {
            return Ok((radius, tail));
        }
    }
    Err(Error::RadiusExceeded {
        needed: policy.max_radius + 1,
        max_radius: policy.max_radius,
    })
}

/// Sums the series over the box of the given radius for every characteristic.
///
/// Returns `(values, grad, hess)` in the flat layouts of `ThetaJet`; when
/// `with_derivatives` is false the derivative vectors come back empty. The
/// iteration order (characteristics ascending, lattice points lexicographic)
/// is fixed, so results are bitwise deterministic.
pub fn accumulate(
    tau: &PeriodMatrix,
    radius: usize,
    with_derivatives: bool,
) -> (Vec<Complex64>, Vec<Complex64>, Vec<Complex64>) {
    let g = tau.genus();
    let n_chars = 1usize << g;
    let p = num_pairs(g);
    let pairs = pair_indices(g);
    let r = radius as i64;

    let mut values = vec![Complex64::new(0.0, 0.0); n_chars];
    let mut grad = if with_derivatives {
        vec![Complex64::new(0.0, 0.0); n_chars * p]
    } else {
        Vec::new()
    };
    let mut hess = if with_derivatives {
        vec![Complex64::new(0.0, 0.0); n_chars * p * p]
    } else {
        Vec::new()
    };

    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let two_pi_i_sq = two_pi_i * two_pi_i;

    let mut point = vec![0.0f64; g];
    let mut pp = vec![0.0f64; p];
    let mut row_dot = vec![Complex64::new(0.0, 0.0); g];

    for b in 0..n_chars {
        let eps: Vec<f64> = (0..g).map(|i| 0.5 * ((b >> i) & 1) as f64).collect();
        // |m_i + eps_i| <= R gives m_i in [-R, R] for eps_i = 0 and
        // [-R, R-1] for eps_i = 1/2.
        let hi: Vec<i64> = eps
            .iter()
            .map(|&e| if e == 0.0 { r } else { r - 1 })
            .collect();
        let mut m: Vec<i64> = vec![-r; g];

        'points: loop {
            for i in 0..g {
                point[i] = m[i] as f64 + eps[i];
            }
            // q = p^t tau p
            for (i, slot) in row_dot.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, pj) in point.iter().enumerate() {
                    acc += tau.entry(i, j) * *pj;
                }
                *slot = acc;
            }
            let mut q = Complex64::new(0.0, 0.0);
            for i in 0..g {
                q += row_dot[i] * point[i];
            }
            let term = (two_pi_i * q).exp();
            values[b] += term;

            if with_derivatives {
                for (a, &(i, j)) in pairs.iter().enumerate() {
                    pp[a] = point[i] * point[j];
                }
                let tg = two_pi_i * term;
                let th = two_pi_i_sq * term;
                let grow = &mut grad[b * p..(b + 1) * p];
                for a in 0..p {
                    grow[a] += pp[a] * tg;
                }
                let hrow = &mut hess[b * p * p..(b + 1) * p * p];
                for a1 in 0..p {
                    let w = pp[a1] * th;
                    for a2 in a1..p {
                        hrow[a1 * p + a2] += pp[a2] * w;
                    }
                }
            }

            // lexicographic odometer
            for i in (0..g).rev() {
                m[i] += 1;
                if m[i] <= hi[i] {
                    continue 'points;
                }
                m[i] = -r;
            }
            break;
        }

        if with_derivatives {
            let hrow = &mut hess[b * p * p..(b + 1) * p * p];
            for a1 in 0..p {
                for a2 in 0..a1 {
                    hrow[a1 * p + a2] = hrow[a2 * p + a1];
                }
            }
        }
    }

    (values, grad, hess)
}
