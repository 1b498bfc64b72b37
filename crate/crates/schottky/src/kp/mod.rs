//! Numerical Schottky test built on the KP equation for second-order theta
//! constants.
//!
//! A period matrix belongs to a Jacobian exactly when there exist vectors
//! `u != 0, v, w` and a scalar `c` such that every characteristic satisfies
//!
//! ```text
//! u^4 d2Theta[eps] + (3/4 v^2 - u w) dTheta[eps] + c Theta[eps] = 0
//! ```
//!
//! where `u^4 d2` is the fourfold directional contraction of the second
//! period-matrix derivatives and `(3/4 v^2 - u w) d` contracts the first
//! derivatives against the symmetric matrix `3/4 v v^t - (u w^t + w u^t)/2`.
//! The test runs in two tiers:
//!
//! - a *relaxed* profile that replaces the structured matrix by a free
//!   symmetric `B`, making the inner problem linear least squares whose
//!   minimum is exact — a certified lower bound used to reject;
//! - a *strict* multi-start damped least-squares minimization over
//!   `(u, v, w, c)` with the gauge `|u| = 1`, used to accept.
//!
//! Rank deficiency of the matrix of theta constants and first derivatives
//! flags decomposable inputs, which are reported inconclusive regardless of
//! residuals since they sit in the closure of the Jacobian locus.

mod solver;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::theta::{self, pair_indices, ThetaJet, TruncationPolicy};

/// The unknowns of the KP system. Gauge-fixed representatives have
/// `|u|_2 = 1` and a real positive leading coordinate of `u` (the first one
/// with modulus above 1e-8).
#[derive(Debug, Clone)]
pub struct KpCandidate {
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
    pub w: Vec<Complex64>,
    pub c: Complex64,
}

impl KpCandidate {
    pub fn zero(g: usize) -> Self {
        Self {
            u: vec![Complex64::new(0.0, 0.0); g],
            v: vec![Complex64::new(0.0, 0.0); g],
            w: vec![Complex64::new(0.0, 0.0); g],
            c: Complex64::new(0.0, 0.0),
        }
    }

    pub fn genus(&self) -> usize {
        self.u.len()
    }

    /// Rescales along the gauge orbit `(a u, a^2 v, a^3 w, a^4 c)` so that
    /// `|u| = 1` and the leading coordinate of `u` is real positive. The KP
    /// residual picks up the known factor `|a|^4`, so the gauge leaves the
    /// normalized decision invariant.
    pub fn gauge_fixed(&self) -> Result<KpCandidate> {
        let norm = self.u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Error::BadInput(
                "cannot gauge-fix a candidate with u = 0".into(),
            ));
        }
        let lead = self
            .u
            .iter()
            .find(|z| z.norm() > 1e-8 * norm)
            .copied()
            .unwrap_or(Complex64::new(1.0, 0.0));
        let phase = lead / lead.norm();
        let alpha = phase.conj() / norm;
        let a2 = alpha * alpha;
        let a3 = a2 * alpha;
        let a4 = a2 * a2;
        Ok(KpCandidate {
            u: self.u.iter().map(|z| z * alpha).collect(),
            v: self.v.iter().map(|z| z * a2).collect(),
            w: self.w.iter().map(|z| z * a3).collect(),
            c: self.c * a4,
        })
    }
}

/// Multi-start solver settings. `theta_pos` accepts, `theta_neg` rejects;
/// both are relative to the jet scale and `theta_pos < theta_neg` keeps the
/// two decisions mutually exclusive.
///
/// The default `theta_neg` is calibrated, not guessed: over 20 sampled
/// genus-4 points the relaxed residual ranged over [2.3e-5, 1.5e-2] of
/// scale, while 30 sampled genus <= 3 points kept strict residuals below
/// 1.1e-16 of scale (see `examples/calibrate_thresholds.rs` to reproduce).
/// 1e-5 sits just below every observed negative and eleven orders above
/// the positives.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub n_starts: usize,
    pub seed: u64,
    pub max_iters: usize,
    pub theta_pos: f64,
    pub theta_neg: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            n_starts: 32,
            seed: 0,
            max_iters: 500,
            theta_pos: 1e-8,
            theta_neg: 1e-5,
        }
    }
}

impl SolverConfig {
    fn check(&self) -> Result<()> {
        if self.n_starts == 0 {
            return Err(Error::BadInput("n_starts must be at least 1".into()));
        }
        let ordered = self.theta_pos.is_finite()
            && self.theta_neg.is_finite()
            && self.theta_pos < self.theta_neg;
        if !ordered {
            return Err(Error::BadInput(
                "theta_pos must be strictly below theta_neg".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of the Schottky test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    JacobianLike,
    NonJacobian,
    Inconclusive,
}

impl Decision {
    pub fn as_str(&self) -> &'static str {
        match self {
            Decision::JacobianLike => "JACOBIAN_LIKE",
            Decision::NonJacobian => "NON_JACOBIAN",
            Decision::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Full output of [`strict_min`].
#[derive(Debug, Clone)]
pub struct KpReport {
    pub strict_residual: f64,
    pub relaxed_residual: f64,
    pub best_candidate: KpCandidate,
    pub sasaki_rank: usize,
    pub sasaki_singular_values: Vec<f64>,
    pub scale: f64,
    pub decision: Decision,
}

/// Pair-space weights of the bilinear form `x y^t`: contracting the stored
/// derivative rows against these weights equals the full double sum
/// `sum_{i,j} x_i y_j d/dtau_ij`.
fn pair_weights(g: usize, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
    pair_indices(g)
        .iter()
        .map(|&(i, j)| {
            if i == j {
                x[i] * y[i]
            } else {
                x[i] * y[j] + x[j] * y[i]
            }
        })
        .collect()
}

fn check_len(jet: &ThetaJet, v: &[Complex64]) -> Result<()> {
    if v.len() != jet.genus() {
        return Err(Error::DimensionMismatch {
            expected: jet.genus(),
            got: v.len(),
        });
    }
    Ok(())
}

/// First directional derivative `sum_{i,j} u_i v_j dTheta[eps]/dtau_ij`
/// for every characteristic.
pub fn directional_first(
    jet: &ThetaJet,
    u: &[Complex64],
    v: &[Complex64],
) -> Result<Vec<Complex64>> {
    check_len(jet, u)?;
    check_len(jet, v)?;
    let weights = pair_weights(jet.genus(), u, v);
    Ok((0..jet.num_characteristics())
        .map(|b| {
            jet.grad_row(b)
                .iter()
                .zip(weights.iter())
                .map(|(d, w)| d * w)
                .sum()
        })
        .collect())
}

/// Fourfold contraction of the second derivatives with `u` in every slot,
/// i.e. `sum_m (2 pi i)^2 (u.p)^4 exp(...)` termwise.
pub fn directional_fourth(jet: &ThetaJet, u: &[Complex64]) -> Result<Vec<Complex64>> {
    check_len(jet, u)?;
    let p = jet.num_pairs();
    let weights = pair_weights(jet.genus(), u, u);
    Ok((0..jet.num_characteristics())
        .map(|b| {
            let h = jet.hess_row(b);
            let mut acc = Complex64::new(0.0, 0.0);
            for a1 in 0..p {
                let mut inner = Complex64::new(0.0, 0.0);
                for a2 in 0..p {
                    inner += h[a1 * p + a2] * weights[a2];
                }
                acc += weights[a1] * inner;
            }
            acc
        })
        .collect())
}

/// KP residual of one candidate: for each characteristic
/// `u^4 d2Theta + (3/4 v v^t - (u w^t + w u^t)/2) . dTheta + c Theta`.
pub fn kp_residual(jet: &ThetaJet, cand: &KpCandidate) -> Result<Vec<Complex64>> {
    check_len(jet, &cand.u)?;
    check_len(jet, &cand.v)?;
    check_len(jet, &cand.w)?;
    let g = jet.genus();
    let fourth = directional_fourth(jet, &cand.u)?;
    let wv = pair_weights(g, &cand.v, &cand.v);
    let wu = pair_weights(g, &cand.u, &cand.w);
    let coeff: Vec<Complex64> = wv
        .iter()
        .zip(wu.iter())
        .map(|(vv, uw)| 0.75 * vv - uw)
        .collect();
    Ok((0..jet.num_characteristics())
        .map(|b| {
            let lin: Complex64 = jet
                .grad_row(b)
                .iter()
                .zip(coeff.iter())
                .map(|(d, w)| d * w)
                .sum();
            fourth[b] + lin + cand.c * jet.value(b)
        })
        .collect())
}

pub fn residual_norm(res: &[Complex64]) -> f64 {
    res.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Result of the relaxed inner problem at a fixed direction `u`.
#[derive(Debug, Clone)]
pub struct RelaxedProfile {
    /// Exact least-squares minimum; a lower bound for the strict residual
    /// at the same `u`.
    pub residual: f64,
    /// Minimizing free symmetric matrix, dense g x g row-major.
    pub b_matrix: Vec<Complex64>,
    pub c: Complex64,
}

/// Minimizes `|fourth(u) + B . dTheta + c Theta|_2` exactly over all
/// symmetric complex `B` and scalars `c` by dense least squares: P + 1
/// unknowns against 2^g equations.
pub fn relaxed_profile(jet: &ThetaJet, u: &[Complex64]) -> Result<RelaxedProfile> {
    check_len(jet, u)?;
    let g = jet.genus();
    let p = jet.num_pairs();
    let n_chars = jet.num_characteristics();
    let fourth = directional_fourth(jet, u)?;

    // columns: grad pair columns (unknown absorbs the off-diagonal doubling),
    // then the value column
    let design = DMatrix::from_fn(n_chars, p + 1, |b, col| {
        if col < p {
            jet.grad_entry(b, col)
        } else {
            jet.value(b)
        }
    });
    let rhs = nalgebra::DVector::from_fn(n_chars, |b, _| -fourth[b]);
    let svd = design.clone().svd(true, true);
    let sol = svd
        .solve(&rhs, 1e-14 * svd.singular_values.max())
        .expect("svd requested with both factors");
    let residual = (&design * &sol - &rhs).norm();

    let pairs = pair_indices(g);
    let mut b_matrix = vec![Complex64::new(0.0, 0.0); g * g];
    for (a, &(i, j)) in pairs.iter().enumerate() {
        let x = sol[a];
        if i == j {
            b_matrix[i * g + i] = x;
        } else {
            b_matrix[i * g + j] = 0.5 * x;
            b_matrix[j * g + i] = 0.5 * x;
        }
    }
    Ok(RelaxedProfile {
        residual,
        b_matrix,
        c: sol[p],
    })
}

/// The matrix of first-derivative rows (stored pairs, in pair order)
/// followed by the row of theta constants: shape (g(g+1)/2 + 1) x 2^g.
pub fn sasaki_matrix(jet: &ThetaJet) -> DMatrix<Complex64> {
    let p = jet.num_pairs();
    let n_chars = jet.num_characteristics();
    DMatrix::from_fn(p + 1, n_chars, |row, b| {
        if row < p {
            jet.grad_entry(b, row)
        } else {
            jet.value(b)
        }
    })
}

/// Default relative singular-value cutoff for [`rank_test`].
pub fn default_rank_tol(g: usize) -> f64 {
    1e-10 * (1u64 << g) as f64
}

/// Numerical rank: singular values above `tol * sigma_max`, returned with
/// the full spectrum in descending order.
pub fn rank_test(matrix: &DMatrix<Complex64>, tol: f64) -> (usize, Vec<f64>) {
    let svd = matrix.clone().svd(false, false);
    let mut sigma: Vec<f64> = svd.singular_values.iter().copied().collect();
    sigma.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
    let cutoff = tol * sigma.first().copied().unwrap_or(0.0);
    let rank = sigma.iter().filter(|&&s| s > cutoff).count();
    (rank, sigma)
}

/// Two-tier Schottky test; see the module docs. Never fails to produce a
/// report: non-convergence surfaces as an inconclusive decision, not an
/// error.
pub fn strict_min(jet: &ThetaJet, config: &SolverConfig) -> Result<KpReport> {
    config.check()?;
    solver::run(jet, config)
}

/// One monomial `coef * prod_b x_b^(exps[b])` over the 2^g theta coordinates.
#[derive(Debug, Clone)]
pub struct Monomial {
    pub exps: Vec<u32>,
    pub coef: Complex64,
}

/// Sparse polynomial in the theta coordinates.
#[derive(Debug, Clone)]
pub struct SparsePolynomial {
    pub monomials: Vec<Monomial>,
}

impl SparsePolynomial {
    pub fn degree(&self) -> Option<u64> {
        self.monomials
            .first()
            .map(|m| m.exps.iter().map(|&e| e as u64).sum())
    }

    fn check(&self, n_vars: usize) -> Result<()> {
        let mut degree: Option<u64> = None;
        for mono in &self.monomials {
            if mono.exps.len() != n_vars {
                return Err(Error::DimensionMismatch {
                    expected: n_vars,
                    got: mono.exps.len(),
                });
            }
            let d: u64 = mono.exps.iter().map(|&e| e as u64).sum();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Err(Error::NonHomogeneous(d0, d)),
                _ => {}
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for mono in &self.monomials {
            let mut term = mono.coef;
            for (xb, &e) in x.iter().zip(mono.exps.iter()) {
                term *= xb.powu(e);
            }
            acc += term;
        }
        acc
    }
}

/// Numerical screen for candidate theta relations: evaluates a homogeneous
/// polynomial at the unit-normalized theta vector of `n_samples` sampled
/// period matrices and reports the largest modulus seen.
pub fn relation_test(
    poly: &SparsePolynomial,
    g: usize,
    n_samples: usize,
    seed: u64,
) -> Result<f64> {
    if n_samples == 0 {
        return Err(Error::BadInput("n_samples must be at least 1".into()));
    }
    poly.check(1 << g)?;
    let policy = TruncationPolicy::default();
    let mut seeds = SplitMix64::derive(seed, 0x7e1a);
    let mut worst = 0.0f64;
    for _ in 0..n_samples {
        let tau = theta::sample_siegel(g, seeds.next_u64(), 0.5)?;
        let values = theta::theta_values(&tau, &policy)?;
        let norm = residual_norm(&values);
        let x: Vec<Complex64> = values.iter().map(|z| z / norm).collect();
        worst = worst.max(poly.eval(&x).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests;
