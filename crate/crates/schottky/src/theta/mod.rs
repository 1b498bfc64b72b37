//! Second-order theta constants and their period-matrix derivatives.
//!
//! For a period matrix `tau` in the Siegel upper half-space and a
//! half-integer characteristic `eps` in {0, 1/2}^g, the theta constant is
//! the lattice sum
//!
//! ```text
//! Theta[eps](tau) = sum over m in Z^g of exp(2 pi i (m+eps)^t tau (m+eps))
//! ```
//!
//! A [`ThetaJet`] holds all 2^g constants together with their first and
//! second derivatives in the independent entries tau_ij (i <= j), summed
//! termwise:
//!
//! ```text
//! d Theta[eps] / d tau_ij   = sum 2 pi i p_i p_j exp(...)        (p = m+eps)
//! d^2 Theta[eps] / d tau_ij d tau_kl = sum (2 pi i)^2 p_i p_j p_k p_l exp(...)
//! ```
//!
//! so that the full bilinear contraction `sum_{i,j} u_i v_j dTheta/dtau_ij`
//! equals `sum_m 2 pi i (u.p)(v.p) exp(...)` with no extra symmetry factors.
//! Sums are truncated to the box `max_i |m_i + eps_i| <= R`, with `R` chosen
//! so that a conservative shell-counting bound certifies the tail below the
//! requested tolerance (see [`certified_tail`] for the certificate).

mod lattice;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

pub use lattice::certified_tail;

/// Asymmetry budget accepted before a raw matrix is rejected outright.
pub const ASYMMETRY_TOL: f64 = 1e-12;

/// Diagonal shift added to `A A^t` when sampling, so sampled matrices keep
/// their smallest eigenvalue at or above this value.
pub const SAMPLE_EIGEN_SHIFT: f64 = 0.3;

/// A point of the Siegel upper half-space: symmetric complex g x g with
/// positive-definite imaginary part. Construction enforces both invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodMatrix {
    g: usize,
    /// Row-major g*g entries, exactly symmetric after construction.
    entries: Vec<Complex64>,
}

impl PeriodMatrix {
    /// Validates a raw g x g array as a period matrix.
    ///
    /// The input is accepted when its asymmetry is below 1e-12 in max-norm
    /// (then replaced by its exact symmetrization `(raw + raw^t)/2`) and the
    /// imaginary part admits a Cholesky factorization.
    pub fn new(g: usize, raw: &[Complex64]) -> Result<Self> {
        if g == 0 || raw.len() != g * g {
            return Err(Error::BadInput(format!(
                "expected a {g}x{g} array, got {} entries",
                raw.len()
            )));
        }
        let mut worst = (0usize, 0usize, 0.0f64);
        for i in 0..g {
            for j in (i + 1)..g {
                let asym = (raw[i * g + j] - raw[j * g + i]).norm();
                if asym > worst.2 {
                    worst = (i, j, asym);
                }
            }
        }
        if worst.2 > ASYMMETRY_TOL {
            return Err(Error::Asymmetry {
                i: worst.0,
                j: worst.1,
                max_asym: worst.2,
            });
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); g * g];
        for i in 0..g {
            for j in 0..g {
                let sym = 0.5 * (raw[i * g + j] + raw[j * g + i]);
                entries[i * g + j] = sym;
            }
        }
        let pm = Self { g, entries };
        if nalgebra::Cholesky::new(pm.imag_matrix()).is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(pm)
    }

    /// Deterministic test-point generator: `tau = S + i (A A^t + 0.3 I)`
    /// with the entries of the symmetric `S` and of `A` uniform in
    /// `[-spread, spread)`. The smallest eigenvalue of the imaginary part is
    /// at least 0.3 by construction.
    pub fn sample(g: usize, seed: u64, spread: f64) -> Result<Self> {
        if g == 0 {
            return Err(Error::BadInput("genus must be at least 1".into()));
        }
        if !spread.is_finite() || spread <= 0.0 {
            return Err(Error::BadInput(format!(
                "spread must be positive, got {spread}"
            )));
        }
        let mut rng = SplitMix64::derive(seed, 0x5a3d);
        let mut s = vec![0.0f64; g * g];
        for i in 0..g {
            for j in i..g {
                let x = rng.next_symmetric(spread);
                s[i * g + j] = x;
                s[j * g + i] = x;
            }
        }
        let mut a = vec![0.0f64; g * g];
        for entry in a.iter_mut() {
            *entry = rng.next_symmetric(spread);
        }
        let mut raw = vec![Complex64::new(0.0, 0.0); g * g];
        for i in 0..g {
            for j in 0..g {
                let mut y = if i == j { SAMPLE_EIGEN_SHIFT } else { 0.0 };
                for k in 0..g {
                    y += a[i * g + k] * a[j * g + k];
                }
                raw[i * g + j] = Complex64::new(s[i * g + j], y);
            }
        }
        Self::new(g, &raw)
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.g + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Imaginary part as a dense real matrix.
    pub fn imag_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.g, self.g, |i, j| self.entries[i * self.g + j].im)
    }

    /// Smallest eigenvalue of the imaginary part.
    pub fn min_imag_eigenvalue(&self) -> f64 {
        self.imag_matrix()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Additive perturbation `tau + t * a` of the real part, `a` symmetric.
    /// Used by derivative checks; the result is re-validated.
    pub fn perturbed(&self, a: &[f64], t: f64) -> Result<Self> {
        if a.len() != self.g * self.g {
            return Err(Error::DimensionMismatch {
                expected: self.g * self.g,
                got: a.len(),
            });
        }
        let raw: Vec<Complex64> = self
            .entries
            .iter()
            .zip(a.iter())
            .map(|(e, da)| e + Complex64::new(t * da, 0.0))
            .collect();
        Self::new(self.g, &raw)
    }
}

/// One of the 2^g half-integer characteristics, identified with its index
/// under the ordering `index = sum_i bits[i] * 2^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Characteristic {
    bits: Vec<u8>,
    index: usize,
}

impl Characteristic {
    pub fn from_index(g: usize, index: usize) -> Self {
        assert!(index < (1usize << g), "characteristic index out of range");
        let bits = (0..g).map(|i| ((index >> i) & 1) as u8).collect();
        Self { bits, index }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// The half-integer shift eps = bits/2.
    pub fn shift(&self) -> Vec<f64> {
        self.bits.iter().map(|&b| 0.5 * b as f64).collect()
    }
}

/// Truncation request for jet evaluation.
#[derive(Debug, Clone, Copy)]
pub struct TruncationPolicy {
    /// Absolute tail budget per stored component.
    pub tol: f64,
    /// Hard cap on the lattice box radius.
    pub max_radius: usize,
    /// Smallest admissible eigenvalue of Im(tau); inputs below are rejected
    /// rather than reduced.
    pub min_eigen_floor: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            tol: 1e-13,
            max_radius: 60,
            min_eigen_floor: 0.05,
        }
    }
}

impl TruncationPolicy {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<()> {
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(Error::BadInput(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_radius == 0 {
            return Err(Error::BadInput("max_radius must be at least 1".into()));
        }
        if !self.min_eigen_floor.is_finite() || self.min_eigen_floor <= 0.0 {
            return Err(Error::BadInput("min_eigen_floor must be positive".into()));
        }
        Ok(())
    }
}

/// Stored (i, j) pairs with i <= j, in the row-major order
/// (0,0), (0,1), ..., (0,g-1), (1,1), ..., (g-1,g-1).
pub fn pair_indices(g: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(g * (g + 1) / 2);
    for i in 0..g {
        for j in i..g {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Number of stored independent entries g(g+1)/2.
pub fn num_pairs(g: usize) -> usize {
    g * (g + 1) / 2
}

/// All 2^g theta constants at `tau` plus their first and second derivatives
/// in the independent entries of `tau`, with a certified truncation tail.
#[derive(Debug, Clone)]
pub struct ThetaJet {
    tau: PeriodMatrix,
    /// Theta[eps_b](tau), b = characteristic index.
    values: Vec<Complex64>,
    /// grad[b * P + a]: derivative of Theta[eps_b] in pair a, P = g(g+1)/2.
    grad: Vec<Complex64>,
    /// hess[(b * P + a1) * P + a2]: second derivative, symmetric in (a1, a2).
    hess: Vec<Complex64>,
    radius_used: usize,
    tail_bound: f64,
}

impl ThetaJet {
    pub fn tau(&self) -> &PeriodMatrix {
        &self.tau
    }

    pub fn genus(&self) -> usize {
        self.tau.g
    }

    pub fn num_characteristics(&self) -> usize {
        1 << self.tau.g
    }

    pub fn num_pairs(&self) -> usize {
        num_pairs(self.tau.g)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, b: usize) -> Complex64 {
        self.values[b]
    }

    /// Derivative row of characteristic `b`, one entry per stored pair.
    pub fn grad_row(&self, b: usize) -> &[Complex64] {
        let p = self.num_pairs();
        &self.grad[b * p..(b + 1) * p]
    }

    pub fn grad_entry(&self, b: usize, pair: usize) -> Complex64 {
        self.grad[b * self.num_pairs() + pair]
    }

    /// Full P x P second-derivative block of characteristic `b`, row-major.
    pub fn hess_row(&self, b: usize) -> &[Complex64] {
        let p = self.num_pairs();
        &self.hess[b * p * p..(b + 1) * p * p]
    }

    pub fn hess_entry(&self, b: usize, a1: usize, a2: usize) -> Complex64 {
        let p = self.num_pairs();
        self.hess[(b * p + a1) * p + a2]
    }

    pub fn radius_used(&self) -> usize {
        self.radius_used
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// Frobenius magnitude sqrt(|values|^2 + |grad|^2 + |hess|^2); the
    /// reference scale for all relative residual thresholds.
    pub fn scale(&self) -> f64 {
        let sq = |acc: f64, z: &Complex64| acc + z.norm_sqr();
        let total = self.values.iter().fold(0.0, sq)
            + self.grad.iter().fold(0.0, sq)
            + self.hess.iter().fold(0.0, sq);
        total.sqrt()
    }
}

/// Validates a raw array as a period matrix; free-function form of
/// [`PeriodMatrix::new`].
pub fn validate_period_matrix(g: usize, raw: &[Complex64]) -> Result<PeriodMatrix> {
    PeriodMatrix::new(g, raw)
}

/// Deterministic sampler for test points of the Siegel upper half-space.
pub fn sample_siegel(g: usize, seed: u64, spread: f64) -> Result<PeriodMatrix> {
    PeriodMatrix::sample(g, seed, spread)
}

/// Evaluates the full jet at `tau` under `policy`.
///
/// Fails with `EigenFloor` when the smallest eigenvalue of Im(tau) is below
/// the policy floor and with `RadiusExceeded` when no radius within the cap
/// certifies the requested tolerance.
pub fn theta_jet(tau: &PeriodMatrix, policy: &TruncationPolicy) -> Result<ThetaJet> {
    policy.check()?;
    let lambda_min = tau.min_imag_eigenvalue();
    if lambda_min < policy.min_eigen_floor {
        return Err(Error::EigenFloor {
            lambda_min,
            floor: policy.min_eigen_floor,
        });
    }
    let (radius, tail) = lattice::required_radius(tau.g, lambda_min, policy)?;
    let (values, grad, hess) = lattice::accumulate(tau, radius, true);
    Ok(ThetaJet {
        tau: tau.clone(),
        values,
        grad,
        hess,
        radius_used: radius,
        tail_bound: tail,
    })
}

/// Evaluates the jet at an explicit box radius, bypassing the radius search.
/// The recorded tail bound is the certificate for that radius. Useful for
/// truncation-convergence experiments.
pub fn theta_jet_at_radius(tau: &PeriodMatrix, radius: usize) -> ThetaJet {
    let lambda_min = tau.min_imag_eigenvalue();
    let tail = lattice::certified_tail(tau.g, lambda_min, radius);
    let (values, grad, hess) = lattice::accumulate(tau, radius, true);
    ThetaJet {
        tau: tau.clone(),
        values,
        grad,
        hess,
        radius_used: radius,
        tail_bound: tail,
    }
}

/// Theta constants only (no derivatives), for callers that need many cheap
/// evaluations such as the relation screen.
pub fn theta_values(tau: &PeriodMatrix, policy: &TruncationPolicy) -> Result<Vec<Complex64>> {
    policy.check()?;
    let lambda_min = tau.min_imag_eigenvalue();
    if lambda_min < policy.min_eigen_floor {
        return Err(Error::EigenFloor {
            lambda_min,
            floor: policy.min_eigen_floor,
        });
    }
    let (radius, _tail) = lattice::required_radius(tau.g, lambda_min, policy)?;
    let (values, _, _) = lattice::accumulate(tau, radius, false);
    Ok(values)
}
