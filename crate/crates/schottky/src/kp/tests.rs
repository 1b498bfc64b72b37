use num_complex::Complex64;

use crate::theta::{theta_jet, PeriodMatrix, ThetaJet, TruncationPolicy};

use super::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn jet_at_i() -> ThetaJet {
    let tau = PeriodMatrix::new(1, &[c(0.0, 1.0)]).unwrap();
    theta_jet(&tau, &TruncationPolicy::default()).unwrap()
}

fn sampled_jet(g: usize, seed: u64) -> ThetaJet {
    let tau = PeriodMatrix::sample(g, seed, 0.5).unwrap();
    theta_jet(&tau, &TruncationPolicy::default()).unwrap()
}

fn diag_jet_g2() -> ThetaJet {
    let zero = c(0.0, 0.0);
    let i = c(0.0, 1.0);
    let tau = PeriodMatrix::new(2, &[i, zero, zero, i]).unwrap();
    theta_jet(&tau, &TruncationPolicy::default()).unwrap()
}

#[test]
fn directional_first_is_bilinear_in_zero() {
    let jet = sampled_jet(2, 4);
    let zero = vec![c(0.0, 0.0); 2];
    let any = vec![c(0.3, 0.1), c(-0.2, 0.7)];
    for out in directional_first(&jet, &zero, &any).unwrap() {
        assert_eq!(out, c(0.0, 0.0));
    }
}

#[test]
fn directional_first_genus_one_value() {
    // 2 pi i * sum n^2 e^(-2 pi n^2), moment frozen from the oracle
    let jet = jet_at_i();
    let one = vec![c(1.0, 0.0)];
    let out = directional_first(&jet, &one, &one).unwrap();
    let expected = c(0.0, 2.0 * std::f64::consts::PI * 3.734_885_560_708_432_2e-3);
    assert!((out[0] - expected).norm() < 1e-12);
}

#[test]
fn directional_first_cross_block_vanishes() {
    let jet = diag_jet_g2();
    let e0 = vec![c(1.0, 0.0), c(0.0, 0.0)];
    let e1 = vec![c(0.0, 0.0), c(1.0, 0.0)];
    for out in directional_first(&jet, &e0, &e1).unwrap() {
        assert!(out.norm() <= 2.0 * TruncationPolicy::default().tol);
    }
}

#[test]
fn directional_fourth_zero_and_axis() {
    let jet = sampled_jet(2, 6);
    let zero = vec![c(0.0, 0.0); 2];
    for out in directional_fourth(&jet, &zero).unwrap() {
        assert_eq!(out, c(0.0, 0.0));
    }
    let e0 = vec![c(1.0, 0.0), c(0.0, 0.0)];
    let fourth = directional_fourth(&jet, &e0).unwrap();
    for (b, out) in fourth.iter().enumerate() {
        assert_eq!(*out, jet.hess_entry(b, 0, 0));
    }
}

#[test]
fn directional_fourth_genus_one_value() {
    let jet = jet_at_i();
    let one = vec![c(1.0, 0.0)];
    let out = directional_fourth(&jet, &one).unwrap();
    let pi = std::f64::consts::PI;
    let expected = c(-4.0 * pi * pi * 3.734_885_852_585_793e-3, 0.0);
    assert!((out[0] - expected).norm() < 1e-12);
}

#[test]
fn dimension_mismatch_is_rejected() {
    let jet = sampled_jet(2, 6);
    let short = vec![c(1.0, 0.0)];
    assert!(matches!(
        directional_fourth(&jet, &short),
        Err(crate::Error::DimensionMismatch {
            expected: 2,
            got: 1
        })
    ));
}

#[test]
fn residual_reduces_to_fourth_term() {
    let jet = sampled_jet(2, 9);
    let mut cand = KpCandidate::zero(2);
    cand.u = vec![c(0.6, 0.0), c(0.8, 0.0)];
    let res = kp_residual(&jet, &cand).unwrap();
    let fourth = directional_fourth(&jet, &cand.u).unwrap();
    for (r, f) in res.iter().zip(fourth.iter()) {
        assert_eq!(r, f);
    }
}

#[test]
fn residual_is_affine_in_c() {
    let jet = sampled_jet(2, 10);
    let mut cand = KpCandidate::zero(2);
    cand.u = vec![c(0.6, 0.1), c(-0.5, 0.3)];
    cand.v = vec![c(0.2, 0.0), c(0.1, -0.4)];
    cand.w = vec![c(-0.3, 0.2), c(0.7, 0.0)];
    let base = kp_residual(&jet, &cand).unwrap();
    cand.c = c(0.37, -1.2);
    let shifted = kp_residual(&jet, &cand).unwrap();
    for b in 0..jet.num_characteristics() {
        let expect = base[b] + cand.c * jet.value(b);
        assert!((shifted[b] - expect).norm() < 1e-12 * jet.scale());
    }
}

#[test]
fn residual_scales_with_the_gauge_weight() {
    let jet = sampled_jet(2, 12);
    let cand = KpCandidate {
        u: vec![c(0.6, 0.1), c(-0.5, 0.3)],
        v: vec![c(0.2, 0.0), c(0.1, -0.4)],
        w: vec![c(-0.3, 0.2), c(0.7, 0.0)],
        c: c(0.9, 0.05),
    };
    let alpha = c(0.7, 0.4);
    let a2 = alpha * alpha;
    let scaled = KpCandidate {
        u: cand.u.iter().map(|z| z * alpha).collect(),
        v: cand.v.iter().map(|z| z * a2).collect(),
        w: cand.w.iter().map(|z| z * a2 * alpha).collect(),
        c: cand.c * a2 * a2,
    };
    let r0 = residual_norm(&kp_residual(&jet, &cand).unwrap());
    let r1 = residual_norm(&kp_residual(&jet, &scaled).unwrap());
    let weight = alpha.norm().powi(4);
    assert!((r1 - weight * r0).abs() < 1e-10 * r0.max(1.0));
}

#[test]
fn gauge_fixing_normalizes_and_rejects_zero() {
    let cand = KpCandidate {
        u: vec![c(0.0, 0.0), c(0.0, -2.0)],
        v: vec![c(1.0, 1.0), c(0.0, 0.0)],
        w: vec![c(0.0, 0.0), c(3.0, 0.0)],
        c: c(0.0, 1.0),
    };
    let fixed = cand.gauge_fixed().unwrap();
    let norm: f64 = fixed.u.iter().map(|z| z.norm_sqr()).sum();
    assert!((norm - 1.0).abs() < 1e-14);
    let lead = fixed.u.iter().find(|z| z.norm() > 1e-8).unwrap();
    assert!(lead.im.abs() < 1e-14 && lead.re > 0.0);

    assert!(KpCandidate::zero(2).gauge_fixed().is_err());
}

#[test]
fn gauge_orbit_has_one_representative() {
    // any two points on the same gauge orbit fix to the same candidate
    let cand = KpCandidate {
        u: vec![c(0.6, 0.1), c(-0.5, 0.3)],
        v: vec![c(0.2, 0.0), c(0.1, -0.4)],
        w: vec![c(-0.3, 0.2), c(0.7, 0.0)],
        c: c(0.9, 0.05),
    };
    let alpha = c(-1.3, 0.8);
    let a2 = alpha * alpha;
    let moved = KpCandidate {
        u: cand.u.iter().map(|z| z * alpha).collect(),
        v: cand.v.iter().map(|z| z * a2).collect(),
        w: cand.w.iter().map(|z| z * a2 * alpha).collect(),
        c: cand.c * a2 * a2,
    };
    let a = cand.gauge_fixed().unwrap();
    let b = moved.gauge_fixed().unwrap();
    for (x, y) in a.u.iter().zip(b.u.iter()) {
        assert!((x - y).norm() < 1e-12);
    }
    for (x, y) in a.v.iter().zip(b.v.iter()) {
        assert!((x - y).norm() < 1e-12);
    }
    for (x, y) in a.w.iter().zip(b.w.iter()) {
        assert!((x - y).norm() < 1e-12);
    }
    assert!((a.c - b.c).norm() < 1e-12);
}

#[test]
fn relaxed_profile_genus_one_is_exact() {
    // 2 unknowns against 2 equations; the system {dTheta, Theta} at tau = i
    // is nonsingular, so the inner minimum vanishes
    let jet = jet_at_i();
    let profile = relaxed_profile(&jet, &[c(1.0, 0.0)]).unwrap();
    assert!(profile.residual <= 1e-10 * jet.scale());
}

#[test]
fn relaxed_profile_genus_two_is_generically_exact() {
    for seed in [1u64, 2, 3] {
        let jet = sampled_jet(2, seed);
        let u = vec![c(0.8, 0.0), c(0.6, 0.0)];
        let profile = relaxed_profile(&jet, &u).unwrap();
        assert!(profile.residual <= 1e-8 * jet.scale(), "seed {seed}");
    }
}

#[test]
fn relaxed_profile_is_phase_invariant() {
    let jet = sampled_jet(3, 14);
    let u = [c(0.5, 0.1), c(-0.3, 0.6), c(0.2, -0.4)];
    let norm = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let u: Vec<Complex64> = u.iter().map(|z| z / norm).collect();
    let phase = c(0.0, 1.0);
    let rotated: Vec<Complex64> = u.iter().map(|z| z * phase).collect();
    let p0 = relaxed_profile(&jet, &u).unwrap();
    let p1 = relaxed_profile(&jet, &rotated).unwrap();
    assert!((p0.residual - p1.residual).abs() < 1e-10 * jet.scale());
}

#[test]
fn relaxation_never_exceeds_the_structured_residual() {
    let jet = sampled_jet(2, 21);
    let cand = KpCandidate {
        u: vec![c(0.6, 0.1), c(-0.5, 0.3)],
        v: vec![c(0.2, 0.0), c(0.1, -0.4)],
        w: vec![c(-0.3, 0.2), c(0.7, 0.0)],
        c: c(0.9, 0.05),
    }
    .gauge_fixed()
    .unwrap();
    let strict = residual_norm(&kp_residual(&jet, &cand).unwrap());
    let relaxed = relaxed_profile(&jet, &cand.u).unwrap().residual;
    assert!(relaxed <= strict + 1e-12);
}

#[test]
fn relaxation_is_sound_across_random_candidates() {
    // the free symmetric matrix strictly contains the structured family,
    // so the profile minimum never exceeds any structured residual
    let jet = sampled_jet(3, 33);
    let mut rng = crate::rng::SplitMix64::new(99);
    for trial in 0..25 {
        let mut draw = |n: usize| -> Vec<Complex64> {
            (0..n)
                .map(|_| c(rng.next_symmetric(1.5), rng.next_symmetric(1.5)))
                .collect()
        };
        let cand = KpCandidate {
            u: draw(3),
            v: draw(3),
            w: draw(3),
            c: draw(1)[0],
        }
        .gauge_fixed()
        .unwrap();
        let strict = residual_norm(&kp_residual(&jet, &cand).unwrap());
        let relaxed = relaxed_profile(&jet, &cand.u).unwrap().residual;
        assert!(relaxed <= strict + 1e-12, "trial {trial}");
    }
}

#[test]
fn fixed_direction_inner_solve_genus_one() {
    // with u = 1 the residual is hess + B grad + c theta for free (B, c);
    // the 2x2 linear solve drives it to zero, so the structured candidate
    // (u, v, w, c) = (1, 0, -B, c) does as well
    let jet = jet_at_i();
    let a = nalgebra::DMatrix::from_row_slice(
        2,
        2,
        &[
            jet.grad_entry(0, 0),
            jet.value(0),
            jet.grad_entry(1, 0),
            jet.value(1),
        ],
    );
    let rhs =
        nalgebra::DVector::from_column_slice(&[-jet.hess_entry(0, 0, 0), -jet.hess_entry(1, 0, 0)]);
    let sol = a.lu().solve(&rhs).expect("nonsingular at tau = i");
    let cand = KpCandidate {
        u: vec![c(1.0, 0.0)],
        v: vec![c(0.0, 0.0)],
        w: vec![-sol[0]],
        c: sol[1],
    };
    let res = residual_norm(&kp_residual(&jet, &cand).unwrap());
    assert!(res <= 1e-8 * jet.scale());
}

#[test]
fn strict_min_genus_one_is_jacobian_like() {
    let jet = jet_at_i();
    let config = SolverConfig {
        n_starts: 8,
        seed: 3,
        ..SolverConfig::default()
    };
    let report = strict_min(&jet, &config).unwrap();
    assert_eq!(report.decision, Decision::JacobianLike);
    assert!(report.strict_residual <= 1e-8 * report.scale);
    assert!(report.relaxed_residual <= report.strict_residual + 1e-12);
    assert_eq!(report.sasaki_rank, 2);
}

#[test]
fn strict_min_is_deterministic() {
    let jet = sampled_jet(2, 17);
    let config = SolverConfig {
        n_starts: 6,
        seed: 11,
        max_iters: 200,
        ..SolverConfig::default()
    };
    let a = strict_min(&jet, &config).unwrap();
    let b = strict_min(&jet, &config).unwrap();
    assert_eq!(a.strict_residual, b.strict_residual);
    assert_eq!(a.relaxed_residual, b.relaxed_residual);
    assert_eq!(a.decision, b.decision);
    assert_eq!(a.best_candidate.u, b.best_candidate.u);
    assert_eq!(a.best_candidate.c, b.best_candidate.c);
}

#[test]
fn more_starts_never_hurt() {
    let jet = jet_at_i();
    let base = SolverConfig {
        n_starts: 4,
        seed: 5,
        max_iters: 150,
        ..SolverConfig::default()
    };
    let wide = SolverConfig {
        n_starts: 8,
        ..base
    };
    let a = strict_min(&jet, &base).unwrap();
    let b = strict_min(&jet, &wide).unwrap();
    assert!(b.strict_residual <= a.strict_residual + 1e-15);
}

#[test]
fn decomposable_input_is_inconclusive() {
    let jet = diag_jet_g2();
    let config = SolverConfig {
        n_starts: 6,
        seed: 2,
        max_iters: 200,
        ..SolverConfig::default()
    };
    let report = strict_min(&jet, &config).unwrap();
    assert!(report.sasaki_rank < jet.num_pairs() + 1);
    assert_eq!(report.decision, Decision::Inconclusive);
}

#[test]
fn sasaki_rank_values() {
    let (rank1, sv1) = rank_test(&sasaki_matrix(&jet_at_i()), default_rank_tol(1));
    assert_eq!(rank1, 2);
    assert_eq!(sv1.len(), 2);

    // the cross-derivative row vanishes at a diagonal point
    let (rank2, _) = rank_test(&sasaki_matrix(&diag_jet_g2()), default_rank_tol(2));
    assert_eq!(rank2, 3);

    let (rank3, _) = rank_test(&sasaki_matrix(&sampled_jet(3, 8)), default_rank_tol(3));
    assert_eq!(rank3, 7);
}

#[test]
fn relation_test_zero_polynomial() {
    let poly = SparsePolynomial {
        monomials: vec![
            Monomial {
                exps: vec![1, 0],
                coef: c(1.0, 0.0),
            },
            Monomial {
                exps: vec![1, 0],
                coef: c(-1.0, 0.0),
            },
        ],
    };
    let max = relation_test(&poly, 1, 5, 3).unwrap();
    assert_eq!(max, 0.0);
}

#[test]
fn relation_test_nonvanishing_coordinate() {
    // x_0 = Theta[0]/|Theta| stays away from zero on sampled points
    let poly = SparsePolynomial {
        monomials: vec![Monomial {
            exps: vec![1, 0],
            coef: c(1.0, 0.0),
        }],
    };
    let max = relation_test(&poly, 1, 8, 3).unwrap();
    assert!(max > 0.5, "got {max}");
}

#[test]
fn relation_test_detects_written_cancellation() {
    // (x0 x1)^2 - x0^2 x1^2 written in spread monomials
    let poly = SparsePolynomial {
        monomials: vec![
            Monomial {
                exps: vec![2, 2],
                coef: c(1.0, 0.0),
            },
            Monomial {
                exps: vec![2, 2],
                coef: c(-1.0, 0.0),
            },
        ],
    };
    let max = relation_test(&poly, 1, 5, 9).unwrap();
    assert!(max <= 1e-12);
}

#[test]
fn relation_test_rejects_inhomogeneous_input() {
    let poly = SparsePolynomial {
        monomials: vec![
            Monomial {
                exps: vec![1, 0],
                coef: c(1.0, 0.0),
            },
            Monomial {
                exps: vec![2, 0],
                coef: c(1.0, 0.0),
            },
        ],
    };
    assert!(matches!(
        relation_test(&poly, 1, 3, 1),
        Err(crate::Error::NonHomogeneous(1, 2))
    ));
}

#[test]
fn relation_test_is_deterministic() {
    let poly = SparsePolynomial {
        monomials: vec![Monomial {
            exps: vec![1, 0, 0, 0],
            coef: c(1.0, 0.0),
        }],
    };
    let a = relation_test(&poly, 2, 4, 42).unwrap();
    let b = relation_test(&poly, 2, 4, 42).unwrap();
    assert_eq!(a, b);
}
