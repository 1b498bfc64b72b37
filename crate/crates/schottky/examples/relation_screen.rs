//! Numerical screen for candidate polynomial relations among theta
//! constants.
//!
//! A homogeneous polynomial that vanishes identically on the theta image
//! evaluates to numerical zero at every sampled, unit-normalized theta
//! vector; a non-relation stays bounded away from zero. The screen cannot
//! prove membership in the ideal, but it rejects false candidates cheaply.
//!
//! Run with: cargo run --release --example relation_screen

use num_complex::Complex64;
use schottky::kp::{relation_test, Monomial, SparsePolynomial};

fn main() {
    let g = 2;
    let c = |re: f64| Complex64::new(re, 0.0);

    // an identity written in spread monomials: x0^2 x3^2 - (x0 x3)^2
    let true_relation = SparsePolynomial {
        monomials: vec![
            Monomial {
                exps: vec![2, 0, 0, 2],
                coef: c(1.0),
            },
            Monomial {
                exps: vec![2, 0, 0, 2],
                coef: c(-1.0),
            },
        ],
    };

    // a plausible-looking quadric that is NOT a relation
    let impostor = SparsePolynomial {
        monomials: vec![
            Monomial {
                exps: vec![2, 0, 0, 0],
                coef: c(1.0),
            },
            Monomial {
                exps: vec![0, 2, 0, 0],
                coef: c(-1.0),
            },
            Monomial {
                exps: vec![0, 0, 2, 0],
                coef: c(-1.0),
            },
            Monomial {
                exps: vec![0, 0, 0, 2],
                coef: c(1.0),
            },
        ],
    };

    let n = 32;
    let max_true = relation_test(&true_relation, g, n, 1).unwrap();
    let max_false = relation_test(&impostor, g, n, 1).unwrap();

    println!("genus {g}, {n} sampled period matrices, unit-normalized theta vectors");
    println!("  identically zero polynomial: max |P| = {max_true:.3e}");
    println!("  non-relation quadric:        max |P| = {max_false:.3e}");
}
