//! Exact degree tables of the theta embeddings for genus 1..7.
//!
//! Reproduces, from Bernoulli numbers alone, the degree of the theta image
//! of the abelian moduli, pairs it with the tabulated Jacobian-locus
//! degrees, and prints the ratios whose non-integrality shows the Jacobian
//! locus is not a complete intersection for genus 5, 6, 7.
//!
//! Run with: cargo run --release --example degree_tables

use schottky::degrees::{degree_report, ExactRational};

fn fmt(r: &ExactRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_opt(r: &Option<ExactRational>) -> String {
    r.as_ref().map_or_else(|| "-".into(), fmt)
}

fn main() {
    println!("g | level index      | deg Th(A_g)                 | deg Th(J_g)");
    println!("--+------------------+-----------------------------+----------------------------");
    for g in 1..=7 {
        let r = degree_report(g).unwrap();
        println!(
            "{} | {:16} | {:27} | {}",
            g,
            r.level_index,
            fmt(&r.deg_th_ag),
            fmt_opt(&r.deg_th_jg)
        );
    }

    println!();
    println!("g | ratio J/A              | integer? | reducible-locus ratio");
    println!("--+------------------------+----------+----------------------");
    for g in 2..=7 {
        let r = degree_report(g).unwrap();
        let ratio = r.ratio_j_over_a.as_ref().unwrap();
        println!(
            "{} | {:22} | {:8} | {}",
            g,
            fmt(ratio),
            if ratio.is_integer() { "yes" } else { "no" },
            fmt_opt(&r.reducible_ratio)
        );
    }

    println!();
    println!("Non-integer J/A ratios (g = 5, 6, 7) rule out a complete intersection;");
    println!("non-integer reducible-locus ratios (g = 4..7) do the same for the");
    println!("locus of products inside the theta image.");
}
