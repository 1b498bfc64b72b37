//! Explicit upper bound for the Jacobian-locus degree as a function of genus.
//!
//! The bound is (3g-3)! C^g g^(2g) 2^(g^2-g+3) prod_{k<=g}(4^k - 1) with
//! C = 125c/64 for a caller-supplied volume constant c. The table shows the
//! exact rational at small genus and the bit growth: the 2-power part alone
//! carries ~2g^2 bits, the factorial prefactor adds an o(g^2) correction
//! that is still material at desk-scale genus.
//!
//! Run with: cargo run --release --example bound_growth

use num_traits::ToPrimitive;
use schottky::degrees::{degree_bound, parse_rational};

fn main() {
    let c = parse_rational("1").unwrap();

    println!("exact values at small genus (c = 1):");
    for g in 2..=4 {
        let b = degree_bound(g, &c).unwrap();
        println!(
            "  g={g}: {}/{}",
            b.degree_bound.numer(),
            b.degree_bound.denom()
        );
    }

    println!();
    println!(" g | log2(bound) | log2/g^2 | level-part log2/g^2");
    println!("---+-------------+----------+--------------------");
    for g in 2..=14u32 {
        let b = degree_bound(g, &c).unwrap();
        let log2 = b.degree_bound.numer().to_f64().unwrap().log2()
            - b.degree_bound.denom().to_f64().unwrap().log2();
        let mut level = (g * g - g + 3) as f64;
        for k in 1..=g {
            level += (2f64.powi(2 * k as i32) - 1.0).log2();
        }
        let gg = (g * g) as f64;
        println!(
            "{g:2} | {log2:11.2} | {:8.3} | {:.3}",
            log2 / gg,
            level / gg
        );
    }

    println!();
    println!("Doubling c scales the bound by 2^g exactly:");
    let c2 = parse_rational("2").unwrap();
    for g in [3u32, 6, 9] {
        let ratio =
            degree_bound(g, &c2).unwrap().degree_bound / degree_bound(g, &c).unwrap().degree_bound;
        println!("  g={g}: bound(2c)/bound(c) = {}", ratio.numer());
    }
}
