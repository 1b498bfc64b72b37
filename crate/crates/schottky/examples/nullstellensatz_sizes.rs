//! Problem sizes for eliminating the KP unknowns by effective
//! Nullstellensatz.
//!
//! The KP system is 2^g quartic equations in 3g+1 unknowns. Infeasibility
//! certificates 1 = sum c_i f_i can be searched among multipliers of degree
//! at most 4^(3g), which turns elimination into linear algebra with K
//! unknown coefficients and L conditions. The numbers explode immediately;
//! this example prints them exactly anyway.
//!
//! Run with: cargo run --release --example nullstellensatz_sizes

use schottky::degrees::nullstellensatz_sizes;

fn main() {
    println!(" g | equations | variables | K (unknown multiplier coefficients)");
    for g in 1..=3 {
        let s = nullstellensatz_sizes(g);
        let k = s.k.to_string();
        let shown = if k.len() > 40 {
            format!("{}... ({} digits)", &k[..40], k.len())
        } else {
            k
        };
        println!("{g:2} | 2^{g} = {:3} | {:9} | {shown}", s.m, s.n_vars);
    }

    println!();
    println!(" g | L (linear conditions)");
    for g in 1..=3 {
        let s = nullstellensatz_sizes(g);
        let l = s.l.to_string();
        let shown = if l.len() > 40 {
            format!("{}... ({} digits)", &l[..40], l.len())
        } else {
            l
        };
        println!("{g:2} | {shown}");
    }

    println!();
    let s1 = nullstellensatz_sizes(1);
    println!(
        "genus 1 exactly: K = {} = 2 C(68,4), L = {} = C(72,4)",
        s1.k, s1.l
    );
}
