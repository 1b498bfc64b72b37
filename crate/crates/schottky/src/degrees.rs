//! Exact arithmetic for the closed-form quantities: Bernoulli numbers, zeta
//! values at negative odd integers, the level-cover index, top
//! self-intersections of the Hodge class, degrees of the theta images of
//! the abelian and Jacobian moduli, the explicit degree upper bound, and
//! the effective-Nullstellensatz problem sizes.
//!
//! Everything in this module is computed over arbitrary-precision rationals
//! (`num_rational::BigRational`); floating point never enters. Quantities
//! known only through the tabulated Jacobian degrees (genus <= 7) are stored
//! verbatim and the implied intersection numbers are derived from them.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; always held in lowest terms with a
/// positive denominator (the `Ratio` constructor canonicalizes).
pub type ExactRational = BigRational;

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn ratio_int(n: BigInt) -> ExactRational {
    ExactRational::from_integer(n)
}

/// 2^e as a positive big integer.
fn pow2(e: u64) -> BigUint {
    BigUint::one() << (e as usize)
}

pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

/// Odd double factorial (2k-1)!! = (2k-1)(2k-3)...3.1, with 1!! = 1.
pub fn double_factorial_odd(k: u64) -> BigUint {
    let mut acc = BigUint::one();
    if k == 0 {
        return acc;
    }
    let mut j = 3u64;
    while j < 2 * k {
        acc *= BigUint::from(j);
        j += 2;
    }
    acc
}

/// Binomial coefficient for big `n` and small `k`, by the running-product
/// form C(n,k) = prod_{i=1..k} (n-k+i)/i (each division is exact).
pub fn binomial(n: &BigUint, k: u64) -> BigUint {
    let kb = BigUint::from(k);
    if *n < kb {
        return BigUint::zero();
    }
    let base = n - &kb;
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= &base + BigUint::from(i);
        acc /= BigUint::from(i);
    }
    acc
}

/// Bernoulli number B_n for even n (B_1 = -1/2 convention internally),
/// by the defining recurrence sum_{k=0}^{m} C(m+1,k) B_k = 0.
pub fn bernoulli(n: u32) -> Result<ExactRational> {
    if n % 2 == 1 {
        return Err(Error::OddBernoulliIndex(n));
    }
    Ok(bernoulli_row(n))
}

fn bernoulli_row(n: u32) -> ExactRational {
    let mut b: Vec<ExactRational> = Vec::with_capacity(n as usize + 1);
    b.push(ExactRational::one());
    for m in 1..=n as u64 {
        // B_m = -1/(m+1) * sum_{k=0}^{m-1} C(m+1, k) B_k
        let mut acc = ExactRational::zero();
        for (k, bk) in b.iter().enumerate() {
            if bk.is_zero() {
                continue;
            }
            let c = binomial(&BigUint::from(m + 1), k as u64);
            acc += bk * ratio_int(BigInt::from_biguint(Sign::Plus, c));
        }
        let m1 = ratio_int(big(m + 1));
        b.push(-acc / m1);
    }
    b.pop().expect("recurrence always produces n+1 entries")
}

/// zeta(1 - 2k) = -B_{2k} / (2k) for k >= 1.
pub fn zeta_neg_odd(k: u32) -> ExactRational {
    assert!(k >= 1, "zeta_neg_odd needs k >= 1");
    let b2k = bernoulli_row(2 * k);
    -b2k / ratio_int(big(2 * k as u64))
}

/// Index of the level subgroup: 2^(g^2+2g) * prod_{k=1..g} (2^(2k) - 1).
pub fn level_index(g: u32) -> BigUint {
    assert!(g >= 1, "level_index needs g >= 1");
    let g = g as u64;
    let mut acc = pow2(g * g + 2 * g);
    for k in 1..=g {
        acc *= pow2(2 * k) - BigUint::one();
    }
    acc
}

/// Top self-intersection of the Hodge class on the abelian moduli, in the
/// orbifold sense: (-1)^N N! prod_{k=1..g} zeta(1-2k) / (2 (2k-1)!!) with
/// N = g(g+1)/2.
pub fn lambda_top_ag(g: u32) -> ExactRational {
    assert!(g >= 1, "lambda_top_ag needs g >= 1");
    let n = (g as u64) * (g as u64 + 1) / 2;
    let mut acc = ratio_int(BigInt::from_biguint(Sign::Plus, factorial(n)));
    if n % 2 == 1 {
        acc = -acc;
    }
    for k in 1..=g {
        let denom = BigInt::from_biguint(Sign::Plus, double_factorial_odd(k as u64)) * big(2);
        acc *= zeta_neg_odd(k) / ratio_int(denom);
    }
    acc
}

/// Degree of the theta image of the level cover of the abelian moduli:
/// level index times twice the orbifold intersection number, divided by
/// 2^N. Integer-valued for every genus in the tabulated range.
pub fn deg_th_ag(g: u32) -> ExactRational {
    let n = (g as u64) * (g as u64 + 1) / 2;
    let idx = ratio_int(BigInt::from_biguint(Sign::Plus, level_index(g)));
    let halving = ratio_int(BigInt::from_biguint(Sign::Plus, pow2(n)));
    idx * ratio_int(big(2)) * lambda_top_ag(g) / halving
}

/// Tabulated degrees of the theta image of the Jacobian locus, genus 1..7.
/// The table is ground truth; the intersection numbers on the curve moduli
/// it implies are exposed through [`implied_lambda_top_mg`].
const DEG_TH_JG_TABLE: [&str; 7] = [
    "1",
    "1",
    "16",
    "208896",
    "282654670848",
    "23303354757572198400",
    "87534047502300588892024209408",
];

pub fn deg_th_jg(g: u32) -> Result<ExactRational> {
    if !(1..=7).contains(&g) {
        return Err(Error::TableAbsent(g));
    }
    let n: BigInt = DEG_TH_JG_TABLE[(g - 1) as usize]
        .parse()
        .expect("table entries are valid integers");
    Ok(ratio_int(n))
}

/// Intersection number implied by the tabulated Jacobian degree:
/// deg * 2^(3g-3) / level_index (inverts deg = deg p * <(lambda/2)^(3g-3)>).
pub fn implied_lambda_top_mg(g: u32) -> Result<ExactRational> {
    let deg = deg_th_jg(g)?;
    let e = 3 * (g as u64) - 3;
    let num = ratio_int(BigInt::from_biguint(Sign::Plus, pow2(e)));
    let den = ratio_int(BigInt::from_biguint(Sign::Plus, level_index(g)));
    Ok(deg * num / den)
}

/// Ratio of the Jacobian-locus degree to the abelian-moduli degree, reduced.
/// Non-integrality for genus 5, 6, 7 is the non-complete-intersection
/// obstruction.
pub fn ratio_j_over_a(g: u32) -> Result<ExactRational> {
    let j = deg_th_jg(g)?;
    Ok(j / deg_th_ag(g))
}

/// Degree ratio of the 1-reducible locus:
/// 2^(g-1) <lambda^(g(g-1)/2)>_{A_(g-1)} / (24 <lambda^(g(g+1)/2)>_{A_g}).
pub fn reducible_ratio_ag(g: u32) -> ExactRational {
    assert!(g >= 2, "reducible_ratio_ag needs g >= 2");
    let num =
        ratio_int(BigInt::from_biguint(Sign::Plus, pow2(g as u64 - 1))) * lambda_top_ag(g - 1);
    let den = ratio_int(big(24)) * lambda_top_ag(g);
    num / den
}

/// Exact degree table for one genus.
#[derive(Debug, Clone)]
pub struct DegreeReport {
    pub g: u32,
    pub level_index: BigUint,
    pub lambda_top_ag: ExactRational,
    pub deg_th_ag: ExactRational,
    /// Tabulated value; absent beyond genus 7.
    pub deg_th_jg: Option<ExactRational>,
    pub implied_lambda_top_mg: Option<ExactRational>,
    pub ratio_j_over_a: Option<ExactRational>,
    /// Absent for genus 1 (no 1-reducible locus to compare).
    pub reducible_ratio: Option<ExactRational>,
}

pub fn degree_report(g: u32) -> Result<DegreeReport> {
    if g < 1 {
        return Err(Error::BadInput("genus must be at least 1".into()));
    }
    let tabulated = (1..=7).contains(&g);
    Ok(DegreeReport {
        g,
        level_index: level_index(g),
        lambda_top_ag: lambda_top_ag(g),
        deg_th_ag: deg_th_ag(g),
        deg_th_jg: if tabulated { Some(deg_th_jg(g)?) } else { None },
        implied_lambda_top_mg: if tabulated {
            Some(implied_lambda_top_mg(g)?)
        } else {
            None
        },
        ratio_j_over_a: if tabulated {
            Some(ratio_j_over_a(g)?)
        } else {
            None
        },
        reducible_ratio: if g >= 2 {
            Some(reducible_ratio_ag(g))
        } else {
            None
        },
    })
}

/// The explicit upper bound on the Jacobian-locus degree, assembled from
/// the caller-supplied Weil-Petersson volume constant.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub g: u32,
    pub c_input: ExactRational,
    /// C = 125 c / 64.
    pub big_c: ExactRational,
    /// (3g-3)! C^g g^(2g).
    pub lambda_bound: ExactRational,
    /// lambda_bound * 2^(g^2-g+3) * prod_{k=1..g} (2^(2k) - 1).
    pub degree_bound: ExactRational,
}

pub fn degree_bound(g: u32, c: &ExactRational) -> Result<BoundReport> {
    if g < 2 {
        return Err(Error::BadInput(format!(
            "degree bound needs g >= 2, got {g}"
        )));
    }
    if !c.is_positive() {
        return Err(Error::BadInput("volume constant c must be positive".into()));
    }
    let gu = g as u64;
    let big_c = c * ExactRational::new(big(125), big(64));
    let mut lambda_bound = ratio_int(BigInt::from_biguint(Sign::Plus, factorial(3 * gu - 3)));
    let mut cg = ExactRational::one();
    for _ in 0..g {
        cg *= &big_c;
    }
    lambda_bound *= cg;
    let mut gg = BigUint::one();
    for _ in 0..(2 * gu) {
        gg *= BigUint::from(gu);
    }
    lambda_bound *= ratio_int(BigInt::from_biguint(Sign::Plus, gg));

    let mut level_part = pow2(gu * gu - gu + 3);
    for k in 1..=gu {
        level_part *= pow2(2 * k) - BigUint::one();
    }
    let degree_bound = &lambda_bound * ratio_int(BigInt::from_biguint(Sign::Plus, level_part));
    Ok(BoundReport {
        g,
        c_input: c.clone(),
        big_c,
        lambda_bound,
        degree_bound,
    })
}

/// Sizes of the linear-algebra problem produced by eliminating the unknowns
/// of the KP system through the effective Nullstellensatz: `K` unknown
/// multiplier coefficients against `L` linear conditions.
#[derive(Debug, Clone)]
pub struct NullstellensatzSizes {
    pub g: u32,
    /// Number of equations 2^g.
    pub m: BigUint,
    /// Number of variables 3g+1.
    pub n_vars: u64,
    /// Common total degree of the equations.
    pub d: u64,
    /// K = 2^g C(4^(3g) + 3g + 1, 3g + 1).
    pub k: BigUint,
    /// L = C(4^(3g) + 3g + 5, 3g + 1).
    pub l: BigUint,
}

pub fn nullstellensatz_sizes(g: u32) -> NullstellensatzSizes {
    assert!(g >= 1, "nullstellensatz_sizes needs g >= 1");
    let gu = g as u64;
    let n_vars = 3 * gu + 1;
    let deg_cap = pow2(2 * 3 * gu); // 4^(3g)
    let k = pow2(gu) * binomial(&(&deg_cap + BigUint::from(3 * gu + 1)), n_vars);
    let l = binomial(&(&deg_cap + BigUint::from(3 * gu + 5)), n_vars);
    NullstellensatzSizes {
        g,
        m: pow2(gu),
        n_vars,
        d: 4,
        k,
        l,
    }
}

/// Parses "p/q" or "p" into an exact rational (used by the CLI's `--c`).
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let parse_int = |s: &str| -> Result<BigInt> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::BadInput(format!("invalid integer `{s}` in rational")))
    };
    match text.split_once('/') {
        None => Ok(ratio_int(parse_int(text)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::BadInput("rational denominator is zero".into()));
            }
            Ok(ExactRational::new(parse_int(p)?, den))
        }
    }
}
