//! JSON interchange shapes for the CLI and for files on disk.
//!
//! Exact values (rationals, big integers) are rendered as decimal strings,
//! never as floats; numeric values are rendered with 17 significant digits
//! through a custom formatter so identical inputs always produce identical
//! bytes. Complex numbers are `[re, im]` pairs. Absent table entries are
//! `null`.

use std::io::{self, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::degrees::{BoundReport, DegreeReport, ExactRational, NullstellensatzSizes};
use crate::error::{Error, Result};
use crate::kp::{KpReport, Monomial, SparsePolynomial};
use crate::theta::{PeriodMatrix, ThetaJet};

/// Period matrix file format: row-major real and imaginary parts.
#[derive(Debug, Serialize, Deserialize)]
pub struct PeriodMatrixFile {
    pub g: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl PeriodMatrixFile {
    pub fn from_matrix(pm: &PeriodMatrix) -> Self {
        let g = pm.genus();
        let row = |i: usize, pick: fn(Complex64) -> f64| -> Vec<f64> {
            (0..g).map(|j| pick(pm.entry(i, j))).collect()
        };
        Self {
            g,
            re: (0..g).map(|i| row(i, |z| z.re)).collect(),
            im: (0..g).map(|i| row(i, |z| z.im)).collect(),
        }
    }

    pub fn into_matrix(&self) -> Result<PeriodMatrix> {
        let g = self.g;
        let shape_ok = self.re.len() == g
            && self.im.len() == g
            && self.re.iter().all(|r| r.len() == g)
            && self.im.iter().all(|r| r.len() == g);
        if !shape_ok {
            return Err(Error::BadInput(format!(
                "period matrix file must carry {g}x{g} `re` and `im` arrays"
            )));
        }
        let mut raw = Vec::with_capacity(g * g);
        for i in 0..g {
            for j in 0..g {
                raw.push(Complex64::new(self.re[i][j], self.im[i][j]));
            }
        }
        PeriodMatrix::new(g, &raw)
    }
}

fn pair(z: Complex64) -> (f64, f64) {
    (z.re, z.im)
}

/// Serialized jet: values, first and second derivatives in pair order,
/// plus the truncation certificate.
#[derive(Debug, Serialize)]
pub struct JetFile {
    pub values: Vec<(f64, f64)>,
    pub grad: Vec<Vec<(f64, f64)>>,
    pub hess: Vec<Vec<Vec<(f64, f64)>>>,
    pub radius: usize,
    pub tail_bound: f64,
}

impl JetFile {
    pub fn from_jet(jet: &ThetaJet) -> Self {
        let n = jet.num_characteristics();
        let p = jet.num_pairs();
        Self {
            values: (0..n).map(|b| pair(jet.value(b))).collect(),
            grad: (0..n)
                .map(|b| (0..p).map(|a| pair(jet.grad_entry(b, a))).collect())
                .collect(),
            hess: (0..n)
                .map(|b| {
                    (0..p)
                        .map(|a1| (0..p).map(|a2| pair(jet.hess_entry(b, a1, a2))).collect())
                        .collect()
                })
                .collect(),
            radius: jet.radius_used(),
            tail_bound: jet.tail_bound(),
        }
    }
}

/// Schottky test report as emitted by `kp-test`.
#[derive(Debug, Serialize)]
pub struct KpReportFile {
    pub strict_residual: f64,
    pub relaxed_residual: f64,
    pub u: Vec<(f64, f64)>,
    pub v: Vec<(f64, f64)>,
    pub w: Vec<(f64, f64)>,
    pub c: (f64, f64),
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub scale: f64,
    pub decision: String,
}

impl KpReportFile {
    pub fn from_report(report: &KpReport) -> Self {
        Self {
            strict_residual: report.strict_residual,
            relaxed_residual: report.relaxed_residual,
            u: report.best_candidate.u.iter().copied().map(pair).collect(),
            v: report.best_candidate.v.iter().copied().map(pair).collect(),
            w: report.best_candidate.w.iter().copied().map(pair).collect(),
            c: pair(report.best_candidate.c),
            rank: report.sasaki_rank,
            singular_values: report.sasaki_singular_values.clone(),
            scale: report.scale,
            decision: report.decision.as_str().to_owned(),
        }
    }
}

/// Exact rational as decimal numerator/denominator strings.
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl RationalJson {
    pub fn from_rational(r: &ExactRational) -> Self {
        Self {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

fn opt_rational(r: &Option<ExactRational>) -> Option<RationalJson> {
    r.as_ref().map(RationalJson::from_rational)
}

#[derive(Debug, Serialize)]
pub struct DegreeReportFile {
    pub g: u32,
    pub level_index: String,
    pub lambda_top_ag: RationalJson,
    pub deg_th_ag: RationalJson,
    pub deg_th_jg: Option<RationalJson>,
    pub implied_lambda_top_mg: Option<RationalJson>,
    pub ratio_j_over_a: Option<RationalJson>,
    pub reducible_ratio: Option<RationalJson>,
}

impl DegreeReportFile {
    pub fn from_report(r: &DegreeReport) -> Self {
        Self {
            g: r.g,
            level_index: r.level_index.to_string(),
            lambda_top_ag: RationalJson::from_rational(&r.lambda_top_ag),
            deg_th_ag: RationalJson::from_rational(&r.deg_th_ag),
            deg_th_jg: opt_rational(&r.deg_th_jg),
            implied_lambda_top_mg: opt_rational(&r.implied_lambda_top_mg),
            ratio_j_over_a: opt_rational(&r.ratio_j_over_a),
            reducible_ratio: opt_rational(&r.reducible_ratio),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BoundReportFile {
    pub g: u32,
    pub c_input: RationalJson,
    #[serde(rename = "C")]
    pub big_c: RationalJson,
    pub lambda_bound: RationalJson,
    pub degree_bound: RationalJson,
}

impl BoundReportFile {
    pub fn from_report(r: &BoundReport) -> Self {
        Self {
            g: r.g,
            c_input: RationalJson::from_rational(&r.c_input),
            big_c: RationalJson::from_rational(&r.big_c),
            lambda_bound: RationalJson::from_rational(&r.lambda_bound),
            degree_bound: RationalJson::from_rational(&r.degree_bound),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct NullstellensatzFile {
    pub g: u32,
    #[serde(rename = "M")]
    pub m: String,
    #[serde(rename = "N_vars")]
    pub n_vars: u64,
    pub d: u64,
    #[serde(rename = "K")]
    pub k: String,
    #[serde(rename = "L")]
    pub l: String,
}

impl NullstellensatzFile {
    pub fn from_sizes(s: &NullstellensatzSizes) -> Self {
        Self {
            g: s.g,
            m: s.m.to_string(),
            n_vars: s.n_vars,
            d: s.d,
            k: s.k.to_string(),
            l: s.l.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RankReportFile {
    pub g: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub tol: f64,
    pub singular_values: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct RelationReportFile {
    pub g: usize,
    pub n_samples: usize,
    pub seed: u64,
    pub degree: u64,
    pub max_abs: f64,
}

/// Polynomial input format for `relation-test`.
#[derive(Debug, Serialize, Deserialize)]
pub struct PolynomialFile {
    pub monomials: Vec<MonomialFile>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MonomialFile {
    pub exps: Vec<u32>,
    pub coef: (f64, f64),
}

impl PolynomialFile {
    pub fn into_polynomial(self) -> SparsePolynomial {
        SparsePolynomial {
            monomials: self
                .monomials
                .into_iter()
                .map(|m| Monomial {
                    exps: m.exps,
                    coef: Complex64::new(m.coef.0, m.coef.1),
                })
                .collect(),
        }
    }
}

/// Compact JSON with every float printed as a 17-significant-digit
/// scientific literal; f64 round-trips exactly and output is byte-stable.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        debug_assert!(value.is_finite(), "reports never carry NaN/inf");
        write!(writer, "{value:.16e}")
    }
}

/// Serializes any report to the canonical JSON byte string.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("in-memory serialization cannot fail");
    String::from_utf8(out).expect("serde_json emits utf-8")
}

pub fn read_period_matrix(text: &str) -> Result<PeriodMatrix> {
    let file: PeriodMatrixFile = serde_json::from_str(text)
        .map_err(|e| Error::BadInput(format!("invalid period matrix JSON: {e}")))?;
    file.into_matrix()
}

pub fn read_polynomial(text: &str) -> Result<SparsePolynomial> {
    let file: PolynomialFile = serde_json::from_str(text)
        .map_err(|e| Error::BadInput(format!("invalid polynomial JSON: {e}")))?;
    Ok(file.into_polynomial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::sample_siegel;

    #[test]
    fn period_matrix_round_trip() {
        let pm = sample_siegel(3, 19, 0.5).unwrap();
        let text = to_json_string(&PeriodMatrixFile::from_matrix(&pm));
        let back = read_period_matrix(&text).unwrap();
        for (a, b) in pm.entries().iter().zip(back.entries().iter()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn float_rendering_is_fixed_width_scientific() {
        #[derive(Serialize)]
        struct Probe {
            x: f64,
        }
        let text = to_json_string(&Probe { x: 0.1 });
        assert_eq!(text, r#"{"x":1.0000000000000001e-1}"#);
        let text = to_json_string(&Probe { x: 1.0 });
        assert_eq!(text, r#"{"x":1.0000000000000000e0}"#);
    }

    #[test]
    fn json_bytes_are_reproducible() {
        let pm = sample_siegel(2, 7, 0.5).unwrap();
        let a = to_json_string(&PeriodMatrixFile::from_matrix(&pm));
        let b = to_json_string(&PeriodMatrixFile::from_matrix(&pm));
        assert_eq!(a, b);
    }

    #[test]
    fn polynomial_parse() {
        let text =
            r#"{"monomials":[{"exps":[2,0],"coef":[1.0,0.0]},{"exps":[0,2],"coef":[-0.5,1.0]}]}"#;
        let poly = read_polynomial(text).unwrap();
        assert_eq!(poly.monomials.len(), 2);
        assert_eq!(poly.degree(), Some(2));
        assert_eq!(poly.monomials[1].coef, Complex64::new(-0.5, 1.0));
    }

    #[test]
    fn malformed_inputs_are_bad_input_errors() {
        assert!(matches!(read_period_matrix("{"), Err(Error::BadInput(_))));
        assert!(matches!(
            read_period_matrix(r#"{"g":2,"re":[[0.0]],"im":[[1.0]]}"#),
            Err(Error::BadInput(_))
        ));
    }
}
