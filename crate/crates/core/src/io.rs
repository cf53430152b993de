//! JSON interchange formats and exact-number rendering.
//!
//! The complex document is the bit-exact CLI contract: object keys are
//! emitted in sorted order and arrays follow the canonical generator
//! ordering, so re-serializing a parsed document reproduces it byte for
//! byte. Rationals travel as strings in lowest terms to keep every value
//! exact; decimals appear only in CSV plot output.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::certificate::{JumpMatrix, SummandVerdict};
use crate::complex::{Complex, Generator};
use crate::error::{Error, Result};
use crate::invariants::PlFunction;
use crate::Rational;

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GeneratorDoc {
    pub alex: i64,
    pub alg: i64,
    pub id: String,
    pub maslov: i64,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DifferentialDoc {
    pub from: String,
    pub to: String,
    pub u: i64,
}

/// Top-level complex document; `differential` entries mean `d(from)`
/// contains `U^u * to`.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ComplexDoc {
    pub differential: Vec<DifferentialDoc>,
    pub generators: Vec<GeneratorDoc>,
    pub name: String,
}

impl ComplexDoc {
    pub fn from_complex(c: &Complex) -> Self {
        let generators = c
            .generators()
            .iter()
            .map(|g| GeneratorDoc {
                alex: g.alex,
                alg: g.alg,
                id: g.id.clone(),
                maslov: g.maslov,
            })
            .collect();
        let differential = c
            .differential_entries()
            .into_iter()
            .map(|(from, to, u)| DifferentialDoc {
                from: c.generators()[from].id.clone(),
                to: c.generators()[to].id.clone(),
                u,
            })
            .collect();
        Self {
            differential,
            generators,
            name: c.name().to_string(),
        }
    }

    pub fn into_complex(self) -> Result<Complex> {
        let generators: Vec<Generator> = self
            .generators
            .into_iter()
            .map(|g| Generator::new(g.id, g.alg, g.alex, g.maslov))
            .collect();
        let entries: Vec<(String, String, i64)> = self
            .differential
            .into_iter()
            .map(|d| (d.from, d.to, d.u))
            .collect();
        Complex::from_data(self.name, generators, &entries)
    }
}

pub fn complex_to_json(c: &Complex) -> String {
    let mut s = serde_json::to_string_pretty(&ComplexDoc::from_complex(c))
        .expect("complex document serializes");
    s.push('\n');
    s
}

pub fn complex_from_json(text: &str) -> Result<Complex> {
    let doc: ComplexDoc = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("malformed complex JSON: {e}")))?;
    doc.into_complex()
}

/// Reduced-fraction rendering: plain integer when the denominator is 1,
/// `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim())
        .map_err(|e| Error::InvalidInput(format!("malformed rational '{s}': {e}")))
}

/// Fixed 10-digit decimal rendering for CSV plot output, rounding half
/// away from zero.
pub fn decimal10(r: &Rational) -> String {
    let scale = BigInt::from(10u64.pow(10));
    let scaled = r.numer() * &scale;
    let den = r.denom();
    let (mut q, rem) = num_integer::Integer::div_rem(&scaled, den);
    if rem.abs() * 2 >= den.abs() {
        if scaled.is_negative() {
            q -= BigInt::one();
        } else {
            q += BigInt::one();
        }
    }
    let negative = q.is_negative();
    let digits = q.abs().to_string();
    let padded = format!("{digits:0>11}");
    let (int_part, frac_part) = padded.split_at(padded.len() - 10);
    format!(
        "{}{}.{}",
        if negative { "-" } else { "" },
        int_part,
        frac_part
    )
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct BreakpointDoc {
    pub t: String,
    pub v: String,
}

/// Piecewise-linear function document: rational breakpoints plus the
/// exactness flag.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PlDoc {
    pub breakpoints: Vec<BreakpointDoc>,
    pub verified: bool,
}

pub fn pl_to_json(pl: &PlFunction) -> String {
    let doc = PlDoc {
        breakpoints: pl
            .breakpoints
            .iter()
            .map(|(t, v)| BreakpointDoc {
                t: format_rational(t),
                v: format_rational(v),
            })
            .collect(),
        verified: pl.verified,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("PL document serializes");
    s.push('\n');
    s
}

/// Certificate document for the summand verdict of a jump matrix.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CertificateDoc {
    pub certified: bool,
    pub k_max: i64,
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

pub fn certificate_to_json(matrix: &JumpMatrix, verdict: &SummandVerdict) -> String {
    let doc = CertificateDoc {
        certified: verdict.certified,
        k_max: matrix.k_max,
        labels: matrix.labels.clone(),
        matrix: matrix
            .entries
            .iter()
            .map(|row| row.iter().map(format_rational).collect())
            .collect(),
        pivot_columns: verdict.pivot_columns.clone(),
        rank: verdict.rank,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("certificate document serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{self, CableModelConfig};

    #[test]
    fn complex_roundtrip_byte_identical() {
        let c = models::cable_model(&CableModelConfig::zero(3).unwrap()).unwrap();
        let json = complex_to_json(&c);
        let parsed = complex_from_json(&json).unwrap();
        assert_eq!(complex_to_json(&parsed), json);
        assert_eq!(
            parsed.structure_fingerprint(),
            c.structure_fingerprint()
        );
    }

    #[test]
    fn complex_json_rejects_garbage() {
        assert!(complex_from_json("{").is_err());
        assert!(complex_from_json(r#"{"differential":[],"generators":[],"name":"x"}"#).is_ok());
        let dangling = r#"{"differential":[{"from":"a","to":"b","u":0}],"generators":[{"alex":0,"alg":0,"id":"a","maslov":0}],"name":"x"}"#;
        assert!(complex_from_json(dangling).is_err());
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&Rational::new(1.into(), 2.into())), "1/2");
        assert_eq!(format_rational(&Rational::new((-4).into(), 2.into())), "-2");
        assert_eq!(format_rational(&Rational::new(3.into(), (-9).into())), "-1/3");
        assert_eq!(parse_rational("-2/3").unwrap(), Rational::new((-2).into(), 3.into()));
        assert_eq!(parse_rational("5").unwrap(), Rational::from_integer(5.into()));
        assert!(parse_rational("one half").is_err());
    }

    #[test]
    fn decimal_rendering() {
        let third = Rational::new(1.into(), 3.into());
        assert_eq!(decimal10(&third), "0.3333333333");
        let minus_two_thirds = Rational::new((-2).into(), 3.into());
        assert_eq!(decimal10(&minus_two_thirds), "-0.6666666667");
        assert_eq!(decimal10(&Rational::from_integer(2.into())), "2.0000000000");
        assert_eq!(decimal10(&Rational::new((-5).into(), 3.into())), "-1.6666666667");
        assert_eq!(decimal10(&Rational::new(1.into(), 4.into())), "0.2500000000");
    }

    #[test]
    fn pl_document_shape() {
        let pl = crate::invariants::upsilon_pl(
            &models::cable_model(&CableModelConfig::zero(2).unwrap()).unwrap(),
            crate::invariants::UpsilonMode::exact(),
        )
        .unwrap();
        let json = pl_to_json(&pl);
        let doc: PlDoc = serde_json::from_str(&json).unwrap();
        assert!(doc.verified);
        assert_eq!(doc.breakpoints.len(), 3);
        assert_eq!(doc.breakpoints[1].t, "2/3");
        assert_eq!(doc.breakpoints[1].v, "-4/3");
    }
}
