//! The machine-readable result document.

use std::collections::BTreeMap;

use matgrowth::{dominant_terms, Certification, GrowthPolynomial, GrowthResult};
use num::bigint::BigInt;
use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Certified,
    BoxTruncated,
    VerificationFailed,
    Inconclusive,
    InputError,
    HypothesisFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Certified => 0,
            Status::BoxTruncated | Status::VerificationFailed | Status::Inconclusive => 2,
            Status::InputError => 1,
            Status::HypothesisFailed => 3,
        }
    }

    /// The less favourable of two uncertain outcomes.
    pub fn worst(self, other: Status) -> Status {
        self.max(other)
    }
}

impl From<Certification> for Status {
    fn from(c: Certification) -> Self {
        match c {
            Certification::Certified => Status::Certified,
            Certification::BoxTruncated => Status::BoxTruncated,
            Certification::VerificationFailed => Status::VerificationFailed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exponent: Vec<u32>,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowPoint {
    pub point: Vec<u32>,
    pub predicted: String,
    pub actual: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialReport {
    pub name: String,
    pub display: String,
    pub terms: Vec<Term>,
    pub threshold: Vec<u32>,
    pub degree_bound: Vec<u32>,
    pub dominant_terms: Vec<Term>,
    pub certification: Status,
    #[serde(rename = "box", default, skip_serializing_if = "Vec::is_empty")]
    pub bound: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub window: Vec<WindowPoint>,
}

impl PolynomialReport {
    pub fn from_result(name: &str, r: &GrowthResult) -> Self {
        let mut out = Self::bare(name, &r.polynomial, r.certification.into());
        out.bound = r.bound.entries().to_vec();
        out.window = r
            .fit
            .points
            .iter()
            .map(|p| WindowPoint {
                point: p.point.clone(),
                predicted: rational(&p.predicted),
                actual: p.actual as u64,
            })
            .collect();
        out
    }

    pub fn bare(name: &str, p: &GrowthPolynomial, certification: Status) -> Self {
        PolynomialReport {
            name: name.to_string(),
            display: p.to_string(),
            terms: p
                .sorted_terms()
                .into_iter()
                .map(|(e, c)| Term {
                    exponent: e.clone(),
                    coefficient: rational(c),
                })
                .collect(),
            threshold: p.threshold().to_vec(),
            degree_bound: p.degree_bound().to_vec(),
            dominant_terms: dominant_terms(p)
                .into_iter()
                .map(|(e, c)| Term {
                    exponent: e,
                    coefficient: rational(&c),
                })
                .collect(),
            certification,
            bound: Vec::new(),
            window: Vec::new(),
        }
    }

    /// Evaluates the serialized terms at `point`.
    pub fn eval(&self, point: &[u32]) -> Result<BigRational, CliError> {
        let mut total = BigRational::from_integer(BigInt::from(0));
        for t in &self.terms {
            let mut v = parse_rational(&t.coefficient)?;
            for (x, e) in point.iter().zip(&t.exponent) {
                v *= BigRational::from_integer(BigInt::from(*x).pow(*e));
            }
            total += v;
        }
        Ok(total)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartCheck {
    pub part: usize,
    pub declared: String,
    pub triangular: bool,
    pub quasi_triangular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangular_witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quasi_triangular_witness: Option<String>,
    pub pairs_tested: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub seed: u64,
    pub pool_size: usize,
    pub commutes: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub commutation_failures: Vec<String>,
    pub parts: Vec<PartCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub tool: String,
    pub version: String,
    pub input_digest: String,
    pub mode: String,
    pub status: Status,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub polynomials: Vec<PolynomialReport>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ranks: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ResultDocument {
    pub fn polynomial(&self, name: &str) -> Option<&PolynomialReport> {
        self.polynomials.iter().find(|p| p.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("result document: {e}")))
    }
}

/// `p/q` with `q ≥ 1` in lowest terms.
pub fn rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let digits = |t: &str| {
        let body = t.strip_prefix('-').unwrap_or(t);
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(p) || !digits(q) || q.starts_with('-') {
        return Err(CliError::Input(format!("{s:?} is not a p/q rational")));
    }
    let p: BigInt = p.parse().expect("checked digits");
    let q: BigInt = q.parse().expect("checked digits");
    if q == BigInt::from(0) {
        return Err(CliError::Input(format!("{s:?} has a zero denominator")));
    }
    Ok(BigRational::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_round_trip() {
        for s in ["0/1", "3/2", "-7/4", "12/1"] {
            assert_eq!(rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(rational(&parse_rational("5").unwrap()), "5/1");
        for bad in ["1.5", "1/0", "x", "1/-2", ""] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn worst_status() {
        assert_eq!(Status::Certified.worst(Status::BoxTruncated), Status::BoxTruncated);
        assert_eq!(Status::VerificationFailed.worst(Status::Certified), Status::VerificationFailed);
        assert_eq!(Status::HypothesisFailed.exit_code(), 3);
    }
}
