//! The line-delimited JSON form of a fiber.
//!
//! Field elements are strings: decimal residues for `Fp`, comma-separated
//! power-basis coordinates for `Fq` (`"3,0,5"`), and `"num/den"` or an
//! integer for `Q`. Polynomials are coefficient arrays, lowest degree first.

use std::time::Duration;

use geores::kronecker::{Fiber, SolveStats, StageTimings};
use geores::poly::PolyRing;
use geores::ring::{ExtField, Field, FiniteField, PrimeField, RationalField, RingDescriptor};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error("bad element {text:?}: {reason}")]
    Element { text: String, reason: String },
    #[error("bad field {0:?}")]
    Field(String),
    #[error("inconsistent document: {0}")]
    Shape(String),
}

/// Text encoding of field elements.
pub trait Codec: Field {
    fn encode(&self, a: &Self::Elem) -> String;
    fn decode(&self, s: &str) -> Result<Self::Elem, DocError>;
}

fn bad(text: &str, reason: impl Into<String>) -> DocError {
    DocError::Element {
        text: text.to_string(),
        reason: reason.into(),
    }
}

fn parse_residue(s: &str, p: u64) -> Result<u64, DocError> {
    let v: u64 = s
        .trim()
        .parse()
        .map_err(|_| bad(s, "not a decimal residue"))?;
    if v >= p {
        return Err(bad(s, format!("not reduced modulo {p}")));
    }
    Ok(v)
}

impl Codec for PrimeField {
    fn encode(&self, a: &u64) -> String {
        a.to_string()
    }

    fn decode(&self, s: &str) -> Result<u64, DocError> {
        parse_residue(s, self.modulus())
    }
}

impl Codec for ExtField {
    fn encode(&self, a: &Vec<u64>) -> String {
        let mut c = self.coords(a);
        c.resize(self.degree(), 0);
        c.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    }

    fn decode(&self, s: &str) -> Result<Vec<u64>, DocError> {
        let c = s
            .split(',')
            .map(|x| parse_residue(x, self.prime()))
            .collect::<Result<Vec<_>, _>>()?;
        if c.len() != self.degree() {
            return Err(bad(s, format!("expected {} coordinates", self.degree())));
        }
        Ok(self.from_coords(&c))
    }
}

impl Codec for RationalField {
    fn encode(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn decode(&self, s: &str) -> Result<BigRational, DocError> {
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a, b),
            None => (s, "1"),
        };
        let num: BigInt = num.trim().parse().map_err(|_| bad(s, "bad numerator"))?;
        let den: BigInt = den.trim().parse().map_err(|_| bad(s, "bad denominator"))?;
        if den.is_zero() {
            return Err(bad(s, "zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }
}

/// Stage timings in whole microseconds.
#[derive(Serialize, Deserialize, Debug, Clone, Default, PartialEq, Eq)]
pub struct Timings {
    pub initial_us: u64,
    pub lift_us: u64,
    pub project_us: u64,
    pub shape_us: u64,
    pub conclude_us: u64,
    pub total_us: u64,
}

fn micros(d: Duration) -> u64 {
    d.as_micros().min(u128::from(u64::MAX)) as u64
}

impl From<&StageTimings> for Timings {
    fn from(t: &StageTimings) -> Self {
        Timings {
            initial_us: micros(t.initial),
            lift_us: micros(t.lift),
            project_us: micros(t.project),
            shape_us: micros(t.shape),
            conclude_us: micros(t.conclude),
            total_us: micros(t.total()),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, Default, PartialEq, Eq)]
pub struct Metadata {
    pub seed: u64,
    /// Attempts used, the successful one included.
    pub attempts: u32,
    /// Degree of the extension the inner steps ran in (1 for none).
    pub extension_degree: usize,
    /// The prime of the modular run, over `Q`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    /// The final `p`-adic precision exponent, over `Q`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    pub timings: Timings,
}

impl Metadata {
    pub fn from_stats(seed: u64, stats: &SolveStats) -> Self {
        Metadata {
            seed,
            attempts: stats.attempts,
            extension_degree: stats.extension_degree,
            prime: None,
            precision: None,
            timings: Timings::from(&stats.timings),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FiberDocument {
    /// Field of the input system.
    pub system_field: String,
    /// Field of every element below; an extension of `system_field` when the
    /// system's field was too small.
    pub field: String,
    /// Defining polynomial of `field` when it is an extension, lowest first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<String>>,
    pub n: usize,
    pub r: usize,
    /// The change of variables `y = lambda x`, row-major.
    pub lambda: Vec<Vec<String>>,
    pub point: Vec<String>,
    pub m: Vec<String>,
    pub v: Vec<Vec<String>>,
    pub w: Vec<Vec<String>>,
    pub meta: Metadata,
}

/// The field a document's elements live in.
#[derive(Clone, Debug)]
pub enum DocField {
    Prime(PrimeField),
    Ext(ExtField),
    Rational,
}

impl FiberDocument {
    pub fn from_fiber<K: Codec>(
        k: &K,
        system_field: &RingDescriptor,
        fiber: &Fiber<K>,
        meta: Metadata,
    ) -> Self {
        let poly = |p: &geores::poly::Poly<K::Elem>| {
            p.coeffs().iter().map(|c| k.encode(c)).collect::<Vec<_>>()
        };
        let descriptor = k.descriptor();
        let modulus = match &descriptor {
            RingDescriptor::ExtensionField {
                modulus: Some(m), ..
            } => Some(m.iter().map(u64::to_string).collect()),
            _ => None,
        };
        FiberDocument {
            system_field: system_field.to_string(),
            field: descriptor.to_string(),
            modulus,
            n: fiber.n,
            r: fiber.level,
            lambda: fiber
                .lambda
                .iter()
                .map(|row| row.iter().map(|c| k.encode(c)).collect())
                .collect(),
            point: fiber.point.iter().map(|c| k.encode(c)).collect(),
            m: poly(&fiber.m),
            v: fiber.v.iter().map(poly).collect(),
            w: fiber.w.iter().map(poly).collect(),
            meta,
        }
    }

    /// Rebuilds the field named by `field` and `modulus`.
    pub fn doc_field(&self) -> Result<DocField, DocError> {
        let desc: RingDescriptor = self
            .field
            .parse()
            .map_err(|_| DocError::Field(self.field.clone()))?;
        match desc {
            RingDescriptor::PrimeField { p } => Ok(DocField::Prime(
                PrimeField::new(p).map_err(|_| DocError::Field(self.field.clone()))?,
            )),
            RingDescriptor::ExtensionField { p, e, .. } => {
                let field = match &self.modulus {
                    Some(m) => {
                        let coeffs = m
                            .iter()
                            .map(|c| parse_residue(c, p))
                            .collect::<Result<Vec<_>, _>>()?;
                        if coeffs.len() != e + 1 {
                            return Err(DocError::Shape(format!(
                                "modulus of degree {} for {}",
                                coeffs.len().saturating_sub(1),
                                self.field
                            )));
                        }
                        ExtField::new(p, coeffs)
                    }
                    None => desc.build_extension(),
                };
                Ok(DocField::Ext(field.map_err(|e| {
                    DocError::Field(format!("{}: {e}", self.field))
                })?))
            }
            RingDescriptor::Rationals => Ok(DocField::Rational),
            RingDescriptor::ResidueRing { .. } => Err(DocError::Field(self.field.clone())),
        }
    }

    pub fn to_fiber<K: Codec>(&self, k: &K) -> Result<Fiber<K>, DocError> {
        let kx = PolyRing::new(k.clone());
        let elems = |xs: &[String]| {
            xs.iter()
                .map(|s| k.decode(s))
                .collect::<Result<Vec<_>, _>>()
        };
        let poly = |xs: &[String]| elems(xs).map(|cs| kx.from_coeffs(cs));
        if self.r == 0 || self.r > self.n {
            return Err(DocError::Shape(format!(
                "r = {} with n = {}",
                self.r, self.n
            )));
        }
        Ok(Fiber {
            level: self.r,
            n: self.n,
            lambda: self
                .lambda
                .iter()
                .map(|row| elems(row))
                .collect::<Result<_, _>>()?,
            point: elems(&self.point)?,
            m: poly(&self.m)?,
            v: self.v.iter().map(|p| poly(p)).collect::<Result<_, _>>()?,
            w: self.w.iter().map(|p| poly(p)).collect::<Result<_, _>>()?,
        })
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    /// Parses the first non-empty line.
    pub fn from_text(text: &str) -> Result<Self, DocError> {
        let line = text
            .lines()
            .find(|l| !l.trim().is_empty())
            .ok_or_else(|| DocError::Json("empty input".into()))?;
        serde_json::from_str(line).map_err(|e| DocError::Json(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_codecs() {
        let q = RationalField;
        let x = BigRational::new((-1).into(), 3.into());
        assert_eq!(q.encode(&x), "-1/3");
        assert_eq!(q.decode("-1/3").unwrap(), x);
        assert_eq!(
            q.decode("4/2").unwrap(),
            BigRational::from_integer(2.into())
        );
        assert!(q.decode("1/0").is_err());

        let k = PrimeField::new(7).unwrap();
        assert_eq!(k.decode("5").unwrap(), 5);
        assert!(k.decode("7").is_err());

        let big = ExtField::new(7, vec![1, 0, 1]).unwrap();
        let a = big.from_coords(&[2, 5]);
        assert_eq!(big.encode(&a), "2,5");
        assert_eq!(big.decode("2,5").unwrap(), a);
        assert_eq!(big.encode(&big.from_coords(&[0, 0])), "0,0");
        assert!(big.decode("2").is_err());
    }
}
