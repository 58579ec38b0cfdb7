//! Shared JSON schema for multivectors:
//! `{"signature":[p,q],"terms":[{"blades":[1,3],"re":2.0,"im":0.0}]}`.
//!
//! `blades` lists 1-based generator indices in ascending order.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::blade::Blade;
use crate::error::{CliffordError, Result};
use crate::multivector::Multivector;
use crate::signature::Signature;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub blades: Vec<usize>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultivectorJson {
    pub signature: Signature,
    pub terms: Vec<TermJson>,
}

impl From<&Multivector> for MultivectorJson {
    fn from(x: &Multivector) -> Self {
        Self {
            signature: x.signature(),
            terms: x
                .terms()
                .map(|(b, c)| TermJson {
                    blades: b.indices().map(|i| i + 1).collect(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}

impl From<Multivector> for MultivectorJson {
    fn from(x: Multivector) -> Self {
        Self::from(&x)
    }
}

impl TryFrom<MultivectorJson> for Multivector {
    type Error = CliffordError;

    fn try_from(j: MultivectorJson) -> Result<Self> {
        let sig = j.signature;
        let real = j.terms.iter().all(|t| t.im == 0.0);
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            let mut sign = 1.0;
            let mut mask = 0u32;
            for (pos, &i) in t.blades.iter().enumerate() {
                if i == 0 || i > sig.n() {
                    return Err(CliffordError::InvalidArgument(format!(
                        "generator index {i} outside 1..={} for {sig}",
                        sig.n()
                    )));
                }
                if t.blades[..pos].contains(&i) {
                    return Err(CliffordError::InvalidArgument(format!(
                        "repeated generator {i}"
                    )));
                }
                // reorder into ascending mask order
                let bit = 1u32 << (i - 1);
                if (mask & !(bit - 1) & !bit).count_ones() % 2 == 1 {
                    sign = -sign;
                }
                mask |= bit;
            }
            terms.push((Blade(mask), Complex64::new(sign * t.re, sign * t.im)));
        }
        Multivector::from_terms(sig, terms, real)
    }
}

impl Serialize for Multivector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MultivectorJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MultivectorJson::deserialize(d)?;
        Multivector::try_from(j).map_err(serde::de::Error::custom)
    }
}

pub fn to_json(x: &Multivector) -> String {
    serde_json::to_string(x).expect("multivector serialises")
}

pub fn from_json(s: &str) -> Result<Multivector> {
    serde_json::from_str(s).map_err(|e| CliffordError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_shape() {
        let sig = Signature::spacetime();
        let x = Multivector::blade(sig, Blade(0b101), 2.0);
        assert_eq!(
            to_json(&x),
            r#"{"signature":[1,3],"terms":[{"blades":[1,3],"re":2.0,"im":0.0}]}"#
        );
    }

    #[test]
    fn round_trip_and_reordering() {
        let sig = Signature::spacetime();
        let x = crate::text::parse_multivector("1 - 0.5 e2 + (1+2i) e1^e4", sig).unwrap();
        assert_eq!(from_json(&to_json(&x)).unwrap(), x);
        let y = from_json(r#"{"signature":[1,3],"terms":[{"blades":[3,1],"re":1.0}]}"#).unwrap();
        assert_eq!(y, Multivector::blade(sig, Blade(0b101), -1.0));
        assert!(from_json(r#"{"signature":[1,3],"terms":[{"blades":[5],"re":1.0}]}"#).is_err());
    }
}
