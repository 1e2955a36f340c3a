//! Vector-field zero censuses and the mod-2 counting comparison.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qlinalg::Z2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("manifold dimension {0} is odd")]
    OddDimension(usize),
    #[error("census lists {0} zero(s) without a determinant sign")]
    MissingSigns(usize),
    #[error("a nonvanishing census cannot list zeros")]
    NonvanishingWithZeros,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "unknown")]
    Unknown,
}

impl DetSign {
    pub fn value(self) -> Option<i64> {
        match self {
            DetSign::Plus => Some(1),
            DetSign::Minus => Some(-1),
            DetSign::Unknown => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Zero {
    pub label: String,
    #[serde(default = "unknown")]
    pub det_sign: DetSign,
}

fn unknown() -> DetSign {
    DetSign::Unknown
}

/// Declared zeros of a nondegenerate vector field. Nondegeneracy is taken on trust.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroCensus {
    pub source: String,
    #[serde(default)]
    pub nonvanishing: bool,
    #[serde(default)]
    pub zeros: Vec<Zero>,
}

impl ZeroCensus {
    pub fn nonvanishing(source: impl Into<String>) -> Self {
        ZeroCensus {
            source: source.into(),
            nonvanishing: true,
            zeros: Vec::new(),
        }
    }

    /// `signs` uses `'+'`, `'-'` and `'?'`; labels are `p0, p1, …`.
    pub fn from_signs(source: impl Into<String>, signs: &str) -> Self {
        let zeros = signs
            .chars()
            .enumerate()
            .map(|(i, c)| Zero {
                label: format!("p{i}"),
                det_sign: match c {
                    '+' => DetSign::Plus,
                    '-' => DetSign::Minus,
                    _ => DetSign::Unknown,
                },
            })
            .collect();
        ZeroCensus {
            source: source.into(),
            nonvanishing: false,
            zeros,
        }
    }

    pub fn validate(&self) -> Result<(), CensusError> {
        if self.nonvanishing && !self.zeros.is_empty() {
            return Err(CensusError::NonvanishingWithZeros);
        }
        Ok(())
    }

    pub fn count(&self) -> usize {
        self.zeros.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingVerdict {
    pub outcome: Outcome,
    pub k: Z2,
    pub zero_count: usize,
    pub count_mod_2: Z2,
    pub manifold_dim: usize,
    /// Nondegeneracy of the listed zeros is asserted by the user, not checked.
    pub nondegeneracy: String,
    pub note: String,
}

pub fn counting_check(
    k: Z2,
    census: &ZeroCensus,
    manifold_dim: usize,
) -> Result<CountingVerdict, CensusError> {
    if manifold_dim % 2 == 1 {
        return Err(CensusError::OddDimension(manifold_dim));
    }
    census.validate()?;
    let count = census.count();
    let parity = Z2::from_count(count);
    let (outcome, note) = if manifold_dim % 4 == 0 {
        if parity == k {
            (
                Outcome::Pass,
                format!("k = {k} matches {count} zero(s) mod 2"),
            )
        } else {
            (
                Outcome::Fail,
                format!("k = {k} but {count} zero(s) is {parity} mod 2"),
            )
        }
    } else {
        let rel = if parity == k { "agrees" } else { "mismatch" };
        (
            Outcome::NotApplicable,
            format!("dim ≡ 2 mod 4: counting formula not applicable; k = {k} vs count mod 2 = {parity} ({rel})"),
        )
    };
    Ok(CountingVerdict {
        outcome,
        k,
        zero_count: count,
        count_mod_2: parity,
        manifold_dim,
        nondegeneracy: "asserted by user".into(),
        note,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerVerdict {
    pub outcome: Outcome,
    pub signed_count: i64,
    pub chi: i64,
}

/// Poincaré–Hopf: the signed zero count must equal `chi`.
pub fn euler_cross_check(census: &ZeroCensus, chi: i64) -> Result<EulerVerdict, CensusError> {
    census.validate()?;
    let missing = census
        .zeros
        .iter()
        .filter(|z| z.det_sign.value().is_none())
        .count();
    if missing > 0 {
        return Err(CensusError::MissingSigns(missing));
    }
    let signed: i64 = census.zeros.iter().filter_map(|z| z.det_sign.value()).sum();
    Ok(EulerVerdict {
        outcome: if signed == chi {
            Outcome::Pass
        } else {
            Outcome::Fail
        },
        signed_count: signed,
        chi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_examples() {
        let cp2 = ZeroCensus::from_signs("perfect Morse function", "+++");
        assert_eq!(
            counting_check(Z2::ONE, &cp2, 4).unwrap().outcome,
            Outcome::Pass
        );
        let s2s2 = ZeroCensus::from_signs("perfect Morse function", "++++");
        assert_eq!(
            counting_check(Z2::ZERO, &s2s2, 4).unwrap().outcome,
            Outcome::Pass
        );
        let t2 = ZeroCensus::from_signs("Morse function", "+--+");
        let v = counting_check(Z2::ONE, &t2, 2).unwrap();
        assert_eq!(v.outcome, Outcome::NotApplicable);
        assert!(v.note.contains("mismatch"));
        assert_eq!(
            counting_check(Z2::ONE, &ZeroCensus::from_signs("x", "++"), 4)
                .unwrap()
                .outcome,
            Outcome::Fail
        );
        assert_eq!(
            counting_check(Z2::ONE, &t2, 3),
            Err(CensusError::OddDimension(3))
        );
    }

    #[test]
    fn nonvanishing_counts_as_zero() {
        let nv = ZeroCensus::nonvanishing("translation field");
        assert_eq!(
            counting_check(Z2::ZERO, &nv, 4).unwrap().outcome,
            Outcome::Pass
        );
        assert_eq!(
            counting_check(Z2::ONE, &nv, 8).unwrap().outcome,
            Outcome::Fail
        );
        let mut bad = nv.clone();
        bad.zeros.push(Zero {
            label: "p".into(),
            det_sign: DetSign::Plus,
        });
        assert_eq!(
            counting_check(Z2::ZERO, &bad, 4),
            Err(CensusError::NonvanishingWithZeros)
        );
    }

    #[test]
    fn euler_examples() {
        let s2s2 = ZeroCensus::from_signs("perfect Morse function", "++++");
        assert_eq!(euler_cross_check(&s2s2, 4).unwrap().outcome, Outcome::Pass);
        assert_eq!(
            euler_cross_check(&ZeroCensus::nonvanishing("x"), 0)
                .unwrap()
                .outcome,
            Outcome::Pass
        );
        assert_eq!(
            euler_cross_check(&ZeroCensus::from_signs("x", "+-"), 0)
                .unwrap()
                .outcome,
            Outcome::Pass
        );
        assert_eq!(
            euler_cross_check(&ZeroCensus::from_signs("x", "+-"), 2)
                .unwrap()
                .outcome,
            Outcome::Fail
        );
        assert_eq!(
            euler_cross_check(&ZeroCensus::from_signs("x", "+?"), 0),
            Err(CensusError::MissingSigns(1))
        );
    }

    #[test]
    fn json_shape() {
        let text = r#"{"source":"s","nonvanishing":false,"zeros":[{"label":"p0","det_sign":"+"},{"label":"p1","det_sign":"unknown"}]}"#;
        let c: ZeroCensus = serde_json::from_str(text).unwrap();
        assert_eq!(c.zeros[1].det_sign, DetSign::Unknown);
        assert_eq!(serde_json::to_string(&c).unwrap(), text);
    }
}
