//! JSON forms of fans and divisors.
//!
//! ```text
//! Fan:     { "rank": int, "rays": [[int]], "max_cones": [[int]] }
//! Divisor: { "coeffs": [int] }
//! ```
//!
//! Integers are JSON numbers when they fit in an `i64` and decimal strings
//! otherwise. Both forms are accepted on input.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{Fan, ToricError};
use crate::lattice::LatticeVector;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(x: &BigInt) -> Self {
        i64::try_from(x).map_or_else(|_| JsonInt::Big(x.to_string()), JsonInt::Small)
    }
}

impl TryFrom<JsonInt> for BigInt {
    type Error = String;

    fn try_from(x: JsonInt) -> Result<Self, String> {
        match x {
            JsonInt::Small(v) => Ok(BigInt::from(v)),
            JsonInt::Big(s) => s.trim().parse().map_err(|_| format!("not an integer: {s:?}")),
        }
    }
}

pub(crate) mod bigint_vec {
    use super::*;
    use serde::{de::Error, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(JsonInt::from).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<JsonInt>::deserialize(d)?
            .into_iter()
            .map(|x| BigInt::try_from(x).map_err(D::Error::custom))
            .collect()
    }
}

pub(crate) mod bigint_matrix {
    use super::*;
    use serde::{de::Error, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| r.iter().map(JsonInt::from).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<JsonInt>>::deserialize(d)?
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| BigInt::try_from(x).map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct FanJson {
    rank: usize,
    #[serde(with = "bigint_matrix")]
    rays: Vec<LatticeVector>,
    max_cones: Vec<Vec<usize>>,
}

impl Serialize for Fan {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FanJson {
            rank: self.rank(),
            rays: self.rays().to_vec(),
            max_cones: self.max_cones().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Fan {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = FanJson::deserialize(d)?;
        Fan::new(raw.rank, raw.rays, raw.max_cones).map_err(serde::de::Error::custom)
    }
}

impl Fan {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("fan serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, ToricError> {
        serde_json::from_str(s).map_err(|e| ToricError::Json(e.to_string()))
    }
}
