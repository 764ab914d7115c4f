//! JSON encoding for multivectors and root sets.
//!
//! Schema `cl2/1`:
//!
//! ```json
//! {"s": 1, "e1": 0, "e2": 0, "e3": -1}
//! {"kind": "empty"}
//! {"kind": "finite", "roots": [ <multivector>, ... ]}
//! {"kind": "circular_family", "scale": 1, "angles": [0, 3.141592653589793]}
//! {"kind": "hyperbolic_unit_family", "scale": 1}
//! {"kind": "null_cone"}
//! ```
//!
//! Numbers are written in the shortest form that parses back to the same
//! double; integral values print without a fractional part.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::error::Error;
use crate::multivector::Multivector;
use crate::transcend::RootSet;

pub const SCHEMA_VERSION: &str = "cl2/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot decode JSON: {0}")]
pub struct DecodeError(pub String);

/// 2^53: every integer below this magnitude is exact in a double.
const EXACT_INT: f64 = 9_007_199_254_740_992.0;

fn number<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.fract() == 0.0 && x.abs() < EXACT_INT {
        s.serialize_i64(*x as i64)
    } else {
        s.serialize_f64(*x)
    }
}

fn numbers<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct Num(f64);
    impl Serialize for Num {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            number(&self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&Num(*x))?;
    }
    seq.end()
}

#[derive(Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, f64>")]
pub(crate) struct MultivectorRepr {
    #[serde(serialize_with = "number")]
    s: f64,
    #[serde(serialize_with = "number")]
    e1: f64,
    #[serde(serialize_with = "number")]
    e2: f64,
    #[serde(serialize_with = "number")]
    e3: f64,
}

/// Objects only; serde would otherwise also accept a 4-element array.
impl TryFrom<BTreeMap<String, f64>> for MultivectorRepr {
    type Error = String;
    fn try_from(mut m: BTreeMap<String, f64>) -> Result<Self, String> {
        let mut take = |k: &str| m.remove(k).ok_or_else(|| format!("missing field `{k}`"));
        let r = Self {
            s: take("s")?,
            e1: take("e1")?,
            e2: take("e2")?,
            e3: take("e3")?,
        };
        match m.keys().next() {
            Some(k) => Err(format!("unknown field `{k}`")),
            None => Ok(r),
        }
    }
}

impl From<Multivector> for MultivectorRepr {
    fn from(m: Multivector) -> Self {
        let [s, e1, e2, e3] = m.coeffs();
        Self { s, e1, e2, e3 }
    }
}

impl TryFrom<MultivectorRepr> for Multivector {
    type Error = Error;
    fn try_from(r: MultivectorRepr) -> Result<Self, Error> {
        Multivector::new(r.s, r.e1, r.e2, r.e3)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub(crate) enum RootSetRepr {
    // braces so that deny_unknown_fields applies
    Empty {},
    Finite {
        roots: Vec<Multivector>,
    },
    CircularFamily {
        #[serde(serialize_with = "number")]
        scale: f64,
        #[serde(serialize_with = "numbers")]
        angles: Vec<f64>,
    },
    HyperbolicUnitFamily {
        #[serde(serialize_with = "number")]
        scale: f64,
    },
    NullCone {},
}

impl From<RootSet> for RootSetRepr {
    fn from(r: RootSet) -> Self {
        match r {
            RootSet::Empty => RootSetRepr::Empty {},
            RootSet::Finite(roots) => RootSetRepr::Finite { roots },
            RootSet::CircularFamily { scale, angles } => RootSetRepr::CircularFamily { scale, angles },
            RootSet::HyperbolicUnitFamily { scale } => RootSetRepr::HyperbolicUnitFamily { scale },
            RootSet::NullCone => RootSetRepr::NullCone {},
        }
    }
}

#[derive(Debug, Error)]
pub(crate) enum ReprError {
    #[error("family scale must be positive and finite, got {0}")]
    Scale(f64),
    #[error("angle {0} is not finite")]
    Angle(f64),
}

impl TryFrom<RootSetRepr> for RootSet {
    type Error = ReprError;
    fn try_from(r: RootSetRepr) -> Result<Self, ReprError> {
        let check_scale = |s: f64| {
            if s.is_finite() && s > 0.0 {
                Ok(s)
            } else {
                Err(ReprError::Scale(s))
            }
        };
        Ok(match r {
            RootSetRepr::Empty {} => RootSet::Empty,
            RootSetRepr::Finite { roots } => RootSet::Finite(roots),
            RootSetRepr::CircularFamily { scale, angles } => {
                if let Some(bad) = angles.iter().find(|a| !a.is_finite()) {
                    return Err(ReprError::Angle(*bad));
                }
                RootSet::CircularFamily {
                    scale: check_scale(scale)?,
                    angles,
                }
            }
            RootSetRepr::HyperbolicUnitFamily { scale } => RootSet::HyperbolicUnitFamily {
                scale: check_scale(scale)?,
            },
            RootSetRepr::NullCone {} => RootSet::NullCone,
        })
    }
}

/// Compact JSON text for any value of the `cl2/1` schema.
pub fn encode<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("cl2 values always serialize")
}

/// Parses JSON produced by [`encode`], rejecting unknown or missing keys and
/// non-finite numbers.
pub fn decode<T: DeserializeOwned>(text: &str) -> Result<T, DecodeError> {
    serde_json::from_str(text).map_err(|e| DecodeError(e.to_string()))
}
