//! The JSON instance file: a root system plus named cones and group actions.
//!
//! ```json
//! {
//!   "rank": 2,
//!   "roots": [{ "E": [1, 0], "ell": [-2, 1], "label": "a" }],
//!   "cones": { "quadrant": { "rays": [[1, 0], [0, 1]] } },
//!   "actions": { "flip": { "generators": [[[0, 1], [1, 0]]], "cone": "quadrant" } }
//! }
//! ```
//!
//! Lattice data is integers only. Numbers outside the `i64` range may be
//! written as decimal strings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use weylcone::looijenga::ConeAction;
use weylcone::weyl::{fundamental_chamber, reflections, tits_hull};
use weylcone::{Cone, IntMatrix, IntVec, RationalCovector, RationalVector, Root, RootSystem};

use crate::CliError;

/// An arbitrary-precision integer read from a JSON number or string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct IntVisitor;
        impl Visitor<'_> for IntVisitor {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                BigInt::from_str(v.trim()).map(Int).map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(IntVisitor)
    }
}

fn ints(v: &[Int]) -> IntVec {
    v.iter().map(|i| i.0.clone()).collect()
}

fn wrap(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootSpec {
    #[serde(rename = "E")]
    pub e: Vec<Int>,
    pub ell: Vec<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
pub enum ConeSpec {
    Rays(Vec<Vec<Int>>),
    Facets(Vec<Vec<Int>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub generators: Vec<Vec<Vec<Int>>>,
    pub cone: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub rank: usize,
    pub roots: Vec<RootSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cones: BTreeMap<String, ConeSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, ActionSpec>,
}

/// Names every instance provides unless the file defines them itself.
pub const CHAMBER: &str = "chamber";
pub const TITS1: &str = "tits1";
pub const WEYL: &str = "weyl";

impl Instance {
    /// Parses and shape-checks a file. Labels default to `r1, r2, ...`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut inst: Instance = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        inst.check_shape()?;
        for (i, r) in inst.roots.iter_mut().enumerate() {
            r.label.get_or_insert_with(|| format!("r{}", i + 1));
        }
        Ok(inst)
    }

    pub fn from_root_system(rs: &RootSystem) -> Result<Self, CliError> {
        let roots = rs
            .roots()
            .iter()
            .map(|r| match (r.e.to_ints(), r.ell.to_ints()) {
                (Some(e), Some(l)) => Ok(RootSpec { e: wrap(&e), ell: wrap(&l), label: Some(r.label.clone()) }),
                _ => Err(CliError::Invalid(format!("root {} is not integral", r.label))),
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { rank: rs.rank(), roots, cones: BTreeMap::new(), actions: BTreeMap::new() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances serialize")
    }

    /// SHA-256 of the normalized serialization.
    pub fn digest(&self) -> String {
        Sha256::digest(self.to_json().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    fn check_shape(&self) -> Result<(), CliError> {
        let n = self.rank;
        let bad = |what: String, len: usize| CliError::Parse(format!("{what} has length {len}, expected {n}"));
        if n == 0 {
            return Err(CliError::Parse("rank must be positive".into()));
        }
        for (i, r) in self.roots.iter().enumerate() {
            if r.e.len() != n {
                return Err(bad(format!("E of root {}", i + 1), r.e.len()));
            }
            if r.ell.len() != n {
                return Err(bad(format!("ell of root {}", i + 1), r.ell.len()));
            }
        }
        for (name, c) in &self.cones {
            let (ConeSpec::Rays(v) | ConeSpec::Facets(v)) = c;
            if let Some(x) = v.iter().find(|x| x.len() != n) {
                return Err(bad(format!("a vector of cone {name:?}"), x.len()));
            }
        }
        for (name, a) in &self.actions {
            for (k, g) in a.generators.iter().enumerate() {
                if g.len() != n {
                    return Err(bad(format!("generator {} of action {name:?}", k + 1), g.len()));
                }
                if let Some(row) = g.iter().find(|row| row.len() != n) {
                    return Err(bad(format!("a row of generator {} of action {name:?}", k + 1), row.len()));
                }
            }
        }
        Ok(())
    }

    pub fn root_system(&self) -> Result<RootSystem, CliError> {
        let roots = self
            .roots
            .iter()
            .enumerate()
            .map(|(i, r)| {
                Root::new(
                    RationalVector::from_ints(&ints(&r.e)),
                    RationalCovector::from_ints(&ints(&r.ell)),
                    r.label.clone().unwrap_or_else(|| format!("r{}", i + 1)),
                )
            })
            .collect();
        Ok(RootSystem::new(self.rank, roots)?)
    }

    /// A named cone; `chamber` and `tits1` (hull of the depth-1 chamber
    /// translates) exist unless overridden.
    pub fn cone(&self, name: &str) -> Result<Cone, CliError> {
        if let Some(spec) = self.cones.get(name) {
            return Ok(match spec {
                ConeSpec::Rays(v) => Cone::from_int_rays(self.rank, v.iter().map(|x| ints(x)).collect())?,
                ConeSpec::Facets(v) => Cone::from_int_facets(self.rank, v.iter().map(|x| ints(x)).collect())?,
            });
        }
        match name {
            CHAMBER => {
                let rs = self.valid_root_system()?;
                Ok(fundamental_chamber(&rs)?.into_cone())
            }
            TITS1 => Ok(tits_hull(&self.valid_root_system()?, 1)?),
            _ => Err(CliError::Invalid(format!("unknown cone {name:?}"))),
        }
    }

    /// A named action; `weyl` (the reflections acting on `tits1`) exists
    /// unless overridden.
    pub fn action(&self, name: &str) -> Result<ConeAction, CliError> {
        if let Some(spec) = self.actions.get(name) {
            let gens = spec
                .generators
                .iter()
                .map(|g| IntMatrix::from_rows(g.iter().map(|row| ints(row)).collect()))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(ConeAction::new(self.cone(&spec.cone)?, gens)?);
        }
        if name == WEYL {
            let rs = self.valid_root_system()?;
            return Ok(ConeAction::new(self.cone(TITS1)?, reflections(&rs)?)?);
        }
        Err(CliError::Invalid(format!("unknown action {name:?}")))
    }

    pub fn valid_root_system(&self) -> Result<RootSystem, CliError> {
        let rs = self.root_system()?;
        rs.ensure_valid()?;
        Ok(rs)
    }
}
