//! On-disk layout of `hms.json`.
//!
//! Rationals are strings (`"-3/10"`). Univariate polynomials are dense
//! ascending coefficient lists. Bivariate polynomials are `[i, j, "c"]`
//! triples for `c r^i s^j`; trivariate family coefficients are
//! `[i, j, k, "c"]` for `c g^i h^j t^k`.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

pub type RawTerms = Vec<(u32, u32, String)>;
pub type RawMTerms = Vec<(u32, u32, u32, String)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDb {
    pub schema: u32,
    pub records: Vec<RawRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRecord {
    #[serde(rename = "D")]
    pub d: i64,
    pub coords: [String; 2],
    pub cover: RawCover,
    /// Positive content of the printed cover; the printed surface is
    /// `z^2 = twist * cover`.
    pub twist: String,
    pub branch_components: Vec<RawBranch>,
    pub points: Vec<RawPoint>,
    pub surface_kind: RawKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ic_map: Option<RawIcMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist_candidates: Option<RawTwistCandidates>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k3_family: Option<RawK3Family>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fibrations: Vec<RawFibration>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<RawLattice>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub heights: Vec<RawHeight>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCover {
    pub terms: RawTerms,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBranch {
    pub factor: RawTerms,
    pub meaning: String,
    pub parametrizations: Vec<RawParam>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRatFun {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawParam {
    pub var: String,
    pub x: RawRatFun,
    pub y: RawRatFun,
    /// Worked out from the factor rather than printed.
    pub derived: bool,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPoint {
    pub coords: [String; 2],
    pub sextic: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disputed: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawKind {
    pub kind: String,
    pub picard: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawIcMap {
    #[serde(rename = "I2")]
    pub i2: RawTerms,
    #[serde(rename = "I4")]
    pub i4: RawTerms,
    #[serde(rename = "I6")]
    pub i6: RawTerms,
    #[serde(rename = "I10")]
    pub i10: RawTerms,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTwistCandidates {
    pub factors: Vec<RawTerms>,
    pub labels: Vec<String>,
    #[serde(rename = "extra_II")]
    pub extra_ii: Vec<usize>,
    #[serde(rename = "expected_C")]
    pub expected_c: i64,
    pub expected_subset: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawK3Family {
    pub vars: Vec<String>,
    pub a1: RawMTerms,
    pub a2: RawMTerms,
    pub a3: RawMTerms,
    pub a4: RawMTerms,
    pub a6: RawMTerms,
    pub section: RawFamilySection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFamilySection {
    pub x_num: RawMTerms,
    pub x_den: RawMTerms,
    pub y_num: RawMTerms,
    pub y_den: RawMTerms,
    pub height: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFibration {
    pub name: String,
    pub base: String,
    /// a1, a2, a3, a4, a6.
    pub a: [Vec<String>; 5],
    pub expected_fibers: Vec<RawExpectedFiber>,
    pub chi: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawExpectedFiber {
    /// `None` is the place at infinity.
    pub place: Option<Vec<String>>,
    #[serde(rename = "type")]
    pub fiber_type: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLattice {
    pub fibers: Vec<String>,
    pub height_matrix: Vec<Vec<String>>,
    pub torsion: u32,
    pub ns_disc: i64,
    pub sign: i8,
    pub model: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawHeight {
    pub value: String,
    pub chi: u32,
    pub po: u32,
    pub components: Vec<RawComponent>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComponent {
    pub fiber: String,
    pub component: usize,
}
