//! JSON result documents written by every subcommand.

use coarseness::{Halfplane, PartitionViolation};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub numerator: i64,
    pub denominator: i64,
}

impl From<Ratio<i64>> for Fraction {
    fn from(r: Ratio<i64>) -> Self {
        Fraction { numerator: *r.numer(), denominator: *r.denom() }
    }
}

impl From<Fraction> for Ratio<i64> {
    fn from(f: Fraction) -> Self {
        Ratio::new(f.numerator, f.denominator)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DkValue {
    pub k: usize,
    pub value: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShatterRecord {
    pub k: usize,
    pub m: usize,
    pub classes: usize,
    /// `4km`
    pub convex_bound: usize,
    /// `(k^2 + 4k) m^2`
    pub general_bound: usize,
    pub convex_position: bool,
}

/// Fields a command does not compute are left out of the JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub command: String,
    pub n: usize,
    pub r: usize,
    pub b: usize,
    pub disc: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d1: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dk: Option<DkValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<Fraction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coarseness: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partitions_examined: Option<u64>,
    /// Partition blocks as indices into the input order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_disc: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_island: Option<Vec<usize>>,
    /// Halfplanes `a x + b y + c > 0` (or `>= 0` when closed) cutting out
    /// `witness_island`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<Halfplane>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valid: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<PartitionViolation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shatter: Option<ShatterRecord>,
    /// One `R`/`B` letter per point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<String>,
    pub timing_ms: u64,
}

impl ReportRecord {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
