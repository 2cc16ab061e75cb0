//! Certified coarseness bounds from the maximum-discrepancy wedge.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::discrepancy::{max_disc_wedge_indexed, AngularIndex};
use crate::error::Result;
use crate::islands::Island;
use crate::partitions::{partition_from_2sep, ConvexPartition};
use crate::point_set::ColoredPointSet;

/// `lower <= witness_disc <= C(S) <= upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoarsenessBounds {
    pub d2: u32,
    /// `|r - b|`.
    pub imbalance: u32,
    /// `max{d2/8, d2/4 - |r - b|}`.
    pub lower: Ratio<i64>,
    /// `16 d2`.
    pub upper: u64,
    /// Island attaining `d2`.
    pub d2_witness: Island,
    pub witness: ConvexPartition,
    pub witness_disc: u32,
}

/// Lower bound on the coarseness guaranteed by a 2-separable island of
/// discrepancy `d2`.
pub fn wedge_lower_bound(d2: u32, imbalance: u32) -> Ratio<i64> {
    let d2 = d2 as i64;
    Ratio::new(d2, 8).max(Ratio::new(d2, 4) - imbalance as i64)
}

/// Every 5-separable island has discrepancy at most `16 D_2`.
pub fn wedge_upper_bound(d2: u32) -> u64 {
    16 * d2 as u64
}

/// Worst case of the reported lower bound relative to the true coarseness:
/// `max{C/128, C/64 - |r - b|}`.
pub fn approximation_floor(coarseness: u32, imbalance: u32) -> Ratio<i64> {
    let c = coarseness as i64;
    Ratio::new(c, 128).max(Ratio::new(c, 64) - imbalance as i64)
}

pub fn approximate_coarseness(ps: &ColoredPointSet) -> Result<CoarsenessBounds> {
    let index = AngularIndex::new(ps.points());
    approximate_coarseness_indexed(ps, &index)
}

pub fn approximate_coarseness_indexed(ps: &ColoredPointSet, index: &AngularIndex) -> Result<CoarsenessBounds> {
    let best = max_disc_wedge_indexed(ps, index);
    let imbalance = ps.imbalance() as u32;
    let built = partition_from_2sep(ps, &best.witness)?;
    Ok(CoarsenessBounds {
        d2: best.value,
        imbalance,
        lower: wedge_lower_bound(best.value, imbalance),
        upper: wedge_upper_bound(best.value),
        d2_witness: best.witness,
        witness: built.partition,
        witness_disc: built.disc,
    })
}
