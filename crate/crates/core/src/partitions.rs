//! Convex partitions: validation, enumeration, exact coarseness and the
//! partitions constructed from one- and two-halfplane islands.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discrepancy::disc;
use crate::error::{Budget, Error, Result};
use crate::geom::{convex_hull, hulls_disjoint, ConvexPolygon, Point};
use crate::islands::{check_island, hull_certificate, members_inside, separability_number, Halfplane, Island};
use crate::point_set::{members_of, ColoredPointSet, Mask};

/// Partition of `S` into islands with pairwise disjoint hulls. Blocks are
/// sorted by member list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConvexPartition {
    pub blocks: Vec<Island>,
}

impl ConvexPartition {
    fn from_blocks(mut blocks: Vec<Island>) -> Self {
        blocks.retain(|b| !b.members.is_empty());
        blocks.sort_by(|a, b| a.members.cmp(&b.members));
        ConvexPartition { blocks }
    }

    fn from_masks(ps: &ColoredPointSet, masks: &[Mask]) -> Self {
        Self::from_blocks(
            masks
                .iter()
                .map(|&m| {
                    let members = members_of(m);
                    let certificate = hull_certificate(ps, &members);
                    Island { members, certificate }
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_members(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.members.clone()).collect()
    }
}

/// First violated convex-partition condition. Block numbers refer to the
/// order in which blocks were supplied.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum PartitionViolation {
    #[error("block {block} refers to index {index}, but there are only {n} points")]
    IndexOutOfRange { block: usize, index: usize, n: usize },
    #[error("block {block} is empty")]
    EmptyBlock { block: usize },
    #[error("index {index} appears in blocks {first} and {second}")]
    Overlap { index: usize, first: usize, second: usize },
    #[error("index {index} is not covered by any block")]
    Uncovered { index: usize },
    #[error("block {block} is not an island: point {intruder} lies in its hull")]
    NotAnIsland { block: usize, intruder: usize },
    #[error("hulls of blocks {first} and {second} intersect")]
    HullsIntersect { first: usize, second: usize },
}

fn hull_of(ps: &ColoredPointSet, members: &[usize]) -> ConvexPolygon {
    convex_hull(&members.iter().map(|&i| ps.point(i)).collect::<Vec<Point>>())
}

pub fn validate_partition(
    ps: &ColoredPointSet,
    blocks: &[Vec<usize>],
) -> std::result::Result<ConvexPartition, PartitionViolation> {
    let n = ps.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (b, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(PartitionViolation::EmptyBlock { block: b });
        }
        for &index in block {
            if index >= n {
                return Err(PartitionViolation::IndexOutOfRange { block: b, index, n });
            }
            if let Some(first) = owner[index] {
                return Err(PartitionViolation::Overlap { index, first, second: b });
            }
            owner[index] = Some(b);
        }
    }
    if let Some(index) = owner.iter().position(Option::is_none) {
        return Err(PartitionViolation::Uncovered { index });
    }
    let mut sorted: Vec<Vec<usize>> = blocks.to_vec();
    for (b, block) in sorted.iter_mut().enumerate() {
        block.sort_unstable();
        if let Err(Error::NotAnIsland { intruder }) = check_island(ps, block) {
            return Err(PartitionViolation::NotAnIsland { block: b, intruder });
        }
    }
    let hulls: Vec<ConvexPolygon> = sorted.iter().map(|b| hull_of(ps, b)).collect();
    for first in 0..hulls.len() {
        for second in first + 1..hulls.len() {
            if !hulls_disjoint(&hulls[first], &hulls[second]) {
                return Err(PartitionViolation::HullsIntersect { first, second });
            }
        }
    }
    Ok(ConvexPartition::from_blocks(
        sorted
            .into_iter()
            .map(|members| {
                let certificate = hull_certificate(ps, &members);
                Island { members, certificate }
            })
            .collect(),
    ))
}

/// Smallest block discrepancy.
pub fn partition_disc(ps: &ColoredPointSet, pi: &ConvexPartition) -> u32 {
    pi.blocks.iter().map(|b| disc(ps, &b.members)).min().unwrap_or(0)
}

/// Size guard for exhaustive partition enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionLimit {
    pub max_points: usize,
}

impl PartitionLimit {
    pub const DEFAULT_POINTS: usize = 10;
    /// Configured limits above this are refused.
    pub const HARD_POINTS: usize = 12;
}

impl Default for PartitionLimit {
    fn default() -> Self {
        PartitionLimit { max_points: Self::DEFAULT_POINTS }
    }
}

/// Bell number `B(n)`, the count of set partitions of `n` items.
fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &b in &row {
            next.push(next.last().unwrap() + b);
        }
        row = next;
    }
    row[0]
}

fn check_limit(ps: &ColoredPointSet, limit: &PartitionLimit) -> Result<()> {
    let cap = limit.max_points.min(PartitionLimit::HARD_POINTS);
    if ps.len() > cap {
        return Err(Error::BudgetExceeded { estimated: bell(ps.len()), budget: bell(cap) });
    }
    Ok(())
}

struct PartitionWalk<'a> {
    ps: &'a ColoredPointSet,
    blocks: Vec<Mask>,
    hulls: Vec<ConvexPolygon>,
}

impl PartitionWalk<'_> {
    fn hull_of_mask(&self, m: Mask) -> ConvexPolygon {
        hull_of(self.ps, &members_of(m))
    }

    fn disjoint_from_others(&self, hull: &ConvexPolygon, skip: Option<usize>) -> bool {
        self.hulls.iter().enumerate().all(|(b, h)| Some(b) == skip || hulls_disjoint(h, hull))
    }

    /// Points are assigned in index order; a point joins an existing block or
    /// opens a new one (restricted growth). Hulls only grow, so any
    /// intersection prunes the whole subtree.
    fn walk(&mut self, i: usize, visit: &mut dyn FnMut(&[Mask])) {
        if i == self.ps.len() {
            visit(&self.blocks);
            return;
        }
        for b in 0..self.blocks.len() {
            let grown = self.blocks[b] | (1 << i);
            let hull = self.hull_of_mask(grown);
            if self.disjoint_from_others(&hull, Some(b)) {
                let old_mask = std::mem::replace(&mut self.blocks[b], grown);
                let old_hull = std::mem::replace(&mut self.hulls[b], hull);
                self.walk(i + 1, visit);
                self.blocks[b] = old_mask;
                self.hulls[b] = old_hull;
            }
        }
        let single = self.hull_of_mask(1 << i);
        if self.disjoint_from_others(&single, None) {
            self.blocks.push(1 << i);
            self.hulls.push(single);
            self.walk(i + 1, visit);
            self.blocks.pop();
            self.hulls.pop();
        }
    }
}

/// Calls `visit` once per convex partition, blocks as masks ordered by their
/// smallest member. Returns the number of partitions visited.
pub fn for_each_convex_partition(
    ps: &ColoredPointSet,
    limit: &PartitionLimit,
    mut visit: impl FnMut(&[Mask]),
) -> Result<u64> {
    check_limit(ps, limit)?;
    let mut count = 0u64;
    let mut walk = PartitionWalk { ps, blocks: Vec::new(), hulls: Vec::new() };
    walk.walk(0, &mut |blocks| {
        count += 1;
        visit(blocks)
    });
    Ok(count)
}

pub fn enumerate_convex_partitions(ps: &ColoredPointSet, limit: &PartitionLimit) -> Result<Vec<ConvexPartition>> {
    let mut out = Vec::new();
    for_each_convex_partition(ps, limit, |blocks| out.push(ConvexPartition::from_masks(ps, blocks)))?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoarsenessResult {
    pub value: u32,
    pub witness: ConvexPartition,
    pub partitions_examined: u64,
}

/// Maximum partition discrepancy over all convex partitions. Among maximizers
/// the witness has the fewest blocks, then the smallest block lists.
pub fn exact_coarseness(ps: &ColoredPointSet, limit: &PartitionLimit) -> Result<CoarsenessResult> {
    let red: Mask = (0..ps.len()).filter(|&i| ps.color(i).sign() > 0).fold(0, |m, i| m | (1 << i));
    let block_disc = |m: Mask| (2 * (m & red).count_ones() as i32 - m.count_ones() as i32).unsigned_abs();
    let mut best: Option<(u32, Vec<Vec<usize>>)> = None;
    let examined = for_each_convex_partition(ps, limit, |blocks| {
        let value = blocks.iter().map(|&m| block_disc(m)).min().unwrap_or(0);
        let better = match &best {
            None => true,
            Some((v, b)) => {
                value > *v || (value == *v && (blocks.len() < b.len() || (blocks.len() == b.len() && {
                    let lists: Vec<Vec<usize>> = blocks.iter().map(|&m| members_of(m)).collect();
                    lists < *b
                })))
            }
        };
        if better {
            best = Some((value, blocks.iter().map(|&m| members_of(m)).collect()));
        }
    })?;
    let (value, lists) = best.unwrap_or((0, Vec::new()));
    let masks: Vec<Mask> = lists.iter().map(|l| crate::point_set::mask_of(l)).collect();
    Ok(CoarsenessResult { value, witness: ConvexPartition::from_masks(ps, &masks), partitions_examined: examined })
}

/// Partition built from an island, with the discrepancy it is guaranteed to
/// reach.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructedPartition {
    pub partition: ConvexPartition,
    pub disc: u32,
    pub bound: Ratio<i64>,
}

/// `S ∖ I` can be cut off from `I` by a line.
pub fn is_one_separable(ps: &ColoredPointSet, members: &[usize]) -> bool {
    if members.is_empty() || members.len() == ps.len() {
        return true;
    }
    let mut inside = vec![false; ps.len()];
    members.iter().for_each(|&i| inside[i] = true);
    let rest: Vec<usize> = (0..ps.len()).filter(|&i| !inside[i]).collect();
    hulls_disjoint(&hull_of(ps, members), &hull_of(ps, &rest))
}

fn whole(ps: &ColoredPointSet) -> ConvexPartition {
    ConvexPartition::from_blocks(vec![Island { members: (0..ps.len()).collect(), certificate: vec![Halfplane::everything()] }])
}

fn region(ps: &ColoredPointSet, hs: Vec<Halfplane>) -> Island {
    Island { members: members_inside(ps, &hs), certificate: hs }
}

/// Better of the candidates by partition discrepancy; earlier wins ties.
fn best_of(ps: &ColoredPointSet, candidates: Vec<ConvexPartition>) -> (ConvexPartition, u32) {
    let mut best: Option<(ConvexPartition, u32)> = None;
    for pi in candidates {
        let d = partition_disc(ps, &pi);
        if best.as_ref().is_none_or(|b| d > b.1) {
            best = Some((pi, d));
        }
    }
    best.expect("at least one candidate")
}

fn split_by(ps: &ColoredPointSet, island: &Island) -> Option<ConvexPartition> {
    if island.members.is_empty() || island.members.len() == ps.len() {
        return None;
    }
    if let [h] = island.certificate[..] {
        return Some(ConvexPartition::from_blocks(vec![region(ps, vec![h]), region(ps, vec![h.complement()])]));
    }
    let mut inside = vec![false; ps.len()];
    island.members.iter().for_each(|&i| inside[i] = true);
    let rest: Vec<usize> = (0..ps.len()).filter(|&i| !inside[i]).collect();
    Some(ConvexPartition::from_blocks(vec![
        Island { members: island.members.clone(), certificate: hull_certificate(ps, &island.members) },
        Island { certificate: hull_certificate(ps, &rest), members: rest },
    ]))
}

/// For `I ∈ I_1` with `t = disc(I)`: the better of `{S}` and `{I, S ∖ I}`,
/// which reaches at least `max{t/2, t - |r - b|}`.
pub fn partition_from_1sep(ps: &ColoredPointSet, island: &Island) -> Result<ConstructedPartition> {
    let one_cert = island.certificate.len() == 1 && island.certificate_matches(ps);
    if !one_cert && !is_one_separable(ps, &island.members) {
        return Err(Error::InvalidArgument("island is not 1-separable".into()));
    }
    let t = disc(ps, &island.members) as i64;
    let imbalance = ps.imbalance() as i64;
    let bound = Ratio::new(t, 2).max(Ratio::from_integer(t - imbalance));
    let mut candidates = vec![whole(ps)];
    candidates.extend(split_by(ps, island));
    let (partition, disc) = best_of(ps, candidates);
    Ok(ConstructedPartition { partition, disc, bound })
}

/// For `I = S ∩ H_1 ∩ H_2` with `t = disc(I)`, follows the case analysis on
/// `I' = S ∩ H̄_1 ∩ H_2`, `I'' = S ∩ H_1 ∩ H̄_2`, `I''' = S ∩ H̄_1 ∩ H̄_2` and
/// reaches at least `max{t/8, t/4 - |r - b|}`. The trivial partition `{S}` is
/// also considered and returned when it is better.
pub fn partition_from_2sep(ps: &ColoredPointSet, island: &Island) -> Result<ConstructedPartition> {
    if !island.certificate_matches(ps) {
        return Err(Error::InvalidArgument("certificate does not reproduce the island".into()));
    }
    if island.certificate.len() == 1 || is_one_separable(ps, &island.members) {
        return partition_from_1sep(ps, island);
    }
    let [h1, h2] = island.certificate[..] else {
        return Err(Error::InvalidArgument("expected a certificate of two halfplanes".into()));
    };
    let t = disc(ps, &island.members) as i64;
    let imbalance = ps.imbalance() as i64;
    let bound = Ratio::new(t, 8).max(Ratio::new(t, 4) - imbalance);

    let (c1, c2) = (h1.complement(), h2.complement());
    let i1 = region(ps, vec![c1, h2]);
    let i2 = region(ps, vec![h1, c2]);
    let i3 = region(ps, vec![c1, c2]);
    let d = |isl: &Island| disc(ps, &isl.members) as i64;
    let from_halfplane = |h: Halfplane| -> Result<ConvexPartition> {
        Ok(partition_from_1sep(ps, &region(ps, vec![h]))?.partition)
    };

    let constructed = if 2 * d(&i1) <= t {
        from_halfplane(h2)?
    } else if 2 * d(&i2) <= t {
        from_halfplane(h1)?
    } else if 4 * d(&i3) >= t {
        ConvexPartition::from_blocks(vec![island.clone(), i1, i2, i3])
    } else {
        from_halfplane(c1)?
    };
    let (partition, disc) = best_of(ps, vec![constructed, whole(ps)]);
    Ok(ConstructedPartition { partition, disc, bound })
}

/// First block whose separability number is at most 5, with that number.
pub fn find_5sep_block(ps: &ColoredPointSet, pi: &ConvexPartition, budget: &Budget) -> Result<(usize, usize)> {
    for (i, block) in pi.blocks.iter().enumerate() {
        if let Some(sep) = separability_number(ps, &block.members, 5, budget)? {
            return Ok((i, sep.halfplanes));
        }
    }
    Err(Error::NotFound { k_max: 5 })
}
