//! Discrepancy of subsets and maximum-discrepancy k-separable islands.
//!
//! `D_1` is computed by a rotational sweep around every point. `D_2` uses the
//! same angular orders: an outer sweep enumerates every halfplane-induced
//! subset `T` of `S`, and one max/min segment tree per inner pivot keeps the
//! weight of `T ∩ H` for every combinatorially distinct halfplane `H` through
//! that pivot.

use std::cmp::Ordering;
use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Budget, Result};
use crate::geom::Point;
use crate::islands::{enumerate_islands, members_inside, Halfplane, Island};
use crate::point_set::ColoredPointSet;

pub fn signed_weight(ps: &ColoredPointSet, members: &[usize]) -> i64 {
    members.iter().map(|&i| ps.color(i).sign() as i64).sum()
}

/// `|#red - #blue|` over `members`.
pub fn disc(ps: &ColoredPointSet, members: &[usize]) -> u32 {
    signed_weight(ps, members).unsigned_abs() as u32
}

/// A maximum-discrepancy island and its value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxDiscResult {
    pub value: u32,
    pub witness: Island,
}

impl MaxDiscResult {
    fn from_certificate(ps: &ColoredPointSet, value: u32, certificate: Vec<Halfplane>) -> Self {
        let members = members_inside(ps, &certificate);
        debug_assert_eq!(disc(ps, &members), value);
        MaxDiscResult { value, witness: Island { members, certificate } }
    }
}

#[derive(Clone, Copy, Debug)]
struct Event {
    point: u32,
    enter: bool,
}

fn half(d: (i64, i64)) -> u8 {
    if d.1 > 0 || (d.1 == 0 && d.0 > 0) {
        0
    } else {
        1
    }
}

fn cmp_angle(a: (i64, i64), b: (i64, i64)) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&(a.0 * b.1 - a.1 * b.0)))
}

/// Per-pivot angular order of the critical directions `±(s - r)`.
///
/// For pivot `r` the `m = 2(n-1)` critical directions split the circle into
/// `m` open arcs; arc `c` lies between critical directions `c` and `c + 1`.
/// For a direction `θ` in an arc, the open halfplane left of the line through
/// `r` with direction `θ` contains `s` iff the arc lies in `[enter_s, exit_s)`
/// (circularly), where `enter_s` is the position of `-(s - r)` and `exit_s`
/// the position of `s - r`.
///
/// The index depends only on geometry and is reused across recolorings.
#[derive(Clone, Debug)]
pub struct AngularIndex {
    points: Vec<Point>,
    arcs: usize,
    events: Vec<Event>,
    /// `(enter_s, exit_s)` around pivot `r`, stored at `s * n + r` so that
    /// one point's ranges over all pivots are contiguous.
    ranges: Vec<(u32, u32)>,
    /// Points inside arc 0 of each pivot, pivot-major, with offsets.
    first_arc: Vec<u32>,
    first_arc_start: Vec<usize>,
}

impl AngularIndex {
    pub fn new(points: &[Point]) -> Self {
        let n = points.len();
        let m = 2 * n.saturating_sub(1);
        let mut events = Vec::with_capacity(n * m);
        let mut ranges = vec![(u32::MAX, u32::MAX); n * n];
        let mut dirs: Vec<((i64, i64), Event)> = Vec::with_capacity(m);
        for (r, &pr) in points.iter().enumerate() {
            dirs.clear();
            for (s, &q) in points.iter().enumerate() {
                if s == r {
                    continue;
                }
                let d = (q.x - pr.x, q.y - pr.y);
                dirs.push(((-d.0, -d.1), Event { point: s as u32, enter: true }));
                dirs.push((d, Event { point: s as u32, enter: false }));
            }
            dirs.sort_unstable_by(|a, b| cmp_angle(a.0, b.0));
            for (pos, &(_, ev)) in dirs.iter().enumerate() {
                let slot = ev.point as usize * n + r;
                if ev.enter {
                    ranges[slot].0 = pos as u32;
                } else {
                    ranges[slot].1 = pos as u32;
                }
                events.push(ev);
            }
        }
        let mut index = AngularIndex {
            points: points.to_vec(),
            arcs: m,
            events,
            ranges,
            first_arc: Vec::new(),
            first_arc_start: vec![0],
        };
        for r in 0..n {
            for s in 0..n {
                if s != r && index.inside_first_arc(r, s) {
                    index.first_arc.push(s as u32);
                }
            }
            index.first_arc_start.push(index.first_arc.len());
        }
        index
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of arcs around each pivot.
    pub fn arcs(&self) -> usize {
        self.arcs
    }

    #[inline]
    fn event(&self, pivot: usize, c: usize) -> Event {
        self.events[pivot * self.arcs + c]
    }

    #[inline]
    fn range(&self, pivot: usize, s: usize) -> (usize, usize) {
        let (e, x) = self.ranges[s * self.points.len() + pivot];
        (e as usize, x as usize)
    }

    #[inline]
    fn inside_first_arc(&self, pivot: usize, s: usize) -> bool {
        let m = self.arcs;
        let (e, x) = self.range(pivot, s);
        (m - e) % m < (x + m - e) % m
    }

    #[inline]
    fn first_arc_members(&self, pivot: usize) -> &[u32] {
        &self.first_arc[self.first_arc_start[pivot]..self.first_arc_start[pivot + 1]]
    }

    fn critical_direction(&self, pivot: usize, c: usize) -> (i64, i64) {
        let ev = self.event(pivot, c);
        let (p, q) = (self.points[pivot], self.points[ev.point as usize]);
        let d = (q.x - p.x, q.y - p.y);
        if ev.enter {
            (-d.0, -d.1)
        } else {
            d
        }
    }

    /// A direction strictly inside arc `c` of `pivot`.
    pub fn arc_direction(&self, pivot: usize, c: usize) -> (i64, i64) {
        let u = self.critical_direction(pivot, c);
        if self.arcs == 2 {
            return (-u.1, u.0);
        }
        let v = self.critical_direction(pivot, (c + 1) % self.arcs);
        (u.0 + v.0, u.1 + v.1)
    }

    /// Open halfplane realizing arc `c` of `pivot`.
    pub fn arc_halfplane(&self, pivot: usize, c: usize) -> Halfplane {
        Halfplane::left_of_direction(self.points[pivot], self.arc_direction(pivot, c))
    }

    /// Members of the open halfplane at arc `c` of `pivot`.
    pub fn arc_members(&self, pivot: usize, c: usize) -> Vec<usize> {
        let m = self.arcs;
        (0..self.points.len())
            .filter(|&s| {
                s != pivot && {
                    let (e, x) = self.range(pivot, s);
                    (c + m - e) % m < (x + m - e) % m
                }
            })
            .collect()
    }
}

/// Position of the best halfplane found by a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum HalfplaneSpot {
    Whole,
    Arc { pivot: usize, arc: usize },
}

impl HalfplaneSpot {
    pub(crate) fn halfplane(&self, index: &AngularIndex) -> Halfplane {
        match *self {
            HalfplaneSpot::Whole => Halfplane::everything(),
            HalfplaneSpot::Arc { pivot, arc } => index.arc_halfplane(pivot, arc),
        }
    }
}

/// Maximum `|w(S ∩ H)|` over halfplanes `H`; the first maximizer in scan order
/// (whole set, then pivots and arcs ascending) is reported.
pub(crate) fn halfplane_sweep(index: &AngularIndex, w: &[i32]) -> (i32, HalfplaneSpot) {
    let n = index.len();
    let m = index.arcs;
    let mut best = w.iter().sum::<i32>().abs();
    let mut spot = HalfplaneSpot::Whole;
    for r in 0..n {
        let mut val: i32 = index.first_arc_members(r).iter().map(|&s| w[s as usize]).sum();
        if val.abs() > best {
            best = val.abs();
            spot = HalfplaneSpot::Arc { pivot: r, arc: 0 };
        }
        let evs = &index.events[r * m..(r + 1) * m];
        for (c, ev) in evs.iter().enumerate().skip(1) {
            let ws = w[ev.point as usize];
            val += if ev.enter { ws } else { -ws };
            if val.abs() > best {
                best = val.abs();
                spot = HalfplaneSpot::Arc { pivot: r, arc: c };
            }
        }
    }
    (best, spot)
}

/// Like [`halfplane_sweep`], additionally counting the distinct maximizing
/// subsets. Subsets are identified by Zobrist hashes under `keys`. Returns
/// `None` as soon as some subset's discrepancy exceeds `cap`.
pub(crate) fn halfplane_sweep_counted(
    index: &AngularIndex,
    w: &[i32],
    keys: &[u64],
    cap: i32,
) -> Option<(i32, usize, HalfplaneSpot)> {
    let n = index.len();
    let m = index.arcs;
    let total: i32 = w.iter().sum();
    let mut best = total.abs();
    if best > cap {
        return None;
    }
    let mut spot = HalfplaneSpot::Whole;
    let mut hits: Vec<u64> = vec![keys.iter().fold(0, |h, k| h ^ k)];
    for r in 0..n {
        let mut val = 0;
        let mut hash = 0u64;
        for &s in index.first_arc_members(r) {
            val += w[s as usize];
            hash ^= keys[s as usize];
        }
        let evs = &index.events[r * m..(r + 1) * m];
        for (c, ev) in evs.iter().enumerate() {
            if c > 0 {
                let s = ev.point as usize;
                val += if ev.enter { w[s] } else { -w[s] };
                hash ^= keys[s];
            }
            let v = val.abs();
            if v > best {
                if v > cap {
                    return None;
                }
                best = v;
                spot = HalfplaneSpot::Arc { pivot: r, arc: c };
                hits.clear();
                hits.push(hash);
            } else if v == best {
                hits.push(hash);
            }
        }
    }
    hits.sort_unstable();
    hits.dedup();
    Some((best, hits.len(), spot))
}

pub fn max_disc_halfplane(ps: &ColoredPointSet) -> MaxDiscResult {
    let index = AngularIndex::new(ps.points());
    max_disc_halfplane_indexed(ps, &index)
}

/// [`max_disc_halfplane`] on a prebuilt index of `ps.points()`.
pub fn max_disc_halfplane_indexed(ps: &ColoredPointSet, index: &AngularIndex) -> MaxDiscResult {
    if ps.is_empty() {
        return MaxDiscResult::from_certificate(ps, 0, vec![Halfplane::nothing()]);
    }
    let (best, spot) = halfplane_sweep(index, &ps.weights());
    MaxDiscResult::from_certificate(ps, best as u32, vec![spot.halfplane(index)])
}

const NEG: i32 = i32::MIN / 4;
const POS: i32 = i32::MAX / 4;

/// Range add, global max and min, without lazy pushes: every internal node
/// stores the extremum of its subtree including its own pending addition.
#[derive(Clone, Debug)]
struct ExtremaTree {
    size: usize,
    nodes: Vec<Node>,
}

// Fields read together are kept adjacent.
#[derive(Clone, Copy, Debug)]
struct Node {
    mx: i32,
    mn: i32,
    add: i32,
}

impl ExtremaTree {
    fn new(len: usize) -> Self {
        let size = len.next_power_of_two().max(1);
        ExtremaTree { size, nodes: vec![Node { mx: NEG, mn: POS, add: 0 }; 2 * size] }
    }

    fn build(&mut self, values: &[i32]) {
        let size = self.size;
        for i in 0..size {
            let (hi, lo) = values.get(i).map_or((NEG, POS), |&v| (v, v));
            self.nodes[size + i] = Node { mx: hi, mn: lo, add: 0 };
        }
        for i in (1..size).rev() {
            let (a, b) = (self.nodes[2 * i], self.nodes[2 * i + 1]);
            self.nodes[i] = Node { mx: a.mx.max(b.mx), mn: a.mn.min(b.mn), add: 0 };
        }
    }

    #[inline]
    fn apply(&mut self, i: usize, v: i32) {
        let node = &mut self.nodes[i];
        node.mx += v;
        node.mn += v;
        node.add += v;
    }

    #[inline]
    fn pull(&mut self, mut i: usize) {
        while i > 1 {
            i >>= 1;
            let (a, b) = (self.nodes[2 * i], self.nodes[2 * i + 1]);
            let node = &mut self.nodes[i];
            node.mx = a.mx.max(b.mx) + node.add;
            node.mn = a.mn.min(b.mn) + node.add;
        }
    }

    /// Adds `v` to slots `[0, k)`.
    fn prefix_add(&mut self, k: usize, v: i32) {
        if k == 0 {
            return;
        }
        let mut r = k + self.size;
        let mut lowest = None;
        // Only right boundaries move; every applied node is the left sibling
        // of a node on the path of leaf `k`.
        while r > 1 {
            if r & 1 == 1 {
                self.apply(r - 1, v);
                lowest.get_or_insert(r - 1);
            }
            r >>= 1;
        }
        if k == self.size {
            self.apply(1, v);
            return;
        }
        if let Some(i) = lowest {
            self.pull(i);
        }
    }

    fn add_all(&mut self, v: i32) {
        self.apply(1, v);
    }

    fn max(&self) -> i32 {
        self.nodes[1].mx
    }

    fn min(&self) -> i32 {
        self.nodes[1].mn
    }

    /// Leftmost slot attaining the global max (or min).
    fn locate(&self, want_max: bool) -> usize {
        let mut i = 1;
        let mut target = if want_max { self.max() } else { self.min() };
        while i < self.size {
            target -= self.nodes[i].add;
            let left = if want_max { self.nodes[2 * i].mx } else { self.nodes[2 * i].mn };
            i = if left == target { 2 * i } else { 2 * i + 1 };
        }
        i - self.size
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct WedgeSpot {
    outer: usize,
    outer_arc: usize,
    inner: usize,
    inner_arc: usize,
}

// Around pivot `r` every point's window `[enter, exit)` covers exactly half of
// the `m = 2h` arcs, so the weight `V` of the halfplane island at arc `c + h`
// is `W - V(c)`, where `W` is the total weight in the tree. Each inner tree
// therefore stores `V` on arcs `[0, h)` only, and adding a point is a prefix
// or suffix add.
struct WedgeScratch {
    trees: Vec<ExtremaTree>,
    totals: Vec<i32>,
    in_t: Vec<bool>,
    values: Vec<i32>,
}

impl WedgeScratch {
    fn new(n: usize, m: usize) -> Self {
        WedgeScratch {
            trees: vec![ExtremaTree::new(m / 2); n],
            totals: vec![0; n],
            in_t: vec![false; n],
            values: vec![0; m + 1],
        }
    }

    fn insert(&mut self, index: &AngularIndex, r: usize, s: usize, v: i32) {
        let h = index.arcs / 2;
        let (e, x) = index.range(r, s);
        debug_assert_eq!((e + h) % index.arcs, x);
        let tree = &mut self.trees[r];
        if e < h {
            tree.add_all(v);
            tree.prefix_add(e, -v);
        } else {
            tree.prefix_add(e - h, v);
        }
        self.totals[r] += v;
    }

    /// Largest `|V(c)|` over all arcs of pivot `r`, with the first arc
    /// attaining it.
    fn best_arc(&self, r: usize, h: usize) -> (i32, usize) {
        let t = &self.trees[r];
        let w = self.totals[r];
        let (hi, lo) = (t.max(), t.min());
        // V on [0, h) spans [lo, hi]; on [h, 2h) it spans [w - hi, w - lo].
        [(hi, true, 0), (-lo, false, 0), (w - lo, false, h), (hi - w, true, h)]
            .into_iter()
            .fold((i32::MIN, 0), |best, (v, want_max, shift)| {
                if v > best.0 {
                    (v, t.locate(want_max) + shift)
                } else {
                    best
                }
            })
    }
}

fn rebuild_inner(index: &AngularIndex, w: &[i32], r: usize, sc: &mut WedgeScratch) {
    let m = index.arcs;
    let n = index.len();
    let diff = &mut sc.values;
    diff.iter_mut().for_each(|v| *v = 0);
    let mut total = 0;
    for s in 0..n {
        if s == r || !sc.in_t[s] {
            continue;
        }
        let (e, x) = index.range(r, s);
        diff[e] += w[s];
        diff[x] -= w[s];
        if e > x {
            diff[0] += w[s];
        }
        total += w[s];
    }
    let mut acc = 0;
    for v in diff.iter_mut().take(m / 2) {
        acc += *v;
        *v = acc;
    }
    sc.trees[r].build(&diff[..m / 2]);
    sc.totals[r] = total;
}

/// Best wedge `T_p ∩ H_r` over outer arcs of pivot `p` and inner pivots `r > p`
/// with `r ∈ T_p`. Returns the first strict maximum in scan order.
fn wedge_scan_outer(index: &AngularIndex, w: &[i32], p: usize, sc: &mut WedgeScratch) -> Option<(i32, WedgeSpot)> {
    let n = index.len();
    let m = index.arcs;
    if n < 3 {
        return None;
    }
    for s in 0..n {
        sc.in_t[s] = s != p && index.inside_first_arc(p, s);
    }
    for r in p + 1..n {
        if sc.in_t[r] {
            rebuild_inner(index, w, r, sc);
        }
    }
    let mut best: Option<(i32, WedgeSpot)> = None;
    let h = m / 2;
    let consider = |c: usize, r: usize, sc: &WedgeScratch, best: &mut Option<(i32, WedgeSpot)>| {
        let t = &sc.trees[r];
        let w = sc.totals[r];
        let reach = t.max().max(w - t.min()).max(-t.min()).max(t.max() - w);
        if reach > best.map_or(-1, |b| b.0) {
            let (v, arc) = sc.best_arc(r, h);
            *best = Some((v, WedgeSpot { outer: p, outer_arc: c, inner: r, inner_arc: arc }));
        }
    };
    for r in p + 1..n {
        if sc.in_t[r] {
            consider(0, r, sc, &mut best);
        }
    }
    for c in 1..m {
        let ev = index.event(p, c);
        let s = ev.point as usize;
        let d = if ev.enter { w[s] } else { -w[s] };
        sc.in_t[s] = ev.enter;
        for r in p + 1..n {
            if !sc.in_t[r] {
                continue;
            }
            if r == s {
                rebuild_inner(index, w, s, sc);
            } else {
                sc.insert(index, r, s, d);
            }
            consider(c, r, sc, &mut best);
        }
    }
    best
}

pub fn max_disc_wedge(ps: &ColoredPointSet) -> MaxDiscResult {
    let index = AngularIndex::new(ps.points());
    max_disc_wedge_indexed(ps, &index)
}

/// `D_2` with a witness of at most two halfplanes, `O(n^3 log n)`.
///
/// Ties are broken by scan order: halfplane islands first, then wedges by
/// outer pivot, outer arc and inner pivot. The result does not depend on the
/// number of worker threads.
pub fn max_disc_wedge_indexed(ps: &ColoredPointSet, index: &AngularIndex) -> MaxDiscResult {
    let d1 = max_disc_halfplane_indexed(ps, index);
    let n = ps.len();
    if n < 3 {
        return d1;
    }
    let w = ps.weights();
    let m = index.arcs;
    let per_outer: Vec<Option<(i32, WedgeSpot)>> = (0..n)
        .into_par_iter()
        .map_init(|| WedgeScratch::new(n, m), |sc, p| wedge_scan_outer(index, &w, p, sc))
        .collect();
    let mut best: Option<(i32, WedgeSpot)> = None;
    for (v, spot) in per_outer.into_iter().flatten() {
        if best.is_none_or(|b| v > b.0) {
            best = Some((v, spot));
        }
    }
    match best {
        Some((v, s)) if v as u32 > d1.value => MaxDiscResult::from_certificate(
            ps,
            v as u32,
            vec![index.arc_halfplane(s.outer, s.outer_arc), index.arc_halfplane(s.inner, s.inner_arc)],
        ),
        _ => d1,
    }
}

/// `D_2` by the direct route: for every canonical halfplane `H`, the maximum
/// halfplane discrepancy inside `S ∩ H`. `O(n^4)`; used as a cross-check.
pub fn max_disc_wedge_nested(ps: &ColoredPointSet) -> MaxDiscResult {
    let index = AngularIndex::new(ps.points());
    let d1 = max_disc_halfplane_indexed(ps, &index);
    let w = ps.weights();
    let mut best = (d1.value as i32, None);
    let mut masked = vec![0; ps.len()];
    for h in crate::islands::canonical_halfplanes(ps) {
        for (i, &p) in ps.points().iter().enumerate() {
            masked[i] = if h.contains(p) { w[i] } else { 0 };
        }
        let (v, spot) = halfplane_sweep(&index, &masked);
        if v > best.0 {
            best = (v, Some((h, spot)));
        }
    }
    match best {
        (v, Some((h, spot))) => MaxDiscResult::from_certificate(ps, v as u32, vec![h, spot.halfplane(&index)]),
        _ => d1,
    }
}

/// Exact `D_k` over the enumerated k-separable islands. Ties go to the
/// lexicographically smallest member list.
pub fn max_disc_k(ps: &ColoredPointSet, k: usize, budget: &Budget) -> Result<MaxDiscResult> {
    let islands = enumerate_islands(ps, k, budget)?;
    let mut best: Option<(u32, Island)> = None;
    for isl in islands {
        let d = disc(ps, &isl.members);
        if best.as_ref().is_none_or(|b| d > b.0) {
            best = Some((d, isl));
        }
    }
    let (value, witness) = best.expect("the empty island is always present");
    Ok(MaxDiscResult { value, witness })
}

/// Number of equivalence classes a family of islands induces on `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShatterCount {
    pub m: usize,
    pub k: usize,
    pub classes: usize,
}

/// Two points are equivalent when they lie in exactly the same islands of
/// `family`. `k` reports the longest certificate in the family.
pub fn shatter_classes(ps: &ColoredPointSet, family: &[Island]) -> ShatterCount {
    let words = family.len().div_ceil(64).max(1);
    let mut vectors = vec![vec![0u64; words]; ps.len()];
    for (j, isl) in family.iter().enumerate() {
        for &i in &isl.members {
            vectors[i][j / 64] |= 1 << (j % 64);
        }
    }
    let classes: HashSet<Vec<u64>> = vectors.into_iter().collect();
    ShatterCount {
        m: family.len(),
        k: family.iter().map(|i| i.certificate.len()).max().unwrap_or(0),
        classes: classes.len(),
    }
}
