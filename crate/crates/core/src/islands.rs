//! Halfplane certificates, islands and k-separable island families.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::geom::{convex_hull, cross, Point, COORD_LIMIT};
use crate::point_set::{full_mask, mask_of, members_of, ColoredPointSet, Mask, MAX_MASK_POINTS};

/// `{(x, y) : a*x + b*y + c >= 0}` when closed, `> 0` when open.
///
/// Coefficients are gcd-reduced. Their sign is meaningful (it selects the
/// side), so no sign normalization is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Halfplane {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub closed: bool,
}

impl Halfplane {
    /// Returns `None` when `a = b = 0`.
    pub fn new(a: i128, b: i128, c: i128, closed: bool) -> Option<Self> {
        if a == 0 && b == 0 {
            return None;
        }
        let g = num_integer::gcd(num_integer::gcd(a, b), c);
        Some(Halfplane { a: a / g, b: b / g, c: c / g, closed })
    }

    fn from_coeffs(a: i128, b: i128, c: i128, closed: bool) -> Self {
        Self::new(a, b, c, closed).expect("nonzero normal")
    }

    #[inline]
    pub fn eval(&self, p: Point) -> i128 {
        self.a * p.x as i128 + self.b * p.y as i128 + self.c
    }

    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        let v = self.eval(p);
        if self.closed {
            v >= 0
        } else {
            v > 0
        }
    }

    /// The closure of the opposite side; `H` and its complement partition the plane.
    pub fn complement(&self) -> Halfplane {
        Halfplane { a: -self.a, b: -self.b, c: -self.c, closed: !self.closed }
    }

    /// Contains every point of the coordinate box.
    pub fn everything() -> Halfplane {
        Halfplane { a: 1, b: 0, c: COORD_LIMIT as i128 + 1, closed: true }
    }

    /// Contains no point of the coordinate box.
    pub fn nothing() -> Halfplane {
        Self::everything().complement()
    }

    /// Side strictly left of the directed line `p -> q`, optionally with the line.
    pub fn left_of(p: Point, q: Point, closed: bool) -> Halfplane {
        let dx = (q.x - p.x) as i128;
        let dy = (q.y - p.y) as i128;
        Self::from_coeffs(-dy, dx, dy * p.x as i128 - dx * p.y as i128, closed)
    }

    /// Open side left of the line through `pivot` with direction `dir`.
    pub fn left_of_direction(pivot: Point, dir: (i64, i64)) -> Halfplane {
        let (dx, dy) = (dir.0 as i128, dir.1 as i128);
        Self::from_coeffs(-dy, dx, dy * pivot.x as i128 - dx * pivot.y as i128, false)
    }
}

/// Indices of the points inside every halfplane.
pub fn members_inside(ps: &ColoredPointSet, hs: &[Halfplane]) -> Vec<usize> {
    (0..ps.len()).filter(|&i| hs.iter().all(|h| h.contains(ps.point(i)))).collect()
}

/// Subset of `S` together with halfplanes whose intersection cuts out exactly
/// that subset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Island {
    pub members: Vec<usize>,
    pub certificate: Vec<Halfplane>,
}

impl Island {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Re-derives the members from the certificate.
    pub fn certificate_matches(&self, ps: &ColoredPointSet) -> bool {
        members_inside(ps, &self.certificate) == self.members
    }
}

pub fn island_from_halfplanes(ps: &ColoredPointSet, hs: &[Halfplane]) -> Result<Island> {
    if hs.is_empty() {
        return Err(Error::InvalidArgument("island certificate needs at least one halfplane".into()));
    }
    Ok(Island { members: members_inside(ps, hs), certificate: hs.to_vec() })
}

/// Checks `members = conv(members) ∩ S`, reporting the first intruding point.
pub fn check_island(ps: &ColoredPointSet, members: &[usize]) -> Result<()> {
    let mut inside = vec![false; ps.len()];
    for &i in members {
        if i >= ps.len() {
            return Err(Error::InvalidArgument(format!("index {i} out of range")));
        }
        inside[i] = true;
    }
    let hull = convex_hull(&members.iter().map(|&i| ps.point(i)).collect::<Vec<_>>());
    match (0..ps.len()).find(|&j| !inside[j] && hull.contains(ps.point(j))) {
        Some(intruder) => Err(Error::NotAnIsland { intruder }),
        None => Ok(()),
    }
}

pub fn is_island(ps: &ColoredPointSet, members: &[usize]) -> bool {
    check_island(ps, members).is_ok()
}

/// Halfplanes whose intersection with `S` is exactly `members`, built from the
/// hull of `members`. `members` must be a sorted island.
pub fn hull_certificate(ps: &ColoredPointSet, members: &[usize]) -> Vec<Halfplane> {
    let n = ps.len();
    if members.len() == n {
        return vec![Halfplane::everything()];
    }
    match members {
        [] => vec![Halfplane::nothing()],
        &[i] => {
            let p = ps.point(i);
            let q = ps.point(if i == 0 { 1 } else { 0 });
            // the line pq, then the side of p's perpendicular away from q
            let away = Halfplane::from_coeffs(
                (p.x - q.x) as i128,
                (p.y - q.y) as i128,
                -((p.x - q.x) as i128 * p.x as i128 + (p.y - q.y) as i128 * p.y as i128),
                true,
            );
            vec![Halfplane::left_of(p, q, true), Halfplane::left_of(q, p, true), away]
        }
        &[i, j] => {
            let (p, q) = (ps.point(i), ps.point(j));
            vec![Halfplane::left_of(p, q, true), Halfplane::left_of(q, p, true)]
        }
        _ => {
            let hull = convex_hull(&members.iter().map(|&i| ps.point(i)).collect::<Vec<_>>());
            let v = hull.vertices();
            (0..v.len()).map(|k| Halfplane::left_of(v[k], v[(k + 1) % v.len()], true)).collect()
        }
    }
}

/// Island whose certificate comes from [`hull_certificate`].
pub fn island_from_members(ps: &ColoredPointSet, members: &[usize]) -> Result<Island> {
    let mut members = members.to_vec();
    members.sort_unstable();
    members.dedup();
    check_island(ps, &members)?;
    let certificate = hull_certificate(ps, &members);
    Ok(Island { members, certificate })
}

/// The directed line `p -> q` rotated by an infinitesimal angle about a
/// point between `p` and `q`: the returned open halfplane contains the strict
/// left side of `p -> q` plus `p` (or plus `q` when `keep_q`), and nothing else
/// of `S`.
fn tilted(ps: &ColoredPointSet, i: usize, j: usize, keep_q: bool) -> Halfplane {
    let (p, q) = (ps.point(i), ps.point(j));
    let (px, py, qx, qy) = (p.x as i128, p.y as i128, q.x as i128, q.y as i128);
    let g = |s: Point| 2 * (px - qx) * s.x as i128 + 2 * (py - qy) * s.y as i128 - (px * px + py * py - qx * qx - qy * qy);
    let mut scale: i128 = 1;
    for (k, &s) in ps.points().iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        let o = (cross(p, q, s) as i128).abs();
        scale = scale.max(g(s).abs() / o + 1);
    }
    let sign = if keep_q { -1 } else { 1 };
    let dx = qx - px;
    let dy = qy - py;
    Halfplane::from_coeffs(
        -scale * dy + sign * 2 * (px - qx),
        scale * dx + sign * 2 * (py - qy),
        scale * (dy * px - dx * py) - sign * (px * px + py * py - qx * qx - qy * qy),
        false,
    )
}

fn subset_key(ps: &ColoredPointSet, h: &Halfplane) -> Vec<u64> {
    let mut key = vec![0u64; ps.len().div_ceil(64)];
    for (i, &p) in ps.points().iter().enumerate() {
        if h.contains(p) {
            key[i / 64] |= 1 << (i % 64);
        }
    }
    key
}

/// Halfplanes realizing every halfplane-induced subset of `S`, one per subset.
///
/// For each pair of points `p, q` and each side of the line `pq` the family
/// holds the open side, the closed side, and the two infinitesimal rotations
/// that keep exactly one of `p`, `q`. Together with the whole plane and the
/// empty halfplane this covers every split a line can induce on a point set in
/// general position.
pub fn canonical_halfplanes(ps: &ColoredPointSet) -> Vec<Halfplane> {
    let n = ps.len();
    let mut seen: HashMap<Vec<u64>, ()> = HashMap::new();
    let mut out = Vec::new();
    let mut push = |h: Halfplane| {
        if seen.insert(subset_key(ps, &h), ()).is_none() {
            out.push(h);
        }
    };
    push(Halfplane::everything());
    push(Halfplane::nothing());
    for i in 0..n {
        for j in i + 1..n {
            for (u, v) in [(i, j), (j, i)] {
                let (p, q) = (ps.point(u), ps.point(v));
                push(Halfplane::left_of(p, q, false));
                push(Halfplane::left_of(p, q, true));
                push(tilted(ps, u, v, false));
                push(tilted(ps, u, v, true));
            }
        }
    }
    out
}

fn require_mask_size(ps: &ColoredPointSet) -> Result<()> {
    if ps.len() > MAX_MASK_POINTS {
        return Err(Error::BudgetExceeded { estimated: u128::MAX, budget: MAX_MASK_POINTS as u128 });
    }
    Ok(())
}

/// Canonical halfplanes paired with their induced member masks (n <= 64).
pub fn halfplane_masks(ps: &ColoredPointSet) -> Result<Vec<(Mask, Halfplane)>> {
    require_mask_size(ps)?;
    Ok(canonical_halfplanes(ps)
        .into_iter()
        .map(|h| {
            let m = subset_key(ps, &h);
            (m.first().copied().unwrap_or(0), h)
        })
        .collect())
}

/// Lexicographic order of sorted index lists, on masks.
pub fn cmp_member_masks(a: Mask, b: Mask) -> std::cmp::Ordering {
    members_of(a).cmp(&members_of(b))
}

/// Breadth-first closure of halfplane intersections.
///
/// Level `t` holds the sets first reached as an intersection of `t` base
/// halfplanes, so every certificate has minimum length.
struct Closure {
    certs: HashMap<Mask, Vec<usize>>,
    order: Vec<Mask>,
}

fn intersection_closure(
    base: &[(Mask, Halfplane)],
    start: impl IntoIterator<Item = (Mask, usize)>,
    depth: usize,
    n: usize,
    budget: &Budget,
    mut stop: impl FnMut(Mask) -> bool,
) -> Result<Closure> {
    let mut certs: HashMap<Mask, Vec<usize>> = HashMap::new();
    let mut order = Vec::new();
    let mut frontier = Vec::new();
    for (m, idx) in start {
        if !certs.contains_key(&m) {
            certs.insert(m, vec![idx]);
            order.push(m);
            frontier.push(m);
            if stop(m) {
                return Ok(Closure { certs, order });
            }
        }
    }
    let mut spent: u128 = 0;
    for _ in 1..depth {
        spent += (frontier.len() as u128) * (base.len() as u128) * (n.max(1) as u128);
        budget.charge(spent)?;
        let mut next = Vec::new();
        for &x in &frontier {
            for (idx, &(hm, _)) in base.iter().enumerate() {
                let y = x & hm;
                if certs.contains_key(&y) {
                    continue;
                }
                let mut cert = certs[&x].clone();
                cert.push(idx);
                certs.insert(y, cert);
                order.push(y);
                next.push(y);
                if stop(y) {
                    return Ok(Closure { certs, order });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(Closure { certs, order })
}

/// All distinct k-separable islands of `S` (the empty island included), each
/// with a minimum-length certificate, sorted by member list.
pub fn enumerate_islands(ps: &ColoredPointSet, k: usize, budget: &Budget) -> Result<Vec<Island>> {
    if !(1..=6).contains(&k) {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..=6")));
    }
    require_mask_size(ps)?;
    let n = ps.len();
    budget.charge((n as u128).pow(3) * 4)?;
    let base = halfplane_masks(ps)?;
    let closure = intersection_closure(&base, base.iter().enumerate().map(|(i, &(m, _))| (m, i)), k, n, budget, |_| false)?;
    let mut masks = closure.order.clone();
    masks.sort_by(|&a, &b| cmp_member_masks(a, b));
    Ok(masks
        .into_iter()
        .map(|m| Island {
            members: members_of(m),
            certificate: closure.certs[&m].iter().map(|&i| base[i].1).collect(),
        })
        .collect())
}

/// Minimum number of halfplanes separating an island from the rest of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub halfplanes: usize,
    pub certificate: Vec<Halfplane>,
}

/// Smallest `t <= k_max` with `members = S ∩ H_1 ∩ ... ∩ H_t`, or `None`.
pub fn separability_number(
    ps: &ColoredPointSet,
    members: &[usize],
    k_max: usize,
    budget: &Budget,
) -> Result<Option<Separation>> {
    if k_max > 6 {
        return Err(Error::InvalidArgument(format!("k_max = {k_max} exceeds 6")));
    }
    require_mask_size(ps)?;
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    check_island(ps, &sorted)?;
    let n = ps.len();
    let target = mask_of(&sorted);
    if k_max == 0 {
        return Ok(None);
    }
    budget.charge((n as u128).pow(3) * 4)?;
    let base: Vec<(Mask, Halfplane)> = halfplane_masks(ps)?.into_iter().filter(|&(m, _)| m & target == target).collect();
    let mut found = false;
    let closure = intersection_closure(
        &base,
        base.iter().enumerate().map(|(i, &(m, _))| (m, i)),
        k_max,
        n,
        budget,
        |m| {
            found = m == target;
            found
        },
    )?;
    if !found && !closure.certs.contains_key(&target) {
        return Ok(None);
    }
    let cert: Vec<Halfplane> = closure.certs[&target].iter().map(|&i| base[i].1).collect();
    debug_assert!(target & !full_mask(n) == 0);
    Ok(Some(Separation { halfplanes: cert.len(), certificate: cert }))
}
