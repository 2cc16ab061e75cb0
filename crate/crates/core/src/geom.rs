//! Exact planar primitives over bounded integer coordinates.
//!
//! Coordinates satisfy `|x|, |y| <= COORD_LIMIT` (2^20). Every orientation
//! determinant is then bounded by 2^43 and fits in `i64` without overflow;
//! halfplane evaluation elsewhere in the crate widens to `i128`.

use serde::{Deserialize, Serialize};

/// Largest admissible absolute coordinate value.
pub const COORD_LIMIT: i64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn in_range(&self) -> bool {
        self.x.abs() <= COORD_LIMIT && self.y.abs() <= COORD_LIMIT
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

/// Turn direction of an ordered point triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i32 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }
}

/// Twice the signed area of `(a, b, c)`, i.e. `(b - a) x (c - a)`.
#[inline]
pub fn cross(a: Point, b: Point, c: Point) -> i64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

pub fn orientation(a: Point, b: Point, c: Point) -> Orientation {
    match cross(a, b, c) {
        d if d > 0 => Orientation::CounterClockwise,
        d if d < 0 => Orientation::Clockwise,
        _ => Orientation::Collinear,
    }
}

/// Convex hull as a counterclockwise vertex cycle without collinear vertices.
///
/// Hulls with fewer than three vertices are the empty set, a single point or
/// a segment.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Closed containment test.
    pub fn contains(&self, p: Point) -> bool {
        let v = &self.vertices;
        match v.len() {
            0 => false,
            1 => v[0] == p,
            2 => on_segment(v[0], v[1], p),
            n => (0..n).all(|i| cross(v[i], v[(i + 1) % n], p) >= 0),
        }
    }

    /// Boundary pieces as closed segments; a point hull yields one zero-length
    /// segment.
    fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let v = &self.vertices;
        let n = v.len();
        let count = match n {
            0 => 0,
            1 | 2 => 1,
            _ => n,
        };
        (0..count).map(move |i| (v[i], v[(i + 1) % n]))
    }
}

/// Andrew's monotone chain. Duplicate and collinear points are dropped.
pub fn convex_hull(points: &[Point]) -> ConvexPolygon {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return ConvexPolygon { vertices: pts };
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for &p in pts.iter() {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    ConvexPolygon { vertices: hull }
}

/// `p` lies on the closed segment `ab` (which may be degenerate).
fn on_segment(a: Point, b: Point, p: Point) -> bool {
    cross(a, b, p) == 0
        && a.x.min(b.x) <= p.x
        && p.x <= a.x.max(b.x)
        && a.y.min(b.y) <= p.y
        && p.y <= a.y.max(b.y)
}

/// Closed segment intersection, degenerate segments included.
pub fn segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = cross(q1, q2, p1).signum();
    let d2 = cross(q1, q2, p2).signum();
    let d3 = cross(p1, p2, q1).signum();
    let d4 = cross(p1, p2, q2).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && on_segment(q1, q2, p1))
        || (d2 == 0 && on_segment(q1, q2, p2))
        || (d3 == 0 && on_segment(p1, p2, q1))
        || (d4 == 0 && on_segment(p1, p2, q2))
}

/// True iff the two closed hulls share no point.
pub fn hulls_disjoint(p: &ConvexPolygon, q: &ConvexPolygon) -> bool {
    if p.is_empty() || q.is_empty() {
        return true;
    }
    for (a, b) in p.edges() {
        for (c, d) in q.edges() {
            if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    // No boundary contact: either nested or apart.
    !(p.contains(q.vertices[0]) || q.contains(p.vertices[0]))
}

/// Reason a point list fails general position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    Duplicate(usize, usize),
    Collinear(usize, usize, usize),
}

impl std::fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degeneracy::Duplicate(i, j) => write!(f, "points {i} and {j} coincide"),
            Degeneracy::Collinear(i, j, k) => write!(f, "points {i}, {j}, {k} are collinear"),
        }
    }
}

/// Primitive direction with the sign fixed so that `d` and `-d` agree.
fn line_direction(dx: i64, dy: i64) -> (i64, i64) {
    let g = num_integer::gcd(dx, dy);
    let (mut dx, mut dy) = (dx / g, dy / g);
    if dx < 0 || (dx == 0 && dy < 0) {
        dx = -dx;
        dy = -dy;
    }
    (dx, dy)
}

/// First degeneracy found, scanning pivots in index order. O(n^2 log n).
pub fn find_degeneracy(points: &[Point]) -> Option<Degeneracy> {
    let n = points.len();
    let mut dirs: Vec<((i64, i64), usize)> = Vec::with_capacity(n);
    for i in 0..n {
        dirs.clear();
        for j in i + 1..n {
            let dx = points[j].x - points[i].x;
            let dy = points[j].y - points[i].y;
            if dx == 0 && dy == 0 {
                return Some(Degeneracy::Duplicate(i, j));
            }
            dirs.push((line_direction(dx, dy), j));
        }
        dirs.sort_unstable();
        for w in dirs.windows(2) {
            if w[0].0 == w[1].0 {
                return Some(Degeneracy::Collinear(i, w[0].1, w[1].1));
            }
        }
    }
    None
}

/// No duplicates and no three collinear points.
pub fn in_general_position(points: &[Point]) -> bool {
    find_degeneracy(points).is_none()
}

/// All points are vertices of their convex hull.
pub fn in_convex_position(points: &[Point]) -> bool {
    convex_hull(points).len() == points.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    fn poly(pts: &[(i64, i64)]) -> ConvexPolygon {
        convex_hull(&pts.iter().map(|&t| t.into()).collect::<Vec<_>>())
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(p(0, 0), p(1, 0), p(0, 1)).sign(), 1);
        assert_eq!(orientation(p(0, 0), p(1, 1), p(2, 2)).sign(), 0);
        assert_eq!(orientation(p(0, 0), p(0, 1), p(1, 0)).sign(), -1);
    }

    #[test]
    fn extreme_coordinates_do_not_overflow() {
        let l = COORD_LIMIT;
        let d = cross(p(-l, -l), p(l, -l), p(l, l));
        assert_eq!(d, (2 * l) * (2 * l));
        assert_eq!(orientation(p(-l, l), p(l, -l), p(-l, -l)).sign(), -1);
    }

    #[test]
    fn hull_examples() {
        assert!(convex_hull(&[]).is_empty());
        let sq = poly(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert_eq!(sq.vertices(), &[p(0, 0), p(1, 0), p(1, 1), p(0, 1)]);
        let tri = poly(&[(0, 0), (2, 0), (0, 2)]);
        assert_eq!(tri.len(), 3);
        let seg = poly(&[(0, 0), (1, 1), (2, 2)]);
        assert_eq!(seg.vertices(), &[p(0, 0), p(2, 2)]);
        assert_eq!(poly(&[(3, 4), (3, 4)]).vertices(), &[p(3, 4)]);
    }

    #[test]
    fn disjointness_examples() {
        let seg = poly(&[(0, 0), (1, 1)]);
        assert!(hulls_disjoint(&seg, &poly(&[(1, 0)])));
        assert!(!hulls_disjoint(&seg, &poly(&[(1, 0), (0, 1)])));
        assert!(!hulls_disjoint(&poly(&[(0, 0), (4, 0), (0, 4)]), &poly(&[(1, 1)])));
    }

    #[test]
    fn disjointness_degenerate_pairs() {
        let a = poly(&[(0, 0)]);
        assert!(!hulls_disjoint(&a, &a));
        assert!(hulls_disjoint(&a, &poly(&[(0, 1)])));
        // point touching a segment endpoint and interior
        assert!(!hulls_disjoint(&poly(&[(0, 0), (2, 2)]), &poly(&[(2, 2)])));
        assert!(!hulls_disjoint(&poly(&[(0, 0), (2, 2)]), &poly(&[(1, 1)])));
        // collinear overlapping segments
        assert!(!hulls_disjoint(&poly(&[(0, 0), (2, 0)]), &poly(&[(1, 0), (3, 0)])));
        assert!(hulls_disjoint(&poly(&[(0, 0), (1, 0)]), &poly(&[(2, 0), (3, 0)])));
        // nested polygons
        let big = poly(&[(0, 0), (10, 0), (10, 10), (0, 10)]);
        let small = poly(&[(2, 2), (3, 2), (2, 3)]);
        assert!(!hulls_disjoint(&big, &small));
        assert!(!hulls_disjoint(&small, &big));
        // polygon and segment through its interior
        assert!(!hulls_disjoint(&big, &poly(&[(-1, 5), (11, 5)])));
        assert!(hulls_disjoint(&big, &poly(&[(11, 0), (11, 10)])));
        assert!(hulls_disjoint(&ConvexPolygon::default(), &big));
    }

    #[test]
    fn general_position_examples() {
        let pts = |v: &[(i64, i64)]| v.iter().map(|&t| t.into()).collect::<Vec<Point>>();
        assert!(in_general_position(&pts(&[(0, 0), (1, 0), (0, 1), (1, 1)])));
        assert!(!in_general_position(&pts(&[(0, 0), (1, 1), (2, 2), (5, 0)])));
        assert!(!in_general_position(&pts(&[(0, 0), (0, 0), (1, 2)])));
        assert_eq!(
            find_degeneracy(&pts(&[(5, 0), (0, 0), (1, 1), (2, 2)])),
            Some(Degeneracy::Collinear(1, 2, 3))
        );
        // opposite directions from the pivot
        assert!(!in_general_position(&pts(&[(0, 0), (-3, -3), (2, 2)])));
    }

    #[test]
    fn general_position_matches_cubic_scan() {
        let pts: Vec<Point> = (0..9).flat_map(|i| (0..3).map(move |j| p(i % 4 + j, (i * j) % 5))).collect();
        let mut brute = true;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if pts[i] == pts[j] {
                    brute = false;
                }
                for k in j + 1..pts.len() {
                    if cross(pts[i], pts[j], pts[k]) == 0 {
                        brute = false;
                    }
                }
            }
        }
        assert_eq!(brute, in_general_position(&pts));
    }
}
