//! Static SVG figures: instances with certificates and hulls, and the
//! log-log scaling plot.

use std::fmt::Write;

use coarseness::{convex_hull, Color, ColoredPointSet, Halfplane, Point};

use crate::experiment::{median_d2, Kind, ScalingRow};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 30.0;

struct Frame {
    min_x: f64,
    min_y: f64,
    scale: f64,
}

impl Frame {
    fn new(points: &[Point]) -> Self {
        let xs = points.iter().map(|p| p.x as f64);
        let ys = points.iter().map(|p| p.y as f64);
        let (min_x, max_x) = xs.fold((f64::MAX, f64::MIN), |(a, b), v| (a.min(v), b.max(v)));
        let (min_y, max_y) = ys.fold((f64::MAX, f64::MIN), |(a, b), v| (a.min(v), b.max(v)));
        let extent = (max_x - min_x).max(max_y - min_y).max(1.0);
        Frame { min_x, min_y, scale: (SIZE - 2.0 * MARGIN) / extent }
    }

    // y grows upwards in the instance, downwards in SVG.
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (MARGIN + (x - self.min_x) * self.scale, SIZE - MARGIN - (y - self.min_y) * self.scale)
    }

    fn unmap(&self, sx: f64, sy: f64) -> (f64, f64) {
        ((sx - MARGIN) / self.scale + self.min_x, (SIZE - MARGIN - sy) / self.scale + self.min_y)
    }
}

/// The boundary line of `h` clipped to the drawing area, if it crosses it.
fn clip_line(frame: &Frame, h: &Halfplane) -> Option<((f64, f64), (f64, f64))> {
    let (a, b, c) = (h.a as f64, h.b as f64, h.c as f64);
    let (x0, y1) = frame.unmap(0.0, 0.0);
    let (x1, y0) = frame.unmap(SIZE, SIZE);
    let mut hits = Vec::new();
    if b != 0.0 {
        for x in [x0, x1] {
            let y = -(a * x + c) / b;
            if (y0..=y1).contains(&y) {
                hits.push((x, y));
            }
        }
    }
    if a != 0.0 {
        for y in [y0, y1] {
            let x = -(b * y + c) / a;
            if (x0..=x1).contains(&x) {
                hits.push((x, y));
            }
        }
    }
    hits.dedup();
    (hits.len() >= 2).then(|| (frame.map(hits[0].0, hits[0].1), frame.map(hits[1].0, hits[1].1)))
}

/// Points, hull outlines of `blocks`, and the boundary lines of
/// `certificate`.
pub fn instance_svg(ps: &ColoredPointSet, blocks: &[Vec<usize>], certificate: &[Halfplane]) -> String {
    let frame = Frame::new(ps.points());
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for block in blocks {
        let hull = convex_hull(&block.iter().map(|&i| ps.point(i)).collect::<Vec<_>>());
        let pts: Vec<String> = hull
            .vertices()
            .iter()
            .map(|p| {
                let (x, y) = frame.map(p.x as f64, p.y as f64);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        writeln!(s, r#"<polygon points="{}" fill="none" stroke="gray" stroke-width="1.5"/>"#, pts.join(" ")).unwrap();
    }
    for h in certificate {
        if let Some(((ax, ay), (bx, by))) = clip_line(&frame, h) {
            writeln!(s, r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="green" stroke-dasharray="6 4"/>"#).unwrap();
        }
    }
    for (i, (p, c)) in ps.points().iter().zip(ps.colors()).enumerate() {
        let (x, y) = frame.map(p.x as f64, p.y as f64);
        let fill = if *c == Color::Red { "#d62728" } else { "#1f77b4" };
        writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="{fill}"><title>{i}</title></circle>"#).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

/// Median D2 against n on log-log axes, with reference slopes 1/4 and 1/2
/// through the first random-coloring median.
pub fn scaling_svg(rows: &[ScalingRow]) -> String {
    let series: Vec<(Kind, Vec<(usize, f64)>, &str)> = [
        (Kind::Random, "#d62728"),
        (Kind::Balanced, "#ff7f0e"),
        (Kind::Optimized, "#2ca02c"),
        (Kind::Monochrome, "#7f7f7f"),
    ]
    .into_iter()
    .map(|(k, color)| (k, median_d2(rows, k), color))
    .filter(|(_, s, _)| !s.is_empty())
    .collect();

    let all: Vec<(f64, f64)> =
        series.iter().flat_map(|(_, s, _)| s.iter().map(|&(n, d)| ((n as f64).log10(), d.max(0.5).log10()))).collect();
    let (lx0, lx1) = all.iter().fold((f64::MAX, f64::MIN), |(a, b), p| (a.min(p.0), b.max(p.0)));
    let (ly0, ly1) = all.iter().fold((f64::MAX, f64::MIN), |(a, b), p| (a.min(p.1), b.max(p.1)));
    let (lx0, lx1) = if all.is_empty() { (0.0, 1.0) } else { (lx0 - 0.1, lx1 + 0.1) };
    let (ly0, ly1) = if all.is_empty() { (0.0, 1.0) } else { (ly0 - 0.3, ly1 + 0.3) };
    let (w, h, m) = (640.0, 480.0, 60.0);
    let px = |lx: f64| m + (lx - lx0) / (lx1 - lx0) * (w - 2.0 * m);
    let py = |ly: f64| h - m - (ly - ly0) / (ly1 - ly0) * (h - 2.0 * m);

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(s, r#"<defs><clipPath id="plot"><rect x="{m}" y="{m}" width="{}" height="{}"/></clipPath></defs>"#, w - 2.0 * m, h - 2.0 * m).unwrap();
    writeln!(s, r#"<rect x="{m}" y="{m}" width="{}" height="{}" fill="none" stroke="black"/>"#, w - 2.0 * m, h - 2.0 * m).unwrap();
    writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle" font-size="14">n (log scale)</text>"#, w / 2.0, h - 15.0).unwrap();
    writeln!(s, r#"<text x="15" y="{}" font-size="14" transform="rotate(-90 15 {})" text-anchor="middle">median D2 (log scale)</text>"#, h / 2.0, h / 2.0).unwrap();
    for e in (lx0.ceil() as i32)..=(lx1.floor() as i32) {
        writeln!(s, r#"<text x="{:.2}" y="{}" text-anchor="middle" font-size="11">1e{e}</text>"#, px(e as f64), h - m + 16.0).unwrap();
    }
    for e in (ly0.ceil() as i32)..=(ly1.floor() as i32) {
        writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end" font-size="11">1e{e}</text>"#, m - 6.0, py(e as f64) + 4.0).unwrap();
    }

    let anchor = series.iter().find(|(k, _, _)| *k == Kind::Random).or(series.first()).and_then(|(_, s, _)| s.first());
    if let Some(&(n0, d0)) = anchor {
        let (ax, ay) = ((n0 as f64).log10(), d0.max(0.5).log10());
        for (slope, dash) in [(0.25, "2 3"), (0.5, "8 4")] {
            let (y0, y1) = (ay + slope * (lx0 - ax), ay + slope * (lx1 - ax));
            writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-dasharray="{dash}" clip-path="url(#plot)"/>"#, px(lx0), py(y0), px(lx1), py(y1)).unwrap();
        }
    }
    let mut legend_y = m + 16.0;
    for (kind, pts, color) in &series {
        let coords: Vec<String> =
            pts.iter().map(|&(n, d)| format!("{:.2},{:.2}", px((n as f64).log10()), py(d.max(0.5).log10()))).collect();
        writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#, coords.join(" ")).unwrap();
        for c in &coords {
            let (x, y) = c.split_once(',').unwrap();
            writeln!(s, r#"<circle cx="{x}" cy="{y}" r="3" fill="{color}"/>"#).unwrap();
        }
        writeln!(s, r#"<text x="{}" y="{legend_y}" font-size="12" fill="{color}">{kind}</text>"#, m + 10.0).unwrap();
        legend_y += 16.0;
    }
    writeln!(s, r#"<text x="{}" y="{legend_y}" font-size="12">dotted: slope 1/4, dashed: slope 1/2</text>"#, m + 10.0).unwrap();
    s.push_str("</svg>\n");
    s
}
