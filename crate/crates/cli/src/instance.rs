//! Plain-text instance files: one `x y C` line per point, `C` is `R` or `B`.
//! Lines starting with `#` and blank lines are skipped.

use coarseness::geom::{find_degeneracy, Degeneracy};
use coarseness::{Color, ColoredPointSet, Point};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("points {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("points {0}, {1} and {2} are collinear")]
    Collinear(usize, usize, usize),
    #[error(transparent)]
    Invalid(#[from] coarseness::Error),
}

fn parse_line(line: &str) -> Result<(Point, Color), String> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let [x, y, c] = fields[..] else {
        return Err(format!("expected `x y R|B`, found {} fields", fields.len()));
    };
    let coord = |s: &str| s.parse::<i64>().map_err(|e| format!("bad coordinate `{s}`: {e}"));
    let color = match c {
        "R" | "r" => Color::Red,
        "B" | "b" => Color::Blue,
        other => return Err(format!("bad color `{other}`")),
    };
    let p = Point::new(coord(x)?, coord(y)?);
    if !p.in_range() {
        return Err(format!("coordinate out of range: ({}, {})", p.x, p.y));
    }
    Ok((p, color))
}

pub fn parse_instance(text: &str) -> Result<ColoredPointSet, InstanceError> {
    let mut points = Vec::new();
    let mut colors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (p, c) = parse_line(line).map_err(|message| InstanceError::Syntax { line: i + 1, message })?;
        points.push(p);
        colors.push(c);
    }
    match find_degeneracy(&points) {
        Some(Degeneracy::Duplicate(a, b)) => return Err(InstanceError::Duplicate(a, b)),
        Some(Degeneracy::Collinear(a, b, c)) => return Err(InstanceError::Collinear(a, b, c)),
        None => {}
    }
    Ok(ColoredPointSet::new(points, colors)?)
}

pub fn emit_instance(ps: &ColoredPointSet) -> String {
    let mut out = format!("# {} points, {} red, {} blue\n", ps.len(), ps.red_count(), ps.blue_count());
    for (p, c) in ps.points().iter().zip(ps.colors()) {
        out.push_str(&format!("{} {} {}\n", p.x, p.y, c.letter()));
    }
    out
}
