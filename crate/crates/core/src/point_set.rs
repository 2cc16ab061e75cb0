use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{find_degeneracy, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    /// Red maps to +1, blue to -1.
    pub fn sign(self) -> i32 {
        match self {
            Color::Red => 1,
            Color::Blue => -1,
        }
    }

    pub fn flipped(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }
}

/// Bicolored point set in general position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredPointSet {
    points: Vec<Point>,
    colors: Vec<Color>,
}

impl ColoredPointSet {
    pub fn new(points: Vec<Point>, colors: Vec<Color>) -> Result<Self> {
        if points.len() != colors.len() {
            return Err(Error::LengthMismatch { points: points.len(), colors: colors.len() });
        }
        check_points(&points)?;
        Ok(ColoredPointSet { points, colors })
    }

    pub fn monochromatic(points: Vec<Point>, color: Color) -> Result<Self> {
        let colors = vec![color; points.len()];
        Self::new(points, colors)
    }

    /// Same points, new colors. The geometry was validated already.
    pub fn recolored(&self, colors: Vec<Color>) -> Result<Self> {
        if colors.len() != self.points.len() {
            return Err(Error::LengthMismatch { points: self.points.len(), colors: colors.len() });
        }
        Ok(ColoredPointSet { points: self.points.clone(), colors })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn color(&self, i: usize) -> Color {
        self.colors[i]
    }

    /// Coloring as +1 / -1 weights.
    pub fn weights(&self) -> Vec<i32> {
        self.colors.iter().map(|c| c.sign()).collect()
    }

    pub fn red_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c == Color::Red).count()
    }

    pub fn blue_count(&self) -> usize {
        self.len() - self.red_count()
    }

    /// `|r - b|`, the discrepancy of the whole set.
    pub fn imbalance(&self) -> usize {
        self.red_count().abs_diff(self.blue_count())
    }
}

/// Coordinate bound plus general position.
pub fn check_points(points: &[Point]) -> Result<()> {
    if let Some((index, p)) = points.iter().enumerate().find(|(_, p)| !p.in_range()) {
        return Err(Error::CoordinateOutOfRange { index, x: p.x, y: p.y });
    }
    match find_degeneracy(points) {
        Some(d) => Err(Error::NotGeneralPosition(d)),
        None => Ok(()),
    }
}

/// Bitmask over at most 64 point indices, used by the exhaustive routines.
pub type Mask = u64;

pub const MAX_MASK_POINTS: usize = 64;

pub fn mask_of(members: &[usize]) -> Mask {
    members.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn members_of(mask: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

pub fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}
