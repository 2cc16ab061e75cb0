//! Fixtures shared by the kernel benchmarks.

use coarseness::coloring::random_coloring;
use coarseness::instances::{generate, Shape};
use coarseness::ColoredPointSet;

/// Randomly colored random-disc instance.
pub fn fixture(n: usize, seed: u64) -> ColoredPointSet {
    let points = generate(Shape::RandomDisc, n, seed, 1_000_000).expect("fixture");
    random_coloring(&points, seed).expect("fixture")
}
