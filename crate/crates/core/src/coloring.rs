//! Colorings: fair-coin, balanced, and a local search that drives the
//! maximum-discrepancy halfplane or wedge down.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::discrepancy::{
    halfplane_sweep_counted, max_disc_halfplane_indexed, max_disc_wedge_indexed, AngularIndex, HalfplaneSpot,
};
use crate::error::{Budget, Error, Result};
use crate::geom::Point;
use crate::point_set::{check_points, Color, ColoredPointSet};

pub fn random_coloring(points: &[Point], seed: u64) -> Result<ColoredPointSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let colors = points.iter().map(|_| if rng.gen::<bool>() { Color::Red } else { Color::Blue }).collect();
    ColoredPointSet::new(points.to_vec(), colors)
}

/// Uniform among colorings with `|r - b| <= 1`.
pub fn balanced_coloring(points: &[Point], seed: u64) -> Result<ColoredPointSet> {
    check_points(points)?;
    Ok(ColoredPointSet::new(points.to_vec(), balanced_colors(points.len(), seed)).expect("validated"))
}

fn balanced_colors(n: usize, seed: u64) -> Vec<Color> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let reds = (n + usize::from(n % 2 == 1 && rng.gen::<bool>())) / 2;
    let mut colors = vec![Color::Blue; n];
    for &i in &order[..reds] {
        colors[i] = Color::Red;
    }
    colors
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Objective {
    D1,
    D2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColoringSearchConfig {
    pub seed: u64,
    pub restarts: usize,
    pub max_flips: usize,
    pub objective: Objective,
    pub budget: Budget,
}

impl Default for ColoringSearchConfig {
    fn default() -> Self {
        ColoringSearchConfig { seed: 0, restarts: 1, max_flips: usize::MAX, objective: Objective::D2, budget: Budget::default() }
    }
}

/// Lexicographic search objective. `multiplicity` counts the distinct
/// maximum-discrepancy halfplane islands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjectiveKey {
    pub primary: u32,
    pub d1: u32,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringSearchResult {
    pub coloring: ColoredPointSet,
    pub objective: ObjectiveKey,
    /// Objective after each accepted flip, starting with the initial coloring.
    pub history: Vec<ObjectiveKey>,
    pub restart_seed: u64,
    pub d2: u32,
    /// `16 D_2` of the returned coloring, an upper bound on its coarseness.
    pub certified_upper: u64,
}

struct Evaluator<'a> {
    index: &'a AngularIndex,
    objective: Objective,
    keys: Vec<u64>,
}

impl Evaluator<'_> {
    /// Objective key and the points whose flip may lower it: majority-colored
    /// members of the current witnesses. `None` when some halfplane island
    /// already exceeds `cap`; since `D1 <= D2`, the key then has a primary
    /// value above `cap`.
    fn evaluate(&self, ps: &ColoredPointSet, cap: u32) -> Option<(ObjectiveKey, Vec<usize>)> {
        let w = ps.weights();
        let cap = cap.min(i32::MAX as u32) as i32;
        let (d1, multiplicity, spot) = halfplane_sweep_counted(self.index, &w, &self.keys, cap)?;
        let d1_members = match spot {
            HalfplaneSpot::Whole => (0..ps.len()).collect(),
            HalfplaneSpot::Arc { pivot, arc } => self.index.arc_members(pivot, arc),
        };
        let mut candidates = majority(ps, &d1_members);
        let primary = match self.objective {
            Objective::D1 => d1 as u32,
            Objective::D2 => {
                let best = max_disc_wedge_indexed(ps, self.index);
                candidates.extend(majority(ps, &best.witness.members));
                best.value
            }
        };
        candidates.sort_unstable();
        candidates.dedup();
        Some((ObjectiveKey { primary, d1: d1 as u32, multiplicity }, candidates))
    }
}

fn majority(ps: &ColoredPointSet, members: &[usize]) -> Vec<usize> {
    let s: i32 = members.iter().map(|&i| ps.color(i).sign()).sum();
    members.iter().copied().filter(|&i| ps.color(i).sign() * s > 0).collect()
}

fn search_once(points: &[Point], eval: &Evaluator, seed: u64, max_flips: usize) -> ColoringSearchResult {
    let mut ps = ColoredPointSet::new(points.to_vec(), balanced_colors(points.len(), seed)).expect("validated");
    let (mut key, mut candidates) = eval.evaluate(&ps, u32::MAX).expect("no cap");
    let mut history = vec![key];
    let mut flips = 0;
    'search: while flips < max_flips {
        // Witness points first; the rest can only lower the tie-breakers.
        let rest = (0..points.len()).filter(|i| candidates.binary_search(i).is_err());
        let order: Vec<usize> = candidates.iter().copied().chain(rest).collect();
        for i in order {
            let mut colors = ps.colors().to_vec();
            colors[i] = colors[i].flipped();
            let next = ps.recolored(colors).expect("same length");
            let Some((k, c)) = eval.evaluate(&next, key.primary) else {
                continue;
            };
            if k < key {
                ps = next;
                key = k;
                candidates = c;
                history.push(k);
                flips += 1;
                continue 'search;
            }
        }
        break;
    }
    let d2 = match eval.objective {
        Objective::D2 => key.primary,
        Objective::D1 => max_disc_wedge_indexed(&ps, eval.index).value,
    };
    ColoringSearchResult { coloring: ps, objective: key, history, restart_seed: seed, d2, certified_upper: 16 * d2 as u64 }
}

/// Local search from balanced colorings: accept the first improving single
/// flip, trying majority-colored witness points before all other points, each
/// group in index order, until no flip improves or `max_flips` is reached. Restart `i` starts from
/// `balanced_coloring(points, seed + i)`; the best restart by
/// `(objective, restart)` wins.
pub fn minimize_coarseness_coloring(points: &[Point], config: &ColoringSearchConfig) -> Result<ColoringSearchResult> {
    if config.restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be at least 1".into()));
    }
    check_points(points)?;
    let n = points.len() as u128;
    let per_eval = match config.objective {
        Objective::D1 => n * n,
        Objective::D2 => n * n * n,
    };
    config.budget.charge(per_eval)?;
    let index = AngularIndex::new(points);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0a2_5e4e_55);
    let eval = Evaluator { index: &index, objective: config.objective, keys: (0..points.len()).map(|_| rng.gen()).collect() };
    let runs: Vec<ColoringSearchResult> = (0..config.restarts as u64)
        .into_par_iter()
        .map(|r| search_once(points, &eval, config.seed.wrapping_add(r), config.max_flips))
        .collect();
    Ok(runs.into_iter().min_by_key(|r| r.objective).expect("restarts >= 1"))
}

/// `D_1` of a coloring, reusing a prebuilt index.
pub fn d1_of(ps: &ColoredPointSet, index: &AngularIndex) -> u32 {
    max_disc_halfplane_indexed(ps, index).value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrepancy::{max_disc_halfplane, max_disc_wedge};
    use crate::instances::{generate, Shape, DEFAULT_SPAN};

    fn pts(n: usize) -> Vec<Point> {
        generate(Shape::RandomDisc, n, 11, DEFAULT_SPAN).unwrap()
    }

    #[test]
    fn random_is_reproducible() {
        let p = pts(100);
        assert_eq!(random_coloring(&p, 5).unwrap(), random_coloring(&p, 5).unwrap());
        let a = random_coloring(&p, 5).unwrap();
        assert_eq!(a.red_count() + a.blue_count(), 100);
        let distinct: std::collections::HashSet<Vec<Color>> =
            (0..10).map(|s| random_coloring(&p, s).unwrap().colors().to_vec()).collect();
        assert_eq!(distinct.len(), 10);
    }

    #[test]
    fn balanced_counts() {
        let four = balanced_coloring(&pts(4), 1).unwrap();
        assert_eq!((four.red_count(), four.blue_count()), (2, 2));
        for seed in 0..10 {
            assert_eq!(balanced_coloring(&pts(5), seed).unwrap().imbalance(), 1);
        }
        assert_eq!(balanced_coloring(&pts(9), 3).unwrap(), balanced_coloring(&pts(9), 3).unwrap());
        let bad = vec![Point::new(0, 0), Point::new(1, 1), Point::new(2, 2)];
        assert!(balanced_coloring(&bad, 0).is_err());
        assert!(random_coloring(&bad, 0).is_err());
    }

    #[test]
    fn two_points_reach_the_minimum() {
        let p = vec![Point::new(0, 0), Point::new(3, 1)];
        let cfg = ColoringSearchConfig { objective: Objective::D1, ..Default::default() };
        let r = minimize_coarseness_coloring(&p, &cfg).unwrap();
        assert_eq!(max_disc_halfplane(&r.coloring).value, 1);
    }

    #[test]
    fn square_matches_exhaustive_minimum() {
        let p: Vec<Point> = vec![Point::new(0, 0), Point::new(1, 0), Point::new(0, 1), Point::new(1, 1)];
        let best = (0u32..16)
            .map(|m| {
                let colors = (0..4).map(|i| if m >> i & 1 == 1 { Color::Red } else { Color::Blue }).collect();
                max_disc_wedge(&ColoredPointSet::new(p.clone(), colors).unwrap()).value
            })
            .min()
            .unwrap();
        assert_eq!(best, 2);
        let r = minimize_coarseness_coloring(&p, &ColoringSearchConfig { restarts: 4, ..Default::default() }).unwrap();
        assert!(r.d2 <= 2);
        assert_eq!(r.certified_upper, 16 * r.d2 as u64);
    }

    #[test]
    fn steps_strictly_decrease_and_are_deterministic() {
        let p = pts(30);
        let cfg = ColoringSearchConfig { seed: 9, restarts: 3, max_flips: 50, objective: Objective::D2, ..Default::default() };
        let a = minimize_coarseness_coloring(&p, &cfg).unwrap();
        assert!(a.history.windows(2).all(|w| w[1] < w[0]));
        assert!(a.history.len() <= 51);
        assert_eq!(a, minimize_coarseness_coloring(&p, &cfg).unwrap());
        assert_eq!(max_disc_wedge(&a.coloring).value, a.d2);
    }

    #[test]
    fn config_validation() {
        let cfg = ColoringSearchConfig { restarts: 0, ..Default::default() };
        assert!(minimize_coarseness_coloring(&pts(5), &cfg).is_err());
        let cfg = ColoringSearchConfig { budget: Budget::new(100), ..Default::default() };
        assert!(matches!(minimize_coarseness_coloring(&pts(50), &cfg), Err(Error::BudgetExceeded { .. })));
    }
}
