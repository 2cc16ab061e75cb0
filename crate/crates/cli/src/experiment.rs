//! Scaling runs: D1 and D2 of random, balanced and locally optimized
//! colorings over a grid of sizes and seeds.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use coarseness::coloring::{
    balanced_coloring, minimize_coarseness_coloring, random_coloring, ColoringSearchConfig, Objective,
};
use coarseness::discrepancy::{max_disc_halfplane_indexed, max_disc_wedge_indexed};
use coarseness::instances::{generate, Shape, DEFAULT_SPAN};
use coarseness::{AngularIndex, Budget, Color, ColoredPointSet, Error, Point};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Random,
    Balanced,
    Optimized,
    Monochrome,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::Random, Kind::Balanced, Kind::Optimized, Kind::Monochrome];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Random => "random",
            Kind::Balanced => "balanced",
            Kind::Optimized => "optimized",
            Kind::Monochrome => "monochrome",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Kind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown coloring kind `{s}`"))
    }
}

#[derive(Clone, Debug)]
pub struct ScalingConfig {
    pub shape: Shape,
    pub span: i64,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub kinds: Vec<Kind>,
    pub objective: Objective,
    pub restarts: usize,
    pub max_flips: usize,
    pub budget: Budget,
}

impl Default for ScalingConfig {
    fn default() -> Self {
        ScalingConfig {
            shape: Shape::Grid,
            span: DEFAULT_SPAN,
            sizes: vec![64],
            seeds: vec![1],
            kinds: vec![Kind::Random, Kind::Balanced, Kind::Optimized],
            objective: Objective::D2,
            restarts: 1,
            max_flips: usize::MAX,
            budget: Budget::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n: usize,
    pub seed: u64,
    pub kind: Kind,
    pub d1: Option<u32>,
    pub d2: Option<u32>,
    pub certified_upper: Option<u64>,
    pub elapsed_ms: u64,
    /// `ok`, `budget-exceeded` or an error message.
    pub status: String,
}

/// The coloring, and its D2 when the search already computed it.
fn color(points: &[Point], kind: Kind, seed: u64, cfg: &ScalingConfig) -> coarseness::Result<(ColoredPointSet, Option<u32>)> {
    match kind {
        Kind::Random => random_coloring(points, seed).map(|ps| (ps, None)),
        Kind::Balanced => balanced_coloring(points, seed).map(|ps| (ps, None)),
        Kind::Monochrome => ColoredPointSet::monochromatic(points.to_vec(), Color::Red).map(|ps| (ps, None)),
        Kind::Optimized => {
            let search = ColoringSearchConfig {
                seed,
                restarts: cfg.restarts,
                max_flips: cfg.max_flips,
                objective: cfg.objective,
                budget: cfg.budget,
            };
            minimize_coarseness_coloring(points, &search).map(|r| (r.coloring, Some(r.d2)))
        }
    }
}

fn measure(points: &[Point], index: &AngularIndex, kind: Kind, seed: u64, cfg: &ScalingConfig) -> coarseness::Result<(u32, u32)> {
    let n = points.len() as u128;
    cfg.budget.charge(n * n * n)?;
    let (ps, d2) = color(points, kind, seed, cfg)?;
    let d2 = d2.unwrap_or_else(|| max_disc_wedge_indexed(&ps, index).value);
    Ok((max_disc_halfplane_indexed(&ps, index).value, d2))
}

fn run_row(n: usize, seed: u64, kind: Kind, cfg: &ScalingConfig) -> ScalingRow {
    let start = Instant::now();
    let result = generate(cfg.shape, n, seed, cfg.span).and_then(|points| {
        let index = AngularIndex::new(&points);
        measure(&points, &index, kind, seed, cfg)
    });
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let mut row = ScalingRow { n, seed, kind, d1: None, d2: None, certified_upper: None, elapsed_ms, status: "ok".into() };
    match result {
        Ok((d1, d2)) => {
            row.d1 = Some(d1);
            row.d2 = Some(d2);
            row.certified_upper = Some(16 * d2 as u64);
        }
        Err(Error::BudgetExceeded { .. }) => row.status = "budget-exceeded".into(),
        Err(e) => row.status = e.to_string(),
    }
    row
}

/// One row per (size, seed, kind), sorted by that triple.
pub fn run_scaling_experiment(cfg: &ScalingConfig) -> Vec<ScalingRow> {
    let mut jobs = Vec::new();
    for &n in &cfg.sizes {
        for &seed in &cfg.seeds {
            for &kind in &cfg.kinds {
                jobs.push((n, seed, kind));
            }
        }
    }
    jobs.sort();
    jobs.dedup();
    jobs.into_par_iter().map(|(n, seed, kind)| run_row(n, seed, kind, cfg)).collect()
}

pub fn write_csv<W: std::io::Write>(rows: &[ScalingRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> csv::Result<Vec<ScalingRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 { values[mid] } else { (values[mid - 1] + values[mid]) / 2.0 })
}

/// Median D2 per size for one coloring kind, skipping failed rows.
pub fn median_d2(rows: &[ScalingRow], kind: Kind) -> Vec<(usize, f64)> {
    let mut by_n: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for row in rows.iter().filter(|r| r.kind == kind) {
        if let Some(d2) = row.d2 {
            by_n.entry(row.n).or_default().push(d2 as f64);
        }
    }
    by_n.into_iter().filter_map(|(n, mut v)| median(&mut v).map(|m| (n, m))).collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(series: &[(usize, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        series.iter().filter(|&&(x, y)| x > 0 && y > 0.0).map(|&(x, y)| ((x as f64).ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_row_per_kind() {
        let cfg = ScalingConfig { sizes: vec![16], seeds: vec![1, 2], ..Default::default() };
        let rows = run_scaling_experiment(&cfg);
        assert_eq!(rows.len(), 6);
        assert!(rows.windows(2).all(|w| (w[0].n, w[0].seed, w[0].kind) < (w[1].n, w[1].seed, w[1].kind)));
        assert!(rows.iter().all(|r| r.status == "ok" && r.d1 <= r.d2));
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("n,seed,kind,d1,d2,certified_upper,elapsed_ms,status\n"));
        assert_eq!(read_csv(&buf[..]).unwrap(), rows);
    }

    #[test]
    fn monochrome_control() {
        let cfg = ScalingConfig { sizes: vec![20], kinds: vec![Kind::Monochrome], ..Default::default() };
        let rows = run_scaling_experiment(&cfg);
        assert_eq!((rows[0].d1, rows[0].d2), (Some(20), Some(20)));
    }

    #[test]
    fn budget_failures_are_recorded() {
        let cfg = ScalingConfig { sizes: vec![8, 40], budget: Budget::new(1000), ..Default::default() };
        let rows = run_scaling_experiment(&cfg);
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().filter(|r| r.n == 40).all(|r| r.status == "budget-exceeded" && r.d2.is_none()));
        assert!(rows.iter().filter(|r| r.n == 8).all(|r| r.status == "ok"));
    }

    #[test]
    fn slope_of_power_law() {
        let series: Vec<(usize, f64)> = [4usize, 16, 64].iter().map(|&n| (n, (n as f64).sqrt() * 3.0)).collect();
        assert!((loglog_slope(&series).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(loglog_slope(&series[..1]), None);
        let rows = vec![
            ScalingRow { n: 4, seed: 1, kind: Kind::Random, d1: Some(1), d2: Some(3), certified_upper: Some(48), elapsed_ms: 0, status: "ok".into() },
            ScalingRow { n: 4, seed: 2, kind: Kind::Random, d1: Some(1), d2: Some(5), certified_upper: Some(80), elapsed_ms: 0, status: "ok".into() },
        ];
        assert_eq!(median_d2(&rows, Kind::Random), vec![(4, 4.0)]);
    }
}
