//! Argument parsing and subcommand execution.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coarseness::coloring::{
    balanced_coloring, minimize_coarseness_coloring, random_coloring, ColoringSearchConfig, Objective,
};
use coarseness::geom::in_convex_position;
use coarseness::instances::{generate, Shape, DEFAULT_SPAN};
use coarseness::islands::members_inside;
use coarseness::partitions::{partition_disc, PartitionLimit};
use coarseness::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::blocks::parse_blocks;
use crate::experiment::{loglog_slope, median_d2, run_scaling_experiment, write_csv, Kind, ScalingConfig};
use crate::instance::{emit_instance, parse_instance, InstanceError};
use crate::report::{DkValue, ReportRecord, ShatterRecord};
use crate::svg::{instance_svg, scaling_svg};

#[derive(Debug, Parser)]
#[command(name = "coarseness", version, about = "Coarseness of two-colored planar point sets")]
pub struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Work limit for exhaustive routines, in membership checks
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    /// Largest instance accepted by exhaustive partition enumeration
    #[arg(long, global = true)]
    pub max_points: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Instance file; stdin when omitted
    pub input: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InitialColoring {
    Random,
    Balanced,
    Red,
    Blue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ColorMode {
    Random,
    Balanced,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    D1,
    D2,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::D1 => Objective::D1,
            ObjectiveArg::D2 => Objective::D2,
        }
    }
}

fn parse_shape(s: &str) -> Result<Shape, String> {
    s.parse().map_err(|e: coarseness::Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance file
    Gen {
        /// grid, random-disc or convex-gon
        #[arg(value_parser = parse_shape)]
        shape: Shape,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coordinates lie within [-span, span]
        #[arg(long, default_value_t = DEFAULT_SPAN)]
        span: i64,
        #[arg(long, value_enum, default_value_t = InitialColoring::Random)]
        coloring: InitialColoring,
    },
    /// Discrepancy |r - b| of the whole set
    Disc(Input),
    /// Maximum discrepancy over halfplanes
    D1(Input),
    /// Maximum discrepancy over intersections of two halfplanes
    D2(Input),
    /// Maximum discrepancy over k-separable islands, by enumeration
    Dk {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Exact coarseness by enumerating convex partitions
    CoarseExact(Input),
    /// Coarseness bounds from the best 2-separable island
    CoarseApprox(Input),
    /// Recolor the points
    Color {
        #[arg(long, value_enum)]
        mode: ColorMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::D2)]
        objective: ObjectiveArg,
        #[arg(long, default_value_t = 1)]
        restarts: usize,
        #[arg(long)]
        max_flips: Option<usize>,
        /// Also write the recolored instance here
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        input: Input,
    },
    /// Validate a convex partition given as index blocks
    CheckPartition {
        #[arg(long)]
        blocks: PathBuf,
        #[command(flatten)]
        input: Input,
    },
    /// Count the classes induced by m random k-separable islands
    Shatter {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        input: Input,
    },
    /// Batch experiments
    #[command(subcommand)]
    Experiment(Experiment),
    /// Draw the instance with its best wedge and witness partition
    Svg {
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Debug, Subcommand)]
pub enum Experiment {
    /// D1 and D2 of random, balanced and optimized colorings as n grows
    Scaling(ScalingArgs),
}

#[derive(Debug, Args)]
pub struct ScalingArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub seeds: Vec<u64>,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::D2)]
    pub objective: ObjectiveArg,
    #[arg(long, default_value_t = 1)]
    pub restarts: usize,
    #[arg(long)]
    pub max_flips: Option<usize>,
    #[arg(long, value_parser = parse_shape, default_value = "grid")]
    pub shape: Shape,
    #[arg(long, default_value_t = DEFAULT_SPAN)]
    pub span: i64,
    /// Add all-red rows
    #[arg(long)]
    pub with_control: bool,
    /// Write rows here instead of stdout
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write the log-log plot here
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Budget(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<coarseness::Error> for CliError {
    fn from(e: coarseness::Error) -> Self {
        match e {
            coarseness::Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<InstanceError> for CliError {
    fn from(e: InstanceError) -> Self {
        match e {
            InstanceError::Invalid(inner) => inner.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

struct Settings {
    budget: Budget,
    limit: PartitionLimit,
}

fn read_input(input: &Input) -> Result<ColoredPointSet, CliError> {
    let text = match &input.input {
        Some(path) => read_file(path)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(parse_instance(&text)?)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn base(command: &str, ps: &ColoredPointSet) -> ReportRecord {
    ReportRecord {
        command: command.into(),
        n: ps.len(),
        r: ps.red_count(),
        b: ps.blue_count(),
        disc: ps.imbalance() as u32,
        ..Default::default()
    }
}

fn colors_string(ps: &ColoredPointSet) -> String {
    ps.colors().iter().map(|c| c.letter()).collect()
}

/// Runs a parsed command line and returns what goes to stdout.
pub fn run(cli: Cli) -> Result<String, CliError> {
    let settings = Settings {
        budget: cli.budget.map(Budget::new).unwrap_or_default(),
        limit: cli.max_points.map(|max_points| PartitionLimit { max_points }).unwrap_or_default(),
    };
    match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Validation(e.to_string()))?
            .install(|| execute(cli.command, &settings)),
        None => execute(cli.command, &settings),
    }
}

fn execute(command: Command, settings: &Settings) -> Result<String, CliError> {
    let start = Instant::now();
    let mut rec = match command {
        Command::Gen { shape, n, seed, span, coloring } => {
            if n == 0 {
                return Err(CliError::Validation("n must be at least 1".into()));
            }
            let points = generate(shape, n, seed, span)?;
            let ps = match coloring {
                InitialColoring::Random => random_coloring(&points, seed)?,
                InitialColoring::Balanced => balanced_coloring(&points, seed)?,
                InitialColoring::Red => ColoredPointSet::monochromatic(points, Color::Red)?,
                InitialColoring::Blue => ColoredPointSet::monochromatic(points, Color::Blue)?,
            };
            return Ok(emit_instance(&ps));
        }
        Command::Experiment(Experiment::Scaling(args)) => return scaling(args, settings),
        Command::Disc(input) => base("disc", &read_input(&input)?),
        Command::D1(input) => {
            let ps = read_input(&input)?;
            let best = max_disc_halfplane(&ps);
            ReportRecord {
                d1: Some(best.value),
                witness_island: Some(best.witness.members),
                certificate: Some(best.witness.certificate),
                ..base("d1", &ps)
            }
        }
        Command::D2(input) => {
            let ps = read_input(&input)?;
            let best = max_disc_wedge(&ps);
            ReportRecord {
                d2: Some(best.value),
                witness_island: Some(best.witness.members),
                certificate: Some(best.witness.certificate),
                ..base("d2", &ps)
            }
        }
        Command::Dk { k, input } => {
            let ps = read_input(&input)?;
            let best = max_disc_k(&ps, k, &settings.budget)?;
            ReportRecord {
                dk: Some(DkValue { k, value: best.value }),
                witness_island: Some(best.witness.members),
                certificate: Some(best.witness.certificate),
                ..base("dk", &ps)
            }
        }
        Command::CoarseExact(input) => {
            let ps = read_input(&input)?;
            let best = exact_coarseness(&ps, &settings.limit)?;
            ReportRecord {
                coarseness: Some(best.value),
                partitions_examined: Some(best.partitions_examined),
                witness: Some(best.witness.block_members()),
                witness_disc: Some(best.value),
                ..base("coarse-exact", &ps)
            }
        }
        Command::CoarseApprox(input) => approx_report("coarse-approx", &read_input(&input)?)?,
        Command::Svg { out, input } => {
            let ps = read_input(&input)?;
            let rec = approx_report("svg", &ps)?;
            let svg = instance_svg(&ps, rec.witness.as_deref().unwrap_or(&[]), rec.certificate.as_deref().unwrap_or(&[]));
            fs::write(&out, svg)?;
            rec
        }
        Command::Color { mode, seed, objective, restarts, max_flips, out, input } => {
            let ps = read_input(&input)?;
            let (recolored, d2) = match mode {
                ColorMode::Random => (random_coloring(ps.points(), seed)?, None),
                ColorMode::Balanced => (balanced_coloring(ps.points(), seed)?, None),
                ColorMode::Minimize => {
                    let config = ColoringSearchConfig {
                        seed,
                        restarts,
                        max_flips: max_flips.unwrap_or(usize::MAX),
                        objective: objective.into(),
                        budget: settings.budget,
                    };
                    let found = minimize_coarseness_coloring(ps.points(), &config)?;
                    (found.coloring, Some(found.d2))
                }
            };
            if let Some(path) = out {
                fs::write(path, emit_instance(&recolored))?;
            }
            let d2 = d2.unwrap_or_else(|| max_disc_wedge(&recolored).value);
            ReportRecord {
                d1: Some(max_disc_halfplane(&recolored).value),
                d2: Some(d2),
                upper: Some(16 * d2 as u64),
                colors: Some(colors_string(&recolored)),
                ..base("color", &recolored)
            }
        }
        Command::CheckPartition { blocks, input } => {
            let ps = read_input(&input)?;
            let blocks = parse_blocks(&read_file(&blocks)?).map_err(CliError::Validation)?;
            let mut rec = base("check-partition", &ps);
            match validate_partition(&ps, &blocks) {
                Ok(pi) => {
                    rec.valid = Some(true);
                    rec.witness_disc = Some(partition_disc(&ps, &pi));
                }
                Err(v) => {
                    rec.valid = Some(false);
                    rec.violation = Some(v);
                }
            }
            rec.witness = Some(blocks);
            rec
        }
        Command::Shatter { k, m, seed, input } => {
            let ps = read_input(&input)?;
            let family = random_family(&ps, k, m, seed)?;
            let count = shatter_classes(&ps, &family);
            ReportRecord {
                shatter: Some(ShatterRecord {
                    k,
                    m,
                    classes: count.classes,
                    convex_bound: 4 * k * m,
                    general_bound: (k * k + 4 * k) * m * m,
                    convex_position: in_convex_position(ps.points()),
                }),
                ..base("shatter", &ps)
            }
        }
    };
    rec.timing_ms = start.elapsed().as_millis() as u64;
    Ok(rec.to_json())
}

fn approx_report(command: &str, ps: &ColoredPointSet) -> Result<ReportRecord, CliError> {
    let bounds = approximate_coarseness(ps)?;
    Ok(ReportRecord {
        d2: Some(bounds.d2),
        lower: Some(bounds.lower.into()),
        upper: Some(bounds.upper),
        witness: Some(bounds.witness.block_members()),
        witness_disc: Some(bounds.witness_disc),
        witness_island: Some(bounds.d2_witness.members),
        certificate: Some(bounds.d2_witness.certificate),
        ..base(command, ps)
    })
}

/// `m` islands, each cut out by `k` halfplanes drawn from the canonical
/// family. A draw that would empty the island is retried a few times.
pub fn random_family(ps: &ColoredPointSet, k: usize, m: usize, seed: u64) -> Result<Vec<Island>, CliError> {
    if k == 0 {
        return Err(CliError::Validation("k must be at least 1".into()));
    }
    let candidates = canonical_halfplanes(ps);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut family = Vec::with_capacity(m);
    for _ in 0..m {
        let mut hs: Vec<Halfplane> = Vec::with_capacity(k);
        for _ in 0..k {
            let mut pick = candidates[rng.gen_range(0..candidates.len())];
            for _ in 0..16 {
                hs.push(pick);
                let nonempty = !members_inside(ps, &hs).is_empty();
                hs.pop();
                if nonempty {
                    break;
                }
                pick = candidates[rng.gen_range(0..candidates.len())];
            }
            hs.push(pick);
        }
        family.push(island_from_halfplanes(ps, &hs)?);
    }
    Ok(family)
}

fn scaling(args: ScalingArgs, settings: &Settings) -> Result<String, CliError> {
    if args.restarts == 0 {
        return Err(CliError::Validation("restarts must be at least 1".into()));
    }
    let mut kinds = vec![Kind::Random, Kind::Balanced, Kind::Optimized];
    if args.with_control {
        kinds.push(Kind::Monochrome);
    }
    let cfg = ScalingConfig {
        shape: args.shape,
        span: args.span,
        sizes: args.sizes,
        seeds: args.seeds,
        kinds,
        objective: args.objective.into(),
        restarts: args.restarts,
        max_flips: args.max_flips.unwrap_or(usize::MAX),
        budget: settings.budget,
    };
    let rows = run_scaling_experiment(&cfg);
    if let Some(path) = &args.svg {
        fs::write(path, scaling_svg(&rows))?;
    }
    let mut csv = Vec::new();
    write_csv(&rows, &mut csv).map_err(|e| CliError::Io(std::io::Error::other(e)))?;
    match &args.csv {
        None => Ok(String::from_utf8(csv).expect("csv is utf-8")),
        Some(path) => {
            fs::write(path, csv)?;
            let mut summary = String::new();
            for kind in &cfg.kinds {
                let slope = loglog_slope(&median_d2(&rows, *kind));
                let slope = slope.map_or("n/a".to_string(), |s| format!("{s:.3}"));
                summary.push_str(&format!("{kind}: log-log slope of median d2 = {slope}\n"));
            }
            Ok(summary)
        }
    }
}
