//! Coarseness of two-colored planar point sets.
//!
//! A subset `I` of a colored point set `S` is an *island* when `I = C ∩ S`
//! for some convex `C`. A *convex partition* splits `S` into islands with
//! pairwise disjoint hulls; its discrepancy is the smallest `|#red - #blue|`
//! over its blocks, and the *coarseness* `C(S)` is the largest such value over
//! all convex partitions.
//!
//! The crate provides
//! - exact predicates and hulls on integer points ([`geom`]),
//! - halfplane certificates and k-separable islands ([`islands`]),
//! - maximum-discrepancy halfplanes and wedges `D_1`, `D_2` and exhaustive
//!   `D_k` ([`discrepancy`]),
//! - convex partition enumeration, exact coarseness and the constructive
//!   partitions behind the wedge bound ([`partitions`]),
//! - the certified sandwich `max{D_2/8, D_2/4 - |r-b|} <= C(S) <= 16 D_2`
//!   ([`approx`]),
//! - coloring generators and a local search for low-coarseness colorings
//!   ([`coloring`]), and instance generators ([`instances`]).

#![forbid(unsafe_code)]

pub mod approx;
pub mod coloring;
pub mod discrepancy;
pub mod error;
pub mod geom;
pub mod instances;
pub mod islands;
pub mod partitions;
pub mod point_set;

pub use approx::{approximate_coarseness, CoarsenessBounds};
pub use discrepancy::{
    disc, max_disc_halfplane, max_disc_k, max_disc_wedge, shatter_classes, AngularIndex, MaxDiscResult, ShatterCount,
};
pub use error::{Budget, Error, Result};
pub use geom::{convex_hull, hulls_disjoint, in_general_position, orientation, ConvexPolygon, Orientation, Point};
pub use islands::{
    canonical_halfplanes, enumerate_islands, island_from_halfplanes, separability_number, Halfplane, Island,
};
pub use partitions::{exact_coarseness, validate_partition, CoarsenessResult, ConvexPartition, PartitionViolation};
pub use point_set::{Color, ColoredPointSet};
