//! Desk-scale machinery for weak containment and sofic entropy of finite
//! measure-preserving actions.
//!
//! The crate is organised bottom-up:
//!
//! - [`words`]: reduced free-group words, permutations and finite actions.
//! - [`partition`] and [`stats`]: ordered partitions (finite or cylinder),
//!   joins, translates and exact statistics vectors.
//! - [`model`]: the measure models statistics can be computed on (finite
//!   actions, tower levels, Bernoulli shifts).
//! - [`distance`]: the inner/outer weak-containment pseudo-metrics with
//!   exhaustive and local-search strategies.
//! - [`hom`] and [`entropy`]: approximate homomorphism counting and
//!   entropy grids.
//! - [`tower`]: towers of finite quotients, sofic approximations and
//!   convergence reports.
//! - [`format`]: the text file formats for actions, partitions and towers.
//!
//! All statistics are exact rationals; only entropies are floating point.

pub mod distance;
pub mod entropy;
pub mod error;
pub mod format;
pub mod hom;
pub mod model;
pub mod partition;
pub mod rational;
pub mod stats;
pub mod tower;
pub mod words;

pub use distance::{
    containment_verdict, d_inf, d_sup, d_sym, normalize_words, ContainmentVerdict, DistanceReport,
    SearchMode, SearchStrategy, SymmetricReport, DEFAULT_BUDGET,
};
pub use entropy::{
    entropy_grid, entropy_point, entropy_value, genprof_bound, genprof_level, genprof_partition,
    EntropyReport, GenprofResult,
};
pub use error::{Error, Result};
pub use hom::{count_homs, is_hom, CountMethod, CountValue, HomAssignment, HomCountReport, HomProblem};
pub use model::{BernoulliShift, MeasureModel};
pub use partition::{block_measures, generated_partition, translate, CylinderPartition, IndexedPartition};
pub use rational::Rational;
pub use stats::{shannon_entropy, stats, stats_l1, StatsVector};
pub use tower::{
    diagonal_product, odometer_tower, pullback_partition, random_sofic, tower_convergence, validate_sofic,
    SoficApproximation, Tower,
};
pub use words::{FiniteAction, GroupWord, Letter, Permutation};
