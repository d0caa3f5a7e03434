//! Filter functions over finite universes.
//!
//! A filter weighs the neighbourhoods `Y` of a family by a mass function and
//! a weighting `w(E, Y)`: `F(E) = Σ m(Y)·w(E, Y)`. Belief, plausibility,
//! their k- and s-parameterized variants, rough-set approximation measures,
//! pignistic and contextual probability are all instances.
//!
//! The [`sim`] module estimates sampling distributions of these filters when
//! the mass function is estimated from multinomial pattern counts.

pub mod error;
pub mod filters;
pub mod indicators;
pub mod mass;
pub mod rough;
pub mod sim;
pub mod universe;

pub use error::{Error, Result};
pub use filters::{
    belief, belief_min, belief_plus, contextual_mass, contextual_prob, eval_filter, pignistic,
    plausibility, plausibility_k, plausibility_min, FilterSpec, NamedFilter,
};
pub use indicators::{eval_indicator, IndicatorKind, Share};
pub use mass::{
    bayesian_mass, build_mass, estimate_mass, sampling_probability, MassFunction,
    ObservationCounts, ProbabilityMeasure,
};
pub use rough::{approximate, gamma, ApproximationResult};
pub use sim::{ExperimentConfig, LabeledFilter, SamplingReport, StatsRow};
pub use universe::{
    build_algebra_from_partition, enumerate_subsets, validate_family, NeighbourhoodFamily,
    SubsetMask, Universe,
};
