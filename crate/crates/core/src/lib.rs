//! k-regret subset selection under multiplicative utility functions.
//!
//! The crate selects `k` representative points from a dataset so that users
//! with any utility function from a family (MUF, Cobb-Douglas, CES) lose
//! little by choosing from the subset instead of the whole dataset. The
//! main selectors are [`selector::minvar`] and [`selector::rf_minvar`];
//! [`bounds`] gives the matching worst-case regret-ratio guarantees.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`). The
//! aliases at the crate root fix the scalar type.

pub mod bounds;
pub mod datagen;
pub mod dataset;
mod error;
pub mod partition;
mod scalar;
pub mod selector;
pub mod utility;

pub use dataset::{dominates, normalize, scale_dimension, skyline, Dataset, Point, PointId};
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use selector::{AnswerSet, Provenance};

pub type Dataset64 = dataset::Dataset<f64>;
pub type Dataset32 = dataset::Dataset<f32>;
pub type Utility64 = utility::UtilityFunction<f64>;
pub type Utility32 = utility::UtilityFunction<f32>;
pub type RegretReport64 = utility::RegretReport<f64>;
pub type RegretReport32 = utility::RegretReport<f32>;
pub type IntervalSet64 = partition::IntervalSet<f64>;
pub type IntervalSet32 = partition::IntervalSet<f32>;
pub type BoundReport64 = bounds::BoundReport<f64>;
