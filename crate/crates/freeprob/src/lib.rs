//! Exact combinatorics and analysis for classical and free probability:
//! partition lattices, moment/cumulant calculus, R- and S-transforms,
//! limit laws, Weingarten integration over easy groups and spectral series
//! of rooted bipartite graphs.
//!
//! The series, cumulant and matrix engines are generic over [`Scalar`]
//! (`f32`, `f64` and exact [`Rational`]); Weingarten and graph computations
//! are exact only.

pub mod cumulants;
pub mod error;
pub mod exactcount;
pub mod graphs;
pub mod laws;
pub mod matrix;
pub mod partitions;
pub mod scalar;
pub mod series;
pub mod transforms;
pub mod weingarten;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};

pub type ExactSeries = series::FormalSeries<Rational>;
pub type Series64 = series::FormalSeries<f64>;
pub type Series32 = series::FormalSeries<f32>;
pub type ExactMoments = cumulants::MomentSequence<Rational>;
pub type Moments64 = cumulants::MomentSequence<f64>;
pub type ExactCumulants = cumulants::CumulantSequence<Rational>;
pub type Cumulants64 = cumulants::CumulantSequence<f64>;
pub type ExactMatrix = matrix::Matrix<Rational>;
pub type Matrix64 = matrix::Matrix<f64>;
