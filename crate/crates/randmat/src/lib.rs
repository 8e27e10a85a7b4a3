//! Seeded Monte Carlo for Gaussian, Wigner, Wishart and block-modified
//! Wishart ensembles.
//!
//! Every trial draws from its own ChaCha8 stream: the generator is seeded
//! with `seed_from_u64(master)` and then switched to stream `trial`, so a
//! trial's output depends only on `(master, trial)` and trials can run in
//! any order on any thread.

pub mod empirical;
pub mod ensemble;
pub mod rng;

pub use empirical::{
    abab_moment, empirical_moments, empirical_spectrum, permutation_fixed_point_moments, spectrum_sample,
    MomentEstimate, MomentRequest, SpectrumSample,
};
pub use ensemble::{block_modify, eigenvalues, sample, sample_trial, BlockMap, BlockScale, EnsembleSpec, CMatrix, MAX_DIMENSION};
pub use rng::{trial_rng, GaussianSource};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("matrix of size {size} is not a {d}x{d} array of {n}x{n} blocks")]
    BadDivisibility { size: usize, d: usize, n: usize },
    #[error("{0} is not self-adjoint; use colored words")]
    NotSelfAdjoint(String),
    #[error("dimension {size} exceeds the configured cap {cap}")]
    TooLarge { size: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
