//! α-Mittag-Leffler functions, Hadamard fractional operators acting on
//! generalized power series, and the weighted-Poisson count distributions
//! whose normalizers are built from them.

pub mod error;
pub mod cli;
pub mod dist;
pub mod gamma;
pub mod hadamard;
pub mod quadrature;
pub mod series;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use series::{PowerSeries, SeriesOptions, SignedLogTerm, SumResult};
