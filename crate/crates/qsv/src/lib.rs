//! Exact truncated q-series engine with an identity verifier.

pub mod error;
pub mod series;
pub mod hecke;
pub mod theta;
pub mod appell;
pub mod registry;

pub use error::{QsvError, Result};
pub use series::{Comparison, Exponent, FirstDifference, GaussianRational, QZSeries, Unit};
