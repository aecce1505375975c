//! Detecting a hidden periodic component of the prime-number sequence.
//!
//! The pipeline turns prime gaps into a scaled, rounded cumulative log-gap
//! sequence, encodes it as a ±1 telegraph signal, and reads the hidden
//! period off windowed autocorrelation functions. A stochastic model
//! telegraph signal with an analytic autocorrelation and a Rössler-driven
//! chaotic telegraph signal serve as references, and a twin-prime filter
//! (the K2 subsequence) provides an independent direct check at small and
//! moderate primes.

pub mod chaos;
pub mod correlation;
pub mod error;
pub mod export;
pub mod lnseq;
pub mod pipeline;
pub mod primes;
mod spectral;
pub mod telegraph;

pub use error::{Error, Result};
