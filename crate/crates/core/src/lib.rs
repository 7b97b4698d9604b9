//! Realism-based nonlocality (RBN) and related correlation quantifiers for
//! two-qubit states, with the noise, eavesdropping and thermal sweeps
//! built on them.

pub mod channels;
pub mod correlations;
pub mod error;
pub mod matcore;
pub mod measurement;
pub mod random;
pub mod security;
pub mod states;
pub mod thermal;

pub use error::{Error, Result};

/// Library version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
