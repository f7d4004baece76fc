//! Exact symbolic moment calculus for Lévy processes.
//!
//! The crate builds umbrae (truncated moment sequences with polynomial
//! entries) over an exact rational coefficient field, implements the
//! auxiliary-umbra operations with dual moment/generating-function routes,
//! derives process umbrae from Lévy triplets or named processes, and
//! generates Kailath-Segall and time-space harmonic polynomials together
//! with the classical families they specialize to. A Monte Carlo module
//! cross-checks the symbolic results numerically.

pub mod combinat;
pub mod error;
pub mod kailath;
pub mod levy;
pub mod mc;
pub mod polyring;
pub mod tsh;
pub mod umbra;
pub mod verify;

pub use error::{Error, Result};

/// The default truncation order when none is configured.
pub const DEFAULT_ORDER: usize = 12;

/// Resolve the truncation order: explicit value, else the `UMBRAL_ORDER`
/// environment variable, else [`DEFAULT_ORDER`].
pub fn resolve_order(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| {
            std::env::var("UMBRAL_ORDER")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(DEFAULT_ORDER)
}
