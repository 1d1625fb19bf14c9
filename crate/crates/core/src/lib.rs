//! Exact computation of scattering diagrams attached to quivers.
//!
//! Two independent routes are provided and cross-checked:
//!
//! - the combinatorial route: cluster initial walls, rank-2 Kontsevich–Soibelman
//!   completion, path-ordered products in the tropical vertex group, and
//!   reconstruction of a consistent diagram from a group element;
//! - the counting route: finite-field stack counts, Harder–Narasimhan
//!   recursion, Joyce invariants extracted in a quantum torus, framed-moduli
//!   Euler numbers, and the resulting stability scattering diagram.
//!
//! Theta functions are computed both ways in [`theta`]. Brute-force
//! enumeration over tiny prime fields lives in [`oracle`] and serves as
//! ground truth for the counting route.
//!
//! All arithmetic is exact over the rationals; nothing in this crate uses
//! floating point.

pub mod counting;
pub mod error;
pub mod oracle;
pub mod quiver;
pub mod scattering;
pub mod theta;
pub mod tseries;

pub use error::{Error, Result};

/// Exact rational coefficient type used throughout.
pub type Rat = num_rational::BigRational;

/// Default truncation order for series and diagrams.
pub const DEFAULT_ORDER: u32 = 8;

pub(crate) fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

#[cfg(test)]
pub(crate) fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}
