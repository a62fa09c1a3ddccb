//! Numerical and exact machinery for recovering Hadamard expansion
//! coefficients of wave-type operators from their Green's operators.

pub mod cx;
pub mod dd;
pub mod error;
pub mod gamma;
pub mod jet;
pub mod quad;

pub use cx::Cx;
pub use dd::Dd;
pub use error::{HlError, Result};
pub mod mellin;
pub mod precision;
pub mod profile;
pub mod exact;
pub mod fit;
pub mod geometry;
pub mod transport;
pub mod greens;
