//! Scar functions of quantized cat maps on the torus, their discrete
//! Weyl-Wigner symbols, and the semiclassical hyperbolic-fringe
//! approximation near an unstable periodic point.

pub mod classical;
pub mod compare;
pub mod config;
pub mod error;
pub mod io;
pub mod pipeline;
pub mod quantum;
pub mod semiclassical;
pub mod wigner;

pub use error::{Error, Result};
