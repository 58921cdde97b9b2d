//! Numerical toolkit for Bohr radii of quasiconformal harmonic mappings,
//! uniformly locally univalent functions and logarithmic power series of
//! univalent functions.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod catalog;
pub mod cli;
pub mod engine;
pub mod error;
pub mod harness;
pub mod quadrature;
pub mod radius;
pub mod roots;
pub mod series;

pub use bounds::{Family, MajorantModel};
pub use engine::{BohrCheck, Growth, HarmonicPair, Verdict};
pub use error::{BohrError, Result};
pub use radius::{Method, RadiusResult};
pub use series::{TruncatedSeries, DEFAULT_ORDER};
