//! Pavement performance modeling toolkit: index algebra, a least-squares
//! regression engine with inference and collinearity diagnostics, and the
//! registry of the eight published South Carolina evaluation models.
//!
//! The crate is `no_std`-compatible (`alloc` required). Disable the default
//! `std` feature for embedded or wasm targets; behavior is identical because
//! all transcendental math goes through [`libm`] in every configuration.
//!
//! # Modules
//!
//! - [`indices`] — PSI/PDI/PQI/IRI conversions and the free-flow-speed formulas
//! - [`stats`] — descriptive statistics, Pearson correlation, OLS with full
//!   inference, standardized coefficients, VIF, paired t-tests
//! - [`dist`] — Student t and F distribution functions via the regularized
//!   incomplete beta function
//! - [`registry`] — the eight published models with validity envelopes and
//!   prediction with extrapolation warnings

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod dist;
pub mod error;
pub mod indices;
mod linalg;
pub mod registry;
pub mod stats;

pub use error::{Error, Result};
pub use indices::Indicator;
pub use registry::{PavementType, SoilType};
