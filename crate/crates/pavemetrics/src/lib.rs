//! File formats, reports, and the batch command pipeline on top of
//! [`pavemetrics_core`].
//!
//! - [`dataio`] — CSV schemas for section inventories and section-year
//!   observations, with per-row issue reporting
//! - [`commands`] — the fit / diagnose / predict / validate / summarize
//!   pipeline the `pavemetrics` binary dispatches to
//! - [`report`] — deterministic text, CSV, and JSON renderings
//! - [`synth`] — seeded synthetic datasets for demos and test helpers

pub mod commands;
pub mod dataio;
pub mod report;
pub mod synth;
