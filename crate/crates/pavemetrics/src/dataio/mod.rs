//! Ingestion, validation, and summarization of section inventories and
//! section-year observations.
//!
//! Both input files are comma-delimited UTF-8 with a mandatory header row;
//! column order is free but names are fixed (see the README for the full
//! schemas). Loading is lossless-or-reported: every input row either
//! becomes a record or produces exactly one error-severity issue carrying
//! its line number. Warning-severity issues annotate accepted rows and
//! never reject them.

mod date;
mod load;
mod summary;

pub use date::IsoDate;
pub use load::{
    load_observations, load_predictor_inputs, load_sections, parse_pavement_type, parse_soil_type,
    write_observations, write_sections,
};
pub use summary::{summarize, VariableSummary};

use std::path::PathBuf;

use pavemetrics_core::{PavementType, SoilType};

#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("cannot open `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("`{path}`: missing required column `{column}`")]
    MissingColumn { path: PathBuf, column: &'static str },
    #[error("`{path}`: {source}")]
    Malformed {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("not enough observations: need {required}, got {available}")]
    InsufficientData { required: usize, available: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

/// One reported problem, renderable as the line-oriented
/// `line,severity,field,message` format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub line: u64,
    pub severity: Severity,
    pub field: String,
    pub message: String,
}

impl std::fmt::Display for Issue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.line,
            self.severity.as_str(),
            self.field,
            self.message
        )
    }
}

/// Records plus everything that was reported along the way.
#[derive(Debug)]
pub struct LoadOutcome<T> {
    pub records: Vec<T>,
    pub issues: Vec<Issue>,
}

impl<T> LoadOutcome<T> {
    pub fn error_count(&self) -> usize {
        self.issues
            .iter()
            .filter(|i| i.severity == Severity::Error)
            .count()
    }
}

/// Static inventory attributes of one road section.
#[derive(Debug, Clone, PartialEq)]
pub struct PavementSection {
    pub section_id: String,
    pub county: String,
    pub route: String,
    pub pavement_type: PavementType,
    /// Surface course thickness, inches.
    pub surface_thickness: f64,
    pub base_type: String,
    /// Base course thickness kept verbatim; compound layers like
    /// `1.5 + 8` are common.
    pub base_thickness_spec: String,
    /// Sum of the layers in `base_thickness_spec`, inches.
    pub base_thickness_total: f64,
    /// Section length, miles.
    pub length: f64,
    pub construction_date: IsoDate,
    pub soil_type: SoilType,
}

/// Whether an observation's free flow speed was read from the file or
/// derived from the posted limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FfsSource {
    Given,
    DerivedFromSpeedLimit,
}

/// One section-year record. Measured indices are optional; a row carrying
/// none of them is legal (prediction-only) and flagged at load time.
/// Indices present in the file are range-checked on load, so downstream
/// code can rely on them.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub section_id: String,
    pub year: i32,
    /// Vehicles per day.
    pub aadt: f64,
    pub speed_limit: Option<f64>,
    /// Free flow speed, mph; derived from `speed_limit` when absent.
    pub ffs: f64,
    pub ffs_source: FfsSource,
    pub precipitation: f64,
    pub temperature: f64,
    pub measured_psi: Option<f64>,
    pub measured_pdi: Option<f64>,
    pub measured_pqi: Option<f64>,
    pub measured_iri: Option<f64>,
}

impl Observation {
    pub fn measured(&self, indicator: pavemetrics_core::Indicator) -> Option<f64> {
        use pavemetrics_core::Indicator;
        match indicator {
            Indicator::Psi => self.measured_psi,
            Indicator::Pdi => self.measured_pdi,
            Indicator::Pqi => self.measured_pqi,
            Indicator::Iri => self.measured_iri,
        }
    }

    pub fn has_any_measured(&self) -> bool {
        self.measured_psi.is_some()
            || self.measured_pdi.is_some()
            || self.measured_pqi.is_some()
            || self.measured_iri.is_some()
    }
}

/// Observation joined with the section attributes the models need.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkedObservation {
    pub observation: Observation,
    pub pavement_type: PavementType,
    pub soil_type: SoilType,
}

/// Joins observations to their sections by `section_id`. Observations
/// referencing an unknown section become error issues (line 0: the join
/// happens after parsing, so file positions are no longer available).
pub fn link_observations(
    sections: &[PavementSection],
    observations: &[Observation],
) -> (Vec<LinkedObservation>, Vec<Issue>) {
    use std::collections::HashMap;
    let by_id: HashMap<&str, &PavementSection> = sections
        .iter()
        .map(|s| (s.section_id.as_str(), s))
        .collect();

    let mut linked = Vec::with_capacity(observations.len());
    let mut issues = Vec::new();
    for obs in observations {
        match by_id.get(obs.section_id.as_str()) {
            Some(section) => linked.push(LinkedObservation {
                observation: obs.clone(),
                pavement_type: section.pavement_type,
                soil_type: section.soil_type,
            }),
            None => issues.push(Issue {
                line: 0,
                severity: Severity::Error,
                field: "section_id".into(),
                message: format!("unknown section `{}`", obs.section_id),
            }),
        }
    }
    (linked, issues)
}
