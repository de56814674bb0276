//! The five batch commands: fit, diagnose, predict, validate, summarize.
//!
//! Each command loads and validates its inputs, runs the statistics, and
//! returns a renderable report plus the issue list gathered along the way.
//! Failures follow a stable contract: fatal I/O or configuration problems
//! abort the whole command (exit 1), while per-model or per-row failures
//! are recorded in the report and surface as exit 2, leaving the other
//! models untouched.

use std::path::{Path, PathBuf};

use pavemetrics_core::registry::{self, PredictorInput};
use pavemetrics_core::stats::{
    diagnostics_report, ols_fit, paired_t_test, DesignSpec, FitRow, FittedModel,
};
use pavemetrics_core::{Indicator, PavementType, SoilType};

use crate::dataio::{
    link_observations, load_observations, load_predictor_inputs, load_sections, summarize,
    DataError, Issue, LinkedObservation,
};
use crate::report::{
    DiagnosePanel, DiagnoseReport, FitCoefReport, FitModelReport, FitReport, OutputFormat,
    PredictReport, PredictRowReport, SummarizeReport, SummaryPanel, SummaryRowReport, ValidateCell,
    ValidateReport, VifReport,
};

/// Predictor column names, in model order.
pub const PREDICTOR_NAMES: [&str; 5] = [
    "precipitation",
    "temperature",
    "log10_aadt",
    "ffs",
    "soil_type_A",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PavementFilter {
    Ac,
    Jpcp,
    Both,
}

impl PavementFilter {
    pub fn types(self) -> Vec<PavementType> {
        match self {
            PavementFilter::Ac => vec![PavementType::Ac],
            PavementFilter::Jpcp => vec![PavementType::Jpcp],
            PavementFilter::Both => vec![PavementType::Ac, PavementType::Jpcp],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndicatorFilter {
    All,
    One(Indicator),
}

impl IndicatorFilter {
    pub fn indicators(self) -> Vec<Indicator> {
        match self {
            IndicatorFilter::All => Indicator::ALL.to_vec(),
            IndicatorFilter::One(i) => vec![i],
        }
    }
}

/// Everything a command run needs. `seed` is reserved for the
/// synthetic-data helpers and is not consumed by the commands themselves.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub sections: Option<PathBuf>,
    pub observations: Option<PathBuf>,
    pub pavement: PavementFilter,
    pub indicator: IndicatorFilter,
    pub alpha: f64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub refit: bool,
    pub seed: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CmdError> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(CmdError::Config(format!(
                "--alpha must be in (0, 1), got {}",
                self.alpha
            )));
        }
        if let Some(out) = &self.out {
            for input in [&self.sections, &self.observations].into_iter().flatten() {
                if out == input {
                    return Err(CmdError::Config(format!(
                        "--out `{}` collides with an input path",
                        out.display()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Fatal failures (process exit code 1).
#[derive(Debug, thiserror::Error)]
pub enum CmdError {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("{0}")]
    Config(String),
}

/// A finished command: the report plus loader/join issues and whether any
/// per-model or per-row work failed.
pub struct CommandResult<R> {
    pub report: R,
    pub issues: Vec<Issue>,
    pub partial_failure: bool,
}

fn load_linked(config: &RunConfig) -> Result<(Vec<LinkedObservation>, Vec<Issue>), CmdError> {
    let sections_path = config
        .sections
        .as_deref()
        .ok_or_else(|| CmdError::Config("--sections is required".into()))?;
    let observations_path = config
        .observations
        .as_deref()
        .ok_or_else(|| CmdError::Config("--observations is required".into()))?;

    let sections = load_sections(sections_path)?;
    let observations = load_observations(observations_path)?;
    let (linked, link_issues) = link_observations(&sections.records, &observations.records);

    let mut issues = sections.issues;
    issues.extend(observations.issues);
    issues.extend(link_issues);

    if linked.is_empty() {
        return Err(CmdError::Config(format!(
            "no usable observations in `{}`",
            observations_path.display()
        )));
    }
    Ok((linked, issues))
}

fn soil_dummy(soil: SoilType) -> f64 {
    match soil {
        SoilType::A => 1.0,
        SoilType::B => 0.0,
    }
}

fn predictor_vector(row: &LinkedObservation) -> [f64; 5] {
    [
        row.observation.precipitation,
        row.observation.temperature,
        row.observation.aadt.log10(),
        row.observation.ffs,
        soil_dummy(row.soil_type),
    ]
}

fn design_spec(indicator: Indicator) -> DesignSpec {
    DesignSpec::new(
        indicator.name(),
        PREDICTOR_NAMES.iter().map(|s| s.to_string()).collect(),
    )
}

fn fit_rows(
    linked: &[LinkedObservation],
    ptype: PavementType,
    indicator: Indicator,
) -> Vec<FitRow> {
    linked
        .iter()
        .filter(|r| r.pavement_type == ptype)
        .map(|r| FitRow {
            predictors: predictor_vector(r).into_iter().map(Some).collect(),
            response: r.observation.measured(indicator),
        })
        .collect()
}

fn model_pairs(config: &RunConfig) -> Vec<(Indicator, PavementType)> {
    let mut pairs = Vec::new();
    for indicator in config.indicator.indicators() {
        for ptype in config.pavement.types() {
            pairs.push((indicator, ptype));
        }
    }
    pairs
}

// ---------------------------------------------------------------------
// fit

/// Fits one model per (indicator, pavement type) pair. The fits are
/// independent and run on their own threads; the report order is fixed
/// regardless of completion order.
pub fn cmd_fit(config: &RunConfig) -> Result<CommandResult<FitReport>, CmdError> {
    let (linked, issues) = load_linked(config)?;
    let pairs = model_pairs(config);

    let mut fits: Vec<Option<Result<FittedModel, pavemetrics_core::Error>>> =
        (0..pairs.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = pairs
            .iter()
            .map(|&(indicator, ptype)| {
                let rows = fit_rows(&linked, ptype, indicator);
                scope.spawn(move || ols_fit(&design_spec(indicator), &rows))
            })
            .collect();
        for (slot, handle) in fits.iter_mut().zip(handles) {
            *slot = Some(handle.join().expect("fit thread panicked"));
        }
    });

    let mut partial_failure = false;
    let models = pairs
        .iter()
        .zip(fits)
        .map(|(&(indicator, ptype), fit)| match fit.unwrap() {
            Ok(fit) => fit_model_report(indicator, ptype, &fit),
            Err(e) => {
                partial_failure = true;
                failed_model_report(indicator, ptype, e.to_string())
            }
        })
        .collect();

    Ok(CommandResult {
        report: FitReport {
            command: "fit",
            models,
        },
        issues,
        partial_failure,
    })
}

fn fit_model_report(
    indicator: Indicator,
    ptype: PavementType,
    fit: &FittedModel,
) -> FitModelReport {
    FitModelReport {
        indicator: indicator.name(),
        pavement_type: ptype.name(),
        n_used: Some(fit.n_used),
        n_dropped: Some(fit.n_dropped),
        coefficients: fit
            .coefficients
            .iter()
            .map(|c| FitCoefReport {
                term: c.name.clone(),
                beta: c.beta,
                std_error: c.std_error,
                t_stat: c.t_stat,
                p_value: c.p_value,
                stars: c.stars.as_str(),
                beta_std: c.beta_std,
            })
            .collect(),
        r_squared: Some(fit.r_squared),
        adj_r_squared: Some(fit.adj_r_squared),
        f_stat: Some(fit.f_stat),
        df1: Some(fit.df1),
        df2: Some(fit.df2),
        f_p_value: Some(fit.f_p_value),
        error: None,
    }
}

fn failed_model_report(indicator: Indicator, ptype: PavementType, error: String) -> FitModelReport {
    FitModelReport {
        indicator: indicator.name(),
        pavement_type: ptype.name(),
        n_used: None,
        n_dropped: None,
        coefficients: Vec::new(),
        r_squared: None,
        adj_r_squared: None,
        f_stat: None,
        df1: None,
        df2: None,
        f_p_value: None,
        error: Some(error),
    }
}

// ---------------------------------------------------------------------
// diagnose

/// Correlation matrix (indicator plus the five predictors) and VIF per
/// model variable set, with the VIF >= 10 warning rule applied.
pub fn cmd_diagnose(config: &RunConfig) -> Result<CommandResult<DiagnoseReport>, CmdError> {
    let (linked, issues) = load_linked(config)?;

    let mut partial_failure = false;
    let mut panels = Vec::new();
    for (indicator, ptype) in model_pairs(config) {
        let rows: Vec<(&LinkedObservation, f64)> = linked
            .iter()
            .filter(|r| r.pavement_type == ptype)
            .filter_map(|r| r.observation.measured(indicator).map(|m| (r, m)))
            .collect();
        let response: Vec<f64> = rows.iter().map(|(_, m)| *m).collect();
        let predictors: Vec<Vec<f64>> = (0..5)
            .map(|k| rows.iter().map(|(r, _)| predictor_vector(r)[k]).collect())
            .collect();
        let named: Vec<(&str, &[f64])> = PREDICTOR_NAMES
            .iter()
            .zip(&predictors)
            .map(|(name, col)| (*name, col.as_slice()))
            .collect();

        match diagnostics_report((indicator.name(), &response), &named) {
            Ok(d) => panels.push(DiagnosePanel {
                indicator: indicator.name(),
                pavement_type: ptype.name(),
                n: Some(response.len()),
                variables: d.variable_names.iter().map(|s| s.to_string()).collect(),
                correlation: d.correlation_matrix,
                vif: d
                    .vif
                    .iter()
                    .map(|v| VifReport {
                        predictor: v.name.clone(),
                        vif: v.vif,
                    })
                    .collect(),
                warnings: d.warnings,
                error: None,
            }),
            Err(e) => {
                partial_failure = true;
                panels.push(DiagnosePanel {
                    indicator: indicator.name(),
                    pavement_type: ptype.name(),
                    n: None,
                    variables: Vec::new(),
                    correlation: Vec::new(),
                    vif: Vec::new(),
                    warnings: Vec::new(),
                    error: Some(e.to_string()),
                });
            }
        }
    }

    Ok(CommandResult {
        report: DiagnoseReport {
            command: "diagnose",
            panels,
        },
        issues,
        partial_failure,
    })
}

// ---------------------------------------------------------------------
// predict

/// Where predict inputs come from: one row of flag values or a batch file.
pub enum PredictSource {
    Single(Box<Result<PredictorInput, Issue>>),
    Batch(PathBuf),
}

pub fn cmd_predict(
    config: &RunConfig,
    source: PredictSource,
) -> Result<CommandResult<PredictReport>, CmdError> {
    let inputs: Vec<Result<PredictorInput, Issue>> = match source {
        PredictSource::Single(one) => vec![*one],
        PredictSource::Batch(path) => load_predictor_inputs(&path)?,
    };

    let mut partial_failure = false;
    let mut rows = Vec::new();
    for (idx, input) in inputs.iter().enumerate() {
        let row = idx + 1;
        match input {
            Err(issue) => {
                partial_failure = true;
                rows.push(PredictRowReport {
                    row,
                    pavement_type: None,
                    indicator: None,
                    value: None,
                    extrapolation_warnings: Vec::new(),
                    error: Some(format!("{}: {}", issue.field, issue.message)),
                });
            }
            Ok(input) => {
                for ptype in config.pavement.types() {
                    for indicator in config.indicator.indicators() {
                        match registry::predict(indicator, ptype, input) {
                            Ok(p) => rows.push(PredictRowReport {
                                row,
                                pavement_type: Some(ptype.name()),
                                indicator: Some(indicator.name()),
                                value: Some(p.value),
                                extrapolation_warnings: p
                                    .extrapolation_warnings
                                    .iter()
                                    .map(|w| w.name().to_string())
                                    .collect(),
                                error: None,
                            }),
                            Err(e) => {
                                partial_failure = true;
                                rows.push(PredictRowReport {
                                    row,
                                    pavement_type: Some(ptype.name()),
                                    indicator: Some(indicator.name()),
                                    value: None,
                                    extrapolation_warnings: Vec::new(),
                                    error: Some(e.to_string()),
                                });
                            }
                        }
                    }
                }
            }
        }
    }

    Ok(CommandResult {
        report: PredictReport {
            command: "predict",
            rows,
        },
        issues: Vec::new(),
        partial_failure,
    })
}

// ---------------------------------------------------------------------
// validate

/// Paired t-tests of measured indices against model estimates, one cell
/// per (indicator, pavement type). Estimates come from the published
/// models by default or from freshly fitted ones with `--refit`.
pub fn cmd_validate(config: &RunConfig) -> Result<CommandResult<ValidateReport>, CmdError> {
    let (linked, issues) = load_linked(config)?;

    let mut partial_failure = false;
    let mut cells = Vec::new();
    for (indicator, ptype) in model_pairs(config) {
        match validate_cell(config, &linked, indicator, ptype) {
            Ok(cell) => cells.push(cell),
            Err(message) => {
                partial_failure = true;
                cells.push(ValidateCell {
                    indicator: indicator.name(),
                    pavement_type: ptype.name(),
                    n_pairs: None,
                    mean_measured: None,
                    mean_estimated: None,
                    t_stat: None,
                    p_value: None,
                    decision: None,
                    error: Some(message),
                });
            }
        }
    }

    Ok(CommandResult {
        report: ValidateReport {
            command: "validate",
            estimates: if config.refit { "refit" } else { "published" },
            alpha: config.alpha,
            cells,
        },
        issues,
        partial_failure,
    })
}

fn validate_cell(
    config: &RunConfig,
    linked: &[LinkedObservation],
    indicator: Indicator,
    ptype: PavementType,
) -> Result<ValidateCell, String> {
    let rows: Vec<(&LinkedObservation, f64)> = linked
        .iter()
        .filter(|r| r.pavement_type == ptype)
        .filter_map(|r| r.observation.measured(indicator).map(|m| (r, m)))
        .collect();
    if rows.len() < 2 {
        return Err(format!("fewer than 2 paired rows ({})", rows.len()));
    }

    let measured: Vec<f64> = rows.iter().map(|(_, m)| *m).collect();
    let estimated: Vec<f64> = if config.refit {
        let fit_input = fit_rows(linked, ptype, indicator);
        let fit = ols_fit(&design_spec(indicator), &fit_input).map_err(|e| e.to_string())?;
        rows.iter()
            .map(|(r, _)| fit.predict(&predictor_vector(r)))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?
    } else {
        rows.iter()
            .map(|(r, _)| {
                let input = PredictorInput {
                    aadt: r.observation.aadt,
                    ffs: r.observation.ffs,
                    precipitation: r.observation.precipitation,
                    temperature: r.observation.temperature,
                    soil_type: r.soil_type,
                };
                registry::predict(indicator, ptype, &input).map(|p| p.value)
            })
            .collect::<Result<_, _>>()
            .map_err(|e: pavemetrics_core::Error| e.to_string())?
    };

    let test = paired_t_test(&measured, &estimated, config.alpha)
        .map_err(|e| e.to_string())?
        .labeled(format!("{} ({})", indicator.name(), ptype.name()));
    Ok(ValidateCell {
        indicator: indicator.name(),
        pavement_type: ptype.name(),
        n_pairs: Some(test.n),
        mean_measured: Some(test.mean_measured),
        mean_estimated: Some(test.mean_estimated),
        t_stat: Some(test.t_stat),
        p_value: Some(test.p_value),
        decision: Some(test.decision.as_str()),
        error: None,
    })
}

// ---------------------------------------------------------------------
// summarize

pub fn cmd_summarize(config: &RunConfig) -> Result<CommandResult<SummarizeReport>, CmdError> {
    let (linked, issues) = load_linked(config)?;

    let mut partial_failure = false;
    let mut panels = Vec::new();
    for ptype in config.pavement.types() {
        match summarize(&linked, ptype) {
            Ok(rows) => panels.push(SummaryPanel {
                pavement_type: ptype.name(),
                rows: rows
                    .iter()
                    .map(|r| SummaryRowReport {
                        variable: r.variable,
                        unit: r.unit,
                        n: r.n,
                        min: r.min,
                        max: r.max,
                        mean: r.mean,
                        std_dev: r.sample_std,
                    })
                    .collect(),
                error: None,
            }),
            Err(e) => {
                partial_failure = true;
                panels.push(SummaryPanel {
                    pavement_type: ptype.name(),
                    rows: Vec::new(),
                    error: Some(e.to_string()),
                });
            }
        }
    }

    Ok(CommandResult {
        report: SummarizeReport {
            command: "summarize",
            panels,
        },
        issues,
        partial_failure,
    })
}

/// Builds the single-row predict input from flag values, reporting the
/// first problem the way a batch row would.
pub fn predict_input_from_flags(
    aadt: Option<f64>,
    ffs: Option<f64>,
    speed_limit: Option<f64>,
    precipitation: Option<f64>,
    temperature: Option<f64>,
    soil: Option<&str>,
) -> Result<Result<PredictorInput, Issue>, CmdError> {
    let issue = |field: &str, message: String| Issue {
        line: 0,
        severity: crate::dataio::Severity::Error,
        field: field.into(),
        message,
    };
    let need = |name: &'static str, v: Option<f64>| {
        v.ok_or_else(|| CmdError::Config(format!("--{name} is required (or use --batch)")))
    };

    let aadt = need("aadt", aadt)?;
    let precipitation = need("precipitation", precipitation)?;
    let temperature = need("temperature", temperature)?;
    let soil =
        soil.ok_or_else(|| CmdError::Config("--soil is required (or use --batch)".into()))?;
    let soil_type = match crate::dataio::parse_soil_type(soil) {
        Ok(s) => s,
        Err(m) => return Ok(Err(issue("soil_type", m))),
    };

    if aadt <= 0.0 {
        return Ok(Err(issue("aadt", "must be > 0".into())));
    }
    let ffs_value = match (ffs, speed_limit) {
        (Some(f), _) => f,
        (None, Some(sl)) => match pavemetrics_core::indices::ffs_from_speed_limit(sl) {
            Ok(f) => f,
            Err(e) => return Ok(Err(issue("speed_limit", e.to_string()))),
        },
        (None, None) => {
            return Err(CmdError::Config(
                "--ffs or --speed-limit is required (or use --batch)".into(),
            ))
        }
    };
    if ffs_value <= 0.0 {
        return Ok(Err(issue("ffs", "must be > 0".into())));
    }

    Ok(Ok(PredictorInput {
        aadt,
        ffs: ffs_value,
        precipitation,
        temperature,
        soil_type,
    }))
}

/// Renders loader issues in the line-oriented format, one per line.
pub fn render_issues(issues: &[Issue]) -> String {
    let mut out = String::new();
    for issue in issues {
        out.push_str(&issue.to_string());
        out.push('\n');
    }
    out
}

/// Writes a rendered report to the configured destination.
pub fn write_report(config: &RunConfig, rendered: &str) -> Result<(), CmdError> {
    match &config.out {
        Some(path) => std::fs::write(path, rendered).map_err(|e| {
            CmdError::Data(DataError::Io {
                path: path.clone(),
                source: e,
            })
        }),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(rendered.as_bytes())
                .map_err(|e| {
                    CmdError::Data(DataError::Io {
                        path: Path::new("<stdout>").to_path_buf(),
                        source: e,
                    })
                })
        }
    }
}
