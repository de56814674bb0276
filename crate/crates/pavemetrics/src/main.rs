//! `pavemetrics` — batch CLI for pavement performance modeling.
//!
//! Exit codes: 0 on success, 1 on fatal I/O or configuration errors, 2
//! when some per-model or per-row work failed but a report was produced.

use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pavemetrics::commands::{
    self, CmdError, CommandResult, IndicatorFilter, PavementFilter, PredictSource, RunConfig,
};
use pavemetrics::report::{OutputFormat, Render};
use pavemetrics_core::Indicator;

#[derive(Parser)]
#[command(
    name = "pavemetrics",
    version,
    about = "Pavement performance models for South Carolina highways: \
             fit, diagnose, predict, validate, summarize"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fit the eight evaluation models (indicator x pavement type) to
    /// observation data
    Fit(DataArgs),
    /// Correlation matrix and VIF per model variable set
    Diagnose(DataArgs),
    /// Evaluate the published models on new predictor values
    Predict(PredictArgs),
    /// Paired t-tests of measured indices against model estimates
    Validate(ValidateArgs),
    /// Descriptive statistics per pavement type
    Summarize(DataArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Pavement type filter
    #[arg(long, value_enum, default_value_t = PavementArg::Both)]
    pavement: PavementArg,
    /// Performance indicator filter
    #[arg(long, value_enum, default_value_t = IndicatorArg::All)]
    indicator: IndicatorArg,
    /// Significance level for hypothesis tests
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Report format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for synthetic-data test helpers
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct DataArgs {
    /// Section inventory CSV
    #[arg(long)]
    sections: PathBuf,
    /// Section-year observations CSV
    #[arg(long)]
    observations: PathBuf,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Estimate from freshly fitted models instead of the published ones
    #[arg(long)]
    refit: bool,
}

#[derive(Args)]
struct PredictArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Annual average daily traffic, vehicles per day
    #[arg(long, allow_negative_numbers = true)]
    aadt: Option<f64>,
    /// Free flow speed, mph
    #[arg(long, allow_negative_numbers = true)]
    ffs: Option<f64>,
    /// Posted speed limit, mph (free flow speed derived when --ffs absent)
    #[arg(long, allow_negative_numbers = true)]
    speed_limit: Option<f64>,
    /// Annual precipitation, in published-envelope units
    #[arg(long, allow_negative_numbers = true)]
    precipitation: Option<f64>,
    /// Mean annual temperature, degrees F
    #[arg(long, allow_negative_numbers = true)]
    temperature: Option<f64>,
    /// Subgrade soil type: a or b
    #[arg(long)]
    soil: Option<String>,
    /// CSV of predictor rows (aadt, ffs or speed_limit, precipitation,
    /// temperature, soil_type)
    #[arg(long)]
    batch: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PavementArg {
    Ac,
    Jpcp,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum IndicatorArg {
    Psi,
    Pdi,
    Pqi,
    Iri,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

impl From<PavementArg> for PavementFilter {
    fn from(v: PavementArg) -> Self {
        match v {
            PavementArg::Ac => PavementFilter::Ac,
            PavementArg::Jpcp => PavementFilter::Jpcp,
            PavementArg::Both => PavementFilter::Both,
        }
    }
}

impl From<IndicatorArg> for IndicatorFilter {
    fn from(v: IndicatorArg) -> Self {
        match v {
            IndicatorArg::Psi => IndicatorFilter::One(Indicator::Psi),
            IndicatorArg::Pdi => IndicatorFilter::One(Indicator::Pdi),
            IndicatorArg::Pqi => IndicatorFilter::One(Indicator::Pqi),
            IndicatorArg::Iri => IndicatorFilter::One(Indicator::Iri),
            IndicatorArg::All => IndicatorFilter::All,
        }
    }
}

impl From<FormatArg> for OutputFormat {
    fn from(v: FormatArg) -> Self {
        match v {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

fn config_from(common: &CommonArgs, data: Option<&DataArgs>, refit: bool) -> RunConfig {
    RunConfig {
        sections: data.map(|d| d.sections.clone()),
        observations: data.map(|d| d.observations.clone()),
        pavement: common.pavement.into(),
        indicator: common.indicator.into(),
        alpha: common.alpha,
        format: common.format.into(),
        out: common.out.clone(),
        refit,
        seed: common.seed,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    match run(cli) {
        Ok(partial_failure) => ExitCode::from(if partial_failure { 2 } else { 0 }),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<bool, CmdError> {
    match cli.command {
        Cmd::Fit(args) => {
            let config = config_from(&args.common, Some(&args), false);
            config.validate()?;
            finish(&config, commands::cmd_fit(&config)?)
        }
        Cmd::Diagnose(args) => {
            let config = config_from(&args.common, Some(&args), false);
            config.validate()?;
            finish(&config, commands::cmd_diagnose(&config)?)
        }
        Cmd::Summarize(args) => {
            let config = config_from(&args.common, Some(&args), false);
            config.validate()?;
            finish(&config, commands::cmd_summarize(&config)?)
        }
        Cmd::Validate(args) => {
            let config = config_from(&args.data.common, Some(&args.data), args.refit);
            config.validate()?;
            finish(&config, commands::cmd_validate(&config)?)
        }
        Cmd::Predict(args) => {
            let config = config_from(&args.common, None, false);
            config.validate()?;
            let source = match &args.batch {
                Some(path) => PredictSource::Batch(path.clone()),
                None => PredictSource::Single(Box::new(commands::predict_input_from_flags(
                    args.aadt,
                    args.ffs,
                    args.speed_limit,
                    args.precipitation,
                    args.temperature,
                    args.soil.as_deref(),
                )?)),
            };
            finish(&config, commands::cmd_predict(&config, source)?)
        }
    }
}

fn finish<R: Render>(config: &RunConfig, result: CommandResult<R>) -> Result<bool, CmdError> {
    let color = config.format == OutputFormat::Text
        && config.out.is_none()
        && std::io::stdout().is_terminal()
        && std::env::var_os("PAVEMETRICS_NO_COLOR").is_none();

    let rendered = result.report.render(config.format, color);
    commands::write_report(config, &rendered)?;

    if !result.issues.is_empty() {
        let mut stderr = std::io::stderr().lock();
        let _ = stderr.write_all(commands::render_issues(&result.issues).as_bytes());
    }
    Ok(result.partial_failure)
}
