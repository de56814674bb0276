//! Report structures and their three renderings.
//!
//! The same report renders as human-readable text (3-decimal numbers,
//! p-values in scientific notation below 1e-3 and as `<1e-15` at the
//! floor), as CSV, and as JSON. CSV and JSON carry full-precision values:
//! both use the shortest round-trip decimal form, so the two emissions are
//! value-identical. All orderings are fixed, so identical inputs produce
//! byte-identical reports.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

/// Three decimals for coefficients, R², F, means.
pub fn fmt3(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else if x.is_infinite() {
        String::from(if x > 0.0 { "inf" } else { "-inf" })
    } else {
        format!("{x:.3}")
    }
}

/// p-value formatting: `<1e-15` at the floor, scientific below 1e-3,
/// otherwise three decimals.
pub fn fmt_p(p: f64) -> String {
    if p.is_nan() {
        String::new()
    } else if p < 1e-15 {
        String::from("<1e-15")
    } else if p < 1e-3 {
        format!("{p:.3e}")
    } else {
        format!("{p:.3}")
    }
}

/// Full-precision cell for CSV: the shortest decimal that round-trips,
/// matching what the JSON emitter produces. NaN renders empty.
pub fn fmt_full(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else if x.is_infinite() {
        String::from(if x > 0.0 { "inf" } else { "-inf" })
    } else {
        let mut buf = ryu_like(x);
        if buf.ends_with(".0") {
            buf.truncate(buf.len() - 2);
        }
        buf
    }
}

fn ryu_like(x: f64) -> String {
    // `{}` on f64 already prints the shortest round-trip form.
    format!("{x}")
}

fn opt_full(x: Option<f64>) -> String {
    x.map(fmt_full).unwrap_or_default()
}

fn opt_usize(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn bold(s: &str, color: bool) -> String {
    if color {
        format!("\x1b[1m{s}\x1b[0m")
    } else {
        s.to_string()
    }
}

fn csv_string(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv utf8")
}

pub trait Render: Serialize {
    fn text(&self, color: bool) -> String;
    fn csv(&self) -> String;

    fn render(&self, format: OutputFormat, color: bool) -> String {
        match format {
            OutputFormat::Text => self.text(color),
            OutputFormat::Csv => self.csv(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report json");
                s.push('\n');
                s
            }
        }
    }
}

// ---------------------------------------------------------------------
// fit

#[derive(Debug, Serialize)]
pub struct FitReport {
    pub command: &'static str,
    pub models: Vec<FitModelReport>,
}

#[derive(Debug, Serialize)]
pub struct FitModelReport {
    pub indicator: &'static str,
    pub pavement_type: &'static str,
    pub n_used: Option<usize>,
    pub n_dropped: Option<usize>,
    pub coefficients: Vec<FitCoefReport>,
    pub r_squared: Option<f64>,
    pub adj_r_squared: Option<f64>,
    pub f_stat: Option<f64>,
    pub df1: Option<usize>,
    pub df2: Option<usize>,
    pub f_p_value: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct FitCoefReport {
    pub term: String,
    pub beta: f64,
    pub std_error: f64,
    pub t_stat: f64,
    pub p_value: f64,
    pub stars: &'static str,
    pub beta_std: Option<f64>,
}

impl Render for FitReport {
    fn text(&self, color: bool) -> String {
        let mut out = String::new();
        for m in &self.models {
            let title = format!("== {} / {} ==", m.indicator, m.pavement_type);
            out.push_str(&bold(&title, color));
            out.push('\n');
            if let Some(err) = &m.error {
                out.push_str(&format!("  failed: {err}\n\n"));
                continue;
            }
            out.push_str(&format!(
                "  n_used {}  n_dropped {}\n",
                opt_usize(m.n_used),
                opt_usize(m.n_dropped)
            ));
            out.push_str(&format!(
                "  {:<14} {:>9} {:>9} {:>9} {:>9} {:>10}  {}\n",
                "term", "beta", "beta'", "std_err", "t", "p", "sig"
            ));
            for c in &m.coefficients {
                out.push_str(&format!(
                    "  {:<14} {:>9} {:>9} {:>9} {:>9} {:>10}  {}\n",
                    c.term,
                    fmt3(c.beta),
                    c.beta_std.map(fmt3).unwrap_or_else(|| "-".into()),
                    fmt3(c.std_error),
                    fmt3(c.t_stat),
                    fmt_p(c.p_value),
                    c.stars,
                ));
            }
            out.push_str(&format!(
                "  R^2 {}  adj R^2 {}  F({}, {}) = {}  (p {})\n\n",
                opt_full_3(m.r_squared),
                opt_full_3(m.adj_r_squared),
                opt_usize(m.df1),
                opt_usize(m.df2),
                opt_full_3(m.f_stat),
                m.f_p_value.map(fmt_p).unwrap_or_default(),
            ));
        }
        out
    }

    fn csv(&self) -> String {
        let header = vec![
            "indicator",
            "pavement_type",
            "term",
            "beta",
            "std_error",
            "t_stat",
            "p_value",
            "stars",
            "beta_std",
            "n_used",
            "n_dropped",
            "r_squared",
            "adj_r_squared",
            "f_stat",
            "df1",
            "df2",
            "f_p_value",
            "error",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        let mut rows = vec![header];
        for m in &self.models {
            if let Some(err) = &m.error {
                let mut row = vec![m.indicator.to_string(), m.pavement_type.to_string()];
                row.extend((0..15).map(|_| String::new()));
                row.push(err.clone());
                rows.push(row);
                continue;
            }
            for c in &m.coefficients {
                rows.push(vec![
                    m.indicator.to_string(),
                    m.pavement_type.to_string(),
                    c.term.clone(),
                    fmt_full(c.beta),
                    fmt_full(c.std_error),
                    fmt_full(c.t_stat),
                    fmt_full(c.p_value),
                    c.stars.to_string(),
                    opt_full(c.beta_std),
                    opt_usize(m.n_used),
                    opt_usize(m.n_dropped),
                    opt_full(m.r_squared),
                    opt_full(m.adj_r_squared),
                    opt_full(m.f_stat),
                    opt_usize(m.df1),
                    opt_usize(m.df2),
                    opt_full(m.f_p_value),
                    String::new(),
                ]);
            }
        }
        csv_string(rows)
    }
}

fn opt_full_3(x: Option<f64>) -> String {
    x.map(fmt3).unwrap_or_default()
}

// ---------------------------------------------------------------------
// diagnose

#[derive(Debug, Serialize)]
pub struct DiagnoseReport {
    pub command: &'static str,
    pub panels: Vec<DiagnosePanel>,
}

#[derive(Debug, Serialize)]
pub struct DiagnosePanel {
    pub indicator: &'static str,
    pub pavement_type: &'static str,
    pub n: Option<usize>,
    pub variables: Vec<String>,
    pub correlation: Vec<Vec<f64>>,
    pub vif: Vec<VifReport>,
    pub warnings: Vec<String>,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct VifReport {
    pub predictor: String,
    pub vif: f64,
}

impl Render for DiagnoseReport {
    fn text(&self, color: bool) -> String {
        let mut out = String::new();
        for p in &self.panels {
            let title = format!("== {} / {} ==", p.indicator, p.pavement_type);
            out.push_str(&bold(&title, color));
            out.push('\n');
            if let Some(err) = &p.error {
                out.push_str(&format!("  failed: {err}\n\n"));
                continue;
            }
            out.push_str(&format!("  n {}\n", opt_usize(p.n)));
            out.push_str(&format!("  {:<14}", ""));
            for v in &p.variables {
                out.push_str(&format!(" {:>13}", truncate(v, 13)));
            }
            out.push('\n');
            for (i, row) in p.correlation.iter().enumerate() {
                out.push_str(&format!("  {:<14}", truncate(&p.variables[i], 14)));
                for r in row {
                    out.push_str(&format!(" {:>13}", fmt3(*r)));
                }
                out.push('\n');
            }
            out.push_str("  VIF:");
            for v in &p.vif {
                out.push_str(&format!(" {}={}", v.predictor, fmt3(v.vif)));
            }
            out.push('\n');
            for w in &p.warnings {
                out.push_str(&format!("  warning: {w}\n"));
            }
            out.push('\n');
        }
        out
    }

    fn csv(&self) -> String {
        let header = vec![
            "kind",
            "indicator",
            "pavement_type",
            "row_var",
            "col_var",
            "value",
            "message",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        let mut rows = vec![header];
        for p in &self.panels {
            if let Some(err) = &p.error {
                rows.push(vec![
                    "error".into(),
                    p.indicator.to_string(),
                    p.pavement_type.to_string(),
                    String::new(),
                    String::new(),
                    String::new(),
                    err.clone(),
                ]);
                continue;
            }
            for (i, row) in p.correlation.iter().enumerate() {
                for (j, r) in row.iter().enumerate() {
                    rows.push(vec![
                        "correlation".into(),
                        p.indicator.to_string(),
                        p.pavement_type.to_string(),
                        p.variables[i].clone(),
                        p.variables[j].clone(),
                        fmt_full(*r),
                        String::new(),
                    ]);
                }
            }
            for v in &p.vif {
                rows.push(vec![
                    "vif".into(),
                    p.indicator.to_string(),
                    p.pavement_type.to_string(),
                    v.predictor.clone(),
                    String::new(),
                    fmt_full(v.vif),
                    String::new(),
                ]);
            }
            for w in &p.warnings {
                rows.push(vec![
                    "warning".into(),
                    p.indicator.to_string(),
                    p.pavement_type.to_string(),
                    String::new(),
                    String::new(),
                    String::new(),
                    w.clone(),
                ]);
            }
        }
        csv_string(rows)
    }
}

fn truncate(s: &str, n: usize) -> &str {
    if s.len() > n {
        &s[..n]
    } else {
        s
    }
}

// ---------------------------------------------------------------------
// predict

#[derive(Debug, Serialize)]
pub struct PredictReport {
    pub command: &'static str,
    pub rows: Vec<PredictRowReport>,
}

#[derive(Debug, Serialize)]
pub struct PredictRowReport {
    /// 1-based input row.
    pub row: usize,
    pub pavement_type: Option<&'static str>,
    pub indicator: Option<&'static str>,
    pub value: Option<f64>,
    pub extrapolation_warnings: Vec<String>,
    pub error: Option<String>,
}

impl Render for PredictReport {
    fn text(&self, color: bool) -> String {
        let mut out = String::new();
        out.push_str(&bold("== predictions ==", color));
        out.push('\n');
        out.push_str(&format!(
            "  {:>4} {:>5} {:>4} {:>10}  {}\n",
            "row", "type", "ind", "value", "notes"
        ));
        for r in &self.rows {
            if let Some(err) = &r.error {
                out.push_str(&format!("  {:>4} failed: {err}\n", r.row));
                continue;
            }
            let notes = if r.extrapolation_warnings.is_empty() {
                String::new()
            } else {
                format!("extrapolated: {}", r.extrapolation_warnings.join(";"))
            };
            out.push_str(&format!(
                "  {:>4} {:>5} {:>4} {:>10}  {}\n",
                r.row,
                r.pavement_type.unwrap_or(""),
                r.indicator.unwrap_or(""),
                opt_full_3(r.value),
                notes
            ));
        }
        out
    }

    fn csv(&self) -> String {
        let header = vec![
            "row",
            "pavement_type",
            "indicator",
            "value",
            "extrapolation_warnings",
            "error",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        let mut rows = vec![header];
        for r in &self.rows {
            rows.push(vec![
                r.row.to_string(),
                r.pavement_type.unwrap_or("").to_string(),
                r.indicator.unwrap_or("").to_string(),
                opt_full(r.value),
                r.extrapolation_warnings.join(";"),
                r.error.clone().unwrap_or_default(),
            ]);
        }
        csv_string(rows)
    }
}

// ---------------------------------------------------------------------
// validate

#[derive(Debug, Serialize)]
pub struct ValidateReport {
    pub command: &'static str,
    pub estimates: &'static str,
    pub alpha: f64,
    pub cells: Vec<ValidateCell>,
}

#[derive(Debug, Serialize)]
pub struct ValidateCell {
    pub indicator: &'static str,
    pub pavement_type: &'static str,
    pub n_pairs: Option<usize>,
    pub mean_measured: Option<f64>,
    pub mean_estimated: Option<f64>,
    pub t_stat: Option<f64>,
    pub p_value: Option<f64>,
    pub decision: Option<&'static str>,
    pub error: Option<String>,
}

impl Render for ValidateReport {
    fn text(&self, color: bool) -> String {
        let mut out = String::new();
        let title = format!(
            "== paired comparisons (alpha = {}, estimates = {}) ==",
            fmt_full(self.alpha),
            self.estimates
        );
        out.push_str(&bold(&title, color));
        out.push('\n');
        out.push_str(&format!(
            "  {:<4} {:<5} {:>7} {:>10} {:>10} {:>9} {:>10}  {}\n",
            "ind", "type", "n", "measured", "estimated", "t", "p", "decision"
        ));
        for c in &self.cells {
            if let Some(err) = &c.error {
                out.push_str(&format!(
                    "  {:<4} {:<5} failed: {err}\n",
                    c.indicator, c.pavement_type
                ));
                continue;
            }
            out.push_str(&format!(
                "  {:<4} {:<5} {:>7} {:>10} {:>10} {:>9} {:>10}  {}\n",
                c.indicator,
                c.pavement_type,
                opt_usize(c.n_pairs),
                opt_full_3(c.mean_measured),
                opt_full_3(c.mean_estimated),
                opt_full_3(c.t_stat),
                c.p_value.map(fmt_p).unwrap_or_default(),
                c.decision.unwrap_or(""),
            ));
        }
        out
    }

    fn csv(&self) -> String {
        let header = vec![
            "indicator",
            "pavement_type",
            "n_pairs",
            "mean_measured",
            "mean_estimated",
            "t_stat",
            "p_value",
            "alpha",
            "decision",
            "error",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        let mut rows = vec![header];
        for c in &self.cells {
            rows.push(vec![
                c.indicator.to_string(),
                c.pavement_type.to_string(),
                opt_usize(c.n_pairs),
                opt_full(c.mean_measured),
                opt_full(c.mean_estimated),
                opt_full(c.t_stat),
                opt_full(c.p_value),
                fmt_full(self.alpha),
                c.decision.unwrap_or("").to_string(),
                c.error.clone().unwrap_or_default(),
            ]);
        }
        csv_string(rows)
    }
}

// ---------------------------------------------------------------------
// summarize

#[derive(Debug, Serialize)]
pub struct SummarizeReport {
    pub command: &'static str,
    pub panels: Vec<SummaryPanel>,
}

#[derive(Debug, Serialize)]
pub struct SummaryPanel {
    pub pavement_type: &'static str,
    pub rows: Vec<SummaryRowReport>,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SummaryRowReport {
    pub variable: &'static str,
    pub unit: &'static str,
    pub n: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub std_dev: f64,
}

impl Render for SummarizeReport {
    fn text(&self, color: bool) -> String {
        let mut out = String::new();
        for p in &self.panels {
            let title = format!("== {} ==", p.pavement_type);
            out.push_str(&bold(&title, color));
            out.push('\n');
            if let Some(err) = &p.error {
                out.push_str(&format!("  failed: {err}\n\n"));
                continue;
            }
            out.push_str(&format!(
                "  {:<14} {:<13} {:>6} {:>9} {:>9} {:>9} {:>9}\n",
                "variable", "unit", "n", "min", "max", "mean", "std_dev"
            ));
            for r in &p.rows {
                out.push_str(&format!(
                    "  {:<14} {:<13} {:>6} {:>9} {:>9} {:>9} {:>9}\n",
                    r.variable,
                    r.unit,
                    r.n,
                    fmt3(r.min),
                    fmt3(r.max),
                    fmt3(r.mean),
                    fmt3(r.std_dev)
                ));
            }
            out.push('\n');
        }
        out
    }

    fn csv(&self) -> String {
        let header = vec![
            "pavement_type",
            "variable",
            "unit",
            "n",
            "min",
            "max",
            "mean",
            "std_dev",
            "error",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        let mut rows = vec![header];
        for p in &self.panels {
            if let Some(err) = &p.error {
                let mut row = vec![p.pavement_type.to_string()];
                row.extend((0..7).map(|_| String::new()));
                row.push(err.clone());
                rows.push(row);
                continue;
            }
            for r in &p.rows {
                rows.push(vec![
                    p.pavement_type.to_string(),
                    r.variable.to_string(),
                    r.unit.to_string(),
                    r.n.to_string(),
                    fmt_full(r.min),
                    fmt_full(r.max),
                    fmt_full(r.mean),
                    fmt_full(r.std_dev),
                    String::new(),
                ]);
            }
        }
        csv_string(rows)
    }
}
