//! CSV loaders and writers for the two input schemas plus the predict
//! batch format.

use std::collections::HashMap;
use std::collections::HashSet;
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, WriterBuilder};
use pavemetrics_core::indices::{ffs_from_speed_limit, IndexValue};
use pavemetrics_core::registry::PredictorInput;
use pavemetrics_core::{Indicator, PavementType, SoilType};

use super::{
    DataError, FfsSource, IsoDate, Issue, LoadOutcome, Observation, PavementSection, Severity,
};

const SECTION_COLUMNS: [&str; 10] = [
    "section_id",
    "county",
    "route",
    "pavement_type",
    "surface_thickness",
    "base_type",
    "base_thickness",
    "length",
    "construction_date",
    "soil_type",
];

const OBSERVATION_REQUIRED: [&str; 5] =
    ["section_id", "year", "aadt", "precipitation", "temperature"];

const OBSERVATION_COLUMNS: [&str; 11] = [
    "section_id",
    "year",
    "aadt",
    "speed_limit",
    "ffs",
    "precipitation",
    "temperature",
    "measured_psi",
    "measured_pdi",
    "measured_pqi",
    "measured_iri",
];

/// Loads the section inventory. Well-formed rows become records; each
/// malformed row becomes one error issue with its line number.
pub fn load_sections(path: &Path) -> Result<LoadOutcome<PavementSection>, DataError> {
    let (headers, rows) = read_rows(path)?;
    let map = require_columns(path, &headers, &SECTION_COLUMNS)?;

    let mut records = Vec::new();
    let mut issues = Vec::new();
    let mut seen_ids: HashSet<String> = HashSet::new();
    for (line, record) in rows {
        let row = Row {
            record: &record,
            map: &map,
            line,
            width: headers.len(),
        };
        match parse_section(&row, &mut seen_ids) {
            Ok(section) => records.push(section),
            Err(issue) => issues.push(issue),
        }
    }
    Ok(LoadOutcome { records, issues })
}

/// Loads section-year observations. A row giving `speed_limit` but no
/// `ffs` gets its free flow speed derived from the limit and is flagged
/// accordingly; a row carrying no measured index at all is accepted with
/// a warning (usable for prediction, not for fitting).
pub fn load_observations(path: &Path) -> Result<LoadOutcome<Observation>, DataError> {
    let (headers, rows) = read_rows(path)?;
    let map = require_columns(path, &headers, &OBSERVATION_REQUIRED)?;
    if !map.contains_key("ffs") && !map.contains_key("speed_limit") {
        return Err(DataError::MissingColumn {
            path: path.to_path_buf(),
            column: "ffs (or speed_limit)",
        });
    }

    let mut records = Vec::new();
    let mut issues = Vec::new();
    for (line, record) in rows {
        let row = Row {
            record: &record,
            map: &map,
            line,
            width: headers.len(),
        };
        match parse_observation(&row) {
            Ok(obs) => {
                if !obs.has_any_measured() {
                    issues.push(Issue {
                        line,
                        severity: Severity::Warning,
                        field: "measured_*".into(),
                        message: "no measured indices; row is usable for prediction only".into(),
                    });
                }
                records.push(obs);
            }
            Err(issue) => issues.push(issue),
        }
    }
    Ok(LoadOutcome { records, issues })
}

/// Loads a predict batch file, keeping per-row outcomes in input order so
/// failures can be reported against their rows.
pub fn load_predictor_inputs(path: &Path) -> Result<Vec<Result<PredictorInput, Issue>>, DataError> {
    let (headers, rows) = read_rows(path)?;
    let map = require_columns(
        path,
        &headers,
        &["aadt", "precipitation", "temperature", "soil_type"],
    )?;
    if !map.contains_key("ffs") && !map.contains_key("speed_limit") {
        return Err(DataError::MissingColumn {
            path: path.to_path_buf(),
            column: "ffs (or speed_limit)",
        });
    }

    let mut out = Vec::new();
    for (line, record) in rows {
        let row = Row {
            record: &record,
            map: &map,
            line,
            width: headers.len(),
        };
        out.push(parse_predictor_input(&row));
    }
    Ok(out)
}

/// Writes sections in the canonical column order. Loading the result
/// reproduces the records exactly.
pub fn write_sections(path: &Path, sections: &[PavementSection]) -> Result<(), DataError> {
    let mut w = WriterBuilder::new()
        .from_path(path)
        .map_err(|e| malformed(path, e))?;
    w.write_record(SECTION_COLUMNS)
        .map_err(|e| malformed(path, e))?;
    for s in sections {
        w.write_record([
            s.section_id.as_str(),
            s.county.as_str(),
            s.route.as_str(),
            s.pavement_type.name(),
            &s.surface_thickness.to_string(),
            s.base_type.as_str(),
            s.base_thickness_spec.as_str(),
            &s.length.to_string(),
            &s.construction_date.to_string(),
            s.soil_type.name(),
        ])
        .map_err(|e| malformed(path, e))?;
    }
    w.flush().map_err(|e| DataError::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(())
}

/// Writes observations in the canonical column order. A derived free flow
/// speed is written as an empty field so a reload re-derives the same
/// value and the records round-trip exactly.
pub fn write_observations(path: &Path, observations: &[Observation]) -> Result<(), DataError> {
    let mut w = WriterBuilder::new()
        .from_path(path)
        .map_err(|e| malformed(path, e))?;
    w.write_record(OBSERVATION_COLUMNS)
        .map_err(|e| malformed(path, e))?;
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for o in observations {
        let ffs_field = match o.ffs_source {
            FfsSource::Given => o.ffs.to_string(),
            FfsSource::DerivedFromSpeedLimit => String::new(),
        };
        w.write_record([
            o.section_id.clone(),
            o.year.to_string(),
            o.aadt.to_string(),
            opt(o.speed_limit),
            ffs_field,
            o.precipitation.to_string(),
            o.temperature.to_string(),
            opt(o.measured_psi),
            opt(o.measured_pdi),
            opt(o.measured_pqi),
            opt(o.measured_iri),
        ])
        .map_err(|e| malformed(path, e))?;
    }
    w.flush().map_err(|e| DataError::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(())
}

// ---------------------------------------------------------------------
// row machinery

struct Row<'a> {
    record: &'a StringRecord,
    map: &'a HashMap<String, usize>,
    line: u64,
    width: usize,
}

impl Row<'_> {
    fn issue(&self, field: &str, message: impl Into<String>) -> Issue {
        Issue {
            line: self.line,
            severity: Severity::Error,
            field: field.into(),
            message: message.into(),
        }
    }

    fn check_width(&self) -> Result<(), Issue> {
        if self.record.len() != self.width {
            return Err(self.issue(
                "row",
                format!("has {} fields, expected {}", self.record.len(), self.width),
            ));
        }
        Ok(())
    }

    /// Trimmed cell content; empty and `NA` count as absent.
    fn raw(&self, column: &str) -> Option<&str> {
        let idx = *self.map.get(column)?;
        let cell = self.record.get(idx)?.trim();
        if cell.is_empty() || cell == "NA" {
            None
        } else {
            Some(cell)
        }
    }

    fn required_str(&self, column: &str) -> Result<String, Issue> {
        self.raw(column)
            .map(str::to_owned)
            .ok_or_else(|| self.issue(column, "missing value"))
    }

    fn required_f64(&self, column: &str) -> Result<f64, Issue> {
        let cell = self
            .raw(column)
            .ok_or_else(|| self.issue(column, "missing value"))?;
        parse_f64(cell).map_err(|m| self.issue(column, m))
    }

    fn optional_f64(&self, column: &str) -> Result<Option<f64>, Issue> {
        match self.raw(column) {
            None => Ok(None),
            Some(cell) => parse_f64(cell).map(Some).map_err(|m| self.issue(column, m)),
        }
    }
}

fn parse_f64(cell: &str) -> Result<f64, String> {
    let v: f64 = cell
        .parse()
        .map_err(|_| format!("`{cell}` is not a number"))?;
    if !v.is_finite() {
        return Err(format!("`{cell}` is not finite"));
    }
    Ok(v)
}

fn parse_section(row: &Row, seen_ids: &mut HashSet<String>) -> Result<PavementSection, Issue> {
    row.check_width()?;
    let section_id = row.required_str("section_id")?;
    if !seen_ids.insert(section_id.clone()) {
        return Err(row.issue("section_id", format!("duplicate section `{section_id}`")));
    }
    let pavement_type = parse_pavement_type(row.required_str("pavement_type")?.as_str())
        .map_err(|m| row.issue("pavement_type", m))?;
    let surface_thickness = row.required_f64("surface_thickness")?;
    if surface_thickness <= 0.0 {
        return Err(row.issue("surface_thickness", "must be > 0"));
    }
    let base_thickness_spec = row.required_str("base_thickness")?;
    let base_thickness_total = parse_compound_thickness(&base_thickness_spec)
        .map_err(|m| row.issue("base_thickness", m))?;
    let length = row.required_f64("length")?;
    if length <= 0.0 {
        return Err(row.issue("length", "must be > 0"));
    }
    let construction_date: IsoDate = row
        .required_str("construction_date")?
        .parse()
        .map_err(|m: String| row.issue("construction_date", m))?;
    let soil_type = parse_soil_type(row.required_str("soil_type")?.as_str())
        .map_err(|m| row.issue("soil_type", m))?;

    Ok(PavementSection {
        section_id,
        county: row.required_str("county")?,
        route: row.required_str("route")?,
        pavement_type,
        surface_thickness,
        base_type: row.required_str("base_type")?,
        base_thickness_spec,
        base_thickness_total,
        length,
        construction_date,
        soil_type,
    })
}

fn parse_observation(row: &Row) -> Result<Observation, Issue> {
    row.check_width()?;
    let section_id = row.required_str("section_id")?;
    let year: i32 = row
        .required_str("year")?
        .parse()
        .map_err(|_| row.issue("year", "not an integer"))?;
    if !(1980..=2100).contains(&year) {
        return Err(row.issue("year", format!("{year} outside [1980, 2100]")));
    }
    let aadt = row.required_f64("aadt")?;
    if aadt <= 0.0 {
        return Err(row.issue("aadt", "must be > 0"));
    }
    let speed_limit = row.optional_f64("speed_limit")?;
    if let Some(sl) = speed_limit {
        if sl <= 0.0 {
            return Err(row.issue("speed_limit", "must be > 0"));
        }
    }
    let given_ffs = row.optional_f64("ffs")?;
    if let Some(f) = given_ffs {
        if f <= 0.0 {
            return Err(row.issue("ffs", "must be > 0"));
        }
    }
    let (ffs, ffs_source) = match (given_ffs, speed_limit) {
        (Some(f), _) => (f, FfsSource::Given),
        (None, Some(sl)) => (
            ffs_from_speed_limit(sl).map_err(|e| row.issue("speed_limit", e.to_string()))?,
            FfsSource::DerivedFromSpeedLimit,
        ),
        (None, None) => {
            return Err(row.issue("ffs", "need ffs or speed_limit"));
        }
    };

    let measured = |column: &str, kind: Indicator| -> Result<Option<f64>, Issue> {
        match row.optional_f64(column)? {
            None => Ok(None),
            Some(v) => IndexValue::new(kind, v)
                .map(|iv| Some(iv.value()))
                .map_err(|e| row.issue(column, e.to_string())),
        }
    };

    Ok(Observation {
        section_id,
        year,
        aadt,
        speed_limit,
        ffs,
        ffs_source,
        precipitation: row.required_f64("precipitation")?,
        temperature: row.required_f64("temperature")?,
        measured_psi: measured("measured_psi", Indicator::Psi)?,
        measured_pdi: measured("measured_pdi", Indicator::Pdi)?,
        measured_pqi: measured("measured_pqi", Indicator::Pqi)?,
        measured_iri: measured("measured_iri", Indicator::Iri)?,
    })
}

fn parse_predictor_input(row: &Row) -> Result<PredictorInput, Issue> {
    row.check_width()?;
    let aadt = row.required_f64("aadt")?;
    if aadt <= 0.0 {
        return Err(row.issue("aadt", "must be > 0"));
    }
    let ffs = match (row.optional_f64("ffs")?, row.optional_f64("speed_limit")?) {
        (Some(f), _) => f,
        (None, Some(sl)) => {
            ffs_from_speed_limit(sl).map_err(|e| row.issue("speed_limit", e.to_string()))?
        }
        (None, None) => return Err(row.issue("ffs", "need ffs or speed_limit")),
    };
    if ffs <= 0.0 {
        return Err(row.issue("ffs", "must be > 0"));
    }
    let soil_type = parse_soil_type(row.required_str("soil_type")?.as_str())
        .map_err(|m| row.issue("soil_type", m))?;
    Ok(PredictorInput {
        aadt,
        ffs,
        precipitation: row.required_f64("precipitation")?,
        temperature: row.required_f64("temperature")?,
        soil_type,
    })
}

/// Sums a compound layer spec like `1.5 + 8`; scalar entries pass through.
fn parse_compound_thickness(spec: &str) -> Result<f64, String> {
    let mut total = 0.0;
    for part in spec.split('+') {
        let layer = parse_f64(part.trim())?;
        if layer <= 0.0 {
            return Err(format!("layer thickness `{}` must be > 0", part.trim()));
        }
        total += layer;
    }
    Ok(total)
}

pub fn parse_pavement_type(s: &str) -> Result<PavementType, String> {
    match s.to_ascii_uppercase().as_str() {
        "AC" => Ok(PavementType::Ac),
        "JPCP" => Ok(PavementType::Jpcp),
        other => Err(format!("`{other}` is not a pavement type (AC or JPCP)")),
    }
}

pub fn parse_soil_type(s: &str) -> Result<SoilType, String> {
    match s.to_ascii_uppercase().as_str() {
        "A" => Ok(SoilType::A),
        "B" => Ok(SoilType::B),
        other => Err(format!("`{other}` is not a soil type (A or B)")),
    }
}

fn malformed(path: &Path, source: csv::Error) -> DataError {
    DataError::Malformed {
        path: path.to_path_buf(),
        source,
    }
}

/// Reads the header and all data rows with their 1-based line numbers.
fn read_rows(path: &Path) -> Result<(StringRecord, Vec<(u64, StringRecord)>), DataError> {
    let file = std::fs::File::open(path).map_err(|e| DataError::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    let mut reader = ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(std::io::BufReader::new(file));
    let headers = reader.headers().map_err(|e| malformed(path, e))?.clone();
    let mut rows = Vec::new();
    for result in reader.records() {
        let record = result.map_err(|e| malformed(path, e))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        rows.push((line, record));
    }
    Ok((headers, rows))
}

fn require_columns(
    path: &Path,
    headers: &StringRecord,
    required: &[&'static str],
) -> Result<HashMap<String, usize>, DataError> {
    let map: HashMap<String, usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| (h.trim().to_owned(), i))
        .collect();
    for column in required {
        if !map.contains_key(*column) {
            return Err(DataError::MissingColumn {
                path: path.to_path_buf(),
                column,
            });
        }
    }
    Ok(map)
}
