//! Registry of the eight published South Carolina pavement performance
//! evaluation models: one model per performance indicator (PSI, PDI, PQI,
//! IRI) and pavement type (AC, JPCP).
//!
//! Every coefficient, standardized coefficient, R², adjusted R², and F
//! value is embedded digit-for-digit as printed in the source tables,
//! including two oddities that are kept as published and surfaced in the
//! audit catalogue:
//!
//! - the AC PDI free-flow-speed coefficient is stored as the table value
//!   +0.033 although the accompanying narrative prints −0.033;
//! - the JPCP PQI soil coefficient pairs β = −0.220 with β′ = +0.557,
//!   a sign mismatch reproduced as printed.
//!
//! Predictions apply the model linear form to raw inputs (`log₁₀` of AADT
//! is taken internally) and attach extrapolation warnings whenever an
//! input leaves the descriptive-statistics envelope the models were fitted
//! on. Warnings never refuse: the models are empirical and callers may
//! knowingly extrapolate.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::indices::Indicator;
use crate::stats::Stars;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PavementType {
    /// Asphalt concrete.
    Ac,
    /// Jointed plain concrete pavement.
    Jpcp,
}

impl PavementType {
    pub const ALL: [PavementType; 2] = [PavementType::Ac, PavementType::Jpcp];

    pub fn name(self) -> &'static str {
        match self {
            PavementType::Ac => "AC",
            PavementType::Jpcp => "JPCP",
        }
    }
}

impl core::fmt::Display for PavementType {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Subgrade soil region. Type A covers the Blue Ridge and Piedmont soils,
/// Type B the Coastal Plain and Sediment soils; the regions meet at the
/// geological fall line. Type B is the reference level of the soil dummy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SoilType {
    A,
    B,
}

impl SoilType {
    pub fn name(self) -> &'static str {
        match self {
            SoilType::A => "A",
            SoilType::B => "B",
        }
    }
}

impl core::fmt::Display for SoilType {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Model predictors in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predictor {
    Precipitation,
    Temperature,
    Log10Aadt,
    Ffs,
    SoilTypeA,
}

impl Predictor {
    pub const ALL: [Predictor; 5] = [
        Predictor::Precipitation,
        Predictor::Temperature,
        Predictor::Log10Aadt,
        Predictor::Ffs,
        Predictor::SoilTypeA,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predictor::Precipitation => "precipitation",
            Predictor::Temperature => "temperature",
            Predictor::Log10Aadt => "log10_aadt",
            Predictor::Ffs => "ffs",
            Predictor::SoilTypeA => "soil_type_A",
        }
    }
}

impl core::fmt::Display for Predictor {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// One published slope with its standardized counterpart and significance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedCoef {
    pub beta: f64,
    pub beta_std: f64,
    pub stars: Stars,
}

/// Closed interval a numeric input is considered in-sample for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
}

impl Range {
    pub fn contains(&self, v: f64) -> bool {
        v >= self.min && v <= self.max
    }
}

/// Per-pavement-type fitting envelope of the numeric predictors, from the
/// published descriptive statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityEnvelope {
    pub precipitation: Range,
    pub temperature: Range,
    pub log10_aadt: Range,
    pub ffs: Range,
}

/// One published model, exactly as printed.
#[derive(Debug, Clone, PartialEq)]
pub struct PublishedModel {
    pub indicator: Indicator,
    pub pavement_type: PavementType,
    pub intercept: f64,
    pub intercept_stars: Stars,
    /// Slopes in [`Predictor::ALL`] order.
    pub coefficients: [PublishedCoef; 5],
    pub r_squared: f64,
    pub adj_r_squared: f64,
    pub f_stat: f64,
    pub f_stars: Stars,
    pub df1: usize,
    pub df2: usize,
    pub validity: ValidityEnvelope,
}

impl PublishedModel {
    pub fn coef(&self, predictor: Predictor) -> &PublishedCoef {
        let idx = Predictor::ALL.iter().position(|p| *p == predictor).unwrap();
        &self.coefficients[idx]
    }

    /// Sample size implied by the degrees of freedom.
    pub fn n_used(&self) -> usize {
        self.df1 + self.df2 + 1
    }
}

/// Raw prediction inputs. AADT is vehicles per day and is log-transformed
/// internally; free flow speed is mph; temperature is mean-annual °F;
/// precipitation is annual, in the units of the published envelope
/// (magnitudes roughly 32–68).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictorInput {
    pub aadt: f64,
    pub ffs: f64,
    pub precipitation: f64,
    pub temperature: f64,
    pub soil_type: SoilType,
}

/// A model evaluation plus any extrapolation warnings. Warnings are empty
/// exactly when every numeric input lies inside the closed envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionResult {
    pub indicator: Indicator,
    pub pavement_type: PavementType,
    pub value: f64,
    pub extrapolation_warnings: Vec<Predictor>,
}

#[rustfmt::skip]
const AC_ENVELOPE: ValidityEnvelope = ValidityEnvelope {
    precipitation: Range { min: 31.8, max: 68.5 },
    temperature: Range { min: 54.1, max: 66.7 },
    log10_aadt: Range { min: 3.4, max: 5.0 },
    ffs: Range { min: 39.7, max: 71.2 },
};

#[rustfmt::skip]
const JPCP_ENVELOPE: ValidityEnvelope = ValidityEnvelope {
    precipitation: Range { min: 31.7, max: 54.7 },
    temperature: Range { min: 59.2, max: 68.3 },
    log10_aadt: Range { min: 3.8, max: 4.9 },
    ffs: Range { min: 47.6, max: 75.6 },
};

#[rustfmt::skip]
const PSI_AC: PublishedModel = PublishedModel {
    indicator: Indicator::Psi,
    pavement_type: PavementType::Ac,
    intercept: 4.397,
    intercept_stars: Stars::P001,
    coefficients: [
        PublishedCoef { beta: -0.006, beta_std: -0.211, stars: Stars::P05 },
        PublishedCoef { beta: -0.019, beta_std: -0.249, stars: Stars::None },
        PublishedCoef { beta: -0.151, beta_std: -0.301, stars: Stars::P01 },
        PublishedCoef { beta: 0.021, beta_std: 0.684, stars: Stars::P001 },
        PublishedCoef { beta: -0.047, beta_std: -0.094, stars: Stars::None },
    ],
    r_squared: 0.442,
    adj_r_squared: 0.413,
    f_stat: 14.913,
    f_stars: Stars::P001,
    df1: 5,
    df2: 94,
    validity: AC_ENVELOPE,
};

#[rustfmt::skip]
const PSI_JPCP: PublishedModel = PublishedModel {
    indicator: Indicator::Psi,
    pavement_type: PavementType::Jpcp,
    intercept: 6.229,
    intercept_stars: Stars::P001,
    coefficients: [
        PublishedCoef { beta: -0.005, beta_std: -0.115, stars: Stars::P05 },
        PublishedCoef { beta: -0.021, beta_std: -0.202, stars: Stars::None },
        PublishedCoef { beta: -0.809, beta_std: -1.057, stars: Stars::P001 },
        PublishedCoef { beta: 0.038, beta_std: 1.044, stars: Stars::P001 },
        PublishedCoef { beta: -0.560, beta_std: -1.018, stars: Stars::P001 },
    ],
    r_squared: 0.868,
    adj_r_squared: 0.855,
    f_stat: 65.865,
    f_stars: Stars::P001,
    df1: 5,
    df2: 50,
    validity: JPCP_ENVELOPE,
};

#[rustfmt::skip]
const PDI_AC: PublishedModel = PublishedModel {
    indicator: Indicator::Pdi,
    pavement_type: PavementType::Ac,
    intercept: -4.565,
    intercept_stars: Stars::None,
    coefficients: [
        PublishedCoef { beta: 0.000, beta_std: -0.006, stars: Stars::None },
        PublishedCoef { beta: 0.104, beta_std: 0.577, stars: Stars::P01 },
        PublishedCoef { beta: -0.160, beta_std: 0.131, stars: Stars::None },
        PublishedCoef { beta: 0.033, beta_std: 0.428, stars: Stars::P001 },
        PublishedCoef { beta: 0.787, beta_std: 0.641, stars: Stars::P01 },
    ],
    r_squared: 0.172,
    adj_r_squared: 0.128,
    f_stat: 3.938,
    f_stars: Stars::P01,
    df1: 5,
    df2: 95,
    validity: AC_ENVELOPE,
};

#[rustfmt::skip]
const PDI_JPCP: PublishedModel = PublishedModel {
    indicator: Indicator::Pdi,
    pavement_type: PavementType::Jpcp,
    intercept: 7.576,
    intercept_stars: Stars::P001,
    coefficients: [
        PublishedCoef { beta: -0.007, beta_std: -0.191, stars: Stars::P05 },
        PublishedCoef { beta: -0.012, beta_std: -0.155, stars: Stars::None },
        PublishedCoef { beta: -0.443, beta_std: -0.751, stars: Stars::P001 },
        PublishedCoef { beta: 0.003, beta_std: 0.107, stars: Stars::None },
        PublishedCoef { beta: -0.114, beta_std: -0.271, stars: Stars::None },
    ],
    r_squared: 0.639,
    adj_r_squared: 0.604,
    f_stat: 18.071,
    f_stars: Stars::P001,
    df1: 5,
    df2: 51,
    validity: JPCP_ENVELOPE,
};

#[rustfmt::skip]
const PQI_AC: PublishedModel = PublishedModel {
    indicator: Indicator::Pqi,
    pavement_type: PavementType::Ac,
    intercept: -2.683,
    intercept_stars: Stars::None,
    coefficients: [
        PublishedCoef { beta: -0.002, beta_std: -0.037, stars: Stars::None },
        PublishedCoef { beta: 0.076, beta_std: 0.530, stars: Stars::P01 },
        PublishedCoef { beta: 0.145, beta_std: -0.150, stars: Stars::None },
        PublishedCoef { beta: 0.029, beta_std: 0.479, stars: Stars::P001 },
        PublishedCoef { beta: 0.604, beta_std: 0.620, stars: Stars::P01 },
    ],
    r_squared: 0.195,
    adj_r_squared: 0.152,
    f_stat: 4.591,
    f_stars: Stars::P001,
    df1: 5,
    df2: 95,
    validity: AC_ENVELOPE,
};

#[rustfmt::skip]
const PQI_JPCP: PublishedModel = PublishedModel {
    indicator: Indicator::Pqi,
    pavement_type: PavementType::Jpcp,
    intercept: 6.882,
    intercept_stars: Stars::P001,
    coefficients: [
        PublishedCoef { beta: -0.006, beta_std: -0.199, stars: Stars::P05 },
        PublishedCoef { beta: -0.015, beta_std: -0.200, stars: Stars::None },
        PublishedCoef { beta: -0.491, beta_std: -0.889, stars: Stars::P001 },
        PublishedCoef { beta: 0.011, beta_std: 0.423, stars: Stars::P01 },
        // β′ sign disagrees with β in the source; stored as printed.
        PublishedCoef { beta: -0.220, beta_std: 0.557, stars: Stars::P05 },
    ],
    r_squared: 0.729,
    adj_r_squared: 0.703,
    f_stat: 27.470,
    f_stars: Stars::P001,
    df1: 5,
    df2: 51,
    validity: JPCP_ENVELOPE,
};

#[rustfmt::skip]
const IRI_AC: PublishedModel = PublishedModel {
    indicator: Indicator::Iri,
    pavement_type: PavementType::Ac,
    intercept: -4.876,
    intercept_stars: Stars::None,
    coefficients: [
        PublishedCoef { beta: 0.474, beta_std: 0.190, stars: Stars::P05 },
        PublishedCoef { beta: 1.852, beta_std: 0.296, stars: Stars::None },
        PublishedCoef { beta: 14.686, beta_std: 0.349, stars: Stars::P01 },
        PublishedCoef { beta: -1.789, beta_std: -0.669, stars: Stars::P001 },
        PublishedCoef { beta: 0.800, beta_std: 0.019, stars: Stars::None },
    ],
    r_squared: 0.407,
    adj_r_squared: 0.376,
    f_stat: 13.315,
    f_stars: Stars::P001,
    df1: 5,
    df2: 97,
    validity: AC_ENVELOPE,
};

#[rustfmt::skip]
const IRI_JPCP: PublishedModel = PublishedModel {
    indicator: Indicator::Iri,
    pavement_type: PavementType::Jpcp,
    intercept: -116.797,
    intercept_stars: Stars::P05,
    coefficients: [
        PublishedCoef { beta: 0.379, beta_std: 0.118, stars: Stars::P05 },
        PublishedCoef { beta: 1.648, beta_std: 0.225, stars: Stars::None },
        PublishedCoef { beta: 57.820, beta_std: 1.053, stars: Stars::P001 },
        PublishedCoef { beta: -2.666, beta_std: -1.032, stars: Stars::P001 },
        PublishedCoef { beta: 39.592, beta_std: 1.003, stars: Stars::P001 },
    ],
    r_squared: 0.859,
    adj_r_squared: 0.845,
    f_stat: 61.109,
    f_stars: Stars::P001,
    df1: 5,
    df2: 50,
    validity: JPCP_ENVELOPE,
};

/// All eight models in report order: indicator-major, AC before JPCP.
pub fn all_models() -> [&'static PublishedModel; 8] {
    [
        &PSI_AC, &PSI_JPCP, &PDI_AC, &PDI_JPCP, &PQI_AC, &PQI_JPCP, &IRI_AC, &IRI_JPCP,
    ]
}

/// The embedded model for one indicator/pavement-type pair.
pub fn published_model(
    indicator: Indicator,
    pavement_type: PavementType,
) -> &'static PublishedModel {
    match (indicator, pavement_type) {
        (Indicator::Psi, PavementType::Ac) => &PSI_AC,
        (Indicator::Psi, PavementType::Jpcp) => &PSI_JPCP,
        (Indicator::Pdi, PavementType::Ac) => &PDI_AC,
        (Indicator::Pdi, PavementType::Jpcp) => &PDI_JPCP,
        (Indicator::Pqi, PavementType::Ac) => &PQI_AC,
        (Indicator::Pqi, PavementType::Jpcp) => &PQI_JPCP,
        (Indicator::Iri, PavementType::Ac) => &IRI_AC,
        (Indicator::Iri, PavementType::Jpcp) => &IRI_JPCP,
    }
}

/// Evaluates one published model on raw inputs.
///
/// The soil dummy contributes the Type A coefficient when `soil_type` is A
/// and zero for the reference Type B. Inputs outside the model's fitting
/// envelope are listed in the result's warnings.
pub fn predict(
    indicator: Indicator,
    pavement_type: PavementType,
    input: &PredictorInput,
) -> Result<PredictionResult> {
    for (name, v) in [
        ("aadt", input.aadt),
        ("ffs", input.ffs),
        ("precipitation", input.precipitation),
        ("temperature", input.temperature),
    ] {
        if !v.is_finite() {
            return Err(Error::NonFinite(String::from(name)));
        }
    }
    if input.aadt <= 0.0 {
        return Err(Error::Domain(format!(
            "aadt must be > 0 (log-transformed internally), got {}",
            input.aadt
        )));
    }
    if input.ffs <= 0.0 {
        return Err(Error::Domain(format!("ffs must be > 0, got {}", input.ffs)));
    }

    let model = published_model(indicator, pavement_type);
    let log10_aadt = libm::log10(input.aadt);
    let soil_a = match input.soil_type {
        SoilType::A => 1.0,
        SoilType::B => 0.0,
    };

    let value = model.intercept
        + model.coef(Predictor::Precipitation).beta * input.precipitation
        + model.coef(Predictor::Temperature).beta * input.temperature
        + model.coef(Predictor::Log10Aadt).beta * log10_aadt
        + model.coef(Predictor::Ffs).beta * input.ffs
        + model.coef(Predictor::SoilTypeA).beta * soil_a;

    let env = &model.validity;
    let mut extrapolation_warnings = Vec::new();
    for (predictor, range, v) in [
        (
            Predictor::Precipitation,
            env.precipitation,
            input.precipitation,
        ),
        (Predictor::Temperature, env.temperature, input.temperature),
        (Predictor::Log10Aadt, env.log10_aadt, log10_aadt),
        (Predictor::Ffs, env.ffs, input.ffs),
    ] {
        if !range.contains(v) {
            extrapolation_warnings.push(predictor);
        }
    }

    Ok(PredictionResult {
        indicator,
        pavement_type,
        value,
        extrapolation_warnings,
    })
}

/// [`predict`] applied to all four indicators of one pavement type,
/// in indicator order.
pub fn predict_all(
    pavement_type: PavementType,
    input: &PredictorInput,
) -> Result<[PredictionResult; 4]> {
    Ok([
        predict(Indicator::Psi, pavement_type, input)?,
        predict(Indicator::Pdi, pavement_type, input)?,
        predict(Indicator::Pqi, pavement_type, input)?,
        predict(Indicator::Iri, pavement_type, input)?,
    ])
}

/// Audit export: every stored field of every model as a stable plain-text
/// document, one record per model, including notes on values that are
/// reproduced as printed despite internal inconsistencies in the source.
pub fn catalogue_text() -> String {
    let mut out = String::new();
    out.push_str("published model catalogue\n");
    out.push_str("soil dummy: 1 = Type A, 0 = Type B (reference)\n");
    for model in all_models() {
        out.push_str(&format!(
            "\nmodel: {} / {}\n",
            model.indicator, model.pavement_type
        ));
        out.push_str(&format!(
            "  intercept: beta={:.3}{}\n",
            model.intercept,
            star_suffix(model.intercept_stars)
        ));
        for (predictor, coef) in Predictor::ALL.iter().zip(&model.coefficients) {
            out.push_str(&format!(
                "  {}: beta={:.3}{} beta_std={:.3}\n",
                predictor,
                coef.beta,
                star_suffix(coef.stars),
                coef.beta_std
            ));
        }
        out.push_str(&format!("  r_squared: {:.3}\n", model.r_squared));
        out.push_str(&format!("  adj_r_squared: {:.3}\n", model.adj_r_squared));
        out.push_str(&format!(
            "  overall: F({}, {}) = {:.3}{}\n",
            model.df1,
            model.df2,
            model.f_stat,
            star_suffix(model.f_stars)
        ));
        let env = &model.validity;
        out.push_str(&format!(
            "  validity: precipitation {:.1}..{:.1}, temperature {:.1}..{:.1}, log10_aadt {:.1}..{:.1}, ffs {:.1}..{:.1}\n",
            env.precipitation.min, env.precipitation.max,
            env.temperature.min, env.temperature.max,
            env.log10_aadt.min, env.log10_aadt.max,
            env.ffs.min, env.ffs.max,
        ));
        match (model.indicator, model.pavement_type) {
            (Indicator::Pdi, PavementType::Ac) => {
                out.push_str(
                    "  note: ffs beta stored as the tabulated +0.033; the source narrative prints -0.033\n",
                );
            }
            (Indicator::Pqi, PavementType::Jpcp) => {
                out.push_str(
                    "  note: soil_type_A beta -0.220 and beta_std +0.557 disagree in sign; stored as printed\n",
                );
            }
            _ => {}
        }
    }
    out
}

fn star_suffix(stars: Stars) -> String {
    let s = stars.as_str();
    if s.is_empty() {
        String::new()
    } else {
        format!(" {s}")
    }
}
