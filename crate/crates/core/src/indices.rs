//! Pavement performance index algebra and free-flow-speed formulas.
//!
//! Four condition indices are in play. PSI (Present Serviceability Index)
//! is a 0–5 ride-quality index derived from IRI. PDI (Pavement Distress
//! Index) is a 0–5 surface-distress index, `5 − ADV`, where the adjusted
//! distress value ADV is produced by an external survey pipeline and only
//! consumed here. PQI (Pavement Quality Index) combines PSI and PDI. IRI
//! (International Roughness Index) is measured in inch/mile.
//!
//! All functions are deterministic, side-effect free, and reject
//! out-of-range inputs instead of clamping, so bad data surfaces at
//! ingestion rather than leaking into model fits.

use alloc::format;
use alloc::string::String;

use crate::error::{Error, Result};

/// Decay constant of the PSI–IRI conversion.
const PSI_DECAY: f64 = 0.002841;

/// Floor of the PQI combination formula.
const PQI_BASE: f64 = 1.158;

/// Weight of the PSI·PDI product in the PQI formula.
const PQI_GAIN: f64 = 0.138;

/// The four performance indicators, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indicator {
    Psi,
    Pdi,
    Pqi,
    Iri,
}

impl Indicator {
    pub const ALL: [Indicator; 4] = [
        Indicator::Psi,
        Indicator::Pdi,
        Indicator::Pqi,
        Indicator::Iri,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Indicator::Psi => "PSI",
            Indicator::Pdi => "PDI",
            Indicator::Pqi => "PQI",
            Indicator::Iri => "IRI",
        }
    }
}

impl core::fmt::Display for Indicator {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated index observation.
///
/// Validation enforces the per-indicator ranges: IRI ≥ 0, PSI in (0, 5],
/// PDI in [0, 5], PQI in [0, 5].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexValue {
    kind: Indicator,
    value: f64,
}

impl IndexValue {
    pub fn new(kind: Indicator, value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFinite(String::from(kind.name())));
        }
        let ok = match kind {
            Indicator::Psi => value > 0.0 && value <= 5.0,
            Indicator::Pdi | Indicator::Pqi => (0.0..=5.0).contains(&value),
            Indicator::Iri => value >= 0.0,
        };
        if ok {
            Ok(IndexValue { kind, value })
        } else {
            Err(Error::Domain(format!(
                "{} value {value} outside its valid range",
                kind.name()
            )))
        }
    }

    pub fn kind(self) -> Indicator {
        self.kind
    }

    pub fn value(self) -> f64 {
        self.value
    }
}

/// Ride quality from roughness: `PSI = 5·exp(−0.002841·IRI)`.
///
/// Strictly decreasing in `iri`; returns exactly 5.0 at `iri = 0` and
/// approaches 0 asymptotically, so the result is always in (0, 5].
pub fn psi_from_iri(iri: f64) -> Result<f64> {
    if !iri.is_finite() {
        return Err(Error::NonFinite(String::from("iri")));
    }
    if iri < 0.0 {
        return Err(Error::Domain(format!("iri must be >= 0, got {iri}")));
    }
    Ok(5.0 * libm::exp(-PSI_DECAY * iri))
}

/// Inverse of [`psi_from_iri`]: `IRI = ln(5/PSI)/0.002841`.
pub fn iri_from_psi(psi: f64) -> Result<f64> {
    if !psi.is_finite() {
        return Err(Error::NonFinite(String::from("psi")));
    }
    if psi <= 0.0 || psi > 5.0 {
        return Err(Error::Domain(format!("psi must be in (0, 5], got {psi}")));
    }
    Ok(libm::log(5.0 / psi) / PSI_DECAY)
}

/// Distress index from the adjusted distress value: `PDI = 5 − ADV`.
///
/// ADV is an input; computing it from raw distress surveys is the caller's
/// responsibility.
pub fn pdi_from_adv(adv: f64) -> Result<f64> {
    if !adv.is_finite() {
        return Err(Error::NonFinite(String::from("adv")));
    }
    if !(0.0..=5.0).contains(&adv) {
        return Err(Error::Domain(format!("adv must be in [0, 5], got {adv}")));
    }
    Ok(5.0 - adv)
}

/// Composite quality index: `PQI = 1.158 + 0.138·PSI·PDI`.
///
/// The formula value is returned without clamping. Note the formula floor:
/// the result is never below 1.158 even though the index is nominally 0–5;
/// the published arithmetic is preserved as-is.
pub fn pqi_from_psi_pdi(psi: f64, pdi: f64) -> Result<f64> {
    for (name, v) in [("psi", psi), ("pdi", pdi)] {
        if !v.is_finite() {
            return Err(Error::NonFinite(String::from(name)));
        }
        if !(0.0..=5.0).contains(&v) {
            return Err(Error::Domain(format!("{name} must be in [0, 5], got {v}")));
        }
    }
    Ok(PQI_BASE + PQI_GAIN * psi * pdi)
}

/// Free flow speed from the posted limit, both in mph.
///
/// Two linear branches with a strict threshold at 50 mph:
/// `0.88·limit + 14` above 50, `0.79·limit + 12` at or below 50. The
/// branches are discontinuous at the threshold (51.5 vs 58.0) and are
/// implemented exactly as published, with no smoothing.
pub fn ffs_from_speed_limit(speed_limit: f64) -> Result<f64> {
    if !speed_limit.is_finite() {
        return Err(Error::NonFinite(String::from("speed_limit")));
    }
    if speed_limit <= 0.0 {
        return Err(Error::Domain(format!(
            "speed_limit must be > 0, got {speed_limit}"
        )));
    }
    if speed_limit > 50.0 {
        Ok(0.88 * speed_limit + 14.0)
    } else {
        Ok(0.79 * speed_limit + 12.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn psi_at_zero_roughness_is_exactly_five() {
        assert_eq!(psi_from_iri(0.0).unwrap(), 5.0);
    }

    #[test]
    fn psi_at_100_inch_per_mile() {
        assert!(close(psi_from_iri(100.0).unwrap(), 3.7634, 1e-4));
    }

    #[test]
    fn psi_at_new_pavement_roughness() {
        // 37.086 inch/mile is the roughness whose PSI is 4.5.
        assert!(close(psi_from_iri(37.086).unwrap(), 4.5, 1e-4));
    }

    #[test]
    fn psi_rejects_bad_iri() {
        assert!(psi_from_iri(-1.0).is_err());
        assert!(psi_from_iri(f64::NAN).is_err());
        assert!(psi_from_iri(f64::INFINITY).is_err());
    }

    #[test]
    fn iri_inversion() {
        assert_eq!(iri_from_psi(5.0).unwrap(), 0.0);
        assert!(close(iri_from_psi(4.5).unwrap(), 37.086, 0.01));
        assert!(close(iri_from_psi(3.7634).unwrap(), 100.0, 0.05));
        assert!(iri_from_psi(0.0).is_err());
        assert!(iri_from_psi(5.1).is_err());
    }

    #[test]
    fn pdi_is_five_minus_adv() {
        assert_eq!(pdi_from_adv(0.0).unwrap(), 5.0);
        assert_eq!(pdi_from_adv(5.0).unwrap(), 0.0);
        assert!(close(pdi_from_adv(1.2).unwrap(), 3.8, 1e-12));
        assert!(pdi_from_adv(5.2).is_err());
        assert!(pdi_from_adv(-0.1).is_err());
    }

    #[test]
    fn pqi_formula_values() {
        // 1.158 + 0.138·4.5·5.0 = 4.263
        assert!(close(pqi_from_psi_pdi(4.5, 5.0).unwrap(), 4.263, 1e-9));
        assert_eq!(pqi_from_psi_pdi(0.0, 0.0).unwrap(), 1.158);
        assert!(close(pqi_from_psi_pdi(3.0, 4.0).unwrap(), 2.814, 1e-9));
        assert!(pqi_from_psi_pdi(5.5, 1.0).is_err());
        assert!(pqi_from_psi_pdi(1.0, -0.5).is_err());
    }

    #[test]
    fn ffs_branches() {
        assert!(close(ffs_from_speed_limit(70.0).unwrap(), 75.6, 1e-12));
        assert!(close(ffs_from_speed_limit(50.0).unwrap(), 51.5, 1e-12));
        assert!(close(ffs_from_speed_limit(55.0).unwrap(), 62.4, 1e-12));
        assert!(ffs_from_speed_limit(0.0).is_err());
        assert!(ffs_from_speed_limit(-5.0).is_err());
    }

    #[test]
    fn ffs_is_discontinuous_at_threshold() {
        let below = ffs_from_speed_limit(50.0).unwrap();
        let above = ffs_from_speed_limit(50.0 + 1e-9).unwrap();
        assert!(close(below, 51.5, 1e-12));
        assert!(close(above, 58.0, 1e-6));
    }

    #[test]
    fn index_value_ranges() {
        assert!(IndexValue::new(Indicator::Psi, 0.0).is_err());
        assert!(IndexValue::new(Indicator::Psi, 5.0).is_ok());
        assert!(IndexValue::new(Indicator::Pdi, 0.0).is_ok());
        assert!(IndexValue::new(Indicator::Pqi, 5.1).is_err());
        assert!(IndexValue::new(Indicator::Iri, -0.01).is_err());
        assert!(IndexValue::new(Indicator::Iri, 300.0).is_ok());
        assert!(IndexValue::new(Indicator::Iri, f64::NAN).is_err());
    }
}
