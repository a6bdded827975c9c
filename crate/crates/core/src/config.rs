//! Physical parameter model, dimensionless groups and regime classification.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

/// Which stationary situation the two atoms are in.
///
/// The combined case (both `T > 0` and `a > 0`) is not supported: no
/// correlator is available for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scenario {
    StaticVacuum,
    Thermal,
    Accelerated,
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scenario::StaticVacuum => write!(f, "static"),
            Scenario::Thermal => write!(f, "thermal"),
            Scenario::Accelerated => write!(f, "accelerated"),
        }
    }
}

/// Full physical parameter set in natural units.
///
/// `gap` is the physical level splitting of each atom (the transition
/// frequency). `separation` is perpendicular to the direction of motion.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PhysicalConfig {
    /// Dimensionless coupling; energies scale as `coupling^4`.
    pub coupling: f64,
    /// Atomic transition frequency (level splitting), energy units.
    pub gap: f64,
    /// Interatomic separation, length units.
    pub separation: f64,
    /// Proper acceleration, inverse length units. Zero unless `Accelerated`.
    pub acceleration: f64,
    /// Field temperature, energy units. Zero unless `Thermal`.
    pub temperature: f64,
    pub scenario: Scenario,
}

impl PhysicalConfig {
    pub fn static_vacuum(coupling: f64, gap: f64, separation: f64) -> Self {
        PhysicalConfig {
            coupling,
            gap,
            separation,
            acceleration: 0.0,
            temperature: 0.0,
            scenario: Scenario::StaticVacuum,
        }
    }

    pub fn thermal(coupling: f64, gap: f64, separation: f64, temperature: f64) -> Self {
        PhysicalConfig {
            coupling,
            gap,
            separation,
            acceleration: 0.0,
            temperature,
            scenario: Scenario::Thermal,
        }
    }

    pub fn accelerated(coupling: f64, gap: f64, separation: f64, acceleration: f64) -> Self {
        PhysicalConfig {
            coupling,
            gap,
            separation,
            acceleration,
            temperature: 0.0,
            scenario: Scenario::Accelerated,
        }
    }

    pub fn groups(&self) -> DimensionlessGroups {
        DimensionlessGroups::from_config(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Severity {
    /// Hard invariant broken; results are meaningless.
    Error,
    /// Validity-window flag; results are produced but not trusted.
    Warning,
}

/// One violated bound, naming the offending field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub field: &'static str,
    pub severity: Severity,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self.severity {
            Severity::Error => "violation",
            Severity::Warning => "warning",
        };
        write!(f, "{} [{}]: {}", tag, self.field, self.message)
    }
}

/// Ratio above which the `T << gap` / `a << gap` validity windows are
/// flagged as violated.
pub const VALIDITY_WINDOW_RATIO: f64 = 0.1;

/// Checks every invariant of a [`PhysicalConfig`]; returns an empty list
/// iff all of them hold. Validity-window breaches come back as warnings,
/// everything else as errors.
pub fn validate_config(config: &PhysicalConfig) -> Vec<Violation> {
    let mut out = Vec::new();
    let err = |field, message: String| Violation {
        field,
        severity: Severity::Error,
        message,
    };
    if !(config.coupling > 0.0) || !config.coupling.is_finite() {
        out.push(err("coupling", format!("must be > 0, got {}", config.coupling)));
    }
    if !(config.gap > 0.0) || !config.gap.is_finite() {
        out.push(err("gap", format!("must be > 0, got {}", config.gap)));
    }
    if !(config.separation > 0.0) || !config.separation.is_finite() {
        out.push(err(
            "separation",
            format!("must be > 0, got {}", config.separation),
        ));
    }
    if !(config.acceleration >= 0.0) || !config.acceleration.is_finite() {
        out.push(err(
            "acceleration",
            format!("must be >= 0, got {}", config.acceleration),
        ));
    }
    if !(config.temperature >= 0.0) || !config.temperature.is_finite() {
        out.push(err(
            "temperature",
            format!("must be >= 0, got {}", config.temperature),
        ));
    }
    match config.scenario {
        Scenario::StaticVacuum => {
            if config.acceleration != 0.0 {
                out.push(err("acceleration", "StaticVacuum requires a = 0".into()));
            }
            if config.temperature != 0.0 {
                out.push(err("temperature", "StaticVacuum requires T = 0".into()));
            }
        }
        Scenario::Thermal => {
            if config.acceleration != 0.0 {
                out.push(err("acceleration", "Thermal requires a = 0".into()));
            }
        }
        Scenario::Accelerated => {
            if config.temperature != 0.0 {
                out.push(err("temperature", "Accelerated requires T = 0".into()));
            }
        }
    }
    if config.gap > 0.0 {
        if config.temperature / config.gap >= VALIDITY_WINDOW_RATIO {
            out.push(Violation {
                field: "temperature",
                severity: Severity::Warning,
                message: format!(
                    "T << gap validity window violated (T/gap = {})",
                    config.temperature / config.gap
                ),
            });
        }
        if config.acceleration / config.gap >= VALIDITY_WINDOW_RATIO {
            out.push(Violation {
                field: "acceleration",
                severity: Severity::Warning,
                message: format!(
                    "a << gap validity window violated (a/gap = {})",
                    config.acceleration / config.gap
                ),
            });
        }
    }
    out
}

/// The dimensionless combinations that control every regime of the problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessGroups {
    /// Retardation group `gap * z`.
    pub omega_z: f64,
    /// Inertial-breakdown group `a * z`.
    pub a_z: f64,
    /// Thermal-wavelength group `T * z`.
    pub t_z: f64,
    pub t_over_omega: f64,
    pub a_over_omega: f64,
}

impl DimensionlessGroups {
    pub fn from_config(config: &PhysicalConfig) -> Self {
        DimensionlessGroups {
            omega_z: config.gap * config.separation,
            a_z: config.acceleration * config.separation,
            t_z: config.temperature * config.separation,
            t_over_omega: config.temperature / config.gap,
            a_over_omega: config.acceleration / config.gap,
        }
    }
}

/// Named regimes of the interaction energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    NearZone,
    FarZone,
    ThermalClassical,
    AcceleratedNonThermal,
    Crossover,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::NearZone => "near_zone",
            Regime::FarZone => "far_zone",
            Regime::ThermalClassical => "thermal_classical",
            Regime::AcceleratedNonThermal => "accelerated_non_thermal",
            Regime::Crossover => "crossover",
        };
        write!(f, "{s}")
    }
}

/// Decade-wide margins around the asymptotic conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeThresholds {
    pub lo: f64,
    pub hi: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        RegimeThresholds { lo: 0.1, hi: 10.0 }
    }
}

impl RegimeThresholds {
    pub fn validate(&self) -> Result<(), CoreError> {
        if !(self.lo > 0.0 && self.hi.is_finite() && self.lo < self.hi) {
            return Err(CoreError::Parameters(format!(
                "regime thresholds must satisfy 0 < lo < hi, got lo={} hi={}",
                self.lo, self.hi
            )));
        }
        Ok(())
    }
}

/// Pure classification of a parameter point into exactly one [`Regime`].
///
/// Thermal/accelerated labels take precedence over the retardation labels;
/// the near/far labels additionally require the thermal and acceleration
/// groups to be small.
pub fn classify_regime(
    groups: &DimensionlessGroups,
    thresholds: &RegimeThresholds,
) -> Result<Regime, CoreError> {
    thresholds.validate()?;
    let RegimeThresholds { lo, hi } = *thresholds;
    if groups.t_z > hi {
        return Ok(Regime::ThermalClassical);
    }
    if groups.a_z > hi {
        return Ok(Regime::AcceleratedNonThermal);
    }
    let quiet = groups.a_z <= lo && groups.t_z <= lo;
    if quiet && groups.omega_z < lo {
        return Ok(Regime::NearZone);
    }
    if quiet && groups.omega_z > hi {
        return Ok(Regime::FarZone);
    }
    Ok(Regime::Crossover)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_static_config_has_no_violations() {
        let c = PhysicalConfig::static_vacuum(0.1, 1.0, 1.0);
        assert!(validate_config(&c).is_empty());
    }

    #[test]
    fn accelerated_with_temperature_is_rejected() {
        let mut c = PhysicalConfig::accelerated(0.1, 1.0, 1.0, 0.01);
        c.temperature = 0.01;
        let v = validate_config(&c);
        assert!(v
            .iter()
            .any(|x| x.field == "temperature" && x.severity == Severity::Error));
    }

    #[test]
    fn validity_window_produces_warning_only() {
        let c = PhysicalConfig::accelerated(0.1, 1.0, 1.0, 2.0);
        let v = validate_config(&c);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].severity, Severity::Warning);
        assert_eq!(v[0].field, "acceleration");
    }

    #[test]
    fn regime_examples() {
        let th = RegimeThresholds::default();
        let g = |omega_z, a_z, t_z| DimensionlessGroups {
            omega_z,
            a_z,
            t_z,
            t_over_omega: 0.0,
            a_over_omega: 0.0,
        };
        assert_eq!(classify_regime(&g(0.01, 0.0, 0.0), &th).unwrap(), Regime::NearZone);
        assert_eq!(
            classify_regime(&g(100.0, 100.0, 0.0), &th).unwrap(),
            Regime::AcceleratedNonThermal
        );
        assert_eq!(classify_regime(&g(1.0, 1.0, 0.0), &th).unwrap(), Regime::Crossover);
        assert_eq!(classify_regime(&g(100.0, 0.0, 0.0), &th).unwrap(), Regime::FarZone);
        assert_eq!(
            classify_regime(&g(1.0, 0.0, 30.0), &th).unwrap(),
            Regime::ThermalClassical
        );
    }

    #[test]
    fn bad_thresholds_error() {
        let g = DimensionlessGroups {
            omega_z: 1.0,
            a_z: 0.0,
            t_z: 0.0,
            t_over_omega: 0.0,
            a_over_omega: 0.0,
        };
        assert!(classify_regime(&g, &RegimeThresholds { lo: 5.0, hi: 1.0 }).is_err());
    }

    #[test]
    fn groups_scaling_closure() {
        let c = PhysicalConfig::thermal(0.1, 2.0, 3.0, 0.05);
        let g1 = c.groups();
        for s in [0.5, 2.0, 10.0] {
            let c2 = PhysicalConfig::thermal(0.1, 2.0 * s, 3.0 / s, 0.05 * s);
            let g2 = c2.groups();
            assert!((g1.omega_z - g2.omega_z).abs() < 1e-12 * g1.omega_z.abs());
            assert!((g1.t_z - g2.t_z).abs() < 1e-12 * g1.t_z.abs().max(1e-300));
        }
    }
}
