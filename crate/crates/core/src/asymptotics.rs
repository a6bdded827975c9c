//! Closed-form limits of the interaction energy and the crossover
//! bookkeeping between them.
//!
//! All expressions are leading-order in their respective regime and share
//! the conventions of [`crate::energy`]: natural units, `gap` the physical
//! level splitting, energies negative (attractive).

use std::f64::consts::PI;

use crate::config::PhysicalConfig;
use crate::energy::{thermal_excess_energy, QuadratureSpec};
use crate::error::CoreError;

/// Non-retarded (near-zone) static limit, valid for gap * z << 1:
/// E = -lambda^4 / (1024 pi^2 gap z^2).
pub fn e_near_static(coupling: f64, gap: f64, z: f64) -> f64 {
    let l2 = coupling * coupling;
    -l2 * l2 / (1024.0 * PI * PI * gap * z * z)
}

/// Retarded (far-zone) static limit, valid for gap * z >> 1:
/// E = -lambda^4 / (512 pi^3 gap^2 z^3).
pub fn e_far_static(coupling: f64, gap: f64, z: f64) -> f64 {
    let l2 = coupling * coupling;
    -l2 * l2 / (512.0 * PI.powi(3) * gap * gap * z * z * z)
}

/// Classical thermal limit, valid for T z >> 1 (and T << gap):
/// E = -lambda^4 T / (512 pi^3 gap^2 z^2).
pub fn e_thermal_classical(coupling: f64, gap: f64, z: f64, temperature: f64) -> f64 {
    let l2 = coupling * coupling;
    -l2 * l2 * temperature / (512.0 * PI.powi(3) * gap * gap * z * z)
}

/// Non-thermal accelerated limit, valid for a z >> 1 (and a << gap):
/// E = -lambda^4 / (512 pi^4 gap^2 a z^4). Note the extra 1/z^2 relative
/// to the classical thermal law at the matching temperature.
pub fn e_accelerated(coupling: f64, gap: f64, z: f64, acceleration: f64) -> Result<f64, CoreError> {
    if !(acceleration > 0.0) {
        return Err(CoreError::Domain(format!(
            "accelerated asymptote needs a > 0, got {acceleration}"
        )));
    }
    let l2 = coupling * coupling;
    Ok(-l2 * l2 / (512.0 * PI.powi(4) * gap * gap * acceleration * z * z * z * z))
}

/// Effective temperature seen by a uniformly accelerated detector, a / 2 pi.
pub fn unruh_temperature(acceleration: f64) -> f64 {
    acceleration / (2.0 * PI)
}

/// Separation at which the accelerated pair stops looking thermal, 1/a.
pub fn crossover_length(acceleration: f64) -> Result<f64, CoreError> {
    if !(acceleration > 0.0) {
        return Err(CoreError::Domain(
            "a static pair has no thermal-to-non-thermal crossover".into(),
        ));
    }
    Ok(1.0 / acceleration)
}

/// Asymptotic ratio of the accelerated energy to the thermal energy at the
/// matching effective temperature, as a function of the group a z:
/// 2 / (a z)^2. This closed form only applies deep in the non-thermal zone
/// a z >> 1; at small a z the full ratio approaches 1 instead.
pub fn acc_to_thermal_ratio(az: f64) -> Result<f64, CoreError> {
    if !(az > 0.0) {
        return Err(CoreError::Domain(format!("ratio needs a z > 0, got {az}")));
    }
    Ok(2.0 / (az * az))
}

/// The four closed forms as one dispatchable type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticForm {
    NearStatic,
    FarStatic,
    ThermalClassical,
    AcceleratedNonThermal,
}

impl AsymptoticForm {
    pub fn evaluate(&self, config: &PhysicalConfig) -> Result<f64, CoreError> {
        let c = config;
        match self {
            AsymptoticForm::NearStatic => Ok(e_near_static(c.coupling, c.gap, c.separation)),
            AsymptoticForm::FarStatic => Ok(e_far_static(c.coupling, c.gap, c.separation)),
            AsymptoticForm::ThermalClassical => {
                if c.temperature <= 0.0 {
                    return Err(CoreError::Domain(
                        "thermal asymptote needs T > 0".into(),
                    ));
                }
                Ok(e_thermal_classical(c.coupling, c.gap, c.separation, c.temperature))
            }
            AsymptoticForm::AcceleratedNonThermal => {
                e_accelerated(c.coupling, c.gap, c.separation, c.acceleration)
            }
        }
    }
}

/// Result of fitting the quantum-regime thermal-like correction
/// dE = -K lambda^4 T_eff^2 / (gap^2 z) over a grid of T_eff z values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionFit {
    pub k: f64,
    /// Sample standard deviation of the per-point K estimates.
    pub sigma: f64,
    pub samples: usize,
}

/// Analytic value of the correction coefficient, 1 / (384 pi).
pub const K_THERMAL_CORRECTION: f64 = 1.0 / (384.0 * PI);

/// Fits the low-temperature statistical correction to the pair energy.
///
/// For T z << 1 and T << gap the excess energy obeys
/// dE = -K lambda^4 T^2 / (gap^2 z); this computes the excess numerically
/// at each requested T z and returns the mean and scatter of the implied K.
/// Grid points outside the quantum window are refused since the fitted law
/// simply does not hold there.
pub fn thermal_like_correction_scaling(
    base: &PhysicalConfig,
    spec: &QuadratureSpec,
    t_z_grid: &[f64],
) -> Result<CorrectionFit, CoreError> {
    if t_z_grid.len() < 2 {
        return Err(CoreError::Parameters(
            "correction fit needs at least two grid points".into(),
        ));
    }
    let mut ks = Vec::with_capacity(t_z_grid.len());
    for &t_z in t_z_grid {
        if !(t_z > 0.0 && t_z <= 0.15) {
            return Err(CoreError::Domain(format!(
                "grid point T z = {t_z} is outside the quantum window (0, 0.15]"
            )));
        }
        let t = t_z / base.separation;
        if t / base.gap > 0.15 {
            return Err(CoreError::Domain(format!(
                "grid point T z = {t_z} implies T/gap = {} > 0.15, outside the \
                 validity window of the fitted law",
                t / base.gap
            )));
        }
        let config = PhysicalConfig::thermal(base.coupling, base.gap, base.separation, t);
        let excess = thermal_excess_energy(&config, spec)?;
        let l2 = base.coupling * base.coupling;
        let k = -excess.value * base.gap * base.gap * base.separation / (l2 * l2 * t * t);
        ks.push(k);
    }
    let n = ks.len() as f64;
    let mean = ks.iter().sum::<f64>() / n;
    let var = ks.iter().map(|k| (k - mean) * (k - mean)).sum::<f64>() / (n - 1.0);
    Ok(CorrectionFit {
        k: mean,
        sigma: var.sqrt(),
        samples: ks.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn dimensional_scaling_of_the_closed_forms() {
        // energies are homogeneous of degree 1 under gap -> s gap, z -> z/s,
        // T -> s T, a -> s a
        for s in [0.5, 2.0, 10.0] {
            assert_relative_eq!(
                e_near_static(0.1, 2.0 * s, 3.0 / s),
                s * e_near_static(0.1, 2.0, 3.0),
                max_relative = 1e-14
            );
            assert_relative_eq!(
                e_far_static(0.1, 2.0 * s, 3.0 / s),
                s * e_far_static(0.1, 2.0, 3.0),
                max_relative = 1e-14
            );
            assert_relative_eq!(
                e_thermal_classical(0.1, 2.0 * s, 3.0 / s, 0.05 * s),
                s * e_thermal_classical(0.1, 2.0, 3.0, 0.05),
                max_relative = 1e-14
            );
            assert_relative_eq!(
                e_accelerated(0.1, 2.0 * s, 3.0 / s, 0.05 * s).unwrap(),
                s * e_accelerated(0.1, 2.0, 3.0, 0.05).unwrap(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn ratio_and_crossover_bookkeeping() {
        assert_relative_eq!(unruh_temperature(2.0 * PI), 1.0, max_relative = 1e-15);
        assert_relative_eq!(crossover_length(0.25).unwrap(), 4.0, max_relative = 1e-15);
        assert!(crossover_length(0.0).is_err());
        assert_relative_eq!(acc_to_thermal_ratio(2.0).unwrap(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(
            acc_to_thermal_ratio(2.0f64.sqrt()).unwrap(),
            1.0,
            max_relative = 1e-15
        );
        // consistency: the ratio of the two closed forms at T = a / 2 pi
        let (l, g, z, a) = (0.1, 1.0, 30.0, 1.0);
        let ea = e_accelerated(l, g, z, a).unwrap();
        let et = e_thermal_classical(l, g, z, unruh_temperature(a));
        assert_relative_eq!(
            ea / et,
            acc_to_thermal_ratio(a * z).unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn correction_fit_recovers_the_analytic_coefficient() {
        let base = PhysicalConfig::thermal(0.1, 1.0, 1.0, 0.01);
        let spec = QuadratureSpec::default();
        let fit =
            thermal_like_correction_scaling(&base, &spec, &[0.02, 0.04, 0.08]).unwrap();
        assert_relative_eq!(fit.k, K_THERMAL_CORRECTION, max_relative = 2e-2);
        assert!(fit.sigma < 0.1 * fit.k.abs());
    }

    #[test]
    fn correction_fit_refuses_the_classical_regime() {
        let base = PhysicalConfig::thermal(0.1, 1.0, 1.0, 0.01);
        let spec = QuadratureSpec::default();
        assert!(thermal_like_correction_scaling(&base, &spec, &[0.5, 1.0]).is_err());
    }
}
