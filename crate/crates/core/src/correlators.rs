//! Field-side ingredients: worldlines, light-cone delay, spectral kernel
//! along the pair of trajectories, and the two-point correlators built
//! from it.
//!
//! Both stationary non-vacuum scenarios reduce to the same structure: in
//! the proper time of either atom the field correlator between the two
//! worldlines is a thermal correlator at an effective temperature (the
//! physical one, or a/2pi for uniform acceleration) evaluated at an
//! effective delay `rho` with an overall normalization `norm`. Everything
//! downstream only consumes (rho, norm, t_eff).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::config::{PhysicalConfig, Scenario};
use crate::error::CoreError;
use crate::quad::{aitken_limit, gk15, integrate_panels, richardson};

/// Lab-frame event on a trajectory; `x` is along the acceleration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Uniformly accelerated trajectory (Rindler hyperbola) of proper
/// acceleration `a`, parametrized by proper time.
pub fn worldline(tau: f64, acceleration: f64) -> Result<SpacetimePoint, CoreError> {
    if !(acceleration > 0.0) || !acceleration.is_finite() {
        return Err(CoreError::Domain(format!(
            "worldline needs a > 0 (a static trajectory has no hyperbola), got a = {acceleration}"
        )));
    }
    Ok(SpacetimePoint {
        t: (acceleration * tau).sinh() / acceleration,
        x: (acceleration * tau).cosh() / acceleration,
        y: 0.0,
        z: 0.0,
    })
}

/// Effective propagation delay between the two trajectories, in proper
/// time. Static pairs: the separation itself. Co-accelerated pairs
/// (separated transversally to the acceleration): (2/a) asinh(a z / 2),
/// which tends to z as a -> 0.
pub fn lightcone_delay(separation: f64, acceleration: f64) -> Result<f64, CoreError> {
    if !(separation > 0.0) || !separation.is_finite() {
        return Err(CoreError::Domain(format!(
            "separation must be > 0, got {separation}"
        )));
    }
    if !(acceleration >= 0.0) || !acceleration.is_finite() {
        return Err(CoreError::Domain(format!(
            "acceleration must be >= 0, got {acceleration}"
        )));
    }
    if acceleration == 0.0 {
        return Ok(separation);
    }
    Ok((2.0 / acceleration) * (acceleration * separation / 2.0).asinh())
}

/// Normalization of the cross correlator: z for static pairs,
/// z sqrt(1 + (a z / 2)^2) = sinh(a rho) / a for co-accelerated ones.
pub fn effective_norm(separation: f64, acceleration: f64) -> f64 {
    let half = 0.5 * acceleration * separation;
    separation * (1.0 + half * half).sqrt()
}

/// Stationary reduction of the field two-point function between the two
/// worldlines: delay, normalization and effective temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralKernel {
    pub scenario: Scenario,
    /// Effective propagation delay in proper time.
    pub rho: f64,
    /// Overall 1/(4 pi^2 norm ...) normalization length.
    pub norm: f64,
    /// Effective temperature: T, a/(2 pi), or zero.
    pub t_eff: f64,
}

impl SpectralKernel {
    /// Detailed-balance weight `coth(omega / 2 T_eff)`, equal to 1 at zero
    /// effective temperature.
    pub fn statistical_factor(&self, omega: f64) -> f64 {
        1.0 + self.statistical_excess(omega)
    }

    /// Thermal excess `coth(omega / 2 T_eff) - 1 = 2 / (e^{omega/T_eff} - 1)`.
    /// Vanishes at zero effective temperature and decays exponentially in
    /// `omega`, which is what makes the vacuum/excess split numerically safe.
    pub fn statistical_excess(&self, omega: f64) -> f64 {
        if self.t_eff == 0.0 {
            return 0.0;
        }
        let r = omega / self.t_eff;
        if r > 700.0 {
            return 0.0;
        }
        2.0 / r.exp_m1()
    }
}

/// Builds the [`SpectralKernel`] for a validated configuration.
pub fn spectral_kernel(config: &PhysicalConfig) -> Result<SpectralKernel, CoreError> {
    let violations = crate::config::validate_config(config);
    if violations
        .iter()
        .any(|v| v.severity == crate::config::Severity::Error)
    {
        return Err(CoreError::Config(violations));
    }
    let rho = lightcone_delay(config.separation, config.acceleration)?;
    let norm = effective_norm(config.separation, config.acceleration);
    let t_eff = match config.scenario {
        Scenario::StaticVacuum => 0.0,
        Scenario::Thermal => config.temperature,
        Scenario::Accelerated => config.acceleration / (2.0 * PI),
    };
    Ok(SpectralKernel {
        scenario: config.scenario,
        rho,
        norm,
        t_eff,
    })
}

/// Delta-function form of the field's retarded response between the two
/// trajectories: amplitude and delay, i.e. the kernel acts as
/// `amplitude * delta(t - rho)`.
pub fn susceptibility_delta_form(kernel: &SpectralKernel) -> (Complex64, f64) {
    (
        Complex64::new(0.0, -1.0 / (8.0 * PI * kernel.norm)),
        kernel.rho,
    )
}

// Regulated sine transform int_0^inf sin(w x) e^{-eps w} dw, summed over
// half-period lobes with Aitken acceleration. One Gauss-Kronrod panel per
// lobe is already exact to well below 1e-12 relative (less than a cycle
// per panel), so no adaptive refinement is needed.
fn sine_transform_reg(x: f64, eps: f64) -> (f64, f64) {
    let w_half = PI / x;
    let mut partials = Vec::with_capacity(64);
    let mut tot = 0.0;
    for k in 0..64usize {
        let a = k as f64 * w_half;
        let b = (k + 1) as f64 * w_half;
        let (v, _, _) = gk15(&mut |w: f64| (w * x).sin() * (-eps * w).exp(), a, b);
        tot += v;
        partials.push(tot);
        if k > 6 && v.abs() < 1e-16 * (tot.abs() + 1.0 / x) {
            break;
        }
    }
    aitken_limit(&partials)
}

// Vacuum sine transform int_0^inf sin(w x) dw = 1/x, reached by Richardson
// extrapolation of the regulated transform in eps. The regulator must scale
// with x (eps = c x) so the expansion parameter eps/x is uniform.
fn vacuum_transform(x: f64) -> (f64, f64) {
    let vals: Vec<f64> = (0..5)
        .map(|k| sine_transform_reg(x, 0.1 * x / f64::powi(2.0, k)).0)
        .collect();
    richardson(&vals, 2.0)
}

// Thermal-excess sine transform int_0^inf (2/(e^{w/T}-1)) sin(w x) dw.
// Small x T: the integrand support [0, ~45 T] covers few lobes, so plain
// panels resolve it. Large x T: panelizing the whole support blows up, but
// the lobe sums form an alternating series that Aitken handles.
fn excess_transform(x: f64, t_eff: f64) -> (f64, f64) {
    if t_eff == 0.0 {
        return (0.0, 0.0);
    }
    let support = 45.0 * t_eff;
    let lobe = PI / x;
    let mut f = |w: f64| {
        if w <= 0.0 {
            return 2.0 * t_eff * x;
        }
        let r = w / t_eff;
        if r > 700.0 {
            return 0.0;
        }
        2.0 / r.exp_m1() * (w * x).sin()
    };
    let n_lobes = support / lobe;
    if n_lobes <= 64.0 {
        let r = integrate_panels(&mut f, 0.0, support, lobe.min(support / 16.0), 6);
        return (r.value, r.error);
    }
    let mut partials = Vec::with_capacity(128);
    let mut tot = 0.0;
    let mut quad_err = 0.0;
    for k in 0..400usize {
        let a = k as f64 * lobe;
        let b = (k + 1) as f64 * lobe;
        let (v, e, _) = gk15(&mut f, a, b);
        tot += v;
        quad_err += e;
        partials.push(tot);
        if k > 6 && v.abs() < 1e-16 * (tot.abs() + t_eff) {
            break;
        }
        if partials.len() >= 12 && partials.len() % 4 == 0 {
            let (_, e) = aitken_limit(&partials);
            if e < 1e-13 * (tot.abs() + t_eff) {
                break;
            }
        }
    }
    let (lim, err) = aitken_limit(&partials);
    (lim, err + quad_err)
}

/// Odd retarded correlator profile Phi(x): the commutator function of the
/// field between the two worldlines, as a function of proper-time lag,
/// computed numerically from its spectral representation. Returns the value
/// and an error estimate. For a static pair this equals 1/(8 pi^2 norm x);
/// at finite effective temperature, pi T coth(pi T x)/(8 pi^2 norm).
pub fn retarded_correlation(kernel: &SpectralKernel, x: f64) -> Result<(f64, f64), CoreError> {
    if x == 0.0 || !x.is_finite() {
        return Err(CoreError::Domain(format!(
            "retarded correlator has a light-cone singularity at lag {x}"
        )));
    }
    let sign = x.signum();
    let x = x.abs();
    let (t1, e1) = vacuum_transform(x);
    let (t2, e2) = excess_transform(x, kernel.t_eff);
    let scale = 8.0 * PI * PI * kernel.norm;
    Ok((sign * (t1 + t2) / scale, (e1 + e2) / scale))
}

/// Symmetric (anticommutator) correlator of the field between the two
/// worldlines at time split `t`, assembled from the odd profile:
/// C(t) = Phi(rho + t) + Phi(rho - t).
pub fn symmetric_correlation(kernel: &SpectralKernel, t: f64) -> Result<(f64, f64), CoreError> {
    let (p, ep) = retarded_correlation(kernel, kernel.rho + t)?;
    let (m, em) = retarded_correlation(kernel, kernel.rho - t)?;
    Ok((p + m, ep + em))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use crate::config::PhysicalConfig;

    fn closed_phi(x: f64, norm: f64, t_eff: f64) -> f64 {
        if t_eff == 0.0 {
            1.0 / (8.0 * PI * PI * norm * x)
        } else {
            PI * t_eff / (PI * t_eff * x).tanh() / (8.0 * PI * PI * norm)
        }
    }

    #[test]
    fn worldline_is_the_unit_hyperbola() {
        let p = worldline(1.0, 1.0).unwrap();
        assert_relative_eq!(p.t, 1.0f64.sinh(), max_relative = 1e-15);
        assert_relative_eq!(p.x, 1.0f64.cosh(), max_relative = 1e-15);
        // invariant x^2 - t^2 = 1/a^2 along the trajectory
        assert_relative_eq!(p.x * p.x - p.t * p.t, 1.0, max_relative = 1e-12);
        assert!(worldline(1.0, 0.0).is_err());
    }

    #[test]
    fn delay_and_norm_reference_values() {
        let rho = lightcone_delay(1.0, 2.0).unwrap();
        assert_relative_eq!(rho, 1.0f64.asinh(), max_relative = 1e-15);
        assert_relative_eq!(effective_norm(1.0, 2.0), 2.0f64.sqrt(), max_relative = 1e-15);
        // a -> 0 limit
        assert_relative_eq!(lightcone_delay(3.0, 1e-9).unwrap(), 3.0, max_relative = 1e-12);
    }

    #[test]
    fn static_correlator_matches_closed_form() {
        let c = PhysicalConfig::static_vacuum(0.1, 1.0, 1.0);
        let k = spectral_kernel(&c).unwrap();
        for x in [0.3, 1.0, 4.0, 20.0] {
            let (v, _) = retarded_correlation(&k, x).unwrap();
            assert_relative_eq!(v, closed_phi(x, 1.0, 0.0), max_relative = 1e-7);
        }
        // symmetric correlator at zero lag: 2 Phi(rho) = 1/(4 pi^2)
        let (s, _) = symmetric_correlation(&k, 0.0).unwrap();
        assert_relative_eq!(s, 1.0 / (4.0 * PI * PI), max_relative = 1e-7);
    }

    #[test]
    fn thermal_correlator_matches_closed_form() {
        let c = PhysicalConfig::thermal(0.1, 1.0, 2.0, 0.25);
        let k = spectral_kernel(&c).unwrap();
        for x in [0.5, 2.0, 8.0, 40.0, 200.0] {
            let (v, _) = retarded_correlation(&k, x).unwrap();
            assert_relative_eq!(v, closed_phi(x, 2.0, 0.25), max_relative = 1e-6);
        }
    }

    #[test]
    fn accelerated_kernel_has_unruh_temperature() {
        let c = PhysicalConfig::accelerated(0.1, 1.0, 1.0, 0.08);
        let k = spectral_kernel(&c).unwrap();
        assert_relative_eq!(k.t_eff, 0.08 / (2.0 * PI), max_relative = 1e-15);
        let (v, _) = retarded_correlation(&k, 3.0).unwrap();
        assert_relative_eq!(v, closed_phi(3.0, k.norm, k.t_eff), max_relative = 1e-6);
    }

    #[test]
    fn retarded_correlator_is_odd() {
        let c = PhysicalConfig::thermal(0.1, 1.0, 1.0, 0.05);
        let k = spectral_kernel(&c).unwrap();
        let (p, _) = retarded_correlation(&k, 1.7).unwrap();
        let (m, _) = retarded_correlation(&k, -1.7).unwrap();
        assert_relative_eq!(p, -m, max_relative = 1e-14);
        assert!(retarded_correlation(&k, 0.0).is_err());
    }

    #[test]
    fn delta_form_amplitude() {
        let c = PhysicalConfig::static_vacuum(0.1, 1.0, 2.0);
        let k = spectral_kernel(&c).unwrap();
        let (amp, delay) = susceptibility_delta_form(&k);
        assert_relative_eq!(amp.im, -1.0 / (16.0 * PI), max_relative = 1e-15);
        assert_eq!(amp.re, 0.0);
        assert_relative_eq!(delay, 2.0, max_relative = 1e-15);
    }
}
