//! Release checks: every numbered acceptance criterion plus the module
//! invariant sweeps, shared between the integration test target and the
//! CLI `validate` subcommand.
//!
//! Three checks fail on the current implementation and are expected to:
//! the engine reproduces the static closed forms, the independent oracle
//! and its own internal cross-checks, but its classical-thermal and
//! accelerated plateaus differ from the corresponding closed-form
//! normalizations by constant factors of 2 pi and 4 pi respectively (and
//! consequently the ratio plateau by a factor 2). The scaling laws
//! themselves (powers, T-linearity, crossover location) all hold. The
//! checks compare against the closed forms as stated and report what they
//! find.

use crate::asymptotics::{
    acc_to_thermal_ratio, e_accelerated, e_far_static, e_near_static, e_thermal_classical,
    thermal_like_correction_scaling, unruh_temperature,
};
use crate::atom_response::{
    atomic_susceptibility, atomic_symmetric_correlation, heisenberg_oracle, AtomState,
};
use crate::config::PhysicalConfig;
use crate::correlators::{effective_norm, lightcone_delay, spectral_kernel, worldline};
use crate::energy::{energy_vf, energy_vf_oracle, thermal_excess_energy, EnergyMethod, QuadratureSpec};

/// One named check with its target and verdict.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    fn closeness(name: impl Into<String>, expected: f64, actual: f64, tolerance: f64) -> Self {
        let pass = if expected == 0.0 {
            actual.abs() <= tolerance
        } else {
            ((actual - expected) / expected).abs() <= tolerance
        };
        CheckResult {
            name: name.into(),
            expected,
            actual,
            tolerance,
            pass,
        }
    }

    fn absolute(name: impl Into<String>, expected: f64, actual: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.into(),
            expected,
            actual,
            tolerance,
            pass: (actual - expected).abs() <= tolerance,
        }
    }
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}  {}  expected {:.6e}  actual {:.6e}  tol {:.1e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.expected,
            self.actual,
            self.tolerance
        )
    }
}

const LAMBDA: f64 = 0.1;

fn engine(config: &PhysicalConfig, spec: &QuadratureSpec) -> f64 {
    energy_vf(config, spec, EnergyMethod::SokhotskiPlemelj)
        .map(|r| r.value)
        .unwrap_or(f64::NAN)
}

fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    // least-squares slope of ln|y| against ln x
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

/// Criterion 1: static far zone, coefficient and slope.
pub fn check_far_zone(spec: &QuadratureSpec) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for z in [50.0, 100.0, 200.0] {
        let c = PhysicalConfig::static_vacuum(LAMBDA, 1.0, z);
        let e = engine(&c, spec);
        out.push(CheckResult::closeness(
            format!("far-zone coefficient, gap*z = {z}"),
            1.0,
            e / e_far_static(LAMBDA, 1.0, z),
            0.02,
        ));
    }
    let zs = [50.0, 100.0, 200.0, 350.0, 500.0];
    let es: Vec<f64> = zs
        .iter()
        .map(|&z| engine(&PhysicalConfig::static_vacuum(LAMBDA, 1.0, z), spec))
        .collect();
    out.push(CheckResult::absolute(
        "far-zone log-log slope over gap*z in [50, 500]",
        -3.0,
        loglog_slope(&zs, &es),
        0.02,
    ));
    out
}

/// Criterion 2: static near zone, coefficient and slope.
pub fn check_near_zone(spec: &QuadratureSpec) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for z in [1e-3, 1e-2] {
        let c = PhysicalConfig::static_vacuum(LAMBDA, 1.0, z);
        let e = engine(&c, spec);
        out.push(CheckResult::closeness(
            format!("near-zone coefficient, gap*z = {z}"),
            1.0,
            e / e_near_static(LAMBDA, 1.0, z),
            0.02,
        ));
    }
    let zs = [1e-3, 3e-3, 1e-2];
    let es: Vec<f64> = zs
        .iter()
        .map(|&z| engine(&PhysicalConfig::static_vacuum(LAMBDA, 1.0, z), spec))
        .collect();
    out.push(CheckResult::absolute(
        "near-zone log-log slope over gap*z in [1e-3, 1e-2]",
        -2.0,
        loglog_slope(&zs, &es),
        0.02,
    ));
    out
}

/// Criterion 3: classical thermal plateau, coefficient and T-linearity.
pub fn check_thermal_classical(spec: &QuadratureSpec) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let t = 1e-3;
    for tz in [30.0, 100.0] {
        let z = tz / t;
        let c = PhysicalConfig::thermal(LAMBDA, 1.0, z, t);
        let e = engine(&c, spec);
        out.push(CheckResult::closeness(
            format!("thermal-classical coefficient, T*z = {tz}"),
            1.0,
            e / e_thermal_classical(LAMBDA, 1.0, z, t),
            0.05,
        ));
    }
    let z = 30.0 / t;
    let e1 = engine(&PhysicalConfig::thermal(LAMBDA, 1.0, z, t), spec);
    let e2 = engine(&PhysicalConfig::thermal(LAMBDA, 1.0, z, 2.0 * t), spec);
    out.push(CheckResult::absolute(
        "thermal-classical T-doubling factor",
        2.0,
        e2 / e1,
        0.05,
    ));
    out
}

/// Criterion 4: accelerated non-thermal plateau, coefficient and slope.
pub fn check_accelerated(spec: &QuadratureSpec) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let a = 1e-3;
    for az in [30.0, 100.0] {
        let z = az / a;
        let c = PhysicalConfig::accelerated(LAMBDA, 1.0, z, a);
        let e = engine(&c, spec);
        out.push(CheckResult::closeness(
            format!("accelerated coefficient, a*z = {az}"),
            1.0,
            e / e_accelerated(LAMBDA, 1.0, z, a).unwrap(),
            0.05,
        ));
    }
    let azs = [30.0, 60.0, 120.0, 300.0];
    let zs: Vec<f64> = azs.iter().map(|az| az / a).collect();
    let es: Vec<f64> = zs
        .iter()
        .map(|&z| engine(&PhysicalConfig::accelerated(LAMBDA, 1.0, z, a), spec))
        .collect();
    out.push(CheckResult::absolute(
        "accelerated log-log slope over a*z in [30, 300]",
        -4.0,
        loglog_slope(&zs, &es),
        0.05,
    ));
    out
}

/// Criterion 5: local-inertial (Unruh matching) limit at small a z.
pub fn check_unruh_matching(spec: &QuadratureSpec) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let z = 10.0; // moderate gap*z, well resolved by the engine
    let ratio_at = |az: f64| {
        let a = az / z;
        let acc = engine(&PhysicalConfig::accelerated(LAMBDA, 1.0, z, a), spec);
        let th = engine(
            &PhysicalConfig::thermal(LAMBDA, 1.0, z, unruh_temperature(a)),
            spec,
        );
        acc / th
    };
    let d1 = (ratio_at(1e-2) - 1.0).abs();
    out.push(CheckResult::absolute(
        "accelerated/thermal(T_U) ratio deviation at a*z = 1e-2",
        0.0,
        d1,
        1e-3,
    ));
    let d2 = (ratio_at(5e-3) - 1.0).abs();
    out.push(CheckResult::absolute(
        "deviation reduction factor under a*z halving",
        4.0,
        d1 / d2,
        0.8,
    ));
    out
}

/// Criterion 6: crossover ratio law deep in the non-thermal zone.
pub fn check_ratio_law(spec: &QuadratureSpec) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let a = 1e-3;
    for az in [10.0, 30.0, 100.0] {
        let z = az / a;
        let acc = engine(&PhysicalConfig::accelerated(LAMBDA, 1.0, z, a), spec);
        let th = engine(
            &PhysicalConfig::thermal(LAMBDA, 1.0, z, unruh_temperature(a)),
            spec,
        );
        let ratio = acc / th;
        out.push(CheckResult::closeness(
            format!("ratio * (a*z)^2 / 2 at a*z = {az}"),
            1.0,
            ratio / acc_to_thermal_ratio(az).unwrap(),
            0.05,
        ));
    }
    out
}

/// The fixed 20-configuration grid of criterion 7, spanning every regime
/// including the crossover points gap*z = 1 and a*z = 1.
pub fn oracle_grid() -> Vec<PhysicalConfig> {
    let mut grid = Vec::new();
    for z in [0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0] {
        grid.push(PhysicalConfig::static_vacuum(LAMBDA, 1.0, z));
    }
    for (z, t) in [
        (1.0, 0.05),
        (2.0, 0.25),
        (3.0, 0.4),
        (5.0, 0.3),
        (8.0, 0.5),
        (0.5, 0.08),
    ] {
        grid.push(PhysicalConfig::thermal(LAMBDA, 1.0, z, t));
    }
    for (z, a) in [
        (2.0, 0.5),
        (3.0, 0.8),
        (1.0, 1.0),
        (5.0, 0.4),
        (4.0, 0.75),
        (2.5, 0.08),
    ] {
        grid.push(PhysicalConfig::accelerated(LAMBDA, 1.0, z, a));
    }
    grid
}

/// Criterion 7: engine vs oracle across the fixed grid.
pub fn check_oracle_equivalence(spec: &QuadratureSpec) -> Vec<CheckResult> {
    oracle_grid()
        .iter()
        .map(|c| {
            let e = energy_vf(c, spec, EnergyMethod::SokhotskiPlemelj)
                .map(|r| r.value)
                .unwrap_or(f64::NAN);
            let o = energy_vf_oracle(c, spec).map(|r| r.value).unwrap_or(f64::NAN);
            CheckResult::closeness(
                format!(
                    "engine/oracle, {} z={} a={} T={}",
                    c.scenario, c.separation, c.acceleration, c.temperature
                ),
                1.0,
                e / o,
                1e-3,
            )
        })
        .collect()
}

/// Criterion 8: module invariants on a fast deterministic subset. The full
/// randomized property suites live in the test targets; this covers the
/// same invariants at fixed points for the CLI report.
pub fn check_invariants(spec: &QuadratureSpec) -> Vec<CheckResult> {
    let mut out = Vec::new();

    // quartic coupling scaling, exact
    let c1 = PhysicalConfig::static_vacuum(0.1, 1.0, 2.0);
    let c2 = PhysicalConfig::static_vacuum(0.2, 1.0, 2.0);
    out.push(CheckResult::closeness(
        "quartic coupling scaling (exact)",
        16.0,
        engine(&c2, spec) / engine(&c1, spec),
        1e-14,
    ));

    // dimensional homogeneity
    for s in [0.5, 2.0, 10.0] {
        let base = PhysicalConfig::thermal(LAMBDA, 1.0, 3.0, 0.05);
        let scaled = PhysicalConfig::thermal(LAMBDA, s, 3.0 / s, 0.05 * s);
        out.push(CheckResult::closeness(
            format!("dimensional homogeneity, s = {s}"),
            s,
            engine(&scaled, spec) / engine(&base, spec),
            1e-7,
        ));
    }

    // negativity across scenarios
    for c in oracle_grid() {
        if engine(&c, spec) >= 0.0 {
            out.push(CheckResult::absolute(
                format!("negativity violated at {} z={}", c.scenario, c.separation),
                -1.0,
                1.0,
                0.0,
            ));
        }
    }
    out.push(CheckResult::absolute(
        "negativity across the oracle grid",
        0.0,
        0.0,
        0.0,
    ));

    // correlator limit chain: accelerated -> thermal -> static weights
    let acc = spectral_kernel(&PhysicalConfig::accelerated(LAMBDA, 1.0, 1.0, 1e-8)).unwrap();
    let th = spectral_kernel(&PhysicalConfig::thermal(LAMBDA, 1.0, 1.0, 1e-9)).unwrap();
    let st = spectral_kernel(&PhysicalConfig::static_vacuum(LAMBDA, 1.0, 1.0)).unwrap();
    let chain = (0.3f64, 1.0, 7.0);
    let worst = [chain.0, chain.1, chain.2]
        .iter()
        .map(|&w| {
            let a = acc.statistical_factor(w);
            let t = th.statistical_factor(w);
            let s = st.statistical_factor(w);
            ((a - t).abs() + (t - s).abs()) / s
        })
        .fold(0.0, f64::max);
    out.push(CheckResult::absolute(
        "correlator limit chain (accelerated -> thermal -> static)",
        0.0,
        worst,
        1e-10,
    ));

    // Unruh matching of statistical weights, exact
    let a = 0.7;
    let acc = spectral_kernel(&PhysicalConfig::accelerated(LAMBDA, 1.0, 1.0, a)).unwrap();
    let th = spectral_kernel(&PhysicalConfig::thermal(
        LAMBDA,
        1.0,
        1.0,
        unruh_temperature(a),
    ))
    .unwrap();
    let mism = [0.2f64, 1.0, 4.0]
        .iter()
        .map(|&w| (acc.statistical_factor(w) - th.statistical_factor(w)).abs())
        .fold(0.0, f64::max);
    out.push(CheckResult::absolute(
        "Unruh matching of statistical weights",
        0.0,
        mism,
        1e-14,
    ));

    // atomic closed forms vs the Heisenberg oracle
    let worst = [0.0f64, 0.4, 2.0, 9.0]
        .iter()
        .map(|&u| {
            let (chi, sym) = heisenberg_oracle(1.3, u, AtomState::Ground);
            (chi - atomic_susceptibility(1.3, u)).norm()
                + (sym - atomic_symmetric_correlation(1.3, u)).abs()
        })
        .fold(0.0, f64::max);
    out.push(CheckResult::absolute(
        "atomic response vs Heisenberg oracle",
        0.0,
        worst,
        1e-12,
    ));

    // worldline hyperbola and delay identities
    let p = worldline(0.9, 2.0).unwrap();
    out.push(CheckResult::closeness(
        "worldline hyperbola invariant x^2 - t^2 = 1/a^2",
        0.25,
        p.x * p.x - p.t * p.t,
        1e-12,
    ));
    let (z, a) = (1.7, 0.6);
    let rho = lightcone_delay(z, a).unwrap();
    out.push(CheckResult::closeness(
        "delay identity z = (2/a) sinh(a rho / 2)",
        z,
        (2.0 / a) * (a * rho / 2.0).sinh(),
        1e-12,
    ));
    out.push(CheckResult::closeness(
        "norm identity sinh(a rho)/a",
        effective_norm(z, a),
        (a * rho).sinh() / a,
        1e-12,
    ));
    out
}

/// Criterion 9: the subleading thermal-like correction. The coefficient is
/// not externally specified; report the fitted K +- sigma and check only
/// the T^2 proportionality and the thermal/accelerated coefficient match.
pub fn check_correction_scaling(spec: &QuadratureSpec) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let base = PhysicalConfig::thermal(LAMBDA, 1.0, 1.0, 0.01);
    let fit = thermal_like_correction_scaling(&base, spec, &[0.01, 0.02, 0.04]).unwrap();
    // proportionality: doubling T quadruples the correction
    let e1 = thermal_excess_energy(&PhysicalConfig::thermal(LAMBDA, 1.0, 1.0, 0.02), spec)
        .unwrap()
        .value;
    let e2 = thermal_excess_energy(&PhysicalConfig::thermal(LAMBDA, 1.0, 1.0, 0.04), spec)
        .unwrap()
        .value;
    let sigma_rel = (fit.sigma / fit.k).abs().max(1e-3);
    out.push(CheckResult::absolute(
        format!(
            "T-doubling of the fitted correction (K = {:.4e} +- {:.1e})",
            fit.k, fit.sigma
        ),
        4.0,
        e2 / e1,
        4.0 * (2.0 * sigma_rel + 0.05),
    ));
    // same-coefficient check against the accelerated excess at T_U
    let a = 0.02 * 2.0 * std::f64::consts::PI;
    let acc = thermal_excess_energy(&PhysicalConfig::accelerated(LAMBDA, 1.0, 1.0, a), spec)
        .unwrap()
        .value;
    out.push(CheckResult::closeness(
        "accelerated excess equals thermal excess at T_U (small a*z)",
        1.0,
        acc / e1,
        5e-3,
    ));
    out
}

/// Everything, in criterion order, as (criterion label, results).
pub fn run_all(spec: &QuadratureSpec) -> Vec<(String, Vec<CheckResult>)> {
    vec![
        ("1 static far zone".into(), check_far_zone(spec)),
        ("2 static near zone".into(), check_near_zone(spec)),
        ("3 thermal classical".into(), check_thermal_classical(spec)),
        ("4 accelerated non-thermal".into(), check_accelerated(spec)),
        ("5 Unruh matching at short distance".into(), check_unruh_matching(spec)),
        ("6 crossover ratio law".into(), check_ratio_law(spec)),
        ("7 oracle equivalence".into(), check_oracle_equivalence(spec)),
        ("8 module invariants".into(), check_invariants(spec)),
        ("9 correction-scaling fit".into(), check_correction_scaling(spec)),
    ]
}
