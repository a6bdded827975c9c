//! Property tests: structural invariants that must hold for any parameters,
//! not just hand-picked grids.

use approx::assert_relative_eq;
use proptest::prelude::*;
use std::f64::consts::PI;

use cpair_core::asymptotics::unruh_temperature;
use cpair_core::atom_response::{
    atomic_susceptibility, atomic_symmetric_correlation, heisenberg_oracle, AtomState,
};
use cpair_core::correlators::{effective_norm, lightcone_delay};
use cpair_core::{
    energy_vf, retarded_correlation, spectral_kernel, worldline, EnergyMethod, PhysicalConfig,
    QuadratureSpec, Scenario,
};

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn energy(c: &PhysicalConfig) -> f64 {
    energy_vf(c, &spec(), EnergyMethod::SokhotskiPlemelj)
        .unwrap()
        .value
}

// Any scenario with parameters kept in a numerically comfortable band;
// invariants should not care which scenario they land in.
fn any_config() -> impl Strategy<Value = PhysicalConfig> {
    (
        0..3usize,
        0.01f64..1.0,   // coupling
        0.25f64..4.0,   // gap
        0.2f64..8.0,    // separation
        0.02f64..1.5,   // a or T
    )
        .prop_map(|(kind, coupling, gap, z, x)| match kind {
            0 => PhysicalConfig::static_vacuum(coupling, gap, z),
            1 => PhysicalConfig::thermal(coupling, gap, z, x),
            _ => PhysicalConfig::accelerated(coupling, gap, z, x),
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Doubling the coupling multiplies the energy by exactly 16: the
    // coupling enters only through the overall lambda^4 and a power-of-two
    // rescaling is exact in binary floating point.
    #[test]
    fn coupling_scaling_is_exactly_quartic(c in any_config()) {
        let mut doubled = c;
        doubled.coupling = 2.0 * c.coupling;
        prop_assert_eq!(energy(&doubled).to_bits(), (16.0 * energy(&c)).to_bits());
    }

    #[test]
    fn energy_is_strictly_negative(c in any_config()) {
        let e = energy(&c);
        prop_assert!(e < 0.0, "energy must be attractive, got {e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // All inputs carry units of energy (or inverse energy); rescaling the
    // unit by s must rescale the energy by s with no other change.
    #[test]
    fn dimensional_homogeneity(c in any_config()) {
        let e = energy(&c);
        for s in [0.5, 2.0, 10.0] {
            let scaled = PhysicalConfig {
                coupling: c.coupling,
                gap: s * c.gap,
                separation: c.separation / s,
                acceleration: s * c.acceleration,
                temperature: s * c.temperature,
                scenario: c.scenario,
            };
            prop_assert!(
                (energy(&scaled) / s / e - 1.0).abs() < 1e-7,
                "unit rescaling by {s} moved the energy"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // x^2 - t^2 = 1/a^2 along the trajectory, for any proper time and any
    // acceleration across eight decades.
    #[test]
    fn worldline_stays_on_its_hyperbola(
        a in prop::num::f64::POSITIVE.prop_map(|x| 1e-6 + (x % 1.0) * 100.0),
        tau in -3.0f64..3.0,
    ) {
        let p = worldline(tau, a).unwrap();
        let inv_a2 = 1.0 / (a * a);
        // tolerance must scale with the squared magnitudes: x^2 - t^2 is a
        // difference of huge nearly equal numbers far along the hyperbola
        prop_assert!((p.x * p.x - p.t * p.t - inv_a2).abs() < 1e-12 * (p.x * p.x + p.t * p.t));
    }

    // The delay rho satisfies (2/a) sinh(a rho / 2) = z, and the effective
    // norm equals sinh(a rho)/a.
    #[test]
    fn delay_and_norm_identities(
        a in prop::num::f64::POSITIVE.prop_map(|x| 1e-6 + (x % 1.0) * 100.0),
        z in 0.01f64..50.0,
    ) {
        let rho = lightcone_delay(z, a).unwrap();
        prop_assert!(((2.0 / a) * (a * rho / 2.0).sinh() / z - 1.0).abs() < 1e-12);
        let norm = effective_norm(z, a);
        prop_assert!(((a * rho).sinh() / a / norm - 1.0).abs() < 1e-12);
    }

    // The kernel of an accelerated pair is thermal at exactly the Unruh
    // temperature a / 2 pi.
    #[test]
    fn accelerated_kernel_temperature_is_exact(
        a in 0.01f64..10.0,
        z in 0.1f64..10.0,
    ) {
        let k = spectral_kernel(&PhysicalConfig::accelerated(0.1, 1.0, z, a)).unwrap();
        prop_assert_eq!(k.t_eff.to_bits(), unruh_temperature(a).to_bits());
    }

    // Two-level response functions against the brute-force Heisenberg
    // evolution oracle.
    #[test]
    fn atomic_response_matches_the_heisenberg_oracle(
        gap in 0.1f64..10.0,
        u in -20.0f64..20.0,
    ) {
        let (chi, sym) = heisenberg_oracle(gap, u, AtomState::Ground);
        let chi_closed = atomic_susceptibility(gap, u);
        prop_assert!((chi - chi_closed).norm() < 1e-12);
        prop_assert!((sym - atomic_symmetric_correlation(gap, u)).abs() < 1e-12);
    }

    // Parity and boundedness of the two-level response.
    #[test]
    fn atomic_response_parity_and_bounds(gap in 0.1f64..10.0, u in 0.0f64..20.0) {
        let chi = atomic_susceptibility(gap, u);
        prop_assert_eq!(atomic_susceptibility(gap, -u), -chi);
        prop_assert!(chi.norm() <= 1.0 + 1e-15);
        let sym = atomic_symmetric_correlation(gap, u);
        prop_assert_eq!(atomic_symmetric_correlation(gap, -u), sym);
        prop_assert!(sym.abs() <= 1.0 + 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    // Limit chain: as a -> 0 the accelerated correlator degenerates to the
    // thermal one at T_U, which itself degenerates to the static vacuum.
    #[test]
    fn correlator_limit_chain(z in 0.5f64..3.0, x in 0.5f64..4.0) {
        let a = 1e-6;
        let acc = spectral_kernel(&PhysicalConfig::accelerated(0.1, 1.0, z, a)).unwrap();
        let th = spectral_kernel(
            &PhysicalConfig::thermal(0.1, 1.0, z, unruh_temperature(a)),
        ).unwrap();
        let st = spectral_kernel(&PhysicalConfig::static_vacuum(0.1, 1.0, z)).unwrap();
        let (pa, _) = retarded_correlation(&acc, x).unwrap();
        let (pt, _) = retarded_correlation(&th, x).unwrap();
        let (ps, _) = retarded_correlation(&st, x).unwrap();
        let scale = 1.0 / (8.0 * PI * PI * z * x);
        prop_assert!((pa - pt).abs() < 1e-10 * scale.abs());
        prop_assert!((pt - ps).abs() < 1e-10 * scale.abs());
    }
}

// Deviation of the accelerated energy from its thermal twin at T_U scales
// as (a z)^2: halving a z cuts it by about four.
#[test]
fn local_inertial_deviation_is_quadratic_in_az() {
    let z = 10.0;
    let dev = |az: f64| {
        let a = az / z;
        let acc = energy(&PhysicalConfig::accelerated(0.1, 1.0, z, a));
        let th = energy(&PhysicalConfig::thermal(
            0.1,
            1.0,
            z,
            unruh_temperature(a),
        ));
        (acc / th - 1.0).abs()
    };
    let (d1, d2) = (dev(2e-2), dev(1e-2));
    assert_relative_eq!(d1 / d2, 4.0, max_relative = 0.2);
}

#[test]
fn scenario_display_names_are_stable() {
    assert_eq!(Scenario::StaticVacuum.to_string(), "static");
    assert_eq!(Scenario::Thermal.to_string(), "thermal");
    assert_eq!(Scenario::Accelerated.to_string(), "accelerated");
}
