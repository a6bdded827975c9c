//! Fourth-order Casimir-Polder interaction energies for two ground-state
//! two-level atoms coupled to a massless scalar field, in three stationary
//! scenarios: static vacuum, static thermal, and uniformly co-accelerated.
//!
//! Natural units (hbar = c = k_B = 1) throughout. Energies, inverse lengths
//! and temperatures share one unit; the coupling `lambda` is dimensionless
//! and enters every energy as `lambda^4`.
//!
//! The crate is organized around a production frequency-domain engine
//! ([`energy::energy_vf`]), an independent time-domain oracle
//! ([`energy::energy_vf_oracle`]) and closed-form asymptotics
//! ([`asymptotics`]) used as acceptance anchors.

pub mod asymptotics;
pub mod atom_response;
pub mod config;
pub mod correlators;
pub mod energy;
pub mod error;
pub mod quad;
pub mod validation;

pub use config::{
    classify_regime, validate_config, DimensionlessGroups, PhysicalConfig, Regime,
    RegimeThresholds, Scenario, Severity, Violation,
};
pub use correlators::{
    lightcone_delay, retarded_correlation, spectral_kernel, susceptibility_delta_form,
    symmetric_correlation, worldline, SpacetimePoint, SpectralKernel,
};
pub use energy::{
    energy_vf, energy_vf_oracle, stationary_reduction, thermal_excess_energy, EnergyMethod,
    EnergyResult, MethodTag, QuadratureSpec,
};
pub use error::CoreError;
