//! Output rows and serialization: the fixed CSV schema and its JSON mirror.

use serde::Serialize;

pub const CSV_HEADER: &str = "swept_var,value,omega_z,a_z,T_z,regime,E,E_err,E_oracle,\
E_oracle_err,E_near,E_far,E_thermal,E_accel,ratio_acc_thermal";

/// One evaluated grid point. Options are emitted as empty CSV fields when
/// absent, never as zeros.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub swept_var: String,
    pub value: f64,
    pub omega_z: f64,
    pub a_z: f64,
    #[serde(rename = "T_z")]
    pub t_z: f64,
    pub regime: String,
    #[serde(rename = "E")]
    pub e: Option<f64>,
    #[serde(rename = "E_err")]
    pub e_err: Option<f64>,
    #[serde(rename = "E_oracle")]
    pub e_oracle: Option<f64>,
    #[serde(rename = "E_oracle_err")]
    pub e_oracle_err: Option<f64>,
    #[serde(rename = "E_near")]
    pub e_near: Option<f64>,
    #[serde(rename = "E_far")]
    pub e_far: Option<f64>,
    #[serde(rename = "E_thermal")]
    pub e_thermal: Option<f64>,
    #[serde(rename = "E_accel")]
    pub e_accel: Option<f64>,
    pub ratio_acc_thermal: Option<f64>,
    /// Per-point failure, recorded without aborting the run. JSON only;
    /// in CSV a failed point simply has empty engine fields.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// 17 significant digits: round-trip exact for f64.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt17).unwrap_or_default()
}

impl Row {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.swept_var,
            fmt17(self.value),
            fmt17(self.omega_z),
            fmt17(self.a_z),
            fmt17(self.t_z),
            self.regime,
            opt(self.e),
            opt(self.e_err),
            opt(self.e_oracle),
            opt(self.e_oracle_err),
            opt(self.e_near),
            opt(self.e_far),
            opt(self.e_thermal),
            opt(self.e_accel),
            opt(self.ratio_acc_thermal),
        )
    }
}

/// Run metadata attached to JSON outputs.
#[derive(Debug, Clone, Serialize)]
pub struct RunMeta {
    pub version: &'static str,
    pub convention: &'static str,
    pub quadrature: cpair_core::QuadratureSpec,
    pub unix_timestamp: u64,
}

impl RunMeta {
    pub fn new(quadrature: cpair_core::QuadratureSpec) -> Self {
        RunMeta {
            version: env!("CARGO_PKG_VERSION"),
            convention: cpair_core::energy::CONVENTION,
            quadrature,
            unix_timestamp: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct JsonReport<'a> {
    pub meta: &'a RunMeta,
    pub rows: &'a [Row],
}
