//! Config file loading and `--set` overrides.
//!
//! The file is TOML with sections [physical], [quadrature] and [sweep].
//! Unknown keys anywhere are hard errors: a typo in a physics parameter
//! must not silently fall back to a default. Overrides are applied to the
//! raw TOML tree before deserialization so they get the same checking.

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use std::path::{Path, PathBuf};

use cpair_core::{PhysicalConfig, QuadratureSpec, Scenario};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub physical: PhysicalSection,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalSection {
    pub coupling: f64,
    pub gap: f64,
    pub separation: f64,
    #[serde(default)]
    pub acceleration: f64,
    #[serde(default)]
    pub temperature: f64,
    pub scenario: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    /// One of: z, a, T, gap.
    pub variable: String,
    /// Grid spacing: "log" (default) or "linear".
    #[serde(default = "default_scale")]
    pub scale: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    /// Also run the (slow) time-domain oracle per point.
    #[serde(default)]
    pub oracle: bool,
    /// Emit the applicable closed-form columns.
    #[serde(default = "default_true")]
    pub closed_forms: bool,
}

fn default_scale() -> String {
    "log".into()
}

fn default_true() -> bool {
    true
}

impl PhysicalSection {
    pub fn to_config(&self) -> Result<PhysicalConfig> {
        let scenario = match self.scenario.as_str() {
            "static" | "static_vacuum" => Scenario::StaticVacuum,
            "thermal" => Scenario::Thermal,
            "accelerated" => Scenario::Accelerated,
            other => bail!("unknown scenario '{other}' (use static | thermal | accelerated)"),
        };
        Ok(PhysicalConfig {
            coupling: self.coupling,
            gap: self.gap,
            separation: self.separation,
            acceleration: self.acceleration,
            temperature: self.temperature,
            scenario,
        })
    }
}

const DEFAULT_CONFIG: &str = r#"
[physical]
coupling = 0.1
gap = 1.0
separation = 1.0
scenario = "static"
"#;

/// Resolves the config source: explicit path, then $CPAIR_CONFIG_DIR/cpair.toml,
/// then a built-in static default.
pub fn load(path: Option<&Path>, sets: &[String]) -> Result<ConfigFile> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)
            .with_context(|| format!("cannot read config file {}", p.display()))?,
        None => {
            let from_env = std::env::var_os("CPAIR_CONFIG_DIR")
                .map(PathBuf::from)
                .map(|d| d.join("cpair.toml"))
                .filter(|p| p.is_file());
            match from_env {
                Some(p) => std::fs::read_to_string(&p)
                    .with_context(|| format!("cannot read config file {}", p.display()))?,
                None => DEFAULT_CONFIG.to_string(),
            }
        }
    };
    let mut tree: toml::Value = text.parse().context("config file is not valid TOML")?;
    for s in sets {
        apply_set(&mut tree, s)?;
    }
    let cfg: ConfigFile = tree.try_into().context("invalid config")?;
    Ok(cfg)
}

// Maps the short names people actually type to their full paths.
fn expand_key(key: &str) -> String {
    match key {
        "lambda" | "coupling" => "physical.coupling".into(),
        "omega" | "gap" => "physical.gap".into(),
        "z" | "separation" => "physical.separation".into(),
        "a" | "acceleration" => "physical.acceleration".into(),
        "T" | "temperature" => "physical.temperature".into(),
        "scenario" => "physical.scenario".into(),
        other => other.into(),
    }
}

fn parse_scalar(raw: &str) -> toml::Value {
    if let Ok(b) = raw.parse::<bool>() {
        return toml::Value::Boolean(b);
    }
    if let Ok(i) = raw.parse::<i64>() {
        return toml::Value::Integer(i);
    }
    if let Ok(f) = raw.parse::<f64>() {
        return toml::Value::Float(f);
    }
    toml::Value::String(raw.to_string())
}

fn apply_set(tree: &mut toml::Value, assignment: &str) -> Result<()> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| anyhow!("--set expects key=value, got '{assignment}'"))?;
    let path = expand_key(key.trim());
    let mut node = tree;
    let parts: Vec<&str> = path.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        let table = node
            .as_table_mut()
            .ok_or_else(|| anyhow!("--set path '{path}' does not address a table"))?;
        if i + 1 == parts.len() {
            table.insert(part.to_string(), parse_scalar(raw.trim()));
            return Ok(());
        }
        node = table
            .entry(part.to_string())
            .or_insert(toml::Value::Table(toml::map::Map::new()));
    }
    unreachable!("split('.') yields at least one part")
}
