//! Optional TOML defaults; command-line flags take precedence.
//!
//! ```toml
//! [rho]
//! tol = 1e-12
//!
//! [bounds-table]
//! grid = "1:1.5:0.05"
//! modes = 16
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct Config {
    pub rho: RhoConfig,
    pub owen_bracket: OwenConfig,
    pub bounds_table: TableConfig,
    pub scan: ScanConfig,
    pub weyl: WeylConfig,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RhoConfig {
    pub tol: Option<f64>,
    pub gridpoints: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OwenConfig {
    pub lambda: Option<f64>,
    pub tol: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TableConfig {
    pub grid: Option<String>,
    pub modes: Option<usize>,
    pub format: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    pub k: Option<usize>,
    pub kind: Option<String>,
    pub grid: Option<String>,
    pub modes: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WeylConfig {
    pub modes: Option<usize>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Config, CliError> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tables() {
        let cfg: Config = toml::from_str(
            "[rho]\ntol = 1e-12\n[bounds-table]\ngrid = \"1:2:0.5\"\nmodes = 4\n[scan]\nkind = \"navier\"\n",
        )
        .unwrap();
        assert_eq!(cfg.rho.tol, Some(1e-12));
        assert_eq!(cfg.bounds_table.grid.as_deref(), Some("1:2:0.5"));
        assert_eq!(cfg.bounds_table.modes, Some(4));
        assert_eq!(cfg.scan.kind.as_deref(), Some("navier"));
        assert_eq!(cfg.weyl.modes, None);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(toml::from_str::<Config>("[rho]\ntolerance = 1\n").is_err());
        assert!(toml::from_str::<Config>("[plot]\n").is_err());
    }
}
