//! JSON run configuration. Every key is optional; command-line flags
//! override values read from the file.

use std::path::PathBuf;

use serde::Deserialize;
use thinsheet::SheetMaterial;
use thiserror::Error;

use crate::grid::{parse_grid, Grid, GridError};
use crate::material::{parse_material, MaterialSpecError};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config is not valid JSON for this tool: {0}")]
    Json(#[from] serde_json::Error),
    #[error("config key `{key}`: {source}")]
    Grid { key: &'static str, source: GridError },
    #[error("config key `material`: {0}")]
    Material(#[from] MaterialSpecError),
}

/// A grid given as a number, an array of numbers or a grid string.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum GridValue {
    Number(f64),
    List(Vec<f64>),
    Spec(String),
}

impl GridValue {
    pub fn to_grid(&self) -> Result<Grid, GridError> {
        match self {
            GridValue::Number(v) => parse_grid(&v.to_string()),
            GridValue::List(v) => {
                if v.is_empty() {
                    return Err(GridError::Empty);
                }
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(GridError::NonFinite);
                }
                Ok(Grid::Values(v.clone()))
            }
            GridValue::Spec(s) => parse_grid(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialFields {
    pub e: f64,
    pub m: f64,
    pub omega0: f64,
    pub n: f64,
    pub c: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum MaterialValue {
    Spec(String),
    Fields(MaterialFields),
}

impl MaterialValue {
    pub fn to_material(&self) -> Result<SheetMaterial, MaterialSpecError> {
        match self {
            MaterialValue::Spec(s) => parse_material(s),
            MaterialValue::Fields(f) => Ok(SheetMaterial::new(f.e, f.m, f.omega0, f.n, f.c.unwrap_or(1.0))?),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub material: Option<MaterialValue>,
    pub q: Option<f64>,
    pub c: Option<f64>,
    pub pol: Option<String>,
    pub omega: Option<GridValue>,
    pub k: Option<GridValue>,
    pub angle: Option<GridValue>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub cutoff: Option<usize>,
    pub l_min: Option<f64>,
    pub l_max: Option<f64>,
    pub points: Option<usize>,
    pub spacing: Option<f64>,
    pub kx: Option<GridValue>,
    pub ky: Option<GridValue>,
}

/// Decodes and validates a configuration document: grids and the material
/// are checked here so errors point at the file.
pub fn decode_config(text: &str) -> Result<RunConfig, ConfigError> {
    let cfg: RunConfig = serde_json::from_str(text)?;
    let grids = [
        ("omega", &cfg.omega),
        ("k", &cfg.k),
        ("angle", &cfg.angle),
        ("kx", &cfg.kx),
        ("ky", &cfg.ky),
    ];
    for (key, value) in grids {
        if let Some(v) = value {
            v.to_grid().map_err(|source| ConfigError::Grid { key, source })?;
        }
    }
    if let Some(m) = &cfg.material {
        m.to_material()?;
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_document() {
        let cfg = decode_config(
            r#"{"material": {"e": 1, "m": 1, "omega0": 0, "n": 0.5}, "pol": "te",
                "omega": "0.5:2:4", "k": [0, 0.25], "format": "json", "cutoff": 300}"#,
        )
        .unwrap();
        assert_eq!(cfg.omega.unwrap().to_grid().unwrap().len(), 4);
        assert_eq!(cfg.k, Some(GridValue::List(vec![0.0, 0.25])));
        assert_eq!(cfg.cutoff, Some(300));
        let m = cfg.material.unwrap().to_material().unwrap();
        assert_eq!(m.areal_density(), 0.5);
    }

    #[test]
    fn material_as_string_and_scalars() {
        let cfg = decode_config(r#"{"material": "1,1,10,1", "omega": 2.0, "k": "0.5"}"#).unwrap();
        assert_eq!(cfg.omega.unwrap().to_grid().unwrap().points(), vec![2.0]);
        assert!(cfg.material.unwrap().to_material().is_ok());
    }

    #[test]
    fn rejects_unknown_and_invalid() {
        assert!(matches!(decode_config(r#"{"omgea": 1}"#), Err(ConfigError::Json(_))));
        assert!(matches!(
            decode_config(r#"{"omega": "1:2"}"#),
            Err(ConfigError::Grid { key: "omega", .. })
        ));
        assert!(matches!(
            decode_config(r#"{"k": []}"#),
            Err(ConfigError::Grid { key: "k", .. })
        ));
        assert!(matches!(
            decode_config(r#"{"material": "1,0,1,1"}"#),
            Err(ConfigError::Material(_))
        ));
        assert!(matches!(decode_config("[1, 2]"), Err(ConfigError::Json(_))));
        assert_eq!(decode_config("{}").unwrap(), RunConfig::default());
    }
}
