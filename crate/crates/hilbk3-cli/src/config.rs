//! Run configuration resolved from command-line flags, environment variables, a TOML file
//! and built-in defaults, in that order of precedence.

use hilbk3::fock::checks::CheckMode;
use hilbk3::{Error, Result};
use serde::Deserialize;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Environment variable naming the configuration file.
pub const ENV_CONFIG: &str = "HILBK3_CONFIG";
/// Configuration file read from the working directory when no other is named.
pub const DEFAULT_CONFIG_FILE: &str = "hilbk3.toml";

/// Output format of emitted series and tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// Canonical JSON.
    Json,
    /// Comma-separated values.
    Csv,
    /// Human-readable text.
    Pretty,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "pretty" => Ok(Format::Pretty),
            _ => Err(Error::Parse(format!("unknown format {s:?}; expected json, csv or pretty"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Pretty => "pretty",
        })
    }
}

/// Fully resolved settings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Highest `q`-power of emitted series.
    pub q_max: i64,
    /// Order in `w` of holomorphy tests.
    pub w_order: i64,
    /// Name of the surface model: `k3-rank24` or `small`.
    pub surface_model: String,
    /// Pair selection of the operator WDVV check at `d = 3`.
    pub conj_a_mode: CheckMode,
    /// Cache directory; `None` disables caching.
    pub cache_dir: Option<PathBuf>,
    /// Output format.
    pub output: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            q_max: 5,
            w_order: 8,
            surface_model: "k3-rank24".into(),
            conj_a_mode: CheckMode::Sampled { pairs: 200, seed: 0 },
            cache_dir: None,
            output: Format::Pretty,
        }
    }
}

/// One layer of optional settings, as read from any single source.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Layer {
    /// See [`Config::q_max`].
    pub q_max: Option<i64>,
    /// See [`Config::w_order`].
    pub w_order: Option<i64>,
    /// See [`Config::surface_model`].
    pub surface_model: Option<String>,
    /// `full` or `sampled`.
    pub conj_a_mode: Option<String>,
    /// See [`Config::cache_dir`].
    pub cache_dir: Option<PathBuf>,
    /// `json`, `csv` or `pretty`.
    pub output: Option<String>,
}

impl Layer {
    /// Parses a TOML configuration file body.
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("configuration file: {e}")))
    }

    /// Reads `HILBK3_QMAX`, `HILBK3_WORDER`, `HILBK3_MODEL`, `HILBK3_MODE`, `HILBK3_CACHE_DIR`
    /// and `HILBK3_FORMAT` through `get`.
    pub fn from_env(get: impl Fn(&str) -> Option<String>) -> Result<Self> {
        let int = |key: &str| -> Result<Option<i64>> {
            get(key)
                .map(|v| v.trim().parse::<i64>().map_err(|_| Error::Parse(format!("{key}={v:?} is not an integer"))))
                .transpose()
        };
        Ok(Layer {
            q_max: int("HILBK3_QMAX")?,
            w_order: int("HILBK3_WORDER")?,
            surface_model: get("HILBK3_MODEL"),
            conj_a_mode: get("HILBK3_MODE"),
            cache_dir: get("HILBK3_CACHE_DIR").map(PathBuf::from),
            output: get("HILBK3_FORMAT"),
        })
    }

    /// Fields set in `self` win over those in `lower`.
    pub fn over(self, lower: Layer) -> Layer {
        Layer {
            q_max: self.q_max.or(lower.q_max),
            w_order: self.w_order.or(lower.w_order),
            surface_model: self.surface_model.or(lower.surface_model),
            conj_a_mode: self.conj_a_mode.or(lower.conj_a_mode),
            cache_dir: self.cache_dir.or(lower.cache_dir),
            output: self.output.or(lower.output),
        }
    }

    /// Fills unset fields from the defaults and validates the result.
    pub fn resolve(self) -> Result<Config> {
        let d = Config::default();
        let cfg = Config {
            q_max: self.q_max.unwrap_or(d.q_max),
            w_order: self.w_order.unwrap_or(d.w_order),
            surface_model: self.surface_model.unwrap_or(d.surface_model),
            conj_a_mode: match self.conj_a_mode {
                Some(m) => m.parse()?,
                None => d.conj_a_mode,
            },
            cache_dir: self.cache_dir.or(d.cache_dir),
            output: match self.output {
                Some(o) => o.parse()?,
                None => d.output,
            },
        };
        if cfg.q_max < 0 {
            return Err(Error::InvalidArgument(format!("q_max must be nonnegative, got {}", cfg.q_max)));
        }
        if cfg.w_order < 0 {
            return Err(Error::InvalidArgument(format!("w_order must be nonnegative, got {}", cfg.w_order)));
        }
        hilbk3::fock::SurfaceModel::by_name(&cfg.surface_model)?;
        Ok(cfg)
    }
}

/// Resolves `flags > env > file > defaults`. The file is `explicit` if given, else the one named
/// by `HILBK3_CONFIG`, else `hilbk3.toml` in the working directory when it exists.
pub fn load(flags: Layer, explicit: Option<&Path>, get_env: impl Fn(&str) -> Option<String>) -> Result<Config> {
    let env = Layer::from_env(&get_env)?;
    let path = explicit
        .map(Path::to_path_buf)
        .or_else(|| get_env(ENV_CONFIG).map(PathBuf::from))
        .or_else(|| Some(PathBuf::from(DEFAULT_CONFIG_FILE)).filter(|p| p.exists()));
    let file = match path {
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", p.display())))?;
            Layer::from_toml(&text)?
        }
        None => Layer::default(),
    };
    flags.over(env).over(file).resolve()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn defaults() {
        let c = Layer::default().resolve().unwrap();
        assert_eq!(c, Config::default());
        assert_eq!((c.q_max, c.w_order, c.surface_model.as_str()), (5, 8, "k3-rank24"));
        assert_eq!(c.conj_a_mode, CheckMode::Sampled { pairs: 200, seed: 0 });
    }

    #[test]
    fn precedence() {
        let file = Layer::from_toml("q_max = 3\nw_order = 6\noutput = \"csv\"\nsurface_model = \"small\"").unwrap();
        let env: HashMap<&str, &str> = [("HILBK3_QMAX", "4"), ("HILBK3_WORDER", "7")].into();
        let env = Layer::from_env(|k| env.get(k).map(|v| v.to_string())).unwrap();
        let flags = Layer { q_max: Some(9), ..Layer::default() };
        let c = flags.over(env).over(file).resolve().unwrap();
        assert_eq!(c.q_max, 9);
        assert_eq!(c.w_order, 7);
        assert_eq!(c.output, Format::Csv);
        assert_eq!(c.surface_model, "small");
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Layer::from_toml("qmax = 3").is_err());
        assert!(Layer { output: Some("xml".into()), ..Layer::default() }.resolve().is_err());
        assert!(Layer { surface_model: Some("enriques".into()), ..Layer::default() }.resolve().is_err());
        assert!(Layer::from_env(|_| Some("x".into())).is_err());
    }
}
