use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::gauge::{GaugeError, RawX1Model};
use crate::ncalg::a_series;
use crate::series::rational::{format_rational, int, parse_rational, rat};
use crate::series::{EpsSeries, Rational};

/// Environment variables `SL2STAR_ORDER`, `SL2STAR_A`, ... override file
/// settings.
pub const ENV_PREFIX: &str = "SL2STAR_";

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Malformed { line: usize },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("bad value for `{key}`: {message}")]
    BadValue { key: String, message: String },
    #[error("cannot read config: {0}")]
    Io(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (text|json)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub order: i32,
    /// Coefficients of `A(ε²)`: `c0, c2, c4, ...`.
    pub a: Vec<Rational>,
    /// Raw `b_k` for the gauge solver.
    pub b: Vec<(u32, Rational)>,
    pub kmax: u32,
    pub nmax: u32,
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
    pub format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            order: 8,
            a: vec![int(4)],
            // placeholder; any nonzero value works
            b: vec![(2, rat(1, 4))],
            kmax: 12,
            nmax: 12,
            tol: 1e-6,
            samples: 50,
            seed: 0,
            format: OutputFormat::Text,
        }
    }
}

pub fn parse_a_list(text: &str) -> Result<Vec<Rational>, String> {
    text.split(',')
        .map(|s| parse_rational(s.trim()).map_err(|e| e.to_string()))
        .collect()
}

pub fn parse_b_list(text: &str) -> Result<Vec<(u32, Rational)>, String> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|pair| {
            let (k, v) = pair.split_once(':').ok_or_else(|| format!("expected k:p/q, got `{pair}`"))?;
            let k: u32 = k.trim().parse().map_err(|_| format!("bad index `{k}`"))?;
            let v = parse_rational(v.trim()).map_err(|e| e.to_string())?;
            Ok((k, v))
        })
        .collect()
}

impl Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = |message: String| ConfigError::BadValue {
            key: key.to_string(),
            message,
        };
        let value = value.trim();
        match key.trim().to_ascii_lowercase().as_str() {
            "order" => {
                let n: i32 = value.parse().map_err(|_| bad(value.to_string()))?;
                if n < 1 {
                    return Err(bad("order must be at least 1".into()));
                }
                self.order = n;
            }
            "a" => self.a = parse_a_list(value).map_err(bad)?,
            "b" => self.b = parse_b_list(value).map_err(bad)?,
            "kmax" => self.kmax = value.parse().map_err(|_| bad(value.to_string()))?,
            "nmax" => self.nmax = value.parse().map_err(|_| bad(value.to_string()))?,
            "tol" => self.tol = value.parse().map_err(|_| bad(value.to_string()))?,
            "samples" => self.samples = value.parse().map_err(|_| bad(value.to_string()))?,
            "seed" => self.seed = value.parse().map_err(|_| bad(value.to_string()))?,
            "format" => self.format = value.parse().map_err(bad)?,
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    /// Reads `key = value` lines; blank lines and `#` comments are skipped.
    pub fn apply_kv(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Malformed { line: i + 1 })?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn from_kv(text: &str) -> Result<Self, ConfigError> {
        let mut c = Config::default();
        c.apply_kv(text)?;
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(e.to_string()))?;
        Config::from_kv(&text)
    }

    /// Applies every `PREFIX_KEY=value` pair among `vars`.
    pub fn apply_env<I>(&mut self, prefix: &str, vars: I) -> Result<(), ConfigError>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        for (k, v) in vars {
            if let Some(key) = k.strip_prefix(prefix) {
                self.set(key, &v)?;
            }
        }
        Ok(())
    }

    pub fn a_series(&self) -> EpsSeries {
        a_series(&self.a, self.order)
    }

    pub fn raw_model(&self) -> Result<RawX1Model, GaugeError> {
        RawX1Model::new(self.b.iter().cloned())
    }

    pub fn to_kv(&self) -> String {
        let a = self.a.iter().map(format_rational).collect::<Vec<_>>().join(",");
        let b = self
            .b
            .iter()
            .map(|(k, v)| format!("{k}:{}", format_rational(v)))
            .collect::<Vec<_>>()
            .join(",");
        let format = match self.format {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
        };
        format!(
            "order = {}\na = {a}\nb = {b}\nkmax = {}\nnmax = {}\ntol = {}\nsamples = {}\nseed = {}\nformat = {format}\n",
            self.order, self.kmax, self.nmax, self.tol, self.samples, self.seed
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_round_trip() {
        let mut c = Config::default();
        c.order = 5;
        c.a = vec![int(4), rat(-1, 3)];
        c.b = vec![(2, rat(1, 2)), (4, int(3))];
        c.format = OutputFormat::Json;
        assert_eq!(Config::from_kv(&c.to_kv()).unwrap(), c);
    }

    #[test]
    fn comments_and_errors() {
        let c = Config::from_kv("# settings\norder = 6  # low\n\nA = 4, 1/2\n").unwrap();
        assert_eq!(c.order, 6);
        assert_eq!(c.a, vec![int(4), rat(1, 2)]);
        assert_eq!(Config::from_kv("order 6"), Err(ConfigError::Malformed { line: 1 }));
        assert_eq!(Config::from_kv("colour = red"), Err(ConfigError::UnknownKey("colour".into())));
        assert!(matches!(Config::from_kv("order = 0"), Err(ConfigError::BadValue { .. })));
    }

    #[test]
    fn env_overrides() {
        let mut c = Config::default();
        let vars = [
            ("SL2STAR_ORDER".to_string(), "4".to_string()),
            ("SL2STAR_B".to_string(), "2:1/3".to_string()),
            ("HOME".to_string(), "/root".to_string()),
        ];
        c.apply_env(ENV_PREFIX, vars).unwrap();
        assert_eq!(c.order, 4);
        assert_eq!(c.b, vec![(2, rat(1, 3))]);
    }
}
