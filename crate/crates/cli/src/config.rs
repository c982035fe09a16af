//! Run configuration with the precedence: command-line flags over config
//! file over built-in defaults. The config file is plain `key=value` lines
//! with `#` comments.

use std::path::{Path, PathBuf};

use clap::ValueEnum;

/// Hard memory guard on the brute-force cap.
pub const N_MAX_HARD: usize = 10;
/// Hard cap on closed-form block length.
pub const L_MAX_HARD: usize = 6;
/// Parameter ceiling for the closed-form tables (entropies, concurrence).
pub const TABLE_PARAM_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n_max: usize,
    pub l_max: usize,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub tolerance: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n_max: 8,
            l_max: 6,
            format: OutputFormat::Csv,
            out: None,
            tolerance: 1e-10,
        }
    }
}

/// Flag values as parsed; `None` falls through to the config file and then
/// the defaults.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub n_max: Option<usize>,
    pub l_max: Option<usize>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    pub tolerance: Option<f64>,
}

impl RunConfig {
    pub fn resolve(flags: Overrides, config_path: Option<&Path>) -> Result<Self, String> {
        let mut cfg = Self::default();
        if let Some(path) = config_path {
            let file = load_file(path)?;
            apply(&mut cfg, &file);
        }
        apply(&mut cfg, &flags);
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), String> {
        if self.n_max == 0 || self.n_max > N_MAX_HARD {
            return Err(format!(
                "n-max must be in 1..={N_MAX_HARD}, got {}",
                self.n_max
            ));
        }
        if self.l_max == 0 || self.l_max > L_MAX_HARD {
            return Err(format!(
                "l-max must be in 1..={L_MAX_HARD}, got {}",
                self.l_max
            ));
        }
        if !self.tolerance.is_finite() || self.tolerance <= 0.0 {
            return Err(format!("tol must be positive, got {}", self.tolerance));
        }
        Ok(())
    }
}

fn apply(cfg: &mut RunConfig, over: &Overrides) {
    if let Some(v) = over.n_max {
        cfg.n_max = v;
    }
    if let Some(v) = over.l_max {
        cfg.l_max = v;
    }
    if let Some(v) = over.format {
        cfg.format = v;
    }
    if let Some(v) = &over.out {
        cfg.out = Some(v.clone());
    }
    if let Some(v) = over.tolerance {
        cfg.tolerance = v;
    }
}

fn load_file(path: &Path) -> Result<Overrides, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut over = Overrides::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "n_max" => over.n_max = Some(parse(key, value)?),
            "l_max" => over.l_max = Some(parse(key, value)?),
            "tol" => over.tolerance = Some(parse(key, value)?),
            "out" => over.out = Some(PathBuf::from(value)),
            "format" => {
                over.format = Some(match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    other => return Err(format!("config: unknown format {other:?}")),
                })
            }
            other => return Err(format!("config: unknown key {other:?}")),
        }
    }
    Ok(over)
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("config: cannot parse {key}={value}"))
}

/// Inclusive integer interval written `A..B`.
pub fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("range {text:?} must look like A..B"))?;
    let lo: usize = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start {a:?}"))?;
    let hi: usize = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| format!("bad range end {b:?}"))?;
    if lo > hi {
        return Err(format!("empty range {text:?}"));
    }
    Ok((lo, hi))
}
