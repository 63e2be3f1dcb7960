//! Run configuration: command-line flags over an optional `key = value`
//! file over built-in defaults.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use super::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Evolve,
    Maxima,
    Verify,
    Figures,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    /// CSV plus an SVG plot next to it.
    SvgPlot,
}

/// Partially specified settings from one source.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub n_total: Option<usize>,
    pub m_excited: Option<usize>,
    pub tau_max: Option<f64>,
    /// Physical end time, converted with `kappa`.
    pub t_max: Option<f64>,
    pub kappa: Option<f64>,
    pub steps: Option<usize>,
    pub output_path: Option<PathBuf>,
    pub svg: Option<bool>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("config line {line}: bad value {value:?} for {key}")))
}

impl Overrides {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut o = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = i + 1;
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {lineno}: expected key = value"))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "n" => o.n_total = Some(parse_value(key, value, lineno)?),
                "m" => o.m_excited = Some(parse_value(key, value, lineno)?),
                "tau_max" => o.tau_max = Some(parse_value(key, value, lineno)?),
                "t_max" => o.t_max = Some(parse_value(key, value, lineno)?),
                "kappa" => o.kappa = Some(parse_value(key, value, lineno)?),
                "steps" => o.steps = Some(parse_value(key, value, lineno)?),
                "out" => o.output_path = Some(PathBuf::from(value)),
                "svg" => o.svg = Some(parse_value(key, value, lineno)?),
                "n_min" => o.n_min = Some(parse_value(key, value, lineno)?),
                "n_max" => o.n_max = Some(parse_value(key, value, lineno)?),
                "samples" => o.samples = Some(parse_value(key, value, lineno)?),
                "seed" => o.seed = Some(parse_value(key, value, lineno)?),
                other => {
                    return Err(CliError::Usage(format!(
                        "config line {lineno}: unknown key {other:?}"
                    )))
                }
            }
        }
        Ok(o)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Fields set in `self` win over `fallback`.
    pub fn or(self, fallback: Overrides) -> Overrides {
        Overrides {
            n_total: self.n_total.or(fallback.n_total),
            m_excited: self.m_excited.or(fallback.m_excited),
            tau_max: self.tau_max.or(fallback.tau_max),
            t_max: self.t_max.or(fallback.t_max),
            kappa: self.kappa.or(fallback.kappa),
            steps: self.steps.or(fallback.steps),
            output_path: self.output_path.or(fallback.output_path),
            svg: self.svg.or(fallback.svg),
            n_min: self.n_min.or(fallback.n_min),
            n_max: self.n_max.or(fallback.n_max),
            samples: self.samples.or(fallback.samples),
            seed: self.seed.or(fallback.seed),
        }
    }
}

pub const DEFAULT_N: usize = 4;
pub const DEFAULT_M: usize = 1;
pub const DEFAULT_STEPS: usize = 512;
pub const DEFAULT_SAMPLES: usize = 64;
pub const DEFAULT_SEED: u64 = 2001;

/// Fully resolved settings for one command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n_total: usize,
    /// `None` only for `verify`, meaning every `M <= N/2`.
    pub m_excited: Option<usize>,
    /// Dimensionless end time `kappa * t_max`.
    pub tau_max: f64,
    pub steps: usize,
    pub output_path: PathBuf,
    pub format: OutputFormat,
    pub n_range: (usize, usize),
    pub samples: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn resolve(command: Command, o: Overrides) -> Result<Self, CliError> {
        let n_total = o.n_total.unwrap_or(DEFAULT_N);
        let m_excited = match command {
            Command::Verify => o.m_excited,
            _ => Some(o.m_excited.unwrap_or(DEFAULT_M)),
        };
        let kappa = o.kappa.unwrap_or(1.0);
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(CliError::Usage(format!(
                "kappa must be positive, got {kappa}"
            )));
        }
        let tau_max = match (o.tau_max, o.t_max) {
            (Some(tau), _) => tau,
            (None, Some(t)) => kappa * t,
            (None, None) => 2.0 * PI / n_total.max(1) as f64,
        };
        let (default_lo, default_hi) = match command {
            Command::Verify => (2, 10),
            _ => (2, 30),
        };
        let default_out = match command {
            Command::Evolve => "evolve.csv",
            Command::Maxima => "maxima.csv",
            Command::Verify => "",
            Command::Figures => "figures",
        };
        let cfg = RunConfig {
            command,
            n_total,
            m_excited,
            tau_max,
            steps: o.steps.unwrap_or(DEFAULT_STEPS),
            output_path: o.output_path.unwrap_or_else(|| PathBuf::from(default_out)),
            format: if o.svg.unwrap_or(false) {
                OutputFormat::SvgPlot
            } else {
                OutputFormat::Csv
            },
            n_range: (o.n_min.unwrap_or(default_lo), o.n_max.unwrap_or(default_hi)),
            samples: o.samples.unwrap_or(DEFAULT_SAMPLES),
            seed: o.seed.unwrap_or(DEFAULT_SEED),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.steps < 2 {
            return Err(CliError::Usage(format!(
                "steps must be at least 2, got {}",
                self.steps
            )));
        }
        if !(self.tau_max.is_finite() && self.tau_max > 0.0) {
            return Err(CliError::Usage(format!(
                "tau-max must be positive, got {}",
                self.tau_max
            )));
        }
        let (lo, hi) = self.n_range;
        if lo < 2 || hi < lo {
            return Err(CliError::Usage(format!(
                "N range {lo}..={hi} must be ascending with lower bound >= 2"
            )));
        }
        if self.samples == 0 {
            return Err(CliError::Usage("samples must be positive".into()));
        }
        Ok(())
    }

    /// `steps` equally spaced times covering `[0, tau_max]`.
    pub fn tau_grid(&self) -> Vec<f64> {
        linspace(0.0, self.tau_max, self.steps)
    }
}

/// `count` equally spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}
