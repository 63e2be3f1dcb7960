//! The four front-end commands and the data tables behind them.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{linspace, OutputFormat, RunConfig};
use super::format::{num, CsvTable};
use super::svg::{LinePlot, Series};
use super::CliError;
use crate::combinatorics::ModelSpec;
use crate::entanglement::{
    critical_times_m1, entropy_series, magic_number_scan_range, EntropyPoint, MagicRow,
};
use crate::error::Error;
use crate::oracle::{verify_closed_form, VerifyReport, MAX_SECTOR_SITES};

/// Points per period in the figure-1 curves and per rescaled period in figure 2.
pub const FIG1_POINTS: usize = 512;
pub const FIG2_POINTS: usize = 1024;
pub const FIG1_N: (usize, usize) = (2, 8);
pub const FIG2_N: (usize, usize) = (2, 10);
pub const FIG3_N: (usize, usize) = (2, 30);

fn model(n_total: usize, m_excited: usize) -> Result<ModelSpec, CliError> {
    ModelSpec::new(n_total, m_excited).map_err(|e| CliError::Usage(e.to_string()))
}

fn write(path: &Path, contents: &str) -> Result<PathBuf, CliError> {
    fs::write(path, contents).map_err(|e| {
        CliError::Runtime(Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        )))
    })?;
    Ok(path.to_path_buf())
}

/// `tau, P_0, ..., P_M', entropy` for each grid point.
pub fn evolve_table(points: &[EntropyPoint]) -> CsvTable {
    let width = points.first().map_or(1, |p| p.spectrum.probabilities.len());
    let mut header = vec!["tau".to_string()];
    header.extend((0..width).map(|m| format!("P_{m}")));
    header.push("entropy".into());
    let mut table = CsvTable::new(header);
    for p in points {
        let mut row = vec![num(p.tau)];
        row.extend(p.spectrum.probabilities.iter().map(|&x| num(x)));
        row.push(num(p.entropy));
        table.push(row);
    }
    table
}

fn spectrum_plot(title: String, points: &[EntropyPoint]) -> LinePlot {
    let width = points.first().map_or(0, |p| p.spectrum.probabilities.len());
    let mut plot =
        LinePlot::new(title, "tau = kappa t", "ebits / probability").with_series(Series::new(
            "entropy",
            points.iter().map(|p| (p.tau, p.entropy)).collect(),
        ));
    for m in 0..width {
        plot = plot.with_series(
            Series::new(
                format!("P_{m}"),
                points
                    .iter()
                    .map(|p| (p.tau, p.spectrum.probabilities[m]))
                    .collect(),
            )
            .dashed(),
        );
    }
    plot
}

/// Writes the evolution CSV (and SVG with `--svg`); returns the files written.
pub fn cmd_evolve(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let spec = model(cfg.n_total, cfg.m_excited.unwrap_or(1))?;
    let points = entropy_series(&spec, &cfg.tau_grid())?;
    let mut written = vec![write(&cfg.output_path, &evolve_table(&points).render())?];
    if cfg.format == OutputFormat::SvgPlot {
        let title = format!("N = {}, M = {}", spec.n_total(), spec.m_excited());
        written.push(write(
            &cfg.output_path.with_extension("svg"),
            &spectrum_plot(title, &points).render(),
        )?);
    }
    Ok(written)
}

/// `N, tau_prime, tau_double_prime, max_entropy, argmax_tau`; `tau_prime` is
/// empty where it does not exist.
pub fn maxima_table(rows: &[MagicRow]) -> CsvTable {
    let mut table = CsvTable::new([
        "N",
        "tau_prime",
        "tau_double_prime",
        "max_entropy",
        "argmax_tau",
    ]);
    for r in rows {
        table.push(vec![
            r.n_total.to_string(),
            r.t_prime.map(num).unwrap_or_default(),
            num(r.t_double_prime),
            num(r.max_entropy),
            num(r.argmax_tau),
        ]);
    }
    table
}

fn maxima_plot(rows: &[MagicRow]) -> LinePlot {
    LinePlot::new("maximal entanglement, M = 1", "N", "max E (ebits)").with_series(Series::new(
        "max E",
        rows.iter()
            .map(|r| (r.n_total as f64, r.max_entropy))
            .collect(),
    ))
}

pub fn cmd_maxima(cfg: &RunConfig) -> Result<Vec<MagicRow>, CliError> {
    if let Some(m) = cfg.m_excited.filter(|&m| m != 1) {
        return Err(CliError::Usage(format!(
            "maxima needs a single initial excitation (M = 1); got M = {m}. \
             Use `evolve` to study other M numerically."
        )));
    }
    let (lo, hi) = cfg.n_range;
    let rows = magic_number_scan_range(lo, hi)?;
    write(&cfg.output_path, &maxima_table(&rows).render())?;
    if cfg.format == OutputFormat::SvgPlot {
        write(
            &cfg.output_path.with_extension("svg"),
            &maxima_plot(&rows).render(),
        )?;
    }
    Ok(rows)
}

#[derive(Debug, Clone)]
pub struct VerifySummary {
    pub reports: Vec<VerifyReport>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(VerifyReport::passed)
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "{:>3} {:>3} {:>7} {:>22} {:>22} {:>5}  status\n",
            "N", "M", "samples", "max_spectrum_dev", "max_entropy_dev", "rank"
        );
        for r in &self.reports {
            out.push_str(&format!(
                "{:>3} {:>3} {:>7} {:>22} {:>22} {:>5}  {}\n",
                r.spec.n_total(),
                r.spec.m_excited(),
                r.samples,
                format!("{:.3e}", r.max_spectrum_deviation),
                format!("{:.3e}", r.max_entropy_deviation),
                r.max_schmidt_rank,
                if r.passed() { "PASS" } else { "FAIL" }
            ));
        }
        let failed = self.reports.iter().filter(|r| !r.passed()).count();
        out.push_str(&format!(
            "{} of {} models within {:e}: {}\n",
            self.reports.len() - failed,
            self.reports.len(),
            crate::oracle::VERIFY_TOLERANCE,
            if failed == 0 { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Uniform samples in `[0, 4 pi)` drawn from a stream fixed by `(seed, N, M)`.
pub fn verify_samples(seed: u64, n_total: usize, m_excited: usize, count: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n_total as u64) << 32) ^ m_excited as u64);
    (0..count).map(|_| rng.gen_range(0.0..4.0 * PI)).collect()
}

/// Every `(N, M)` covered by a verify run.
pub fn verify_models(cfg: &RunConfig) -> Vec<(usize, usize)> {
    let (lo, hi) = cfg.n_range;
    (lo..=hi)
        .flat_map(|n| match cfg.m_excited {
            Some(m) if m <= n => vec![(n, m)],
            Some(_) => Vec::new(),
            None => (0..=n / 2).map(|m| (n, m)).collect(),
        })
        .collect()
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<VerifySummary, CliError> {
    if cfg.n_range.1 > MAX_SECTOR_SITES {
        return Err(CliError::Usage(format!(
            "verify supports N <= {MAX_SECTOR_SITES}, got n-max = {}",
            cfg.n_range.1
        )));
    }
    let models = verify_models(cfg);
    if models.is_empty() {
        return Err(CliError::Usage("no (N, M) pair in range".into()));
    }
    let reports = models
        .par_iter()
        .map(|&(n, m)| {
            let spec = ModelSpec::new(n, m)?;
            verify_closed_form(&spec, &verify_samples(cfg.seed, n, m, cfg.samples))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let summary = VerifySummary { reports };
    if !cfg.output_path.as_os_str().is_empty() {
        write(&cfg.output_path, &summary.render())?;
    }
    Ok(summary)
}

/// Uniform grid on `[lo, hi]` with extra exact points merged in order.
fn grid_with(lo: f64, hi: f64, count: usize, extra: &[f64]) -> Vec<f64> {
    let mut g = linspace(lo, hi, count);
    g.extend(extra.iter().copied().filter(|x| (lo..=hi).contains(x)));
    g.sort_by(f64::total_cmp);
    g.dedup();
    g
}

fn critical_points(n_total: usize) -> Result<Vec<f64>, CliError> {
    let t = critical_times_m1(&model(n_total, 1)?)?;
    Ok(t.t_prime.into_iter().chain([t.t_double_prime]).collect())
}

/// One period of the `M = 1` evolution per `N`, critical times included.
#[derive(Debug, Clone)]
pub struct Fig1Curve {
    pub n_total: usize,
    pub points: Vec<EntropyPoint>,
}

pub fn fig1_data() -> Result<Vec<Fig1Curve>, CliError> {
    (FIG1_N.0..=FIG1_N.1)
        .map(|n| {
            let period = 2.0 * PI / n as f64;
            let grid = grid_with(0.0, period, FIG1_POINTS, &critical_points(n)?);
            Ok(Fig1Curve {
                n_total: n,
                points: entropy_series(&model(n, 1)?, &grid)?,
            })
        })
        .collect()
}

/// Entropy against the rescaled time `N tau` over one period `[0, 2 pi]`.
#[derive(Debug, Clone)]
pub struct Fig2Curve {
    pub n_total: usize,
    pub points: Vec<EntropyPoint>,
}

pub fn fig2_data() -> Result<Vec<Fig2Curve>, CliError> {
    (FIG2_N.0..=FIG2_N.1)
        .map(|n| {
            let nf = n as f64;
            let rescaled: Vec<f64> = critical_points(n)?.iter().map(|t| t * nf).collect();
            let grid: Vec<f64> = grid_with(0.0, 2.0 * PI, FIG2_POINTS, &rescaled)
                .iter()
                .map(|x| x / nf)
                .collect();
            Ok(Fig2Curve {
                n_total: n,
                points: entropy_series(&model(n, 1)?, &grid)?,
            })
        })
        .collect()
}

pub fn fig3_data() -> Result<Vec<MagicRow>, CliError> {
    Ok(magic_number_scan_range(FIG3_N.0, FIG3_N.1)?)
}

pub fn fig1_table(curves: &[Fig1Curve]) -> CsvTable {
    let mut t = CsvTable::new(["N", "tau", "P_0", "P_1", "entropy"]);
    for c in curves {
        for p in &c.points {
            let pr = &p.spectrum.probabilities;
            t.push(vec![
                c.n_total.to_string(),
                num(p.tau),
                num(pr[0]),
                num(pr[1]),
                num(p.entropy),
            ]);
        }
    }
    t
}

pub fn fig2_table(curves: &[Fig2Curve]) -> CsvTable {
    let mut t = CsvTable::new(["N", "tau", "N_tau", "entropy"]);
    for c in curves {
        for p in &c.points {
            t.push(vec![
                c.n_total.to_string(),
                num(p.tau),
                num(c.n_total as f64 * p.tau),
                num(p.entropy),
            ]);
        }
    }
    t
}

pub fn cmd_figures(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let dir = &cfg.output_path;
    fs::create_dir_all(dir).map_err(|e| CliError::Runtime(Error::Io(e)))?;
    let svg = cfg.format == OutputFormat::SvgPlot;
    let mut written = Vec::new();

    let fig1 = fig1_data()?;
    written.push(write(&dir.join("fig1.csv"), &fig1_table(&fig1).render())?);
    if svg {
        for c in &fig1 {
            let plot = spectrum_plot(format!("N = {}, M = 1", c.n_total), &c.points)
                .with_y_range(0.0, 1.0);
            written.push(write(
                &dir.join(format!("fig1_n{}.svg", c.n_total)),
                &plot.render(),
            )?);
        }
    }

    let fig2 = fig2_data()?;
    written.push(write(&dir.join("fig2.csv"), &fig2_table(&fig2).render())?);
    if svg {
        let plot = fig2.iter().fold(
            LinePlot::new("entanglement vs rescaled time", "N kappa t", "E (ebits)")
                .with_y_range(0.0, 1.0),
            |plot, c| {
                let nf = c.n_total as f64;
                plot.with_series(Series::new(
                    format!("N = {}", c.n_total),
                    c.points.iter().map(|p| (nf * p.tau, p.entropy)).collect(),
                ))
            },
        );
        written.push(write(&dir.join("fig2.svg"), &plot.render())?);
    }

    let fig3 = fig3_data()?;
    written.push(write(&dir.join("fig3.csv"), &maxima_table(&fig3).render())?);
    if svg {
        written.push(write(&dir.join("fig3.svg"), &maxima_plot(&fig3).render())?);
    }
    Ok(written)
}
