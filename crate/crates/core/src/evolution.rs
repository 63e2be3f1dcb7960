//! Closed-form time evolution of the initial product state.
//!
//! `C_m(tau) = sum_n b_mn exp(i * phase_n * tau)` with integer phases
//! `phase_n = n(N+1-n) - M(N-M)`. The `+i` sign is kept as written; every
//! observable downstream depends only on `|C_m|`, so it agrees with the
//! `exp(-iHt)` propagator of the oracle.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::combinatorics::{b_table, BCoefficientTable, ModelSpec};
use crate::error::{Error, Result};

/// Integer phase `n(N+1-n) - M(N-M)`, defined for any `n`.
#[inline]
pub fn phase(spec: &ModelSpec, n: usize) -> i64 {
    let big_n = spec.n_total() as i64;
    let big_m = spec.m_excited() as i64;
    let n = n as i64;
    n * (big_n + 1 - n) - big_m * (big_n - big_m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpectrum {
    pub spec: ModelSpec,
    /// Entry `n` multiplies `tau` in the `n`-th exponential.
    pub phases: Vec<i64>,
}

pub fn phase_spectrum(spec: &ModelSpec) -> PhaseSpectrum {
    PhaseSpectrum {
        spec: *spec,
        phases: (0..=spec.m_prime()).map(|n| phase(spec, n)).collect(),
    }
}

/// Amplitudes `C_m(tau)` for `m = 0..=M'` at one time point.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeVector {
    pub spec: ModelSpec,
    pub tau: f64,
    pub amplitudes: Vec<Complex64>,
}

impl AmplitudeVector {
    /// `sum_m C(M,m) C(N-M,m) |C_m|^2`; equals one for a physical state.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(m, c)| self.spec.multiplicity(m) * c.norm_sqr())
            .sum()
    }
}

fn same_model(a: &ModelSpec, b: &ModelSpec) -> bool {
    a.n_total() == b.n_total() && a.m_excited() == b.m_excited()
}

fn evaluate(table: &BCoefficientTable, phases: &[i64], tau: f64) -> Vec<Complex64> {
    // Phases are exact integers, so each exponential is formed directly from
    // phase * tau and no rounding accumulates along a grid.
    let rotors: Vec<Complex64> = phases
        .iter()
        .map(|&p| {
            let (s, c) = (p as f64 * tau).sin_cos();
            Complex64::new(c, s)
        })
        .collect();
    (0..table.dim())
        .map(|m| {
            rotors
                .iter()
                .enumerate()
                .map(|(n, r)| r * table.value(m, n))
                .sum()
        })
        .collect()
}

pub fn amplitudes_at(
    spec: &ModelSpec,
    table: &BCoefficientTable,
    tau: f64,
) -> Result<AmplitudeVector> {
    if !same_model(spec, table.spec()) {
        return Err(Error::Domain(format!(
            "coefficient table built for N = {}, M = {} used with N = {}, M = {}",
            table.spec().n_total(),
            table.spec().m_excited(),
            spec.n_total(),
            spec.m_excited()
        )));
    }
    if !tau.is_finite() {
        return Err(Error::Domain(format!("tau must be finite, got {tau}")));
    }
    let phases = phase_spectrum(spec).phases;
    Ok(AmplitudeVector {
        spec: *spec,
        tau,
        amplitudes: evaluate(table, &phases, tau),
    })
}

/// Reusable evaluator holding the coefficient table and phases of one model.
#[derive(Debug, Clone)]
pub struct Evolution {
    table: BCoefficientTable,
    phases: PhaseSpectrum,
}

impl Evolution {
    pub fn new(spec: &ModelSpec) -> Self {
        Self {
            table: b_table(spec),
            phases: phase_spectrum(spec),
        }
    }

    pub fn spec(&self) -> &ModelSpec {
        self.table.spec()
    }

    pub fn table(&self) -> &BCoefficientTable {
        &self.table
    }

    pub fn phases(&self) -> &PhaseSpectrum {
        &self.phases
    }

    pub fn at(&self, tau: f64) -> Result<AmplitudeVector> {
        if !tau.is_finite() {
            return Err(Error::Domain(format!("tau must be finite, got {tau}")));
        }
        Ok(AmplitudeVector {
            spec: *self.spec(),
            tau,
            amplitudes: evaluate(&self.table, &self.phases.phases, tau),
        })
    }

    /// Smallest `T > 0` with `|C_m(tau + T)| = |C_m(tau)|` for all `m`:
    /// `2 pi / g` where `g` is the gcd of the phase differences. `None` when
    /// the moduli are constant (`M' = 0`).
    pub fn modulus_period(&self) -> Option<f64> {
        let p = &self.phases.phases;
        let g = p
            .iter()
            .skip(1)
            .fold(0i64, |g, &x| gcd(g, (x - p[0]).abs()));
        (g > 0).then(|| 2.0 * std::f64::consts::PI / g as f64)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Amplitudes on every point of `tau_grid`, in grid order.
pub fn amplitude_series(spec: &ModelSpec, tau_grid: &[f64]) -> Result<Vec<AmplitudeVector>> {
    if tau_grid.is_empty() {
        return Err(Error::Domain("empty tau grid".into()));
    }
    let evo = Evolution::new(spec);
    tau_grid.par_iter().map(|&tau| evo.at(tau)).collect()
}
