//! Schmidt spectra, entanglement entropy, and the analytic single-excitation
//! (`M = 1`) results.
//!
//! For `M = 1` the spectrum is binary, `P_1 = 4(N-1)/N^2 sin^2(N tau / 2)` and
//! `P_0 = 1 - P_1`. Entropy reaches one ebit at
//! `tau' = (2/N) arccsc((2/N) sqrt(2(N-1)))`, which is real only for
//! `N = 2..=6`. Beyond that the maximum sits at `tau'' = pi/N` and shrinks
//! with `N`.
//!
//! Figure labels: the curve starting at one (`P_2` in the usual plots) is
//! `probabilities[0]` here, the one starting at zero (`P_1`) is
//! `probabilities[1]`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::combinatorics::ModelSpec;
use crate::error::{Error, Result};
use crate::evolution::{AmplitudeVector, Evolution};
use crate::maximize::{grid_then_golden, Maximum};

/// Below this a probability is treated as zero in `p log p`.
pub const ZERO_PROBABILITY: f64 = 1e-300;

/// Grid density used by the numeric maximizer, per modulus period.
pub const GRID_POINTS_PER_PERIOD: usize = 2048;

/// Bracket width at which golden-section refinement stops.
pub const ARGMAX_TOLERANCE: f64 = 1e-10;

const NORMALIZATION_SLACK: f64 = 1e-9;

/// Schmidt coefficients `P_m = C(M,m) C(N-M,m) |C_m|^2` at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    pub spec: ModelSpec,
    pub tau: f64,
    pub probabilities: Vec<f64>,
}

impl SchmidtSpectrum {
    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

pub fn schmidt_spectrum(amps: &AmplitudeVector) -> Result<SchmidtSpectrum> {
    let probabilities: Vec<f64> = amps
        .amplitudes
        .iter()
        .enumerate()
        .map(|(m, c)| amps.spec.multiplicity(m) * c.norm_sqr())
        .collect();
    let total: f64 = probabilities.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_SLACK || total.is_nan() {
        return Err(Error::Integrity(format!(
            "amplitudes at tau = {} are not normalized (sum of P_m = {total})",
            amps.tau
        )));
    }
    // Round-off can push a weight a few ulps outside [0, 1].
    let probabilities = probabilities
        .into_iter()
        .map(|p| p.clamp(0.0, 1.0))
        .collect();
    Ok(SchmidtSpectrum {
        spec: amps.spec,
        tau: amps.tau,
        probabilities,
    })
}

/// `-p log2 p` with the zero convention.
#[inline]
pub fn neg_plogp(p: f64) -> f64 {
    if p < ZERO_PROBABILITY {
        0.0
    } else {
        // Written as p log2(1/p) so that p = 1 yields +0.
        p * p.recip().log2()
    }
}

/// Shannon entropy in bits of a probability list.
pub fn shannon_entropy(probabilities: &[f64]) -> f64 {
    probabilities.iter().copied().map(neg_plogp).sum()
}

/// Entanglement entropy in ebits.
pub fn entropy(spectrum: &SchmidtSpectrum) -> f64 {
    shannon_entropy(&spectrum.probabilities)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyPoint {
    pub tau: f64,
    pub spectrum: SchmidtSpectrum,
    pub entropy: f64,
}

/// Spectrum and entropy at one time through the closed form.
pub fn entropy_point(evo: &Evolution, tau: f64) -> Result<EntropyPoint> {
    let spectrum = schmidt_spectrum(&evo.at(tau)?)?;
    let entropy = entropy(&spectrum);
    Ok(EntropyPoint {
        tau,
        spectrum,
        entropy,
    })
}

pub fn entropy_series(spec: &ModelSpec, tau_grid: &[f64]) -> Result<Vec<EntropyPoint>> {
    if tau_grid.is_empty() {
        return Err(Error::Domain("empty tau grid".into()));
    }
    let evo = Evolution::new(spec);
    tau_grid
        .par_iter()
        .map(|&tau| entropy_point(&evo, tau))
        .collect()
}

fn require_single_excitation(spec: &ModelSpec) -> Result<()> {
    if spec.m_excited() != 1 {
        return Err(Error::Unsupported(format!(
            "closed form covers M = 1 only, got M = {}",
            spec.m_excited()
        )));
    }
    Ok(())
}

/// `P_1(tau) = 4(N-1)/N^2 sin^2(N tau / 2)` for `M = 1`.
pub fn excited_probability_m1(n_total: usize, tau: f64) -> f64 {
    let n = n_total as f64;
    4.0 * (n - 1.0) / (n * n) * (0.5 * n * tau).sin().powi(2)
}

/// Analytic `dE/dtau` for `M = 1`:
/// `2 (N-1)/N sin(N tau) log2[N^2 / (4(N-1)) csc^2(N tau / 2) - 1]`.
///
/// Undefined where `sin(N tau / 2) = 0`. Where `P_1 = 1` (only `N = 2`) the
/// log argument vanishes and the limit value 0 is returned.
pub fn entropy_rate_m1(spec: &ModelSpec, tau: f64) -> Result<f64> {
    require_single_excitation(spec)?;
    let n = spec.n_total() as f64;
    let half = (0.5 * n * tau).sin();
    if half.abs() < 1e-12 {
        return Err(Error::Singular {
            tau,
            reason: format!("sin(N tau / 2) = 0 for N = {}", spec.n_total()),
        });
    }
    let arg = n * n / (4.0 * (n - 1.0)) / (half * half) - 1.0;
    if arg <= 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * (n - 1.0) / n * (n * tau).sin() * arg.log2())
}

/// Whether `tau'` is real: `N^2 <= 8(N-1)`, i.e. `N` in `2..=6`.
#[inline]
pub fn has_one_ebit_time(n_total: usize) -> bool {
    n_total * n_total <= 8 * (n_total - 1)
}

/// `arccsc(x) = arcsin(1/x)` for `|x| >= 1`.
pub fn arccsc(x: f64) -> Option<f64> {
    (x.abs() >= 1.0).then(|| (1.0 / x).asin())
}

/// Closed-form entropy at `tau'' = pi/N` for `M = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct T2Entropy {
    pub value: f64,
    /// `N = 2`: `tau''` completes the excitation transfer and the state is a
    /// product again, so this is a minimum, not a maximum.
    pub degenerate: bool,
}

/// `(2/N^2) {N^2 log2 N - (N-2)^2 log2(N-2) - 2(N-1) log2[4(N-1)]}`.
pub fn max_entropy_at_t2(spec: &ModelSpec) -> Result<T2Entropy> {
    require_single_excitation(spec)?;
    let n = spec.n_total() as f64;
    let gap_term = if n > 2.0 {
        (n - 2.0).powi(2) * (n - 2.0).log2()
    } else {
        0.0
    };
    let value =
        2.0 / (n * n) * (n * n * n.log2() - gap_term - 2.0 * (n - 1.0) * (4.0 * (n - 1.0)).log2());
    Ok(T2Entropy {
        value,
        degenerate: spec.n_total() < 3,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalTimes {
    pub spec: ModelSpec,
    /// `tau'` where `E = 1`; `None` for `N > 6`.
    pub t_prime: Option<f64>,
    /// `tau'' = pi / N`.
    pub t_double_prime: f64,
    pub e_at_t_prime: Option<f64>,
    pub e_at_t_double_prime: f64,
}

impl CriticalTimes {
    /// Larger of the two candidate entropies and the time it occurs at.
    pub fn maximum(&self) -> Maximum {
        match (self.t_prime, self.e_at_t_prime) {
            (Some(t), Some(e)) if e >= self.e_at_t_double_prime => Maximum { arg: t, value: e },
            _ => Maximum {
                arg: self.t_double_prime,
                value: self.e_at_t_double_prime,
            },
        }
    }
}

pub fn critical_times_m1(spec: &ModelSpec) -> Result<CriticalTimes> {
    require_single_excitation(spec)?;
    let n_total = spec.n_total();
    let n = n_total as f64;
    let t_prime = if has_one_ebit_time(n_total) {
        // The integer test decides existence; clamp guards rounding at the boundary.
        let x = (2.0 / n * (2.0 * (n - 1.0)).sqrt()).max(1.0);
        arccsc(x).map(|a| 2.0 / n * a)
    } else {
        None
    };
    let evo = Evolution::new(spec);
    let e_at_t_prime = match t_prime {
        Some(t) => Some(entropy_point(&evo, t)?.entropy),
        None => None,
    };
    Ok(CriticalTimes {
        spec: *spec,
        t_prime,
        t_double_prime: PI / n,
        e_at_t_prime,
        e_at_t_double_prime: max_entropy_at_t2(spec)?.value,
    })
}

/// Numeric maximum of the entropy over one modulus period (any `M`).
pub fn max_entropy_numeric(spec: &ModelSpec) -> Result<Maximum> {
    let evo = Evolution::new(spec);
    let Some(period) = evo.modulus_period() else {
        return Ok(Maximum {
            arg: 0.0,
            value: entropy_point(&evo, 0.0)?.entropy,
        });
    };
    // Closed-form evaluation cannot fail on a finite grid of a valid model.
    let f = |tau: f64| {
        entropy_point(&evo, tau)
            .map(|p| p.entropy)
            .unwrap_or(f64::NAN)
    };
    Ok(grid_then_golden(
        f,
        0.0,
        period,
        GRID_POINTS_PER_PERIOD,
        ARGMAX_TOLERANCE,
    ))
}

/// One row of the maximal-entanglement table for `M = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagicRow {
    pub n_total: usize,
    pub t_prime: Option<f64>,
    pub t_double_prime: f64,
    /// Analytic maximum over `{E(tau'), E(tau'')}`.
    pub max_entropy: f64,
    pub argmax_tau: f64,
    /// Independent grid + golden-section maximum.
    pub numeric: Maximum,
}

impl MagicRow {
    pub fn numeric_deviation(&self) -> f64 {
        (self.max_entropy - self.numeric.value).abs()
    }
}

pub fn magic_row(n_total: usize) -> Result<MagicRow> {
    let spec = ModelSpec::new(n_total, 1)?;
    let times = critical_times_m1(&spec)?;
    let best = times.maximum();
    Ok(MagicRow {
        n_total,
        t_prime: times.t_prime,
        t_double_prime: times.t_double_prime,
        max_entropy: best.value,
        argmax_tau: best.arg,
        numeric: max_entropy_numeric(&spec)?,
    })
}

/// Maximal single-excitation entanglement for `N = n_min..=n_max`.
pub fn magic_number_scan_range(n_min: usize, n_max: usize) -> Result<Vec<MagicRow>> {
    if n_min < 2 || n_max < n_min {
        return Err(Error::Domain(format!("invalid N range {n_min}..={n_max}")));
    }
    (n_min..=n_max).into_par_iter().map(magic_row).collect()
}

pub fn magic_number_scan(n_max: usize) -> Result<Vec<MagicRow>> {
    magic_number_scan_range(2, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spec(n: usize, m: usize) -> ModelSpec {
        ModelSpec::new(n, m).unwrap()
    }

    fn spectrum_at(n: usize, m: usize, tau: f64) -> SchmidtSpectrum {
        schmidt_spectrum(&Evolution::new(&spec(n, m)).at(tau).unwrap()).unwrap()
    }

    /// Binary entropy written out independently of `neg_plogp`.
    fn binary_entropy(p: f64) -> f64 {
        let h = |x: f64| {
            if x == 0.0 {
                0.0
            } else {
                -x * x.ln() / 2f64.ln()
            }
        };
        h(p) + h(1.0 - p)
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum_at(2, 1, PI / 4.0);
        assert!((s.probabilities[0] - 0.5).abs() < 1e-15);
        assert!((s.probabilities[1] - 0.5).abs() < 1e-15);

        for n in 2..=9 {
            let s = spectrum_at(n, 1, 0.0);
            assert!((s.probabilities[0] - 1.0).abs() < 1e-15);
            assert!(s.probabilities[1].abs() < 1e-15);
        }

        let s = spectrum_at(7, 1, PI / 7.0);
        assert!((s.probabilities[0] - 25.0 / 49.0).abs() < 1e-14);
        assert!((s.probabilities[1] - 24.0 / 49.0).abs() < 1e-14);
    }

    #[test]
    fn unnormalized_amplitudes_rejected() {
        let mut a = Evolution::new(&spec(4, 1)).at(0.3).unwrap();
        a.amplitudes[0] *= 1.1;
        assert!(matches!(schmidt_spectrum(&a), Err(Error::Integrity(_))));
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(shannon_entropy(&[0.5, 0.5]), 1.0);
        assert_eq!(shannon_entropy(&[1.0, 0.0]), 0.0);
        let e = shannon_entropy(&[24.0 / 49.0, 25.0 / 49.0]);
        assert!((e - 0.9997).abs() < 5e-5);
        // Four-digit value from the figure; the exact value rounds to it.
        assert_eq!(format!("{e:.4}"), "0.9997");
    }

    #[test]
    fn entropy_series_examples() {
        let pts = entropy_series(&spec(2, 1), &[0.0, PI / 4.0]).unwrap();
        assert!(pts[0].entropy.abs() < 1e-15);
        assert!((pts[1].entropy - 1.0).abs() < 1e-15);

        let grid: Vec<f64> = (0..=20_000)
            .map(|i| 2.0 * PI / 3.0 * i as f64 / 20_000.0)
            .collect();
        let max3 = entropy_series(&spec(3, 1), &grid)
            .unwrap()
            .iter()
            .map(|p| p.entropy)
            .fold(0.0, f64::max);
        assert!((max3 - 1.0).abs() < 1e-6);

        let grid: Vec<f64> = (0..=20_000)
            .map(|i| 2.0 * PI / 8.0 * i as f64 / 20_000.0)
            .collect();
        let max8 = entropy_series(&spec(8, 1), &grid)
            .unwrap()
            .iter()
            .map(|p| p.entropy)
            .fold(0.0, f64::max);
        assert!(max8 < 1.0);
        assert!(matches!(
            entropy_series(&spec(8, 1), &[]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn excited_probability_matches_pipeline() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=50 {
            let evo = Evolution::new(&spec(n, 1));
            for _ in 0..10 {
                let tau = rng.gen_range(0.0..4.0 * PI);
                let p = entropy_point(&evo, tau).unwrap();
                assert!(
                    (p.spectrum.probabilities[1] - excited_probability_m1(n, tau)).abs() < 1e-12
                );
                assert!((p.entropy - binary_entropy(excited_probability_m1(n, tau))).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn range_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 2..=10 {
            for m in 0..=n {
                let s = spec(n, m);
                let evo = Evolution::new(&s);
                let cap = ((s.m_prime() + 1) as f64).log2();
                for _ in 0..20 {
                    let p = entropy_point(&evo, rng.gen_range(0.0..4.0 * PI)).unwrap();
                    assert!((p.spectrum.total() - 1.0).abs() < 1e-12);
                    assert!(p
                        .spectrum
                        .probabilities
                        .iter()
                        .all(|&x| (0.0..=1.0).contains(&x)));
                    assert!(p.entropy >= 0.0 && p.entropy <= cap + 1e-12);
                }
            }
        }
    }

    #[test]
    fn rate_examples() {
        assert!(entropy_rate_m1(&spec(2, 1), PI / 4.0).unwrap().abs() < 1e-12);
        let t = critical_times_m1(&spec(4, 1)).unwrap();
        let tp = t.t_prime.unwrap();
        assert!(((2.0 * tp).sin().powi(2) - 16.0 / 24.0).abs() < 1e-12);
        assert!(entropy_rate_m1(&spec(4, 1), tp).unwrap().abs() < 1e-10);
        assert!(entropy_rate_m1(&spec(10, 1), PI / 10.0).unwrap().abs() < 1e-10);
        assert!(matches!(
            entropy_rate_m1(&spec(5, 1), 2.0 * PI / 5.0),
            Err(Error::Singular { .. })
        ));
        assert!(matches!(
            entropy_rate_m1(&spec(5, 1), 0.0),
            Err(Error::Singular { .. })
        ));
        assert!(matches!(
            entropy_rate_m1(&spec(5, 2), 0.3),
            Err(Error::Unsupported(_))
        ));
        // N = 2 at tau'' sits on P_1 = 1.
        assert!(entropy_rate_m1(&spec(2, 1), PI / 2.0).unwrap().abs() < 1e-10);
    }

    #[test]
    fn rate_matches_finite_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let h = 1e-6;
        for n in 2..=12 {
            let evo = Evolution::new(&spec(n, 1));
            let period = 2.0 * PI / n as f64;
            let e = |t: f64| entropy_point(&evo, t).unwrap().entropy;
            let mut checked = 0;
            while checked < 50 {
                let tau = rng.gen_range(0.0..4.0 * PI);
                let phase = tau.rem_euclid(period) / period;
                // Stay clear of the zeros of P_1 (and of P_0 for N = 2).
                if !(0.02..=0.98).contains(&phase) || (n == 2 && (phase - 0.5).abs() < 0.02) {
                    continue;
                }
                let fd = (e(tau + h) - e(tau - h)) / (2.0 * h);
                let rate = entropy_rate_m1(&spec(n, 1), tau).unwrap();
                assert!(
                    (fd - rate).abs() < 1e-5,
                    "N={n} tau={tau} fd={fd} rate={rate}"
                );
                checked += 1;
            }
        }
    }

    #[test]
    fn critical_time_examples() {
        let t = critical_times_m1(&spec(2, 1)).unwrap();
        assert!((t.t_prime.unwrap() - PI / 4.0).abs() < 1e-15);
        assert!((t.e_at_t_prime.unwrap() - 1.0).abs() < 1e-12);

        let t = critical_times_m1(&spec(6, 1)).unwrap();
        assert!((t.e_at_t_prime.unwrap() - 1.0).abs() < 1e-12);

        let t = critical_times_m1(&spec(7, 1)).unwrap();
        assert!(t.t_prime.is_none() && t.e_at_t_prime.is_none());
        assert!((t.t_double_prime - PI / 7.0).abs() < 1e-15);

        assert!(matches!(
            critical_times_m1(&spec(7, 2)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn existence_boundary_is_exact() {
        let exists: Vec<usize> = (2..=100).filter(|&n| has_one_ebit_time(n)).collect();
        assert_eq!(exists, vec![2, 3, 4, 5, 6]);
        for n in 2..=100 {
            assert_eq!(
                critical_times_m1(&spec(n, 1)).unwrap().t_prime.is_some(),
                n <= 6
            );
        }
        assert_eq!(arccsc(0.5), None);
        assert!((arccsc(2.0).unwrap() - PI / 6.0).abs() < 1e-15);
    }

    #[test]
    fn t2_examples() {
        let v = max_entropy_at_t2(&spec(7, 1)).unwrap();
        assert!((v.value - 0.9997).abs() < 5e-5 && !v.degenerate);
        let v = max_entropy_at_t2(&spec(3, 1)).unwrap().value;
        assert!((v - binary_entropy(1.0 / 9.0)).abs() < 1e-12);
        assert!((v - 0.5033).abs() < 5e-5);
        let v = max_entropy_at_t2(&spec(2, 1)).unwrap();
        assert!(v.value.abs() < 1e-15 && v.degenerate);
    }

    #[test]
    fn t2_closed_form_matches_pipeline() {
        for n in 3..=60 {
            let direct = entropy_point(&Evolution::new(&spec(n, 1)), PI / n as f64)
                .unwrap()
                .entropy;
            let closed = max_entropy_at_t2(&spec(n, 1)).unwrap().value;
            assert!((direct - closed).abs() < 1e-12, "N={n}");
        }
    }

    #[test]
    fn t2_strictly_decreasing() {
        let vals: Vec<f64> = (7..=200)
            .map(|n| max_entropy_at_t2(&spec(n, 1)).unwrap().value)
            .collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
        assert!(vals.iter().all(|&v| v < 1.0));
    }

    #[test]
    fn scan_rows() {
        let rows = magic_number_scan(30).unwrap();
        for r in &rows {
            assert!(r.numeric_deviation() < 1e-8, "N={}", r.n_total);
            if r.n_total <= 6 {
                assert!((r.max_entropy - 1.0).abs() < 1e-10);
                assert_eq!(Some(r.argmax_tau), r.t_prime);
            } else {
                assert!(r.max_entropy < 1.0 && r.t_prime.is_none());
            }
        }
        assert!((rows[5].max_entropy - 0.9997).abs() < 5e-5);
        assert!(rows[18].max_entropy < rows[17].max_entropy);
        assert!(magic_number_scan(1).is_err());
    }

    #[test]
    fn argmax_minimizes_schmidt_gap() {
        for n in 2..=8 {
            let period = 2.0 * PI / n as f64;
            let grid: Vec<f64> = (0..1024).map(|i| period * i as f64 / 1023.0).collect();
            let pts = entropy_series(&spec(n, 1), &grid).unwrap();
            let gap = |p: &EntropyPoint| {
                (p.spectrum.probabilities[1] - p.spectrum.probabilities[0]).abs()
            };
            let best = pts
                .iter()
                .max_by(|a, b| a.entropy.total_cmp(&b.entropy))
                .unwrap();
            assert!(pts.iter().all(|p| gap(best) <= gap(p) + 1e-12), "N={n}");
        }
    }

    #[test]
    fn numeric_maximum_general_m() {
        // Vacuum: nothing moves.
        let m = max_entropy_numeric(&spec(5, 0)).unwrap();
        assert_eq!(m.value, 0.0);
        // M = 2 of N = 4 can exceed one ebit (three Schmidt pairs).
        let m = max_entropy_numeric(&spec(4, 2)).unwrap();
        assert!(m.value > 1.0 && m.value <= 3f64.log2() + 1e-12);
    }
}
