//! Brute-force exact diagonalization of the equivalent-neighbor XY model,
//! used as an independent check of the closed-form dynamics.
//!
//! `H = kappa * sum_{i<j} (s+_i s-_j + s-_i s+_j)` with the standard
//! `s+- = (sx +- i sy) / 2`. `H` conserves the excitation number, so the
//! initial product state is propagated inside its sector only. In units of
//! `kappa` every matrix element is 0 or 1 (one per single-hop pair).

mod basis;
mod density;
mod full_space;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::combinatorics::ModelSpec;
use crate::entanglement::{entropy, schmidt_spectrum};
use crate::error::{Error, Result};
use crate::evolution::Evolution;

pub use basis::{fixed_weight_patterns, site_mask, SectorBasis};
pub use density::{
    eigenvalue_entropy, reduced_density, reduced_density_sites, von_neumann_entropy, DensityBlock,
    ReducedDensity,
};
pub use full_space::{
    full_space_crosscheck, full_space_hamiltonian, FullSpaceCheck, FullSpacePropagator,
    FULL_SPACE_MAX_SITES,
};

/// Dense-solver budget: `C(14, 7) = 3432` is the largest sector.
pub const MAX_SECTOR_SITES: usize = 14;

/// Acceptance threshold of [`verify_closed_form`].
pub const VERIFY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct SectorHamiltonian {
    pub basis: SectorBasis,
    /// Real symmetric, zero diagonal, units of `kappa`.
    pub matrix: DMatrix<f64>,
}

pub fn build_sector_hamiltonian(n_total: usize, excitations: usize) -> Result<SectorHamiltonian> {
    if n_total > MAX_SECTOR_SITES {
        return Err(Error::Resource(format!(
            "N = {n_total} exceeds the dense sector budget of {MAX_SECTOR_SITES} sites"
        )));
    }
    let basis = SectorBasis::new(n_total, excitations)?;
    let dim = basis.dim();
    let mut matrix = DMatrix::zeros(dim, dim);
    for (col, &s) in basis.states().iter().enumerate() {
        for i in 0..n_total {
            for j in i + 1..n_total {
                let (mi, mj) = (site_mask(n_total, i), site_mask(n_total, j));
                // A hop needs exactly one of the two sites occupied.
                if ((s & mi) != 0) != ((s & mj) != 0) {
                    let row = basis.index_of(s ^ mi ^ mj).expect("hop stays in sector");
                    matrix[(row, col)] = 1.0;
                }
            }
        }
    }
    Ok(SectorHamiltonian { basis, matrix })
}

impl SectorHamiltonian {
    pub fn propagator(&self) -> Result<Propagator> {
        let eig = SymmetricEigen::try_new(self.matrix.clone(), 1e-15, 100_000)
            .ok_or_else(|| Error::Numeric("symmetric eigensolver did not converge".into()))?;
        Ok(Propagator {
            basis: self.basis.clone(),
            energies: eig.eigenvalues,
            vectors: eig.eigenvectors.map(|x| Complex64::new(x, 0.0)),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectorState {
    pub basis: SectorBasis,
    pub amplitudes: DVector<Complex64>,
}

impl SectorState {
    /// Basis state with `|1>` on `excited_sites` and `|0>` elsewhere.
    pub fn from_sites(n_total: usize, excited_sites: &[usize]) -> Result<Self> {
        let basis = SectorBasis::new(n_total, excited_sites.len())?;
        let mut pattern = 0u64;
        for &s in excited_sites {
            if s >= n_total || pattern & site_mask(n_total, s) != 0 {
                return Err(Error::Domain(format!("invalid or repeated site {s}")));
            }
            pattern |= site_mask(n_total, s);
        }
        let mut amplitudes = DVector::zeros(basis.dim());
        amplitudes[basis.index_of(pattern).expect("pattern in sector")] = Complex64::new(1.0, 0.0);
        Ok(Self { basis, amplitudes })
    }

    /// The initial product state: first `m_excited` sites excited.
    pub fn product(spec: &ModelSpec) -> Result<Self> {
        let sites: Vec<usize> = (0..spec.m_excited()).collect();
        Self::from_sites(spec.n_total(), &sites)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.norm_squared()
    }
}

/// `exp(-i H tau)` through the eigendecomposition of `H`.
#[derive(Debug, Clone)]
pub struct Propagator {
    basis: SectorBasis,
    energies: DVector<f64>,
    vectors: DMatrix<Complex64>,
}

impl Propagator {
    pub fn energies(&self) -> &DVector<f64> {
        &self.energies
    }

    pub fn apply(&self, initial: &SectorState, tau: f64) -> Result<SectorState> {
        if initial.basis != self.basis {
            return Err(Error::Domain(
                "state and Hamiltonian live in different sectors".into(),
            ));
        }
        let mut coeffs = self.vectors.ad_mul(&initial.amplitudes);
        for (c, &e) in coeffs.iter_mut().zip(self.energies.iter()) {
            *c *= Complex64::from_polar(1.0, -e * tau);
        }
        Ok(SectorState {
            basis: self.basis.clone(),
            amplitudes: &self.vectors * coeffs,
        })
    }
}

pub fn propagate(h: &SectorHamiltonian, initial: &SectorState, tau: f64) -> Result<SectorState> {
    h.propagator()?.apply(initial, tau)
}

/// Descending Schmidt spectrum of the oracle state across the first-`M`-sites cut.
///
/// A one-dimensional sector (`M = 0` or `M = N`) has no cut to take; its
/// spectrum is the single weight `|psi|^2`.
pub fn oracle_spectrum(state: &SectorState, partition_size: usize) -> Result<Vec<f64>> {
    if state.basis.dim() == 1 || partition_size == 0 || partition_size == state.basis.n_total() {
        return Ok(vec![state.norm_sqr()]);
    }
    Ok(reduced_density(state, partition_size)?.eigenvalues)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub spec: ModelSpec,
    pub samples: usize,
    /// Max over samples of the largest gap between the descending spectra.
    pub max_spectrum_deviation: f64,
    pub max_entropy_deviation: f64,
    /// Largest number of oracle eigenvalues above `1e-10`.
    pub max_schmidt_rank: usize,
    pub tolerance: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.max_spectrum_deviation < self.tolerance && self.max_entropy_deviation < self.tolerance
    }
}

fn padded_max_gap(a: &[f64], b: &[f64]) -> f64 {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| (a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
}

/// Compares closed-form spectra and entropies with the oracle at every sample.
pub fn verify_closed_form(spec: &ModelSpec, tau_samples: &[f64]) -> Result<VerifyReport> {
    let h = build_sector_hamiltonian(spec.n_total(), spec.m_excited())?;
    let prop = h.propagator()?;
    let initial = SectorState::product(spec)?;
    let evo = Evolution::new(spec);

    let mut report = VerifyReport {
        spec: *spec,
        samples: tau_samples.len(),
        max_spectrum_deviation: 0.0,
        max_entropy_deviation: 0.0,
        max_schmidt_rank: 0,
        tolerance: VERIFY_TOLERANCE,
    };
    for &tau in tau_samples {
        let closed = schmidt_spectrum(&evo.at(tau)?)?;
        let closed_entropy = entropy(&closed);
        let mut closed_sorted = closed.probabilities.clone();
        closed_sorted.sort_by(|a, b| b.total_cmp(a));

        let state = prop.apply(&initial, tau)?;
        let oracle = oracle_spectrum(&state, spec.m_excited())?;
        let oracle_entropy = eigenvalue_entropy(&oracle)?;

        report.max_spectrum_deviation = report
            .max_spectrum_deviation
            .max(padded_max_gap(&closed_sorted, &oracle));
        report.max_entropy_deviation = report
            .max_entropy_deviation
            .max((closed_entropy - oracle_entropy).abs());
        report.max_schmidt_rank = report
            .max_schmidt_rank
            .max(oracle.iter().filter(|&&l| l > 1e-10).count());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn spec(n: usize, m: usize) -> ModelSpec {
        ModelSpec::new(n, m).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hamiltonian_examples() {
        let h = build_sector_hamiltonian(2, 1).unwrap();
        assert_eq!(
            h.matrix,
            DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])
        );
        let h = build_sector_hamiltonian(3, 1).unwrap();
        assert_eq!(
            h.matrix,
            DMatrix::from_row_slice(3, 3, &[0., 1., 1., 1., 0., 1., 1., 1., 0.])
        );
        let h = build_sector_hamiltonian(3, 0).unwrap();
        assert_eq!(h.matrix, DMatrix::zeros(1, 1));
        assert!(matches!(
            build_sector_hamiltonian(20, 3),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn hamiltonian_structure() {
        for n in 2..=9 {
            for k in 0..=n {
                let h = build_sector_hamiltonian(n, k).unwrap();
                assert_eq!(h.matrix, h.matrix.transpose());
                assert!(h.matrix.iter().all(|&x| x == 0.0 || x == 1.0));
                assert!(h.matrix.diagonal().iter().all(|&x| x == 0.0));
                // Each state has k (N - k) hop partners.
                for col in h.matrix.column_iter() {
                    assert_eq!(col.sum() as usize, k * (n - k));
                }
            }
        }
    }

    #[test]
    fn single_excitation_spectrum() {
        // {N - 1, -1 (N - 1 fold)}: gap N, matching the sin^2(N tau / 2) period.
        for n in 2..=10 {
            let mut e: Vec<f64> = build_sector_hamiltonian(n, 1)
                .unwrap()
                .propagator()
                .unwrap()
                .energies()
                .iter()
                .copied()
                .collect();
            e.sort_by(f64::total_cmp);
            assert!((e[n - 1] - (n as f64 - 1.0)).abs() < 1e-12);
            assert!(e[..n - 1].iter().all(|&x| (x + 1.0).abs() < 1e-12));
        }
    }

    #[test]
    fn propagate_examples() {
        let h = build_sector_hamiltonian(2, 1).unwrap();
        let init = SectorState::product(&spec(2, 1)).unwrap();
        // Basis order is [01, 10]; the product state is |10>.
        let s = propagate(&h, &init, PI / 4.0).unwrap();
        assert!((s.amplitudes[1] - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((s.amplitudes[0] - c(0.0, -FRAC_1_SQRT_2)).norm() < 1e-15);

        let s = propagate(&h, &init, 0.0).unwrap();
        assert!((&s.amplitudes - &init.amplitudes).norm() < 1e-15);

        let s = propagate(&h, &init, PI / 2.0).unwrap();
        assert!((s.amplitudes[0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn norm_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let n = rng.gen_range(2..=10);
            let m = rng.gen_range(0..=n);
            let h = build_sector_hamiltonian(n, m).unwrap();
            let s = propagate(
                &h,
                &SectorState::product(&spec(n, m)).unwrap(),
                rng.gen_range(0.0..20.0),
            )
            .unwrap();
            assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn mismatched_sector_rejected() {
        let prop = build_sector_hamiltonian(4, 1)
            .unwrap()
            .propagator()
            .unwrap();
        let s = SectorState::product(&spec(4, 2)).unwrap();
        assert!(matches!(prop.apply(&s, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn reduced_density_examples() {
        let h = build_sector_hamiltonian(2, 1).unwrap();
        let s = propagate(&h, &SectorState::product(&spec(2, 1)).unwrap(), PI / 4.0).unwrap();
        let rho = reduced_density(&s, 1).unwrap();
        assert!(
            (rho.eigenvalues[0] - 0.5).abs() < 1e-15 && (rho.eigenvalues[1] - 0.5).abs() < 1e-15
        );
        assert!((von_neumann_entropy(&rho).unwrap() - 1.0).abs() < 1e-14);

        let prod = SectorState::product(&spec(6, 3)).unwrap();
        for p in 1..6 {
            let rho = reduced_density(&prod, p).unwrap();
            assert!((rho.eigenvalues[0] - 1.0).abs() < 1e-15);
            assert!(rho.eigenvalues[1..].iter().all(|l| l.abs() < 1e-15));
        }

        let h = build_sector_hamiltonian(7, 1).unwrap();
        let s = propagate(&h, &SectorState::product(&spec(7, 1)).unwrap(), PI / 7.0).unwrap();
        let rho = reduced_density(&s, 1).unwrap();
        assert!((rho.eigenvalues[0] - 25.0 / 49.0).abs() < 1e-9);
        assert!((rho.eigenvalues[1] - 24.0 / 49.0).abs() < 1e-9);

        assert!(matches!(reduced_density(&s, 0), Err(Error::Domain(_))));
        assert!(matches!(reduced_density(&s, 7), Err(Error::Domain(_))));
    }

    #[test]
    fn reduced_density_is_a_density_matrix() {
        let h = build_sector_hamiltonian(6, 3).unwrap();
        let s = propagate(&h, &SectorState::product(&spec(6, 3)).unwrap(), 0.77).unwrap();
        let rho = reduced_density(&s, 3).unwrap();
        let dense = rho.to_dense().unwrap();
        assert!((&dense - dense.adjoint()).norm() < 1e-14);
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        assert!(rho.eigenvalues.iter().all(|&l| l > -1e-12));
        assert!(rho.rank(1e-10) <= 4);
        // Dense eigenvalues agree with the block eigenvalues.
        let mut dense_eig: Vec<f64> = SymmetricEigen::new(dense)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        dense_eig.sort_by(|a, b| b.total_cmp(a));
        assert!(padded_max_gap(&dense_eig, &rho.eigenvalues) < 1e-12);
    }

    #[test]
    fn entropy_clip_and_reject() {
        assert_eq!(eigenvalue_entropy(&[0.5, 0.5]).unwrap(), 1.0);
        assert_eq!(eigenvalue_entropy(&[1.0, 0.0]).unwrap(), 0.0);
        assert!((eigenvalue_entropy(&[24.0 / 49.0, 25.0 / 49.0]).unwrap() - 0.9997).abs() < 5e-5);
        assert_eq!(eigenvalue_entropy(&[1.0, -5e-10]).unwrap(), 0.0);
        assert!(matches!(
            eigenvalue_entropy(&[1.0, -1e-6]),
            Err(Error::Integrity(_))
        ));
    }

    #[test]
    fn site_permutation_spot_check() {
        // Exciting sites {1, 4} of 6 and cutting there matches the first-two-sites cut.
        let h = build_sector_hamiltonian(6, 2).unwrap();
        let prop = h.propagator().unwrap();
        let a = prop
            .apply(&SectorState::from_sites(6, &[0, 1]).unwrap(), 1.3)
            .unwrap();
        let b = prop
            .apply(&SectorState::from_sites(6, &[1, 4]).unwrap(), 1.3)
            .unwrap();
        let ea = reduced_density(&a, 2).unwrap().eigenvalues;
        let eb = reduced_density_sites(&b, &[4, 1]).unwrap().eigenvalues;
        assert!(padded_max_gap(&ea, &eb) < 1e-12);
    }

    #[test]
    fn single_excitation_oracle_matches_binary_entropy() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 2..=12 {
            let prop = build_sector_hamiltonian(n, 1)
                .unwrap()
                .propagator()
                .unwrap();
            let init = SectorState::product(&spec(n, 1)).unwrap();
            for _ in 0..10 {
                let tau = rng.gen_range(0.0..4.0 * PI);
                let nf = n as f64;
                let p = 4.0 * (nf - 1.0) / (nf * nf) * (nf * tau / 2.0).sin().powi(2);
                let h = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
                let rho = reduced_density(&prop.apply(&init, tau).unwrap(), 1).unwrap();
                assert!((von_neumann_entropy(&rho).unwrap() - (h(p) + h(1.0 - p))).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn verify_examples() {
        let taus: Vec<f64> = (0..64).map(|i| 4.0 * PI * i as f64 / 64.0 + 0.01).collect();
        let r = verify_closed_form(&spec(2, 1), &taus).unwrap();
        assert!(r.passed() && r.max_spectrum_deviation < 1e-12);
        let r = verify_closed_form(&spec(3, 0), &taus).unwrap();
        assert!(r.passed() && r.max_entropy_deviation == 0.0);
        let r = verify_closed_form(&spec(6, 6), &taus).unwrap();
        assert!(r.passed());
        let r = verify_closed_form(&spec(9, 7), &taus).unwrap();
        assert!(r.passed() && r.max_schmidt_rank <= 3);
        assert!(matches!(
            verify_closed_form(&spec(15, 1), &taus),
            Err(Error::Resource(_))
        ));
    }
}
