//! Dense `2^N` construction from explicit Pauli tensor products, used to
//! validate the sector restriction itself.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::{build_sector_hamiltonian, site_mask, SectorState};
use crate::combinatorics::ModelSpec;
use crate::error::{Error, Result};

pub const FULL_SPACE_MAX_SITES: usize = 8;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pauli_x() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
}

fn pauli_y() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
}

/// `(sx + i sy) / 2 = |0><1|` in the `(|0>, |1>)` basis. The hop term is
/// symmetric in `s+` and `s-`, so which level counts as "up" does not matter.
fn sigma_plus() -> DMatrix<Complex64> {
    (pauli_x() + pauli_y() * c(0., 1.)) * c(0.5, 0.)
}

fn sigma_minus() -> DMatrix<Complex64> {
    (pauli_x() - pauli_y() * c(0., 1.)) * c(0.5, 0.)
}

/// `op_a` on `site_a`, `op_b` on `site_b`, identity elsewhere; site 0 is the
/// leftmost tensor factor.
fn two_site_operator(
    n_total: usize,
    site_a: usize,
    op_a: &DMatrix<Complex64>,
    site_b: usize,
    op_b: &DMatrix<Complex64>,
) -> DMatrix<Complex64> {
    let id = DMatrix::<Complex64>::identity(2, 2);
    (0..n_total).fold(DMatrix::from_element(1, 1, c(1., 0.)), |acc, s| {
        let factor = if s == site_a {
            op_a
        } else if s == site_b {
            op_b
        } else {
            &id
        };
        acc.kronecker(factor)
    })
}

/// `sum_{i<j} (s+_i s-_j + s-_i s+_j)` on the full `2^N` space.
pub fn full_space_hamiltonian(n_total: usize) -> Result<DMatrix<Complex64>> {
    if n_total == 0 || n_total > FULL_SPACE_MAX_SITES {
        return Err(Error::Resource(format!(
            "full-space construction supports 1..={FULL_SPACE_MAX_SITES} sites, got {n_total}"
        )));
    }
    let dim = 1usize << n_total;
    let (up, down) = (sigma_plus(), sigma_minus());
    let mut h = DMatrix::zeros(dim, dim);
    for i in 0..n_total {
        for j in i + 1..n_total {
            h += two_site_operator(n_total, i, &up, j, &down);
            h += two_site_operator(n_total, i, &down, j, &up);
        }
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullSpaceCheck {
    /// Largest entrywise gap between the full-space state and the embedded sector state.
    pub deviation: f64,
    /// Weight of the full-space state outside the initial excitation sector.
    pub leakage: f64,
}

/// Full-space eigendecomposition, reusable across times and initial states.
#[derive(Debug, Clone)]
pub struct FullSpacePropagator {
    n_total: usize,
    energies: DVector<f64>,
    vectors: DMatrix<Complex64>,
}

impl FullSpacePropagator {
    pub fn new(n_total: usize) -> Result<Self> {
        let h = full_space_hamiltonian(n_total)?;
        let eig = SymmetricEigen::try_new(h, 1e-15, 100_000)
            .ok_or_else(|| Error::Numeric("Hermitian eigensolver did not converge".into()))?;
        Ok(Self {
            n_total,
            energies: eig.eigenvalues,
            vectors: eig.eigenvectors,
        })
    }

    pub fn apply(&self, initial: &DVector<Complex64>, tau: f64) -> DVector<Complex64> {
        let mut coeffs = self.vectors.ad_mul(initial);
        for (x, &e) in coeffs.iter_mut().zip(self.energies.iter()) {
            *x *= Complex64::from_polar(1.0, -e * tau);
        }
        &self.vectors * coeffs
    }

    /// Propagates the product state of `m_excited` both ways and compares.
    pub fn check(&self, m_excited: usize, tau: f64) -> Result<FullSpaceCheck> {
        let n = self.n_total;
        let spec = ModelSpec::new(n, m_excited)?;
        let sector_init = SectorState::product(&spec)?;
        let prop = build_sector_hamiltonian(n, m_excited)?.propagator()?;
        let sector = prop.apply(&sector_init, tau)?;

        let start: u64 = (0..m_excited).map(|s| site_mask(n, s)).sum();
        let mut init = DVector::zeros(1 << n);
        init[start as usize] = c(1., 0.);
        let full = self.apply(&init, tau);

        let mut embedded = DVector::<Complex64>::zeros(1 << n);
        for (amp, &pattern) in sector.amplitudes.iter().zip(sector.basis.states()) {
            embedded[pattern as usize] = *amp;
        }
        let deviation = (&full - &embedded)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let leakage = full
            .iter()
            .enumerate()
            .filter(|(idx, _)| idx.count_ones() as usize != m_excited)
            .map(|(_, z)| z.norm_sqr())
            .sum();
        Ok(FullSpaceCheck { deviation, leakage })
    }
}

pub fn full_space_crosscheck(n_total: usize, m_excited: usize, tau: f64) -> Result<FullSpaceCheck> {
    FullSpacePropagator::new(n_total)?.check(m_excited, tau)
}
