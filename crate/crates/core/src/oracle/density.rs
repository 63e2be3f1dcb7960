//! Reduced density matrices of sector states.
//!
//! A state with a fixed total excitation number gives a reduced density
//! matrix that is block diagonal in the excitation number of subsystem A.
//! Each block is `Psi_k Psi_k^dagger`, where `Psi_k` collects the amplitudes
//! whose A part carries `k` excitations, so the full `2^|A|` matrix is never
//! needed unless asked for.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::basis::{fixed_weight_patterns, site_mask};
use super::SectorState;
use crate::entanglement::neg_plogp;
use crate::error::{Error, Result};

/// Eigenvalues below `-NEGATIVE_SLACK` signal a broken density matrix.
pub const NEGATIVE_SLACK: f64 = 1e-9;

/// One excitation-number block of `rho_A`.
#[derive(Debug, Clone)]
pub struct DensityBlock {
    /// Excitations carried by subsystem A in this block.
    pub a_excitations: usize,
    /// Local A patterns labelling rows and columns (bit `|A|-1-j` is the j-th A site).
    pub a_patterns: Vec<u64>,
    pub matrix: DMatrix<Complex64>,
}

#[derive(Debug, Clone)]
pub struct ReducedDensity {
    /// Sites forming subsystem A.
    pub sites: Vec<usize>,
    pub blocks: Vec<DensityBlock>,
    /// All eigenvalues of `rho_A` present in the blocks, descending.
    pub eigenvalues: Vec<f64>,
}

impl ReducedDensity {
    pub fn partition_size(&self) -> usize {
        self.sites.len()
    }

    pub fn trace(&self) -> f64 {
        self.blocks.iter().map(|b| b.matrix.trace().re).sum()
    }

    /// Number of eigenvalues above `threshold`.
    pub fn rank(&self, threshold: f64) -> usize {
        self.eigenvalues.iter().filter(|&&l| l > threshold).count()
    }

    /// Dense `2^|A| x 2^|A|` matrix indexed by local A patterns.
    pub fn to_dense(&self) -> Result<DMatrix<Complex64>> {
        let size = self.partition_size();
        if size > 12 {
            return Err(Error::Resource(format!(
                "dense reduced density for {size} sites"
            )));
        }
        let dim = 1usize << size;
        let mut out = DMatrix::zeros(dim, dim);
        for b in &self.blocks {
            for (i, &pi) in b.a_patterns.iter().enumerate() {
                for (j, &pj) in b.a_patterns.iter().enumerate() {
                    out[(pi as usize, pj as usize)] = b.matrix[(i, j)];
                }
            }
        }
        Ok(out)
    }
}

/// Projects the bits of `pattern` at `sites` into a compact local pattern.
fn gather(pattern: u64, n_total: usize, sites: &[usize]) -> u64 {
    let len = sites.len();
    sites.iter().enumerate().fold(0u64, |acc, (j, &s)| {
        if pattern & site_mask(n_total, s) != 0 {
            acc | 1u64 << (len - 1 - j)
        } else {
            acc
        }
    })
}

/// `rho_A = Tr_B |psi><psi|` for an arbitrary set of A sites.
pub fn reduced_density_sites(state: &SectorState, sites: &[usize]) -> Result<ReducedDensity> {
    let n_total = state.basis.n_total();
    let exc = state.basis.excitation_count();
    let mut seen = vec![false; n_total];
    for &s in sites {
        if s >= n_total || seen[s] {
            return Err(Error::Domain(format!(
                "invalid or repeated site {s} for N = {n_total}"
            )));
        }
        seen[s] = true;
    }
    if sites.is_empty() || sites.len() >= n_total {
        return Err(Error::Domain(format!(
            "partition size {} outside 1..={}",
            sites.len(),
            n_total - 1
        )));
    }
    let b_sites: Vec<usize> = (0..n_total).filter(|s| !seen[*s]).collect();
    let (a_len, b_len) = (sites.len(), b_sites.len());

    let mut blocks = Vec::new();
    let mut eigenvalues = Vec::new();
    for k in exc.saturating_sub(b_len)..=exc.min(a_len) {
        let a_patterns = fixed_weight_patterns(a_len, k);
        let b_patterns = fixed_weight_patterns(b_len, exc - k);
        let mut psi = DMatrix::<Complex64>::zeros(a_patterns.len(), b_patterns.len());
        for (amp, &pattern) in state.amplitudes.iter().zip(state.basis.states()) {
            let a = gather(pattern, n_total, sites);
            if a.count_ones() as usize != k {
                continue;
            }
            let b = gather(pattern, n_total, &b_sites);
            // Both lists are sorted, so positions come from binary search.
            let i = a_patterns.binary_search(&a).expect("A pattern in block");
            let j = b_patterns.binary_search(&b).expect("B pattern in block");
            psi[(i, j)] = *amp;
        }
        let matrix = &psi * psi.adjoint();
        let eig = SymmetricEigen::try_new(matrix.clone(), 1e-15, 10_000)
            .ok_or_else(|| Error::Numeric("Hermitian eigensolver did not converge".into()))?;
        eigenvalues.extend(eig.eigenvalues.iter().copied());
        blocks.push(DensityBlock {
            a_excitations: k,
            a_patterns,
            matrix,
        });
    }
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    Ok(ReducedDensity {
        sites: sites.to_vec(),
        blocks,
        eigenvalues,
    })
}

/// Reduced density of the first `partition_size` sites.
pub fn reduced_density(state: &SectorState, partition_size: usize) -> Result<ReducedDensity> {
    let sites: Vec<usize> = (0..partition_size).collect();
    reduced_density_sites(state, &sites)
}

/// Entropy in ebits of an eigenvalue list, clipping tiny negative round-off.
pub fn eigenvalue_entropy(eigenvalues: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for &l in eigenvalues {
        if l < -NEGATIVE_SLACK {
            return Err(Error::Integrity(format!("negative density eigenvalue {l}")));
        }
        total += neg_plogp(l.max(0.0));
    }
    Ok(total)
}

/// `-Tr rho_A log2 rho_A`.
pub fn von_neumann_entropy(rho: &ReducedDensity) -> Result<f64> {
    eigenvalue_entropy(&rho.eigenvalues)
}
