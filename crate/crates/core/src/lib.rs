//! Exact bipartite entanglement dynamics of `N` equivalent-neighbor spin-1/2
//! sites (quantum dots) in the XY spin van der Waals, a.k.a.
//! Lipkin-Meshkov-Glick, model.
//!
//! The system starts in the product state with the first `M` sites excited
//! and the remaining `N - M` sites in the ground state. Its evolution stays in
//! the symmetric span of `M' + 1` Schmidt pairs, `M' = min(M, N - M)`, whose
//! amplitudes have a closed form built from alternating binomial sums.
//!
//! Layout:
//!
//! - [`combinatorics`]: exact binomials and the rational coefficient table.
//! - [`evolution`]: closed-form amplitudes at a dimensionless time `tau = kappa * t`.
//! - [`entanglement`]: Schmidt spectra, entropy, and the single-excitation
//!   critical times (maximal entanglement exists only for `N = 2..=6`).
//! - [`oracle`]: brute-force exact diagonalization used to cross-check every
//!   closed form.
//! - [`cli`]: the `evolve`/`maxima`/`verify`/`figures` front end with CSV and
//!   SVG output.
//!
//! ```
//! use svw_core::{ModelSpec, entanglement};
//!
//! let spec = ModelSpec::new(7, 1).unwrap();
//! let times = entanglement::critical_times_m1(&spec).unwrap();
//! assert!(times.t_prime.is_none());
//! assert!((times.e_at_t_double_prime - 0.9997).abs() < 5e-5);
//! ```

pub mod cli;
pub mod combinatorics;
pub mod entanglement;
pub mod error;
pub mod evolution;
pub mod maximize;
pub mod oracle;

pub use combinatorics::{BCoefficientTable, ModelSpec};
pub use entanglement::{CriticalTimes, SchmidtSpectrum};
pub use error::{Error, Result};
pub use evolution::{AmplitudeVector, PhaseSpectrum};
