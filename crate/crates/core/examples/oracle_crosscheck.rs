//! Exact diagonalization against the closed form, plus a full 2^N check of
//! the excitation-sector restriction.
//!
//! cargo run --release --example oracle_crosscheck

use svw_core::cli::verify_samples;
use svw_core::oracle::{full_space_crosscheck, verify_closed_form};
use svw_core::ModelSpec;

fn main() -> svw_core::Result<()> {
    println!("closed form vs sector exact diagonalization (64 random times each)");
    for (n, m) in [(2, 1), (5, 2), (8, 3), (10, 5), (12, 4)] {
        let r = verify_closed_form(&ModelSpec::new(n, m)?, &verify_samples(7, n, m, 64))?;
        println!(
            "  N = {n:>2}, M = {m}: spectrum {:.2e}, entropy {:.2e}, Schmidt rank {} -> {}",
            r.max_spectrum_deviation,
            r.max_entropy_deviation,
            r.max_schmidt_rank,
            if r.passed() { "PASS" } else { "FAIL" }
        );
    }

    println!("sector vs full Hilbert space");
    for (n, m, tau) in [(4, 2, 1.0), (6, 3, 2.5), (8, 1, std::f64::consts::PI / 8.0)] {
        let c = full_space_crosscheck(n, m, tau)?;
        println!(
            "  N = {n}, M = {m}, tau = {tau:.4}: deviation {:.2e}, leakage {:.2e}",
            c.deviation, c.leakage
        );
    }
    Ok(())
}
