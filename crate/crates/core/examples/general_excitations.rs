//! Numeric entanglement maxima when several sites start excited.
//!
//! cargo run --example general_excitations -- 8

use svw_core::entanglement::max_entropy_numeric;
use svw_core::ModelSpec;

fn main() -> svw_core::Result<()> {
    let n = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(8);
    println!("N = {n}");
    for m in 0..=n / 2 {
        let spec = ModelSpec::new(n, m)?;
        let best = max_entropy_numeric(&spec)?;
        let cap = ((spec.m_prime() + 1) as f64).log2();
        println!(
            "  M = {m}: max E = {:.6} at tau = {:.6} (bound {cap:.4})",
            best.value, best.arg
        );
    }
    Ok(())
}
