//! Single-excitation critical times and the maximal-entanglement table:
//! one ebit is reachable for N = 2..=6 only.
//!
//! cargo run --example magic_number -- 20

use svw_core::entanglement::{entropy_rate_m1, magic_number_scan};
use svw_core::ModelSpec;

fn main() -> svw_core::Result<()> {
    let n_max = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(20);
    println!(
        "{:>3}  {:>10}  {:>10}  {:>10}  {:>10}  {:>9}",
        "N", "tau'", "tau''", "max E", "grid max", "dE at max"
    );
    for row in magic_number_scan(n_max)? {
        let rate = entropy_rate_m1(&ModelSpec::new(row.n_total, 1)?, row.argmax_tau)?;
        println!(
            "{:>3}  {:>10}  {:>10.6}  {:>10.6}  {:>10.6}  {:>9.1e}",
            row.n_total,
            row.t_prime
                .map(|t| format!("{t:.6}"))
                .unwrap_or_else(|| "-".into()),
            row.t_double_prime,
            row.max_entropy,
            row.numeric.value,
            rate
        );
    }
    Ok(())
}
