//! Exact coefficient table and closed-form amplitudes for one model.
//!
//! cargo run --example coefficient_table -- 6 3

use svw_core::combinatorics::b_table;
use svw_core::evolution::{phase_spectrum, Evolution};
use svw_core::ModelSpec;

fn main() -> svw_core::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (n, m) = (
        args.first().copied().unwrap_or(6),
        args.get(1).copied().unwrap_or(3),
    );
    let spec = ModelSpec::new(n, m)?;

    println!("N = {n}, M = {m}, M' = {}", spec.m_prime());
    println!(
        "phases n(N+1-n) - M(N-M): {:?}",
        phase_spectrum(&spec).phases
    );
    let table = b_table(&spec);
    println!("b_mn:");
    for row in table.rows() {
        let cells: Vec<String> = row.iter().map(|r| format!("{r:>10}")).collect();
        println!("  {}", cells.join(" "));
    }

    let evo = Evolution::new(&spec);
    for tau in [0.0, 0.25, 0.5, 1.0] {
        let a = evo.at(tau)?;
        let moduli: Vec<String> = a
            .amplitudes
            .iter()
            .map(|c| format!("{:.6}", c.norm()))
            .collect();
        println!(
            "tau = {tau:<5} |C_m| = [{}]  norm = {:.15}",
            moduli.join(", "),
            a.norm_sqr()
        );
    }
    Ok(())
}
