//! Schmidt weights and entanglement entropy over one period.
//!
//! cargo run --example entanglement_curve -- 5 1

use std::f64::consts::PI;

use svw_core::entanglement::entropy_series;
use svw_core::evolution::Evolution;
use svw_core::ModelSpec;

fn main() -> svw_core::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (n, m) = (
        args.first().copied().unwrap_or(5),
        args.get(1).copied().unwrap_or(1),
    );
    let spec = ModelSpec::new(n, m)?;
    let period = Evolution::new(&spec).modulus_period().unwrap_or(2.0 * PI);

    let grid: Vec<f64> = (0..=24).map(|i| period * i as f64 / 24.0).collect();
    println!("{:>10}  {:>8}  Schmidt weights", "tau", "E");
    for p in entropy_series(&spec, &grid)? {
        let w: Vec<String> = p
            .spectrum
            .probabilities
            .iter()
            .map(|x| format!("{x:.4}"))
            .collect();
        let bar = "#".repeat((p.entropy * 30.0).round() as usize);
        println!(
            "{:>10.5}  {:>8.5}  [{}] {bar}",
            p.tau,
            p.entropy,
            w.join(", ")
        );
    }
    Ok(())
}
