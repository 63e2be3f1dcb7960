//! Writes the three standard figure data sets (CSV + SVG) into a directory.
//!
//! cargo run --example figures -- out/figures

use std::path::PathBuf;

use svw_core::cli::{cmd_figures, Command, Overrides, RunConfig};

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("figures"));
    let cfg = RunConfig::resolve(
        Command::Figures,
        Overrides {
            output_path: Some(dir),
            svg: Some(true),
            ..Default::default()
        },
    )
    .expect("valid configuration");
    match cmd_figures(&cfg) {
        Ok(files) => files.iter().for_each(|f| println!("wrote {}", f.display())),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
