//! Runs a JSON sweep config and prints the BER CSV, as `pc-fec simulate`
//! does. Transition tables are cached in the system temp directory.
//!
//! Run with `cargo run --release --example config_sweep [config.json]`.

use std::path::PathBuf;

use pc_fec::sim::{run_ber_sweep, to_csv, SimConfig};

fn main() -> pc_fec::error::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/pc255_cr.json")));
    let config = SimConfig::load(&path)?;
    eprintln!("{}", config.to_json());
    print!("{}", to_csv(&run_ber_sweep(&config, &std::env::temp_dir())?));
    Ok(())
}
