//! Short BER sweep of the (255,231,3)^2 product code on bi-AWGN comparing
//! iBDD, ideal iBDD and iBDD-CR. Prints the sweep CSV per decoder.
//!
//! Run with `cargo run --release --example ber_sweep [max_frames]`.

use std::time::Instant;

use pc_fec::bch::BchCode;
use pc_fec::channel::Modulation;
use pc_fec::de::TransitionTable;
use pc_fec::decoder::Decoder;
use pc_fec::product::ProductCode;
use pc_fec::sim::{default_design_ebn0_db, design_lut, run_plan, to_csv, StopRule, SweepPlan};

fn main() -> pc_fec::error::Result<()> {
    let max_frames = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2000);
    let component = BchCode::new(8, 3)?;
    let code = ProductCode::new(component.clone());
    let table = TransitionTable::cached(&component, 10_000, 1, &std::env::temp_dir())?;
    let design = default_design_ebn0_db(&table, Modulation::BiAwgn, code.rate())?;
    println!("# LUT design point {design:.3} dB");
    let lut = design_lut(&table, Modulation::BiAwgn, code.rate(), design, 10)?;
    let snr = vec![4.2, 4.3, 4.4, 4.5, 4.6];
    for decoder in [Decoder::Ibdd, Decoder::IdealIbdd, Decoder::IbddCr(lut)] {
        let mut plan = SweepPlan::new(code.clone(), decoder, Modulation::BiAwgn, snr.clone());
        plan.stop = StopRule {
            min_frame_errors: 100,
            max_frames,
        };
        plan.master_seed = 7;
        let start = Instant::now();
        let points = run_plan(&plan)?;
        let frames: u64 = points.iter().map(|p| p.frames).sum();
        println!("# {}: {frames} frames in {:.1?}", plan.decoder.name(), start.elapsed());
        print!("{}", to_csv(&points));
    }
    Ok(())
}
