//! Density-evolution trajectory of the (255,231,3) ensemble just above its
//! threshold, and the combining tables it yields.
//!
//! Run with `cargo run --release --example density_evolution [ebn0_db]`.

use pc_fec::bch::BchCode;
use pc_fec::channel::{ChannelModel, LlrMethod, Modulation};
use pc_fec::de::{de_run, export_lut, TransitionTable};
use pc_fec::mixture::MixtureLlrModel;
use pc_fec::product::ProductCode;

fn main() -> pc_fec::error::Result<()> {
    let ebn0: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4.1);
    let code = BchCode::new(8, 3)?;
    let rate = ProductCode::new(code.clone()).rate();
    let table = TransitionTable::cached(&code, 10_000, 1, &std::env::temp_dir())?;
    let ch = ChannelModel::from_ebn0(Modulation::BiAwgn, ebn0, rate, LlrMethod::MaxLog)?;
    let llr = MixtureLlrModel::for_channel(&ch);
    let traj = de_run(&table, &llr, 200);
    println!("Eb/N0 {ebn0} dB, p_ch {:.4e}, outcome {:?}", llr.p_ch, traj.outcome);
    for (l, x) in traj.column_x().iter().enumerate().take(25) {
        println!("{l:3}  x = {x:.4e}");
    }
    let lut = export_lut(&traj, 10, true, ebn0)?;
    println!("\niteration  mu(-1,-1)  mu(+1,-1)  mu(0,-1)");
    for (l, it) in lut.iterations.iter().enumerate() {
        println!("{:9}  {:9.3}  {:9.3}  {:8.3}", l + 1, it.row.0[0], it.row.0[1], it.row.0[2]);
    }
    Ok(())
}
