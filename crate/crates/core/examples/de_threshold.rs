//! DE thresholds of the GLDPC ensembles with (255,231,3) and (511,484,3)
//! BCH constraint nodes on the bi-AWGN channel.
//!
//! Run with `cargo run --release --example de_threshold`.

use std::time::Instant;

use pc_fec::bch::BchCode;
use pc_fec::channel::{ChannelModel, LlrMethod, Modulation};
use pc_fec::de::{threshold_search, ThresholdSearch, TransitionTable};
use pc_fec::mixture::MixtureLlrModel;
use pc_fec::product::ProductCode;

fn main() -> pc_fec::error::Result<()> {
    for (v, bracket) in [(8, (3.0, 6.0)), (9, (3.0, 6.0))] {
        let code = BchCode::new(v, 3)?;
        let rate = ProductCode::new(code.clone()).rate();
        let start = Instant::now();
        let table = TransitionTable::monte_carlo(&code, 10_000, 1);
        let built = start.elapsed();
        let family = |db: f64| {
            ChannelModel::from_ebn0(Modulation::BiAwgn, db, rate, LlrMethod::Exact).map(|c| MixtureLlrModel::for_channel(&c))
        };
        let th = threshold_search(&table, family, bracket, &ThresholdSearch::default())?;
        println!(
            "({}, {}, 3): threshold {:.3} dB  (table {:.1?}, search {:.1?}, {} DE runs)",
            code.n(),
            code.k(),
            th.threshold_db,
            built,
            start.elapsed() - built,
            th.evaluations
        );
    }
    Ok(())
}
