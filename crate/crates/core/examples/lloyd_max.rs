//! Lloyd-Max quantizers of the 16-QAM channel LLR law at 2 to 5 bits,
//! against the best uniform quantizer.
//!
//! Run with `cargo run --release --example lloyd_max`.

use pc_fec::channel::{ChannelModel, LlrMethod, Modulation};
use pc_fec::mixture::MixtureLlrModel;
use pc_fec::quantizer::{best_uniform_quantizer, lloyd_max_design};

fn main() -> pc_fec::error::Result<()> {
    let ch = ChannelModel::from_ebn0(Modulation::Ask { m: 2 }, 7.6, 0.8206, LlrMethod::MaxLog)?;
    let density = MixtureLlrModel::for_channel(&ch).symmetric();
    for bits in 2..=5 {
        let lm = lloyd_max_design(&density, bits)?;
        let uni = best_uniform_quantizer(&density, bits)?;
        println!(
            "{bits} bits: Lloyd-Max MSE {:.4}, uniform MSE {:.4}",
            lm.mse(&density),
            uni.mse(&density)
        );
        if bits == 3 {
            println!("  boundaries {:?}", lm.boundaries.iter().map(|b| (b * 100.0).round() / 100.0).collect::<Vec<_>>());
            println!("  levels     {:?}", lm.levels.iter().map(|b| (b * 100.0).round() / 100.0).collect::<Vec<_>>());
        }
    }
    Ok(())
}
