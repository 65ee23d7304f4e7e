//! One noisy (255,231,3)^2 frame decoded by iBDD, ideal iBDD, iBDD-SR and
//! iBDD-CR.
//!
//! Run with `cargo run --release --example product_decoders [ebn0_db]`.

use pc_fec::bch::BchCode;
use pc_fec::channel::{ChannelModel, LlrMethod, Modulation};
use pc_fec::de::TransitionTable;
use pc_fec::decoder::{Decoder, DecoderConfig};
use pc_fec::mixture::MixtureLlrModel;
use pc_fec::product::{BitMatrix, LlrMatrix, ProductCode};
use pc_fec::sim::{default_design_ebn0_db, design_lut};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> pc_fec::error::Result<()> {
    let ebn0: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4.3);
    let component = BchCode::new(8, 3)?;
    let pc = ProductCode::new(component.clone());
    let table = TransitionTable::cached(&component, 10_000, 1, &std::env::temp_dir())?;
    let design = default_design_ebn0_db(&table, Modulation::BiAwgn, pc.rate())?;
    let lut = design_lut(&table, Modulation::BiAwgn, pc.rate(), design, 10)?;

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let k = pc.k();
    let message = BitMatrix::from_vec(k, (0..k * k).map(|_| rng.random_range(0..2)).collect())?;
    let codeword = pc.encode(&message)?;
    let ch = ChannelModel::from_ebn0(Modulation::BiAwgn, ebn0, pc.rate(), LlrMethod::Exact)?;
    let mut llrs = vec![0.0; pc.n() * pc.n()];
    ch.transmit(codeword.as_slice(), &mut rng, &mut llrs)?;
    let llrs = LlrMatrix::from_vec(pc.n(), llrs)?;
    println!(
        "Eb/N0 {ebn0} dB (LUT designed at {design:.3} dB): {} channel errors",
        llrs.hard_decisions().hamming_distance(&codeword)
    );

    let mean = MixtureLlrModel::for_channel(&ch).mean_llr();
    for decoder in [Decoder::Ibdd, Decoder::IdealIbdd, Decoder::IbddSr, Decoder::IbddCr(lut)] {
        let config = DecoderConfig {
            sr_weights: vec![mean; 10],
            ..DecoderConfig::default()
        };
        let report = decoder.decode(&pc, &llrs, &codeword, &config)?.with_truth(&codeword);
        println!(
            "{:>10}: {:4} residual errors after {:2} iterations",
            decoder.name(),
            report.bit_errors.unwrap_or(0),
            report.iterations_run
        );
    }
    Ok(())
}
