//! Product-code decoder properties and small Monte Carlo comparisons.

use std::path::PathBuf;

use pc_fec::bch::{BchCode, DecodeOutcome};
use pc_fec::channel::{ChannelModel, LlrMethod, Modulation};
use pc_fec::de::TransitionTable;
use pc_fec::decoder::{ibdd_decode, ideal_ibdd_decode, Decoder, DecoderConfig};
use pc_fec::lut::CombiningLut;
use pc_fec::mixture::MixtureLlrModel;
use pc_fec::product::{BitMatrix, LlrMatrix, ProductCode};
use pc_fec::sim::{default_design_ebn0_db, design_lut, run_plan, StopRule, SweepPlan};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pc255() -> ProductCode {
    ProductCode::new(BchCode::new(8, 3).unwrap())
}

fn lut255(pc: &ProductCode) -> CombiningLut {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let table = TransitionTable::cached(pc.component(), 10_000, 1, &dir).unwrap();
    let design = default_design_ebn0_db(&table, Modulation::BiAwgn, pc.rate()).unwrap();
    design_lut(&table, Modulation::BiAwgn, pc.rate(), design, 10).unwrap()
}

fn noisy_frame(pc: &ProductCode, ebn0_db: f64, seed: u64) -> (BitMatrix, LlrMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = pc.k();
    let msg = BitMatrix::from_vec(k, (0..k * k).map(|_| rng.random_range(0..2)).collect()).unwrap();
    let cw = pc.encode(&msg).unwrap();
    let ch = ChannelModel::from_ebn0(Modulation::BiAwgn, ebn0_db, pc.rate(), LlrMethod::Exact).unwrap();
    let mut llrs = vec![0.0; pc.n() * pc.n()];
    ch.transmit(cw.as_slice(), &mut rng, &mut llrs).unwrap();
    (cw, LlrMatrix::from_vec(pc.n(), llrs).unwrap())
}

#[test]
fn negating_the_channel_complements_the_output() {
    let pc = pc255();
    let lut = lut255(&pc);
    let mean = MixtureLlrModel::for_channel(
        &ChannelModel::from_ebn0(Modulation::BiAwgn, 4.3, pc.rate(), LlrMethod::Exact).unwrap(),
    )
    .mean_llr();
    let config = DecoderConfig {
        sr_weights: vec![mean; 10],
        ..DecoderConfig::default()
    };
    for seed in 0..6 {
        let (cw, llrs) = noisy_frame(&pc, 4.3, seed);
        for decoder in [Decoder::Ibdd, Decoder::IbddSr, Decoder::IbddCr(lut.clone())] {
            let plain = decoder.decode(&pc, &llrs, &cw, &config).unwrap().decoded;
            let flipped = decoder.decode(&pc, &llrs.negated(), &cw.complement(), &config).unwrap().decoded;
            assert_eq!(flipped, plain.complement(), "{} on frame {seed}", decoder.name());
        }
    }
}

#[test]
fn genie_blocks_an_embedded_miscorrection() {
    let code = BchCode::new(4, 2).unwrap();
    let pc = ProductCode::new(code.clone());
    // A weight-3 word at distance 2 from a weight-5 codeword.
    let target = (0u32..1 << 15)
        .map(|w| (0..15).map(|i| (w >> i & 1) as u8).collect::<Vec<u8>>())
        .find(|w| w.iter().filter(|&&b| b == 1).count() == 5 && code.is_codeword(w))
        .unwrap();
    let support: Vec<usize> = (0..15).filter(|&i| target[i] == 1).collect();
    let mut word = vec![0u8; 15];
    for &p in &support[..3] {
        word[p] = 1;
    }
    assert!(matches!(code.bdd_decode(&word).unwrap(), DecodeOutcome::Corrected { flips: 2, .. }));
    // Three rows carrying that word leave three errors in each affected
    // column, beyond the column decoders' reach.
    let mut hard = BitMatrix::zeros(15);
    for r in 0..3 {
        for &p in &support[..3] {
            hard.set(r, p, 1);
        }
    }
    let truth = BitMatrix::zeros(15);
    let config = DecoderConfig::default();
    let ideal = ideal_ibdd_decode(&pc, &hard, &truth, &config).unwrap();
    assert_eq!(ideal.decoded, hard);
    let plain = ibdd_decode(&pc, &hard, &config).unwrap();
    assert!(plain.decoded.hamming_distance(&truth) > hard.hamming_distance(&truth));
}

#[test]
fn genie_is_silent_without_miscorrections() {
    let pc = pc255();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10 {
        let truth = BitMatrix::zeros(pc.n());
        let mut hard = truth.clone();
        // At most t errors per row: every row decoding is exact.
        for r in 0..pc.n() {
            for _ in 0..rng.random_range(0..=3) {
                hard.set(r, rng.random_range(0..pc.n()), 1);
            }
        }
        let config = DecoderConfig::default();
        let a = ibdd_decode(&pc, &hard, &config).unwrap().decoded;
        let b = ideal_ibdd_decode(&pc, &hard, &truth, &config).unwrap().decoded;
        assert_eq!(a, b);
        assert_eq!(a, truth);
    }
}

fn ber(plan: &SweepPlan) -> f64 {
    run_plan(plan).unwrap()[0].ber
}

fn plan(pc: &ProductCode, decoder: Decoder, ebn0_db: f64, frames: u64) -> SweepPlan {
    let mut p = SweepPlan::new(pc.clone(), decoder, Modulation::BiAwgn, vec![ebn0_db]);
    p.stop = StopRule {
        min_frame_errors: u64::MAX,
        max_frames: frames,
    };
    p.master_seed = 21;
    p
}

#[test]
fn combined_reliability_beats_ibdd_at_4_35_db() {
    let pc = pc255();
    let cr = ber(&plan(&pc, Decoder::IbddCr(lut255(&pc)), 4.35, 500));
    let hd = ber(&plan(&pc, Decoder::Ibdd, 4.35, 500));
    assert!(cr < hd, "CR {cr:e} vs iBDD {hd:e}");
}

#[test]
fn scaled_reliability_beats_ibdd_at_4_5_db() {
    let pc = pc255();
    let ch = ChannelModel::from_ebn0(Modulation::BiAwgn, 4.5, pc.rate(), LlrMethod::MaxLog).unwrap();
    let mut sr = plan(&pc, Decoder::IbddSr, 4.5, 200);
    sr.decoder_config.sr_weights = vec![MixtureLlrModel::for_channel(&ch).mean_llr(); 10];
    let sr = ber(&sr);
    let hd = ber(&plan(&pc, Decoder::Ibdd, 4.5, 200));
    assert!(sr < hd, "SR {sr:e} vs iBDD {hd:e}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn genie_never_adds_errors(seed in any::<u64>(), weight in 1usize..60) {
        let pc = ProductCode::new(BchCode::new(5, 2).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = pc.k();
        let msg = BitMatrix::from_vec(k, (0..k * k).map(|_| rng.random_range(0..2)).collect()).unwrap();
        let truth = pc.encode(&msg).unwrap();
        let mut hard = truth.clone();
        for _ in 0..weight {
            hard.flip(rng.random_range(0..pc.n()), rng.random_range(0..pc.n()));
        }
        let out = ideal_ibdd_decode(&pc, &hard, &truth, &DecoderConfig::default()).unwrap();
        prop_assert!(out.decoded.hamming_distance(&truth) <= hard.hamming_distance(&truth));
    }

    #[test]
    fn zero_soft_iterations_is_ibdd(seed in any::<u64>()) {
        let pc = ProductCode::new(BchCode::new(5, 2).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let llrs: Vec<f64> = (0..pc.n() * pc.n()).map(|_| rng.random_range(-1.0..3.0)).collect();
        let llrs = LlrMatrix::from_vec(pc.n(), llrs).unwrap();
        let lut = CombiningLut::shared(0.0, [pc_fec::lut::MuTable([1.0, 2.0, 0.5, -2.0, -1.0, -0.5])]);
        let config = DecoderConfig { cr_iterations: 0, appended_ibdd_iterations: 6, ..DecoderConfig::default() };
        let truth = BitMatrix::zeros(pc.n());
        let a = Decoder::IbddCr(lut).decode(&pc, &llrs, &truth, &config).unwrap().decoded;
        let b = ibdd_decode(&pc, &llrs.hard_decisions(), &config).unwrap().decoded;
        prop_assert_eq!(a, b);
    }
}
