//! Channel, LLR, mixture-law and quantizer checks against direct
//! evaluation and sampling.

use pc_fec::channel::{esn0_db_to_sigma, gray, AskConstellation, ChannelModel, LlrMethod, Modulation};
use pc_fec::mixture::MixtureLlrModel;
use pc_fec::quantizer::{best_uniform_quantizer, lloyd_max_design, LlrQuantizer};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ask(m: u32, sigma: f64, llr: LlrMethod) -> ChannelModel {
    ChannelModel::new(Modulation::Ask { m }, sigma, llr).unwrap()
}

#[test]
fn sigma_at_the_hard_decision_operating_point() {
    let rate = 0.820;
    let ch = ChannelModel::from_ebn0(Modulation::BiAwgn, 4.62, rate, LlrMethod::Exact).unwrap();
    let expected = 1.0 / (2.0 * rate * 10f64.powf(0.462));
    assert!((ch.sigma().powi(2) - expected).abs() < 1e-15);
    let half = ChannelModel::from_ebn0(Modulation::BiAwgn, 0.0, 0.5, LlrMethod::Exact).unwrap();
    assert!((half.sigma() - 1.0).abs() < 1e-15);
}

#[test]
fn bi_awgn_llr_moments() {
    let sigma = 1.0;
    let ch = ChannelModel::new(Modulation::BiAwgn, sigma, LlrMethod::Exact).unwrap();
    let n = 1_000_000;
    let mut llrs = vec![0.0; n];
    ch.transmit(&vec![0u8; n], &mut ChaCha8Rng::seed_from_u64(9), &mut llrs).unwrap();
    let mean = llrs.iter().sum::<f64>() / n as f64;
    let var = llrs.iter().map(|l| (l - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let (mu, v) = (2.0 / (sigma * sigma), 4.0 / (sigma * sigma));
    assert!((mean - mu).abs() < 3.0 * (v / n as f64).sqrt(), "mean {mean}");
    assert!((var - v).abs() < 3.0 * v * (2.0 / n as f64).sqrt(), "variance {var}");
}

#[test]
fn llr_signs_follow_bits_without_noise() {
    for m in [1, 2, 3] {
        let ch = ask(m, 1e-3, LlrMethod::Exact);
        let bits: Vec<u8> = (0..(m as usize) * 64).map(|i| (i * 7 % 5 % 2) as u8).collect();
        let mut llrs = vec![0.0; bits.len()];
        ch.transmit(&bits, &mut ChaCha8Rng::seed_from_u64(1), &mut llrs).unwrap();
        assert!(bits.iter().zip(&llrs).all(|(b, l)| (*l > 0.0) == (*b == 0)));
    }
}

/// Hand-tabulated Gray labelling of 4-ASK, left to right.
const ASK4_LABELS: [u32; 4] = [0b10, 0b11, 0b01, 0b00];

#[test]
fn four_ask_labels_match_the_hand_table() {
    assert_eq!(AskConstellation::new(2).unwrap().labels(), &ASK4_LABELS);
}

#[test]
fn exact_llr_matches_direct_summation() {
    let sigma = 0.5;
    let c = AskConstellation::new(2).unwrap();
    let delta = c.delta();
    let ch = ask(2, sigma, LlrMethod::Exact);
    for y in [delta, -0.3, 0.0, 2.5 * delta] {
        let got = ch.exact_llr(y);
        for (k, &g) in got.iter().enumerate() {
            let (mut num, mut den) = (0.0, 0.0);
            for (a, &label) in ASK4_LABELS.iter().enumerate() {
                let x = (2.0 * a as f64 - 3.0) * delta;
                let w = (-(y - x) * (y - x) / (2.0 * sigma * sigma)).exp();
                if label >> (1 - k) & 1 == 0 {
                    num += w;
                } else {
                    den += w;
                }
            }
            assert!((g - (num / den).ln()).abs() < 1e-12, "y={y}, level {k}");
        }
    }
}

#[test]
fn first_level_llr_is_odd() {
    for m in [1, 2, 3, 4] {
        let ch = ask(m, 0.3, LlrMethod::Exact);
        for y in [0.1, 0.37, 0.9, 1.4] {
            assert!((ch.exact_llr(y)[0] + ch.exact_llr(-y)[0]).abs() < 1e-10);
        }
    }
}

#[test]
fn two_point_llrs_coincide() {
    let ch = ask(1, 0.7, LlrMethod::Exact);
    let delta = AskConstellation::new(1).unwrap().delta();
    for y in [-1.0, -0.2, 0.0, 0.4, 2.0] {
        let e = ch.exact_llr(y)[0];
        assert!((e - 2.0 * delta * y / 0.49).abs() < 1e-12);
        assert!((e - ch.maxlog_llr(y)[0]).abs() < 1e-12);
    }
}

#[test]
fn maxlog_approaches_exact_at_high_snr() {
    let delta = AskConstellation::new(2).unwrap().delta();
    let y = 0.6 * delta;
    let gap = |sigma: f64| {
        let ch = ask(2, sigma, LlrMethod::Exact);
        ch.exact_llr(y)
            .iter()
            .zip(ch.maxlog_llr(y))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    };
    assert!(gap(0.05) < 1e-6 && gap(0.05) < gap(0.2) && gap(0.2) < gap(0.5));
}

#[test]
fn maxlog_is_piecewise_linear_between_midpoints() {
    let c = AskConstellation::new(2).unwrap();
    let delta = c.delta();
    let ch = ask(2, 0.4, LlrMethod::MaxLog);
    let breaks = [-2.0 * delta, 0.0, 2.0 * delta];
    let ys: Vec<f64> = (0..100).map(|i| -4.0 * delta + 8.0 * delta * i as f64 / 99.0).collect();
    let region = |y: f64| breaks.iter().filter(|&&b| y > b).count();
    for w in ys.windows(3) {
        if region(w[0]) != region(w[2]) {
            continue;
        }
        let l: Vec<Vec<f64>> = w.iter().map(|&y| ch.maxlog_llr(y)).collect();
        for k in 0..2 {
            let second = (l[2][k] - l[1][k]) / (w[2] - w[1]) - (l[1][k] - l[0][k]) / (w[1] - w[0]);
            assert!(second.abs() < 1e-8, "curvature {second} near y={}", w[1]);
        }
    }
    // Every breakpoint changes the slope of some level.
    for &b in &breaks {
        let h = 0.1 * delta;
        let slope = |y0: f64, y1: f64| -> Vec<f64> {
            let (a, z) = (ch.maxlog_llr(y0), ch.maxlog_llr(y1));
            a.iter().zip(z).map(|(p, q)| (q - p) / (y1 - y0)).collect()
        };
        let (left, right) = (slope(b - 2.0 * h, b - h), slope(b + h, b + 2.0 * h));
        assert!(left.iter().zip(&right).any(|(p, q)| (p - q).abs() > 1e-6));
    }
}

#[test]
fn gray_neighbours_differ_in_one_bit() {
    for m in 1..=8 {
        let c = AskConstellation::new(m).unwrap();
        for w in c.labels().windows(2) {
            assert_eq!((w[0] ^ w[1]).count_ones(), 1);
        }
        assert_eq!(gray(5), 0b111);
    }
}

#[test]
fn mixture_weights() {
    let w = MixtureLlrModel::ask_weights(2);
    assert!((w[0] - 0.75).abs() < 1e-15 && (w[1] - 0.25).abs() < 1e-15);
    for m in 1..=4 {
        assert!((MixtureLlrModel::ask_weights(m).iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn symmetrized_density_integrates_to_one() {
    for (m, sigma) in [(1, 0.6), (2, 0.2), (3, 0.08), (4, 0.05)] {
        let law = MixtureLlrModel::for_channel(&ask(m, sigma, LlrMethod::MaxLog)).symmetric();
        let span = law.effective_support() + 10.0;
        let steps = 200_000;
        let h = 2.0 * span / steps as f64;
        // Composite Simpson rule.
        let mut s = law.pdf(-span) + law.pdf(span);
        for i in 1..steps {
            let x = -span + i as f64 * h;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * law.pdf(x);
        }
        let integral = s * h / 3.0;
        assert!((integral - 1.0).abs() < 1e-6, "M={}: {integral}", 1 << m);
    }
}

#[test]
fn p_ch_tracks_simulated_hard_decisions() {
    // A lighter version of the acceptance check.
    let ch = ChannelModel::from_ebn0(Modulation::Ask { m: 2 }, 7.5, 0.82, LlrMethod::MaxLog).unwrap();
    let p = MixtureLlrModel::for_channel(&ch).p_ch;
    let n = 200_000;
    let mut llrs = vec![0.0; n];
    let bits: Vec<u8> = (0..n).map(|i| ((i * 2654435761usize) >> 7 & 1) as u8).collect();
    ch.transmit(&bits, &mut ChaCha8Rng::seed_from_u64(2), &mut llrs).unwrap();
    let errors = bits.iter().zip(&llrs).filter(|(b, l)| (**l < 0.0) != (**b == 1)).count();
    let rate = errors as f64 / n as f64;
    assert!((rate - p).abs() < 3.0 * (p * (1.0 - p) / n as f64).sqrt(), "{rate} vs {p}");
}

#[test]
fn lloyd_max_at_the_sixteen_qam_point_beats_uniform() {
    let ch = ChannelModel::new(Modulation::Ask { m: 2 }, esn0_db_to_sigma(12.92), LlrMethod::MaxLog).unwrap();
    let law = MixtureLlrModel::for_channel(&ch).symmetric();
    let lm = lloyd_max_design(&law, 3).unwrap();
    let uni = best_uniform_quantizer(&law, 3).unwrap();
    assert!(lm.mse(&law) < uni.mse(&law));
    let widths: Vec<f64> = lm.boundaries.windows(2).map(|w| w[1] - w[0]).collect();
    let (lo, hi) = widths.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &w| (a.min(w), b.max(w)));
    assert!(hi > 1.1 * lo, "cells are uniform: {widths:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn quantizer_is_monotone(pairs in prop::collection::vec((-60.0f64..60.0, -60.0f64..60.0), 10_000)) {
        let ch = ChannelModel::new(Modulation::Ask { m: 2 }, 0.15, LlrMethod::MaxLog).unwrap();
        let q = lloyd_max_design(&MixtureLlrModel::for_channel(&ch).symmetric(), 4).unwrap();
        for (x, y) in pairs {
            let (a, b) = if x <= y { (x, y) } else { (y, x) };
            prop_assert!(q.quantize(a) <= q.quantize(b));
        }
    }

    #[test]
    fn quantizer_json_roundtrip(step in 0.01f64..10.0, bits in 1u32..=8) {
        let q = LlrQuantizer::uniform(bits, step).unwrap();
        prop_assert_eq!(LlrQuantizer::from_json(&q.to_json()).unwrap(), q);
    }
}
