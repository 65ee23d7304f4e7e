//! Binary-input AWGN and BICM with Gray-labelled ASK per real dimension.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::db_to_linear;

/// Signalling scheme, independent of the noise level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Modulation {
    BiAwgn,
    /// `2^m`-ASK per real dimension (`2^{2m}`-QAM over two dimensions).
    Ask { m: u32 },
}

impl Modulation {
    /// Label bits per real dimension.
    pub fn bits_per_dimension(&self) -> u32 {
        match self {
            Modulation::BiAwgn => 1,
            Modulation::Ask { m } => *m,
        }
    }
}

/// Noise standard deviation per real dimension for a given `Eb/N0`.
///
/// bi-AWGN: `sigma^2 = 1 / (2 R Eb/N0)`. ASK: `E_s = 1` per complex symbol
/// carrying `2 m R` information bits, so `sigma^2 = 1 / (4 m R Eb/N0)`.
pub fn ebn0_to_sigma(ebn0_db: f64, rate: f64, modulation: Modulation) -> Result<f64> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::InvalidArgument(format!("code rate {rate} outside (0, 1]")));
    }
    if !ebn0_db.is_finite() {
        return Err(Error::InvalidArgument(format!("Eb/N0 {ebn0_db} dB is not finite")));
    }
    let ebn0 = db_to_linear(ebn0_db);
    let var = match modulation {
        Modulation::BiAwgn => 1.0 / (2.0 * rate * ebn0),
        Modulation::Ask { m } => 1.0 / (4.0 * m as f64 * rate * ebn0),
    };
    Ok(var.sqrt())
}

/// `E_s/N_0 = 1 / (2 sigma^2)`, linear.
pub fn esn0(sigma: f64) -> f64 {
    1.0 / (2.0 * sigma * sigma)
}

/// `E_s/N_0` in dB.
pub fn esn0_db(sigma: f64) -> f64 {
    crate::math::linear_to_db(esn0(sigma))
}

/// Inverse of [`esn0_db`].
pub fn esn0_db_to_sigma(esn0_db: f64) -> f64 {
    (1.0 / (2.0 * db_to_linear(esn0_db))).sqrt()
}

/// Binary reflected Gray code.
#[inline]
pub fn gray(i: u32) -> u32 {
    i ^ (i >> 1)
}

/// `{±Δ, ±3Δ, ..., ±(M-1)Δ}` with BRGC labels.
///
/// Amplitude index `a` (ascending) carries label `gray(M-1-a)`, so the label
/// MSB is 1 exactly on negative amplitudes and the all-zero label sits on the
/// largest one. Bit level 0 is the MSB.
#[derive(Debug, Clone, PartialEq)]
pub struct AskConstellation {
    m: u32,
    size: usize,
    delta: f64,
    amplitudes: Vec<f64>,
    labels: Vec<u32>,
    amplitude_of_label: Vec<f64>,
}

impl AskConstellation {
    pub fn new(m: u32) -> Result<Self> {
        if !(1..=8).contains(&m) {
            return Err(Error::InvalidArgument(format!("ASK label size m={m} outside 1..=8")));
        }
        let size = 1usize << m;
        let mm = size as f64;
        let delta = (3.0 / (2.0 * (mm * mm - 1.0))).sqrt();
        let amplitudes: Vec<f64> = (0..size).map(|a| (2.0 * a as f64 - (mm - 1.0)) * delta).collect();
        let labels: Vec<u32> = (0..size).map(|a| gray((size - 1 - a) as u32)).collect();
        let mut amplitude_of_label = vec![0.0; size];
        for (a, &l) in labels.iter().enumerate() {
            amplitude_of_label[l as usize] = amplitudes[a];
        }
        Ok(Self {
            m,
            size,
            delta,
            amplitudes,
            labels,
            amplitude_of_label,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Amplitudes in ascending order.
    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    /// Label of each amplitude in [`amplitudes`](Self::amplitudes) order.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn amplitude(&self, label: u32) -> f64 {
        self.amplitude_of_label[label as usize]
    }

    /// Bit of `label` at bit level `k`.
    #[inline]
    pub fn label_bit(&self, label: u32, k: u32) -> u8 {
        (label >> (self.m - 1 - k) & 1) as u8
    }

    /// Mean energy per real dimension; `1/2`.
    pub fn energy(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>() / self.size as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LlrMethod {
    #[default]
    Exact,
    MaxLog,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChannelModel {
    BiAwgn {
        sigma: f64,
    },
    BicmAsk {
        sigma: f64,
        constellation: AskConstellation,
        llr: LlrMethod,
    },
}

impl ChannelModel {
    pub fn new(modulation: Modulation, sigma: f64, llr: LlrMethod) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidArgument(format!("noise deviation {sigma} must be positive")));
        }
        Ok(match modulation {
            Modulation::BiAwgn => ChannelModel::BiAwgn { sigma },
            Modulation::Ask { m } => ChannelModel::BicmAsk {
                sigma,
                constellation: AskConstellation::new(m)?,
                llr,
            },
        })
    }

    pub fn from_ebn0(modulation: Modulation, ebn0_db: f64, rate: f64, llr: LlrMethod) -> Result<Self> {
        Self::new(modulation, ebn0_to_sigma(ebn0_db, rate, modulation)?, llr)
    }

    pub fn sigma(&self) -> f64 {
        match self {
            ChannelModel::BiAwgn { sigma } | ChannelModel::BicmAsk { sigma, .. } => *sigma,
        }
    }

    pub fn modulation(&self) -> Modulation {
        match self {
            ChannelModel::BiAwgn { .. } => Modulation::BiAwgn,
            ChannelModel::BicmAsk { constellation, .. } => Modulation::Ask { m: constellation.m },
        }
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.modulation().bits_per_dimension() as usize
    }

    /// Sends `bits` and returns channel LLRs `ln p(y|0)/p(y|1)` in `out`.
    ///
    /// ASK groups `m` consecutive bits per symbol, first bit on level 0.
    pub fn transmit<R: Rng + ?Sized>(&self, bits: &[u8], rng: &mut R, out: &mut [f64]) -> Result<()> {
        if out.len() != bits.len() {
            return Err(Error::LengthMismatch {
                expected: bits.len(),
                actual: out.len(),
            });
        }
        let m = self.bits_per_symbol();
        if bits.len() % m != 0 {
            return Err(Error::InvalidArgument(format!(
                "{} bits do not split into {m}-bit symbols",
                bits.len()
            )));
        }
        match self {
            ChannelModel::BiAwgn { sigma } => {
                let scale = 2.0 / (sigma * sigma);
                for (b, l) in bits.iter().zip(out.iter_mut()) {
                    let x = if *b == 0 { 1.0 } else { -1.0 };
                    let n: f64 = rng.sample(StandardNormal);
                    *l = scale * (x + sigma * n);
                }
            }
            ChannelModel::BicmAsk { sigma, constellation, .. } => {
                for (group, llrs) in bits.chunks_exact(m).zip(out.chunks_exact_mut(m)) {
                    let label = group.iter().fold(0u32, |acc, &b| acc << 1 | (b & 1) as u32);
                    let n: f64 = rng.sample(StandardNormal);
                    let y = constellation.amplitude(label) + sigma * n;
                    self.symbol_llrs(y, llrs);
                }
            }
        }
        Ok(())
    }

    /// As [`transmit`](Self::transmit), zero-padding the last symbol when
    /// `bits.len()` is not a multiple of `m`. Pad LLRs are dropped.
    pub fn transmit_padded<R: Rng + ?Sized>(&self, bits: &[u8], rng: &mut R, out: &mut [f64]) -> Result<()> {
        let m = self.bits_per_symbol();
        let whole = bits.len() - bits.len() % m;
        if out.len() != bits.len() {
            return Err(Error::LengthMismatch {
                expected: bits.len(),
                actual: out.len(),
            });
        }
        self.transmit(&bits[..whole], rng, &mut out[..whole])?;
        if whole < bits.len() {
            let mut tail_bits = vec![0u8; m];
            tail_bits[..bits.len() - whole].copy_from_slice(&bits[whole..]);
            let mut tail = vec![0.0; m];
            self.transmit(&tail_bits, rng, &mut tail)?;
            out[whole..].copy_from_slice(&tail[..bits.len() - whole]);
        }
        Ok(())
    }

    /// Per-bit LLRs of one real observation, using the configured method.
    pub fn symbol_llrs(&self, y: f64, out: &mut [f64]) {
        match self {
            ChannelModel::BiAwgn { sigma } => out[0] = 2.0 * y / (sigma * sigma),
            ChannelModel::BicmAsk { llr, .. } => match llr {
                LlrMethod::Exact => self.exact_llr_into(y, out),
                LlrMethod::MaxLog => self.maxlog_llr_into(y, out),
            },
        }
    }

    /// Log-sum-exp over the half constellations of each bit level.
    pub fn exact_llr(&self, y: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.bits_per_symbol()];
        self.exact_llr_into(y, &mut out);
        out
    }

    /// Nearest-point approximation: `(min_{S1} d^2 - min_{S0} d^2) / (2 sigma^2)`.
    pub fn maxlog_llr(&self, y: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.bits_per_symbol()];
        self.maxlog_llr_into(y, &mut out);
        out
    }

    fn exact_llr_into(&self, y: f64, out: &mut [f64]) {
        let (sigma, c) = match self {
            ChannelModel::BiAwgn { sigma } => {
                out[0] = 2.0 * y / (sigma * sigma);
                return;
            }
            ChannelModel::BicmAsk { sigma, constellation, .. } => (*sigma, constellation),
        };
        let inv = 1.0 / (2.0 * sigma * sigma);
        let mut weight = [0.0f64; 256];
        let mut best = f64::NEG_INFINITY;
        for (a, &x) in c.amplitudes.iter().enumerate() {
            let d = y - x;
            weight[a] = -d * d * inv;
            best = best.max(weight[a]);
        }
        for w in &mut weight[..c.size] {
            *w = (*w - best).exp();
        }
        for (k, o) in out.iter_mut().enumerate() {
            let (mut s0, mut s1) = (0.0, 0.0);
            for (a, &label) in c.labels.iter().enumerate() {
                if c.label_bit(label, k as u32) == 0 {
                    s0 += weight[a];
                } else {
                    s1 += weight[a];
                }
            }
            *o = s0.ln() - s1.ln();
        }
    }

    fn maxlog_llr_into(&self, y: f64, out: &mut [f64]) {
        let (sigma, c) = match self {
            ChannelModel::BiAwgn { sigma } => {
                out[0] = 2.0 * y / (sigma * sigma);
                return;
            }
            ChannelModel::BicmAsk { sigma, constellation, .. } => (*sigma, constellation),
        };
        let inv = 1.0 / (2.0 * sigma * sigma);
        for (k, o) in out.iter_mut().enumerate() {
            let (mut d0, mut d1) = (f64::INFINITY, f64::INFINITY);
            for (a, &label) in c.labels.iter().enumerate() {
                let d = (y - c.amplitudes[a]).powi(2);
                if c.label_bit(label, k as u32) == 0 {
                    d0 = d0.min(d);
                } else {
                    d1 = d1.min(d);
                }
            }
            *o = (d1 - d0) * inv;
        }
    }
}
