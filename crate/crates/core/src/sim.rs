//! Monte Carlo BER sweeps.
//!
//! Frame `f` at SNR index `s` draws all its randomness from the ChaCha
//! stream keyed by `(master_seed, s, f)`. Frames run in batches of fixed
//! size and the stop rule is checked only between batches, so the result of
//! a sweep does not depend on how many worker threads ran it.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bch::BchCode;
use crate::channel::{ChannelModel, LlrMethod, Modulation};
use crate::de::{de_run, export_lut, threshold_search, CodeId, ThresholdSearch, TransitionTable};
use crate::decoder::{Decoder, DecoderConfig, TieBreak};
use crate::error::{Error, Result};
use crate::lut::CombiningLut;
use crate::mixture::MixtureLlrModel;
use crate::product::{BitMatrix, LlrMatrix, ProductCode};
use crate::quantizer::{lloyd_max_design, LlrQuantizer};

/// Header of the sweep CSV.
pub const CSV_HEADER: &str = "ebn0_db,frames,bit_errors,frame_errors,ber,fer,seconds,seed,truncated";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecoderKind {
    Ibdd,
    IdealIbdd,
    IbddSr,
    IbddCr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Schedule {
    pub cr_iterations: usize,
    pub appended_ibdd_iterations: usize,
}

impl Default for Schedule {
    fn default() -> Self {
        Self {
            cr_iterations: 10,
            appended_ibdd_iterations: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantizerConfig {
    pub bits: u32,
    /// Use a stored quantizer instead of designing one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    Biawgn,
    Bicm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelConfig {
    pub kind: ChannelKind,
    /// ASK points per real dimension (BICM only).
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default)]
    pub llr: LlrMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantizer: Option<QuantizerConfig>,
}

impl ChannelConfig {
    pub fn bi_awgn() -> Self {
        Self {
            kind: ChannelKind::Biawgn,
            points: None,
            llr: LlrMethod::Exact,
            quantizer: None,
        }
    }

    pub fn bicm(points: usize, llr: LlrMethod) -> Self {
        Self {
            kind: ChannelKind::Bicm,
            points: Some(points),
            llr,
            quantizer: None,
        }
    }

    pub fn modulation(&self) -> Result<Modulation> {
        match self.kind {
            ChannelKind::Biawgn => Ok(Modulation::BiAwgn),
            ChannelKind::Bicm => {
                let m = self
                    .points
                    .ok_or_else(|| Error::config("channel.M", "required for bicm"))?;
                if m < 2 || !m.is_power_of_two() || m > 256 {
                    return Err(Error::config("channel.M", format!("{m} is not a power of two in 2..=256")));
                }
                Ok(Modulation::Ask {
                    m: m.trailing_zeros(),
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SnrGrid {
    List(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

impl SnrGrid {
    pub fn points(&self) -> Result<Vec<f64>> {
        let pts = match self {
            SnrGrid::List(v) => v.clone(),
            SnrGrid::Range { start, stop, step } => {
                if !(*step > 0.0) || stop < start {
                    return Err(Error::config("snr", "range needs step > 0 and stop >= start"));
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
                (0..count).map(|i| start + i as f64 * step).collect()
            }
        };
        if pts.is_empty() || pts.iter().any(|p| !p.is_finite()) {
            return Err(Error::config("snr", "grid must hold finite values"));
        }
        Ok(pts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StopRule {
    pub min_frame_errors: u64,
    pub max_frames: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        Self {
            min_frame_errors: 100,
            max_frames: 1_000_000,
        }
    }
}

fn default_batch() -> u64 {
    32
}
fn default_true() -> bool {
    true
}
fn default_table_samples() -> u64 {
    10_000
}
fn default_table_seed() -> u64 {
    1
}

/// JSON sweep description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub code: CodeId,
    pub decoder: DecoderKind,
    #[serde(default)]
    pub schedule: Schedule,
    /// iBDD-SR weights, one per soft iteration (or a single value for all).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sr_weights: Option<Vec<f64>>,
    #[serde(default)]
    pub tie_break: TieBreak,
    #[serde(default = "default_true")]
    pub early_stop: bool,
    pub channel: ChannelConfig,
    pub snr: SnrGrid,
    #[serde(default)]
    pub stop: StopRule,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_batch")]
    pub batch_frames: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lut_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_path: Option<PathBuf>,
    /// Design point for a LUT or quantizer built on the fly.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub design_ebn0_db: Option<f64>,
    #[serde(default = "default_table_samples")]
    pub table_samples: u64,
    #[serde(default = "default_table_seed")]
    pub table_seed: u64,
    /// Writes 0 in the `seconds` column when false, for byte-stable output.
    #[serde(default = "default_true")]
    pub timing: bool,
}

impl SimConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SimConfig = serde_json::from_str(text).map_err(|e| Error::config(json_error_key(&e), e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let CodeId { v, t } = self.code;
        BchCode::new(v, t).map_err(|e| Error::config("code", e.to_string()))?;
        self.channel.modulation()?;
        self.snr.points()?;
        if let Some(q) = &self.channel.quantizer {
            if !(1..=8).contains(&q.bits) {
                return Err(Error::config("channel.quantizer.bits", format!("{} outside 1..=8", q.bits)));
            }
        }
        if self.stop.min_frame_errors < 50 {
            return Err(Error::config("stop.min_frame_errors", "must be at least 50"));
        }
        if self.stop.max_frames == 0 {
            return Err(Error::config("stop.max_frames", "must be positive"));
        }
        if self.batch_frames == 0 {
            return Err(Error::config("batch_frames", "must be positive"));
        }
        if self.decoder == DecoderKind::IbddSr {
            match &self.sr_weights {
                None => return Err(Error::config("sr_weights", "required for ibdd_sr")),
                Some(w) if w.iter().any(|x| !(*x >= 0.0)) => {
                    return Err(Error::config("sr_weights", "weights must be nonnegative"))
                }
                Some(w) if w.len() != 1 && w.len() < self.schedule.cr_iterations => {
                    return Err(Error::config("sr_weights", "need one weight per soft iteration"))
                }
                _ => {}
            }
        }
        if self.channel.quantizer.as_ref().is_some_and(|q| q.path.is_none())
            && self.design_ebn0_db.is_none()
            && self.decoder != DecoderKind::IbddCr
        {
            return Err(Error::config("design_ebn0_db", "needed to design the quantizer"));
        }
        if let Some(d) = self.design_ebn0_db {
            if !d.is_finite() {
                return Err(Error::config("design_ebn0_db", "must be finite"));
            }
        }
        Ok(())
    }
}

/// Best-effort name of the field a serde error is about.
fn json_error_key(e: &serde_json::Error) -> String {
    let msg = e.to_string();
    for marker in ["unknown field `", "missing field `", "unknown variant `"] {
        if let Some(rest) = msg.split(marker).nth(1) {
            if let Some(name) = rest.split('`').next() {
                return name.to_string();
            }
        }
    }
    "<document>".to_string()
}

/// Everything a sweep needs, resolved from a [`SimConfig`] or built in code.
#[derive(Debug, Clone)]
pub struct SweepPlan {
    pub code: ProductCode,
    pub decoder: Decoder,
    pub decoder_config: DecoderConfig,
    pub modulation: Modulation,
    pub llr: LlrMethod,
    pub quantizer: Option<LlrQuantizer>,
    pub snr_db: Vec<f64>,
    pub stop: StopRule,
    pub master_seed: u64,
    pub batch_frames: u64,
    pub timing: bool,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl SweepPlan {
    pub fn new(code: ProductCode, decoder: Decoder, modulation: Modulation, snr_db: Vec<f64>) -> Self {
        Self {
            code,
            decoder,
            decoder_config: DecoderConfig::default(),
            modulation,
            llr: LlrMethod::Exact,
            quantizer: None,
            snr_db,
            stop: StopRule::default(),
            master_seed: 0,
            batch_frames: default_batch(),
            timing: true,
            threads: None,
        }
    }

    /// Resolves files and on-the-fly designs referenced by `config`.
    /// `cache_dir` holds transition tables estimated along the way.
    pub fn from_config(config: &SimConfig, cache_dir: &Path) -> Result<Self> {
        config.validate()?;
        let component = BchCode::new(config.code.v, config.code.t)?;
        let code = ProductCode::new(component.clone());
        let modulation = config.channel.modulation()?;
        let lut = match (config.decoder, &config.lut_path) {
            (DecoderKind::IbddCr, Some(p)) => Some(CombiningLut::load(p)?),
            (DecoderKind::IbddCr, None) => {
                let table = match &config.table_path {
                    Some(p) => TransitionTable::load(p)?,
                    None => TransitionTable::cached(&component, config.table_samples, config.table_seed, cache_dir)?,
                };
                let design = match config.design_ebn0_db {
                    Some(d) => d,
                    None => default_design_ebn0_db(&table, modulation, code.rate())?,
                };
                Some(design_lut(&table, modulation, code.rate(), design, config.schedule.cr_iterations)?)
            }
            _ => None,
        };
        let decoder = match config.decoder {
            DecoderKind::Ibdd => Decoder::Ibdd,
            DecoderKind::IdealIbdd => Decoder::IdealIbdd,
            DecoderKind::IbddSr => Decoder::IbddSr,
            DecoderKind::IbddCr => Decoder::IbddCr(lut.clone().expect("resolved above")),
        };
        let sr_weights = match &config.sr_weights {
            Some(w) if w.len() == 1 => vec![w[0]; config.schedule.cr_iterations],
            Some(w) => w.clone(),
            None => Vec::new(),
        };
        let quantizer = match &config.channel.quantizer {
            None => None,
            Some(QuantizerConfig { path: Some(p), bits }) => {
                let q = LlrQuantizer::load(p)?;
                if q.bits != *bits {
                    return Err(Error::config("channel.quantizer.bits", format!("{p:?} holds a {}-bit quantizer", q.bits)));
                }
                Some(q)
            }
            Some(QuantizerConfig { bits, path: None }) => {
                let design = config
                    .design_ebn0_db
                    .or(lut.as_ref().map(|l| l.design_snr_db))
                    .expect("validated");
                Some(design_quantizer(modulation, code.rate(), design, *bits)?)
            }
        };
        Ok(Self {
            code,
            decoder,
            decoder_config: DecoderConfig {
                cr_iterations: config.schedule.cr_iterations,
                appended_ibdd_iterations: config.schedule.appended_ibdd_iterations,
                sr_weights,
                tie_break: config.tie_break,
                early_stop: config.early_stop,
            },
            modulation,
            llr: config.channel.llr,
            quantizer,
            snr_db: config.snr.points()?,
            stop: config.stop,
            master_seed: config.master_seed,
            batch_frames: config.batch_frames,
            timing: config.timing,
            threads: None,
        })
    }
}

/// Offset of the default LUT design point above the DE threshold.
pub const DESIGN_MARGIN_DB: f64 = 0.03;

/// Default LUT design point: just above the DE threshold, where the DE
/// error probability falls slowly enough to track a finite-length decoder.
/// Designs further above the threshold trust component decisions early and
/// can lock a failing frame onto a wrong codeword.
pub fn default_design_ebn0_db(table: &TransitionTable, modulation: Modulation, rate: f64) -> Result<f64> {
    let family =
        |db: f64| ChannelModel::from_ebn0(modulation, db, rate, LlrMethod::MaxLog).map(|c| MixtureLlrModel::for_channel(&c));
    let th = threshold_search(table, family, (-2.0, 30.0), &ThresholdSearch::default())?;
    Ok(th.threshold_db + DESIGN_MARGIN_DB)
}

/// DE-designed LUT for a product code of rate `rate` at `design_ebn0_db`.
pub fn design_lut(
    table: &TransitionTable,
    modulation: Modulation,
    rate: f64,
    design_ebn0_db: f64,
    iterations: usize,
) -> Result<CombiningLut> {
    let ch = ChannelModel::from_ebn0(modulation, design_ebn0_db, rate, LlrMethod::MaxLog)?;
    let trajectory = de_run(table, &MixtureLlrModel::for_channel(&ch), iterations.max(1));
    export_lut(&trajectory, iterations, true, design_ebn0_db)
}

/// Lloyd-Max quantizer for the LLR law at `design_ebn0_db`.
pub fn design_quantizer(modulation: Modulation, rate: f64, design_ebn0_db: f64, bits: u32) -> Result<LlrQuantizer> {
    let ch = ChannelModel::from_ebn0(modulation, design_ebn0_db, rate, LlrMethod::MaxLog)?;
    lloyd_max_design(&MixtureLlrModel::for_channel(&ch).symmetric(), bits)
}

/// One row of the sweep CSV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimPoint {
    pub ebn0_db: f64,
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub fer: f64,
    pub seconds: f64,
    pub seed: u64,
    /// Stopped at `max_frames` short of `min_frame_errors`.
    pub truncated: bool,
}

/// The ChaCha stream of one frame.
pub fn frame_rng(master_seed: u64, snr_index: usize, frame_index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&master_seed.to_le_bytes());
    key[8..16].copy_from_slice(&(snr_index as u64).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(frame_index);
    rng
}

/// Per-thread scratch space.
struct FrameBuffers {
    message: Vec<u8>,
    codeword: BitMatrix,
    llrs: Vec<f64>,
}

impl FrameBuffers {
    fn new(code: &ProductCode) -> Self {
        let n = code.n();
        Self {
            message: vec![0; code.k() * code.k()],
            codeword: BitMatrix::zeros(n),
            llrs: vec![0.0; n * n],
        }
    }
}

/// `(bit errors, frame error)` of one simulated frame.
fn simulate_frame(
    plan: &SweepPlan,
    channel: &ChannelModel,
    snr_index: usize,
    frame_index: u64,
    buf: &mut FrameBuffers,
) -> Result<(u64, bool)> {
    let mut rng = frame_rng(plan.master_seed, snr_index, frame_index);
    for b in &mut buf.message {
        *b = rng.random::<bool>() as u8;
    }
    plan.code.encode_into(&buf.message, &mut buf.codeword);
    channel.transmit_padded(buf.codeword.as_slice(), &mut rng, &mut buf.llrs)?;
    if let Some(q) = &plan.quantizer {
        q.quantize_in_place(&mut buf.llrs);
    }
    let llrs = LlrMatrix::from_vec(plan.code.n(), buf.llrs.clone())?;
    let report = plan.decoder.decode(&plan.code, &llrs, &buf.codeword, &plan.decoder_config)?;
    let errors = report.decoded.hamming_distance(&buf.codeword) as u64;
    Ok((errors, errors > 0))
}

fn run_point(plan: &SweepPlan, snr_index: usize) -> Result<SimPoint> {
    let ebn0_db = plan.snr_db[snr_index];
    let channel = ChannelModel::from_ebn0(plan.modulation, ebn0_db, plan.code.rate(), plan.llr)?;
    let start = Instant::now();
    let (mut frames, mut bit_errors, mut frame_errors) = (0u64, 0u64, 0u64);
    while frame_errors < plan.stop.min_frame_errors && frames < plan.stop.max_frames {
        let batch = plan.batch_frames.min(plan.stop.max_frames - frames);
        let (b, f) = (frames..frames + batch)
            .into_par_iter()
            .map_init(
                || FrameBuffers::new(&plan.code),
                |buf, idx| simulate_frame(plan, &channel, snr_index, idx, buf),
            )
            .try_fold(|| (0u64, 0u64), |acc, r| r.map(|(e, fe)| (acc.0 + e, acc.1 + fe as u64)))
            .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
        frames += batch;
        bit_errors += b;
        frame_errors += f;
    }
    let n2 = (plan.code.n() * plan.code.n()) as f64;
    Ok(SimPoint {
        ebn0_db,
        frames,
        bit_errors,
        frame_errors,
        ber: bit_errors as f64 / (frames as f64 * n2),
        fer: frame_errors as f64 / frames as f64,
        seconds: if plan.timing { start.elapsed().as_secs_f64() } else { 0.0 },
        seed: plan.master_seed,
        truncated: frame_errors < plan.stop.min_frame_errors,
    })
}

/// Runs every SNR point of `plan`.
pub fn run_plan(plan: &SweepPlan) -> Result<Vec<SimPoint>> {
    let run = || (0..plan.snr_db.len()).map(|s| run_point(plan, s)).collect::<Result<Vec<_>>>();
    match plan.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

/// Runs the points of `plan` in grid order and stops after the first one
/// with BER below `target`. Seeds are those of the full sweep.
pub fn run_until_below(plan: &SweepPlan, target: f64) -> Result<Vec<SimPoint>> {
    run_until_below_with(plan, target, |_| {})
}

/// [`run_until_below`], calling `on_point` as each point finishes.
pub fn run_until_below_with(
    plan: &SweepPlan,
    target: f64,
    mut on_point: impl FnMut(&SimPoint) + Send,
) -> Result<Vec<SimPoint>> {
    let mut run = || {
        let mut points = Vec::new();
        for s in 0..plan.snr_db.len() {
            let p = run_point(plan, s)?;
            on_point(&p);
            points.push(p);
            if p.ber < target {
                break;
            }
        }
        Ok(points)
    };
    match plan.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

/// Resolves `config` and runs the sweep.
pub fn run_ber_sweep(config: &SimConfig, cache_dir: &Path) -> Result<Vec<SimPoint>> {
    run_plan(&SweepPlan::from_config(config, cache_dir)?)
}

pub fn to_csv(points: &[SimPoint]) -> String {
    let mut out = String::with_capacity(64 * (points.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{:e},{:e},{:.3},{},{}",
            p.ebn0_db, p.frames, p.bit_errors, p.frame_errors, p.ber, p.fer, p.seconds, p.seed, p.truncated as u8
        );
    }
    out
}

pub fn write_csv(points: &[SimPoint], path: &Path) -> Result<()> {
    fs::write(path, to_csv(points)).map_err(|e| Error::io(path, e))
}

/// `Eb/N0` where the BER curve first drops through `target`, by linear
/// interpolation of `log10(BER)` between the bracketing points. Points
/// with zero errors count as lying below any positive target.
pub fn ber_crossing(points: &[SimPoint], target: f64) -> Option<f64> {
    let mut sorted: Vec<&SimPoint> = points.iter().collect();
    sorted.sort_by(|a, b| a.ebn0_db.total_cmp(&b.ebn0_db));
    for w in sorted.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a.ber >= target && b.ber < target {
            if b.ber == 0.0 {
                return Some(b.ebn0_db);
            }
            let (la, lb, lt) = (a.ber.log10(), b.ber.log10(), target.log10());
            return Some(a.ebn0_db + (la - lt) / (la - lb) * (b.ebn0_db - a.ebn0_db));
        }
    }
    None
}

/// Candidate iBDD-SR weights, as multiples of the mean channel LLR.
pub const SR_WEIGHT_GRID: [f64; 5] = [0.5, 1.0, 1.5, 2.0, 3.0];

/// Picks the constant iBDD-SR weight from `SR_WEIGHT_GRID` (scaled by the
/// mean LLR at `ebn0_db`) with the fewest bit errors at that SNR. Returns
/// the weight and the per-candidate results.
pub fn tune_sr_weight(plan: &SweepPlan, ebn0_db: f64) -> Result<(f64, Vec<(f64, SimPoint)>)> {
    let ch = ChannelModel::from_ebn0(plan.modulation, ebn0_db, plan.code.rate(), LlrMethod::MaxLog)?;
    let scale = MixtureLlrModel::for_channel(&ch).mean_llr();
    let mut results = Vec::new();
    for &factor in &SR_WEIGHT_GRID {
        let w = factor * scale;
        let mut p = plan.clone();
        p.decoder = Decoder::IbddSr;
        p.decoder_config.sr_weights = vec![w; p.decoder_config.cr_iterations];
        p.snr_db = vec![ebn0_db];
        results.push((w, run_plan(&p)?[0]));
    }
    let best = results
        .iter()
        .min_by(|a, b| a.1.ber.total_cmp(&b.1.ber))
        .map(|r| r.0)
        .expect("grid is not empty");
    Ok((best, results))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(db: f64, ber: f64) -> SimPoint {
        SimPoint {
            ebn0_db: db,
            frames: 1,
            bit_errors: 0,
            frame_errors: 0,
            ber,
            fer: 0.0,
            seconds: 0.0,
            seed: 0,
            truncated: false,
        }
    }

    #[test]
    fn crossing_interpolates_in_log_domain() {
        let pts = [point(4.0, 1e-3), point(4.5, 1e-5), point(5.0, 1e-7)];
        assert!((ber_crossing(&pts, 1e-4).unwrap() - 4.25).abs() < 1e-12);
        assert!(ber_crossing(&pts, 1e-9).is_none());
    }

    #[test]
    fn snr_range_includes_stop() {
        let g = SnrGrid::Range {
            start: 4.0,
            stop: 4.5,
            step: 0.1,
        };
        assert_eq!(g.points().unwrap().len(), 6);
    }

    #[test]
    fn config_errors_name_the_key() {
        let bad = r#"{"code":{"v":8,"t":3},"decoder":"ibdd","channel":{"kind":"biawgn"},"snr":[4.0],"bogus":1}"#;
        match SimConfig::from_json(bad) {
            Err(Error::Config { key, .. }) => assert_eq!(key, "bogus"),
            other => panic!("{other:?}"),
        }
        let low = r#"{"code":{"v":8,"t":3},"decoder":"ibdd","channel":{"kind":"biawgn"},"snr":[4.0],"stop":{"min_frame_errors":10}}"#;
        match SimConfig::from_json(low) {
            Err(Error::Config { key, .. }) => assert_eq!(key, "stop.min_frame_errors"),
            other => panic!("{other:?}"),
        }
    }
}
