//! Iterative decoders for product codes.
//!
//! All decoders exchange hard decisions only: every stage reads an `n x n`
//! bit matrix and writes one. A full iteration is a row half-iteration
//! followed by a column half-iteration.
//!
//! * [`ibdd_decode`]: plain iterative BDD; failed components pass their input.
//! * [`ideal_ibdd_decode`]: the same with a genie that turns miscorrections
//!   into failures.
//! * [`ibdd_sr_decode`]: each bit becomes `B(w * mu_bar + l)`.
//! * [`ibdd_cr_decode`]: each bit becomes `B(mu~(mu_bar, l_hat) + l)` with
//!   `mu~` read from a [`CombiningLut`], followed by plain iBDD iterations.

use crate::bch::{BchCode, ErrorPattern};
use crate::error::{Error, Result};
use crate::lut::CombiningLut;
use crate::product::{hard_bit, BitMatrix, LlrMatrix, ProductCode};

/// Decision when the combined value is exactly zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    /// Keep the channel hard decision `B(l)`.
    #[default]
    KeepChannel,
    Zero,
    One,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecoderConfig {
    /// Soft-aided (CR or SR) iterations.
    pub cr_iterations: usize,
    /// Plain iBDD iterations run after the soft-aided ones.
    pub appended_ibdd_iterations: usize,
    /// iBDD-SR scaling per soft-aided iteration.
    pub sr_weights: Vec<f64>,
    pub tie_break: TieBreak,
    /// Stop once an iteration provably cannot change the outcome.
    pub early_stop: bool,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self {
            cr_iterations: 10,
            appended_ibdd_iterations: 2,
            sr_weights: Vec::new(),
            tie_break: TieBreak::KeepChannel,
            early_stop: true,
        }
    }
}

impl DecoderConfig {
    /// Iteration budget of the plain and genie-aided decoders.
    pub fn total_iterations(&self) -> usize {
        self.cr_iterations + self.appended_ibdd_iterations
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeReport {
    pub decoded: BitMatrix,
    pub iterations_run: usize,
    pub bit_errors: Option<usize>,
    /// The last full iteration changed nothing.
    pub converged: bool,
}

impl DecodeReport {
    pub fn with_truth(mut self, truth: &BitMatrix) -> Self {
        self.bit_errors = Some(self.decoded.hamming_distance(truth));
        self
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Axis {
    Rows,
    Columns,
}

/// How a half-iteration turns component decoding results into new bits.
#[derive(Clone, Copy)]
enum Update<'a> {
    /// Apply corrections; keep the input on failure.
    Hard,
    /// As `Hard`, but corrections that disagree with the truth are dropped.
    Genie(&'a BitMatrix),
    /// `B(offset[cell] + l)` with `cell` indexing `(mu_bar, l_hat)` as in
    /// [`MuTable`].
    Soft { offset: [f64; 6], tie: TieBreak },
}

struct Engine<'a> {
    code: &'a BchCode,
    n: usize,
    state: BitMatrix,
    line: Vec<u8>,
    aux: Vec<u8>,
    /// Soft mode only: channel LLRs in row-major and column-major order.
    llr_axes: [Vec<f64>; 2],
    /// Lines whose content changed since they were last decoded.
    dirty: [Vec<bool>; 2],
    /// Soft mode only: MuTable cell of every bit at the last half-iteration
    /// per axis (line-major), and whether each line had a nonempty correction.
    cells: [Vec<u8>; 2],
    corrected: [Vec<bool>; 2],
    /// Soft mode only: decoding result of each line's current content,
    /// valid while the line is not dirty, and the offsets last applied.
    patterns: [Vec<Option<Option<ErrorPattern>>>; 2],
    last_offset: [Option<[f64; 6]>; 2],
}

impl<'a> Engine<'a> {
    fn new(pc: &'a ProductCode, start: BitMatrix) -> Self {
        let n = pc.n();
        Self {
            code: pc.component(),
            n,
            state: start,
            line: vec![0; n],
            aux: vec![0; n],
            llr_axes: [Vec::new(), Vec::new()],
            dirty: [vec![true; n], vec![true; n]],
            cells: [Vec::new(), Vec::new()],
            corrected: [vec![false; n], vec![false; n]],
            patterns: [vec![None; n], vec![None; n]],
            last_offset: [None, None],
        }
    }

    fn load_llrs(&mut self, llrs: &LlrMatrix) {
        let n = self.n;
        let v = llrs.as_slice();
        self.llr_axes[0] = v.to_vec();
        self.llr_axes[1] = (0..n * n).map(|k| v[(k % n) * n + k / n]).collect();
        for c in &mut self.cells {
            c.resize(n * n, 0);
        }
    }

    fn mark_all_dirty(&mut self) {
        for d in &mut self.dirty {
            d.fill(true);
        }
        for p in &mut self.patterns {
            p.fill(None);
        }
    }

    /// Runs one half-iteration; returns whether any bit changed.
    fn half_iteration(&mut self, axis: Axis, update: Update<'_>) -> bool {
        let n = self.n;
        let (this, other) = match axis {
            Axis::Rows => (0, 1),
            Axis::Columns => (1, 0),
        };
        let soft_offset = match update {
            Update::Soft { offset, .. } => Some(offset),
            _ => None,
        };
        let repeat = soft_offset.is_some() && self.last_offset[this] == soft_offset;
        let mut changed = false;
        for a in 0..n {
            let clean = !self.dirty[this][a];
            // An untouched line decodes to the same result, so hard updates
            // and repeated soft offsets skip it.
            if clean && (soft_offset.is_none() || repeat) {
                continue;
            }
            self.dirty[this][a] = false;
            self.gather(axis, a);
            let pattern = match (soft_offset, clean, self.patterns[this][a]) {
                (Some(_), true, Some(cached)) => cached,
                _ => self.code.decode_errors(&self.line),
            };
            let line_changed = match update {
                Update::Hard => self.apply_hard(pattern),
                Update::Genie(truth) => {
                    gather_bits(truth, axis, a, &mut self.aux);
                    match pattern {
                        Some(p) if corrects_to(&self.line, &p, &self.aux) => self.apply_hard(Some(p)),
                        _ => false,
                    }
                }
                Update::Soft { offset, tie } => {
                    self.patterns[this][a] = Some(pattern);
                    self.corrected[this][a] = pattern.as_ref().is_some_and(|p| !p.is_empty());
                    self.apply_soft(pattern, &offset, tie, this, a)
                }
            };
            if line_changed {
                changed = true;
                self.scatter(axis, a, other);
                if soft_offset.is_some() {
                    // The soft output need not be a codeword.
                    self.dirty[this][a] = true;
                }
            }
        }
        if soft_offset.is_some() {
            self.last_offset[this] = soft_offset;
        }
        changed
    }

    fn gather(&mut self, axis: Axis, a: usize) {
        gather_bits(&self.state, axis, a, &mut self.line);
        self.aux.copy_from_slice(&self.line);
    }

    /// Writes `line` back and marks crossing lines dirty where bits moved.
    fn scatter(&mut self, axis: Axis, a: usize, other: usize) {
        let n = self.n;
        let bits = self.state.as_mut_slice();
        for b in 0..n {
            let idx = match axis {
                Axis::Rows => a * n + b,
                Axis::Columns => b * n + a,
            };
            if bits[idx] != self.line[b] {
                bits[idx] = self.line[b];
                self.dirty[other][b] = true;
            }
        }
    }

    /// Whether every line decoded to an empty correction at its last soft
    /// pass, so plain iBDD would leave the state alone.
    fn no_corrections(&self) -> bool {
        !self.corrected.iter().any(|c| c.iter().any(|&x| x))
    }

    /// After a full soft iteration that left the state unchanged, checks
    /// whether every remaining soft table would also leave it unchanged.
    /// Offsets come as per-cell bounds over the remaining tables; ties
    /// count as changes.
    fn is_fixed_point(&self, bounds: &[[(f64, f64); 6]; 2]) -> bool {
        let n = self.n;
        let bits = self.state.as_slice();
        for axis in 0..2 {
            let cells = &self.cells[axis];
            for (k, &l) in self.llr_axes[axis].iter().enumerate() {
                let bit = match axis {
                    0 => bits[k],
                    _ => bits[(k % n) * n + k / n],
                };
                // Keeping bit 0 needs T + l > 0 for all T, i.e. l > max(-T).
                let (max_neg, min_neg) = bounds[axis][cells[k] as usize];
                let keeps = if bit == 0 { l > max_neg } else { l < min_neg };
                if !keeps {
                    return false;
                }
            }
        }
        true
    }

    fn apply_hard(&mut self, pattern: Option<ErrorPattern>) -> bool {
        match pattern {
            Some(p) if !p.is_empty() => {
                for &pos in p.positions() {
                    self.line[pos as usize] ^= 1;
                }
                true
            }
            _ => false,
        }
    }

    fn apply_soft(&mut self, pattern: Option<ErrorPattern>, offset: &[f64; 6], tie: TieBreak, this: usize, a: usize) -> bool {
        let n = self.n;
        let decoded = match pattern {
            Some(p) => {
                for &pos in p.positions() {
                    self.line[pos as usize] ^= 1;
                }
                true
            }
            None => false,
        };
        let llrs = &self.llr_axes[this][a * n..(a + 1) * n];
        let cells = &mut self.cells[this][a * n..(a + 1) * n];
        let mut changed = false;
        for (((bit, &old), &l), cell) in self.line.iter_mut().zip(&self.aux).zip(llrs).zip(cells) {
            // MuTable cell: decoded 1 -> 0, decoded 0 -> 1, failure -> 2;
            // plus 3 when the channel says 0.
            let mu_cell = if decoded { (*bit ^ 1) as usize } else { 2 };
            let c = mu_cell + if l < 0.0 { 0 } else { 3 };
            *cell = c as u8;
            let s = offset[c] + l;
            let new = if s < 0.0 {
                1
            } else if s > 0.0 {
                0
            } else {
                match tie {
                    TieBreak::KeepChannel => hard_bit(l),
                    TieBreak::Zero => 0,
                    TieBreak::One => 1,
                }
            };
            *bit = new;
            changed |= new != old;
        }
        changed
    }
}

fn gather_bits(m: &BitMatrix, axis: Axis, a: usize, out: &mut [u8]) {
    let n = m.size();
    match axis {
        Axis::Rows => out.copy_from_slice(m.row(a)),
        Axis::Columns => {
            let bits = m.as_slice();
            for (i, slot) in out.iter_mut().enumerate() {
                *slot = bits[i * n + a];
            }
        }
    }
}

fn corrects_to(line: &[u8], pattern: &ErrorPattern, truth: &[u8]) -> bool {
    let mut diff: usize = line.iter().zip(truth).filter(|(a, b)| a != b).count();
    for &p in pattern.positions() {
        let p = p as usize;
        if line[p] == truth[p] {
            diff += 1;
        } else {
            diff -= 1;
        }
    }
    diff == 0
}

fn check_size(pc: &ProductCode, size: usize) -> Result<()> {
    if size != pc.n() {
        return Err(Error::LengthMismatch {
            expected: pc.n() * pc.n(),
            actual: size * size,
        });
    }
    Ok(())
}

/// Plain iBDD iterations on `engine`, reporting (iterations run, converged).
fn run_hard(engine: &mut Engine<'_>, iterations: usize, genie: Option<&BitMatrix>, early_stop: bool) -> (usize, bool) {
    let update = genie.map_or(Update::Hard, Update::Genie);
    let mut converged = false;
    for it in 0..iterations {
        let changed = engine.half_iteration(Axis::Rows, update) | engine.half_iteration(Axis::Columns, update);
        converged = !changed;
        if early_stop && converged {
            return (it + 1, true);
        }
    }
    (iterations, converged)
}

/// Conventional iBDD for `cr_iterations + appended_ibdd_iterations` iterations.
pub fn ibdd_decode(pc: &ProductCode, hard: &BitMatrix, config: &DecoderConfig) -> Result<DecodeReport> {
    check_size(pc, hard.size())?;
    let mut engine = Engine::new(pc, hard.clone());
    let (iterations_run, converged) = run_hard(&mut engine, config.total_iterations(), None, config.early_stop);
    Ok(DecodeReport {
        decoded: engine.state,
        iterations_run,
        bit_errors: None,
        converged,
    })
}

/// Genie-aided iBDD: a component decoding that does not reproduce the
/// transmitted row or column is treated as a failure.
pub fn ideal_ibdd_decode(
    pc: &ProductCode,
    hard: &BitMatrix,
    truth: &BitMatrix,
    config: &DecoderConfig,
) -> Result<DecodeReport> {
    check_size(pc, hard.size())?;
    check_size(pc, truth.size())?;
    let mut engine = Engine::new(pc, hard.clone());
    let (iterations_run, converged) =
        run_hard(&mut engine, config.total_iterations(), Some(truth), config.early_stop);
    Ok(DecodeReport {
        decoded: engine.state,
        iterations_run,
        bit_errors: None,
        converged,
    }
    .with_truth(truth))
}

/// Soft-aided phase followed by the appended iBDD phase. `tables(l)` gives
/// the (row, column) offsets of soft iteration `l`.
fn run_soft(
    pc: &ProductCode,
    llrs: &LlrMatrix,
    config: &DecoderConfig,
    tables: &dyn Fn(usize) -> ([f64; 6], [f64; 6]),
) -> Result<DecodeReport> {
    check_size(pc, llrs.size())?;
    let mut engine = Engine::new(pc, llrs.hard_decisions());
    engine.load_llrs(llrs);
    let mut iterations_run = 0;
    let mut converged = false;
    let soft = config.cr_iterations;
    let mut l = 0;
    while l < soft {
        let (row, col) = tables(l);
        let changed = engine.half_iteration(
            Axis::Rows,
            Update::Soft {
                offset: row,
                tie: config.tie_break,
            },
        ) | engine.half_iteration(
            Axis::Columns,
            Update::Soft {
                offset: col,
                tie: config.tie_break,
            },
        );
        iterations_run += 1;
        converged = !changed;
        l += 1;
        if config.early_stop && converged {
            let bounds = suffix_bounds(tables, l, soft);
            if engine.is_fixed_point(&bounds) {
                // The remaining soft iterations would reproduce the state.
                if config.appended_ibdd_iterations == 0 || engine.no_corrections() {
                    return Ok(DecodeReport {
                        decoded: engine.state,
                        iterations_run,
                        bit_errors: None,
                        converged,
                    });
                }
                break;
            }
        }
    }
    if config.appended_ibdd_iterations > 0 {
        engine.mark_all_dirty();
        let (extra, conv) = run_hard(&mut engine, config.appended_ibdd_iterations, None, config.early_stop);
        iterations_run += extra;
        converged = conv;
    }
    Ok(DecodeReport {
        decoded: engine.state,
        iterations_run,
        bit_errors: None,
        converged,
    })
}

/// Per axis and cell, `(max(-T), min(-T))` over the soft tables `from..to`.
fn suffix_bounds(
    tables: &dyn Fn(usize) -> ([f64; 6], [f64; 6]),
    from: usize,
    to: usize,
) -> [[(f64, f64); 6]; 2] {
    let mut b = [[(f64::NEG_INFINITY, f64::INFINITY); 6]; 2];
    for r in from..to {
        let (row, col) = tables(r);
        for (axis, t) in [row, col].iter().enumerate() {
            for (cell, &x) in t.iter().enumerate() {
                let e = &mut b[axis][cell];
                e.0 = e.0.max(-x);
                e.1 = e.1.min(-x);
            }
        }
    }
    b
}

/// iBDD with scaled reliabilities: `B(w_l * mu_bar + l)`.
pub fn ibdd_sr_decode(pc: &ProductCode, llrs: &LlrMatrix, config: &DecoderConfig) -> Result<DecodeReport> {
    if config.sr_weights.len() < config.cr_iterations {
        return Err(Error::MissingWeights {
            available: config.sr_weights.len(),
            required: config.cr_iterations,
        });
    }
    if let Some(w) = config.sr_weights.iter().find(|w| !(**w >= 0.0)) {
        return Err(Error::InvalidArgument(format!("iBDD-SR weight {w} must be nonnegative")));
    }
    let weights = &config.sr_weights;
    let tables = |l: usize| {
        let w = weights[l];
        let t = [-w, w, 0.0, -w, w, 0.0];
        (t, t)
    };
    run_soft(pc, llrs, config, &tables)
}

/// iBDD with combined reliabilities read from `lut`.
pub fn ibdd_cr_decode(
    pc: &ProductCode,
    llrs: &LlrMatrix,
    lut: &CombiningLut,
    config: &DecoderConfig,
) -> Result<DecodeReport> {
    if lut.len() < config.cr_iterations {
        return Err(Error::LutTooShort {
            available: lut.len(),
            required: config.cr_iterations,
        });
    }
    let tables = |l: usize| {
        let it = &lut.iterations[l];
        (it.row.0, it.column.0)
    };
    run_soft(pc, llrs, config, &tables)
}

/// Decoder selection used by the simulation harness.
#[derive(Debug, Clone)]
pub enum Decoder {
    Ibdd,
    IdealIbdd,
    IbddSr,
    IbddCr(CombiningLut),
}

impl Decoder {
    pub fn name(&self) -> &'static str {
        match self {
            Decoder::Ibdd => "ibdd",
            Decoder::IdealIbdd => "ideal_ibdd",
            Decoder::IbddSr => "ibdd_sr",
            Decoder::IbddCr(_) => "ibdd_cr",
        }
    }

    /// Decodes one frame; `truth` is only consulted by the genie decoder.
    pub fn decode(
        &self,
        pc: &ProductCode,
        llrs: &LlrMatrix,
        truth: &BitMatrix,
        config: &DecoderConfig,
    ) -> Result<DecodeReport> {
        match self {
            Decoder::Ibdd => ibdd_decode(pc, &llrs.hard_decisions(), config),
            Decoder::IdealIbdd => ideal_ibdd_decode(pc, &llrs.hard_decisions(), truth, config),
            Decoder::IbddSr => ibdd_sr_decode(pc, llrs, config),
            Decoder::IbddCr(lut) => ibdd_cr_decode(pc, llrs, lut, config),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bch::BchCode;
    use crate::lut::MuTable;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pc15() -> ProductCode {
        ProductCode::new(BchCode::new(4, 2).unwrap())
    }

    fn random_codeword(pc: &ProductCode, rng: &mut impl Rng) -> BitMatrix {
        let k = pc.k();
        let msg = BitMatrix::from_vec(k, (0..k * k).map(|_| rng.random_range(0..2)).collect()).unwrap();
        pc.encode(&msg).unwrap()
    }

    fn llrs_for(c: &BitMatrix, mag: f64) -> LlrMatrix {
        LlrMatrix::from_vec(
            c.size(),
            c.as_slice().iter().map(|&b| if b == 0 { mag } else { -mag }).collect(),
        )
        .unwrap()
    }

    #[test]
    fn codeword_is_a_fixed_point() {
        let pc = pc15();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = random_codeword(&pc, &mut rng);
        let r = ibdd_decode(&pc, &c, &DecoderConfig::default()).unwrap();
        assert_eq!(r.decoded, c);
        assert!(r.converged);
        assert_eq!(r.iterations_run, 1);
    }

    #[test]
    fn single_error_fixed_by_rows() {
        let pc = pc15();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c = random_codeword(&pc, &mut rng);
        for (i, j) in [(0, 0), (7, 3), (14, 14)] {
            let mut w = c.clone();
            w.flip(i, j);
            let cfg = DecoderConfig {
                cr_iterations: 0,
                appended_ibdd_iterations: 1,
                ..Default::default()
            };
            assert_eq!(ibdd_decode(&pc, &w, &cfg).unwrap().decoded, c);
        }
    }

    #[test]
    fn stall_pattern_is_left_alone() {
        let pc = pc15();
        let code = pc.component();
        // A 3-subset whose weight-3 word BDD rejects; the same set on rows
        // and columns gives a stall.
        let mut support = None;
        'search: for a in 0..15 {
            for b in a + 1..15 {
                for c in b + 1..15 {
                    let mut word = vec![0u8; 15];
                    word[a] = 1;
                    word[b] = 1;
                    word[c] = 1;
                    if code.decode_errors(&word).is_none() {
                        support = Some([a, b, c]);
                        break 'search;
                    }
                }
            }
        }
        let support = support.expect("some weight-3 word is undecodable");
        let mut w = BitMatrix::zeros(15);
        for &i in &support {
            for &j in &support {
                w.set(i, j, 1);
            }
        }
        let r = ibdd_decode(&pc, &w, &DecoderConfig::default()).unwrap();
        assert_eq!(r.decoded, w);
        assert!(r.converged);
    }

    #[test]
    fn cr_with_zero_lut_returns_channel_decisions() {
        let pc = pc15();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let llrs = LlrMatrix::from_vec(15, (0..225).map(|_| rng.random_range(-3.0..3.0)).collect()).unwrap();
        let lut = CombiningLut::shared(0.0, vec![MuTable::ZERO; 10]);
        let cfg = DecoderConfig {
            appended_ibdd_iterations: 0,
            ..Default::default()
        };
        let r = ibdd_cr_decode(&pc, &llrs, &lut, &cfg).unwrap();
        assert_eq!(r.decoded, llrs.hard_decisions());
    }

    #[test]
    fn cr_zero_soft_iterations_equals_ibdd() {
        let pc = pc15();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let c = random_codeword(&pc, &mut rng);
        for _ in 0..50 {
            let llrs = LlrMatrix::from_vec(
                15,
                c.as_slice()
                    .iter()
                    .map(|&b| (if b == 0 { 1.0 } else { -1.0 }) + rng.random_range(-1.6..1.6))
                    .collect(),
            )
            .unwrap();
            let cfg = DecoderConfig {
                cr_iterations: 0,
                appended_ibdd_iterations: 6,
                ..Default::default()
            };
            let lut = CombiningLut::shared(0.0, []);
            let a = ibdd_cr_decode(&pc, &llrs, &lut, &cfg).unwrap();
            let b = ibdd_decode(&pc, &llrs.hard_decisions(), &cfg).unwrap();
            assert_eq!(a.decoded, b.decoded);
        }
    }

    #[test]
    fn sr_zero_weights_is_channel_and_huge_weights_is_bdd() {
        let pc = pc15();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = random_codeword(&pc, &mut rng);
        let llrs = llrs_for(&c, 2.0);
        let mut noisy = llrs.as_slice().to_vec();
        noisy[3] = -noisy[3];
        noisy[100] = -noisy[100];
        let llrs = LlrMatrix::from_vec(15, noisy).unwrap();
        let zero = DecoderConfig {
            sr_weights: vec![0.0; 10],
            appended_ibdd_iterations: 0,
            ..Default::default()
        };
        assert_eq!(ibdd_sr_decode(&pc, &llrs, &zero).unwrap().decoded, llrs.hard_decisions());
        let huge = DecoderConfig {
            sr_weights: vec![1e9; 10],
            appended_ibdd_iterations: 0,
            ..Default::default()
        };
        assert_eq!(ibdd_sr_decode(&pc, &llrs, &huge).unwrap().decoded, c);
        let missing = DecoderConfig::default();
        assert!(matches!(
            ibdd_sr_decode(&pc, &llrs, &missing),
            Err(Error::MissingWeights { .. })
        ));
    }

    #[test]
    fn lut_too_short_is_rejected() {
        let pc = pc15();
        let llrs = llrs_for(&BitMatrix::zeros(15), 1.0);
        let lut = CombiningLut::shared(0.0, vec![MuTable::ZERO; 3]);
        assert!(matches!(
            ibdd_cr_decode(&pc, &llrs, &lut, &DecoderConfig::default()),
            Err(Error::LutTooShort { .. })
        ));
    }

    #[test]
    fn genie_never_introduces_errors() {
        // Plain iBDD miscorrects at this density; the genie only removes errors.
        let pc = pc15();
        let truth = BitMatrix::zeros(15);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut plain_added = false;
        for _ in 0..200 {
            let w = BitMatrix::from_vec(15, (0..225).map(|_| rng.random_bool(0.12) as u8).collect()).unwrap();
            let cfg = DecoderConfig::default();
            let ideal = ideal_ibdd_decode(&pc, &w, &truth, &cfg).unwrap();
            let plain = ibdd_decode(&pc, &w, &cfg).unwrap();
            for (i, &b) in ideal.decoded.as_slice().iter().enumerate() {
                assert!(b <= w.as_slice()[i]);
            }
            assert_eq!(ideal.bit_errors, Some(ideal.decoded.count_ones()));
            plain_added |= plain
                .decoded
                .as_slice()
                .iter()
                .zip(w.as_slice())
                .any(|(&d, &x)| d > x);
        }
        assert!(plain_added);
    }

    #[test]
    fn early_stop_does_not_change_the_output() {
        let pc = pc15();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let normal = rand_distr::Normal::new(0.0, 1.0).unwrap();
        let mut stopped_early = 0;
        for trial in 0..300 {
            let c = random_codeword(&pc, &mut rng);
            let sigma = 0.45 + 0.1 * (trial % 4) as f64;
            let llrs = LlrMatrix::from_vec(
                15,
                c.as_slice()
                    .iter()
                    .map(|&b| {
                        let x = if b == 0 { 1.0 } else { -1.0 };
                        2.0 * (x + sigma * rng.sample::<f64, _>(normal)) / (sigma * sigma)
                    })
                    .collect(),
            )
            .unwrap();
            let tables: Vec<MuTable> = (0..10)
                .map(|l| {
                    let (a, b, e) = (-1.0 - 0.2 * l as f64, 3.0 + l as f64, 0.3 * (trial % 3) as f64);
                    MuTable([a, b, e, -b, -a, -e])
                })
                .collect();
            let lut = CombiningLut::shared(0.0, tables);
            let fast = DecoderConfig::default();
            let full = DecoderConfig {
                early_stop: false,
                ..DecoderConfig::default()
            };
            let a = ibdd_cr_decode(&pc, &llrs, &lut, &fast).unwrap();
            let b = ibdd_cr_decode(&pc, &llrs, &lut, &full).unwrap();
            assert_eq!(a.decoded, b.decoded);
            stopped_early += (a.iterations_run < b.iterations_run) as usize;
            let sr = DecoderConfig {
                sr_weights: (0..10).map(|l| 1.0 + l as f64).collect(),
                ..fast.clone()
            };
            let sr_full = DecoderConfig {
                early_stop: false,
                ..sr.clone()
            };
            assert_eq!(
                ibdd_sr_decode(&pc, &llrs, &sr).unwrap().decoded,
                ibdd_sr_decode(&pc, &llrs, &sr_full).unwrap().decoded
            );
        }
        assert!(stopped_early > 100);
    }
}
