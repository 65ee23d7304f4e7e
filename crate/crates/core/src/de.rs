//! Density evolution of the GLDPC ensemble with BCH constraint nodes under
//! extrinsic iBDD-CR.
//!
//! Messages are tracked by their error probability `x`. One half-iteration
//! maps the input error probability `x` of a constraint-node type to
//!
//! ```text
//! x_out = sum over (mu_bar, l_hat) of f(mu_bar | l_hat)(x) * P(mu~ + l < 0, sign l = l_hat)
//! ```
//!
//! where the conditionals `f` mix per-weight transition probabilities of
//! the component decoder with binomial weights, `mu~` is their log-ratio and
//! the event probability follows from the Gaussian-mixture LLR law.
//!
//! For `l_hat = -1` the event is `l < min(-mu~, 0)`, whose probability under
//! `N(mu_j, sigma_j^2)` is `Q((mu_j + max(mu~, 0)) / sigma_j)`. The `max`
//! follows from intersecting the two events; writing `min` instead would
//! give probabilities above `P(l < 0)` and lose the fixed point at `x = 0`.

use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bch::BchCode;
use crate::error::{Error, Result};
use crate::lut::{CombiningLut, LutIteration, MuTable, DEFAULT_LLR_CLAMP};
use crate::math::{ln_choose, q_function};
use crate::mixture::MixtureLlrModel;

/// Codes up to this length are tabulated by full enumeration.
pub const EXHAUSTIVE_MAX_N: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeId {
    pub v: u32,
    pub t: usize,
}

/// Outcome probabilities of one extrinsic decision with `i` errors among
/// the other `n - 1` positions.
///
/// `p_*`: the bit itself is in error; `q_*`: it is correct. Suffixes give
/// the decoded value: incorrect, correct or erased (decoder failure).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionEntry {
    pub i: usize,
    pub p_e: f64,
    pub p_c: f64,
    pub p_eps: f64,
    pub q_e: f64,
    pub q_c: f64,
    pub q_eps: f64,
    /// Trials behind the estimate; 0 for exact entries.
    pub samples: u64,
}

impl TransitionEntry {
    fn exact_correct(i: usize, p_correct: bool) -> Self {
        Self {
            i,
            p_e: 0.0,
            p_c: if p_correct { 1.0 } else { 0.0 },
            p_eps: 0.0,
            q_e: 0.0,
            q_c: 1.0,
            q_eps: 0.0,
            samples: 0,
        }
    }

    /// Values in the order `p_e, p_c, p_eps, q_e, q_c, q_eps`.
    pub fn values(&self) -> [f64; 6] {
        [self.p_e, self.p_c, self.p_eps, self.q_e, self.q_c, self.q_eps]
    }

    /// Binomial standard errors of [`values`](Self::values); zero when exact.
    pub fn standard_errors(&self) -> [f64; 6] {
        if self.samples == 0 {
            return [0.0; 6];
        }
        let s = self.samples as f64;
        self.values().map(|p| (p * (1.0 - p) / s).sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableMethod {
    Exhaustive,
    MonteCarlo { samples_per_weight: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionTable {
    pub code: CodeId,
    pub n: usize,
    pub method: TableMethod,
    /// Indexed by `i = 0..n`.
    pub entries: Vec<TransitionEntry>,
}

/// Outcome counts for one weight class, in `values()` order.
#[derive(Default, Clone, Copy)]
struct Tally {
    counts: [u64; 6],
    p_trials: u64,
    q_trials: u64,
}

impl Tally {
    fn record_p(&mut self, decoded_bit: Option<u8>) {
        self.p_trials += 1;
        match decoded_bit {
            Some(1) => self.counts[0] += 1,
            Some(_) => self.counts[1] += 1,
            None => self.counts[2] += 1,
        }
    }

    fn record_q(&mut self, decoded_bit: Option<u8>) {
        self.q_trials += 1;
        match decoded_bit {
            Some(1) => self.counts[3] += 1,
            Some(_) => self.counts[4] += 1,
            None => self.counts[5] += 1,
        }
    }

    fn entry(&self, i: usize, samples: u64) -> TransitionEntry {
        let frac = |c: u64, n: u64| if n == 0 { 0.0 } else { c as f64 / n as f64 };
        let (p, q) = (self.p_trials, self.q_trials);
        TransitionEntry {
            i,
            p_e: frac(self.counts[0], p),
            p_c: frac(self.counts[1], p),
            p_eps: frac(self.counts[2], p),
            q_e: frac(self.counts[3], q),
            q_c: frac(self.counts[4], q),
            q_eps: frac(self.counts[5], q),
            samples,
        }
    }
}

impl TransitionTable {
    /// Full enumeration of all `2^n` channel error patterns. Each pattern is
    /// the extrinsic decoder input of every position at once.
    pub fn exhaustive(code: &BchCode) -> Result<Self> {
        let n = code.n();
        if n > 20 {
            return Err(Error::InvalidArgument(format!(
                "exhaustive enumeration over 2^{n} patterns is not supported"
            )));
        }
        let mut tallies = vec![Tally::default(); n];
        for mask in 0u32..(1u32 << n) {
            let syn = code.syndromes_of_positions((0..n).filter(|&p| mask >> p & 1 == 1));
            let pattern = code.locate(&syn);
            let weight = mask.count_ones() as usize;
            for p in 0..n {
                let bit = (mask >> p & 1) as u8;
                let decoded = pattern.as_ref().map(|e| bit ^ e.contains(p) as u8);
                if bit == 1 {
                    tallies[weight - 1].record_p(decoded);
                } else if weight < n {
                    tallies[weight].record_q(decoded);
                }
            }
        }
        let entries = tallies
            .iter()
            .enumerate()
            .map(|(i, t)| TransitionEntry {
                samples: 0,
                ..t.entry(i, 0)
            })
            .collect();
        let mut table = Self {
            code: CodeId { v: code.v(), t: code.t() },
            n,
            method: TableMethod::Exhaustive,
            entries,
        };
        table.force_deterministic(code.t());
        Ok(table)
    }

    /// Monte Carlo estimate with `samples_per_weight` random (position,
    /// pattern) draws per weight class. Each class uses its own stream.
    pub fn monte_carlo(code: &BchCode, samples_per_weight: u64, seed: u64) -> Self {
        let n = code.n();
        let t = code.t();
        let entries: Vec<TransitionEntry> = (0..n)
            .into_par_iter()
            .map(|i| {
                if i < t {
                    return TransitionEntry::exact_correct(i, true);
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let mut others: Vec<usize> = (0..n - 1).collect();
                let mut tally = Tally::default();
                for _ in 0..samples_per_weight {
                    let target = rng.random_range(0..n);
                    for s in 0..i {
                        let j = rng.random_range(s..n - 1);
                        others.swap(s, j);
                    }
                    let chosen = others[..i].iter().map(|&o| if o >= target { o + 1 } else { o });
                    let base = code.syndromes_of_positions(chosen);
                    let q = code.locate(&base).map(|e| e.contains(target) as u8);
                    tally.record_q(q);
                    let mut with_target = base;
                    code.toggle_position(&mut with_target, target);
                    let p = code.locate(&with_target).map(|e| 1 ^ e.contains(target) as u8);
                    tally.record_p(p);
                }
                tally.entry(i, samples_per_weight)
            })
            .collect();
        let mut table = Self {
            code: CodeId { v: code.v(), t },
            n,
            method: TableMethod::MonteCarlo {
                samples_per_weight,
                seed,
            },
            entries,
        };
        table.force_deterministic(t);
        table
    }

    /// Exhaustive for `n <= 15`, Monte Carlo otherwise.
    pub fn estimate(code: &BchCode, samples_per_weight: u64, seed: u64) -> Result<Self> {
        if code.n() <= EXHAUSTIVE_MAX_N {
            Self::exhaustive(code)
        } else {
            Ok(Self::monte_carlo(code, samples_per_weight, seed))
        }
    }

    /// Loads `dir/<key>.json` if present, otherwise estimates and stores it.
    pub fn cached(code: &BchCode, samples_per_weight: u64, seed: u64, dir: &Path) -> Result<Self> {
        let path = Self::cache_path(dir, code.v(), code.t(), samples_per_weight, seed);
        if path.exists() {
            let table = Self::load(&path)?;
            if table.code == (CodeId { v: code.v(), t: code.t() }) && table.n == code.n() {
                return Ok(table);
            }
        }
        let table = Self::estimate(code, samples_per_weight, seed)?;
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        table.save(&path)?;
        Ok(table)
    }

    pub fn cache_path(dir: &Path, v: u32, t: usize, samples: u64, seed: u64) -> PathBuf {
        dir.join(format!("transition_v{v}_t{t}_s{samples}_seed{seed}.json"))
    }

    /// Within the decoding radius the outcome is known: the erroneous bit is
    /// corrected for `i <= t-1`, a correct bit stays correct for `i <= t`.
    fn force_deterministic(&mut self, t: usize) {
        for e in &mut self.entries {
            if e.i < t {
                *e = TransitionEntry::exact_correct(e.i, true);
            } else if e.i == t {
                e.q_e = 0.0;
                e.q_c = 1.0;
                e.q_eps = 0.0;
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| Error::json(path, e))
    }
}

/// The six conditionals `p(mu_bar | l_hat, c = 0)` at one input error
/// probability, in `p_e, p_c, p_eps, q_e, q_c, q_eps` order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FValues {
    pub f_pe: f64,
    pub f_pc: f64,
    pub f_peps: f64,
    pub f_qe: f64,
    pub f_qc: f64,
    pub f_qeps: f64,
}

impl FValues {
    pub fn values(&self) -> [f64; 6] {
        [self.f_pe, self.f_pc, self.f_peps, self.f_qe, self.f_qc, self.f_qeps]
    }

    /// `(f_pe + f_pc + f_peps, f_qe + f_qc + f_qeps)`.
    pub fn simplex_sums(&self) -> (f64, f64) {
        (self.f_pe + self.f_pc + self.f_peps, self.f_qe + self.f_qc + self.f_qeps)
    }
}

/// `ln b_i(x) = ln C(n-1, i) + i ln x + (n-1-i) ln(1-x)`.
fn ln_binomial_weight(n1: usize, i: usize, x: f64) -> f64 {
    let term = |k: usize, p: f64| if k == 0 { 0.0 } else { k as f64 * p.ln() };
    ln_choose(n1 as u64, i as u64) + term(i, x) + term(n1 - i, 1.0 - x)
}

/// Binomial mixture of the table at input error probability `x`.
pub fn f_eval(table: &TransitionTable, x: f64) -> FValues {
    let x = x.clamp(0.0, 1.0);
    let n1 = table.n - 1;
    let mut acc = [0.0f64; 6];
    let mut total = 0.0;
    for e in &table.entries {
        let w = ln_binomial_weight(n1, e.i, x).exp();
        if w == 0.0 {
            continue;
        }
        total += w;
        for (a, v) in acc.iter_mut().zip(e.values()) {
            *a += w * v;
        }
    }
    let acc = acc.map(|a| a / total);
    FValues {
        f_pe: acc[0],
        f_pc: acc[1],
        f_peps: acc[2],
        f_qe: acc[3],
        f_qc: acc[4],
        f_qeps: acc[5],
    }
}

/// `ln(a / b)` over the extended reals; `0/0` gives 0.
fn log_ratio(a: f64, b: f64) -> f64 {
    match (a > 0.0, b > 0.0) {
        (true, true) => a.ln() - b.ln(),
        (true, false) => f64::INFINITY,
        (false, true) => f64::NEG_INFINITY,
        (false, false) => 0.0,
    }
}

/// The combining reliabilities for one half-iteration, saturated at
/// `±clamp` (pass `f64::INFINITY` for the raw values).
pub fn mu_table(f: &FValues, clamp: f64) -> MuTable {
    let a = log_ratio(f.f_pe, f.f_qc);
    let b = log_ratio(f.f_pc, f.f_qe);
    let c = log_ratio(f.f_peps, f.f_qeps);
    MuTable([a, b, c, -b, -a, -c]).clamped(clamp)
}

/// `P(mu~ + l < 0, sign l = l_hat | c = 0)` under the LLR law.
pub fn cell_error_probability(mu_tilde: f64, l_hat: i8, llr: &MixtureLlrModel) -> f64 {
    if l_hat < 0 {
        let shift = mu_tilde.max(0.0);
        llr.components
            .iter()
            .map(|c| c.weight * q_function((c.mean + shift) / c.std))
            .sum()
    } else if mu_tilde < 0.0 {
        llr.components
            .iter()
            .map(|c| c.weight * (q_function((mu_tilde + c.mean) / c.std) - q_function(c.mean / c.std)))
            .sum()
    } else {
        0.0
    }
}

/// One half-iteration of density evolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfStep {
    pub x_in: f64,
    pub x_out: f64,
    pub f: FValues,
    /// Unclamped combining reliabilities.
    pub mu: MuTable,
}

pub fn de_half_step(table: &TransitionTable, x_in: f64, llr: &MixtureLlrModel) -> HalfStep {
    let f = f_eval(table, x_in);
    let mu = mu_table(&f, f64::INFINITY);
    let mut x_out = 0.0;
    for (k, &weight) in f.values().iter().enumerate() {
        if weight == 0.0 {
            continue;
        }
        // values() order p_e, p_c, p_eps, q_e, q_c, q_eps matches the
        // MuTable order (-1,-1), (+1,-1), (0,-1), (-1,+1), (+1,+1), (0,+1).
        let l_hat = if k < 3 { -1 } else { 1 };
        x_out += weight * cell_error_probability(mu.0[k], l_hat, llr);
    }
    HalfStep {
        x_in,
        x_out: x_out.clamp(0.0, 1.0),
        f,
        mu,
    }
}

/// Message error probability after one constraint-node update.
pub fn de_step(table: &TransitionTable, x_in: f64, llr: &MixtureLlrModel) -> f64 {
    de_half_step(table, x_in, llr).x_out
}

/// Success threshold of [`de_run`].
pub const DE_SUCCESS_X: f64 = 1e-12;
/// Stall threshold on the per-iteration change of `x`.
pub const DE_STALL_DX: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeOutcome {
    Converged,
    Stalled,
    MaxIterations,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeIteration {
    pub row: HalfStep,
    pub column: HalfStep,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeTrajectory {
    /// `x_c(0)`, the channel error probability.
    pub p_ch: f64,
    pub iterations: Vec<DeIteration>,
    pub outcome: DeOutcome,
}

impl DeTrajectory {
    /// Final column-node error probability.
    pub fn final_x(&self) -> f64 {
        self.iterations.last().map_or(self.p_ch, |it| it.column.x_out)
    }

    /// `x_c(0), x_c(1), ...`.
    pub fn column_x(&self) -> Vec<f64> {
        std::iter::once(self.p_ch)
            .chain(self.iterations.iter().map(|it| it.column.x_out))
            .collect()
    }
}

/// Iterates row and column steps from `x_c(0) = p_ch`.
pub fn de_run(table: &TransitionTable, llr: &MixtureLlrModel, max_iters: usize) -> DeTrajectory {
    let mut x = llr.p_ch;
    let mut iterations = Vec::new();
    let mut outcome = DeOutcome::MaxIterations;
    if x < DE_SUCCESS_X {
        outcome = DeOutcome::Converged;
    }
    while outcome == DeOutcome::MaxIterations && iterations.len() < max_iters {
        let row = de_half_step(table, x, llr);
        let column = de_half_step(table, row.x_out, llr);
        iterations.push(DeIteration { row, column });
        let next = column.x_out;
        if next < DE_SUCCESS_X {
            outcome = DeOutcome::Converged;
        } else if (next - x).abs() < DE_STALL_DX {
            outcome = DeOutcome::Stalled;
        }
        x = next;
    }
    DeTrajectory {
        p_ch: llr.p_ch,
        iterations,
        outcome,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdSearch {
    pub target_x: f64,
    pub tolerance_db: f64,
    pub max_iters: usize,
}

impl Default for ThresholdSearch {
    fn default() -> Self {
        Self {
            target_x: 1e-10,
            tolerance_db: 0.005,
            max_iters: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub threshold_db: f64,
    /// Final bracket: DE fails at `lo_db` and succeeds at `hi_db`.
    pub lo_db: f64,
    pub hi_db: f64,
    pub evaluations: usize,
}

/// Whether DE drives the error probability below `target_x`.
pub fn de_succeeds(table: &TransitionTable, llr: &MixtureLlrModel, search: &ThresholdSearch) -> bool {
    de_run(table, llr, search.max_iters).final_x() < search.target_x
}

/// Bisection on the SNR parameter of `family` (dB to LLR law).
pub fn threshold_search(
    table: &TransitionTable,
    family: impl Fn(f64) -> Result<MixtureLlrModel>,
    bracket: (f64, f64),
    search: &ThresholdSearch,
) -> Result<Threshold> {
    let (mut lo, mut hi) = bracket;
    if !(lo < hi) {
        return Err(Error::InvalidArgument(format!("bracket [{lo}, {hi}] is empty")));
    }
    let ok = |db: f64| family(db).map(|m| de_succeeds(table, &m, search));
    let (ok_lo, ok_hi) = (ok(lo)?, ok(hi)?);
    if ok_lo == ok_hi || ok_lo {
        return Err(Error::InvalidBracket {
            lo,
            hi,
            converged: ok_lo,
        });
    }
    let mut evaluations = 2;
    while hi - lo > search.tolerance_db {
        let mid = 0.5 * (lo + hi);
        if ok(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
        evaluations += 1;
    }
    Ok(Threshold {
        threshold_db: 0.5 * (lo + hi),
        lo_db: lo,
        hi_db: hi,
        evaluations,
    })
}

/// Packages the first `iterations` DE tables as a decoder LUT, clamped to
/// [`DEFAULT_LLR_CLAMP`].
///
/// A trajectory that ended by convergence or stall is extended with its
/// last tables, which is where the recursion sits from then on.
pub fn export_lut(
    trajectory: &DeTrajectory,
    iterations: usize,
    shared_row_col: bool,
    design_snr_db: f64,
) -> Result<CombiningLut> {
    let tables: Vec<(MuTable, MuTable)> = trajectory.iterations.iter().map(|it| (it.row.mu, it.column.mu)).collect();
    lut_from_tables(
        &tables,
        trajectory.outcome != DeOutcome::MaxIterations,
        iterations,
        shared_row_col,
        design_snr_db,
    )
}

/// [`export_lut`] on bare per-iteration `(row, column)` tables. `extendable`
/// says whether the recursion ended by convergence or stall.
pub fn lut_from_tables(
    tables: &[(MuTable, MuTable)],
    extendable: bool,
    iterations: usize,
    shared_row_col: bool,
    design_snr_db: f64,
) -> Result<CombiningLut> {
    let available = tables.len();
    if available < iterations && !(extendable && available > 0) {
        return Err(Error::TrajectoryTooShort {
            available,
            required: iterations,
        });
    }
    let iterations = (0..iterations)
        .map(|l| {
            let (row, column) = tables[l.min(available - 1)];
            let row = row.clamped(DEFAULT_LLR_CLAMP);
            let column = if shared_row_col {
                row
            } else {
                column.clamped(DEFAULT_LLR_CLAMP)
            };
            LutIteration { row, column }
        })
        .collect();
    Ok(CombiningLut {
        design_snr_db,
        shared_row_col,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{ChannelModel, LlrMethod, Modulation};

    fn table15() -> TransitionTable {
        TransitionTable::exhaustive(&BchCode::new(4, 2).unwrap()).unwrap()
    }

    #[test]
    fn exhaustive_rows_are_distributions() {
        let t = table15();
        assert_eq!(t.entries.len(), 15);
        for e in &t.entries {
            let (p, q) = (e.p_e + e.p_c + e.p_eps, e.q_e + e.q_c + e.q_eps);
            assert!((p - 1.0).abs() < 1e-12 && (q - 1.0).abs() < 1e-12, "{e:?}");
        }
        assert_eq!(t.entries[1].p_c, 1.0);
        assert_eq!(t.entries[2].q_c, 1.0);
    }

    #[test]
    fn fixed_point_at_zero() {
        let t = table15();
        let ch = ChannelModel::new(Modulation::BiAwgn, 0.6, LlrMethod::Exact).unwrap();
        assert_eq!(de_step(&t, 0.0, &MixtureLlrModel::for_channel(&ch)), 0.0);
    }

    #[test]
    fn f_at_endpoints() {
        let t = table15();
        let f0 = f_eval(&t, 0.0);
        assert_eq!((f0.f_pc, f0.f_pe, f0.f_peps, f0.f_qc), (1.0, 0.0, 0.0, 1.0));
        let f1 = f_eval(&t, 1.0);
        let last = t.entries[14];
        assert_eq!(f1.values(), last.values());
    }

    #[test]
    fn mu_table_is_antisymmetric() {
        let t = table15();
        let m = mu_table(&f_eval(&t, 0.02), DEFAULT_LLR_CLAMP);
        assert_eq!(m.antisymmetry_error(), 0.0);
    }
}
