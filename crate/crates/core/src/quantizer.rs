//! Scalar LLR quantizers: Lloyd-Max design and uniform baselines.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixture::GaussianMixture;

/// Iteration cap of [`lloyd_max_design`].
pub const LLOYD_MAX_ITERATIONS: usize = 200_000;
/// Convergence threshold on the largest boundary move.
pub const LLOYD_MAX_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LlrQuantizer {
    pub bits: u32,
    /// `2^bits - 1` increasing thresholds; cell `i` is `(b_{i-1}, b_i]`.
    pub boundaries: Vec<f64>,
    /// `2^bits` reconstruction values.
    pub levels: Vec<f64>,
}

impl LlrQuantizer {
    pub fn new(bits: u32, boundaries: Vec<f64>, levels: Vec<f64>) -> Result<Self> {
        if !(1..=8).contains(&bits) {
            return Err(Error::InvalidArgument(format!("quantizer resolution {bits} outside 1..=8")));
        }
        let cells = 1usize << bits;
        if levels.len() != cells || boundaries.len() != cells - 1 {
            return Err(Error::InvalidArgument(format!(
                "{bits}-bit quantizer needs {cells} levels and {} boundaries",
                cells - 1
            )));
        }
        if boundaries.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidArgument("quantizer boundaries must increase strictly".into()));
        }
        Ok(Self {
            bits,
            boundaries,
            levels,
        })
    }

    /// Symmetric mid-rise uniform quantizer with the given step.
    pub fn uniform(bits: u32, step: f64) -> Result<Self> {
        let cells = 1i64 << bits;
        let half = cells as f64 / 2.0;
        let levels = (0..cells).map(|i| (i as f64 - half + 0.5) * step).collect();
        let boundaries = (1..cells).map(|i| (i as f64 - half) * step).collect();
        Self::new(bits, boundaries, levels)
    }

    pub fn cell(&self, llr: f64) -> usize {
        self.boundaries.partition_point(|&b| b < llr)
    }

    #[inline]
    pub fn quantize(&self, llr: f64) -> f64 {
        self.levels[self.cell(llr)]
    }

    pub fn quantize_in_place(&self, llrs: &mut [f64]) {
        for l in llrs {
            *l = self.quantize(*l);
        }
    }

    /// Mean squared error under `density`.
    pub fn mse(&self, density: &GaussianMixture) -> f64 {
        let mut total = 0.0;
        for (i, &q) in self.levels.iter().enumerate() {
            let a = if i == 0 { f64::NEG_INFINITY } else { self.boundaries[i - 1] };
            let b = self.boundaries.get(i).copied().unwrap_or(f64::INFINITY);
            let (p, e1, e2) = density.moments(a, b);
            total += e2 - 2.0 * q * e1 + q * q * p;
        }
        total
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("quantizer serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: LlrQuantizer =
            serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("quantizer JSON: {e}")))?;
        Self::new(raw.bits, raw.boundaries, raw.levels)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}

/// Mirrors `v` around zero in place: `v[i] = (v[i] - v[len-1-i]) / 2`.
fn symmetrize(v: &mut [f64]) {
    let n = v.len();
    for i in 0..n / 2 {
        let x = 0.5 * (v[n - 1 - i] - v[i]);
        v[i] = -x;
        v[n - 1 - i] = x;
    }
    if n % 2 == 1 {
        v[n / 2] = 0.0;
    }
}

/// Lloyd-Max design for a density symmetric about zero.
///
/// Starts from uniform boundaries on the effective support and alternates
/// centroid and midpoint updates until no boundary moves by more than
/// [`LLOYD_MAX_TOLERANCE`].
pub fn lloyd_max_design(density: &GaussianMixture, bits: u32) -> Result<LlrQuantizer> {
    if !(1..=8).contains(&bits) {
        return Err(Error::InvalidArgument(format!("quantizer resolution {bits} outside 1..=8")));
    }
    let cells = 1usize << bits;
    let mut support = density.effective_support();
    if !(support > 0.0) {
        support = 1.0;
    }
    let step = 2.0 * support / cells as f64;
    let mut boundaries: Vec<f64> = (1..cells).map(|i| (i as f64 - cells as f64 / 2.0) * step).collect();
    let mut levels = vec![0.0; cells];
    let mut shift = f64::INFINITY;
    for _ in 0..LLOYD_MAX_ITERATIONS {
        for i in 0..cells {
            let a = if i == 0 { f64::NEG_INFINITY } else { boundaries[i - 1] };
            let b = boundaries.get(i).copied().unwrap_or(f64::INFINITY);
            let (p, e1, _) = density.moments(a, b);
            levels[i] = if p > 1e-300 {
                e1 / p
            } else if i == 0 {
                b - step / 2.0
            } else if i == cells - 1 {
                a + step / 2.0
            } else {
                0.5 * (a + b)
            };
        }
        symmetrize(&mut levels);
        shift = 0.0;
        for i in 0..cells - 1 {
            let nb = 0.5 * (levels[i] + levels[i + 1]);
            shift = f64::max(shift, (nb - boundaries[i]).abs());
            boundaries[i] = nb;
        }
        symmetrize(&mut boundaries);
        if shift < LLOYD_MAX_TOLERANCE {
            return LlrQuantizer::new(bits, boundaries, levels);
        }
    }
    Err(Error::NoConvergence {
        iterations: LLOYD_MAX_ITERATIONS,
        shift,
    })
}

/// The minimum-MSE symmetric uniform quantizer, by grid search over steps
/// followed by golden-section refinement.
pub fn best_uniform_quantizer(density: &GaussianMixture, bits: u32) -> Result<LlrQuantizer> {
    let cells = (1usize << bits) as f64;
    let max_step = 4.0 * density.effective_support().max(1e-12) / cells;
    let mse = |s: f64| LlrQuantizer::uniform(bits, s).map(|q| q.mse(density));
    let grid = 2000;
    let mut best = (f64::INFINITY, max_step);
    for i in 1..=grid {
        let s = max_step * i as f64 / grid as f64;
        let e = mse(s)?;
        if e < best.0 {
            best = (e, s);
        }
    }
    let h = max_step / grid as f64;
    let (mut lo, mut hi) = ((best.1 - h).max(h * 1e-3), best.1 + h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..100 {
        let x1 = hi - g * (hi - lo);
        let x2 = lo + g * (hi - lo);
        if mse(x1)? < mse(x2)? {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    LlrQuantizer::uniform(bits, 0.5 * (lo + hi))
}
