//! Combining lookup tables: the reliability `mu~` added to the channel LLR
//! for each (BDD output, channel sign) pair.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Saturation bound applied to table entries, in LLR units.
pub const DEFAULT_LLR_CLAMP: f64 = 64.0;

/// Six reliabilities indexed by BDD output `mu_bar in {-1, +1, 0}` and channel
/// sign `l_hat in {-1, +1}`.
///
/// Storage order: `(-1,-1), (+1,-1), (0,-1), (-1,+1), (+1,+1), (0,+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MuTable(pub [f64; 6]);

impl MuTable {
    pub const ZERO: MuTable = MuTable([0.0; 6]);

    /// Position of `(mu_bar, l_hat)` in the storage order.
    #[inline]
    pub fn index(mu_bar: i8, l_hat: i8) -> usize {
        let m = match mu_bar {
            -1 => 0,
            1 => 1,
            _ => 2,
        };
        if l_hat < 0 {
            m
        } else {
            3 + m
        }
    }

    #[inline]
    pub fn get(&self, mu_bar: i8, l_hat: i8) -> f64 {
        self.0[Self::index(mu_bar, l_hat)]
    }

    /// Largest violation of `mu(m, s) = -mu(-m, -s)`.
    pub fn antisymmetry_error(&self) -> f64 {
        let v = &self.0;
        [(0, 4), (1, 3), (2, 5)]
            .iter()
            .map(|&(a, b)| (v[a] + v[b]).abs())
            .fold(0.0, f64::max)
    }

    pub fn clamped(&self, bound: f64) -> MuTable {
        MuTable(self.0.map(|x| x.clamp(-bound, bound)))
    }
}

/// Tables for one decoding iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LutIteration {
    pub row: MuTable,
    pub column: MuTable,
}

/// Per-iteration combining tables for the iBDD-CR decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct CombiningLut {
    pub design_snr_db: f64,
    pub shared_row_col: bool,
    pub iterations: Vec<LutIteration>,
}

#[derive(Serialize, Deserialize)]
struct LutFile {
    design_snr_db: f64,
    #[serde(default = "default_true")]
    shared_row_col: bool,
    iterations: Vec<LutFileEntry>,
}

#[derive(Serialize, Deserialize)]
struct LutFileEntry {
    mu: MuTable,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu_col: Option<MuTable>,
}

fn default_true() -> bool {
    true
}

impl CombiningLut {
    /// A LUT using one table per iteration for both rows and columns.
    pub fn shared(design_snr_db: f64, tables: impl IntoIterator<Item = MuTable>) -> Self {
        Self {
            design_snr_db,
            shared_row_col: true,
            iterations: tables
                .into_iter()
                .map(|t| LutIteration { row: t, column: t })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.iterations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.iterations.is_empty()
    }

    pub fn to_json(&self) -> String {
        let file = LutFile {
            design_snr_db: self.design_snr_db,
            shared_row_col: self.shared_row_col,
            iterations: self
                .iterations
                .iter()
                .map(|it| LutFileEntry {
                    mu: it.row,
                    mu_col: (!self.shared_row_col).then_some(it.column),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("LUT serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        let file: LutFile = serde_json::from_str(text)?;
        Ok(Self {
            design_snr_db: file.design_snr_db,
            shared_row_col: file.shared_row_col,
            iterations: file
                .iterations
                .into_iter()
                .map(|e| LutIteration {
                    row: e.mu,
                    column: if file.shared_row_col { e.mu } else { e.mu_col.unwrap_or(e.mu) },
                })
                .collect(),
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| Error::json(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_order() {
        assert_eq!(MuTable::index(-1, -1), 0);
        assert_eq!(MuTable::index(1, -1), 1);
        assert_eq!(MuTable::index(0, -1), 2);
        assert_eq!(MuTable::index(-1, 1), 3);
        assert_eq!(MuTable::index(1, 1), 4);
        assert_eq!(MuTable::index(0, 1), 5);
    }

    #[test]
    fn json_roundtrip_is_exact() {
        let t = MuTable([-3.25, 1.0 / 3.0, -0.1, -1.0 / 3.0, 3.25, 0.1]);
        let lut = CombiningLut::shared(4.4, [t, t.clamped(1.0)]);
        let back = CombiningLut::from_json(&lut.to_json()).unwrap();
        assert_eq!(back, lut);

        let mut split = lut.clone();
        split.shared_row_col = false;
        split.iterations[0].column = MuTable::ZERO;
        assert_eq!(CombiningLut::from_json(&split.to_json()).unwrap(), split);
    }
}
