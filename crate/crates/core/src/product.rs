//! Two-dimensional product codes built from one BCH component code.

use std::sync::Arc;

use crate::bch::BchCode;
use crate::error::{Error, Result};

/// Square bit array, row-major, one bit (0/1) per byte.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    size: usize,
    bits: Vec<u8>,
}

impl BitMatrix {
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            bits: vec![0; size * size],
        }
    }

    pub fn from_vec(size: usize, bits: Vec<u8>) -> Result<Self> {
        if bits.len() != size * size {
            return Err(Error::LengthMismatch {
                expected: size * size,
                actual: bits.len(),
            });
        }
        Ok(Self {
            size,
            bits: bits.into_iter().map(|b| b & 1).collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.bits[row * self.size + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, bit: u8) {
        self.bits[row * self.size + col] = bit & 1;
    }

    #[inline]
    pub fn flip(&mut self, row: usize, col: usize) {
        self.bits[row * self.size + col] ^= 1;
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.bits[row * self.size..(row + 1) * self.size]
    }

    pub fn column(&self, col: usize) -> Vec<u8> {
        (0..self.size).map(|r| self.get(r, col)).collect()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.bits
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [u8] {
        &mut self.bits
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|&b| b as usize).sum()
    }

    pub fn hamming_distance(&self, other: &BitMatrix) -> usize {
        debug_assert_eq!(self.size, other.size);
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Bitwise complement.
    pub fn complement(&self) -> Self {
        Self {
            size: self.size,
            bits: self.bits.iter().map(|b| b ^ 1).collect(),
        }
    }
}

/// Square array of channel LLRs, `ln p(y|0)/p(y|1)`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct LlrMatrix {
    size: usize,
    values: Vec<f64>,
}

impl LlrMatrix {
    pub fn from_vec(size: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != size * size {
            return Err(Error::LengthMismatch {
                expected: size * size,
                actual: values.len(),
            });
        }
        Ok(Self { size, values })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.size + col]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    /// The hard decisions `B(L)`: 1 where the LLR is negative.
    pub fn hard_decisions(&self) -> BitMatrix {
        BitMatrix {
            size: self.size,
            bits: self.values.iter().map(|&l| hard_bit(l)).collect(),
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            size: self.size,
            values: self.values.iter().map(|l| -l).collect(),
        }
    }
}

/// `B(l)`: 1 for negative LLRs, 0 otherwise.
#[inline]
pub fn hard_bit(llr: f64) -> u8 {
    (llr < 0.0) as u8
}

/// An `(n^2, k^2)` product code using the same component for rows and columns.
#[derive(Debug, Clone)]
pub struct ProductCode {
    component: Arc<BchCode>,
}

impl ProductCode {
    pub fn new(component: BchCode) -> Self {
        Self {
            component: Arc::new(component),
        }
    }

    pub fn from_shared(component: Arc<BchCode>) -> Self {
        Self { component }
    }

    pub fn component(&self) -> &BchCode {
        &self.component
    }

    pub fn n(&self) -> usize {
        self.component.n()
    }

    pub fn k(&self) -> usize {
        self.component.k()
    }

    /// `k^2 / n^2`.
    pub fn rate(&self) -> f64 {
        let (n, k) = (self.n() as f64, self.k() as f64);
        k * k / (n * n)
    }

    /// Encodes a `k x k` message. The message lands in the lower-right
    /// corner (rows and columns `n-k..n`), matching the component layout.
    pub fn encode(&self, message: &BitMatrix) -> Result<BitMatrix> {
        let k = self.k();
        if message.size() != k {
            return Err(Error::LengthMismatch {
                expected: k * k,
                actual: message.size() * message.size(),
            });
        }
        let mut out = BitMatrix::zeros(self.n());
        self.encode_into(message.as_slice(), &mut out);
        Ok(out)
    }

    /// Encoder core over a flat `k*k` message.
    pub(crate) fn encode_into(&self, message: &[u8], out: &mut BitMatrix) {
        let code = &*self.component;
        let (n, k) = (code.n(), code.k());
        let r = n - k;
        let bits = out.as_mut_slice();
        for i in 0..k {
            let row = r + i;
            code.encode_into(&message[i * k..(i + 1) * k], &mut bits[row * n..(row + 1) * n]);
        }
        for j in 0..n {
            let parity = code.parity(|i| bits[(r + i) * n + j]);
            for i in 0..r {
                bits[i * n + j] = (parity >> i & 1) as u8;
            }
        }
    }

    /// Whether every row and column is a component codeword.
    pub fn is_codeword(&self, word: &BitMatrix) -> bool {
        let code = &*self.component;
        word.size() == self.n()
            && (0..self.n()).all(|i| code.is_codeword(word.row(i)) && code.is_codeword(&word.column(i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rate_of_255_product() {
        let pc = ProductCode::new(BchCode::new(8, 3).unwrap());
        // Quoted to three decimals by truncation: 0.82063 -> 0.820.
        assert_eq!((pc.rate() * 1000.0).floor(), 820.0);
        let pc = ProductCode::new(BchCode::new(9, 3).unwrap());
        assert_eq!((pc.rate() * 1000.0).floor(), 897.0);
    }

    #[test]
    fn zero_message_zero_codeword() {
        let pc = ProductCode::new(BchCode::new(4, 2).unwrap());
        let c = pc.encode(&BitMatrix::zeros(7)).unwrap();
        assert_eq!(c.count_ones(), 0);
        assert!(pc.encode(&BitMatrix::zeros(8)).is_err());
    }

    #[test]
    fn random_messages_encode_to_codewords() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pc = ProductCode::new(BchCode::new(5, 2).unwrap());
        for _ in 0..10 {
            let k = pc.k();
            let msg = BitMatrix::from_vec(k, (0..k * k).map(|_| rng.random_range(0..2)).collect()).unwrap();
            let c = pc.encode(&msg).unwrap();
            assert!(pc.is_codeword(&c));
            let r = pc.n() - k;
            for i in 0..k {
                for j in 0..k {
                    assert_eq!(c.get(r + i, r + j), msg.get(i, j));
                }
            }
        }
    }
}
