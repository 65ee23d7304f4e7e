//! Narrow-sense binary BCH codes and their bounded-distance decoder.
//!
//! Bit layout: position `i` of a word carries the coefficient of `x^i`.
//! Systematic encoding places the `n - k` parity bits at positions
//! `0..n-k` and the message at positions `n-k..n`.

use crate::error::{Error, Result};
use crate::gf::{poly_degree, poly_mul_gf2, GaloisField, Gf};

/// Largest correction capability the decoder supports.
pub const MAX_T: usize = 32;
/// Largest `t` decoded by direct locator solving.
const PETERSON_MAX_T: usize = 3;

/// Odd-indexed syndromes `S_1, S_3, ..., S_{2t-1}`; the even ones follow by
/// squaring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Syndromes {
    odd: [Gf; MAX_T],
    t: usize,
}

impl Syndromes {
    fn zero(t: usize) -> Self {
        Self {
            odd: [0; MAX_T],
            t,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.odd[..self.t].iter().all(|&s| s == 0)
    }

    pub fn odd(&self) -> &[Gf] {
        &self.odd[..self.t]
    }
}

/// Error positions found by the decoder (at most `t`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErrorPattern {
    positions: [u16; MAX_T],
    len: usize,
}

impl ErrorPattern {
    const EMPTY: Self = Self {
        positions: [0; MAX_T],
        len: 0,
    };

    pub fn positions(&self) -> &[u16] {
        &self.positions[..self.len]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, position: usize) -> bool {
        self.positions().iter().any(|&p| p as usize == position)
    }
}

/// Result of bounded-distance decoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    /// A codeword within distance `t` was found (possibly a miscorrection).
    Corrected { codeword: Vec<u8>, flips: usize },
    /// No codeword lies within distance `t`.
    Failure,
}

impl DecodeOutcome {
    pub fn is_corrected(&self) -> bool {
        matches!(self, DecodeOutcome::Corrected { .. })
    }

    /// The "output its input" convention: the decoded word, or the input on failure.
    pub fn into_word_or(self, input: &[u8]) -> Vec<u8> {
        match self {
            DecodeOutcome::Corrected { codeword, .. } => codeword,
            DecodeOutcome::Failure => input.to_vec(),
        }
    }
}

/// A binary narrow-sense BCH code of length `2^v - 1`.
#[derive(Debug, Clone)]
pub struct BchCode {
    field: GaloisField,
    v: u32,
    t: usize,
    n: usize,
    k: usize,
    generator: u128,
    /// `alpha^((2j+1) p)` at `[p * t + j]`.
    position_powers: Vec<Gf>,
    /// Syndrome contribution of byte value `b` at byte offset `q`, stored at
    /// `[(q * 256 + b) * t + j]`.
    byte_syndromes: Vec<Gf>,
    /// A root `y` of `y^2 + y = c` at index `c`, or 0 if there is none.
    quadratic_roots: Vec<Gf>,
    /// Roots of `w^3 + w = c` at index `c` (count, roots).
    cubic_roots: Vec<(u8, [Gf; 3])>,
}

impl BchCode {
    /// Builds the narrow-sense code correcting `t` errors over GF(2^v).
    pub fn new(v: u32, t: usize) -> Result<Self> {
        let invalid = |reason: String| Error::InvalidCode {
            v,
            t: t as u32,
            reason,
        };
        if v < 3 {
            return Err(invalid("field degree must be at least 3".into()));
        }
        if t == 0 || t > MAX_T {
            return Err(invalid(format!("t must lie in 1..={MAX_T}")));
        }
        let field = GaloisField::new(v)?;
        let n = field.multiplicative_order();
        let redundancy = v as usize * t;
        if redundancy >= n {
            return Err(invalid(format!("v*t = {redundancy} must be below n = {n}")));
        }
        if redundancy > 128 {
            return Err(invalid(format!(
                "redundancy {redundancy} exceeds the 128-bit encoder register"
            )));
        }

        // lcm of the minimal polynomials of alpha^1..alpha^(2t); even powers
        // share a coset with an odd one.
        let mut covered = vec![false; n];
        let mut generator: u128 = 1;
        for s in (1..2 * t).step_by(2) {
            if covered[s] {
                continue;
            }
            for e in field.cyclotomic_coset(s) {
                covered[e] = true;
            }
            let m = field.minimal_polynomial(s);
            if poly_degree(generator) + poly_degree(m) > 128 {
                return Err(invalid("generator degree exceeds 128".into()));
            }
            generator = poly_mul_gf2(generator, m);
        }
        let degree = poly_degree(generator) as usize;
        if degree != redundancy {
            return Err(invalid(format!(
                "generator degree {degree} differs from v*t = {redundancy}"
            )));
        }
        let k = n - redundancy;

        let mut position_powers = vec![0; n * t];
        for p in 0..n {
            for j in 0..t {
                position_powers[p * t + j] = field.exp((2 * j + 1) * p);
            }
        }

        let n_bytes = n.div_ceil(8);
        let mut byte_syndromes = vec![0 as Gf; n_bytes * 256 * t];
        for q in 0..n_bytes {
            let base = q * 256 * t;
            for b in 1..256usize {
                let low = b.trailing_zeros() as usize;
                let rest = b & (b - 1);
                let p = 8 * q + low;
                for j in 0..t {
                    let single = if p < n { position_powers[p * t + j] } else { 0 };
                    byte_syndromes[base + b * t + j] = byte_syndromes[base + rest * t + j] ^ single;
                }
            }
        }

        let size = n + 1;
        let mut quadratic_roots = vec![0 as Gf; size];
        let mut cubic_roots = vec![(0u8, [0 as Gf; 3]); size];
        for w in 0..size as Gf {
            let sq = field.mul(w, w);
            quadratic_roots[(sq ^ w) as usize] = w;
            let e = &mut cubic_roots[(field.mul(sq, w) ^ w) as usize];
            e.1[e.0 as usize] = w;
            e.0 += 1;
        }

        Ok(Self {
            field,
            v,
            t,
            n,
            k,
            generator,
            position_powers,
            byte_syndromes,
            quadratic_roots,
            cubic_roots,
        })
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Design distance `2t + 1`.
    pub fn d_min(&self) -> usize {
        2 * self.t + 1
    }

    /// Generator polynomial, bit `i` = coefficient of `x^i`.
    pub fn generator(&self) -> u128 {
        self.generator
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// Positions holding the message in a systematic codeword.
    pub fn message_positions(&self) -> std::ops::Range<usize> {
        self.n - self.k..self.n
    }

    /// Systematic encoding of a `k`-bit message (one bit per byte, 0/1).
    pub fn encode(&self, message: &[u8]) -> Result<Vec<u8>> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                actual: message.len(),
            });
        }
        let mut out = vec![0u8; self.n];
        self.encode_into(message, &mut out);
        Ok(out)
    }

    /// Unchecked encoder core; `message.len() == k` and `out.len() == n`.
    pub(crate) fn encode_into(&self, message: &[u8], out: &mut [u8]) {
        let r = self.n - self.k;
        let parity = self.parity(|j| message[j]);
        for (i, slot) in out[..r].iter_mut().enumerate() {
            *slot = (parity >> i & 1) as u8;
        }
        out[r..].copy_from_slice(message);
    }

    /// Remainder of `x^(n-k) m(x)` modulo the generator, with message bit `j`
    /// supplied by `bit(j)`.
    pub(crate) fn parity(&self, bit: impl Fn(usize) -> u8) -> u128 {
        let r = self.n - self.k;
        let mask = if r == 128 { u128::MAX } else { (1u128 << r) - 1 };
        let low = self.generator & mask;
        let mut reg: u128 = 0;
        for j in (0..self.k).rev() {
            let feedback = (bit(j) as u128 & 1) ^ (reg >> (r - 1) & 1);
            reg = (reg << 1) & mask;
            if feedback != 0 {
                reg ^= low;
            }
        }
        reg
    }

    /// Odd syndromes of an `n`-bit word.
    pub fn syndromes(&self, word: &[u8]) -> Syndromes {
        debug_assert_eq!(word.len(), self.n);
        let t = self.t;
        let mut syn = Syndromes::zero(t);
        for (q, chunk) in word.chunks(8).enumerate() {
            let mut byte = 0usize;
            for (s, &b) in chunk.iter().enumerate() {
                byte |= ((b & 1) as usize) << s;
            }
            if byte == 0 {
                continue;
            }
            let base = (q * 256 + byte) * t;
            for j in 0..t {
                syn.odd[j] ^= self.byte_syndromes[base + j];
            }
        }
        syn
    }

    /// Odd syndromes of the word whose ones sit at `positions`.
    pub fn syndromes_of_positions(&self, positions: impl IntoIterator<Item = usize>) -> Syndromes {
        let t = self.t;
        let mut syn = Syndromes::zero(t);
        for p in positions {
            let row = &self.position_powers[p * t..p * t + t];
            for j in 0..t {
                syn.odd[j] ^= row[j];
            }
        }
        syn
    }

    /// Updates `syn` for a flip of the bit at `position`.
    pub fn toggle_position(&self, syn: &mut Syndromes, position: usize) {
        let row = &self.position_powers[position * self.t..(position + 1) * self.t];
        for (s, &r) in syn.odd.iter_mut().zip(row) {
            *s ^= r;
        }
    }

    /// Error positions of the unique pattern of weight at most `t` matching
    /// the syndromes, or `None` when decoding fails.
    ///
    /// Uses direct error-locator solving for `t <= 3` and Berlekamp-Massey
    /// otherwise; both end in a Chien search and a syndrome re-check.
    pub fn locate(&self, syn: &Syndromes) -> Option<ErrorPattern> {
        if syn.is_zero() {
            return Some(ErrorPattern::EMPTY);
        }
        let locator = if self.t <= PETERSON_MAX_T {
            self.peterson_locator(syn)?
        } else {
            self.berlekamp_massey_locator(syn)?
        };
        self.finish(syn, &locator)
    }

    /// Same as [`locate`](Self::locate) but always through Berlekamp-Massey.
    pub fn locate_berlekamp_massey(&self, syn: &Syndromes) -> Option<ErrorPattern> {
        if syn.is_zero() {
            return Some(ErrorPattern::EMPTY);
        }
        let locator = self.berlekamp_massey_locator(syn)?;
        self.finish(syn, &locator)
    }

    fn finish(&self, syn: &Syndromes, locator: &Locator) -> Option<ErrorPattern> {
        let pattern = match locator.degree {
            2 => self.quadratic_positions(locator)?,
            3 => self.cubic_positions(locator)?,
            _ => self.chien(locator)?,
        };
        let check = self.syndromes_of_positions(pattern.positions().iter().map(|&p| p as usize));
        (check == *syn).then_some(pattern)
    }

    /// Decodes the word at `word` (no allocation); `None` on failure.
    pub fn decode_errors(&self, word: &[u8]) -> Option<ErrorPattern> {
        self.locate(&self.syndromes(word))
    }

    /// Bounded-distance decoding of an `n`-bit word.
    pub fn bdd_decode(&self, word: &[u8]) -> Result<DecodeOutcome> {
        self.check_len(word)?;
        Ok(match self.decode_errors(word) {
            Some(pattern) => {
                let mut codeword = word.to_vec();
                for &p in pattern.positions() {
                    codeword[p as usize] ^= 1;
                }
                DecodeOutcome::Corrected {
                    codeword,
                    flips: pattern.len(),
                }
            }
            None => DecodeOutcome::Failure,
        })
    }

    /// Extrinsic decoding of one bit: the input at `position` is replaced by
    /// `channel_bit`, the word is decoded, and the decoded value at
    /// `position` is returned as `+1` (bit 0) or `-1` (bit 1); `0` on failure.
    pub fn extrinsic_bdd_decode(
        &self,
        decoder_input: &[u8],
        position: usize,
        channel_bit: u8,
    ) -> Result<i8> {
        self.check_len(decoder_input)?;
        if position >= self.n {
            return Err(Error::IndexOutOfRange {
                index: position,
                len: self.n,
            });
        }
        let mut syn = self.syndromes(decoder_input);
        if (decoder_input[position] ^ channel_bit) & 1 == 1 {
            self.toggle_position(&mut syn, position);
        }
        Ok(match self.locate(&syn) {
            Some(pattern) => {
                let bit = (channel_bit & 1) ^ pattern.contains(position) as u8;
                if bit == 0 {
                    1
                } else {
                    -1
                }
            }
            None => 0,
        })
    }

    /// Whether `word` has zero syndrome.
    pub fn is_codeword(&self, word: &[u8]) -> bool {
        word.len() == self.n && self.syndromes(word).is_zero()
    }

    fn check_len(&self, word: &[u8]) -> Result<()> {
        if word.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: word.len(),
            });
        }
        Ok(())
    }

    fn full_syndromes(&self, syn: &Syndromes) -> [Gf; 2 * MAX_T + 1] {
        // index i holds S_i, i = 1..=2t
        let f = &self.field;
        let mut s = [0 as Gf; 2 * MAX_T + 1];
        for j in 0..self.t {
            s[2 * j + 1] = syn.odd[j];
        }
        for i in 1..=self.t {
            s[2 * i] = f.mul(s[i], s[i]);
        }
        s
    }

    /// Peterson's direct solve: the largest `nu <= t` with a nonsingular
    /// syndrome matrix fixes the locator.
    fn peterson_locator(&self, syn: &Syndromes) -> Option<Locator> {
        let f = &self.field;
        let s = self.full_syndromes(syn);
        if syn.odd[0] != 0 && self.t >= 1 {
            // Fast path for a single error: S_{2j+1} = S_1^(2j+1) for all j.
            let l1 = f.log(syn.odd[0]) as usize;
            if (1..self.t).all(|j| syn.odd[j] == f.exp(l1 * (2 * j + 1))) {
                let mut loc = Locator::one();
                loc.coeffs[1] = syn.odd[0];
                loc.degree = 1;
                return Some(loc);
            }
        }
        for nu in (1..=self.t).rev() {
            // sum_{j=1..nu} L_j S_{nu+i+1-j} = S_{nu+i+1},  i = 0..nu-1
            let mut a = [[0 as Gf; PETERSON_MAX_T + 1]; PETERSON_MAX_T];
            for i in 0..nu {
                for j in 1..=nu {
                    a[i][j - 1] = s[nu + i + 1 - j];
                }
                a[i][nu] = s[nu + i + 1];
            }
            if let Some(sol) = solve_gf(f, &mut a, nu) {
                let mut loc = Locator::one();
                for j in 1..=nu {
                    loc.coeffs[j] = sol[j - 1];
                }
                loc.degree = nu;
                if loc.coeffs[nu] == 0 {
                    return None;
                }
                return Some(loc);
            }
        }
        None
    }

    fn berlekamp_massey_locator(&self, syn: &Syndromes) -> Option<Locator> {
        let f = &self.field;
        let s = self.full_syndromes(syn);
        let two_t = 2 * self.t;
        let mut c = [0 as Gf; 2 * MAX_T + 2];
        let mut b = [0 as Gf; 2 * MAX_T + 2];
        c[0] = 1;
        b[0] = 1;
        let mut l = 0usize;
        let mut m = 1usize;
        let mut bb: Gf = 1;
        for step in 0..two_t {
            // discrepancy d = S_{step+1} + sum_{i=1..l} c_i S_{step+1-i}
            let mut d = s[step + 1];
            for i in 1..=l {
                d ^= f.mul(c[i], s[step + 1 - i]);
            }
            if d == 0 {
                m += 1;
                continue;
            }
            let coef = f.div(d, bb);
            if 2 * l <= step {
                let prev = c;
                for i in 0..(two_t + 1 - m) {
                    c[i + m] ^= f.mul(coef, b[i]);
                }
                l = step + 1 - l;
                b = prev;
                bb = d;
                m = 1;
            } else {
                for i in 0..(two_t + 1 - m) {
                    c[i + m] ^= f.mul(coef, b[i]);
                }
                m += 1;
            }
        }
        if l > self.t || l == 0 {
            return None;
        }
        if c[l] == 0 || c[l + 1..=two_t].iter().any(|&x| x != 0) {
            return None;
        }
        let mut loc = Locator::one();
        loc.coeffs[..=l].copy_from_slice(&c[..=l]);
        loc.degree = l;
        Some(loc)
    }

    /// Roots of the locator among `alpha^(-p)`, `p in 0..n`; `None` unless
    /// exactly `degree` distinct roots exist.
    /// Error positions from locator roots `X = alpha^p`, rejecting repeats.
    fn pattern_from_locators(&self, xs: &[Gf]) -> Option<ErrorPattern> {
        let mut out = ErrorPattern::EMPTY;
        for (i, &x) in xs.iter().enumerate() {
            if x == 0 || xs[..i].contains(&x) {
                return None;
            }
            out.positions[i] = self.field.log(x) as u16;
        }
        out.len = xs.len();
        out.positions[..out.len].sort_unstable();
        Some(out)
    }

    /// Roots of `x^2 + L1 x + L2` via `x = L1 y`, `y^2 + y = L2 / L1^2`.
    fn quadratic_positions(&self, loc: &Locator) -> Option<ErrorPattern> {
        let f = &self.field;
        let (l1, l2) = (loc.coeffs[1], loc.coeffs[2]);
        if l1 == 0 {
            return None;
        }
        let c = f.div(l2, f.mul(l1, l1));
        let y = self.quadratic_roots[c as usize];
        if y == 0 {
            return None;
        }
        self.pattern_from_locators(&[f.mul(l1, y), f.mul(l1, y ^ 1)])
    }

    /// Roots of `x^3 + L1 x^2 + L2 x + L3` via `x = y + L1`, which leaves
    /// `y^3 + A y + B` with `A = L1^2 + L2`, `B = L1 L2 + L3`.
    fn cubic_positions(&self, loc: &Locator) -> Option<ErrorPattern> {
        let f = &self.field;
        let (l1, l2, l3) = (loc.coeffs[1], loc.coeffs[2], loc.coeffs[3]);
        let a = f.mul(l1, l1) ^ l2;
        let b = f.mul(l1, l2) ^ l3;
        let n = self.n;
        let mut ys = [0 as Gf; 3];
        if a == 0 {
            // y^3 = B needs three distinct cube roots.
            if b == 0 || n % 3 != 0 {
                return None;
            }
            let lb = f.log(b) as usize;
            if lb % 3 != 0 {
                return None;
            }
            for (k, y) in ys.iter_mut().enumerate() {
                *y = f.exp_reduced(lb / 3 + k * n / 3);
            }
        } else {
            // y = s w with s^2 = A turns it into w^3 + w = B / s^3.
            let half = (n + 1) / 2;
            let s = f.exp_reduced(f.log(a) as usize * half % n);
            let c = f.div(b, f.mul(s, f.mul(s, s)));
            let (count, ws) = self.cubic_roots[c as usize];
            if count != 3 {
                return None;
            }
            for (y, &w) in ys.iter_mut().zip(&ws) {
                *y = f.mul(s, w);
            }
        }
        self.pattern_from_locators(&ys.map(|y| y ^ l1))
    }

    fn chien(&self, loc: &Locator) -> Option<ErrorPattern> {
        let f = &self.field;
        let n = self.n;
        let mut out = ErrorPattern::EMPTY;
        if loc.degree == 1 {
            let p = f.log(loc.coeffs[1]) as usize;
            out.positions[0] = p as u16;
            out.len = 1;
            return Some(out);
        }
        // term_j(p) = L_j alpha^(-j p), tracked in the log domain.
        let mut logs = [0usize; MAX_T + 1];
        let mut steps = [0usize; MAX_T + 1];
        let mut active = [0usize; MAX_T + 1];
        let mut n_active = 0;
        for j in 1..=loc.degree {
            if loc.coeffs[j] != 0 {
                logs[n_active] = f.log(loc.coeffs[j]) as usize;
                steps[n_active] = (n - (j % n)) % n;
                active[n_active] = j;
                n_active += 1;
            }
        }
        for p in 0..n {
            let mut sum: Gf = 1;
            for a in 0..n_active {
                sum ^= f.exp_reduced(logs[a]);
                logs[a] += steps[a];
                if logs[a] >= n {
                    logs[a] -= n;
                }
            }
            if sum == 0 {
                out.positions[out.len] = p as u16;
                out.len += 1;
                if out.len == loc.degree {
                    return Some(out);
                }
            }
        }
        None
    }
}

#[derive(Clone, Copy)]
struct Locator {
    coeffs: [Gf; MAX_T + 1],
    degree: usize,
}

impl Locator {
    fn one() -> Self {
        let mut coeffs = [0; MAX_T + 1];
        coeffs[0] = 1;
        Self { coeffs, degree: 0 }
    }
}

/// Gauss-Jordan on an augmented `nu x (nu+1)` system; `None` if singular.
fn solve_gf(f: &GaloisField, a: &mut [[Gf; PETERSON_MAX_T + 1]; PETERSON_MAX_T], nu: usize) -> Option<[Gf; PETERSON_MAX_T]> {
    for col in 0..nu {
        let pivot = (col..nu).find(|&r| a[r][col] != 0)?;
        a.swap(col, pivot);
        let inv = f.inv(a[col][col]);
        for c in col..=nu {
            a[col][c] = f.mul(a[col][c], inv);
        }
        for r in 0..nu {
            if r != col && a[r][col] != 0 {
                let factor = a[r][col];
                for c in col..=nu {
                    let term = f.mul(factor, a[col][c]);
                    a[r][c] ^= term;
                }
            }
        }
    }
    let mut out = [0; PETERSON_MAX_T];
    for i in 0..nu {
        out[i] = a[i][nu];
    }
    Some(out)
}
