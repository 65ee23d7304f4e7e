//! Arithmetic in GF(2^v) through log/antilog tables.
//!
//! Elements are stored as `u16` bit patterns in the polynomial basis. The
//! primitive element is `x` (bit pattern `2`), and each degree uses one
//! fixed primitive polynomial from [`primitive_polynomial`].

use crate::error::{Error, Result};

pub type Gf = u16;

/// Canonical primitive polynomial for each supported degree, bit `i` being the
/// coefficient of `x^i`.
pub fn primitive_polynomial(v: u32) -> Option<u32> {
    let p = match v {
        2 => 0x7,      // x^2 + x + 1
        3 => 0xB,      // x^3 + x + 1
        4 => 0x13,     // x^4 + x + 1
        5 => 0x25,     // x^5 + x^2 + 1
        6 => 0x43,     // x^6 + x + 1
        7 => 0x89,     // x^7 + x^3 + 1
        8 => 0x11D,    // x^8 + x^4 + x^3 + x^2 + 1
        9 => 0x211,    // x^9 + x^4 + 1
        10 => 0x409,   // x^10 + x^3 + 1
        11 => 0x805,   // x^11 + x^2 + 1
        12 => 0x1053,  // x^12 + x^6 + x^4 + x + 1
        13 => 0x201B,  // x^13 + x^4 + x^3 + x + 1
        14 => 0x4443,  // x^14 + x^10 + x^6 + x + 1
        15 => 0x8003,  // x^15 + x + 1
        16 => 0x1100B, // x^16 + x^12 + x^3 + x + 1
        _ => return None,
    };
    Some(p)
}

/// The field GF(2^v).
#[derive(Debug, Clone)]
pub struct GaloisField {
    v: u32,
    order: usize,
    primitive_polynomial: u32,
    log: Vec<u32>,
    /// `antilog[i] = alpha^i` for `i` in `0..2*(order-1)`, doubled so that a
    /// sum of two logs never needs reduction.
    antilog: Vec<Gf>,
}

impl GaloisField {
    pub fn new(v: u32) -> Result<Self> {
        let poly = primitive_polynomial(v).ok_or(Error::UnsupportedField(v))?;
        Self::with_polynomial(v, poly)
    }

    /// Builds the field from an explicit polynomial, failing if it is not
    /// primitive.
    pub fn with_polynomial(v: u32, primitive_polynomial: u32) -> Result<Self> {
        if !(2..=16).contains(&v) || primitive_polynomial >> v != 1 {
            return Err(Error::UnsupportedField(v));
        }
        let order = 1usize << v;
        let n = order - 1;
        let mut log = vec![u32::MAX; order];
        let mut antilog = vec![0 as Gf; 2 * n];
        let mut a: u32 = 1;
        for i in 0..n {
            if log[a as usize] != u32::MAX {
                return Err(Error::InvalidArgument(format!(
                    "polynomial {primitive_polynomial:#x} is not primitive for v={v}"
                )));
            }
            log[a as usize] = i as u32;
            antilog[i] = a as Gf;
            a <<= 1;
            if a & (1 << v) != 0 {
                a ^= primitive_polynomial;
            }
        }
        if a != 1 {
            return Err(Error::InvalidArgument(format!(
                "polynomial {primitive_polynomial:#x} is not primitive for v={v}"
            )));
        }
        for i in n..2 * n {
            antilog[i] = antilog[i - n];
        }
        Ok(Self {
            v,
            order,
            primitive_polynomial,
            log,
            antilog,
        })
    }

    pub fn degree(&self) -> u32 {
        self.v
    }

    /// Number of elements, `2^v`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Multiplicative order of the primitive element, `2^v - 1`.
    pub fn multiplicative_order(&self) -> usize {
        self.order - 1
    }

    pub fn primitive_polynomial(&self) -> u32 {
        self.primitive_polynomial
    }

    /// Discrete logarithm of a nonzero element.
    #[inline]
    pub fn log(&self, a: Gf) -> u32 {
        debug_assert!(a != 0, "log of zero");
        self.log[a as usize]
    }

    /// `alpha^e` for any exponent.
    #[inline]
    pub fn exp(&self, e: usize) -> Gf {
        self.antilog[e % (self.order - 1)]
    }

    /// `alpha^e` for `e` below the multiplicative order.
    #[inline]
    pub fn exp_reduced(&self, e: usize) -> Gf {
        self.antilog[e]
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a == 0 || b == 0 {
            0
        } else {
            self.antilog[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    #[inline]
    pub fn inv(&self, a: Gf) -> Gf {
        debug_assert!(a != 0, "inverse of zero");
        let n = (self.order - 1) as u32;
        self.antilog[((n - self.log[a as usize]) % n) as usize]
    }

    #[inline]
    pub fn div(&self, a: Gf, b: Gf) -> Gf {
        if a == 0 {
            0
        } else {
            let n = (self.order - 1) as u32;
            self.antilog[(self.log[a as usize] + n - self.log[b as usize]) as usize]
        }
    }

    pub fn pow(&self, a: Gf, e: usize) -> Gf {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.order - 1;
        self.antilog[(self.log[a as usize] as usize * (e % n)) % n]
    }

    /// Cyclotomic coset of `s` modulo `2^v - 1`, in generation order.
    pub fn cyclotomic_coset(&self, s: usize) -> Vec<usize> {
        let n = self.order - 1;
        let s = s % n;
        let mut coset = vec![s];
        let mut e = (2 * s) % n;
        while e != s {
            coset.push(e);
            e = (2 * e) % n;
        }
        coset
    }

    /// Minimal polynomial of `alpha^s` over GF(2), bit `i` = coefficient of `x^i`.
    pub fn minimal_polynomial(&self, s: usize) -> u128 {
        // (x - a_1)(x - a_2)... with coefficients in GF(2^v); they land in GF(2).
        let mut coeffs: Vec<Gf> = vec![1];
        for e in self.cyclotomic_coset(s) {
            let root = self.exp(e);
            let mut next = vec![0 as Gf; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] ^= c;
                next[i] ^= self.mul(c, root);
            }
            coeffs = next;
        }
        coeffs.iter().enumerate().fold(0u128, |acc, (i, &c)| {
            debug_assert!(c <= 1, "minimal polynomial coefficient outside GF(2)");
            acc | ((c as u128 & 1) << i)
        })
    }
}

/// Carry-less product of two GF(2) polynomials.
pub(crate) fn poly_mul_gf2(a: u128, b: u128) -> u128 {
    let mut out = 0u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 != 0 {
            out ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    out
}

pub(crate) fn poly_degree(p: u128) -> u32 {
    127 - p.leading_zeros()
}
