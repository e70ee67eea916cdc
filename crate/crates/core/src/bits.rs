use alloc::vec::Vec;

use crate::{Error, Result};

/// Square binary matrix stored row-major, one byte (0 or 1) per cell.
///
/// Holds QR symbols (1 = dark module), keystreams reshaped to a square, and
/// encrypted or extracted watermarks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    side: usize,
    bits: Vec<u8>,
}

impl BitMatrix {
    pub fn new(side: usize, bits: Vec<u8>) -> Result<Self> {
        if side == 0 || bits.len() != side * side {
            return Err(Error::BitCount {
                side,
                expected: side * side,
                found: bits.len(),
            });
        }
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::NotBinary(b));
        }
        Ok(Self { side, bits })
    }

    /// All-zero (all light) matrix.
    pub fn zeros(side: usize) -> Self {
        assert!(side > 0, "bit matrix side must be positive");
        Self {
            side,
            bits: alloc::vec![0; side * side],
        }
    }

    pub fn from_fn(side: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(side);
        for r in 0..side {
            for c in 0..side {
                m.bits[r * side + c] = f(r, c) as u8;
            }
        }
        m
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.bits
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.side + col] == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.bits[row * self.side + col] = value as u8;
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Number of cells that differ. Panics on a side mismatch.
    pub fn hamming_distance(&self, other: &Self) -> usize {
        assert_eq!(self.side, other.side, "bit matrix side mismatch");
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Copies `self` into the interior of a larger zero matrix at `offset`.
    pub fn embed_in(&self, side: usize, offset: (usize, usize)) -> Result<Self> {
        if offset.0 + self.side > side || offset.1 + self.side > side {
            return Err(Error::InvalidParam(
                "matrix does not fit at the given offset",
            ));
        }
        let mut out = Self::zeros(side);
        for r in 0..self.side {
            let dst = (offset.0 + r) * side + offset.1;
            out.bits[dst..dst + self.side]
                .copy_from_slice(&self.bits[r * self.side..(r + 1) * self.side]);
        }
        Ok(out)
    }

    /// The `side × side` sub-matrix whose top-left corner is `offset`.
    pub fn crop(&self, offset: (usize, usize), side: usize) -> Result<Self> {
        if side == 0 || offset.0 + side > self.side || offset.1 + side > self.side {
            return Err(Error::InvalidParam("crop window exceeds the matrix"));
        }
        let mut out = Self::zeros(side);
        for r in 0..side {
            let src = (offset.0 + r) * self.side + offset.1;
            out.bits[r * side..(r + 1) * side].copy_from_slice(&self.bits[src..src + side]);
        }
        Ok(out)
    }
}
