use core::f64::consts::{FRAC_1_SQRT_2, PI};
use core::ops::{Index, IndexMut};

use super::zigzag::{zigzag_index_map, zigzag_position};
use crate::image::Block;

/// 64 DCT coefficients in zig-zag scan order; index 0 is DC.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffBlock(pub [f64; 64]);

impl CoeffBlock {
    pub const ZERO: Self = Self([0.0; 64]);

    pub fn as_array(&self) -> &[f64; 64] {
        &self.0
    }
}

impl Index<usize> for CoeffBlock {
    type Output = f64;

    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

impl IndexMut<usize> for CoeffBlock {
    fn index_mut(&mut self, k: usize) -> &mut f64 {
        &mut self.0[k]
    }
}

/// Orthonormal 8×8 DCT-II as a separable matrix product `C · S · Cᵀ`.
///
/// No level shift is applied: a constant block of value `c` has DC `8c`.
#[derive(Debug, Clone)]
pub struct Dct8 {
    /// `basis[u][x] = α(u) cos((2x + 1) u π / 16)` with `α(0) = √(1/8)`,
    /// `α(u > 0) = √(2/8)`.
    basis: [[f64; 8]; 8],
}

impl Default for Dct8 {
    fn default() -> Self {
        Self::new()
    }
}

impl Dct8 {
    pub fn new() -> Self {
        let mut basis = [[0.0; 8]; 8];
        for (u, row) in basis.iter_mut().enumerate() {
            let alpha = if u == 0 { FRAC_1_SQRT_2 * 0.5 } else { 0.5 };
            for (x, b) in row.iter_mut().enumerate() {
                *b = alpha * libm::cos((2 * x + 1) as f64 * u as f64 * PI / 16.0);
            }
        }
        Self { basis }
    }

    #[allow(clippy::needless_range_loop)]
    pub fn forward(&self, block: &Block) -> CoeffBlock {
        let c = &self.basis;
        // tmp = C · S
        let mut tmp = [[0.0; 8]; 8];
        for u in 0..8 {
            for y in 0..8 {
                tmp[u][y] = (0..8).map(|x| c[u][x] * block[x][y]).sum();
            }
        }
        let mut out = CoeffBlock::ZERO;
        for u in 0..8 {
            for v in 0..8 {
                out.0[zigzag_position(u, v)] = (0..8).map(|y| tmp[u][y] * c[v][y]).sum();
            }
        }
        out
    }

    pub fn inverse(&self, coeffs: &CoeffBlock) -> Block {
        let c = &self.basis;
        let mut freq = [[0.0; 8]; 8];
        for (k, &(u, v)) in zigzag_index_map().iter().enumerate() {
            freq[u as usize][v as usize] = coeffs.0[k];
        }
        // tmp = Cᵀ · F
        let mut tmp = [[0.0; 8]; 8];
        for x in 0..8 {
            for v in 0..8 {
                tmp[x][v] = (0..8).map(|u| c[u][x] * freq[u][v]).sum();
            }
        }
        let mut out = [[0.0; 8]; 8];
        for x in 0..8 {
            for y in 0..8 {
                out[x][y] = (0..8).map(|v| tmp[x][v] * c[v][y]).sum();
            }
        }
        out
    }
}

/// Orthonormal DCT-II of one block, zig-zag ordered.
pub fn dct_8x8(block: &Block) -> CoeffBlock {
    Dct8::new().forward(block)
}

/// Inverse of [`dct_8x8`].
pub fn idct_8x8(coeffs: &CoeffBlock) -> Block {
    Dct8::new().inverse(coeffs)
}
