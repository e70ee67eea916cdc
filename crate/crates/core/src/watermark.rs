//! Blind one-bit-per-block watermarking in the DCT mid band.
//!
//! For each carrier block that receives a bit, the three coefficients at
//! mid-band labels `i-1, i, i+1` are overwritten with `mean ± λ`, where
//! `mean` is the average of the ten coefficients at labels `i-6..=i-2` and
//! `i+2..=i+6`. The detector recomputes that mean and takes a majority vote
//! over the three centres, so it never needs the original image.
//!
//! Bits go to the first `wm_side²` blocks of the Arnold-scrambled grid in
//! row-major order, which spreads them pseudo-randomly over the image.

use alloc::vec::Vec;

use crate::bits::BitMatrix;
use crate::chaos::ChaosParams;
use crate::image::{merge_blocks, split_blocks, GrayImage};
use crate::metrics::psnr;
use crate::transforms::{
    label_to_global, scramble_blocks, unscramble_blocks, ArnoldParams, CoeffBlock, Dct8,
};
use crate::{Error, Result};

/// Offsets of the ten neighbour labels relative to the centre label.
pub const NEIGHBOR_OFFSETS: [i32; 10] = [-6, -5, -4, -3, -2, 2, 3, 4, 5, 6];

/// Offsets of the three embedding labels relative to the centre label.
pub const CENTER_OFFSETS: [i32; 3] = [-1, 0, 1];

/// Allowed centre labels: `i ± 6` must stay inside the 22-label band.
pub const CENTER_LABEL_RANGE: core::ops::RangeInclusive<u8> = 7..=16;

/// Everything needed to embed or extract: the shared secret plus the
/// embedding geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbedKey {
    pub chaos: ChaosParams,
    pub arnold_iterations: u32,
    pub center_label: u8,
    pub lambda: f64,
    pub wm_side: usize,
    /// Where the native QR symbol sits inside the `wm_side` watermark.
    pub qr_pad_offset: (usize, usize),
}

impl Default for EmbedKey {
    fn default() -> Self {
        Self {
            chaos: ChaosParams::default(),
            arnold_iterations: 20,
            center_label: 10,
            lambda: 10.0,
            wm_side: 58,
            qr_pad_offset: (0, 0),
        }
    }
}

impl EmbedKey {
    pub fn validate(&self) -> Result<()> {
        if !CENTER_LABEL_RANGE.contains(&self.center_label) {
            return Err(Error::InvalidParam("center label must lie in 7..=16"));
        }
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(Error::InvalidParam(
                "embedding strength must be finite and non-negative",
            ));
        }
        if self.wm_side == 0 {
            return Err(Error::InvalidParam("watermark side must be positive"));
        }
        Ok(())
    }

    fn globals(&self, offsets: &'static [i32]) -> impl Iterator<Item = usize> {
        let center = i32::from(self.center_label);
        offsets.iter().map(move |d| {
            label_to_global(center + d).expect("center label validated to keep neighbours in band")
        })
    }
}

/// Outcome of an embedding run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbedReport {
    /// PSNR of the watermarked image against the carrier, in dB
    /// (`f64::INFINITY` if nothing changed).
    pub psnr_db: f64,
    pub blocks_used: usize,
    pub lambda: f64,
}

fn check_center(center_label: u8) {
    assert!(
        CENTER_LABEL_RANGE.contains(&center_label),
        "center label {center_label} outside 7..=16"
    );
}

/// Mean of the ten coefficients flanking `center_label`.
///
/// Panics if `center_label` is outside `7..=16`.
pub fn neighbor_mean(coeffs: &CoeffBlock, center_label: u8) -> f64 {
    check_center(center_label);
    let center = i32::from(center_label);
    let sum: f64 = NEIGHBOR_OFFSETS
        .iter()
        .map(|d| coeffs[label_to_global(center + d).unwrap()])
        .sum();
    sum / NEIGHBOR_OFFSETS.len() as f64
}

/// Sets the three centre coefficients to `mean + λ` (bit 1) or `mean - λ` (bit 0).
pub fn embed_bit(coeffs: &CoeffBlock, bit: bool, key: &EmbedKey) -> CoeffBlock {
    let mean = neighbor_mean(coeffs, key.center_label);
    let target = if bit {
        mean + key.lambda
    } else {
        mean - key.lambda
    };
    let mut out = *coeffs;
    for g in key.globals(&CENTER_OFFSETS) {
        out[g] = target;
    }
    out
}

/// Majority vote: 1 when at least two of the three centres are `>=` the
/// neighbour mean.
pub fn extract_bit(coeffs: &CoeffBlock, key: &EmbedKey) -> bool {
    let mean = neighbor_mean(coeffs, key.center_label);
    let count_max = key
        .globals(&CENTER_OFFSETS)
        .filter(|&g| coeffs[g] >= mean)
        .count();
    let count_min = CENTER_OFFSETS.len() - count_max;
    count_max >= count_min
}

fn arnold_for(img: &GrayImage, key: &EmbedKey) -> Result<(ArnoldParams, usize)> {
    key.validate()?;
    let side = img.block_aligned_side()? / 8;
    let params = ArnoldParams::new(side, key.arnold_iterations)?;
    let needed = key.wm_side * key.wm_side;
    if needed > side * side {
        return Err(Error::WatermarkTooLarge {
            needed,
            available: side * side,
        });
    }
    Ok((params, needed))
}

/// Embeds `watermark` (already encrypted) into `carrier`.
///
/// Split into blocks, scramble forward, write one bit into each of the first
/// `wm_side²` scrambled blocks, unscramble, merge. Blocks that carry no bit
/// are passed through without being transformed.
pub fn embed(
    carrier: &GrayImage,
    watermark: &BitMatrix,
    key: &EmbedKey,
) -> Result<(GrayImage, EmbedReport)> {
    if watermark.side() != key.wm_side {
        return Err(Error::GridMismatch {
            expected: key.wm_side,
            found: watermark.side(),
        });
    }
    let (params, needed) = arnold_for(carrier, key)?;
    let mut grid = scramble_blocks(&split_blocks(carrier)?, &params)?;
    let dct = Dct8::new();
    for (block, &bit) in grid.blocks_mut()[..needed].iter_mut().zip(watermark.bits()) {
        let coeffs = embed_bit(&dct.forward(block), bit == 1, key);
        *block = dct.inverse(&coeffs);
    }
    let marked = merge_blocks(&unscramble_blocks(&grid, &params)?);
    let report = EmbedReport {
        psnr_db: psnr(carrier, &marked)?.db(),
        blocks_used: needed,
        lambda: key.lambda,
    };
    Ok((marked, report))
}

/// Blindly reads the (still encrypted) watermark back out of `image`.
pub fn extract(image: &GrayImage, key: &EmbedKey) -> Result<BitMatrix> {
    let (params, needed) = arnold_for(image, key)?;
    let grid = scramble_blocks(&split_blocks(image)?, &params)?;
    let dct = Dct8::new();
    let bits: Vec<u8> = grid.blocks()[..needed]
        .iter()
        .map(|block| extract_bit(&dct.forward(block), key) as u8)
        .collect();
    BitMatrix::new(key.wm_side, bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key() -> EmbedKey {
        EmbedKey::default()
    }

    fn with_labels(pairs: &[(i32, f64)]) -> CoeffBlock {
        let mut c = CoeffBlock::ZERO;
        for &(label, v) in pairs {
            c[label_to_global(label).unwrap()] = v;
        }
        c
    }

    #[test]
    fn mean_of_constant_band() {
        let mut c = CoeffBlock::ZERO;
        for label in 1..=22 {
            c[label_to_global(label).unwrap()] = 4.25;
        }
        assert_eq!(neighbor_mean(&c, 10), 4.25);
    }

    #[test]
    fn mean_of_one_through_ten() {
        let labels = [4, 5, 6, 7, 8, 12, 13, 14, 15, 16];
        let pairs: Vec<(i32, f64)> = labels
            .iter()
            .enumerate()
            .map(|(n, &l)| (l, (n + 1) as f64))
            .collect();
        let mut c = with_labels(&pairs);
        // Centres do not take part.
        for l in [9, 10, 11] {
            c[label_to_global(l).unwrap()] = 1e6;
        }
        assert_eq!(neighbor_mean(&c, 10), 5.5);
    }

    #[test]
    fn embed_sets_three_centres() {
        let c = CoeffBlock::ZERO;
        let one = embed_bit(&c, true, &key());
        let zero = embed_bit(&c, false, &key());
        for l in [9, 10, 11] {
            let g = label_to_global(l).unwrap();
            assert_eq!(one[g], 10.0);
            assert_eq!(zero[g], -10.0);
        }
        let changed = (0..64).filter(|&k| one[k] != 0.0).count();
        assert_eq!(changed, 3);
    }

    #[test]
    fn majority_vote_cases() {
        let m = 2.0;
        let neighbours: Vec<(i32, f64)> = [4, 5, 6, 7, 8, 12, 13, 14, 15, 16]
            .iter()
            .map(|&l| (l, m))
            .collect();
        let block = |a: f64, b: f64, c: f64| {
            let mut p = neighbours.clone();
            p.extend([(9, a), (10, b), (11, c)]);
            with_labels(&p)
        };
        assert!(extract_bit(&block(m + 5.0, m - 1.0, m + 2.0), &key()));
        assert!(!extract_bit(&block(m - 5.0, m - 1.0, m + 2.0), &key()));
        assert!(extract_bit(&block(m, m, m), &key()));
    }

    #[test]
    fn key_validation() {
        let mut k = key();
        k.center_label = 6;
        assert!(k.validate().is_err());
        k.center_label = 17;
        assert!(k.validate().is_err());
        k.center_label = 16;
        k.lambda = -1.0;
        assert!(k.validate().is_err());
        k.lambda = f64::NAN;
        assert!(k.validate().is_err());
    }

    #[test]
    fn rejects_oversized_watermark() {
        let img = GrayImage::filled(64, 64, 128);
        let k = EmbedKey {
            wm_side: 9,
            ..key()
        };
        let w = BitMatrix::zeros(9);
        assert_eq!(
            embed(&img, &w, &k).unwrap_err(),
            Error::WatermarkTooLarge {
                needed: 81,
                available: 64
            }
        );
        let k = EmbedKey {
            wm_side: 8,
            ..key()
        };
        assert!(matches!(
            embed(&img, &w, &k),
            Err(Error::GridMismatch { .. })
        ));
    }
}
