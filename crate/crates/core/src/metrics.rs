//! Normalized correlation between binary watermarks and PSNR between images.

use core::fmt;

use crate::bits::BitMatrix;
use crate::image::GrayImage;
use crate::{Error, Result};

/// Peak pixel value of 8-bit images.
pub const PEAK: f64 = 255.0;

/// `Σ W·W* / (√ΣW² · √ΣW*²)`, in `[0, 1]` for binary inputs.
pub fn nc(w: &BitMatrix, w_star: &BitMatrix) -> Result<f64> {
    if w.side() != w_star.side() {
        return Err(Error::LengthMismatch {
            left: w.side(),
            right: w_star.side(),
        });
    }
    let (mut cross, mut ww, mut ss) = (0u64, 0u64, 0u64);
    for (&a, &b) in w.bits().iter().zip(w_star.bits()) {
        let (a, b) = (u64::from(a), u64::from(b));
        cross += a * b;
        ww += a * a;
        ss += b * b;
    }
    if ww == 0 || ss == 0 {
        return Err(Error::UndefinedNc);
    }
    // √(ΣW²·ΣW*²) in one root keeps perfect squares exact.
    Ok(cross as f64 / libm::sqrt((ww * ss) as f64))
}

/// PSNR in decibels; identical images have no finite value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum Psnr {
    Finite(f64),
    Infinite,
}

impl Psnr {
    /// Decibels, with [`Psnr::Infinite`] mapped to `f64::INFINITY`.
    pub fn db(self) -> f64 {
        match self {
            Psnr::Finite(v) => v,
            Psnr::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Finite(v) => write!(f, "{v:.4}"),
            Psnr::Infinite => f.write_str("inf"),
        }
    }
}

/// Mean squared pixel difference.
pub fn mse(f: &GrayImage, f_star: &GrayImage) -> Result<f64> {
    if f.width() != f_star.width() || f.height() != f_star.height() {
        return Err(Error::LengthMismatch {
            left: f.pixels().len(),
            right: f_star.pixels().len(),
        });
    }
    let sum: u64 = f
        .pixels()
        .iter()
        .zip(f_star.pixels())
        .map(|(&a, &b)| {
            let d = u64::from(a.abs_diff(b));
            d * d
        })
        .sum();
    Ok(sum as f64 / f.pixels().len().max(1) as f64)
}

/// `10 log10(255² / MSE)`.
pub fn psnr(f: &GrayImage, f_star: &GrayImage) -> Result<Psnr> {
    let mse = mse(f, f_star)?;
    if mse == 0.0 {
        return Ok(Psnr::Infinite);
    }
    Ok(Psnr::Finite(10.0 * libm::log10(PEAK * PEAK / mse)))
}
