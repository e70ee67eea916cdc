//! Logistic-map keystreams and XOR encryption of bit matrices.
//!
//! The orbit `x_{n+1} = μ x_n (1 - x_n)` starts at `x0` itself (no transient
//! is discarded), is thresholded at 0.5 into bits, and the bits are XORed onto
//! the matrix in row-major order. Encryption and decryption are the same
//! operation.

use alloc::vec::Vec;

use crate::bits::BitMatrix;
use crate::{Error, Result};

/// Lower edge of the fully chaotic regime of the logistic map.
pub const MU_CHAOS_THRESHOLD: f64 = 3.5699456;

/// Smallest estimated Lyapunov exponent [`check_strength`] accepts.
pub const MIN_LYAPUNOV: f64 = 0.1;

/// Secret logistic-map parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChaosParams {
    x0: f64,
    mu: f64,
}

impl ChaosParams {
    /// `x0 ∈ (0, 1)` and `mu ∈ (3.5699456, 4]`.
    pub fn new(x0: f64, mu: f64) -> Result<Self> {
        if !(x0 > 0.0 && x0 < 1.0) {
            return Err(Error::InvalidParam("x0 must lie strictly between 0 and 1"));
        }
        if !(mu > MU_CHAOS_THRESHOLD && mu <= 4.0) {
            return Err(Error::InvalidParam(
                "mu must lie in (3.5699456, 4], the chaotic regime of the logistic map",
            ));
        }
        Ok(Self { x0, mu })
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

impl Default for ChaosParams {
    fn default() -> Self {
        Self { x0: 0.6, mu: 3.99 }
    }
}

/// `{x0, x1, …, x_{len-1}}` in IEEE-754 double precision.
///
/// Fails when the orbit leaves the open unit interval or stalls on a fixed
/// point, since either would yield a constant keystream tail.
pub fn logistic_sequence(params: &ChaosParams, len: usize) -> Result<Vec<f64>> {
    if len == 0 {
        return Err(Error::InvalidParam("sequence length must be at least 1"));
    }
    let mut out = Vec::with_capacity(len);
    let mut x = params.x0;
    out.push(x);
    for step in 1..len {
        let next = params.mu * x * (1.0 - x);
        if !(next > 0.0 && next < 1.0) || next == x {
            return Err(Error::OrbitCollapse { step, value: next });
        }
        x = next;
        out.push(x);
    }
    Ok(out)
}

/// Estimated Lyapunov exponent of the orbit: the mean of `ln|μ(1 - 2x)|`
/// over its first `len` terms. Positive values mean nearby starting points
/// separate exponentially; periodic windows inside the chaotic regime give
/// values at or below zero.
pub fn lyapunov_exponent(params: &ChaosParams, len: usize) -> Result<f64> {
    let seq = logistic_sequence(params, len)?;
    let sum: f64 = seq
        .iter()
        .map(|&x| libm::log(libm::fabs(params.mu * (1.0 - 2.0 * x))))
        .sum();
    Ok(sum / len as f64)
}

/// Rejects parameters whose first `len` orbit terms are not chaotic, such as
/// `mu` inside a periodic window (3.83 lies in the period-3 window). Such keys
/// pass [`ChaosParams::new`] but a neighbouring `x0` reproduces the keystream.
pub fn check_strength(params: &ChaosParams, len: usize) -> Result<f64> {
    let exponent = lyapunov_exponent(params, len.max(1024))?;
    if exponent < MIN_LYAPUNOV {
        return Err(Error::WeakChaos {
            exponent,
            minimum: MIN_LYAPUNOV,
        });
    }
    Ok(exponent)
}

/// Threshold at 0.5: values `>= 0.5` become 1.
pub fn binarize(seq: &[f64]) -> Vec<u8> {
    seq.iter().map(|&x| (x >= 0.5) as u8).collect()
}

/// Cell-wise XOR of `data` (row-major) with `keystream`.
pub fn xor_bits(data: &BitMatrix, keystream: &[u8]) -> Result<BitMatrix> {
    if keystream.len() != data.bits().len() {
        return Err(Error::LengthMismatch {
            left: data.bits().len(),
            right: keystream.len(),
        });
    }
    let bits = data
        .bits()
        .iter()
        .zip(keystream)
        .map(|(&d, &k)| d ^ (k & 1))
        .collect();
    BitMatrix::new(data.side(), bits)
}

/// Binary keystream of `len` bits.
pub fn keystream(params: &ChaosParams, len: usize) -> Result<Vec<u8>> {
    Ok(binarize(&logistic_sequence(params, len)?))
}

/// Encrypts (or, identically, decrypts) a bit matrix.
pub fn encrypt_watermark(q: &BitMatrix, params: &ChaosParams) -> Result<BitMatrix> {
    let ks = keystream(params, q.side() * q.side())?;
    xor_bits(q, &ks)
}

/// Alias of [`encrypt_watermark`]; XOR is an involution.
pub fn decrypt_watermark(w: &BitMatrix, params: &ChaosParams) -> Result<BitMatrix> {
    encrypt_watermark(w, params)
}
