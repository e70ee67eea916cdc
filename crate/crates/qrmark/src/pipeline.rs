//! Text-level embedding and recovery: QR encode, pad, encrypt, embed, and
//! the reverse.

use qrmark_core::chaos::{decrypt_watermark, encrypt_watermark};
use qrmark_core::watermark::{embed, extract};
use qrmark_core::{BitMatrix, EmbedKey, EmbedReport, GrayImage};

use crate::qr::{crop_padding, pad_to_side, qr_decode, qr_encode, QrPayload};
use crate::Result;

/// The bit matrices produced while preparing a payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreparedWatermark {
    /// Native QR module grid.
    pub qr: BitMatrix,
    /// Encrypted, padded grid of side `key.wm_side`; this is what gets embedded.
    pub encrypted: BitMatrix,
    pub pad_offset: (usize, usize),
}

pub fn prepare_watermark(payload: &QrPayload, key: &EmbedKey) -> Result<PreparedWatermark> {
    let qr = qr_encode(payload)?;
    let (padded, pad_offset) = pad_to_side(&qr, key.wm_side)?;
    let encrypted = encrypt_watermark(&padded, &key.chaos)?;
    Ok(PreparedWatermark {
        qr,
        encrypted,
        pad_offset,
    })
}

/// Embeds `payload` into `carrier`, recording the pad offset in `key`.
pub fn embed_text(
    carrier: &GrayImage,
    payload: &QrPayload,
    key: &mut EmbedKey,
) -> Result<(GrayImage, EmbedReport, PreparedWatermark)> {
    key.validate()?;
    let prepared = prepare_watermark(payload, key)?;
    key.qr_pad_offset = prepared.pad_offset;
    let (marked, report) = embed(carrier, &prepared.encrypted, key)?;
    Ok((marked, report, prepared))
}

/// Decrypts an extracted matrix, strips the padding and decodes the QR.
pub fn decode_extracted(w_star: &BitMatrix, key: &EmbedKey) -> Result<Option<String>> {
    let padded = decrypt_watermark(w_star, &key.chaos)?;
    Ok(crop_padding(&padded, key.qr_pad_offset).and_then(|q| qr_decode(&q)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recovered {
    /// Extracted, still-encrypted watermark.
    pub w_star: BitMatrix,
    pub text: Option<String>,
}

/// Blind recovery of the embedded text from a (possibly attacked) image.
pub fn recover_text(image: &GrayImage, key: &EmbedKey) -> Result<Recovered> {
    let w_star = extract(image, key)?;
    let text = decode_extracted(&w_star, key)?;
    Ok(Recovered { w_star, text })
}
