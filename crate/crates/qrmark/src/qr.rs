//! Text ⇄ QR module grid, plus the light-border padding that lets a native
//! QR side (21, 25, …) fill an arbitrary watermark side.

use std::fmt;
use std::str::FromStr;

use qrcode::types::{Color, QrError, Version};
use qrcode::QrCode;
use qrmark_core::BitMatrix;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EcLevel {
    L,
    M,
    Q,
    #[default]
    H,
}

impl EcLevel {
    pub const ALL: [EcLevel; 4] = [EcLevel::L, EcLevel::M, EcLevel::Q, EcLevel::H];

    fn to_qrcode(self) -> qrcode::EcLevel {
        match self {
            EcLevel::L => qrcode::EcLevel::L,
            EcLevel::M => qrcode::EcLevel::M,
            EcLevel::Q => qrcode::EcLevel::Q,
            EcLevel::H => qrcode::EcLevel::H,
        }
    }
}

impl fmt::Display for EcLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EcLevel::L => "L",
            EcLevel::M => "M",
            EcLevel::Q => "Q",
            EcLevel::H => "H",
        };
        f.write_str(s)
    }
}

impl FromStr for EcLevel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "L" => Ok(EcLevel::L),
            "M" => Ok(EcLevel::M),
            "Q" => Ok(EcLevel::Q),
            "H" => Ok(EcLevel::H),
            _ => Err(format!(
                "unknown error-correction level {s:?} (expected L, M, Q or H)"
            )),
        }
    }
}

/// A message plus the QR parameters used to encode it. `version: None`
/// picks the smallest version that fits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QrPayload {
    pub text: String,
    pub ec_level: EcLevel,
    pub version: Option<u8>,
}

impl QrPayload {
    pub fn new(text: impl Into<String>) -> Self {
        QrPayload {
            text: text.into(),
            ec_level: EcLevel::default(),
            version: None,
        }
    }

    pub fn with_ec_level(mut self, ec_level: EcLevel) -> Self {
        self.ec_level = ec_level;
        self
    }

    pub fn with_version(mut self, version: u8) -> Self {
        self.version = Some(version);
        self
    }
}

/// Renders the payload as its native module grid (no quiet zone), 1 = dark.
pub fn qr_encode(payload: &QrPayload) -> Result<BitMatrix> {
    if payload.text.is_empty() {
        return Err(Error::Qr("message is empty".into()));
    }
    let data = payload.text.as_bytes();
    let ec = payload.ec_level.to_qrcode();
    let code = match payload.version {
        None => QrCode::with_error_correction_level(data, ec),
        Some(v @ 1..=40) => QrCode::with_version(data, Version::Normal(i16::from(v)), ec),
        Some(v) => return Err(Error::Qr(format!("QR version {v} is outside 1..=40"))),
    }
    .map_err(|e| match e {
        QrError::DataTooLong => Error::Qr(format!(
            "{}-byte message exceeds QR capacity at level {}{}",
            data.len(),
            payload.ec_level,
            payload
                .version
                .map(|v| format!(", version {v}"))
                .unwrap_or_default()
        )),
        other => Error::Qr(other.to_string()),
    })?;
    let side = code.width();
    let colors = code.to_colors();
    Ok(BitMatrix::from_fn(side, |r, c| {
        colors[r * side + c] == Color::Dark
    }))
}

/// Decodes a module grid; `None` when the symbol cannot be recovered.
pub fn qr_decode(matrix: &BitMatrix) -> Option<String> {
    let side = matrix.side();
    if side < 21 || !(side - 17).is_multiple_of(4) {
        return None;
    }
    let grid = rqrr::SimpleGrid::from_func(side, |x, y| matrix.get(y, x));
    rqrr::Grid::new(grid).decode().ok().map(|(_, text)| text)
}

/// Centres `matrix` in a light border of side `target_side`, returning the
/// padded grid and the (row, col) offset of the original.
pub fn pad_to_side(matrix: &BitMatrix, target_side: usize) -> Result<(BitMatrix, (usize, usize))> {
    let side = matrix.side();
    if target_side < side {
        return Err(qrmark_core::Error::WatermarkTooLarge {
            needed: side,
            available: target_side,
        }
        .into());
    }
    let o = (target_side - side) / 2;
    Ok((matrix.embed_in(target_side, (o, o))?, (o, o)))
}

/// The native QR side implied by a padded side and its offset: the larger
/// candidate that is a valid QR side (17 + 4v).
pub fn native_side(padded_side: usize, offset: (usize, usize)) -> Option<usize> {
    let o = offset.0.max(offset.1);
    let inner = padded_side.checked_sub(2 * o)?;
    [inner, inner.saturating_sub(1)].into_iter().find(|&s| {
        s >= 21
            && (s - 17).is_multiple_of(4)
            && offset.0 + s <= padded_side
            && offset.1 + s <= padded_side
    })
}

/// Undoes [`pad_to_side`].
pub fn crop_padding(padded: &BitMatrix, offset: (usize, usize)) -> Option<BitMatrix> {
    let side = native_side(padded.side(), offset)?;
    padded.crop(offset, side).ok()
}
