//! The key file: a small TOML document holding every secret and layout
//! parameter needed for blind extraction.
//!
//! ```toml
//! format_version = 1
//! x0 = "5.9999999999999998e-1"
//! mu = "3.9900000000000002e0"
//! arnold_iterations = 20
//! center_label = 10
//! lambda = "1.0000000000000000e1"
//! wm_side = 58
//! qr_pad_offset = [14, 14]
//! ```
//!
//! Floats are stored as strings with 17 significant digits so they survive
//! serialization bit-exactly.

use std::fs;
use std::path::Path;

use qrmark_core::{ChaosParams, EmbedKey};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KeyDoc {
    format_version: u32,
    x0: String,
    mu: String,
    arnold_iterations: u32,
    center_label: u8,
    lambda: String,
    wm_side: usize,
    qr_pad_offset: [usize; 2],
}

fn float_to_string(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_float(name: &str, s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::KeyFile(format!("{name} = {s:?} is not a decimal number")))
}

pub fn to_string(key: &EmbedKey) -> String {
    let doc = KeyDoc {
        format_version: FORMAT_VERSION,
        x0: float_to_string(key.chaos.x0()),
        mu: float_to_string(key.chaos.mu()),
        arnold_iterations: key.arnold_iterations,
        center_label: key.center_label,
        lambda: float_to_string(key.lambda),
        wm_side: key.wm_side,
        qr_pad_offset: [key.qr_pad_offset.0, key.qr_pad_offset.1],
    };
    toml::to_string(&doc).expect("key document always serializes")
}

pub fn from_str(text: &str) -> Result<EmbedKey> {
    let doc: KeyDoc = toml::from_str(text).map_err(|e| Error::KeyFile(e.to_string()))?;
    if doc.format_version != FORMAT_VERSION {
        return Err(Error::KeyFile(format!(
            "unsupported format_version {} (expected {FORMAT_VERSION})",
            doc.format_version
        )));
    }
    let chaos = ChaosParams::new(parse_float("x0", &doc.x0)?, parse_float("mu", &doc.mu)?)?;
    let key = EmbedKey {
        chaos,
        arnold_iterations: doc.arnold_iterations,
        center_label: doc.center_label,
        lambda: parse_float("lambda", &doc.lambda)?,
        wm_side: doc.wm_side,
        qr_pad_offset: (doc.qr_pad_offset[0], doc.qr_pad_offset[1]),
    };
    key.validate()?;
    Ok(key)
}

pub fn load(path: impl AsRef<Path>) -> Result<EmbedKey> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_str(&text)
}

pub fn save(key: &EmbedKey, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_string(key)).map_err(|e| Error::io(path, e))
}
