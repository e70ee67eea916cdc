//! Attack bench: embed once, then attack, extract and decode per attack.

use std::fmt::Write as _;
use std::io::Write;

use qrmark_core::metrics::{nc, psnr};
use qrmark_core::{EmbedKey, EmbedReport, Error as CoreError, GrayImage, Psnr};

use crate::attack::{apply_attack, AttackSpec};
use crate::pipeline::{embed_text, recover_text};
use crate::qr::QrPayload;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub attack: AttackSpec,
    /// Attacked image against the un-attacked watermarked image.
    pub attacked_psnr: Psnr,
    /// Extracted W* against the embedded (encrypted) W.
    pub nc: f64,
    /// True only when the recovered text equals the embedded text.
    pub decodable: bool,
    pub recovered_text: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub embed: EmbedReport,
    pub records: Vec<BenchRecord>,
}

pub fn default_suite() -> Vec<AttackSpec> {
    vec![
        AttackSpec::Jpeg { quality: 90 },
        AttackSpec::Jpeg { quality: 70 },
        AttackSpec::Jpeg { quality: 50 },
        AttackSpec::GaussianNoise { sigma: 5.0 },
        AttackSpec::SaltPepper { density: 0.02 },
        AttackSpec::MeanFilter { size: 3 },
        AttackSpec::MedianFilter { size: 3 },
        AttackSpec::Crop {
            x: 0,
            y: 0,
            w: 128,
            h: 128,
            fill: 0,
        },
        AttackSpec::HistogramEq,
        AttackSpec::BrightnessScale {
            gain: 1.2,
            bias: -10.0,
        },
    ]
}

/// Reads one attack spec per line; blank lines and `#` comments are skipped.
pub fn parse_suite(text: &str) -> Result<Vec<AttackSpec>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}

/// Attack number `i` uses seed `seed + i`.
pub fn run_bench(
    carrier: &GrayImage,
    payload: &QrPayload,
    key: &EmbedKey,
    attacks: &[AttackSpec],
    seed: u64,
) -> Result<BenchReport> {
    let mut key = *key;
    let (marked, embed, prepared) = embed_text(carrier, payload, &mut key)?;
    let records = attacks
        .iter()
        .enumerate()
        .map(|(i, attack)| {
            let attacked = apply_attack(&marked, attack, seed.wrapping_add(i as u64))?;
            let recovered = recover_text(&attacked, &key)?;
            let nc = match nc(&prepared.encrypted, &recovered.w_star) {
                Ok(v) => v,
                Err(CoreError::UndefinedNc) => 0.0,
                Err(e) => return Err(e.into()),
            };
            Ok(BenchRecord {
                attack: *attack,
                attacked_psnr: psnr(&marked, &attacked)?,
                nc,
                decodable: recovered.text.as_deref() == Some(payload.text.as_str()),
                recovered_text: recovered.text,
            })
        })
        .collect::<Result<_>>()?;
    Ok(BenchReport { embed, records })
}

/// CSV with columns `attack,params,psnr_db,nc,decodable,recovered_text`.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "attack",
        "params",
        "psnr_db",
        "nc",
        "decodable",
        "recovered_text",
    ])?;
    for r in records {
        w.write_record([
            r.attack.kind().to_string(),
            r.attack.params(),
            r.attacked_psnr.to_string(),
            format!("{:.4}", r.nc),
            if r.decodable { "yes" } else { "no" }.to_string(),
            r.recovered_text.clone().unwrap_or_default(),
        ])?;
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

pub fn markdown_table(records: &[BenchRecord]) -> String {
    let mut s = String::from("| Attack | PSNR (dB) | NC | Can be decoded? |\n|---|---|---|---|\n");
    for r in records {
        let _ = writeln!(
            s,
            "| {} | {} | {:.4} | {} |",
            r.attack,
            r.attacked_psnr,
            r.nc,
            if r.decodable { "Yes" } else { "No" }
        );
    }
    s
}
