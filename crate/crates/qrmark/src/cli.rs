//! Command-line front end.
//!
//! Exit status:
//!
//! | code | meaning |
//! |---|---|
//! | 0 | success |
//! | 1 | I/O failure (unreadable/unwritable file) |
//! | 2 | usage or parse error (arguments, attack spec, key file) |
//! | 3 | watermark extracted but the QR payload is not decodable |
//! | 4 | invalid input (image size, QR capacity, key parameters) |

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qrmark_core::chaos::{check_strength, ChaosParams};
use qrmark_core::metrics::psnr;
use qrmark_core::EmbedKey;
use rand::{Rng, TryRngCore};

use crate::attack::{apply_attack, AttackSpec};
use crate::bench::{default_suite, markdown_table, parse_suite, run_bench, write_csv};
use crate::io::{load_image, save_bitmatrix, save_image};
use crate::pipeline::{embed_text, recover_text};
use crate::qr::{crop_padding, EcLevel, QrPayload};
use crate::{keyfile, Error};

pub const EXIT_OK: u8 = 0;
pub const EXIT_IO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NOT_DECODABLE: u8 = 3;
pub const EXIT_INVALID_INPUT: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "qrmark",
    version,
    about = "Blind DCT watermarking of text via encrypted QR codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a new key file.
    Keygen(KeygenArgs),
    /// Embed a text message into a grayscale carrier image.
    Embed(EmbedArgs),
    /// Recover the text message from a watermarked image.
    Extract(ExtractArgs),
    /// Apply one attack to an image.
    Attack(AttackArgs),
    /// Embed once, run a suite of attacks and report NC and decodability.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct KeygenArgs {
    /// Output key file.
    #[arg(short, long)]
    pub out: PathBuf,
    /// Initial value of the logistic map, in (0, 1).
    #[arg(long)]
    pub x0: Option<f64>,
    /// Draw x0 uniformly from [0.05, 0.95) using the operating system's RNG.
    #[arg(long, conflicts_with = "x0")]
    pub random_x0: bool,
    /// Logistic map parameter, in (3.5699456, 4]; values in periodic windows
    /// (for example 3.83) are rejected.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Number of Arnold scrambling iterations.
    #[arg(short = 'k', long)]
    pub iterations: Option<u32>,
    /// Band label of the middle embedding coefficient (7..=16).
    #[arg(long)]
    pub center_label: Option<u8>,
    /// Embedding strength.
    #[arg(short, long)]
    pub lambda: Option<f64>,
    /// Side of the embedded watermark matrix.
    #[arg(long)]
    pub wm_side: Option<usize>,
}

#[derive(Debug, Args)]
pub struct PayloadArgs {
    /// Text to embed.
    #[arg(short, long)]
    pub message: String,
    /// QR error-correction level.
    #[arg(long, default_value_t = EcLevel::H)]
    pub ec_level: EcLevel,
    /// QR version (1..=40); the smallest fitting version by default.
    #[arg(long)]
    pub qr_version: Option<u8>,
}

impl PayloadArgs {
    fn payload(&self) -> QrPayload {
        QrPayload {
            text: self.message.clone(),
            ec_level: self.ec_level,
            version: self.qr_version,
        }
    }
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    /// Carrier image (8-bit grayscale PGM or PNG, square, side a multiple of 8).
    #[arg(short, long)]
    pub carrier: PathBuf,
    #[command(flatten)]
    pub payload: PayloadArgs,
    /// Key file; its qr_pad_offset is updated in place.
    #[arg(short, long)]
    pub key: PathBuf,
    /// Output image (.pgm or .png).
    #[arg(short, long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// Watermarked (possibly attacked) image.
    #[arg(short, long)]
    pub image: PathBuf,
    #[arg(short, long)]
    pub key: PathBuf,
    /// Also write the extracted, still-encrypted matrix W* as an image.
    #[arg(long)]
    pub dump_wstar: Option<PathBuf>,
    /// Also write the decrypted, cropped QR matrix as an image.
    #[arg(long)]
    pub dump_qr: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AttackArgs {
    #[arg(short, long)]
    pub image: PathBuf,
    /// Attack spec, e.g. `jpeg:quality=50`, `noise:sigma=10`, `crop:w=128,h=128`.
    #[arg(short, long)]
    pub spec: AttackSpec,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(short, long)]
    pub carrier: PathBuf,
    #[command(flatten)]
    pub payload: PayloadArgs,
    #[arg(short, long)]
    pub key: PathBuf,
    /// Suite file, one attack spec per line; the built-in ten-attack suite by default.
    #[arg(long)]
    pub suite: Option<PathBuf>,
    /// CSV output.
    #[arg(short, long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Parses the process arguments, runs the command and maps the outcome to
/// an exit status.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    ExitCode::from(run(cli))
}

pub fn run(cli: Cli) -> u8 {
    let result = match cli.command {
        Command::Keygen(a) => keygen(a),
        Command::Embed(a) => embed(a),
        Command::Extract(a) => extract(a),
        Command::Attack(a) => attack(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } | Error::Csv(_) => EXIT_IO,
        Error::AttackSpec(_) | Error::KeyFile(_) => EXIT_USAGE,
        Error::Core(_)
        | Error::Image { .. }
        | Error::UnsupportedImage { .. }
        | Error::Qr(_)
        | Error::Jpeg(_) => EXIT_INVALID_INPUT,
    }
}

type CmdResult = crate::Result<u8>;

fn keygen(a: KeygenArgs) -> CmdResult {
    let d = EmbedKey::default();
    let x0 = if a.random_x0 {
        rand::rngs::OsRng.unwrap_err().random_range(0.05..0.95)
    } else {
        a.x0.unwrap_or(d.chaos.x0())
    };
    let key = EmbedKey {
        chaos: ChaosParams::new(x0, a.mu.unwrap_or(d.chaos.mu()))?,
        arnold_iterations: a.iterations.unwrap_or(d.arnold_iterations),
        center_label: a.center_label.unwrap_or(d.center_label),
        lambda: a.lambda.unwrap_or(d.lambda),
        wm_side: a.wm_side.unwrap_or(d.wm_side),
        qr_pad_offset: (0, 0),
    };
    key.validate()?;
    check_strength(&key.chaos, key.wm_side * key.wm_side)?;
    keyfile::save(&key, &a.out)?;
    println!("wrote {}", a.out.display());
    Ok(EXIT_OK)
}

fn embed(a: EmbedArgs) -> CmdResult {
    let carrier = load_image(&a.carrier)?;
    let mut key = keyfile::load(&a.key)?;
    let payload = a.payload.payload();
    let (marked, report, prepared) = embed_text(&carrier, &payload, &mut key)?;
    save_image(&marked, &a.out)?;
    keyfile::save(&key, &a.key)?;
    let (r, c) = prepared.pad_offset;
    println!("PSNR: {:.4} dB", report.psnr_db);
    println!("blocks used: {}", report.blocks_used);
    println!("lambda: {}", report.lambda);
    println!(
        "QR: {q}x{q} modules, level {}, padded to {w}x{w} at offset ({r}, {c})",
        payload.ec_level,
        q = prepared.qr.side(),
        w = key.wm_side,
    );
    Ok(EXIT_OK)
}

fn extract(a: ExtractArgs) -> CmdResult {
    let image = load_image(&a.image)?;
    let key = keyfile::load(&a.key)?;
    let recovered = recover_text(&image, &key)?;
    if let Some(path) = &a.dump_wstar {
        save_bitmatrix(&recovered.w_star, path)?;
    }
    if let Some(path) = &a.dump_qr {
        let padded = qrmark_core::chaos::decrypt_watermark(&recovered.w_star, &key.chaos)?;
        let qr = crop_padding(&padded, key.qr_pad_offset).unwrap_or(padded);
        save_bitmatrix(&qr, path)?;
    }
    match recovered.text {
        Some(text) => {
            println!("{text}");
            Ok(EXIT_OK)
        }
        None => {
            eprintln!("not decodable: no valid QR symbol in the extracted watermark");
            Ok(EXIT_NOT_DECODABLE)
        }
    }
}

fn attack(a: AttackArgs) -> CmdResult {
    let image = load_image(&a.image)?;
    let attacked = apply_attack(&image, &a.spec, a.seed)?;
    save_image(&attacked, &a.out)?;
    println!("PSNR vs input: {} dB", psnr(&image, &attacked)?);
    Ok(EXIT_OK)
}

fn read_suite(path: &Path) -> crate::Result<Vec<AttackSpec>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_suite(&text)
}

fn bench(a: BenchArgs) -> CmdResult {
    let carrier = load_image(&a.carrier)?;
    let key = keyfile::load(&a.key)?;
    let suite = match &a.suite {
        Some(p) => read_suite(p)?,
        None => default_suite(),
    };
    let report = run_bench(&carrier, &a.payload.payload(), &key, &suite, a.seed)?;
    let file = fs::File::create(&a.out).map_err(|e| Error::io(&a.out, e))?;
    write_csv(&report.records, file)?;
    println!("watermarked PSNR: {:.4} dB\n", report.embed.psnr_db);
    print!("{}", markdown_table(&report.records));
    Ok(EXIT_OK)
}
