//! Image attacks used to probe robustness, and the `kind:key=value,...`
//! spec grammar that names them.

use std::fmt;
use std::io::Cursor;
use std::str::FromStr;

use image::codecs::jpeg::JpegEncoder;
use image::{ExtendedColorType, ImageFormat};
use qrmark_core::GrayImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AttackSpec {
    Jpeg {
        quality: u8,
    },
    GaussianNoise {
        sigma: f64,
    },
    SaltPepper {
        density: f64,
    },
    MeanFilter {
        size: usize,
    },
    MedianFilter {
        size: usize,
    },
    Crop {
        x: usize,
        y: usize,
        w: usize,
        h: usize,
        fill: u8,
    },
    HistogramEq,
    BrightnessScale {
        gain: f64,
        bias: f64,
    },
}

const KINDS_HELP: &str = "valid kinds: jpeg:quality=1..100 | noise:sigma=S | sp:density=0..1 | \
mean:size=odd>=3 | median:size=odd>=3 | crop:x=X,y=Y,w=W,h=H,fill=0..255 | histeq | \
brightness:gain=G,bias=B";

impl AttackSpec {
    /// Canonical kind name, as written in CSV reports.
    pub fn kind(&self) -> &'static str {
        match self {
            AttackSpec::Jpeg { .. } => "jpeg",
            AttackSpec::GaussianNoise { .. } => "gaussian_noise",
            AttackSpec::SaltPepper { .. } => "salt_pepper",
            AttackSpec::MeanFilter { .. } => "mean_filter",
            AttackSpec::MedianFilter { .. } => "median_filter",
            AttackSpec::Crop { .. } => "crop",
            AttackSpec::HistogramEq => "histogram_eq",
            AttackSpec::BrightnessScale { .. } => "brightness_scale",
        }
    }

    /// Comma-separated `key=value` list; empty for parameterless kinds.
    pub fn params(&self) -> String {
        match *self {
            AttackSpec::Jpeg { quality } => format!("quality={quality}"),
            AttackSpec::GaussianNoise { sigma } => format!("sigma={sigma}"),
            AttackSpec::SaltPepper { density } => format!("density={density}"),
            AttackSpec::MeanFilter { size } | AttackSpec::MedianFilter { size } => {
                format!("size={size}")
            }
            AttackSpec::Crop { x, y, w, h, fill } => format!("x={x},y={y},w={w},h={h},fill={fill}"),
            AttackSpec::HistogramEq => String::new(),
            AttackSpec::BrightnessScale { gain, bias } => format!("gain={gain},bias={bias}"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::AttackSpec(msg));
        match *self {
            AttackSpec::Jpeg { quality } if !(1..=100).contains(&quality) => {
                bad(format!("jpeg quality {quality} outside 1..=100"))
            }
            AttackSpec::GaussianNoise { sigma } if !(sigma.is_finite() && sigma >= 0.0) => {
                bad(format!("noise sigma {sigma} must be finite and >= 0"))
            }
            AttackSpec::SaltPepper { density } if !(0.0..=1.0).contains(&density) => {
                bad(format!("salt-and-pepper density {density} outside [0, 1]"))
            }
            AttackSpec::MeanFilter { size } | AttackSpec::MedianFilter { size }
                if size < 3 || size % 2 == 0 =>
            {
                bad(format!("filter size {size} must be odd and >= 3"))
            }
            AttackSpec::BrightnessScale { gain, bias }
                if !(gain.is_finite() && bias.is_finite()) =>
            {
                bad("brightness gain and bias must be finite".into())
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for AttackSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let short = match self {
            AttackSpec::Jpeg { .. } => "jpeg",
            AttackSpec::GaussianNoise { .. } => "noise",
            AttackSpec::SaltPepper { .. } => "sp",
            AttackSpec::MeanFilter { .. } => "mean",
            AttackSpec::MedianFilter { .. } => "median",
            AttackSpec::Crop { .. } => "crop",
            AttackSpec::HistogramEq => "histeq",
            AttackSpec::BrightnessScale { .. } => "brightness",
        };
        let params = self.params();
        if params.is_empty() {
            f.write_str(short)
        } else {
            write!(f, "{short}:{params}")
        }
    }
}

struct Params<'a> {
    kind: &'a str,
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Params<'a> {
    fn parse(kind: &'a str, body: &'a str) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| {
                Error::AttackSpec(format!("{kind}: expected key=value, found {item:?}"))
            })?;
            pairs.push((k.trim(), v.trim()));
        }
        Ok(Params { kind, pairs })
    }

    fn take<T: FromStr>(&mut self, key: &str, default: Option<T>) -> Result<T> {
        match self.pairs.iter().position(|(k, _)| *k == key) {
            Some(i) => {
                let (_, v) = self.pairs.remove(i);
                v.parse().map_err(|_| {
                    Error::AttackSpec(format!("{}: invalid value {v:?} for {key}", self.kind))
                })
            }
            None => default.ok_or_else(|| {
                Error::AttackSpec(format!("{}: missing parameter {key}", self.kind))
            }),
        }
    }

    fn finish(self, spec: AttackSpec) -> Result<AttackSpec> {
        if let Some((k, _)) = self.pairs.first() {
            return Err(Error::AttackSpec(format!(
                "{}: unknown parameter {k:?}; {KINDS_HELP}",
                self.kind
            )));
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl FromStr for AttackSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, body) = s.split_once(':').unwrap_or((s, ""));
        let kind = kind.trim();
        let mut p = Params::parse(kind, body)?;
        let spec = match kind.to_ascii_lowercase().as_str() {
            "jpeg" => AttackSpec::Jpeg {
                quality: p.take("quality", None)?,
            },
            "noise" | "gaussian_noise" => AttackSpec::GaussianNoise {
                sigma: p.take("sigma", None)?,
            },
            "sp" | "salt_pepper" => AttackSpec::SaltPepper {
                density: p.take("density", None)?,
            },
            "mean" | "mean_filter" => AttackSpec::MeanFilter {
                size: p.take("size", Some(3))?,
            },
            "median" | "median_filter" => AttackSpec::MedianFilter {
                size: p.take("size", Some(3))?,
            },
            "crop" => AttackSpec::Crop {
                x: p.take("x", Some(0))?,
                y: p.take("y", Some(0))?,
                w: p.take("w", None)?,
                h: p.take("h", None)?,
                fill: p.take("fill", Some(0))?,
            },
            "histeq" | "histogram_eq" => AttackSpec::HistogramEq,
            "brightness" | "brightness_scale" => AttackSpec::BrightnessScale {
                gain: p.take("gain", Some(1.0))?,
                bias: p.take("bias", Some(0.0))?,
            },
            _ => {
                return Err(Error::AttackSpec(format!(
                    "unknown attack kind {kind:?}; {KINDS_HELP}"
                )))
            }
        };
        p.finish(spec)
    }
}

/// Applies `spec` to `img`. Stochastic attacks draw from a ChaCha8 stream
/// seeded with `seed`, so equal seeds give identical output.
pub fn apply_attack(img: &GrayImage, spec: &AttackSpec, seed: u64) -> Result<GrayImage> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = img.clone();
    match *spec {
        AttackSpec::Jpeg { quality } => return jpeg_round_trip(img, quality),
        AttackSpec::GaussianNoise { sigma } => {
            if sigma > 0.0 {
                let normal = Normal::new(0.0, sigma).expect("sigma validated");
                for p in out.pixels_mut() {
                    *p = clip(f64::from(*p) + normal.sample(&mut rng));
                }
            }
        }
        AttackSpec::SaltPepper { density } => {
            let n = out.pixels().len();
            let count = ((density * n as f64).round() as usize).min(n);
            for i in rand::seq::index::sample(&mut rng, n, count) {
                out.pixels_mut()[i] = if rng.random() { 255 } else { 0 };
            }
        }
        AttackSpec::MeanFilter { size } => {
            let area = (size * size) as f64;
            out = filter(img, size, |w| {
                clip(w.iter().map(|&v| f64::from(v)).sum::<f64>() / area)
            });
        }
        AttackSpec::MedianFilter { size } => {
            out = filter(img, size, |w| {
                let mid = w.len() / 2;
                *w.select_nth_unstable(mid).1
            });
        }
        AttackSpec::Crop { x, y, w, h, fill } => {
            for row in y..(y.saturating_add(h)).min(img.height()) {
                for col in x..(x.saturating_add(w)).min(img.width()) {
                    out.set(row, col, fill);
                }
            }
        }
        AttackSpec::HistogramEq => equalize(&mut out),
        AttackSpec::BrightnessScale { gain, bias } => {
            for p in out.pixels_mut() {
                *p = clip(gain * f64::from(*p) + bias);
            }
        }
    }
    Ok(out)
}

fn clip(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

fn jpeg_round_trip(img: &GrayImage, quality: u8) -> Result<GrayImage> {
    let mut buf = Vec::new();
    JpegEncoder::new_with_quality(&mut buf, quality)
        .encode(
            img.pixels(),
            img.width() as u32,
            img.height() as u32,
            ExtendedColorType::L8,
        )
        .map_err(|e| Error::Jpeg(e.to_string()))?;
    let decoded = image::load(Cursor::new(buf), ImageFormat::Jpeg)
        .map_err(|e| Error::Jpeg(e.to_string()))?
        .into_luma8();
    Ok(GrayImage::new(
        img.width(),
        img.height(),
        decoded.into_raw(),
    )?)
}

/// Sliding-window filter with edge replication.
fn filter(img: &GrayImage, size: usize, mut reduce: impl FnMut(&mut [u8]) -> u8) -> GrayImage {
    let r = (size / 2) as isize;
    let (h, w) = (img.height() as isize, img.width() as isize);
    let mut window = Vec::with_capacity(size * size);
    GrayImage::from_fn(img.width(), img.height(), |row, col| {
        window.clear();
        for dr in -r..=r {
            let rr = (row as isize + dr).clamp(0, h - 1) as usize;
            for dc in -r..=r {
                let cc = (col as isize + dc).clamp(0, w - 1) as usize;
                window.push(img.get(rr, cc));
            }
        }
        reduce(&mut window)
    })
}

/// Global histogram equalization over 256 bins.
fn equalize(img: &mut GrayImage) {
    let mut hist = [0usize; 256];
    for &p in img.pixels() {
        hist[p as usize] += 1;
    }
    let total = img.pixels().len();
    let mut cdf = [0usize; 256];
    let mut acc = 0;
    for (c, h) in cdf.iter_mut().zip(hist) {
        acc += h;
        *c = acc;
    }
    let cdf_min = cdf.iter().copied().find(|&c| c > 0).unwrap_or(0);
    if total == cdf_min {
        return;
    }
    let scale = 255.0 / (total - cdf_min) as f64;
    let lut: Vec<u8> = cdf
        .iter()
        .map(|&c| clip(c.saturating_sub(cdf_min) as f64 * scale))
        .collect();
    for p in img.pixels_mut() {
        *p = lut[*p as usize];
    }
}
