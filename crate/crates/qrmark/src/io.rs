//! Loading and saving 8-bit grayscale images (binary PGM and PNG).

use std::fs;
use std::path::Path;

use image::{DynamicImage, ImageFormat, ImageReader};
use qrmark_core::{BitMatrix, GrayImage};

use crate::{Error, Result};

/// Reads a PGM (P2/P5, maxval 255) or PNG file. Colour, alpha and 16-bit
/// inputs are rejected rather than converted.
pub fn load_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    let reader = ImageReader::open(path)
        .map_err(|e| Error::io(path, e))?
        .with_guessed_format()
        .map_err(|e| Error::io(path, e))?;
    match reader.format() {
        Some(ImageFormat::Pnm | ImageFormat::Png) => {}
        other => {
            return Err(Error::UnsupportedImage {
                path: path.into(),
                reason: match other {
                    Some(f) => format!("{f:?} files are not supported; use PGM or PNG"),
                    None => "unrecognised file format".into(),
                },
            })
        }
    }
    let decoded = reader.decode().map_err(|source| Error::Image {
        path: path.into(),
        source,
    })?;
    match decoded {
        DynamicImage::ImageLuma8(buf) => {
            let (w, h) = buf.dimensions();
            Ok(GrayImage::new(w as usize, h as usize, buf.into_raw())?)
        }
        other => Err(Error::UnsupportedImage {
            path: path.into(),
            reason: format!("{:?} is not 8-bit grayscale", other.color()),
        }),
    }
}

/// Writes `img` as binary PGM (`.pgm`) or PNG (`.png`), chosen by extension.
pub fn save_image(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    match ext.as_deref() {
        Some("pgm") => fs::write(path, encode_pgm(img)).map_err(|e| Error::io(path, e)),
        Some("png") => image::save_buffer_with_format(
            path,
            img.pixels(),
            img.width() as u32,
            img.height() as u32,
            image::ExtendedColorType::L8,
            ImageFormat::Png,
        )
        .map_err(|source| match source {
            image::ImageError::IoError(e) => Error::io(path, e),
            source => Error::Image {
                path: path.into(),
                source,
            },
        }),
        _ => Err(Error::UnsupportedImage {
            path: path.into(),
            reason: "output extension must be .pgm or .png".into(),
        }),
    }
}

/// Binary P5 encoding with maxval 255.
pub fn encode_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

/// Renders a bit matrix one pixel per module: 1 (dark) → 0, 0 (light) → 255.
pub fn bitmatrix_to_image(m: &BitMatrix) -> GrayImage {
    GrayImage::from_fn(m.side(), m.side(), |r, c| if m.get(r, c) { 0 } else { 255 })
}

/// Debug export of a bit matrix as PGM or PNG.
pub fn save_bitmatrix(m: &BitMatrix, path: impl AsRef<Path>) -> Result<()> {
    save_image(&bitmatrix_to_image(m), path)
}
