//! Allocation-only core of the `qrmark` watermarking toolkit.
//!
//! Everything in here is a pure function of its inputs: no files, no clocks,
//! no global state. The std companion crate (`qrmark`) layers file formats,
//! the QR codec, attacks and the command line on top.
//!
//! Pipeline overview:
//!
//! - [`image`]: 8-bit grayscale rasters and their 8×8 block grids.
//! - [`transforms`]: orthonormal 8×8 DCT, zig-zag scan, the mid-band label
//!   table and block-level Arnold (cat map) scrambling.
//! - [`chaos`]: logistic-map keystreams and XOR encryption of bit matrices.
//! - [`watermark`]: one bit per block, written into three mid-band
//!   coefficients relative to the mean of ten neighbours; blind extraction.
//! - [`metrics`]: normalized correlation and PSNR.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bits;
pub mod chaos;
mod error;
pub mod image;
pub mod metrics;
pub mod transforms;
pub mod watermark;

pub use bits::BitMatrix;
pub use chaos::ChaosParams;
pub use error::{Error, Result};
pub use image::{Block, BlockGrid, GrayImage};
pub use metrics::Psnr;
pub use transforms::{ArnoldParams, CoeffBlock};
pub use watermark::{EmbedKey, EmbedReport};
