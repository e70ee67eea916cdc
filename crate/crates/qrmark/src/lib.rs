//! File formats, QR payload codec, robustness attacks and the benchmark
//! harness around [`qrmark_core`].
//!
//! The end-to-end flow is: text → [`qr::qr_encode`] → [`qr::pad_to_side`] →
//! chaotic encryption → DCT embedding, and back again with
//! [`pipeline::recover_text`].

pub mod attack;
pub mod bench;
pub mod cli;
mod error;
pub mod io;
pub mod keyfile;
pub mod pipeline;
pub mod qr;

pub use error::{Error, Result};
pub use qrmark_core as core;
