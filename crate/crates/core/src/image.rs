//! Grayscale rasters and 8×8 block grids.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Row-major 8-bit grayscale image.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        let expected = width * height;
        if pixels.len() != expected {
            return Err(Error::PixelCount {
                expected,
                found: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Image filled with a single value.
    pub fn filled(width: usize, height: usize, value: u8) -> Self {
        Self {
            width,
            height,
            pixels: alloc::vec![value; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut pixels = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                pixels.push(f(row, col));
            }
        }
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.width + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        self.pixels[row * self.width + col] = value;
    }

    /// Side length `M` of a square image whose side is a multiple of 8.
    pub fn block_aligned_side(&self) -> Result<usize> {
        if self.width != self.height {
            return Err(Error::NotSquare {
                width: self.width,
                height: self.height,
            });
        }
        if self.width == 0 || !self.width.is_multiple_of(8) {
            return Err(Error::NotBlockAligned(self.width));
        }
        Ok(self.width)
    }
}

/// One 8×8 block of real-valued samples, indexed `[x][y]` = `[row][col]`.
pub type Block = [[f64; 8]; 8];

/// Square grid of 8×8 blocks, stored row-major by block position `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockGrid {
    side: usize,
    blocks: Vec<Block>,
}

impl BlockGrid {
    pub fn new(side: usize, blocks: Vec<Block>) -> Result<Self> {
        if blocks.len() != side * side {
            return Err(Error::GridMismatch {
                expected: side * side,
                found: blocks.len(),
            });
        }
        Ok(Self { side, blocks })
    }

    /// Blocks per edge (`M / 8`).
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn blocks_mut(&mut self) -> &mut [Block] {
        &mut self.blocks
    }

    pub fn into_blocks(self) -> Vec<Block> {
        self.blocks
    }

    pub fn block(&self, i: usize, j: usize) -> &Block {
        &self.blocks[i * self.side + j]
    }

    pub fn block_mut(&mut self, i: usize, j: usize) -> &mut Block {
        &mut self.blocks[i * self.side + j]
    }
}

/// Cuts an `M×M` image into `(M/8)²` blocks; block `(i, j)` sample `(x, y)`
/// is pixel `(8i + x, 8j + y)`.
pub fn split_blocks(img: &GrayImage) -> Result<BlockGrid> {
    let m = img.block_aligned_side()?;
    let side = m / 8;
    let mut blocks = Vec::with_capacity(side * side);
    for i in 0..side {
        for j in 0..side {
            let mut block = [[0.0; 8]; 8];
            for (x, row) in block.iter_mut().enumerate() {
                let start = (8 * i + x) * m + 8 * j;
                for (dst, &src) in row.iter_mut().zip(&img.pixels[start..start + 8]) {
                    *dst = f64::from(src);
                }
            }
            blocks.push(block);
        }
    }
    Ok(BlockGrid { side, blocks })
}

/// Inverse of [`split_blocks`]. Samples are rounded half away from zero and
/// clipped to `[0, 255]`; this is the only place quantization happens.
pub fn merge_blocks(grid: &BlockGrid) -> GrayImage {
    let m = grid.side * 8;
    let mut pixels = alloc::vec![0u8; m * m];
    for i in 0..grid.side {
        for j in 0..grid.side {
            let block = grid.block(i, j);
            for (x, row) in block.iter().enumerate() {
                let start = (8 * i + x) * m + 8 * j;
                for (dst, &v) in pixels[start..start + 8].iter_mut().zip(row) {
                    *dst = quantize(v);
                }
            }
        }
    }
    GrayImage {
        width: m,
        height: m,
        pixels,
    }
}

/// Round half away from zero, then clip to the 8-bit range. NaN maps to 0.
#[inline]
pub fn quantize(v: f64) -> u8 {
    libm::round(v).clamp(0.0, 255.0) as u8
}
