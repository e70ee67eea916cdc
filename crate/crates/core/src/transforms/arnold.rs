//! Arnold cat map on block positions: `(i, j) ↦ (i + j, i + 2j) mod n`.

use alloc::vec::Vec;

use crate::image::BlockGrid;
use crate::{Error, Result};

/// Grid size and iteration count of a block scramble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArnoldParams {
    grid_side: usize,
    iterations: u32,
}

impl ArnoldParams {
    pub fn new(grid_side: usize, iterations: u32) -> Result<Self> {
        if grid_side < 2 {
            return Err(Error::InvalidParam("Arnold grid side must be at least 2"));
        }
        Ok(Self {
            grid_side,
            iterations,
        })
    }

    pub fn grid_side(&self) -> usize {
        self.grid_side
    }

    pub fn iterations(&self) -> u32 {
        self.iterations
    }

    /// Iteration count reduced modulo the period of the grid.
    fn effective_iterations(&self) -> u64 {
        u64::from(self.iterations) % arnold_period(self.grid_side)
    }

    /// `perm[p] = q` means the block at row-major index `p` moves to `q`.
    fn forward_permutation(&self) -> Vec<usize> {
        let n = self.grid_side;
        let k = self.effective_iterations();
        let m = mat_pow([[1, 1], [1, 2]], k, n as u64);
        (0..n * n)
            .map(|p| {
                let (i, j) = apply(m, (p / n, p % n), n);
                i * n + j
            })
            .collect()
    }
}

type Mat2 = [[u64; 2]; 2];

fn mat_mul(a: Mat2, b: Mat2, n: u64) -> Mat2 {
    let mut out = [[0; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = (a[r][0] * b[0][c] + a[r][1] * b[1][c]) % n;
        }
    }
    out
}

fn mat_pow(mut base: Mat2, mut exp: u64, n: u64) -> Mat2 {
    let mut acc = [[1 % n, 0], [0, 1 % n]];
    base = base.map(|row| row.map(|v| v % n));
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mat_mul(acc, base, n);
        }
        base = mat_mul(base, base, n);
        exp >>= 1;
    }
    acc
}

fn apply(m: Mat2, (i, j): (usize, usize), n: usize) -> (usize, usize) {
    let n = n as u64;
    let (i, j) = (i as u64, j as u64);
    (
        ((m[0][0] * i + m[0][1] * j) % n) as usize,
        ((m[1][0] * i + m[1][1] * j) % n) as usize,
    )
}

/// Applies `[[1,1],[1,2]]` to `pos`, `params.iterations()` times.
pub fn arnold_forward(pos: (usize, usize), params: &ArnoldParams) -> (usize, usize) {
    let n = params.grid_side;
    let mut p = (pos.0 % n, pos.1 % n);
    for _ in 0..params.effective_iterations() {
        p = ((p.0 + p.1) % n, (p.0 + 2 * p.1) % n);
    }
    p
}

/// Applies the inverse matrix `[[2,-1],[-1,1]]`, `params.iterations()` times.
pub fn arnold_inverse(pos: (usize, usize), params: &ArnoldParams) -> (usize, usize) {
    let n = params.grid_side;
    let mut p = (pos.0 % n, pos.1 % n);
    for _ in 0..params.effective_iterations() {
        p = ((2 * p.0 + n - p.1) % n, (p.1 + n - p.0) % n);
    }
    p
}

/// Smallest `T ≥ 1` with `A^T ≡ I (mod grid_side)`; the map is linear, so
/// this is exactly when `T` forward iterations fix every position.
///
/// Panics if `grid_side < 2`.
pub fn arnold_period(grid_side: usize) -> u64 {
    assert!(grid_side >= 2, "Arnold grid side must be at least 2");
    let n = grid_side as u64;
    let step = [[1, 1], [1, 2]];
    let mut acc = step;
    let mut t = 1;
    while acc != [[1, 0], [0, 1]] {
        acc = mat_mul(acc, step, n);
        t += 1;
    }
    t
}

fn check_side(grid: &BlockGrid, params: &ArnoldParams) -> Result<()> {
    if grid.side() != params.grid_side {
        return Err(Error::GridMismatch {
            expected: params.grid_side,
            found: grid.side(),
        });
    }
    Ok(())
}

/// Moves the block at `(i, j)` to `arnold_forward((i, j))`. Contents are untouched.
pub fn scramble_blocks(grid: &BlockGrid, params: &ArnoldParams) -> Result<BlockGrid> {
    check_side(grid, params)?;
    let perm = params.forward_permutation();
    let mut out = grid.blocks().to_vec();
    for (src, &dst) in perm.iter().enumerate() {
        out[dst] = grid.blocks()[src];
    }
    BlockGrid::new(grid.side(), out)
}

/// Undoes [`scramble_blocks`] with the same parameters.
pub fn unscramble_blocks(grid: &BlockGrid, params: &ArnoldParams) -> Result<BlockGrid> {
    check_side(grid, params)?;
    let perm = params.forward_permutation();
    let blocks = perm.iter().map(|&dst| grid.blocks()[dst]).collect();
    BlockGrid::new(grid.side(), blocks)
}
