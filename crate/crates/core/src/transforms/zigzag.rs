//! Zig-zag scan order and the mid-band coefficient labels.

/// `SCAN[k]` is the `(row, col)` frequency visited at scan position `k`.
const SCAN: [(u8, u8); 64] = build_scan();

/// `POSITION[row][col]` is the scan position of frequency `(row, col)`.
const POSITION: [[u8; 8]; 8] = build_position(&SCAN);

const fn build_scan() -> [(u8, u8); 64] {
    let mut out = [(0u8, 0u8); 64];
    let mut k = 0;
    let mut diag = 0;
    while diag < 15 {
        let lo = if diag > 7 { diag - 7 } else { 0 };
        let hi = if diag < 7 { diag } else { 7 };
        // Even anti-diagonals run bottom-left to top-right, odd ones the reverse.
        let mut step = 0;
        while step <= hi - lo {
            let row = if diag % 2 == 0 { hi - step } else { lo + step };
            out[k] = (row as u8, (diag - row) as u8);
            k += 1;
            step += 1;
        }
        diag += 1;
    }
    out
}

const fn build_position(scan: &[(u8, u8); 64]) -> [[u8; 8]; 8] {
    let mut out = [[0u8; 8]; 8];
    let mut k = 0;
    while k < 64 {
        let (r, c) = scan[k];
        out[r as usize][c as usize] = k as u8;
        k += 1;
    }
    out
}

/// Scan position → `(row, col)` for all 64 positions, JPEG order.
pub fn zigzag_index_map() -> &'static [(u8, u8); 64] {
    &SCAN
}

/// Scan position of frequency `(row, col)`.
#[inline]
pub fn zigzag_position(row: usize, col: usize) -> usize {
    POSITION[row][col] as usize
}

pub const MIDBAND_LEN: usize = 22;

/// Global zig-zag index of each mid-band label `1..=22`.
///
/// The band covers anti-diagonals 4 to 7 minus the two cells of diagonals 5
/// and 7 nearest the vertical-frequency edge. Labels follow the scan
/// direction, so they are strictly increasing in global index.
pub const MIDBAND_GLOBAL: [usize; MIDBAND_LEN] = [
    10, 11, 12, 13, 14, // anti-diagonal 4
    17, 18, 19, 20, // anti-diagonal 5
    21, 22, 23, 24, 25, 26, 27, // anti-diagonal 6
    30, 31, 32, 33, 34, 35, // anti-diagonal 7
];

/// A mid-band label and its global zig-zag index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MidBandIndex {
    pub label: u8,
    pub global: usize,
}

pub fn midband_labels() -> [MidBandIndex; MIDBAND_LEN] {
    core::array::from_fn(|n| MidBandIndex {
        label: n as u8 + 1,
        global: MIDBAND_GLOBAL[n],
    })
}

/// Global zig-zag index of `label`, or `None` outside `1..=22`.
#[inline]
pub fn label_to_global(label: i32) -> Option<usize> {
    if (1..=MIDBAND_LEN as i32).contains(&label) {
        Some(MIDBAND_GLOBAL[label as usize - 1])
    } else {
        None
    }
}
