//! Block transforms: the orthonormal 8×8 DCT with zig-zag ordering, the
//! mid-band label table used by the embedder, and Arnold scrambling of block
//! positions.

mod arnold;
mod dct;
mod zigzag;

pub use arnold::{
    arnold_forward, arnold_inverse, arnold_period, scramble_blocks, unscramble_blocks, ArnoldParams,
};
pub use dct::{dct_8x8, idct_8x8, CoeffBlock, Dct8};
pub use zigzag::{
    label_to_global, midband_labels, zigzag_index_map, zigzag_position, MidBandIndex,
    MIDBAND_GLOBAL, MIDBAND_LEN,
};
