//! DCT-III, DST-III, DCT-IV and DST-IV built on the rescaled recursion.
//!
//! The DST-III takes the 1-based input `x_1 ..= x_N`, stored so that slot `j`
//! holds `x_{j+1}`.

mod dct3;
mod dct4;

pub use dct3::{dct3_scaled, dst3_scaled, Dct3Plan, Dct3Variant};
pub use dct4::{dct4, dct4_scaled_output, dst4, Dct4Output, Dct4Plan};
