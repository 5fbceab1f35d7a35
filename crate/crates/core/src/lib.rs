//! Fast discrete cosine and sine transforms with recursively rescaled
//! sub-transforms, plus the MDCT/IMDCT pair, an exact operation-counting
//! execution mode, and direct reference implementations.
//!
//! Every fast transform runs through an [`ExecutionContext`]. In numeric
//! mode it just computes; in audited mode it also tallies each real addition
//! and multiplication, so the arithmetic cost of a plan can be measured
//! exactly and compared with the closed-form counts in [`counts`].

pub mod constants;
pub mod counts;
pub mod error;
pub mod fft;
pub mod kernel;
pub mod lapped;
pub mod oracles;
pub mod planner;
pub mod random;
pub mod trig;

pub use constants::{fused_dct4_constant, scale_factor, twiddle_t, ScaleTable, TwiddleT, UnitAxis};
pub use counts::{audit, audit_with_seed, AuditKind, CountReport, Relation};
pub use error::{Error, Result};
pub use fft::{fft_flop_measurement, fft_scaled, FftPlan, FftVariant};
pub use kernel::{ExecutionContext, Mode, OpCounter, Scalar};
pub use lapped::{imdct, mdct, tdac_overlap_add, MdctPlan, OverlapState};
pub use oracles::{OutputScaling, TransformKind};
pub use planner::Planner;
pub use random::{SampleSource, DEFAULT_SEED};
pub use trig::{
    dct3_scaled, dct4, dct4_scaled_output, dst3_scaled, dst4, Dct3Plan, Dct3Variant, Dct4Output,
    Dct4Plan,
};
