//! Transform selection shared by `transform` and `verify`.

use anyhow::{bail, Result};
use clap::ValueEnum;
use num_complex::Complex64;
use trigops::oracles::{naive_dft_scaled, naive_real_batch};
use trigops::{
    Dct3Variant, Dct4Output, ExecutionContext, FftVariant, MdctPlan, OutputScaling, Planner,
    TransformKind,
};

use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Dct3,
    Dst3,
    Dct4,
    Dst4,
    Mdct,
    Imdct,
    Fft,
}

/// A fully resolved transform: kind, size and output scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spec {
    Dct3(Dct3Variant),
    Dst3(Dct3Variant),
    Dct4(Dct4Output),
    Dst4,
    Mdct,
    Imdct,
    Fft(FftVariant),
}

impl Spec {
    /// `variant` names: `unscaled`, `rescaled`, `l1`, `l2`, `l4` for the
    /// DCT-III/DST-III; `unscaled`, `scaled` for the DCT-IV; `l0`, `l1`, `l2`,
    /// `l4` for the FFT. Other kinds take none.
    pub fn resolve(kind: Kind, variant: Option<&str>) -> Result<Spec> {
        let v = variant.map(str::to_ascii_lowercase);
        let bad = |v: &str| -> anyhow::Error {
            UsageError::new(format!("variant '{v}' is not available for {kind:?}")).into()
        };
        let dct3 = |v: Option<&str>| -> Result<Dct3Variant> {
            Ok(match v {
                None | Some("unscaled" | "l0") => Dct3Variant::Unscaled,
                Some("rescaled") => Dct3Variant::Rescaled,
                Some("l1") => Dct3Variant::L1,
                Some("l2") => Dct3Variant::L2,
                Some("l4") => Dct3Variant::L4,
                Some(other) => return Err(bad(other)),
            })
        };
        Ok(match kind {
            Kind::Dct3 => Spec::Dct3(dct3(v.as_deref())?),
            Kind::Dst3 => Spec::Dst3(dct3(v.as_deref())?),
            Kind::Dct4 => Spec::Dct4(match v.as_deref() {
                None | Some("unscaled") => Dct4Output::Unscaled,
                Some("scaled") => Dct4Output::Scaled,
                Some(other) => return Err(bad(other)),
            }),
            Kind::Fft => Spec::Fft(match v.as_deref() {
                None | Some("l0" | "unscaled") => FftVariant::L0,
                Some("l1") => FftVariant::L1,
                Some("l2") => FftVariant::L2,
                Some("l4") => FftVariant::L4,
                Some(other) => return Err(bad(other)),
            }),
            Kind::Dst4 | Kind::Mdct | Kind::Imdct => match v.as_deref() {
                None | Some("unscaled") => match kind {
                    Kind::Dst4 => Spec::Dst4,
                    Kind::Mdct => Spec::Mdct,
                    _ => Spec::Imdct,
                },
                Some(other) => return Err(bad(other)),
            },
        })
    }

    pub fn is_complex(self) -> bool {
        matches!(self, Spec::Fft(_))
    }

    /// Input length for transform size `n`.
    pub fn input_len(self, n: usize) -> usize {
        match self {
            Spec::Mdct => 2 * n,
            _ => n,
        }
    }

    fn oracle_kind(self) -> (TransformKind, OutputScaling) {
        match self {
            Spec::Dct3(v) => (TransformKind::Dct3, v.output_scaling()),
            Spec::Dst3(v) => (TransformKind::Dst3, v.output_scaling()),
            Spec::Dct4(Dct4Output::Unscaled) => (TransformKind::Dct4, OutputScaling::None),
            Spec::Dct4(Dct4Output::Scaled) => (TransformKind::Dct4, OutputScaling::Dct4),
            Spec::Dst4 => (TransformKind::Dst4, OutputScaling::None),
            Spec::Mdct => (TransformKind::Mdct, OutputScaling::None),
            Spec::Imdct => (TransformKind::Imdct, OutputScaling::None),
            Spec::Fft(v) => (TransformKind::Dft, OutputScaling::Dft { ell: v.ell() }),
        }
    }
}

pub fn check_size(n: usize) -> Result<()> {
    if !n.is_power_of_two() {
        bail!(UsageError::new(format!("--n {n} is not a power of two")));
    }
    Ok(())
}

/// A real-input transform, planned once and applied repeatedly.
pub struct RealRunner {
    spec: Spec,
    n: usize,
    planner: Planner,
    lapped: Option<MdctPlan>,
}

impl RealRunner {
    pub fn new(spec: Spec, n: usize) -> Result<Self> {
        check_size(n)?;
        if spec.is_complex() {
            bail!(UsageError::new("the FFT takes complex input".into()));
        }
        let mut planner = Planner::new();
        let lapped = match spec {
            Spec::Mdct | Spec::Imdct => Some(MdctPlan::new(&mut planner, n)?),
            _ => None,
        };
        Ok(RealRunner {
            spec,
            n,
            planner,
            lapped,
        })
    }

    pub fn run(&mut self, x: &[f64], ctx: &mut ExecutionContext) -> Result<Vec<f64>> {
        let n = self.n;
        Ok(match self.spec {
            Spec::Dct3(v) => self.planner.dct3(n, v)?.process(x, ctx)?,
            Spec::Dst3(v) => self.planner.dct3(n, v)?.process_dst3(x, ctx)?,
            Spec::Dct4(out) => self.planner.dct4(n, out)?.process(x, ctx)?,
            Spec::Dst4 => self
                .planner
                .dct4(n, Dct4Output::Unscaled)?
                .process_dst4(x, ctx)?,
            Spec::Mdct => self.lapped.as_ref().expect("planned").mdct(x, ctx)?,
            Spec::Imdct => self.lapped.as_ref().expect("planned").imdct(x, ctx)?,
            Spec::Fft(_) => unreachable!("rejected in new"),
        })
    }

    pub fn reference(&self, inputs: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        let (kind, scaling) = self.spec.oracle_kind();
        Ok(naive_real_batch(kind, scaling, inputs)?)
    }
}

pub fn run_fft(
    variant: FftVariant,
    x: &[Complex64],
    ctx: &mut ExecutionContext,
) -> Result<Vec<Complex64>> {
    check_size(x.len())?;
    Ok(Planner::new().fft(x.len(), variant)?.process(x, ctx)?)
}

pub fn reference_fft(variant: FftVariant, x: &[Complex64]) -> Result<Vec<Complex64>> {
    Ok(naive_dft_scaled(x, variant.ell())?)
}
