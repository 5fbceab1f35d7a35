//! Conjugate-pair split-radix FFT with recursively rescaled subtransforms.
//!
//! A size-`N` DFT splits into a size-`N/2` DFT of the even inputs and two
//! size-`N/4` DFTs of `x_{4n+1}` and `x_{4n-1}` (indices mod `N`), whose
//! twiddles `ω^k` and `ω^-k` are complex conjugates. Four variants compute
//! the DFT divided by `s(ℓN, k)` for `ℓ = 0, 1, 2, 4` (`ℓ = 0` is the plain
//! DFT). The quarter-size children are always `ℓ = 1`, which turns their
//! twiddles into `t(N, k)` with one unit component. The half-size child of
//! `ℓ = 0, 1, 2` is `2ℓ`; that of `ℓ = 4` is `2`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::constants::{scale, twiddle, TwiddleT};
use crate::error::{check_len, check_pow2, Error, Result};
use crate::kernel::{ExecutionContext, OpCounter};
use crate::planner::Planner;
use crate::random::{SampleSource, DEFAULT_SEED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FftVariant {
    L0,
    L1,
    L2,
    L4,
}

impl FftVariant {
    pub const ALL: [FftVariant; 4] = [
        FftVariant::L0,
        FftVariant::L1,
        FftVariant::L2,
        FftVariant::L4,
    ];

    pub fn ell(self) -> u32 {
        match self {
            FftVariant::L0 => 0,
            FftVariant::L1 => 1,
            FftVariant::L2 => 2,
            FftVariant::L4 => 4,
        }
    }

    pub fn from_ell(ell: u32) -> Result<Self> {
        match ell {
            0 => Ok(FftVariant::L0),
            1 => Ok(FftVariant::L1),
            2 => Ok(FftVariant::L2),
            4 => Ok(FftVariant::L4),
            _ => Err(Error::Unsupported(format!(
                "no FFT variant with ell = {ell}"
            ))),
        }
    }

    pub fn half_child(self) -> FftVariant {
        match self {
            FftVariant::L0 => FftVariant::L0,
            FftVariant::L1 => FftVariant::L2,
            FftVariant::L2 => FftVariant::L4,
            FftVariant::L4 => FftVariant::L2,
        }
    }

    /// `s(ℓN, k)`, with `s(0, k) = 1`.
    fn divisor(self, n: usize, k: usize) -> f64 {
        match self {
            FftVariant::L0 => 1.0,
            v => scale(v.ell() as usize * n, k),
        }
    }
}

/// `t(N, k)`, split by index into the cases with cheaper products.
#[derive(Debug, Clone, Copy)]
enum Twiddle {
    /// `k = 0`
    One,
    /// `k = N/8`: `t = 1 - i`
    Diagonal,
    General(TwiddleT),
}

impl Twiddle {
    fn at(n: usize, k: usize) -> Twiddle {
        if k == 0 {
            Twiddle::One
        } else if 8 * k == n {
            Twiddle::Diagonal
        } else {
            Twiddle::General(twiddle(n, k))
        }
    }

    /// `(t z, t* z')`
    #[inline]
    fn apply(
        &self,
        ctx: &mut ExecutionContext,
        z: Complex64,
        zc: Complex64,
    ) -> (Complex64, Complex64) {
        match self {
            Twiddle::One => (z, zc),
            Twiddle::Diagonal => (
                Complex64::new(ctx.add(z.re, z.im), ctx.sub(z.im, z.re)),
                Complex64::new(ctx.sub(zc.re, zc.im), ctx.add(zc.im, zc.re)),
            ),
            Twiddle::General(t) => (t.mul(ctx, z), t.mul_conj(ctx, zc)),
        }
    }
}

/// Per-`k` constants of the combining loop. A `None` ratio is structurally one.
#[derive(Debug, Clone)]
enum Steps {
    L0(Vec<(Twiddle, Option<f64>)>),
    L1(Vec<Twiddle>),
    /// ratios for lines `k, k+N/2` and `k+N/4, k+3N/4`
    L2(Vec<(Twiddle, Option<f64>, f64)>),
    /// ratios for lines `k`, `k+N/2`, `k+N/4`, `k+3N/4`
    L4(Vec<(Twiddle, Option<f64>, [f64; 3])>),
}

#[derive(Debug, Clone)]
enum Body {
    Single,
    Pair {
        odd_ratio: Option<f64>,
    },
    Split {
        half: Arc<FftPlan>,
        quarter: Arc<FftPlan>,
        steps: Steps,
    },
}

#[derive(Debug, Clone)]
pub struct FftPlan {
    n: usize,
    variant: FftVariant,
    body: Body,
}

/// Offsets and strides of the three sub-transform inputs of a node that reads
/// `x[(offset + stride*j) mod len]`.
fn child_views(offset: usize, stride: usize, len: usize) -> [(usize, usize); 3] {
    [
        (offset, 2 * stride),
        ((offset + stride) % len, 4 * stride),
        ((offset + len - stride % len) % len, 4 * stride),
    ]
}

impl FftPlan {
    pub(crate) fn build(planner: &mut Planner, n: usize, variant: FftVariant) -> Result<FftPlan> {
        check_pow2(n)?;
        let body = match n {
            1 => Body::Single,
            2 => {
                // X_1 = (x0 - x1) / s(2ℓ, 1); only s(8, 1) differs from one.
                let odd_ratio = match variant {
                    FftVariant::L4 => Some(1.0 / scale(8, 1)),
                    _ => None,
                };
                Body::Pair { odd_ratio }
            }
            _ => {
                let half = planner.fft(n / 2, variant.half_child())?;
                let quarter = planner.fft(n / 4, FftVariant::L1)?;
                let q = n / 4;
                let s = |k: usize| scale(n, k);
                let d = |k: usize| variant.divisor(n, k);
                let steps = match variant {
                    FftVariant::L0 => Steps::L0(
                        (0..q)
                            .map(|k| (Twiddle::at(n, k), (k != 0).then(|| s(k))))
                            .collect(),
                    ),
                    FftVariant::L1 => Steps::L1((0..q).map(|k| Twiddle::at(n, k)).collect()),
                    FftVariant::L2 => Steps::L2(
                        (0..q)
                            .map(|k| {
                                (
                                    Twiddle::at(n, k),
                                    (k != 0).then(|| s(k) / d(k)),
                                    s(k) / d(k + q),
                                )
                            })
                            .collect(),
                    ),
                    FftVariant::L4 => Steps::L4(
                        (0..q)
                            .map(|k| {
                                (
                                    Twiddle::at(n, k),
                                    (k != 0).then(|| s(k) / d(k)),
                                    [s(k) / d(k + 2 * q), s(k) / d(k + q), s(k) / d(k + 3 * q)],
                                )
                            })
                            .collect(),
                    ),
                };
                Body::Split {
                    half,
                    quarter,
                    steps,
                }
            }
        };
        Ok(FftPlan { n, variant, body })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn variant(&self) -> FftVariant {
        self.variant
    }

    /// `(half-size child, quarter-size child)` for the recursive sizes.
    pub fn children(&self) -> Option<(&FftPlan, &FftPlan)> {
        match &self.body {
            Body::Split { half, quarter, .. } => Some((half, quarter)),
            _ => None,
        }
    }

    /// Input indices read by the half-size and the two quarter-size
    /// sub-transforms, in the order each child sees them.
    pub fn subtransform_inputs(&self) -> Option<[Vec<usize>; 3]> {
        self.children()?;
        let n = self.n;
        let views = child_views(0, 1, n);
        let sizes = [n / 2, n / 4, n / 4];
        Some(std::array::from_fn(|c| {
            let (offset, stride) = views[c];
            (0..sizes[c]).map(|j| (offset + stride * j) % n).collect()
        }))
    }

    /// DFT of `x` divided by `s(ℓN, k)`.
    pub fn process(&self, x: &[Complex64], ctx: &mut ExecutionContext) -> Result<Vec<Complex64>> {
        check_len(self.n, x.len())?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        self.run(x, 0, 1, &mut out, ctx);
        Ok(out)
    }

    fn run(
        &self,
        x: &[Complex64],
        offset: usize,
        stride: usize,
        out: &mut [Complex64],
        ctx: &mut ExecutionContext,
    ) {
        let len = x.len();
        match &self.body {
            Body::Single => out[0] = x[offset],
            Body::Pair { odd_ratio } => {
                let a = x[offset];
                let b = x[(offset + stride) % len];
                out[0] = ctx.cadd(a, b);
                let diff = ctx.csub(a, b);
                out[1] = match odd_ratio {
                    Some(r) => ctx.cscale(diff, *r),
                    None => diff,
                };
            }
            Body::Split {
                half,
                quarter,
                steps,
            } => {
                let n = self.n;
                let q = n / 4;
                let [even, plus, minus] = child_views(offset, stride, len);
                {
                    let (u, rest) = out.split_at_mut(n / 2);
                    let (z, zc) = rest.split_at_mut(q);
                    half.run(x, even.0, even.1, u, ctx);
                    quarter.run(x, plus.0, plus.1, z, ctx);
                    quarter.run(x, minus.0, minus.1, zc, ctx);
                }
                match steps {
                    Steps::L0(s) => combine_l0(out, q, s, ctx),
                    Steps::L1(s) => combine_l1(out, q, s, ctx),
                    Steps::L2(s) => combine_l2(out, q, s, ctx),
                    Steps::L4(s) => combine_l4(out, q, s, ctx),
                }
            }
        }
    }
}

// `out` holds U in [0, N/2), Z in [N/2, 3N/4) and Z' in [3N/4, N) on entry.
// Iteration k reads and writes exactly slots k, k+N/4, k+N/2, k+3N/4.

#[inline]
fn sum_diff(
    ctx: &mut ExecutionContext,
    out: &[Complex64],
    q: usize,
    k: usize,
    t: &Twiddle,
) -> (Complex64, Complex64) {
    let (a, b) = t.apply(ctx, out[2 * q + k], out[3 * q + k]);
    (ctx.cadd(a, b), ctx.csub(a, b))
}

fn combine_l0(
    out: &mut [Complex64],
    q: usize,
    steps: &[(Twiddle, Option<f64>)],
    ctx: &mut ExecutionContext,
) {
    for (k, (t, ratio)) in steps.iter().enumerate() {
        let (mut s, mut d) = sum_diff(ctx, out, q, k, t);
        if let Some(r) = ratio {
            s = ctx.cscale(s, *r);
            d = ctx.cscale(d, *r);
        }
        let (uk, uq) = (out[k], out[k + q]);
        out[k] = ctx.cadd(uk, s);
        out[k + 2 * q] = ctx.csub(uk, s);
        out[k + q] = ctx.csub_i(uq, d);
        out[k + 3 * q] = ctx.cadd_i(uq, d);
    }
}

fn combine_l1(out: &mut [Complex64], q: usize, steps: &[Twiddle], ctx: &mut ExecutionContext) {
    for (k, t) in steps.iter().enumerate() {
        let (s, d) = sum_diff(ctx, out, q, k, t);
        let (uk, uq) = (out[k], out[k + q]);
        out[k] = ctx.cadd(uk, s);
        out[k + 2 * q] = ctx.csub(uk, s);
        out[k + q] = ctx.csub_i(uq, d);
        out[k + 3 * q] = ctx.cadd_i(uq, d);
    }
}

fn combine_l2(
    out: &mut [Complex64],
    q: usize,
    steps: &[(Twiddle, Option<f64>, f64)],
    ctx: &mut ExecutionContext,
) {
    for (k, (t, r_even, r_odd)) in steps.iter().enumerate() {
        let (mut s, d) = sum_diff(ctx, out, q, k, t);
        if let Some(r) = r_even {
            s = ctx.cscale(s, *r);
        }
        let d = ctx.cscale(d, *r_odd);
        let (uk, uq) = (out[k], out[k + q]);
        out[k] = ctx.cadd(uk, s);
        out[k + 2 * q] = ctx.csub(uk, s);
        out[k + q] = ctx.csub_i(uq, d);
        out[k + 3 * q] = ctx.cadd_i(uq, d);
    }
}

fn combine_l4(
    out: &mut [Complex64],
    q: usize,
    steps: &[(Twiddle, Option<f64>, [f64; 3])],
    ctx: &mut ExecutionContext,
) {
    for (k, (t, r0, [r_half, r_quarter, r_three])) in steps.iter().enumerate() {
        let (s, d) = sum_diff(ctx, out, q, k, t);
        let (uk, uq) = (out[k], out[k + q]);
        let x0 = ctx.cadd(uk, s);
        out[k] = match r0 {
            Some(r) => ctx.cscale(x0, *r),
            None => x0,
        };
        let x2 = ctx.csub(uk, s);
        out[k + 2 * q] = ctx.cscale(x2, *r_half);
        let x1 = ctx.csub_i(uq, d);
        out[k + q] = ctx.cscale(x1, *r_quarter);
        let x3 = ctx.cadd_i(uq, d);
        out[k + 3 * q] = ctx.cscale(x3, *r_three);
    }
}

/// One-shot scaled FFT without a shared planner.
pub fn fft_scaled(
    x: &[Complex64],
    variant: FftVariant,
    ctx: &mut ExecutionContext,
) -> Result<Vec<Complex64>> {
    Planner::new().fft(x.len(), variant)?.process(x, ctx)
}

/// Audited cost of the unscaled (`ℓ = 0`) FFT of size `n`.
pub fn fft_flop_measurement(n: usize) -> Result<OpCounter> {
    let plan = Planner::new().fft(n, FftVariant::L0)?;
    let x = SampleSource::new(DEFAULT_SEED).complex_vec(n);
    let mut ctx = ExecutionContext::audited();
    plan.process(&x, &mut ctx)?;
    ctx.snapshot()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{naive_dft, naive_dft_scaled};

    fn max_err(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn tiny_sizes() {
        let mut ctx = ExecutionContext::audited();
        let z = [Complex64::new(0.5, -2.0)];
        assert_eq!(
            fft_scaled(&z, FftVariant::L0, &mut ctx).unwrap(),
            z.to_vec()
        );
        assert_eq!(ctx.snapshot().unwrap().flops(), 0);

        let delta = [1.0, 0.0, 0.0, 0.0].map(|r| Complex64::new(r, 0.0));
        let got = fft_scaled(&delta, FftVariant::L0, &mut ExecutionContext::numeric()).unwrap();
        for v in got {
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_sizes() {
        let x = vec![Complex64::new(0.0, 0.0); 6];
        assert_eq!(
            fft_scaled(&x, FftVariant::L0, &mut ExecutionContext::numeric()),
            Err(Error::NotPowerOfTwo(6))
        );
        let plan = Planner::new().fft(8, FftVariant::L1).unwrap();
        assert!(matches!(
            plan.process(&x, &mut ExecutionContext::numeric()),
            Err(Error::LengthMismatch {
                expected: 8,
                actual: 6
            })
        ));
    }

    #[test]
    fn all_variants_match_scaled_oracle() {
        let mut planner = Planner::new();
        for m in 0..=8 {
            let n = 1usize << m;
            let x = SampleSource::new(100 + m as u64).complex_vec(n);
            for v in FftVariant::ALL {
                let got = planner
                    .fft(n, v)
                    .unwrap()
                    .process(&x, &mut ExecutionContext::numeric())
                    .unwrap();
                let want = naive_dft_scaled(&x, v.ell()).unwrap();
                assert!(max_err(&got, &want) < 1e-11, "n={n} {v:?}");
            }
        }
    }

    #[test]
    fn l1_size_8_divides_by_scale() {
        let x = SampleSource::new(8).complex_vec(8);
        let got = fft_scaled(&x, FftVariant::L1, &mut ExecutionContext::numeric()).unwrap();
        let plain = naive_dft(&x);
        for k in 0..8 {
            assert!((got[k] - plain[k] / scale(8, k)).norm() < 1e-12);
        }
    }

    #[test]
    fn child_wiring() {
        let mut planner = Planner::new();
        for v in FftVariant::ALL {
            let plan = planner.fft(64, v).unwrap();
            let (half, quarter) = plan.children().unwrap();
            assert_eq!(half.len(), 32);
            assert_eq!(quarter.len(), 16);
            assert_eq!(quarter.variant(), FftVariant::L1);
            let want_ell = match v.ell() {
                4 => 2,
                ell => 2 * ell,
            };
            assert_eq!(half.variant().ell(), want_ell);
        }
    }

    #[test]
    fn conjugate_pair_index_sets() {
        let plan = Planner::new().fft(16, FftVariant::L0).unwrap();
        let [even, plus, minus] = plan.subtransform_inputs().unwrap();
        assert_eq!(even, (0..8).map(|j| 2 * j).collect::<Vec<_>>());
        assert_eq!(plus, vec![1, 5, 9, 13]);
        assert_eq!(minus, vec![15, 3, 7, 11]);
    }

    #[test]
    fn numeric_and_audited_agree_bitwise() {
        let x = SampleSource::new(4).complex_vec(128);
        for v in FftVariant::ALL {
            let a = fft_scaled(&x, v, &mut ExecutionContext::numeric()).unwrap();
            let b = fft_scaled(&x, v, &mut ExecutionContext::audited()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(fft_flop_measurement(1).unwrap().flops(), 0);
        assert_eq!(fft_flop_measurement(2).unwrap().flops(), 4);
        assert_eq!(fft_flop_measurement(4).unwrap().flops(), 16);
        assert!(fft_flop_measurement(64).unwrap().flops() < 1160);
    }
}
