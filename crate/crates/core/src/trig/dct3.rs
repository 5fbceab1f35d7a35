use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::Arc;

use num_complex::Complex64;

use crate::constants::{omega, scale, twiddle, TwiddleT};
use crate::error::{check_len, check_pow2, Error, Result};
use crate::kernel::ExecutionContext;
use crate::oracles::OutputScaling;
use crate::planner::Planner;

/// Which output scaling a DCT-III plan produces, and how it gets there.
///
/// `Unscaled` is the classic recursion whose every sub-transform is
/// unscaled. `Rescaled` produces the same plain outputs but pulls its
/// sub-transforms from the rescaled family, so it is cheaper. `L1`, `L2` and
/// `L4` divide output `k` by `s(4ℓN, 2k+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dct3Variant {
    Unscaled,
    Rescaled,
    L1,
    L2,
    L4,
}

impl Dct3Variant {
    pub const ALL: [Dct3Variant; 5] = [
        Dct3Variant::Unscaled,
        Dct3Variant::Rescaled,
        Dct3Variant::L1,
        Dct3Variant::L2,
        Dct3Variant::L4,
    ];

    pub fn ell(self) -> u32 {
        match self {
            Dct3Variant::Unscaled | Dct3Variant::Rescaled => 0,
            Dct3Variant::L1 => 1,
            Dct3Variant::L2 => 2,
            Dct3Variant::L4 => 4,
        }
    }

    /// The variant with output scaling `ℓ`; `ℓ = 0` gives `Unscaled`.
    pub fn from_ell(ell: u32) -> Result<Self> {
        match ell {
            0 => Ok(Dct3Variant::Unscaled),
            1 => Ok(Dct3Variant::L1),
            2 => Ok(Dct3Variant::L2),
            4 => Ok(Dct3Variant::L4),
            _ => Err(Error::Unsupported(format!(
                "no DCT-III variant with ell = {ell}"
            ))),
        }
    }

    pub fn output_scaling(self) -> OutputScaling {
        OutputScaling::Dct3 { ell: self.ell() }
    }

    /// Variants of the half-size and quarter-size sub-transforms.
    pub fn children(self) -> (Dct3Variant, Dct3Variant) {
        match self {
            Dct3Variant::Unscaled => (Dct3Variant::Unscaled, Dct3Variant::Unscaled),
            Dct3Variant::Rescaled => (Dct3Variant::Rescaled, Dct3Variant::L1),
            Dct3Variant::L1 => (Dct3Variant::L2, Dct3Variant::L1),
            Dct3Variant::L2 => (Dct3Variant::L4, Dct3Variant::L1),
            Dct3Variant::L4 => (Dct3Variant::L2, Dct3Variant::L1),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum PairForm {
    /// `x0 ± c x1`
    Plain { c: f64 },
    /// `r x0 ± x1`
    Prescaled { r: f64 },
    /// `a x0 ± b x1`
    Weighted { a: f64, b: f64 },
    /// `(x0 ± c x1) r±`
    Postscaled { c: f64, r_plus: f64, r_minus: f64 },
}

/// Per-`k` constants of the combining loop, for `k` in `0..N/2`.
#[derive(Debug, Clone)]
enum Combine {
    /// `ω_{4N}^{2k+1}`, applied as `Re(ω Z)`.
    Classic(Vec<Complex64>),
    /// `t(4N, 2k+1)` and `s(4N, 2k+1)`.
    Rescaled(Vec<(TwiddleT, f64)>),
    L1(Vec<TwiddleT>),
    /// `t(4N, 2k+1)` and `s(4N, j)/s(8N, j)`.
    L2(Vec<(TwiddleT, f64)>),
    /// `t(4N, 2k+1)`, `s(4N, j)/s(16N, j)` and `s(4N, j)/s(16N, 2N + j)`.
    L4(Vec<(TwiddleT, f64, f64)>),
}

#[derive(Debug, Clone)]
enum Body {
    Single {
        ratio: Option<f64>,
    },
    Pair(PairForm),
    Split {
        half: Arc<Dct3Plan>,
        quarter: Arc<Dct3Plan>,
        combine: Combine,
    },
}

/// A DCT-III (and, through input reversal, DST-III) of one size and variant.
#[derive(Debug, Clone)]
pub struct Dct3Plan {
    n: usize,
    variant: Dct3Variant,
    body: Body,
}

impl Dct3Plan {
    pub(crate) fn build(planner: &mut Planner, n: usize, variant: Dct3Variant) -> Result<Dct3Plan> {
        check_pow2(n)?;
        let body = match n {
            1 => Body::Single {
                ratio: match variant {
                    Dct3Variant::L2 => Some(1.0 / scale(8, 1)),
                    Dct3Variant::L4 => Some(1.0 / scale(16, 1)),
                    _ => None,
                },
            },
            2 => Body::Pair(match variant {
                Dct3Variant::Unscaled | Dct3Variant::Rescaled => {
                    PairForm::Plain { c: FRAC_1_SQRT_2 }
                }
                Dct3Variant::L1 => PairForm::Prescaled {
                    r: 1.0 / scale(8, 1),
                },
                Dct3Variant::L2 => PairForm::Weighted {
                    a: 1.0 / scale(16, 1),
                    b: FRAC_1_SQRT_2 / scale(16, 1),
                },
                Dct3Variant::L4 => PairForm::Postscaled {
                    c: FRAC_1_SQRT_2,
                    r_plus: 1.0 / scale(32, 1),
                    r_minus: 1.0 / scale(32, 3),
                },
            }),
            _ => {
                let (half_variant, quarter_variant) = variant.children();
                let half = planner.dct3(n / 2, half_variant)?;
                let quarter = planner.dct3(n / 4, quarter_variant)?;
                let js = (0..n / 2).map(|k| 2 * k + 1);
                let m = 4 * n;
                let combine = match variant {
                    Dct3Variant::Unscaled => Combine::Classic(js.map(|j| omega(m, j)).collect()),
                    Dct3Variant::Rescaled => {
                        Combine::Rescaled(js.map(|j| (twiddle(m, j), scale(m, j))).collect())
                    }
                    Dct3Variant::L1 => Combine::L1(js.map(|j| twiddle(m, j)).collect()),
                    Dct3Variant::L2 => Combine::L2(
                        js.map(|j| (twiddle(m, j), scale(m, j) / scale(2 * m, j)))
                            .collect(),
                    ),
                    Dct3Variant::L4 => Combine::L4(
                        js.map(|j| {
                            (
                                twiddle(m, j),
                                scale(m, j) / scale(4 * m, j),
                                scale(m, j) / scale(4 * m, 2 * n + j),
                            )
                        })
                        .collect(),
                    ),
                };
                Body::Split {
                    half,
                    quarter,
                    combine,
                }
            }
        };
        Ok(Dct3Plan { n, variant, body })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn variant(&self) -> Dct3Variant {
        self.variant
    }

    /// `(half-size child, quarter-size child)` for the recursive sizes.
    pub fn children(&self) -> Option<(&Dct3Plan, &Dct3Plan)> {
        match &self.body {
            Body::Split { half, quarter, .. } => Some((half, quarter)),
            _ => None,
        }
    }

    /// DCT-III of `x`, output `k` divided by `s(4ℓN, 2k+1)`.
    pub fn process(&self, x: &[f64], ctx: &mut ExecutionContext) -> Result<Vec<f64>> {
        check_len(self.n, x.len())?;
        Ok(self.run(x, ctx))
    }

    /// DST-III of `x_1 ..= x_N`, with the same output scaling as the DCT-III.
    pub fn process_dst3(&self, x: &[f64], ctx: &mut ExecutionContext) -> Result<Vec<f64>> {
        check_len(self.n, x.len())?;
        Ok(self.run_dst3(x, ctx))
    }

    pub(crate) fn run_dst3(&self, x: &[f64], ctx: &mut ExecutionContext) -> Vec<f64> {
        // S_k = (-1)^k Σ_m x_{N-m} cos(π m (2k+1) / 2N)
        let reversed: Vec<f64> = x.iter().rev().copied().collect();
        let mut out = self.run(&reversed, ctx);
        for v in out.iter_mut().skip(1).step_by(2) {
            *v = ctx.neg(*v);
        }
        out
    }

    pub(crate) fn run(&self, x: &[f64], ctx: &mut ExecutionContext) -> Vec<f64> {
        match &self.body {
            Body::Single { ratio } => vec![match ratio {
                Some(r) => ctx.mul(x[0], *r),
                None => x[0],
            }],
            Body::Pair(form) => {
                let (x0, x1) = (x[0], x[1]);
                match *form {
                    PairForm::Plain { c } => {
                        let p = ctx.mul(x1, c);
                        vec![ctx.add(x0, p), ctx.sub(x0, p)]
                    }
                    PairForm::Prescaled { r } => {
                        let q = ctx.mul(x0, r);
                        vec![ctx.add(q, x1), ctx.sub(q, x1)]
                    }
                    PairForm::Weighted { a, b } => {
                        let p = ctx.mul(x0, a);
                        let q = ctx.mul(x1, b);
                        vec![ctx.add(p, q), ctx.sub(p, q)]
                    }
                    PairForm::Postscaled { c, r_plus, r_minus } => {
                        let p = ctx.mul(x1, c);
                        let plus = ctx.add(x0, p);
                        let minus = ctx.sub(x0, p);
                        vec![ctx.mul(plus, r_plus), ctx.mul(minus, r_minus)]
                    }
                }
            }
            Body::Split {
                half,
                quarter,
                combine,
            } => self.split(x, half, quarter, combine, ctx),
        }
    }

    fn split(
        &self,
        x: &[f64],
        half: &Dct3Plan,
        quarter: &Dct3Plan,
        combine: &Combine,
        ctx: &mut ExecutionContext,
    ) -> Vec<f64> {
        let n = self.n;
        let q = n / 4;
        // w_0 = x_1, w_k = x_{4k+1} + x_{4k-1}; v_k = x_{4k-1} - x_{4k+1}, v_{N/4} = x_{N-1}
        let mut w = vec![0.0; q];
        let mut v = vec![0.0; q];
        w[0] = x[1];
        v[q - 1] = x[n - 1];
        for k in 1..q {
            w[k] = ctx.add(x[4 * k + 1], x[4 * k - 1]);
            v[k - 1] = ctx.sub(x[4 * k - 1], x[4 * k + 1]);
        }
        let even: Vec<f64> = x.iter().step_by(2).copied().collect();
        let u = half.run(&even, ctx);
        let wo = quarter.run(&w, ctx);
        let vo = quarter.run_dst3(&v, ctx);

        let mut out = vec![0.0; n];
        for k in 0..n / 2 {
            // Z_{2k+1} = W + iV, conjugated (and mirrored) in the upper half.
            let z = if k < q {
                Complex64::new(wo[k], vo[k])
            } else {
                let kk = n / 2 - 1 - k;
                Complex64::new(wo[kk], ctx.neg(vo[kk]))
            };
            let uk = u[k];
            let (plus, minus) = match combine {
                Combine::Classic(c) => {
                    let (a, b) = (ctx.mul(c[k].re, z.re), ctx.mul(c[k].im, z.im));
                    let r = ctx.sub(a, b);
                    (ctx.add(uk, r), ctx.sub(uk, r))
                }
                Combine::Rescaled(c) => {
                    let (t, s) = c[k];
                    let r = t.re_mul(ctx, z);
                    let r = ctx.mul(r, s);
                    (ctx.add(uk, r), ctx.sub(uk, r))
                }
                Combine::L1(c) => {
                    let r = c[k].re_mul(ctx, z);
                    (ctx.add(uk, r), ctx.sub(uk, r))
                }
                Combine::L2(c) => {
                    let (t, s) = c[k];
                    let r = t.re_mul(ctx, z);
                    let r = ctx.mul(r, s);
                    (ctx.add(uk, r), ctx.sub(uk, r))
                }
                Combine::L4(c) => {
                    let (t, r_plus, r_minus) = c[k];
                    let r = t.re_mul(ctx, z);
                    let plus = ctx.add(uk, r);
                    let minus = ctx.sub(uk, r);
                    (ctx.mul(plus, r_plus), ctx.mul(minus, r_minus))
                }
            };
            out[k] = plus;
            out[n - 1 - k] = minus;
        }
        out
    }
}

/// One-shot DCT-III, output `k` divided by `s(4ℓN, 2k+1)` for the variant's `ℓ`.
pub fn dct3_scaled(
    x: &[f64],
    variant: Dct3Variant,
    ctx: &mut ExecutionContext,
) -> Result<Vec<f64>> {
    Planner::new().dct3(x.len(), variant)?.process(x, ctx)
}

/// One-shot DST-III of `x_1 ..= x_N` with the variant's output scaling.
pub fn dst3_scaled(
    x: &[f64],
    variant: Dct3Variant,
    ctx: &mut ExecutionContext,
) -> Result<Vec<f64>> {
    Planner::new().dct3(x.len(), variant)?.process_dst3(x, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{naive_real_batch, TransformKind};
    use crate::random::SampleSource;

    fn max_err(a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn every_variant_matches_oracle() {
        let mut planner = Planner::new();
        for m in 0..=9 {
            let n = 1usize << m;
            let x = vec![SampleSource::new(m as u64).real_vec(n)];
            for v in Dct3Variant::ALL {
                let plan = planner.dct3(n, v).unwrap();
                for kind in [TransformKind::Dct3, TransformKind::Dst3] {
                    let got = match kind {
                        TransformKind::Dct3 => {
                            plan.process(&x[0], &mut ExecutionContext::numeric())
                        }
                        _ => plan.process_dst3(&x[0], &mut ExecutionContext::numeric()),
                    }
                    .unwrap();
                    let want = naive_real_batch(kind, v.output_scaling(), &x).unwrap();
                    assert!(max_err(&got, &want[0]) < 1e-11, "n={n} {v:?} {kind:?}");
                }
            }
        }
    }

    #[test]
    fn size_two_unscaled() {
        let mut ctx = ExecutionContext::audited();
        let got = dct3_scaled(&[1.0, 1.0], Dct3Variant::Unscaled, &mut ctx).unwrap();
        assert!((got[0] - (1.0 + FRAC_1_SQRT_2)).abs() < 1e-15);
        assert!((got[1] - (1.0 - FRAC_1_SQRT_2)).abs() < 1e-15);
        assert_eq!(ctx.snapshot().unwrap().flops(), 3);
    }

    #[test]
    fn wiring() {
        let mut planner = Planner::new();
        let plan = planner.dct3(32, Dct3Variant::L1).unwrap();
        let (half, quarter) = plan.children().unwrap();
        assert_eq!((half.len(), half.variant()), (16, Dct3Variant::L2));
        assert_eq!((quarter.len(), quarter.variant()), (8, Dct3Variant::L1));
        let (h2, _) = half.children().unwrap();
        assert_eq!(h2.variant(), Dct3Variant::L4);
        assert_eq!(h2.children().unwrap().0.variant(), Dct3Variant::L2);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            dct3_scaled(&[0.0; 3], Dct3Variant::L1, &mut ExecutionContext::numeric()),
            Err(Error::NotPowerOfTwo(3))
        );
        assert!(Dct3Variant::from_ell(3).is_err());
    }
}
