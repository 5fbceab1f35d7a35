use std::sync::Arc;

use num_complex::Complex64;

use crate::constants::{fused_dct4, twiddle, TwiddleT};
use crate::error::{check_len, check_pow2, Result};
use crate::kernel::ExecutionContext;
use crate::planner::Planner;

use super::dct3::{Dct3Plan, Dct3Variant};

/// Output scaling of a DCT-IV plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dct4Output {
    /// The plain DCT-IV.
    Unscaled,
    /// Output `k` divided by `s(8N, 2k+1)`, one multiply cheaper per output.
    Scaled,
}

#[derive(Debug, Clone)]
enum Constants {
    /// `ω_{8N}^{2k+1} s(2N, 2k+1)`: two multiplies and one add per output.
    Fused(Vec<Complex64>),
    /// `t(8N, 2k+1)`: one multiply and one add per output.
    Twiddles(Vec<TwiddleT>),
}

impl Constants {
    #[inline]
    fn re_mul(&self, k: usize, z: Complex64, ctx: &mut ExecutionContext) -> f64 {
        match self {
            Constants::Fused(c) => {
                let (a, b) = (ctx.mul(c[k].re, z.re), ctx.mul(c[k].im, z.im));
                ctx.sub(a, b)
            }
            Constants::Twiddles(t) => t[k].re_mul(ctx, z),
        }
    }
}

#[derive(Debug, Clone)]
enum Body {
    /// `N = 1`: `x_0 cos(π/4)`, or `x_0` itself when scaled.
    Single { factor: Option<f64> },
    Split {
        half: Arc<Dct3Plan>,
        constants: Constants,
    },
}

/// A DCT-IV (and, through sign and order changes, DST-IV) of one size.
#[derive(Debug, Clone)]
pub struct Dct4Plan {
    n: usize,
    output: Dct4Output,
    body: Body,
}

impl Dct4Plan {
    pub(crate) fn build(planner: &mut Planner, n: usize, output: Dct4Output) -> Result<Dct4Plan> {
        check_pow2(n)?;
        let body = if n == 1 {
            Body::Single {
                factor: match output {
                    Dct4Output::Unscaled => Some(fused_dct4(1, 0).re),
                    Dct4Output::Scaled => None,
                },
            }
        } else {
            let half = planner.dct3(n / 2, Dct3Variant::L1)?;
            let constants = match output {
                Dct4Output::Unscaled => {
                    Constants::Fused((0..n).map(|k| fused_dct4(n, k)).collect())
                }
                Dct4Output::Scaled => {
                    Constants::Twiddles((0..n).map(|k| twiddle(8 * n, 2 * k + 1)).collect())
                }
            };
            Body::Split { half, constants }
        };
        Ok(Dct4Plan { n, output, body })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn output(&self) -> Dct4Output {
        self.output
    }

    /// The half-size scaled DCT-III/DST-III the plan is built on.
    pub fn half(&self) -> Option<&Dct3Plan> {
        match &self.body {
            Body::Split { half, .. } => Some(half),
            Body::Single { .. } => None,
        }
    }

    pub fn process(&self, x: &[f64], ctx: &mut ExecutionContext) -> Result<Vec<f64>> {
        check_len(self.n, x.len())?;
        Ok(self.run(x, ctx))
    }

    /// DST-IV: the DCT-IV of `(-1)^n x_n`, read backwards.
    pub fn process_dst4(&self, x: &[f64], ctx: &mut ExecutionContext) -> Result<Vec<f64>> {
        check_len(self.n, x.len())?;
        let alternating: Vec<f64> = x
            .iter()
            .enumerate()
            .map(|(i, &v)| if i % 2 == 1 { ctx.neg(v) } else { v })
            .collect();
        let mut out = self.run(&alternating, ctx);
        out.reverse();
        Ok(out)
    }

    pub(crate) fn run(&self, x: &[f64], ctx: &mut ExecutionContext) -> Vec<f64> {
        match &self.body {
            Body::Single { factor } => vec![match factor {
                Some(c) => ctx.mul(x[0], *c),
                None => x[0],
            }],
            Body::Split { half, constants } => {
                let n = self.n;
                let h = n / 2;
                // w_0 = x_0, w_k = x_{2k} + x_{2k-1}; v_k = x_{2k-1} - x_{2k}, v_{N/2} = x_{N-1}
                let mut w = vec![0.0; h];
                let mut v = vec![0.0; h];
                w[0] = x[0];
                v[h - 1] = x[n - 1];
                for k in 1..h {
                    w[k] = ctx.add(x[2 * k], x[2 * k - 1]);
                    v[k - 1] = ctx.sub(x[2 * k - 1], x[2 * k]);
                }
                let wo = half.run(&w, ctx);
                let vo = half.run_dst3(&v, ctx);
                (0..n)
                    .map(|k| {
                        let z = if k < h {
                            Complex64::new(wo[k], vo[k])
                        } else {
                            let kk = n - 1 - k;
                            Complex64::new(wo[kk], ctx.neg(vo[kk]))
                        };
                        constants.re_mul(k, z, ctx)
                    })
                    .collect()
            }
        }
    }
}

/// One-shot DCT-IV.
pub fn dct4(x: &[f64], ctx: &mut ExecutionContext) -> Result<Vec<f64>> {
    Planner::new()
        .dct4(x.len(), Dct4Output::Unscaled)?
        .process(x, ctx)
}

/// One-shot DCT-IV with output `k` divided by `s(8N, 2k+1)`.
pub fn dct4_scaled_output(x: &[f64], ctx: &mut ExecutionContext) -> Result<Vec<f64>> {
    Planner::new()
        .dct4(x.len(), Dct4Output::Scaled)?
        .process(x, ctx)
}

/// One-shot DST-IV.
pub fn dst4(x: &[f64], ctx: &mut ExecutionContext) -> Result<Vec<f64>> {
    Planner::new()
        .dct4(x.len(), Dct4Output::Unscaled)?
        .process_dst4(x, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{naive_dct4, naive_dst4, naive_real_batch, OutputScaling, TransformKind};
    use crate::random::SampleSource;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn max_err(a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn matches_oracles() {
        let mut planner = Planner::new();
        for m in 0..=10 {
            let n = 1usize << m;
            let x = SampleSource::new(40 + m as u64).real_vec(n);
            let plain = planner.dct4(n, Dct4Output::Unscaled).unwrap();
            let scaled = planner.dct4(n, Dct4Output::Scaled).unwrap();
            let mut ctx = ExecutionContext::numeric();
            assert!(max_err(&plain.process(&x, &mut ctx).unwrap(), &naive_dct4(&x)) < 1e-11);
            assert!(max_err(&plain.process_dst4(&x, &mut ctx).unwrap(), &naive_dst4(&x)) < 1e-11);
            let want = naive_real_batch(
                TransformKind::Dct4,
                OutputScaling::Dct4,
                std::slice::from_ref(&x),
            )
            .unwrap();
            assert!(max_err(&scaled.process(&x, &mut ctx).unwrap(), &want[0]) < 1e-11);
        }
    }

    #[test]
    fn size_one() {
        let mut ctx = ExecutionContext::audited();
        assert_eq!(dct4(&[2.0], &mut ctx).unwrap(), vec![2.0 * FRAC_1_SQRT_2]);
        assert_eq!(ctx.snapshot().unwrap().mults, 1);
        let mut ctx = ExecutionContext::audited();
        assert_eq!(dct4_scaled_output(&[2.0], &mut ctx).unwrap(), vec![2.0]);
        assert_eq!(ctx.snapshot().unwrap().flops(), 0);
    }

    #[test]
    fn size_two_counts() {
        let mut ctx = ExecutionContext::audited();
        dct4(&[1.0, 0.0], &mut ctx).unwrap();
        assert_eq!(ctx.snapshot().unwrap().flops(), 6);
    }

    #[test]
    fn built_on_rescaled_half() {
        let plan = Planner::new().dct4(16, Dct4Output::Unscaled).unwrap();
        let half = plan.half().unwrap();
        assert_eq!((half.len(), half.variant()), (8, Dct3Variant::L1));
    }
}
