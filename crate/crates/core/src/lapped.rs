//! MDCT and IMDCT through the DCT-IV, and the overlap-add that demonstrates
//! time-domain aliasing cancellation.
//!
//! The MDCT folds its `2N` inputs into `N` with `N` additions and takes a
//! DCT-IV. The IMDCT takes a DCT-IV and reads its `2N` outputs from the
//! antisymmetric, antiperiodic extension of the result, which costs nothing
//! beyond the DCT-IV. With this unnormalized convention, overlap-adding the
//! IMDCTs of consecutive half-overlapped MDCT blocks gives back `N` times
//! the interior samples.
//!
//! For `N = 1` the fold indices `3N/2 ± …` are not integers. Both transforms
//! are then evaluated directly (`C_0 = -x_1`, `y = (0, -C_0)`), exactly and
//! with no arithmetic.

use std::sync::Arc;

use crate::error::{check_len, check_pow2, Error, Result};
use crate::kernel::ExecutionContext;
use crate::planner::Planner;
use crate::trig::{Dct4Output, Dct4Plan};

/// An MDCT of `2N` inputs to `N` outputs, and its inverse.
#[derive(Debug, Clone)]
pub struct MdctPlan {
    n: usize,
    dct4: Option<Arc<Dct4Plan>>,
}

impl MdctPlan {
    pub fn new(planner: &mut Planner, n: usize) -> Result<Self> {
        check_pow2(n)?;
        let dct4 = if n >= 2 {
            Some(planner.dct4(n, Dct4Output::Unscaled)?)
        } else {
            None
        };
        Ok(MdctPlan { n, dct4 })
    }

    /// `N`, the number of MDCT outputs.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Whether the transform goes through the DCT-IV (every `N ≥ 2`).
    pub fn uses_dct4(&self) -> bool {
        self.dct4.is_some()
    }

    pub fn mdct(&self, x: &[f64], ctx: &mut ExecutionContext) -> Result<Vec<f64>> {
        check_len(2 * self.n, x.len())?;
        let Some(dct4) = &self.dct4 else {
            return Ok(vec![ctx.neg(x[1])]);
        };
        let n = self.n;
        let (h, m) = (n / 2, 3 * n / 2);
        let mut folded = vec![0.0; n];
        for i in 0..h {
            let sum = ctx.add(x[m - 1 - i], x[m + i]);
            folded[i] = ctx.neg(sum);
        }
        for i in h..n {
            folded[i] = ctx.sub(x[i - h], x[m - 1 - i]);
        }
        Ok(dct4.run(&folded, ctx))
    }

    pub fn imdct(&self, c: &[f64], ctx: &mut ExecutionContext) -> Result<Vec<f64>> {
        check_len(self.n, c.len())?;
        let Some(dct4) = &self.dct4 else {
            return Ok(vec![0.0, ctx.neg(c[0])]);
        };
        let n = self.n;
        let d = dct4.run(c, ctx);
        // E_m = D_m, -D_{2N-1-m}, -E_{m-2N} on [0, N), [N, 2N), [2N, 3N)
        let extension = |m: usize| -> (usize, bool) {
            match m {
                m if m < n => (m, false),
                m if m < 2 * n => (2 * n - 1 - m, true),
                m => (m - 2 * n, true),
            }
        };
        Ok((0..2 * n)
            .map(|i| {
                let (idx, negate) = extension(i + n / 2);
                if negate {
                    ctx.neg(d[idx])
                } else {
                    d[idx]
                }
            })
            .collect())
    }
}

/// One MDCT block: `2N` inputs and their `N` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MdctBlock {
    pub inputs: Vec<f64>,
    pub outputs: Vec<f64>,
}

impl MdctBlock {
    pub fn compute(inputs: Vec<f64>, ctx: &mut ExecutionContext) -> Result<Self> {
        if inputs.len() % 2 == 1 {
            return Err(Error::OddLength(inputs.len()));
        }
        let outputs = mdct(&inputs, ctx)?;
        Ok(MdctBlock { inputs, outputs })
    }

    /// `N`
    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }
}

/// Overlap-add state for a stream of `2N`-sample IMDCT blocks with hop `N`.
#[derive(Debug, Clone)]
pub struct OverlapState {
    carry: Vec<f64>,
    started: bool,
}

impl OverlapState {
    pub fn new(n: usize) -> Self {
        OverlapState {
            carry: vec![0.0; n],
            started: false,
        }
    }

    /// The block overlap `N`.
    pub fn overlap(&self) -> usize {
        self.carry.len()
    }

    pub fn carry(&self) -> &[f64] {
        &self.carry
    }

    /// Adds the first half of `block` to the carried second half of the
    /// previous block and keeps this block's second half. Returns the `N`
    /// overlapped sums, or `None` for the first block of the stream.
    pub fn push(&mut self, block: &[f64]) -> Result<Option<Vec<f64>>> {
        let n = self.carry.len();
        check_len(2 * n, block.len())?;
        let (head, tail) = block.split_at(n);
        let sums = self
            .started
            .then(|| self.carry.iter().zip(head).map(|(a, b)| a + b).collect());
        self.carry.copy_from_slice(tail);
        self.started = true;
        Ok(sums)
    }
}

/// One-shot MDCT of `2N` samples.
pub fn mdct(x: &[f64], ctx: &mut ExecutionContext) -> Result<Vec<f64>> {
    if x.len() % 2 == 1 {
        return Err(Error::OddLength(x.len()));
    }
    MdctPlan::new(&mut Planner::new(), x.len() / 2)?.mdct(x, ctx)
}

/// One-shot IMDCT of `N` coefficients.
pub fn imdct(c: &[f64], ctx: &mut ExecutionContext) -> Result<Vec<f64>> {
    MdctPlan::new(&mut Planner::new(), c.len())?.imdct(c, ctx)
}

/// Sums each block's second half with the next block's first half and
/// concatenates the sums: `K` blocks of length `2N` give `(K-1) N` samples.
pub fn tdac_overlap_add(blocks: &[Vec<f64>]) -> Result<Vec<f64>> {
    let Some(first) = blocks.first() else {
        return Ok(Vec::new());
    };
    if first.len() % 2 == 1 {
        return Err(Error::OddLength(first.len()));
    }
    let mut state = OverlapState::new(first.len() / 2);
    let mut out = Vec::with_capacity(first.len() / 2 * blocks.len().saturating_sub(1));
    for block in blocks {
        if let Some(sums) = state.push(block)? {
            out.extend(sums);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{naive_imdct, naive_mdct};
    use crate::random::SampleSource;

    fn max_err(a: &[f64], b: &[f64]) -> f64 {
        assert_eq!(a.len(), b.len());
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn matches_oracles() {
        for m in 0..=8 {
            let n = 1usize << m;
            let mut src = SampleSource::new(70 + m as u64);
            let x = src.real_vec(2 * n);
            let c = src.real_vec(n);
            let mut ctx = ExecutionContext::numeric();
            assert!(
                max_err(&mdct(&x, &mut ctx).unwrap(), &naive_mdct(&x).unwrap()) < 1e-12,
                "n={n}"
            );
            assert!(
                max_err(&imdct(&c, &mut ctx).unwrap(), &naive_imdct(&c)) < 1e-12,
                "n={n}"
            );
        }
    }

    #[test]
    fn zero_in_zero_out() {
        let mut ctx = ExecutionContext::numeric();
        assert!(mdct(&[0.0; 16], &mut ctx)
            .unwrap()
            .iter()
            .all(|&v| v == 0.0));
        assert!(imdct(&[0.0; 8], &mut ctx)
            .unwrap()
            .iter()
            .all(|&v| v == 0.0));
        assert_eq!(
            tdac_overlap_add(&[vec![0.0; 4], vec![0.0; 4]]).unwrap(),
            vec![0.0; 2]
        );
    }

    #[test]
    fn counts_at_eight() {
        let x = SampleSource::new(1).real_vec(16);
        let mut ctx = ExecutionContext::audited();
        mdct(&x, &mut ctx).unwrap();
        assert_eq!(ctx.snapshot().unwrap().flops(), 62);
        let mut ctx = ExecutionContext::audited();
        imdct(&x[..8], &mut ctx).unwrap();
        assert_eq!(ctx.snapshot().unwrap().flops(), 54);
    }

    #[test]
    fn tdac_reconstructs_interior() {
        let n = 8;
        let signal = SampleSource::new(9).real_vec(4 * n);
        let blocks: Vec<Vec<f64>> = (0..3)
            .map(|b| {
                let mut ctx = ExecutionContext::numeric();
                let c = mdct(&signal[b * n..b * n + 2 * n], &mut ctx).unwrap();
                imdct(&c, &mut ctx).unwrap()
            })
            .collect();
        let out = tdac_overlap_add(&blocks).unwrap();
        assert_eq!(out.len(), 2 * n);
        let want: Vec<f64> = signal[n..3 * n].iter().map(|v| v * n as f64).collect();
        assert!(max_err(&out, &want) < 1e-10);
    }

    #[test]
    fn errors() {
        let mut ctx = ExecutionContext::numeric();
        assert_eq!(mdct(&[0.0; 5], &mut ctx), Err(Error::OddLength(5)));
        assert_eq!(mdct(&[0.0; 12], &mut ctx), Err(Error::NotPowerOfTwo(6)));
        assert!(matches!(
            tdac_overlap_add(&[vec![0.0; 4], vec![0.0; 6]]),
            Err(Error::LengthMismatch {
                expected: 4,
                actual: 6
            })
        ));
        assert!(MdctBlock::compute(vec![0.0; 3], &mut ctx).is_err());
    }
}
