//! Scale factors `s(N, k)`, the modified twiddles `t(N, k)` and the fused
//! output constants of the DCT-IV.
//!
//! `s(N, k)` is defined for `N = 2^m` by `s = 1` when `N <= 4`, and otherwise
//! `s(N, k) = s(N/4, k4) * cos(2πk4/N)` for `k4 <= N/8` or
//! `s(N/4, k4) * sin(2πk4/N)` above that, where `k4 = k mod N/4`.
//! Dividing a DFT output by it lets every twiddle of the next stage be
//! written with one component exactly `±1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{check_pow2, Error, Result};
use crate::kernel::ExecutionContext;

/// Unchecked `s(n, k)`. `n` must be a power of two; `k` may be any index.
///
/// Uses `sin(2πk4/N) = cos(2π(N/4 - k4)/N)` so that the symmetric pair
/// `k4`, `N/4 - k4` goes through the same floating-point evaluation and the
/// symmetries hold bit-for-bit.
pub(crate) fn scale(n: usize, k: usize) -> f64 {
    let mut n = n;
    let mut k = k;
    let mut acc = 1.0;
    while n > 4 {
        let quarter = n / 4;
        let k4 = k % quarter;
        let j = k4.min(quarter - k4);
        if j != 0 {
            acc *= (2.0 * PI * j as f64 / n as f64).cos();
        }
        n = quarter;
        k = j;
    }
    acc
}

/// `s(N, k)` for a power-of-two `N` and `0 <= k < N`.
pub fn scale_factor(n: usize, k: usize) -> Result<f64> {
    check_pow2(n)?;
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, size: n });
    }
    Ok(scale(n, k))
}

/// Memoized `s(N, k)` for one size. Only `k mod N/4` distinct values exist.
#[derive(Debug, Clone)]
pub struct ScaleTable {
    n: usize,
    values: Vec<f64>,
}

impl ScaleTable {
    pub fn new(n: usize) -> Result<Self> {
        check_pow2(n)?;
        let period = (n / 4).max(1);
        let values = (0..period).map(|k| scale(n, k)).collect();
        Ok(ScaleTable { n, values })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize) -> f64 {
        self.values[k % self.values.len()]
    }
}

/// Which component of a [`TwiddleT`] is the exact unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitAxis {
    Real,
    Imaginary,
}

/// `t(N, k) = ω_N^k s(N/4, k) / s(N, k)`, stored with its unit component as a
/// literal `±1.0` so that multiplying by it costs two real multiplications
/// fewer than a general complex constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwiddleT {
    pub re: f64,
    pub im: f64,
    pub unit_axis: UnitAxis,
}

impl TwiddleT {
    pub fn conj(&self) -> TwiddleT {
        TwiddleT {
            re: self.re,
            im: -self.im,
            unit_axis: self.unit_axis,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// `t * z`: two multiplications and two additions.
    #[inline]
    pub fn mul(&self, ctx: &mut ExecutionContext, z: Complex64) -> Complex64 {
        match self.unit_axis {
            UnitAxis::Real => {
                // (u + ib) z = (u zr - b zi) + i (u zi + b zr)
                let b = self.im;
                let bzi = ctx.mul(b, z.im);
                let bzr = ctx.mul(b, z.re);
                if self.re > 0.0 {
                    Complex64::new(ctx.sub(z.re, bzi), ctx.add(z.im, bzr))
                } else {
                    let re = ctx.add(z.re, bzi);
                    Complex64::new(ctx.neg(re), ctx.sub(bzr, z.im))
                }
            }
            UnitAxis::Imaginary => {
                // (a + iu) z = (a zr - u zi) + i (a zi + u zr)
                let a = self.re;
                let azr = ctx.mul(a, z.re);
                let azi = ctx.mul(a, z.im);
                if self.im > 0.0 {
                    Complex64::new(ctx.sub(azr, z.im), ctx.add(azi, z.re))
                } else {
                    Complex64::new(ctx.add(azr, z.im), ctx.sub(azi, z.re))
                }
            }
        }
    }

    /// `t* * z`
    #[inline]
    pub fn mul_conj(&self, ctx: &mut ExecutionContext, z: Complex64) -> Complex64 {
        self.conj().mul(ctx, z)
    }

    /// `Re(t * z)`: one multiplication and one addition.
    #[inline]
    pub fn re_mul(&self, ctx: &mut ExecutionContext, z: Complex64) -> f64 {
        match self.unit_axis {
            UnitAxis::Real => {
                let bzi = ctx.mul(self.im, z.im);
                if self.re > 0.0 {
                    ctx.sub(z.re, bzi)
                } else {
                    let r = ctx.add(z.re, bzi);
                    ctx.neg(r)
                }
            }
            UnitAxis::Imaginary => {
                let azr = ctx.mul(self.re, z.re);
                if self.im > 0.0 {
                    ctx.sub(azr, z.im)
                } else {
                    ctx.add(azr, z.im)
                }
            }
        }
    }
}

/// `t(N, k)` for `N` divisible by 4 and `0 <= k < N/4`.
pub fn twiddle_t(n: usize, k: usize) -> Result<TwiddleT> {
    check_pow2(n)?;
    if n < 4 {
        return Err(Error::SizeTooSmall {
            size: n,
            min: 4,
            what: "twiddle_t",
        });
    }
    if k >= n / 4 {
        return Err(Error::IndexOutOfRange { index: k, size: n });
    }
    Ok(twiddle(n, k))
}

pub(crate) fn twiddle(n: usize, k: usize) -> TwiddleT {
    debug_assert!(n >= 4 && k < n / 4);
    let theta = |j: usize| 2.0 * PI * j as f64 / n as f64;
    if k == 0 {
        TwiddleT {
            re: 1.0,
            im: 0.0,
            unit_axis: UnitAxis::Real,
        }
    } else if 8 * k == n {
        TwiddleT {
            re: 1.0,
            im: -1.0,
            unit_axis: UnitAxis::Real,
        }
    } else if 8 * k < n {
        // s(N, k) = s(N/4, k) cos θ, so t = 1 - i tan θ
        TwiddleT {
            re: 1.0,
            im: -theta(k).tan(),
            unit_axis: UnitAxis::Real,
        }
    } else {
        // s(N, k) = s(N/4, k) sin θ, so t = cot θ - i
        TwiddleT {
            re: theta(n / 4 - k).tan(),
            im: -1.0,
            unit_axis: UnitAxis::Imaginary,
        }
    }
}

/// `ω_N^k = exp(-2πik/N)`
pub(crate) fn omega(n: usize, k: usize) -> Complex64 {
    let k = k % n;
    let theta = 2.0 * PI * k as f64 / n as f64;
    Complex64::new(theta.cos(), -theta.sin())
}

/// The DCT-IV output constant `ω_{8N}^{2k+1} s(2N, 2k+1)` for `0 <= k < N`.
pub fn fused_dct4_constant(n: usize, k: usize) -> Result<Complex64> {
    check_pow2(n)?;
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, size: n });
    }
    Ok(fused_dct4(n, k))
}

pub(crate) fn fused_dct4(n: usize, k: usize) -> Complex64 {
    omega(8 * n, 2 * k + 1) * scale(2 * n, 2 * k + 1)
}
