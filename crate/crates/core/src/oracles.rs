//! Direct O(N²) evaluation of every transform, straight from the defining
//! sums. These are the ground truth the fast algorithms are checked against.
//!
//! Every kernel here has the form `trig(2π (a·n + b)(c·k + d) / P)` with
//! integer coefficients, so the phase is reduced modulo `P` in integer
//! arithmetic and the trigonometric value is read from a table. Sums run in
//! natural index order in `f64`.
//!
//! The DST-III uses the 1-based input convention `x_1 ..= x_N`; slot `j` of
//! the input slice holds `x_{j+1}`.

use num_complex::Complex64;

use crate::constants::scale;
use crate::error::{check_pow2, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TransformKind {
    Dft,
    Dct3,
    Dst3,
    Dct4,
    Dst4,
    Mdct,
    Imdct,
}

/// Output scaling applied on top of the plain transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutputScaling {
    None,
    /// Divide output `k` by `s(4ℓN, 2k+1)`; `ℓ = 0` means no scaling.
    /// DCT-III and DST-III only.
    Dct3 {
        ell: u32,
    },
    /// Divide output `k` by `s(8N, 2k+1)`. DCT-IV only.
    Dct4,
    /// Divide output `k` by `s(ℓN, k)`; `ℓ = 0` means no scaling. DFT only.
    Dft {
        ell: u32,
    },
}

impl OutputScaling {
    pub fn validate(self, kind: TransformKind) -> Result<()> {
        let ok = match self {
            OutputScaling::None => true,
            OutputScaling::Dct3 { ell } => {
                matches!(kind, TransformKind::Dct3 | TransformKind::Dst3)
                    && matches!(ell, 0 | 1 | 2 | 4)
            }
            OutputScaling::Dct4 => kind == TransformKind::Dct4,
            OutputScaling::Dft { ell } => {
                kind == TransformKind::Dft && matches!(ell, 0 | 1 | 2 | 4)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "scaling {self:?} is not defined for {kind:?}"
            )))
        }
    }

    /// The divisor applied to output `k` of a size-`n` transform.
    pub fn divisor(self, n: usize, k: usize) -> f64 {
        match self {
            OutputScaling::None => 1.0,
            OutputScaling::Dct3 { ell: 0 } | OutputScaling::Dft { ell: 0 } => 1.0,
            OutputScaling::Dct3 { ell } => scale(4 * ell as usize * n, 2 * k + 1),
            OutputScaling::Dct4 => scale(8 * n, 2 * k + 1),
            OutputScaling::Dft { ell } => scale(ell as usize * n, k),
        }
    }
}

/// `trig(2π m / period)` for `m` in `0..period`.
fn table(period: usize, f: fn(f64) -> f64) -> Vec<f64> {
    (0..period)
        .map(|m| f(2.0 * std::f64::consts::PI * m as f64 / period as f64))
        .collect()
}

/// Phase `(a·n + b)(c·k + d) mod period`.
#[derive(Clone, Copy)]
struct Phase {
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    period: usize,
}

impl Phase {
    fn row(&self, k: usize) -> impl Iterator<Item = usize> {
        let p = self.period;
        let freq = (self.c * k + self.d) % p;
        let step = (self.a % p) * freq % p;
        let mut cur = (self.b % p) * freq % p;
        std::iter::from_fn(move || {
            let out = cur;
            cur += step;
            if cur >= p {
                cur -= p;
            }
            Some(out)
        })
    }
}

/// `out_b[k] = Σ_n x_b[n] · table[phase(n, k)]` for every input vector `b`.
fn apply_real(inputs: &[Vec<f64>], n_out: usize, phase: Phase, table: &[f64]) -> Vec<Vec<f64>> {
    let mut outs = vec![vec![0.0; n_out]; inputs.len()];
    let n_in = inputs.first().map_or(0, Vec::len);
    let mut acc = vec![0.0; inputs.len()];
    for k in 0..n_out {
        acc.iter_mut().for_each(|a| *a = 0.0);
        for (n, m) in phase.row(k).take(n_in).enumerate() {
            let c = table[m];
            for (a, x) in acc.iter_mut().zip(inputs) {
                *a += x[n] * c;
            }
        }
        for (out, a) in outs.iter_mut().zip(&acc) {
            out[k] = *a;
        }
    }
    outs
}

fn same_lengths(inputs: &[Vec<f64>]) -> Result<usize> {
    let n = inputs.first().map_or(0, Vec::len);
    for x in inputs {
        if x.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: x.len(),
            });
        }
    }
    Ok(n)
}

/// `X_k = Σ x_n ω_N^{nk}`.
pub fn naive_dft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    if n == 0 {
        return Vec::new();
    }
    let cos = table(n, f64::cos);
    let sin = table(n, f64::sin);
    let phase = Phase {
        a: 1,
        b: 0,
        c: 1,
        d: 0,
        period: n,
    };
    (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (xn, m) in x.iter().zip(phase.row(k)) {
                acc += xn * Complex64::new(cos[m], -sin[m]);
            }
            acc
        })
        .collect()
}

pub fn naive_dct3_batch(inputs: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = same_lengths(inputs)?;
    let p = (4 * n).max(1);
    let ph = Phase {
        a: 1,
        b: 0,
        c: 2,
        d: 1,
        period: p,
    };
    Ok(apply_real(inputs, n, ph, &table(p, f64::cos)))
}

pub fn naive_dst3_batch(inputs: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = same_lengths(inputs)?;
    let p = (4 * n).max(1);
    // slot j holds x_{j+1}
    let ph = Phase {
        a: 1,
        b: 1,
        c: 2,
        d: 1,
        period: p,
    };
    Ok(apply_real(inputs, n, ph, &table(p, f64::sin)))
}

pub fn naive_dct4_batch(inputs: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = same_lengths(inputs)?;
    let p = (8 * n).max(1);
    let ph = Phase {
        a: 2,
        b: 1,
        c: 2,
        d: 1,
        period: p,
    };
    Ok(apply_real(inputs, n, ph, &table(p, f64::cos)))
}

pub fn naive_dst4_batch(inputs: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = same_lengths(inputs)?;
    let p = (8 * n).max(1);
    let ph = Phase {
        a: 2,
        b: 1,
        c: 2,
        d: 1,
        period: p,
    };
    Ok(apply_real(inputs, n, ph, &table(p, f64::sin)))
}

pub fn naive_mdct_batch(inputs: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let len = same_lengths(inputs)?;
    if len % 2 != 0 {
        return Err(Error::OddLength(len));
    }
    let n = len / 2;
    let p = (8 * n).max(1);
    // (π/N)(n + 1/2 + N/2)(k + 1/2) = 2π (2n + 1 + N)(2k + 1) / 8N
    let ph = Phase {
        a: 2,
        b: 1 + n,
        c: 2,
        d: 1,
        period: p,
    };
    Ok(apply_real(inputs, n, ph, &table(p, f64::cos)))
}

pub fn naive_imdct_batch(inputs: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = same_lengths(inputs)?;
    let p = (8 * n).max(1);
    // same kernel as the MDCT with the roles of n and k exchanged
    let ph = Phase {
        a: 2,
        b: 1,
        c: 2,
        d: 1 + n,
        period: p,
    };
    Ok(apply_real(inputs, 2 * n, ph, &table(p, f64::cos)))
}

type BatchFn = fn(&[Vec<f64>]) -> Result<Vec<Vec<f64>>>;

fn single(f: BatchFn, x: &[f64]) -> Result<Vec<f64>> {
    Ok(f(&[x.to_vec()])?.pop().unwrap_or_default())
}

/// `C_k = Σ_{n=0}^{N-1} x_n cos[(π/N) n (k + 1/2)]`
pub fn naive_dct3(x: &[f64]) -> Vec<f64> {
    single(naive_dct3_batch, x).expect("single input")
}

/// `S_k = Σ_{n=1}^{N} x_n sin[(π/N) n (k + 1/2)]`, slot `j` holding `x_{j+1}`.
pub fn naive_dst3(x: &[f64]) -> Vec<f64> {
    single(naive_dst3_batch, x).expect("single input")
}

/// `C_k = Σ x_n cos[(π/N)(n + 1/2)(k + 1/2)]`
pub fn naive_dct4(x: &[f64]) -> Vec<f64> {
    single(naive_dct4_batch, x).expect("single input")
}

/// `S_k = Σ x_n sin[(π/N)(n + 1/2)(k + 1/2)]`
pub fn naive_dst4(x: &[f64]) -> Vec<f64> {
    single(naive_dst4_batch, x).expect("single input")
}

/// `2N` inputs to `N` outputs:
/// `C_k = Σ_{n=0}^{2N-1} x_n cos[(π/N)(n + 1/2 + N/2)(k + 1/2)]`
pub fn naive_mdct(x: &[f64]) -> Result<Vec<f64>> {
    single(naive_mdct_batch, x)
}

/// `N` inputs to `2N` outputs, same kernel as [`naive_mdct`].
pub fn naive_imdct(c: &[f64]) -> Vec<f64> {
    single(naive_imdct_batch, c).expect("single input")
}

/// Reference for a (possibly output-scaled) real transform over a batch.
pub fn naive_real_batch(
    kind: TransformKind,
    scaling: OutputScaling,
    inputs: &[Vec<f64>],
) -> Result<Vec<Vec<f64>>> {
    scaling.validate(kind)?;
    let mut outs = match kind {
        TransformKind::Dct3 => naive_dct3_batch(inputs)?,
        TransformKind::Dst3 => naive_dst3_batch(inputs)?,
        TransformKind::Dct4 => naive_dct4_batch(inputs)?,
        TransformKind::Dst4 => naive_dst4_batch(inputs)?,
        TransformKind::Mdct => naive_mdct_batch(inputs)?,
        TransformKind::Imdct => naive_imdct_batch(inputs)?,
        TransformKind::Dft => {
            return Err(Error::Unsupported(
                "the DFT takes complex input; use naive_dft_scaled".into(),
            ))
        }
    };
    if scaling != OutputScaling::None {
        check_pow2(inputs.first().map_or(1, Vec::len))?;
        for out in &mut outs {
            let n = out.len();
            for (k, v) in out.iter_mut().enumerate() {
                *v /= scaling.divisor(n, k);
            }
        }
    }
    Ok(outs)
}

/// `naive_dft(x)_k / s(ℓN, k)`
pub fn naive_dft_scaled(x: &[Complex64], ell: u32) -> Result<Vec<Complex64>> {
    let scaling = OutputScaling::Dft { ell };
    scaling.validate(TransformKind::Dft)?;
    check_pow2(x.len())?;
    let n = x.len();
    Ok(naive_dft(x)
        .into_iter()
        .enumerate()
        .map(|(k, v)| v / scaling.divisor(n, k))
        .collect())
}
