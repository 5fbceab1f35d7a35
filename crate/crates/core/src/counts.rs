//! Closed-form operation counts and the audit that measures them.
//!
//! Every formula is evaluated in exact integer arithmetic. The rational
//! closed forms are multiplied through by their common denominator, checked
//! for divisibility and divided back, so a wrong formula cannot silently
//! round to a plausible value.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_pow2, Error, Result};
use crate::fft::FftVariant;
use crate::kernel::{ExecutionContext, OpCounter};
use crate::lapped::MdctPlan;
use crate::oracles::TransformKind;
use crate::planner::Planner;
use crate::random::{SampleSource, DEFAULT_SEED};
use crate::trig::{Dct3Variant, Dct4Output};

fn log2_checked(n: usize) -> Result<i128> {
    check_pow2(n)?;
    Ok(n.trailing_zeros() as i128)
}

/// `(N, log₂N, (-1)^{log₂N})`
fn terms(n: usize) -> Result<(i128, i128, i128)> {
    let m = log2_checked(n)?;
    Ok((n as i128, m, if m % 2 == 0 { 1 } else { -1 }))
}

fn exact_div(num: i128, den: i128) -> i64 {
    assert_eq!(num % den, 0, "closed form {num}/{den} is not integral");
    (num / den) as i64
}

/// `(17/9) N log₂N + (31/27) N + (2/9)(-1)^m log₂N − (4/27)(-1)^m`
pub fn dct4_count_formula(n: usize) -> Result<i64> {
    let (n, m, s) = terms(n)?;
    Ok(exact_div(51 * n * m + 31 * n + 6 * s * m - 4 * s, 27))
}

/// `2N log₂N − N + 1`, the unscaled DCT-III.
pub fn dct3_unscaled_count_formula(n: usize) -> Result<i64> {
    let (n, m, _) = terms(n)?;
    Ok((2 * n * m - n + 1) as i64)
}

/// `(1/9) N log₂N − (1/27) N + (1/9)(-1)^m log₂N + (1/27)(-1)^m`
pub fn ms_formula(n: usize) -> Result<i64> {
    let (n, m, s) = terms(n)?;
    Ok(exact_div(3 * n * m - n + 3 * s * m + s, 27))
}

/// The DCT-IV count plus `N`.
pub fn mdct_count_formula(n: usize) -> Result<i64> {
    Ok(dct4_count_formula(n)? + n as i64)
}

/// `4N log₂N − 6N + 8`; meaningful for `N ≥ 2`.
pub fn split_radix_count_formula(n: usize) -> Result<i64> {
    let (n, m, _) = terms(n)?;
    Ok((4 * n * m - 6 * n + 8) as i64)
}

/// `2N log₂N + N`, the best DCT-IV count before the rescaled algorithm.
pub fn previous_dct4_count(n: usize) -> Result<i64> {
    let (n, m, _) = terms(n)?;
    Ok((2 * n * m + n) as i64)
}

/// Flops saved relative to the unscaled DCT-III by each rescaled variant,
/// from the recurrences
///
/// ```text
/// M(N)    = M(N/2)    + 2 M_S(N/4)
/// M_S(N)  = M_S2(N/2) + 2 M_S(N/4) + N/2
/// M_S2(N) = M_S4(N/2) + 2 M_S(N/4)
/// M_S4(N) = M_S2(N/2) + 2 M_S(N/4) − N/2
/// ```
///
/// with `M(1) = M_S(1) = 0`, `M_S2(1) = M_S4(1) = −1`, `M(2) = M_S(2) = 0`,
/// `M_S2(2) = −1`, `M_S4(2) = −2`. Negative savings are extra flops spent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Savings {
    pub m: i64,
    pub ms: i64,
    pub ms2: i64,
    pub ms4: i64,
}

impl Savings {
    pub fn at(n: usize) -> Result<Savings> {
        let levels = log2_checked(n)? as usize;
        let mut table = vec![
            Savings {
                m: 0,
                ms: 0,
                ms2: -1,
                ms4: -1,
            },
            Savings {
                m: 0,
                ms: 0,
                ms2: -1,
                ms4: -2,
            },
        ];
        for level in 2..=levels {
            let half = table[level - 1];
            let quarter = table[level - 2];
            let n_half = 1i64 << (level - 1);
            table.push(Savings {
                m: half.m + 2 * quarter.ms,
                ms: half.ms2 + 2 * quarter.ms + n_half,
                ms2: half.ms4 + 2 * quarter.ms,
                ms4: half.ms2 + 2 * quarter.ms - n_half,
            });
        }
        Ok(table[levels])
    }

    pub fn for_variant(&self, variant: Dct3Variant) -> i64 {
        match variant {
            Dct3Variant::Unscaled => 0,
            Dct3Variant::Rescaled => self.m,
            Dct3Variant::L1 => self.ms,
            Dct3Variant::L2 => self.ms2,
            Dct3Variant::L4 => self.ms4,
        }
    }
}

/// Something whose operation count can be audited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuditKind {
    Dct3(Dct3Variant),
    Dst3(Dct3Variant),
    Dct4,
    Dct4ScaledOutput,
    Dst4,
    Mdct,
    Imdct,
    Fft,
}

impl AuditKind {
    pub const ALL: [AuditKind; 16] = [
        AuditKind::Dct3(Dct3Variant::Unscaled),
        AuditKind::Dct3(Dct3Variant::Rescaled),
        AuditKind::Dct3(Dct3Variant::L1),
        AuditKind::Dct3(Dct3Variant::L2),
        AuditKind::Dct3(Dct3Variant::L4),
        AuditKind::Dst3(Dct3Variant::Unscaled),
        AuditKind::Dst3(Dct3Variant::Rescaled),
        AuditKind::Dst3(Dct3Variant::L1),
        AuditKind::Dst3(Dct3Variant::L2),
        AuditKind::Dst3(Dct3Variant::L4),
        AuditKind::Dct4,
        AuditKind::Dct4ScaledOutput,
        AuditKind::Dst4,
        AuditKind::Mdct,
        AuditKind::Imdct,
        AuditKind::Fft,
    ];

    pub fn transform_kind(self) -> TransformKind {
        match self {
            AuditKind::Dct3(_) => TransformKind::Dct3,
            AuditKind::Dst3(_) => TransformKind::Dst3,
            AuditKind::Dct4 | AuditKind::Dct4ScaledOutput => TransformKind::Dct4,
            AuditKind::Dst4 => TransformKind::Dst4,
            AuditKind::Mdct => TransformKind::Mdct,
            AuditKind::Imdct => TransformKind::Imdct,
            AuditKind::Fft => TransformKind::Dft,
        }
    }

    pub fn relation(self) -> Relation {
        match self {
            AuditKind::Fft => Relation::AtMost,
            _ => Relation::Equal,
        }
    }

    /// Smallest size the audit is defined for.
    pub fn min_size(self) -> usize {
        match self {
            AuditKind::Mdct | AuditKind::Imdct => 2,
            _ => 1,
        }
    }

    /// The closed-form prediction for size `n`.
    pub fn predicted(self, n: usize) -> Result<i64> {
        match self {
            AuditKind::Dct3(v) | AuditKind::Dst3(v) => {
                let base = dct3_unscaled_count_formula(n)?;
                Ok(match v {
                    Dct3Variant::L1 => base - ms_formula(n)?,
                    v => base - Savings::at(n)?.for_variant(v),
                })
            }
            AuditKind::Dct4 | AuditKind::Dst4 => dct4_count_formula(n),
            AuditKind::Dct4ScaledOutput => Ok(dct4_count_formula(n)? - n as i64),
            AuditKind::Mdct => {
                self.check_size(n)?;
                mdct_count_formula(n)
            }
            AuditKind::Imdct => {
                self.check_size(n)?;
                dct4_count_formula(n)
            }
            AuditKind::Fft => split_radix_count_formula(n),
        }
    }

    fn check_size(self, n: usize) -> Result<()> {
        if n < self.min_size() {
            return Err(Error::SizeTooSmall {
                size: n,
                min: self.min_size(),
                what: "the MDCT fold",
            });
        }
        Ok(())
    }

    /// Runs the fast transform once in audited mode on pseudo-random input.
    pub fn measure(self, n: usize, seed: u64) -> Result<OpCounter> {
        check_pow2(n)?;
        self.check_size(n)?;
        let mut planner = Planner::new();
        let mut src = SampleSource::new(seed);
        let mut ctx = ExecutionContext::audited();
        match self {
            AuditKind::Dct3(v) => {
                planner.dct3(n, v)?.process(&src.real_vec(n), &mut ctx)?;
            }
            AuditKind::Dst3(v) => {
                planner
                    .dct3(n, v)?
                    .process_dst3(&src.real_vec(n), &mut ctx)?;
            }
            AuditKind::Dct4 => {
                planner
                    .dct4(n, Dct4Output::Unscaled)?
                    .process(&src.real_vec(n), &mut ctx)?;
            }
            AuditKind::Dct4ScaledOutput => {
                planner
                    .dct4(n, Dct4Output::Scaled)?
                    .process(&src.real_vec(n), &mut ctx)?;
            }
            AuditKind::Dst4 => {
                planner
                    .dct4(n, Dct4Output::Unscaled)?
                    .process_dst4(&src.real_vec(n), &mut ctx)?;
            }
            AuditKind::Mdct => {
                MdctPlan::new(&mut planner, n)?.mdct(&src.real_vec(2 * n), &mut ctx)?;
            }
            AuditKind::Imdct => {
                MdctPlan::new(&mut planner, n)?.imdct(&src.real_vec(n), &mut ctx)?;
            }
            AuditKind::Fft => {
                planner
                    .fft(n, FftVariant::L0)?
                    .process(&src.complex_vec(n), &mut ctx)?;
            }
        }
        ctx.snapshot()
    }
}

impl fmt::Display for AuditKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let variant = |v: &Dct3Variant| match v {
            Dct3Variant::Unscaled => "",
            Dct3Variant::Rescaled => "-rescaled",
            Dct3Variant::L1 => "-l1",
            Dct3Variant::L2 => "-l2",
            Dct3Variant::L4 => "-l4",
        };
        match self {
            AuditKind::Dct3(v) => write!(f, "dct3{}", variant(v)),
            AuditKind::Dst3(v) => write!(f, "dst3{}", variant(v)),
            AuditKind::Dct4 => f.write_str("dct4"),
            AuditKind::Dct4ScaledOutput => f.write_str("dct4-scaled"),
            AuditKind::Dst4 => f.write_str("dst4"),
            AuditKind::Mdct => f.write_str("mdct"),
            AuditKind::Imdct => f.write_str("imdct"),
            AuditKind::Fft => f.write_str("fft"),
        }
    }
}

impl FromStr for AuditKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        AuditKind::ALL
            .into_iter()
            .find(|k| k.to_string() == lower)
            .ok_or_else(|| Error::Unsupported(format!("unknown audit kind '{s}'")))
    }
}

/// How the measured count must relate to the prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// An upper bound (the FFT against ordinary split radix).
    AtMost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountReport {
    pub kind: AuditKind,
    pub n: usize,
    pub measured_adds: u64,
    pub measured_mults: u64,
    pub predicted_flops: i64,
    pub relation: Relation,
    pub matches: bool,
}

impl CountReport {
    pub fn measured_flops(&self) -> u64 {
        self.measured_adds + self.measured_mults
    }
}

pub fn audit(kind: AuditKind, n: usize) -> Result<CountReport> {
    audit_with_seed(kind, n, DEFAULT_SEED)
}

pub fn audit_with_seed(kind: AuditKind, n: usize, seed: u64) -> Result<CountReport> {
    let measured = kind.measure(n, seed)?;
    let predicted = kind.predicted(n)?;
    let flops = measured.flops() as i64;
    let relation = kind.relation();
    let matches = match relation {
        Relation::Equal => flops == predicted,
        Relation::AtMost => flops <= predicted,
    };
    Ok(CountReport {
        kind,
        n,
        measured_adds: measured.adds,
        measured_mults: measured.mults,
        predicted_flops: predicted,
        relation,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const PUBLISHED: [(usize, i64, i64); 13] = [
        (1, 1, 1),
        (2, 6, 6),
        (4, 20, 20),
        (8, 56, 54),
        (16, 144, 140),
        (32, 352, 338),
        (64, 832, 800),
        (128, 1920, 1838),
        (256, 4352, 4164),
        (512, 9728, 9290),
        (1024, 21504, 20520),
        (2048, 47104, 44902),
        (4096, 102400, 97548),
    ];

    #[test]
    fn published_dct4_counts() {
        for (n, previous, new) in PUBLISHED {
            assert_eq!(dct4_count_formula(n).unwrap(), new, "n={n}");
            assert_eq!(previous_dct4_count(n).unwrap(), previous, "n={n}");
        }
    }

    #[test]
    fn formula_examples() {
        assert_eq!(dct3_unscaled_count_formula(1).unwrap(), 0);
        assert_eq!(dct3_unscaled_count_formula(2).unwrap(), 3);
        assert_eq!(dct3_unscaled_count_formula(8).unwrap(), 41);
        assert_eq!([1, 2, 4, 8].map(|n| ms_formula(n).unwrap()), [0, 0, 1, 2]);
        assert_eq!(mdct_count_formula(8).unwrap(), 62);
        assert_eq!(mdct_count_formula(1).unwrap(), 2);
        assert_eq!(mdct_count_formula(1024).unwrap(), 21544);
        assert_eq!(split_radix_count_formula(1).unwrap(), 2);
        assert_eq!(split_radix_count_formula(64).unwrap(), 1160);
        assert_eq!(split_radix_count_formula(4096).unwrap(), 172040);
        assert_eq!(dct4_count_formula(12), Err(Error::NotPowerOfTwo(12)));
    }

    #[test]
    fn recurrence_consistency() {
        for m in 1..=20 {
            let n = 1usize << m;
            let (ni, mi) = (n as i64, m as i64);
            assert_eq!(
                dct4_count_formula(n).unwrap(),
                2 * ni * mi + ni - 2 * ms_formula(n / 2).unwrap()
            );
            assert_eq!(Savings::at(n).unwrap().ms, ms_formula(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn audit_examples() {
        let r = audit(AuditKind::Dct4, 32).unwrap();
        assert_eq!(
            (r.measured_flops(), r.predicted_flops, r.matches),
            (338, 338, true)
        );
        let r = audit(AuditKind::Dct3(Dct3Variant::Unscaled), 16).unwrap();
        assert_eq!((r.measured_flops(), r.matches), (113, true));
        let r = audit(AuditKind::Mdct, 256).unwrap();
        assert_eq!((r.measured_flops(), r.matches), (4420, true));
    }

    #[test]
    fn every_kind_matches_small_sizes() {
        for kind in AuditKind::ALL {
            for m in 0..=8 {
                let n = 1usize << m;
                if n < kind.min_size() {
                    assert!(audit(kind, n).is_err());
                    continue;
                }
                let r = audit(kind, n).unwrap();
                assert!(
                    r.matches,
                    "{kind} n={n}: {} vs {}",
                    r.measured_flops(),
                    r.predicted_flops
                );
            }
        }
    }

    #[test]
    fn counts_are_data_independent() {
        for kind in AuditKind::ALL {
            let a = audit_with_seed(kind, 64, 1).unwrap();
            let b = audit_with_seed(kind, 64, 2).unwrap();
            assert_eq!(a, b, "{kind}");
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in AuditKind::ALL {
            assert_eq!(kind.to_string().parse::<AuditKind>().unwrap(), kind);
        }
        assert!("dct5".parse::<AuditKind>().is_err());
    }
}
