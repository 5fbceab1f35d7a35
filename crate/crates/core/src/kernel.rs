//! Real-scalar arithmetic with optional operation auditing.
//!
//! Every transform in this crate performs its data-dependent arithmetic
//! through an [`ExecutionContext`]. In numeric mode the calls compile down to
//! plain `f64` arithmetic. In audited mode each executed real addition or
//! subtraction increments `adds` and each executed real multiplication
//! increments `mults`; negation is free.
//!
//! Multiplications by the constants `1` and `-1` are never executed: the
//! transforms select separate code paths for them when the plan is built.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A real sample. Arithmetic on it goes through [`ExecutionContext`].
pub type Scalar = f64;

/// Tally of executed real additions and multiplications.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OpCounter {
    pub adds: u64,
    pub mults: u64,
}

impl OpCounter {
    pub fn flops(&self) -> u64 {
        self.adds + self.mults
    }
}

impl std::ops::Sub for OpCounter {
    type Output = OpCounter;

    fn sub(self, rhs: OpCounter) -> OpCounter {
        OpCounter {
            adds: self.adds - rhs.adds,
            mults: self.mults - rhs.mults,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Numeric,
    Audited,
}

/// Owns at most one counter. Not meant to be shared between threads; give
/// each concurrent computation its own context.
#[derive(Debug, Clone, Default)]
pub struct ExecutionContext {
    counter: Option<OpCounter>,
}

impl ExecutionContext {
    pub fn numeric() -> Self {
        ExecutionContext { counter: None }
    }

    pub fn audited() -> Self {
        ExecutionContext {
            counter: Some(OpCounter::default()),
        }
    }

    pub fn mode(&self) -> Mode {
        match self.counter {
            Some(_) => Mode::Audited,
            None => Mode::Numeric,
        }
    }

    /// Current tally, without resetting it.
    pub fn snapshot(&self) -> Result<OpCounter> {
        self.counter.ok_or(Error::NotAudited)
    }

    #[inline(always)]
    fn count_add(&mut self) {
        if let Some(c) = self.counter.as_mut() {
            c.adds += 1;
        }
    }

    #[inline(always)]
    fn count_mul(&mut self, times: u64) {
        if let Some(c) = self.counter.as_mut() {
            c.mults += times;
        }
    }

    #[inline(always)]
    pub fn add(&mut self, a: Scalar, b: Scalar) -> Scalar {
        self.count_add();
        a + b
    }

    #[inline(always)]
    pub fn sub(&mut self, a: Scalar, b: Scalar) -> Scalar {
        self.count_add();
        a - b
    }

    #[inline(always)]
    pub fn mul(&mut self, a: Scalar, c: Scalar) -> Scalar {
        self.count_mul(1);
        a * c
    }

    #[inline(always)]
    pub fn neg(&self, a: Scalar) -> Scalar {
        -a
    }

    // Complex helpers. Each one is spelled out in terms of the real operations
    // it performs so the tallies stay exact.

    #[inline(always)]
    pub fn cadd(&mut self, a: Complex64, b: Complex64) -> Complex64 {
        Complex64::new(self.add(a.re, b.re), self.add(a.im, b.im))
    }

    #[inline(always)]
    pub fn csub(&mut self, a: Complex64, b: Complex64) -> Complex64 {
        Complex64::new(self.sub(a.re, b.re), self.sub(a.im, b.im))
    }

    /// Complex value times a real constant: two multiplications.
    #[inline(always)]
    pub fn cscale(&mut self, a: Complex64, c: Scalar) -> Complex64 {
        Complex64::new(self.mul(a.re, c), self.mul(a.im, c))
    }

    /// `a + i*b`
    #[inline(always)]
    pub fn cadd_i(&mut self, a: Complex64, b: Complex64) -> Complex64 {
        Complex64::new(self.sub(a.re, b.im), self.add(a.im, b.re))
    }

    /// `a - i*b`
    #[inline(always)]
    pub fn csub_i(&mut self, a: Complex64, b: Complex64) -> Complex64 {
        Complex64::new(self.add(a.re, b.im), self.sub(a.im, b.re))
    }
}
