//! Memoized plan construction.
//!
//! Plans are immutable once built and shared through `Arc`, so the quarter-size
//! children that appear twice in every split (and the same sizes reached by
//! different recursion paths) are built once per planner.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{check_pow2, Result};
use crate::fft::{FftPlan, FftVariant};
use crate::trig::{Dct3Plan, Dct3Variant, Dct4Output, Dct4Plan};

#[derive(Default)]
pub struct Planner {
    fft: HashMap<(usize, FftVariant), Arc<FftPlan>>,
    dct3: HashMap<(usize, Dct3Variant), Arc<Dct3Plan>>,
    dct4: HashMap<(usize, Dct4Output), Arc<Dct4Plan>>,
}

impl Planner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fft(&mut self, n: usize, variant: FftVariant) -> Result<Arc<FftPlan>> {
        check_pow2(n)?;
        if let Some(plan) = self.fft.get(&(n, variant)) {
            return Ok(plan.clone());
        }
        let plan = Arc::new(FftPlan::build(self, n, variant)?);
        self.fft.insert((n, variant), plan.clone());
        Ok(plan)
    }

    pub fn dct3(&mut self, n: usize, variant: Dct3Variant) -> Result<Arc<Dct3Plan>> {
        check_pow2(n)?;
        if let Some(plan) = self.dct3.get(&(n, variant)) {
            return Ok(plan.clone());
        }
        let plan = Arc::new(Dct3Plan::build(self, n, variant)?);
        self.dct3.insert((n, variant), plan.clone());
        Ok(plan)
    }

    pub fn dct4(&mut self, n: usize, output: Dct4Output) -> Result<Arc<Dct4Plan>> {
        check_pow2(n)?;
        if let Some(plan) = self.dct4.get(&(n, output)) {
            return Ok(plan.clone());
        }
        let plan = Arc::new(Dct4Plan::build(self, n, output)?);
        self.dct4.insert((n, output), plan.clone());
        Ok(plan)
    }

    /// Number of distinct plans held, across all kinds.
    pub fn cached_plans(&self) -> usize {
        self.fft.len() + self.dct3.len() + self.dct4.len()
    }
}
