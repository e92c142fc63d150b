//! Entropy estimation for sampled maps and closed-form entropy bounds.
//!
//! The separated-set estimator only ever lower-bounds separation counts;
//! it never certifies an upper bound on entropy.

mod bounds;
mod engine;
mod growth;
mod linalg;
mod separated;

pub use bounds::{snake_bound, variation_verdict, yomdin_defect, Verdict, VerdictSet};
pub use growth::{growth_rate, growth_rate_with, GrowthRate};
pub use separated::{separated_entropy, separated_entropy_with, EntropyEstimate};

use crate::error::{Error, Result};

/// Uniform grid over the bounding box of a map's domain, `resolution`
/// points per axis. Only points inside the domain are used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleGrid {
    pub resolution: usize,
}

impl SampleGrid {
    pub fn new(resolution: usize) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid resolution must be at least 2, got {resolution}"
            )));
        }
        Ok(Self { resolution })
    }

    pub fn spacing(&self, radius: f64) -> f64 {
        2.0 * radius / (self.resolution - 1) as f64
    }
}

/// A grid of spacing above this many multiples of epsilon is rejected.
pub const COARSE_FACTOR: f64 = 10.0;

/// Knobs shared by the estimators.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig {
    pub n: usize,
    pub epsilon: f64,
    pub grid: SampleGrid,
    /// Inclusive range of lengths used in the tail fit; defaults to
    /// `[ceil(n/2), n]`.
    pub tail_window: Option<(usize, usize)>,
    /// Population cap per level; defaults to the number of seeds.
    pub budget: Option<usize>,
}

impl EstimatorConfig {
    pub fn new(n: usize, epsilon: f64, grid: SampleGrid) -> Self {
        Self {
            n,
            epsilon,
            grid,
            tail_window: None,
            budget: None,
        }
    }

    pub fn window(&self) -> Result<(usize, usize)> {
        let (lo, hi) = self.tail_window.unwrap_or((self.n.div_ceil(2), self.n));
        if lo < 1 || hi > self.n || hi <= lo {
            return Err(Error::InvalidArgument(format!(
                "tail window [{lo}, {hi}] must satisfy 1 <= lo < hi <= n = {}",
                self.n
            )));
        }
        Ok((lo, hi))
    }
}
