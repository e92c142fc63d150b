use super::engine::{grid_seeds, run, EngineConfig};
use super::linalg::fit_line;
use super::SampleGrid;
use crate::error::{Error, Result};
use crate::maps::DynamicalMap;

/// Growth rate of the largest derivative norm along sampled orbits.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRate {
    pub value: f64,
    /// `(m, max log ||Df^m||)` for `m = 1..=n`.
    pub samples: Vec<(usize, f64)>,
    pub window: (usize, usize),
    pub residual: f64,
}

impl GrowthRate {
    /// Columns `m,max_log_norm`, then a final `estimate` row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,max_log_norm\n");
        for (m, v) in &self.samples {
            out.push_str(&format!("{m},{}\n", crate::report::format_float(*v)));
        }
        out.push_str(&format!(
            "estimate,{}\n",
            crate::report::format_float(self.value)
        ));
        out
    }
}

pub fn growth_rate<const D: usize, M: DynamicalMap<D> + ?Sized>(
    map: &M,
    n: usize,
    grid: &SampleGrid,
) -> Result<GrowthRate> {
    growth_rate_with(map, n, grid, None)
}

pub fn growth_rate_with<const D: usize, M: DynamicalMap<D> + ?Sized>(
    map: &M,
    n: usize,
    grid: &SampleGrid,
    tail_window: Option<(usize, usize)>,
) -> Result<GrowthRate> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 4, got {n}"
        )));
    }
    let window = tail_window.unwrap_or((n.div_ceil(2), n));
    if window.0 < 1 || window.1 > n || window.1 <= window.0 {
        return Err(Error::InvalidArgument(format!(
            "tail window [{}, {}] must satisfy 1 <= lo < hi <= n = {n}",
            window.0, window.1
        )));
    }
    // Plain grid orbits drift off the set carrying the largest expansion,
    // so the maximum is taken over the refined separated populations.
    let (seeds, spacing) = grid_seeds(map, grid.resolution);
    let cfg = EngineConfig {
        levels: n,
        epsilon: spacing,
        budget: seeds.len().max(1),
        require_stay: false,
        refine: true,
    };
    let stats = run(map, &seeds, &cfg)?;
    let mut best = vec![f64::NEG_INFINITY; n];
    for s in &stats {
        best[s.m - 1] = s.max_log_norm;
    }
    let samples: Vec<(usize, f64)> = best.iter().enumerate().map(|(i, v)| (i + 1, *v)).collect();
    let pts: Vec<(f64, f64)> = samples[window.0 - 1..window.1]
        .iter()
        .filter(|(_, v)| v.is_finite())
        .map(|&(m, v)| (m as f64, v))
        .collect();
    let (slope, residual) = if pts.len() >= 2 {
        fit_line(&pts)
    } else {
        (0.0, 0.0)
    };
    Ok(GrowthRate {
        value: slope.max(0.0),
        samples,
        window,
        residual,
    })
}
