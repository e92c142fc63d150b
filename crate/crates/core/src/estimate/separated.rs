use super::engine::{self, EngineConfig};
use super::linalg::fit_line;
use super::{EstimatorConfig, SampleGrid, COARSE_FACTOR};
use crate::error::{Error, Result};
use crate::maps::DynamicalMap;

/// Separated-set entropy estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyEstimate {
    /// Fitted tail slope of `log r(m, eps)`, clamped at zero.
    pub value: f64,
    pub n: usize,
    pub epsilon: f64,
    /// Estimated `r(m, eps)` for `m = 1..=n`, rounded.
    pub cardinalities: Vec<u64>,
    /// Natural logs of the unrounded cardinalities.
    pub log_cardinalities: Vec<f64>,
    pub window: (usize, usize),
    pub residual: f64,
    pub method: &'static str,
}

impl EntropyEstimate {
    /// `(1/m) log r(m)` for each length.
    pub fn rates(&self) -> Vec<f64> {
        self.log_cardinalities
            .iter()
            .enumerate()
            .map(|(i, l)| l / (i + 1) as f64)
            .collect()
    }

    /// Columns `m,cardinality,rate`, then a final `estimate` row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,cardinality,rate\n");
        for (i, (c, r)) in self.cardinalities.iter().zip(self.rates()).enumerate() {
            out.push_str(&format!(
                "{},{},{}\n",
                i + 1,
                c,
                crate::report::format_float(r)
            ));
        }
        out.push_str(&format!(
            "estimate,,{}\n",
            crate::report::format_float(self.value)
        ));
        out
    }
}

pub fn separated_entropy<const D: usize, M: DynamicalMap<D> + ?Sized>(
    map: &M,
    n: usize,
    epsilon: f64,
    grid: &SampleGrid,
) -> Result<EntropyEstimate> {
    separated_entropy_with(map, &EstimatorConfig::new(n, epsilon, *grid))
}

pub fn separated_entropy_with<const D: usize, M: DynamicalMap<D> + ?Sized>(
    map: &M,
    cfg: &EstimatorConfig,
) -> Result<EntropyEstimate> {
    if cfg.n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 2, got {}",
            cfg.n
        )));
    }
    if !(cfg.epsilon > 0.0 && cfg.epsilon.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive, got {}",
            cfg.epsilon
        )));
    }
    let window = cfg.window()?;
    let spacing = cfg.grid.spacing(map.domain().radius);
    if spacing > COARSE_FACTOR * cfg.epsilon {
        return Err(Error::GridTooCoarse {
            spacing,
            epsilon: cfg.epsilon,
        });
    }
    let (seeds, _) = engine::grid_seeds(map, cfg.grid.resolution);
    let engine_cfg = EngineConfig {
        levels: cfg.n,
        epsilon: cfg.epsilon,
        budget: cfg.budget.unwrap_or(seeds.len()).max(1),
        require_stay: true,
        refine: true,
    };
    let stats = engine::run(map, &seeds, &engine_cfg)?;
    let mut logs: Vec<f64> = stats.iter().map(|s| s.log_cardinality).collect();
    // an extinct population separates nothing further
    let last = logs.last().copied().unwrap_or(f64::NEG_INFINITY);
    logs.resize(cfg.n, last);
    let cardinalities = logs
        .iter()
        .map(|l| {
            if l.is_finite() {
                l.exp().round().min(u64::MAX as f64) as u64
            } else {
                0
            }
        })
        .collect();
    let pts: Vec<(f64, f64)> = (window.0..=window.1)
        .filter_map(|m| {
            let l = logs[m - 1];
            l.is_finite().then_some((m as f64, l))
        })
        .collect();
    let (slope, residual) = if pts.len() >= 2 {
        fit_line(&pts)
    } else {
        (0.0, 0.0)
    };
    Ok(EntropyEstimate {
        value: slope.max(0.0),
        n: cfg.n,
        epsilon: cfg.epsilon,
        cardinalities,
        log_cardinalities: logs,
        window,
        residual,
        method: "separated-sets",
    })
}
