//! Parameter sweeps and their CSV / plain-text rendering.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::estimate::{separated_entropy_with, variation_verdict, EstimatorConfig, VerdictSet};
use crate::maps::{family_g, isotopy_map, IsotopyFamily};
use crate::par;
use crate::sft::{spectral_radius, TransitionMatrix};
use crate::tangency::{extend_matrix, ExtensionSpec};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Fixed float rendering for every CSV: 17 significant digits.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// 64-bit FNV-1a.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub params: Vec<String>,
    pub values: Vec<f64>,
    pub verdict: Option<VerdictSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metadata {
    pub config_hash: u64,
    pub version: String,
    /// Unix seconds; never written to CSV so reruns stay byte-identical.
    pub timestamp: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub title: String,
    pub param_names: Vec<String>,
    pub value_names: Vec<String>,
    pub rows: Vec<SweepRow>,
    pub metadata: Metadata,
}

impl SweepReport {
    fn new(title: &str, params: &[&str], values: &[&str], canonical: &str) -> Self {
        Self {
            title: title.into(),
            param_names: params.iter().map(|s| s.to_string()).collect(),
            value_names: values.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            metadata: Metadata {
                config_hash: fnv1a64(canonical.as_bytes()),
                version: VERSION.into(),
                timestamp: None,
            },
        }
    }

    pub fn value(&self, row: usize, name: &str) -> Option<f64> {
        let col = self.value_names.iter().position(|n| n == name)?;
        self.rows.get(row).map(|r| r.values[col])
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self
            .param_names
            .iter()
            .chain(&self.value_names)
            .map(String::as_str)
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .params
                .iter()
                .cloned()
                .chain(row.values.iter().map(|v| format_float(*v)))
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);
        let _ = writeln!(out, "version: {}", self.metadata.version);
        let _ = writeln!(out, "config hash: {:016x}", self.metadata.config_hash);
        if let Some(ts) = self.metadata.timestamp {
            let _ = writeln!(out, "timestamp: {ts}");
        }
        let _ = writeln!(out, "rows: {}", self.rows.len());
        for row in &self.rows {
            let params: Vec<String> = self
                .param_names
                .iter()
                .zip(&row.params)
                .map(|(n, v)| format!("{n}={v}"))
                .collect();
            let values: Vec<String> = self
                .value_names
                .iter()
                .zip(&row.values)
                .map(|(n, v)| format!("{n}={v:.6}"))
                .collect();
            let _ = write!(out, "  {}  {}", params.join(" "), values.join(" "));
            if let Some(v) = &row.verdict {
                let _ = write!(out, "  verdict={v}");
            }
            out.push('\n');
        }
        out
    }
}

/// One requested extension; validated when the sweep runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapRequest {
    pub h: TransitionMatrix,
    pub n1: usize,
    pub n2: usize,
}

/// Rows of `(lambda_0, lambda_mu, gap)` per extension, sorted by
/// `(order of H, N1, N2)`. The gap is `log lambda_mu - log lambda_0`.
pub fn sweep_entropy_gap(grid: &[GapRequest], tol: f64) -> Result<SweepReport> {
    let specs = grid
        .iter()
        .enumerate()
        .map(|(i, g)| {
            ExtensionSpec::new(g.h.clone(), g.n1, g.n2).map_err(|e| match e {
                Error::InvalidSpec(msg) => Error::InvalidSpec(format!("row {i}: {msg}")),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (0..specs.len()).collect();
    order.sort_by_key(|&i| {
        (
            specs[i].s(),
            specs[i].n1(),
            specs[i].n2(),
            specs[i].h().to_text(),
        )
    });
    let mut canonical = format!("sweep-gap tol={}\n", format_float(tol));
    for &i in &order {
        let rows: Vec<String> = specs[i]
            .h()
            .rows_u8()
            .iter()
            .map(|r| r.iter().map(|b| b.to_string()).collect())
            .collect();
        let _ = writeln!(
            canonical,
            "H={} N1={} N2={}",
            rows.join(";"),
            specs[i].n1(),
            specs[i].n2()
        );
    }
    let computed = par::map(&order, |&i| -> Result<(f64, f64)> {
        let l0 = spectral_radius(specs[i].h(), tol)?.radius;
        let lm = spectral_radius(&extend_matrix(&specs[i]), tol)?.radius;
        Ok((l0, lm))
    });
    let mut report = SweepReport::new(
        "entropy gap sweep",
        &["order", "n1", "n2"],
        &["lambda_0", "lambda_mu", "gap"],
        &canonical,
    );
    for (&i, res) in order.iter().zip(computed) {
        let (l0, lm) = res?;
        let spec = &specs[i];
        // the unfolded piece is the only basic piece, hence responsible
        let verdict = variation_verdict(&[lm.ln()], 0, 0.0)?;
        report.rows.push(SweepRow {
            params: vec![
                spec.s().to_string(),
                spec.n1().to_string(),
                spec.n2().to_string(),
            ],
            values: vec![l0, lm, lm.ln() - l0.ln()],
            verdict: Some(verdict),
        });
    }
    Ok(report)
}

/// Estimator settings for the discontinuity sweep: the invariant slice at
/// `tau = 0` uses `slice`, every `tau > 0` uses `ball` on the full ball.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscontinuityConfig {
    pub slice: EstimatorConfig,
    pub ball: EstimatorConfig,
    pub ramp: f64,
}

fn estimator_text(cfg: &EstimatorConfig) -> String {
    let w = cfg.window().unwrap_or((0, 0));
    format!(
        "n={} epsilon={} grid={} window={}..{} budget={:?}",
        cfg.n,
        format_float(cfg.epsilon),
        cfg.grid.resolution,
        w.0,
        w.1,
        cfg.budget
    )
}

/// Rows of `(tau, region, entropy)` sorted by `tau`. The `tau = 0` row is
/// restricted to the invariant slice `z = 0`.
pub fn sweep_discontinuity(taus: &[f64], cfg: &DiscontinuityConfig) -> Result<SweepReport> {
    if let Some(bad) = taus.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
        return Err(Error::InvalidArgument(format!(
            "tau must be nonnegative, got {bad}"
        )));
    }
    if !taus.contains(&0.0) {
        return Err(Error::InvalidArgument("tau grid must include 0".into()));
    }
    let mut sorted = taus.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    let family = IsotopyFamily::new(crate::maps::ModelHorseshoe::new(), cfg.ramp)?;
    let mut canonical = format!(
        "sweep-disc ramp={}\nslice {}\nball {}\n",
        format_float(cfg.ramp),
        estimator_text(&cfg.slice),
        estimator_text(&cfg.ball)
    );
    for t in &sorted {
        let _ = writeln!(canonical, "tau={}", format_float(*t));
    }
    let mut report = SweepReport::new(
        "entropy discontinuity sweep",
        &["tau", "region"],
        &["entropy"],
        &canonical,
    );
    // each estimate is already data-parallel, so rows run in order
    for &tau in &sorted {
        let (region, value) = if tau == 0.0 {
            let slice = isotopy_map(0.0, &family)?;
            ("slice", separated_entropy_with(&slice, &cfg.slice)?.value)
        } else {
            let g = family_g(tau, &family)?;
            ("ball", separated_entropy_with(&g, &cfg.ball)?.value)
        };
        report.rows.push(SweepRow {
            params: vec![format_float(tau), region.into()],
            values: vec![value],
            verdict: None,
        });
    }
    Ok(report)
}
