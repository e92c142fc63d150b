use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use entropy_core::estimate::{
    growth_rate_with, separated_entropy_with, snake_bound, variation_verdict, EstimatorConfig,
    SampleGrid,
};
use entropy_core::maps::{
    family_g, isotopy_map, Family, IsotopyFamily, ModelHorseshoe, DEFAULT_RAMP,
};
use entropy_core::report::{
    format_float, sweep_discontinuity, sweep_entropy_gap, DiscontinuityConfig, GapRequest,
    SweepReport,
};
use entropy_core::sft::{decompose, spectral_radius, TransitionMatrix, DEFAULT_TOL};
use entropy_core::tangency::{extend_matrix, perron_chain, ExtensionSpec, SpecFile};

use crate::args::*;
use crate::config::{self, config_error, merge, required};

pub fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let loaded = config::load(cli.config.as_deref())?;
    let base = loaded.base;
    let file = loaded.file;
    let jobs = cli.jobs.or(file.jobs).unwrap_or(1);
    let seed = cli.seed.or(file.seed).unwrap_or(0);
    if jobs == 0 {
        return Err(config_error("--jobs must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| config_error(format!("cannot start {jobs} workers: {e}")))?;
    let ctx = Ctx { seed };
    let mut buf: Vec<u8> = Vec::new();
    let result = pool.install(|| {
        let out: &mut dyn Write = &mut buf;
        match cli.command {
        Command::SftEntropy(mut a) => {
            merge!(a, file.sft_entropy, base; [tol, decompose]; [matrix]);
            sft_entropy(a, out)
        }
        Command::Extend(mut a) => {
            merge!(a, file.extend, base; [n1, n2]; [spec, h, out]);
            extend(a, out)
        }
        Command::Chain(mut a) => {
            merge!(a, file.chain, base; [n1, n2, tol]; [spec, h, matrix, out]);
            chain(a, out)
        }
        Command::Estimate(mut a) => {
            merge!(a, file.estimate, base;
                [family, params, n, epsilon, grid_resolution, tail_window, ramp, growth]; [out]);
            estimate(a, out)
        }
        Command::SweepGap(mut a) => {
            merge!(a, file.sweep_gap, base; [n1, n2, tol]; [h, out]);
            sweep_gap(a, &ctx, out)
        }
        Command::SweepDisc(mut a) => {
            merge!(a, file.sweep_disc, base;
                [taus, n, epsilon, grid_resolution, ball_n, ball_epsilon, ball_grid_resolution, ramp];
                [out]);
            sweep_disc(a, &ctx, out)
        }
        Command::Snake(mut a) => {
            merge!(a, file.snake, base; [lambda, mu, tau, eps]; []);
            snake(a, out)
        }
        Command::Verdict(mut a) => {
            merge!(a, file.verdict, base; [pieces, index, alpha]; []);
            verdict(a, out)
        }
        }
    });
    out.write_all(&buf)?;
    result
}

struct Ctx {
    seed: u64,
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<TransitionMatrix> {
    let text = read_text(path)?;
    text.parse::<TransitionMatrix>()
        .with_context(|| format!("in matrix file {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| config_error(format!("cannot write {}: {e}", path.display())))
}

fn sft_entropy(a: SftEntropyArgs, out: &mut dyn Write) -> Result<()> {
    let path = required(a.matrix, "matrix")?;
    let m = read_matrix(&path)?;
    let tol = a.tol.unwrap_or(DEFAULT_TOL);
    let r = spectral_radius(&m, tol)?;
    writeln!(out, "order: {}", m.order())?;
    writeln!(out, "spectral radius: {}", r.radius)?;
    writeln!(out, "entropy: {}", r.entropy)?;
    writeln!(out, "iterations: {}", r.iterations)?;
    writeln!(out, "degenerate: {}", r.degenerate)?;
    if let Some(o) = r.oracle_radius {
        writeln!(out, "oracle radius: {o}")?;
    }
    if a.decompose.unwrap_or(false) {
        let d = decompose(&m, tol)?;
        for (i, c) in d.components.iter().enumerate() {
            let mark = if d.responsible_index == Some(i) {
                " *"
            } else {
                ""
            };
            writeln!(
                out,
                "component {i}: symbols {:?} entropy {}{mark}",
                c.symbols, c.entropy
            )?;
        }
    }
    Ok(())
}

fn load_spec(
    spec: Option<PathBuf>,
    h: Option<PathBuf>,
    n1: Option<usize>,
    n2: Option<usize>,
) -> Result<ExtensionSpec> {
    let file = match &spec {
        Some(p) => Some((
            SpecFile::parse(&read_text(p)?)?,
            p.parent().map(Path::to_path_buf),
        )),
        None => None,
    };
    let h_path = match (h, &file) {
        (Some(h), _) => h,
        (None, Some((f, dir))) => dir.clone().unwrap_or_default().join(&f.h_path),
        (None, None) => return Err(config_error("missing required value `H`")),
    };
    let n1 = required(n1.or(file.as_ref().map(|f| f.0.n1)), "n1")?;
    let n2 = required(n2.or(file.as_ref().map(|f| f.0.n2)), "n2")?;
    Ok(ExtensionSpec::new(read_matrix(&h_path)?, n1, n2)?)
}

fn extend(a: ExtendArgs, out: &mut dyn Write) -> Result<()> {
    let spec = load_spec(a.spec, a.h, a.n1, a.n2)?;
    let m = extend_matrix(&spec);
    match &a.out {
        Some(p) => {
            write_file(p, &m.to_text())?;
            writeln!(
                out,
                "wrote order-{} matrix (s = {}, ell = {}) to {}",
                m.order(),
                spec.s(),
                spec.ell(),
                p.display()
            )?;
        }
        None => write!(out, "{}", m.to_text())?,
    }
    Ok(())
}

fn chain(a: ChainArgs, out: &mut dyn Write) -> Result<()> {
    let spec = load_spec(a.spec, a.h, a.n1, a.n2)?;
    let m = match &a.matrix {
        Some(p) => read_matrix(p)?,
        None => extend_matrix(&spec),
    };
    let report = perron_chain(&m, &spec, a.tol.unwrap_or(DEFAULT_TOL))?;
    if let Some(p) = &a.out {
        write_file(p, &report.to_csv())?;
    }
    let radii: Vec<String> = report.radii.iter().map(|r| format!("{r:.12}")).collect();
    writeln!(out, "radii: {}", radii.join(" > "))?;
    writeln!(out, "margin: {}", report.margin)?;
    writeln!(out, "strict growth: {}", report.conclusion)?;
    Ok(())
}

fn estimate(a: EstimateArgs, out: &mut dyn Write) -> Result<()> {
    let name = a.family.unwrap_or_else(|| "horseshoe".into());
    let family = Family::from_name(&name, a.params.unwrap_or(0.0))?;
    let iso = IsotopyFamily::new(ModelHorseshoe::new(), a.ramp.unwrap_or(DEFAULT_RAMP))?;
    let mut cfg = EstimatorConfig::new(
        a.n.unwrap_or(12),
        a.epsilon.unwrap_or(1e-3),
        SampleGrid::new(a.grid_resolution.unwrap_or(400))?,
    );
    if let Some(w) = &a.tail_window {
        if w.len() != 2 {
            return Err(config_error("tail-window takes exactly two values"));
        }
        cfg.tail_window = Some((w[0], w[1]));
    }
    let growth = a.growth.unwrap_or(false);
    let (csv, value) = match family {
        Family::Horseshoe => run_estimate(&ModelHorseshoe::new(), &cfg, growth)?,
        Family::Isotopy { t } => run_estimate(&isotopy_map(t, &iso)?, &cfg, growth)?,
        Family::Ball3 { tau } => run_estimate(&family_g(tau, &iso)?, &cfg, growth)?,
    };
    if let Some(p) = &a.out {
        write_file(p, &csv)?;
    }
    let what = if growth {
        "growth rate"
    } else {
        "entropy estimate"
    };
    writeln!(out, "family: {name}")?;
    writeln!(
        out,
        "n: {}  epsilon: {}  grid: {}",
        cfg.n, cfg.epsilon, cfg.grid.resolution
    )?;
    writeln!(out, "{what}: {value}")?;
    Ok(())
}

fn run_estimate<const D: usize, M: entropy_core::maps::DynamicalMap<D>>(
    map: &M,
    cfg: &EstimatorConfig,
    growth: bool,
) -> Result<(String, f64)> {
    if growth {
        let r = growth_rate_with(map, cfg.n, &cfg.grid, cfg.tail_window)?;
        Ok((r.to_csv(), r.value))
    } else {
        let e = separated_entropy_with(map, cfg)?;
        Ok((e.to_csv(), e.value))
    }
}

fn finish_report(
    mut report: SweepReport,
    ctx: &Ctx,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<()> {
    report.metadata.timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .ok()
        .map(|d| d.as_secs());
    if let Some(p) = path {
        write_file(p, &report.to_csv())?;
    }
    write!(out, "{}", report.summary())?;
    writeln!(out, "seed: {}", ctx.seed)?;
    Ok(())
}

fn sweep_gap(a: SweepGapArgs, ctx: &Ctx, out: &mut dyn Write) -> Result<()> {
    let h = read_matrix(&required(a.h, "H")?)?;
    let n1 = a.n1.unwrap_or_else(|| vec![1, 2, 3]);
    let grid: Vec<GapRequest> = match &a.n2 {
        None => n1
            .iter()
            .map(|&n| GapRequest {
                h: h.clone(),
                n1: n,
                n2: n,
            })
            .collect(),
        Some(n2) => n1
            .iter()
            .flat_map(|&x| n2.iter().map(move |&y| (x, y)))
            .map(|(x, y)| GapRequest {
                h: h.clone(),
                n1: x,
                n2: y,
            })
            .collect(),
    };
    let report = sweep_entropy_gap(&grid, a.tol.unwrap_or(DEFAULT_TOL))?;
    finish_report(report, ctx, a.out.as_deref(), out)
}

fn sweep_disc(a: SweepDiscArgs, ctx: &Ctx, out: &mut dyn Write) -> Result<()> {
    let taus = a.taus.unwrap_or_else(|| vec![0.0, 0.05, 0.2]);
    let cfg = DiscontinuityConfig {
        slice: EstimatorConfig::new(
            a.n.unwrap_or(12),
            a.epsilon.unwrap_or(1e-3),
            SampleGrid::new(a.grid_resolution.unwrap_or(400))?,
        ),
        ball: EstimatorConfig::new(
            a.ball_n.unwrap_or(10),
            a.ball_epsilon.unwrap_or(1e-2),
            SampleGrid::new(a.ball_grid_resolution.unwrap_or(40))?,
        ),
        ramp: a.ramp.unwrap_or(DEFAULT_RAMP),
    };
    let report = sweep_discontinuity(&taus, &cfg)?;
    finish_report(report, ctx, a.out.as_deref(), out)
}

fn snake(a: SnakeArgs, out: &mut dyn Write) -> Result<()> {
    let lambda = required(a.lambda, "lambda")?;
    let v = snake_bound(lambda, a.mu, a.tau.unwrap_or(1), a.eps.unwrap_or(0.0))?;
    writeln!(out, "snake bound: {v}")?;
    writeln!(out, "csv: {}", format_float(v))?;
    Ok(())
}

fn verdict(a: VerdictArgs, out: &mut dyn Write) -> Result<()> {
    let pieces = required(a.pieces, "pieces")?;
    let index = required(a.index, "index")?;
    let v = variation_verdict(&pieces, index, a.alpha.unwrap_or(0.0))?;
    writeln!(out, "verdict: {v}")?;
    writeln!(out, "gap: {}", v.gap)?;
    Ok(())
}
