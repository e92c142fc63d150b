use crate::maps::{Jacobian, Point};

/// Largest singular value and its right singular vector, by power
/// iteration on `J^T J`.
pub(crate) fn top_singular<const D: usize>(j: &Jacobian<D>) -> (f64, Point<D>) {
    let mut jtj = [[0.0; D]; D];
    for a in 0..D {
        for b in 0..D {
            jtj[a][b] = (0..D).map(|k| j[k][a] * j[k][b]).sum();
        }
    }
    let scale = jtj.iter().flatten().map(|v| v.abs()).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        let mut v = [0.0; D];
        v[0] = 1.0;
        return (0.0, v);
    }
    // start from the column of largest norm; avoids a start orthogonal to
    // the top vector for diagonal matrices
    let best = (0..D)
        .max_by(|&a, &b| jtj[a][a].total_cmp(&jtj[b][b]))
        .unwrap_or(0);
    let mut v = [0.0; D];
    for k in 0..D {
        v[k] = jtj[k][best] / scale + if k == best { 1e-3 } else { 1e-6 };
    }
    normalize(&mut v);
    for _ in 0..200 {
        let mut w = [0.0; D];
        for a in 0..D {
            w[a] = (0..D).map(|b| jtj[a][b] * v[b]).sum::<f64>() / scale;
        }
        if normalize(&mut w) == 0.0 {
            break;
        }
        let diff: f64 = (0..D).map(|k| (w[k] - v[k]).abs()).sum();
        v = w;
        if diff < 1e-14 {
            break;
        }
    }
    (apply_norm(j, &v), v)
}

pub(crate) fn apply_norm<const D: usize>(j: &Jacobian<D>, v: &Point<D>) -> f64 {
    (0..D)
        .map(|a| {
            let s: f64 = (0..D).map(|b| j[a][b] * v[b]).sum();
            s * s
        })
        .sum::<f64>()
        .sqrt()
}

fn normalize<const D: usize>(v: &mut Point<D>) -> f64 {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}

/// Least-squares line through `(x, y)`; returns `(slope, rms residual)`.
pub(crate) fn fit_line(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    if points.len() < 2 {
        return (0.0, 0.0);
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let rms = (points
        .iter()
        .map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    (slope, rms)
}
