//! Explicit map families: the planar model horseshoe, its isotopy to a
//! contraction, and the composed family on the closed 3-ball.

mod ball;
mod horseshoe;
mod isotopy;

pub use ball::{family_g, Ball3Map, FlowFactor};
pub use horseshoe::{ModelHorseshoe, CORE_HALF_WIDTH};
pub use isotopy::{alpha, compute_eps0, isotopy_map, IsotopyFamily, SliceMap, DEFAULT_RAMP};

use crate::error::{Error, Result};
use crate::report::format_float;

pub type Point<const D: usize> = [f64; D];
pub type Jacobian<const D: usize> = [[f64; D]; D];

/// Closed Euclidean ball `|p - center| <= radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain<const D: usize> {
    pub center: Point<D>,
    pub radius: f64,
}

impl<const D: usize> Domain<D> {
    pub fn unit() -> Self {
        Self {
            center: [0.0; D],
            radius: 1.0,
        }
    }

    /// How far `p` lies outside the ball (0 inside).
    pub fn excess(&self, p: &Point<D>) -> f64 {
        (distance(p, &self.center) - self.radius).max(0.0)
    }

    pub fn contains(&self, p: &Point<D>, tol: f64) -> bool {
        self.excess(p) <= tol
    }
}

/// A smooth (or piecewise smooth) self-map with its derivative.
///
/// Implementations are immutable and reentrant, so estimators evaluate them
/// from many threads at once.
pub trait DynamicalMap<const D: usize>: Send + Sync {
    fn evaluate(&self, p: &Point<D>) -> Point<D>;
    fn jacobian(&self, p: &Point<D>) -> Jacobian<D>;
    fn domain(&self) -> Domain<D>;

    /// True when `p` is within `width` of a place where the map is only
    /// piecewise smooth. Derivative checks skip such points.
    fn near_seam(&self, _p: &Point<D>, _width: f64) -> bool {
        false
    }
}

pub trait PlanarMap: DynamicalMap<2> {}
impl<T: DynamicalMap<2>> PlanarMap for T {}

pub fn distance<const D: usize>(a: &Point<D>, b: &Point<D>) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn mat_mul<const D: usize>(a: &Jacobian<D>, b: &Jacobian<D>) -> Jacobian<D> {
    let mut out = [[0.0; D]; D];
    for i in 0..D {
        for j in 0..D {
            out[i][j] = (0..D).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn mat_vec<const D: usize>(a: &Jacobian<D>, v: &Point<D>) -> Point<D> {
    let mut out = [0.0; D];
    for i in 0..D {
        out[i] = (0..D).map(|k| a[i][k] * v[k]).sum();
    }
    out
}

pub fn identity<const D: usize>() -> Jacobian<D> {
    let mut out = [[0.0; D]; D];
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    out
}

/// Central differences with step `h`.
pub fn finite_difference_jacobian<const D: usize, M: DynamicalMap<D> + ?Sized>(
    map: &M,
    p: &Point<D>,
    h: f64,
) -> Jacobian<D> {
    let mut out = [[0.0; D]; D];
    for j in 0..D {
        let (mut plus, mut minus) = (*p, *p);
        plus[j] += h;
        minus[j] -= h;
        let (fp, fm) = (map.evaluate(&plus), map.evaluate(&minus));
        for i in 0..D {
            out[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    out
}

/// Forward orbit `p, f(p), ..., f^steps(p)`.
pub fn orbit<const D: usize, M: DynamicalMap<D> + ?Sized>(
    map: &M,
    p: &Point<D>,
    steps: usize,
) -> Vec<Point<D>> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut x = *p;
    out.push(x);
    for _ in 0..steps {
        x = map.evaluate(&x);
        out.push(x);
    }
    out
}

/// Orbit dump with columns `step,x,y[,z]`.
pub fn orbit_csv<const D: usize>(orbit: &[Point<D>]) -> String {
    let names = ["x", "y", "z", "w"];
    let mut out = String::from("step");
    for name in names.iter().take(D) {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (k, p) in orbit.iter().enumerate() {
        out.push_str(&k.to_string());
        for v in p {
            out.push(',');
            out.push_str(&format_float(*v));
        }
        out.push('\n');
    }
    out
}

/// Newton iteration on `f(p) - p` from each seed. Returns the points where
/// the residual fell below `tol`; iterates are projected back into the
/// map's domain after every step.
pub fn fixed_point_search<const D: usize, M: DynamicalMap<D> + ?Sized>(
    map: &M,
    seeds: &[Point<D>],
    tol: f64,
    max_steps: usize,
) -> Vec<Point<D>> {
    let domain = map.domain();
    let found = crate::par::map(seeds, |seed| {
        let mut p = *seed;
        for _ in 0..max_steps {
            let fp = map.evaluate(&p);
            let mut g = [0.0; D];
            for i in 0..D {
                g[i] = fp[i] - p[i];
            }
            if g.iter().map(|v| v * v).sum::<f64>().sqrt() < tol {
                return Some(p);
            }
            let mut jac = map.jacobian(&p);
            for (i, row) in jac.iter_mut().enumerate() {
                row[i] -= 1.0;
            }
            let delta = solve(&jac, &g)?;
            for i in 0..D {
                p[i] -= delta[i];
            }
            let excess = domain.excess(&p);
            if excess > 0.0 {
                let d = distance(&p, &domain.center);
                for i in 0..D {
                    p[i] = domain.center[i] + (p[i] - domain.center[i]) * domain.radius / d;
                }
            }
        }
        None
    });
    found.into_iter().flatten().collect()
}

// Gaussian elimination with partial pivoting; None when singular.
fn solve<const D: usize>(a: &Jacobian<D>, b: &Point<D>) -> Option<Point<D>> {
    let mut m = *a;
    let mut rhs = *b;
    for col in 0..D {
        let pivot = (col..D).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..D {
            let factor = m[row][col] / m[col][col];
            for k in col..D {
                m[row][k] -= factor * m[col][k];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut x = [0.0; D];
    for row in (0..D).rev() {
        let tail: f64 = (row + 1..D).map(|k| m[row][k] * x[k]).sum();
        x[row] = (rhs[row] - tail) / m[row][row];
    }
    Some(x)
}

/// Names accepted by [`Family::from_name`].
pub const FAMILY_NAMES: [&str; 3] = ["horseshoe", "isotopy", "ball3"];

/// Registry entry: a shipped family plus its numeric parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Horseshoe,
    /// Isotopy slice at parameter `t` in (-1, 1).
    Isotopy {
        t: f64,
    },
    /// `G_tau` on the closed 3-ball.
    Ball3 {
        tau: f64,
    },
}

impl Family {
    pub fn from_name(name: &str, param: f64) -> Result<Self> {
        match name {
            "horseshoe" => Ok(Family::Horseshoe),
            "isotopy" => Ok(Family::Isotopy { t: param }),
            "ball3" => Ok(Family::Ball3 { tau: param }),
            other => Err(Error::InvalidArgument(format!(
                "unknown family {other:?}; expected one of {FAMILY_NAMES:?}"
            ))),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Family::Ball3 { .. } => 3,
            _ => 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_small_system() {
        let a = [[2.0, 1.0], [1.0, 3.0]];
        let x = solve(&a, &[3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-12 && (x[1] - 1.4).abs() < 1e-12);
        assert!(solve(&[[1.0, 2.0], [2.0, 4.0]], &[1.0, 1.0]).is_none());
    }

    #[test]
    fn orbit_dump_header() {
        let csv = orbit_csv(&[[0.0, 1.0, 2.0]]);
        assert!(csv.starts_with("step,x,y,z\n0,"));
        assert!(Family::from_name("henon", 0.0).is_err());
        assert_eq!(Family::from_name("ball3", 0.05).unwrap().dimension(), 3);
    }
}
