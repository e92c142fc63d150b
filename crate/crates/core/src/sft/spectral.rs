use super::graph::{has_internal_edge, strongly_connected_components};
use super::{charpoly, TransitionMatrix};
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 1_000_000;
/// Largest order for which the exact characteristic-polynomial root is
/// attached to every result.
pub const ORACLE_MAX_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub radius: f64,
    /// Natural log of `radius`; 0 for the nilpotent case.
    pub entropy: f64,
    pub iterations: usize,
    /// Width of the final Collatz-Wielandt bracket around the radius.
    pub residual: f64,
    /// Set when the matrix is nilpotent (no cycles): radius 0, entropy 0.
    pub degenerate: bool,
    /// Perron root from the characteristic polynomial, for small orders.
    pub oracle_radius: Option<f64>,
}

impl SpectralResult {
    /// Distance between the power-iteration radius and the exact root, if
    /// the latter was computed.
    pub fn oracle_gap(&self) -> Option<f64> {
        self.oracle_radius.map(|r| (r - self.radius).abs())
    }
}

/// Perron root of a 0-1 matrix.
///
/// The radius of a nonnegative matrix is the largest radius over its
/// irreducible diagonal blocks, so each strongly connected component with
/// an edge is iterated on its own. Within a block the iteration runs on
/// `B + I`, which is primitive, so periodic blocks still converge; the
/// stopping rule is the Collatz-Wielandt bracket
/// `min (Bx)_i/x_i <= rho <= max (Bx)_i/x_i` narrowing below `tol`.
pub fn spectral_radius(a: &TransitionMatrix, tol: f64) -> Result<SpectralResult> {
    spectral_radius_capped(a, tol, MAX_ITERATIONS)
}

pub fn spectral_radius_capped(
    a: &TransitionMatrix,
    tol: f64,
    max_iterations: usize,
) -> Result<SpectralResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tol must be > 0, got {tol}"
        )));
    }
    let mut radius = 0.0f64;
    let mut residual = 0.0f64;
    let mut iterations = 0usize;
    let mut any_cycle = false;
    for comp in strongly_connected_components(a) {
        if !has_internal_edge(a, &comp) {
            continue;
        }
        any_cycle = true;
        let block = a.induced(&comp)?;
        let (r, res, it) = irreducible_radius(&block, tol, max_iterations)?;
        iterations += it;
        if r > radius {
            radius = r;
            residual = res;
        }
    }
    let oracle_radius = (a.order() <= ORACLE_MAX_ORDER).then(|| charpoly::perron_root(a, 1e-13));
    if !any_cycle {
        return Ok(SpectralResult {
            radius: 0.0,
            entropy: 0.0,
            iterations,
            residual: 0.0,
            degenerate: true,
            oracle_radius,
        });
    }
    Ok(SpectralResult {
        radius,
        entropy: radius.ln(),
        iterations,
        residual,
        degenerate: false,
        oracle_radius,
    })
}

pub(crate) fn irreducible_radius(
    b: &TransitionMatrix,
    tol: f64,
    max_iterations: usize,
) -> Result<(f64, f64, usize)> {
    let n = b.order();
    if n == 1 {
        return Ok((1.0, 0.0, 0));
    }
    let succ: Vec<Vec<usize>> = (0..n).map(|i| b.successors(i).collect()).collect();
    let mut x = vec![1.0f64; n];
    let mut bx = vec![0.0f64; n];
    let mut width = f64::INFINITY;
    for it in 1..=max_iterations {
        for i in 0..n {
            bx[i] = succ[i].iter().map(|&j| x[j]).sum();
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let q = bx[i] / x[i];
            lo = lo.min(q);
            hi = hi.max(q);
        }
        width = hi - lo;
        if width <= tol {
            return Ok((0.5 * (lo + hi), width, it));
        }
        let mut norm = 0.0f64;
        for i in 0..n {
            x[i] += bx[i];
            norm = norm.max(x[i]);
        }
        x.iter_mut().for_each(|v| *v /= norm);
    }
    Err(Error::NonConvergence {
        iterations: max_iterations,
        residual: width,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_shifts() {
        for n in 1..=6 {
            let r =
                spectral_radius(&TransitionMatrix::full_shift(n).unwrap(), DEFAULT_TOL).unwrap();
            assert!((r.radius - n as f64).abs() < 1e-12);
            assert!((r.entropy - (n as f64).ln()).abs() < 1e-12);
            assert!(r.residual <= DEFAULT_TOL);
        }
    }

    #[test]
    fn identity_and_nilpotent() {
        let id = spectral_radius(&TransitionMatrix::from_rows(&[[1u8]]).unwrap(), 1e-12).unwrap();
        assert_eq!((id.radius, id.entropy, id.degenerate), (1.0, 0.0, false));
        let nil = spectral_radius(
            &TransitionMatrix::from_rows(&[[0u8, 1], [0, 0]]).unwrap(),
            1e-12,
        )
        .unwrap();
        assert!(nil.degenerate);
        assert_eq!((nil.radius, nil.entropy), (0.0, 0.0));
    }

    #[test]
    fn periodic_cycle_converges() {
        // 4-cycle: eigenvalues are the 4th roots of unity
        let m = TransitionMatrix::from_rows(&[
            [0u8, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [1, 0, 0, 0],
        ])
        .unwrap();
        let r = spectral_radius(&m, 1e-12).unwrap();
        assert!((r.radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn iteration_cap_reports_non_convergence() {
        let golden = TransitionMatrix::from_rows(&[[1u8, 1], [1, 0]]).unwrap();
        let err = spectral_radius_capped(&golden, 1e-12, 2).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { iterations: 2, .. }));
        assert!(spectral_radius(&golden, 0.0).is_err());
    }

    #[test]
    fn reducible_with_jordan_coupling() {
        // two self-loops joined by an edge: Jordan block for eigenvalue 1
        let m = TransitionMatrix::from_rows(&[[1u8, 1], [0, 1]]).unwrap();
        let r = spectral_radius(&m, 1e-12).unwrap();
        assert!((r.radius - 1.0).abs() < 1e-12);
        assert!(r.oracle_gap().unwrap() < 1e-9);
    }
}
