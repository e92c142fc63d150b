//! Isotopy from the horseshoe to a contraction, rescaled onto shrinking
//! discs so the slices stack into the 3-ball.

use super::{ball, mat_mul, Domain, DynamicalMap, Jacobian, ModelHorseshoe, Point};
use crate::error::{Error, Result};

/// `alpha_t(x, y) = (2x/3, (1 - t) y - 5t/3)`.
pub fn alpha(t: f64, p: &Point<2>) -> Point<2> {
    [2.0 * p[0] / 3.0, (1.0 - t) * p[1] - 5.0 * t / 3.0]
}

/// Smallest `t` on a grid of step `1e-4` such that `alpha_t` sends the whole
/// unit disc strictly below the x-axis, plus a margin of 0.01.
pub fn compute_eps0() -> f64 {
    const STEP: f64 = 1e-4;
    const MARGIN: f64 = 0.01;
    let boundary: Vec<Point<2>> = (0..3600)
        .map(|k| {
            let a = k as f64 * std::f64::consts::TAU / 3600.0;
            [a.cos(), a.sin()]
        })
        .collect();
    // alpha_t is affine, so its max over the disc is attained on the circle
    let mut t = 0.0;
    while t <= 1.0 {
        let top = boundary
            .iter()
            .map(|p| alpha(t, p)[1])
            .fold(f64::NEG_INFINITY, f64::max);
        if top < 0.0 {
            return (t + MARGIN).min(1.0);
        }
        t += STEP;
    }
    1.0
}

/// Default width of the parameter window `|t| < ramp` over which the
/// isotopy runs from the horseshoe to the final contraction.
pub const DEFAULT_RAMP: f64 = 0.01;

/// The family `f_t = f o alpha_hat_t` for `t` in `[-1, 1]`, mirrored in `t`.
///
/// Progress `q = min(1, |t| / ramp)` drives the deformation: on `q <= 1/2`
/// the identity is blended linearly into `alpha_eps0`, on `q >= 1/2` the
/// parameter of `alpha` runs affinely from `eps0` to 1. Hence `f_0 = f`, and
/// every slice with `|t| >= ramp` is `f o alpha_1`, a contraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotopyFamily {
    base: ModelHorseshoe,
    eps0: f64,
    ramp: f64,
}

impl Default for IsotopyFamily {
    fn default() -> Self {
        Self::new(ModelHorseshoe::new(), DEFAULT_RAMP).expect("default ramp is valid")
    }
}

impl IsotopyFamily {
    pub fn new(base: ModelHorseshoe, ramp: f64) -> Result<Self> {
        if !(ramp > 0.0 && ramp <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "ramp must lie in (0, 1], got {ramp}"
            )));
        }
        Ok(Self {
            base,
            eps0: compute_eps0(),
            ramp,
        })
    }

    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    pub fn ramp(&self) -> f64 {
        self.ramp
    }

    pub fn base(&self) -> &ModelHorseshoe {
        &self.base
    }

    fn progress(&self, t: f64) -> (f64, f64) {
        let s = t.abs();
        if s >= self.ramp {
            (1.0, 0.0)
        } else {
            (s / self.ramp, t.signum() / self.ramp)
        }
    }

    /// `alpha_hat` at progress `q`, its spatial Jacobian and its
    /// derivative in `q`.
    fn alpha_hat(&self, q: f64, p: &Point<2>) -> (Point<2>, Jacobian<2>, Point<2>) {
        if q <= 0.5 {
            let w = 2.0 * q;
            let a = alpha(self.eps0, p);
            let img = [(1.0 - w) * p[0] + w * a[0], (1.0 - w) * p[1] + w * a[1]];
            let jac = [
                [(1.0 - w) + w * 2.0 / 3.0, 0.0],
                [0.0, (1.0 - w) + w * (1.0 - self.eps0)],
            ];
            let dq = [2.0 * (a[0] - p[0]), 2.0 * (a[1] - p[1])];
            (img, jac, dq)
        } else {
            let t = self.eps0 + (2.0 * q - 1.0) * (1.0 - self.eps0);
            let img = alpha(t, p);
            let jac = [[2.0 / 3.0, 0.0], [0.0, 1.0 - t]];
            let dt = 2.0 * (1.0 - self.eps0);
            let dq = [0.0, dt * (-p[1] - 5.0 / 3.0)];
            (img, jac, dq)
        }
    }

    /// `f_t` on the unit disc.
    pub fn f_t(&self, t: f64, p: &Point<2>) -> Point<2> {
        let (q, _) = self.progress(t);
        self.base.evaluate(&self.alpha_hat(q, p).0)
    }

    /// Spatial Jacobian of `f_t`.
    pub fn f_t_jacobian(&self, t: f64, p: &Point<2>) -> Jacobian<2> {
        let (q, _) = self.progress(t);
        let (a, ja, _) = self.alpha_hat(q, p);
        mat_mul(&self.base.jacobian(&a), &ja)
    }

    /// Slice map on `D_t = {|p| <= sqrt(1 - t^2)}`:
    /// `p -> r f_t(p / r)` with `r = sqrt(1 - t^2)`.
    pub fn slice(&self, t: f64, p: &Point<2>) -> Point<2> {
        let r = ball::slice_radius(t);
        let img = self.f_t(t, &[p[0] / r, p[1] / r]);
        [r * img[0], r * img[1]]
    }

    /// Spatial Jacobian of the slice map, plus its derivative in `t`.
    pub fn slice_derivatives(&self, t: f64, p: &Point<2>) -> (Jacobian<2>, Point<2>) {
        let r = ball::slice_radius(t);
        let dr = -t / r;
        let (q, dq_dt) = self.progress(t);
        let unit = [p[0] / r, p[1] / r];
        let (a, ja, da_dq) = self.alpha_hat(q, &unit);
        let fa = self.base.evaluate(&a);
        let jf = self.base.jacobian(&a);
        let spatial = mat_mul(&jf, &ja);
        // d(unit)/dt = -p r' / r^2
        let dunit = [-p[0] * dr / (r * r), -p[1] * dr / (r * r)];
        let mut da = [0.0; 2];
        for i in 0..2 {
            da[i] = da_dq[i] * dq_dt + ja[i][0] * dunit[0] + ja[i][1] * dunit[1];
        }
        let mut dt = [0.0; 2];
        for i in 0..2 {
            dt[i] = dr * fa[i] + r * (jf[i][0] * da[0] + jf[i][1] * da[1]);
        }
        (spatial, dt)
    }

    /// True when the slice at parameter `t` is within `width` of a seam of
    /// the base map or of the piecewise parametrisation.
    pub fn near_seam(&self, t: f64, p: &Point<2>, width: f64) -> bool {
        let s = t.abs();
        if s < width || (s - self.ramp).abs() < width || (s - 0.5 * self.ramp).abs() < width {
            return true;
        }
        let r = ball::slice_radius(t);
        let (q, _) = self.progress(t);
        let a = self.alpha_hat(q, &[p[0] / r, p[1] / r]).0;
        self.base.near_seam(&a, width)
    }
}

/// One slice of the isotopy as a planar map on its disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceMap {
    family: IsotopyFamily,
    t: f64,
}

impl SliceMap {
    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn family(&self) -> &IsotopyFamily {
        &self.family
    }
}

impl DynamicalMap<2> for SliceMap {
    fn evaluate(&self, p: &Point<2>) -> Point<2> {
        self.family.slice(self.t, p)
    }

    fn jacobian(&self, p: &Point<2>) -> Jacobian<2> {
        self.family.slice_derivatives(self.t, p).0
    }

    fn domain(&self) -> Domain<2> {
        Domain {
            center: [0.0, 0.0],
            radius: ball::slice_radius(self.t),
        }
    }

    fn near_seam(&self, p: &Point<2>, width: f64) -> bool {
        self.family.near_seam(self.t, p, width)
    }
}

/// Builds the slice map at `t` in (-1, 1) and checks on a sample of the
/// slice disc that it stays inside the disc.
pub fn isotopy_map(t: f64, family: &IsotopyFamily) -> Result<SliceMap> {
    if !(t > -1.0 && t < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "isotopy parameter must lie in (-1, 1), got {t}"
        )));
    }
    let map = SliceMap { family: *family, t };
    let domain = map.domain();
    let n = 32;
    for i in 0..=n {
        for j in 0..=n {
            let p = [
                domain.radius * (-1.0 + 2.0 * i as f64 / n as f64),
                domain.radius * (-1.0 + 2.0 * j as f64 / n as f64),
            ];
            if !domain.contains(&p, 0.0) {
                continue;
            }
            let q = map.evaluate(&p);
            let excess = domain.excess(&q);
            if excess > 1e-9 {
                return Err(Error::DomainEscape {
                    point: p.to_vec(),
                    excess,
                });
            }
        }
    }
    Ok(map)
}
