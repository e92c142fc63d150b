use super::{mat_mul, Domain, DynamicalMap, IsotopyFamily, Jacobian, Point};

/// Radius `sqrt(1 - z^2)` of the horizontal slice of the unit ball.
pub fn slice_radius(z: f64) -> f64 {
    (1.0 - z * z).max(0.0).sqrt()
}

/// Time-`tau` map of the pole-to-pole flow on the closed 3-ball.
///
/// Heights follow `z' = -(1 - z^2)/2`, i.e. `z(tau) = tanh(atanh(z) - tau/2)`,
/// and horizontal coordinates are rescaled by `sqrt((1 - z1^2)/(1 - z0^2))`
/// so the slice disc at height `z0` lands exactly on the slice at `z1 < z0`.
/// The poles `(0, 0, +-1)` are the only rest points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowFactor {
    pub tau: f64,
}

impl FlowFactor {
    pub fn evaluate(&self, p: &Point<3>) -> Point<3> {
        let z = p[2];
        if z.abs() >= 1.0 || self.tau == 0.0 {
            return *p;
        }
        let (z1, k) = self.height_and_scale(z);
        [k * p[0], k * p[1], z1]
    }

    fn height_and_scale(&self, z: f64) -> (f64, f64) {
        let a = z.atanh();
        let h = 0.5 * self.tau;
        let z1 = (a - h).tanh();
        (z1, a.cosh() / (a - h).cosh())
    }

    pub fn jacobian(&self, p: &Point<3>) -> Jacobian<3> {
        let z = p[2];
        if z.abs() >= 1.0 || self.tau == 0.0 {
            return super::identity();
        }
        let a = z.atanh();
        let h = 0.5 * self.tau;
        let (_, k) = self.height_and_scale(z);
        let dk = h.sinh() / ((a - h).cosh().powi(2) * (1.0 - z * z));
        [[k, 0.0, p[0] * dk], [0.0, k, p[1] * dk], [0.0, 0.0, k * k]]
    }
}

/// `G_tau = phi_tau o F` on the closed unit 3-ball, where `F` applies the
/// isotopy slice map at parameter `z` on each horizontal disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball3Map {
    family: IsotopyFamily,
    flow: FlowFactor,
}

pub fn family_g(tau: f64, family: &IsotopyFamily) -> crate::Result<Ball3Map> {
    if !(tau >= 0.0) || !tau.is_finite() {
        return Err(crate::Error::InvalidArgument(format!(
            "tau must be >= 0, got {tau}"
        )));
    }
    Ok(Ball3Map {
        family: *family,
        flow: FlowFactor { tau },
    })
}

impl Ball3Map {
    pub fn tau(&self) -> f64 {
        self.flow.tau
    }

    pub fn family(&self) -> &IsotopyFamily {
        &self.family
    }

    pub fn flow(&self) -> &FlowFactor {
        &self.flow
    }

    /// The slicewise map `F`; each pole is left fixed.
    pub fn slicewise(&self, p: &Point<3>) -> Point<3> {
        let z = p[2];
        if z.abs() >= 1.0 {
            return *p;
        }
        let q = self.family.slice(z, &[p[0], p[1]]);
        [q[0], q[1], z]
    }

    fn slicewise_jacobian(&self, p: &Point<3>) -> Jacobian<3> {
        let z = p[2];
        if z.abs() >= 1.0 {
            return super::identity();
        }
        let (s, dz) = self.family.slice_derivatives(z, &[p[0], p[1]]);
        [
            [s[0][0], s[0][1], dz[0]],
            [s[1][0], s[1][1], dz[1]],
            [0.0, 0.0, 1.0],
        ]
    }
}

impl DynamicalMap<3> for Ball3Map {
    fn evaluate(&self, p: &Point<3>) -> Point<3> {
        self.flow.evaluate(&self.slicewise(p))
    }

    fn jacobian(&self, p: &Point<3>) -> Jacobian<3> {
        let fp = self.slicewise(p);
        mat_mul(&self.flow.jacobian(&fp), &self.slicewise_jacobian(p))
    }

    fn domain(&self) -> Domain<3> {
        Domain::unit()
    }

    fn near_seam(&self, p: &Point<3>, width: f64) -> bool {
        p[2].abs() > 1.0 - width || self.family.near_seam(p[2], &[p[0], p[1]], width)
    }
}
