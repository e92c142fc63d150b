use std::f64::consts::{FRAC_PI_2, PI};

use super::{Domain, DynamicalMap, Jacobian, Point};

/// Half-width of the core square `Q = [-c, c]^2` inside the unit disc.
///
/// The fold pushes the middle band up to height `2c`, so `c = 0.45` keeps
/// the whole image inside the open disc of radius 0.9.
pub const CORE_HALF_WIDTH: f64 = 0.45;

/// Two-legged horseshoe on the unit disc.
///
/// In core coordinates `(u, v) = (x, y) / c` the square `[-1, 1]^2` is cut
/// by `v = -1/3` and `v = 1/3`:
///
/// * bottom band: `(u, v) -> (u/3 - 2/3, 3v + 2)`, onto the left strip;
/// * top band: `(u, v) -> (2/3 - u/3, 2 - 3v)`, onto the right strip,
///   orientation reversed;
/// * middle band: a half-annulus around `(0, 1)` with radius
///   `(2 - u)/3`, joining the two legs continuously above the square.
///
/// Points outside the square are first clamped onto it, so the disc maps
/// into the image of `Q`. Orbits that enter the fold land on the bottom edge
/// and converge to the saddle at `(-c, -c)`. The maximal invariant set in
/// `Q` is the product of two middle-thirds Cantor sets and the map there is
/// conjugate to the full 2-shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelHorseshoe {
    c: f64,
}

impl Default for ModelHorseshoe {
    fn default() -> Self {
        Self { c: CORE_HALF_WIDTH }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Band {
    Bottom,
    Middle,
    Top,
}

impl ModelHorseshoe {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn core_half_width(&self) -> f64 {
        self.c
    }

    /// Band of the clamped point, used for symbolic itineraries.
    pub fn band(&self, p: &Point<2>) -> Band {
        let v = (p[1] / self.c).clamp(-1.0, 1.0);
        if v <= -1.0 / 3.0 {
            Band::Bottom
        } else if v >= 1.0 / 3.0 {
            Band::Top
        } else {
            Band::Middle
        }
    }

    /// True when `p` lies in the closed core square.
    pub fn in_core(&self, p: &Point<2>) -> bool {
        p[0].abs() <= self.c && p[1].abs() <= self.c
    }

    fn core(&self, p: &Point<2>) -> (f64, f64, bool, bool) {
        let (u, v) = (p[0] / self.c, p[1] / self.c);
        (
            u.clamp(-1.0, 1.0),
            v.clamp(-1.0, 1.0),
            u.abs() <= 1.0,
            v.abs() <= 1.0,
        )
    }
}

impl DynamicalMap<2> for ModelHorseshoe {
    fn evaluate(&self, p: &Point<2>) -> Point<2> {
        let (u, v, _, _) = self.core(p);
        let (uu, vv) = if v <= -1.0 / 3.0 {
            (u / 3.0 - 2.0 / 3.0, 3.0 * v + 2.0)
        } else if v >= 1.0 / 3.0 {
            (2.0 / 3.0 - u / 3.0, 2.0 - 3.0 * v)
        } else {
            let rho = (2.0 - u) / 3.0;
            let theta = FRAC_PI_2 * (1.0 - 3.0 * v);
            (rho * theta.cos(), 1.0 + rho * theta.sin())
        };
        [self.c * uu, self.c * vv]
    }

    fn jacobian(&self, p: &Point<2>) -> Jacobian<2> {
        let (u, v, u_free, v_free) = self.core(p);
        let mut j = if v <= -1.0 / 3.0 {
            [[1.0 / 3.0, 0.0], [0.0, 3.0]]
        } else if v >= 1.0 / 3.0 {
            [[-1.0 / 3.0, 0.0], [0.0, -3.0]]
        } else {
            let rho = (2.0 - u) / 3.0;
            let theta = FRAC_PI_2 * (1.0 - 3.0 * v);
            let dtheta = -1.5 * PI;
            [
                [-theta.cos() / 3.0, -rho * theta.sin() * dtheta],
                [-theta.sin() / 3.0, rho * theta.cos() * dtheta],
            ]
        };
        // clamped coordinates do not move the image
        for row in j.iter_mut() {
            if !u_free {
                row[0] = 0.0;
            }
            if !v_free {
                row[1] = 0.0;
            }
        }
        j
    }

    fn domain(&self) -> Domain<2> {
        Domain::unit()
    }

    fn near_seam(&self, p: &Point<2>, width: f64) -> bool {
        let w = width / self.c;
        let (u, v) = (p[0] / self.c, p[1] / self.c);
        (v.abs() - 1.0 / 3.0).abs() < w || (v.abs() - 1.0).abs() < w || (u.abs() - 1.0).abs() < w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::finite_difference_jacobian;
    use std::collections::HashSet;

    #[test]
    fn branches_are_affine_with_factors_three_and_third() {
        let f = ModelHorseshoe::new();
        for p in [[0.1, -0.3], [-0.2, -0.4], [0.05, 0.35], [0.3, 0.2]] {
            let j = f.jacobian(&p);
            match f.band(&p) {
                Band::Middle => continue,
                _ => {
                    assert!((j[0][0].abs() - 1.0 / 3.0).abs() < 1e-15);
                    assert!((j[1][1].abs() - 3.0).abs() < 1e-15);
                    assert_eq!(j[0][1], 0.0);
                    assert_eq!(j[1][0], 0.0);
                }
            }
        }
    }

    #[test]
    fn continuous_across_band_seams() {
        let f = ModelHorseshoe::new();
        let c = CORE_HALF_WIDTH;
        for u in [-0.9, -0.2, 0.4, 1.0] {
            for edge in [-1.0 / 3.0, 1.0 / 3.0] {
                let a = f.evaluate(&[u * c, (edge - 1e-12) * c]);
                let b = f.evaluate(&[u * c, (edge + 1e-12) * c]);
                assert!((a[0] - b[0]).abs() < 1e-9 && (a[1] - b[1]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn disc_maps_into_open_disc() {
        let f = ModelHorseshoe::new();
        let n = 200;
        for i in 0..=n {
            for j in 0..=n {
                let p = [
                    -1.0 + 2.0 * i as f64 / n as f64,
                    -1.0 + 2.0 * j as f64 / n as f64,
                ];
                if p[0] * p[0] + p[1] * p[1] > 1.0 {
                    continue;
                }
                let q = f.evaluate(&p);
                assert!((q[0] * q[0] + q[1] * q[1]).sqrt() <= 0.9 + 1e-12);
            }
        }
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let f = ModelHorseshoe::new();
        let mut state = 12345u64;
        let mut checked = 0;
        while checked < 500 {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let a = (state >> 11) as f64 / (1u64 << 53) as f64;
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let b = (state >> 11) as f64 / (1u64 << 53) as f64;
            let p = [2.0 * a - 1.0, 2.0 * b - 1.0];
            if p[0] * p[0] + p[1] * p[1] >= 1.0 || f.near_seam(&p, 1e-3) {
                continue;
            }
            let exact = f.jacobian(&p);
            let fd = finite_difference_jacobian(&f, &p, 1e-6);
            let scale = exact
                .iter()
                .flatten()
                .map(|v| v.abs())
                .fold(1e-12, f64::max);
            for i in 0..2 {
                for j in 0..2 {
                    assert!((exact[i][j] - fd[i][j]).abs() / scale < 1e-5, "{p:?}");
                }
            }
            checked += 1;
        }
    }

    #[test]
    fn all_depth_ten_itineraries_are_realised() {
        // Brute force along the vertical line x = 0: each depth-10 cylinder
        // has height 2c * 3^-10, so a grid 4x finer than that hits all of them.
        let f = ModelHorseshoe::new();
        let depth = 10;
        let samples = 4 * 3usize.pow(depth as u32);
        let c = CORE_HALF_WIDTH;
        let mut words = HashSet::new();
        for k in 0..=samples {
            let mut p = [0.0, -c + 2.0 * c * k as f64 / samples as f64];
            let mut word = 0u32;
            let mut alive = true;
            for _ in 0..depth {
                match f.band(&p) {
                    Band::Bottom => word <<= 1,
                    Band::Top => word = (word << 1) | 1,
                    Band::Middle => {
                        alive = false;
                        break;
                    }
                }
                if !f.in_core(&p) {
                    alive = false;
                    break;
                }
                p = f.evaluate(&p);
            }
            if alive {
                words.insert(word);
            }
        }
        assert_eq!(words.len(), 1 << depth);
    }
}
