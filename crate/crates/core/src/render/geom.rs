//! Isometries of the Poincaré disk and of the Euclidean plane.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::tessmap::{Geometry, VertexConfiguration};

/// Interior angle of the regular hyperbolic `p`-gon with side `s`.
pub fn hyperbolic_angle(p: usize, s: f64) -> f64 {
    2.0 * ((PI / p as f64).cos() / (s / 2.0).cosh()).min(1.0).asin()
}

/// Common side length at which the configuration's angles sum to a full turn.
///
/// The angle sum falls monotonically from its Euclidean value as the side
/// grows, so bisection on `s` converges; stops at width 1e-12.
pub fn hyperbolic_side(config: &VertexConfiguration) -> f64 {
    let total = |s: f64| -> f64 {
        config.face_degrees().iter().map(|&p| hyperbolic_angle(p, s)).sum()
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while total(hi) > 2.0 * PI {
        hi *= 2.0;
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if total(mid) > 2.0 * PI {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Disk radius of the circumcircle of the regular `p`-gon with side `s`.
pub fn disk_circumradius(p: usize, s: f64) -> f64 {
    let big_r = ((s / 2.0).sinh() / (PI / p as f64).sin()).asinh();
    (big_r / 2.0).tanh()
}

/// `z -> (z - a) / (1 - conj(a) z)`, sending `a` to the origin.
pub fn to_origin(a: Complex64, z: Complex64) -> Complex64 {
    (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z)
}

/// Inverse of [`to_origin`].
pub fn from_origin(a: Complex64, z: Complex64) -> Complex64 {
    (z + a) / (Complex64::new(1.0, 0.0) + a.conj() * z)
}

/// Hyperbolic distance between two disk points.
pub fn hyperbolic_distance(a: Complex64, b: Complex64) -> f64 {
    2.0 * to_origin(a, b).norm().atanh()
}

/// Orientation-preserving isometry taking `p0 -> q0` and `p1` onto the ray
/// from `q0` through `q1`. The two segments must have equal length.
#[derive(Debug, Clone, Copy)]
pub struct Motion {
    geometry: Geometry,
    p0: Complex64,
    q0: Complex64,
    turn: Complex64,
}

impl Motion {
    pub fn new(geometry: Geometry, p0: Complex64, p1: Complex64, q0: Complex64, q1: Complex64) -> Self {
        let turn = match geometry {
            Geometry::Euclidean => {
                let t = (q1 - q0) / (p1 - p0);
                t / t.norm()
            }
            _ => {
                let a = to_origin(p0, p1);
                let b = to_origin(q0, q1);
                (b / b.norm()) / (a / a.norm())
            }
        };
        Motion { geometry, p0, q0, turn }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        match self.geometry {
            Geometry::Euclidean => self.q0 + self.turn * (z - self.p0),
            _ => from_origin(self.q0, self.turn * to_origin(self.p0, z)),
        }
    }
}

/// Reflection in the line (Euclidean) or geodesic (hyperbolic) through `a` and `b`.
pub fn reflect(geometry: Geometry, a: Complex64, b: Complex64, z: Complex64) -> Complex64 {
    match geometry {
        Geometry::Euclidean => {
            let u = (b - a) / (b - a).norm();
            a + u * u * (z - a).conj()
        }
        _ => {
            let p = to_origin(a, b);
            let u = p / p.norm();
            from_origin(a, u * u * to_origin(a, z).conj())
        }
    }
}

/// Circle through `a` and `b` orthogonal to the unit circle, as (centre, radius);
/// `None` when the geodesic is a diameter.
pub fn geodesic_circle(a: Complex64, b: Complex64) -> Option<(Complex64, f64)> {
    // The circle also passes through the inverse of a (or b) in the unit circle.
    let (p, q) = if a.norm_sqr() > b.norm_sqr() { (a, b) } else { (b, a) };
    if p.norm_sqr() < 1e-24 {
        return None;
    }
    let r = p / p.norm_sqr();
    let d = 2.0 * (p.re * (q.im - r.im) + q.re * (r.im - p.im) + r.re * (p.im - q.im));
    if d.abs() < 1e-12 * (p - q).norm().max(1e-300) {
        return None;
    }
    let (pp, qq, rr) = (p.norm_sqr(), q.norm_sqr(), r.norm_sqr());
    let cx = (pp * (q.im - r.im) + qq * (r.im - p.im) + rr * (p.im - q.im)) / d;
    let cy = (pp * (r.re - q.re) + qq * (p.re - r.re) + rr * (q.re - p.re)) / d;
    let c = Complex64::new(cx, cy);
    Some((c, (p - c).norm()))
}
