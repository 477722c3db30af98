//! Points of the Riemann sphere and the chordal metric.
//!
//! The sphere is embedded as the unit sphere in R³ by inverse stereographic
//! projection, with 0 at the south pole and ∞ at the north pole. Under this
//! embedding the chordal distance is the Euclidean distance in R³, so it lies
//! in `[0, 2]`.

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use rand::Rng;

use crate::vec3;

/// A point of the extended complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub const ZERO: SpherePoint = SpherePoint::Finite(Complex64::new(0.0, 0.0));

    pub fn new(re: f64, im: f64) -> Self {
        Self::finite(Complex64::new(re, im))
    }

    /// Wraps a complex number; non-finite components map to ∞.
    ///
    /// # Panics
    ///
    /// If either component is NaN.
    pub fn finite(z: Complex64) -> Self {
        assert!(!z.re.is_nan() && !z.im.is_nan(), "NaN is not a point of the sphere");
        if z.re.is_finite() && z.im.is_finite() {
            SpherePoint::Finite(z)
        } else {
            SpherePoint::Infinity
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn as_complex(&self) -> Option<Complex64> {
        match *self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }

    /// Homogeneous coordinates `[x : y]` with `max(|x|, |y|) = 1`-ish: the
    /// chart `(z, 1)` is used for `|z| <= 1` and `(1, 1/z)` beyond.
    pub fn homogeneous(&self) -> (Complex64, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        match *self {
            SpherePoint::Finite(z) if z.norm_sqr() <= 1.0 => (z, one),
            SpherePoint::Finite(z) => (one, z.inv()),
            SpherePoint::Infinity => (one, Complex64::new(0.0, 0.0)),
        }
    }

    /// Inverse of [`homogeneous`](Self::homogeneous) for any nonzero pair.
    pub fn from_homogeneous(u: Complex64, v: Complex64) -> Self {
        if v.re == 0.0 && v.im == 0.0 {
            return SpherePoint::Infinity;
        }
        if u.norm_sqr() <= v.norm_sqr() {
            return Self::sanitize(u / v);
        }
        let w = v / u;
        if w.re == 0.0 && w.im == 0.0 {
            SpherePoint::Infinity
        } else {
            Self::sanitize(w.inv())
        }
    }

    fn sanitize(z: Complex64) -> Self {
        if z.re.is_finite() && z.im.is_finite() {
            SpherePoint::Finite(z)
        } else {
            SpherePoint::Infinity
        }
    }

    /// Position on the unit sphere in R³.
    pub fn to_unit_vector(&self) -> [f64; 3] {
        match *self {
            SpherePoint::Infinity => [0.0, 0.0, 1.0],
            SpherePoint::Finite(z) => {
                let r2 = z.norm_sqr();
                if r2 <= 1.0 {
                    let s = 1.0 + r2;
                    [2.0 * z.re / s, 2.0 * z.im / s, (r2 - 1.0) / s]
                } else {
                    let w = z.inv();
                    let w2 = w.norm_sqr();
                    let s = 1.0 + w2;
                    [2.0 * w.re / s, -2.0 * w.im / s, (1.0 - w2) / s]
                }
            }
        }
    }

    /// Stereographic projection of a point of R³ (normalized first).
    pub fn from_unit_vector(v: [f64; 3]) -> Self {
        let [x, y, z] = vec3::normalize(v);
        if z <= 0.0 {
            SpherePoint::Finite(Complex64::new(x, y) / (1.0 - z))
        } else {
            // 1/p = (x - iy) / (1 + z)
            let w = Complex64::new(x, -y) / (1.0 + z);
            if w.re == 0.0 && w.im == 0.0 {
                SpherePoint::Infinity
            } else {
                Self::sanitize(w.inv())
            }
        }
    }

    /// Chordal distance `2|p - q| / sqrt((1 + |p|²)(1 + |q|²))`.
    pub fn chordal_dist(&self, other: SpherePoint) -> f64 {
        chordal_dist(*self, other)
    }

    /// A point drawn uniformly with respect to spherical area.
    pub fn random_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let z: f64 = 2.0 * rng.gen::<f64>() - 1.0;
        let phi: f64 = 2.0 * PI * rng.gen::<f64>();
        let r = (1.0 - z * z).max(0.0).sqrt();
        Self::from_unit_vector([r * phi.cos(), r * phi.sin(), z])
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::finite(z)
    }
}

impl From<f64> for SpherePoint {
    fn from(x: f64) -> Self {
        SpherePoint::new(x, 0.0)
    }
}

/// Chordal distance on the Riemann sphere, in `[0, 2]`.
pub fn chordal_dist(p: SpherePoint, q: SpherePoint) -> f64 {
    use SpherePoint::*;
    let d = match (p, q) {
        (Infinity, Infinity) => 0.0,
        (Finite(z), Infinity) | (Infinity, Finite(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
        (Finite(z), Finite(w)) => {
            if z.norm_sqr() > 1.0 && w.norm_sqr() > 1.0 {
                // z ↦ 1/z is a chordal isometry; work near the origin.
                let (z, w) = (z.inv(), w.inv());
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
            } else {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
            }
        }
    };
    d.clamp(0.0, 2.0)
}
