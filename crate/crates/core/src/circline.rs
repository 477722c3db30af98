//! Generalized circles on the Riemann sphere.
//!
//! A circline is stored as the Hermitian form
//! `H(z) = A|z|² + 2 Re(B z̄) + D` with `|B|² - AD = 1`. The open half-sphere
//! where `H < 0` is the inside; orientation is carried by the overall sign of
//! the coefficients, so [`Circline::complement`] just negates them.
//!
//! Under stereographic embedding `H` becomes the affine function
//! `n·P + h` on R³ with `n = (2 Re B, 2 Im B, A - D)` and `h = A + D`, and the
//! circline is the intersection of the unit sphere with that plane. Side tests
//! use the plane value divided by `|n|`, which is the signed Euclidean distance
//! from the point to the plane and therefore scale-free.

use core::f64::consts::TAU;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::moebius::MoebiusMap;
use crate::sphere::SpherePoint;
use crate::vec3::{self, Vec3};
use crate::{Error, Result};

/// Discriminants at or below this value are rejected.
pub const DEGENERATE_DISCRIMINANT: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Inside,
    On,
    Outside,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Inside => Side::Outside,
            Side::Outside => Side::Inside,
            Side::On => Side::On,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Intersection {
    Disjoint,
    Tangent(SpherePoint),
    Two(SpherePoint, SpherePoint),
    Coincident,
}

/// An oriented circle or line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circline {
    a: f64,
    b: Complex64,
    d: f64,
}

/// The circline as a circle in R³: `center + radius (cos θ e1 + sin θ e2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereCircle {
    pub normal: [f64; 3],
    pub center: [f64; 3],
    pub radius: f64,
    pub e1: [f64; 3],
    pub e2: [f64; 3],
}

impl SphereCircle {
    pub fn point(&self, theta: f64) -> [f64; 3] {
        let (s, c) = theta.sin_cos();
        vec3::add(
            self.center,
            vec3::scale(vec3::add(vec3::scale(self.e1, c), vec3::scale(self.e2, s)), self.radius),
        )
    }

    /// Angle of the projection of `q` onto the circle's plane; `None` on the
    /// axis, where every angle is equally close.
    pub fn angle(&self, q: Vec3) -> Option<f64> {
        let rel = vec3::sub(q, self.center);
        let (x, y) = (vec3::dot(rel, self.e1), vec3::dot(rel, self.e2));
        if x == 0.0 && y == 0.0 {
            None
        } else {
            Some(vec3::rem_tau(y.atan2(x)))
        }
    }

    /// Euclidean distance in R³ from `q` to the circle.
    pub fn distance(&self, q: Vec3) -> f64 {
        let height = vec3::dot(q, self.normal) - vec3::dot(self.center, self.normal);
        let along = vec3::dot(q, self.normal);
        let in_plane = vec3::norm(vec3::sub(q, vec3::scale(self.normal, along)));
        (height * height + (in_plane - self.radius).powi(2)).sqrt()
    }
}

impl Circline {
    /// Builds the form `A|z|² + 2 Re(B z̄) + D`, normalized to discriminant 1.
    pub fn new(a: f64, b: Complex64, d: f64) -> Result<Self> {
        let discriminant = b.norm_sqr() - a * d;
        if !(discriminant > DEGENERATE_DISCRIMINANT) || !discriminant.is_finite() {
            return Err(Error::DegenerateCircline { discriminant });
        }
        let s = discriminant.sqrt().recip();
        Ok(Circline { a: a * s, b: b * s, d: d * s })
    }

    /// The disk `|z - center| < radius` as inside.
    pub fn circle(center: Complex64, radius: f64) -> Result<Self> {
        Self::new(1.0, -center, center.norm_sqr() - radius * radius)
    }

    /// The line through `point` with direction `direction`; the half-plane to
    /// the left of the direction is inside.
    pub fn line(point: Complex64, direction: Complex64) -> Result<Self> {
        let b = Complex64::new(0.0, -1.0) * direction;
        let d = 2.0 * (direction.conj() * point).im;
        Self::new(0.0, b, d)
    }

    pub fn unit_circle() -> Self {
        Circline { a: 1.0, b: Complex64::new(0.0, 0.0), d: -1.0 }
    }

    /// `(A, B, D)`, normalized so that `|B|² - AD = 1`.
    pub fn coefficients(&self) -> (f64, Complex64, f64) {
        (self.a, self.b, self.d)
    }

    /// Same point set, inside and outside swapped.
    pub fn complement(&self) -> Circline {
        Circline { a: -self.a, b: -self.b, d: -self.d }
    }

    /// Center and radius when the circline is a genuine circle of ℂ.
    pub fn euclidean_circle(&self) -> Option<(Complex64, f64)> {
        if self.a.abs() <= 1e-12 * (self.b.norm() + self.d.abs()) {
            return None;
        }
        // |B|² - AD = 1 gives r² = 1/A².
        Some((-self.b / self.a, self.a.abs().recip()))
    }

    pub fn is_line(&self) -> bool {
        self.euclidean_circle().is_none()
    }

    fn plane(&self) -> (Vec3, f64) {
        ([2.0 * self.b.re, 2.0 * self.b.im, self.a - self.d], self.a + self.d)
    }

    /// Signed distance in R³ from the embedded point to the circline's plane;
    /// negative inside.
    pub fn plane_value(&self, p: SpherePoint) -> f64 {
        let (n, h) = self.plane();
        (vec3::dot(n, p.to_unit_vector()) + h) / vec3::norm(n)
    }

    pub(crate) fn plane_value_at(&self, q: Vec3) -> f64 {
        let (n, h) = self.plane();
        (vec3::dot(n, q) + h) / vec3::norm(n)
    }

    /// Raw Hermitian form at a finite point; `A` stands in at ∞.
    pub fn form_value(&self, p: SpherePoint) -> f64 {
        match p {
            SpherePoint::Infinity => self.a,
            SpherePoint::Finite(z) => self.a * z.norm_sqr() + 2.0 * (self.b * z.conj()).re + self.d,
        }
    }

    pub fn side(&self, p: SpherePoint, tol: f64) -> Side {
        let v = self.plane_value(p);
        if v.abs() <= tol {
            Side::On
        } else if v < 0.0 {
            Side::Inside
        } else {
            Side::Outside
        }
    }

    /// Image under `m`: congruence of the Hermitian matrix by `m⁻¹`, which
    /// carries the inside to the inside.
    pub fn image(&self, m: &MoebiusMap) -> Circline {
        let [p, q, r, s] = m.inverse().coefficients();
        let (a, b, d) = (self.a, self.b, self.d);
        let a2 = a * p.norm_sqr() + 2.0 * (p.conj() * b * r).re + d * r.norm_sqr();
        let b2 = p.conj() * (q * a + b * s) + r.conj() * (b.conj() * q + s * d);
        let d2 = a * q.norm_sqr() + 2.0 * (q.conj() * b * s).re + d * s.norm_sqr();
        let disc = b2.norm_sqr() - a2 * d2;
        // det m = 1 preserves the discriminant; only rounding is corrected here.
        let scale = if disc > 0.0 { disc.sqrt().recip() } else { 1.0 };
        Circline { a: a2 * scale, b: b2 * scale, d: d2 * scale }
    }

    pub fn geometry(&self) -> SphereCircle {
        let (n, h) = self.plane();
        let len = vec3::norm(n);
        let normal = vec3::scale(n, len.recip());
        let offset = -h / len;
        let center = vec3::scale(normal, offset);
        // |n|² = 4 + h², so the radius never degenerates.
        let radius = 2.0 / len;
        let axis = {
            let ax = normal.map(f64::abs);
            if ax[0] <= ax[1] && ax[0] <= ax[2] {
                [1.0, 0.0, 0.0]
            } else if ax[1] <= ax[2] {
                [0.0, 1.0, 0.0]
            } else {
                [0.0, 0.0, 1.0]
            }
        };
        let e1 = vec3::normalize(vec3::cross(normal, axis));
        let e2 = vec3::cross(normal, e1);
        SphereCircle { normal, center, radius, e1, e2 }
    }

    pub fn point_at(&self, theta: f64) -> SpherePoint {
        SpherePoint::from_unit_vector(self.geometry().point(theta))
    }

    /// Parameter of the point of the circline nearest to `p`.
    pub fn angle_of(&self, p: SpherePoint) -> f64 {
        self.geometry().angle(p.to_unit_vector()).unwrap_or(0.0)
    }

    /// Chordal distance from `p` to the nearest point of the circline.
    pub fn chordal_dist_to(&self, p: SpherePoint) -> f64 {
        self.geometry().distance(p.to_unit_vector())
    }

    /// Chordal length of the whole circline.
    pub fn length(&self) -> f64 {
        TAU * self.geometry().radius
    }

    /// Equal as oriented circlines within `tol` on the unit plane data.
    pub fn same_oriented(&self, other: &Circline, tol: f64) -> bool {
        let (g, h) = (self.geometry(), other.geometry());
        vec3::norm(vec3::sub(g.normal, h.normal)) <= tol
            && vec3::norm(vec3::sub(g.center, h.center)) <= tol
    }

    /// Same point set regardless of orientation.
    pub fn same_set(&self, other: &Circline, tol: f64) -> bool {
        self.same_oriented(other, tol) || self.same_oriented(&other.complement(), tol)
    }

    /// Intersection of the two point sets. `tol` applies to the unit plane data
    /// and to the tangency test.
    pub fn intersect(&self, other: &Circline, tol: f64) -> Intersection {
        if self.same_set(other, tol) {
            return Intersection::Coincident;
        }
        let (g1, g2) = (self.geometry(), other.geometry());
        let t1 = vec3::dot(g1.center, g1.normal);
        let t2 = vec3::dot(g2.center, g2.normal);
        let cos = vec3::dot(g1.normal, g2.normal);
        let det = 1.0 - cos * cos;
        if det <= tol * tol {
            // Parallel distinct planes.
            return Intersection::Disjoint;
        }
        let alpha = (t1 - cos * t2) / det;
        let beta = (t2 - cos * t1) / det;
        let base = vec3::add(vec3::scale(g1.normal, alpha), vec3::scale(g2.normal, beta));
        let slack = 1.0 - vec3::dot(base, base);
        if slack.abs() <= tol {
            return Intersection::Tangent(SpherePoint::from_unit_vector(base));
        }
        if slack < 0.0 {
            return Intersection::Disjoint;
        }
        let dir = vec3::normalize(vec3::cross(g1.normal, g2.normal));
        let s = slack.sqrt();
        let p = SpherePoint::from_unit_vector(vec3::add(base, vec3::scale(dir, s)));
        let q = SpherePoint::from_unit_vector(vec3::sub(base, vec3::scale(dir, s)));
        Intersection::Two(p, q)
    }
}

impl core::fmt::Display for Circline {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self.euclidean_circle() {
            Some((c, r)) => {
                let side = if self.a > 0.0 { "<" } else { ">" };
                write!(f, "|z - ({c})| {side} {r}")
            }
            None => write!(f, "{} |z|² + 2Re(({}) z̄) + {} < 0", self.a, self.b, self.d),
        }
    }
}
