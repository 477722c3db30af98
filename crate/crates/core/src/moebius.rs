//! Möbius transformations as normalized elements of PSL(2, ℂ).

use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::sphere::SpherePoint;
use crate::{Error, Result};

/// Determinants at or below this modulus are rejected.
pub const DEGENERATE_DET: f64 = 1e-14;
/// Maximum coefficient distance to ±Id for a map to count as the identity.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Default tolerance on `trace²` used by [`MoebiusMap::classify`].
pub const CLASS_TOL: f64 = 1e-9;

const SIGN_TIE_TOL: f64 = 1e-12;

/// Conjugacy class of a Möbius transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapClass {
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

/// A fixed point together with the derivative of the map there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint {
    pub point: SpherePoint,
    pub multiplier: Complex64,
}

/// `z ↦ (az + b) / (cz + d)` with `ad - bc = 1` and `Re(a + d) >= 0`
/// (ties broken by `Im(a + d) >= 0`, then by the first nonzero coefficient).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

const fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl MoebiusMap {
    pub const IDENTITY: MoebiusMap = MoebiusMap {
        a: c64(1.0, 0.0),
        b: c64(0.0, 0.0),
        c: c64(0.0, 0.0),
        d: c64(1.0, 0.0),
    };

    /// Normalizes the coefficients to determinant 1.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        let det_abs = det.norm();
        if !(det_abs > DEGENERATE_DET) {
            return Err(Error::DegenerateMap { det_abs });
        }
        Ok(Self::normalized(a, b, c, d, det))
    }

    /// Convenience constructor from real coefficient pairs `[re, im]`.
    pub fn from_pairs(coeffs: [[f64; 2]; 4]) -> Result<Self> {
        let [a, b, c, d] = coeffs.map(|[re, im]| Complex64::new(re, im));
        Self::new(a, b, c, d)
    }

    /// `z ↦ λz`.
    pub fn scaling(lambda: Complex64) -> Result<Self> {
        Self::new(lambda, c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0))
    }

    /// `z ↦ z + t`.
    pub fn translation(t: Complex64) -> Self {
        MoebiusMap { a: c64(1.0, 0.0), b: t, c: c64(0.0, 0.0), d: c64(1.0, 0.0) }
    }

    fn normalized(a: Complex64, b: Complex64, c: Complex64, d: Complex64, det: Complex64) -> Self {
        let s = det.sqrt().inv();
        let mut m = MoebiusMap { a: a * s, b: b * s, c: c * s, d: d * s };
        if m.needs_sign_flip() {
            m = MoebiusMap { a: -m.a, b: -m.b, c: -m.c, d: -m.d };
        }
        m
    }

    fn needs_sign_flip(&self) -> bool {
        let t = self.a + self.d;
        if t.re.abs() > SIGN_TIE_TOL {
            return t.re < 0.0;
        }
        if t.im.abs() > SIGN_TIE_TOL {
            return t.im < 0.0;
        }
        for z in [self.a, self.b, self.c, self.d] {
            if z.re.abs() > SIGN_TIE_TOL {
                return z.re < 0.0;
            }
            if z.im.abs() > SIGN_TIE_TOL {
                return z.im < 0.0;
            }
        }
        false
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn trace_squared(&self) -> Complex64 {
        let t = self.trace();
        t * t
    }

    /// Acts on homogeneous coordinates; total on the sphere.
    pub fn apply(&self, p: SpherePoint) -> SpherePoint {
        let (x, y) = p.homogeneous();
        let (u, v) = self.apply_homogeneous(x, y);
        SpherePoint::from_homogeneous(u, v)
    }

    pub(crate) fn apply_homogeneous(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        (self.a * x + self.b * y, self.c * x + self.d * y)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MoebiusMap) -> MoebiusMap {
        let (p, q) = (self, inner);
        let a = p.a * q.a + p.b * q.c;
        let b = p.a * q.b + p.b * q.d;
        let c = p.c * q.a + p.d * q.c;
        let d = p.c * q.b + p.d * q.d;
        // The product of unimodular matrices has det 1 up to rounding;
        // renormalizing keeps long words from drifting.
        Self::normalized(a, b, c, d, a * d - b * c)
    }

    pub fn inverse(&self) -> MoebiusMap {
        let m = MoebiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a };
        if m.needs_sign_flip() {
            MoebiusMap { a: -m.a, b: -m.b, c: -m.c, d: -m.d }
        } else {
            m
        }
    }

    /// Maximum coefficient difference, minimized over the sign ambiguity.
    pub fn distance_to(&self, other: &MoebiusMap) -> f64 {
        let mut plus = 0.0f64;
        let mut minus = 0.0f64;
        for (x, y) in self.coefficients().into_iter().zip(other.coefficients()) {
            plus = plus.max((x - y).norm());
            minus = minus.max((x + y).norm());
        }
        plus.min(minus)
    }

    pub fn is_identity(&self) -> bool {
        self.distance_to(&Self::IDENTITY) < IDENTITY_TOL
    }

    /// Classification by `σ = trace²`.
    pub fn classify(&self, tol: f64) -> MapClass {
        if self.is_identity() {
            return MapClass::Identity;
        }
        let sigma = self.trace_squared();
        if (sigma - 4.0).norm() <= tol {
            MapClass::Parabolic
        } else if sigma.im.abs() <= tol && sigma.re >= -tol && sigma.re < 4.0 {
            MapClass::Elliptic
        } else {
            MapClass::Loxodromic
        }
    }

    /// Fixed points with their multipliers, attracting first.
    ///
    /// A parabolic map (within [`CLASS_TOL`]) has a single fixed point with
    /// multiplier 1.
    pub fn fixed_points(&self) -> Result<alloc::vec::Vec<FixedPoint>> {
        if self.is_identity() {
            return Err(Error::IdentityMap);
        }
        // Fixed points [x : y] solve c x² + (d - a) x y - b y² = 0. With
        // q = -((d - a) + s)/2 and s the root of the discriminant aligned with
        // d - a, the roots are [q : c] and [-b : q], free of cancellation.
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let t = a + d;
        let disc_sq = t * t - 4.0;
        let mut s = disc_sq.sqrt();
        if ((d - a).conj() * s).re < 0.0 {
            s = -s;
        }
        let q = -((d - a) + s) / 2.0;
        if disc_sq.norm() <= CLASS_TOL {
            // Double root: both representatives name the same point.
            let (x, y) = if q.norm_sqr() + c.norm_sqr() >= b.norm_sqr() + q.norm_sqr() {
                (q, c)
            } else {
                (-b, q)
            };
            return Ok(alloc::vec![FixedPoint {
                point: SpherePoint::from_homogeneous(x, y),
                multiplier: c64(1.0, 0.0),
            }]);
        }
        let roots = [(q, c), (-b, q)];
        let mu = roots.map(|(x, y)| self.eigenvalue(x, y));
        let (big, small) = if mu[0].norm_sqr() >= mu[1].norm_sqr() { (0, 1) } else { (1, 0) };
        // The eigenvalues multiply to 1; derive the smaller from the larger.
        let m_attr = (mu[big] * mu[big]).inv();
        Ok(alloc::vec![
            FixedPoint {
                point: SpherePoint::from_homogeneous(roots[big].0, roots[big].1),
                multiplier: m_attr,
            },
            FixedPoint {
                point: SpherePoint::from_homogeneous(roots[small].0, roots[small].1),
                multiplier: mu[big] * mu[big],
            },
        ])
    }

    /// Derivative at a fixed point `p` (in the `1/z` chart at ∞). Meaningless
    /// if `p` is not fixed.
    pub fn multiplier_at(&self, p: SpherePoint) -> Complex64 {
        let (x, y) = p.homogeneous();
        let mu = self.eigenvalue(x, y);
        (mu * mu).inv()
    }

    /// Eigenvalue of the eigenvector `(x, y)`. The derivative at the fixed
    /// point `[x : y]` is its inverse square.
    fn eigenvalue(&self, x: Complex64, y: Complex64) -> Complex64 {
        if y.norm_sqr() >= x.norm_sqr() {
            (self.c * x + self.d * y) / y
        } else {
            (self.a * x + self.b * y) / x
        }
    }

    /// Normalized spherical derivative `|M'(z)| (1 + |z|²) / (1 + |M(z)|²)`.
    pub fn spherical_derivative(&self, p: SpherePoint) -> f64 {
        let (x, y) = p.homogeneous();
        let (u, v) = self.apply_homogeneous(x, y);
        (x.norm_sqr() + y.norm_sqr()) / (u.norm_sqr() + v.norm_sqr())
    }

    /// Natural log of [`spherical_derivative`](Self::spherical_derivative).
    pub(crate) fn ln_spherical_derivative(&self, p: SpherePoint) -> f64 {
        let (x, y) = p.homogeneous();
        let (u, v) = self.apply_homogeneous(x, y);
        (x.norm_sqr() + y.norm_sqr()).ln() - (u.norm_sqr() + v.norm_sqr()).ln()
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}·z + {}) / ({}·z + {})", self.a, self.b, self.c, self.d)
    }
}


#[cfg(test)]
mod tests {
    use super::strategies::*;
    use super::*;
    use crate::sphere::chordal_dist;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(m: &MoebiusMap, coeffs: [Complex64; 4]) -> bool {
        m.coefficients().iter().zip(coeffs).all(|(x, y)| (x - y).norm() < 1e-12)
    }

    #[test]
    fn normalization_examples() {
        let t = MoebiusMap::new(c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(close(&t, [c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]));
        let s = MoebiusMap::new(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let r = 2f64.sqrt();
        assert!(close(&s, [c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0 / r, 0.0)]));
        let u = MoebiusMap::new(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(close(&u, [c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]));
        // Negative trace is flipped.
        let n = MoebiusMap::new(c(-1.0, 0.0), c(-2.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)).unwrap();
        assert_eq!(n, t);
        assert!(matches!(
            MoebiusMap::new(c(1.0, 0.0), c(2.0, 0.0), c(0.5, 0.0), c(1.0, 0.0)),
            Err(Error::DegenerateMap { .. })
        ));
    }

    #[test]
    fn apply_examples() {
        let t = MoebiusMap::translation(c(2.0, 0.0));
        assert_eq!(t.apply(SpherePoint::Infinity), SpherePoint::Infinity);
        let f2 = MoebiusMap::new(c(0.0, 3.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 3.0)).unwrap();
        assert!(f2.apply(SpherePoint::new(0.0, 1.0)).chordal_dist(SpherePoint::new(0.0, 1.0)) < 1e-12);
        let inv = MoebiusMap::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(inv.apply(SpherePoint::ZERO), SpherePoint::Infinity);
        assert_eq!(inv.apply(SpherePoint::Infinity), SpherePoint::ZERO);
        // ∞ ↦ a/c
        let m = MoebiusMap::new(c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(m.apply(SpherePoint::Infinity).chordal_dist(SpherePoint::new(2.0, 0.0)) < 1e-12);
        assert_eq!(m.apply(SpherePoint::new(-1.0, 0.0)), SpherePoint::Infinity);
    }

    #[test]
    fn compose_and_inverse_examples() {
        let t = MoebiusMap::translation(c(2.0, 0.0));
        assert!(t.compose(&MoebiusMap::IDENTITY).distance_to(&t) < 1e-15);
        let two = MoebiusMap::scaling(c(2.0, 0.0)).unwrap();
        let plus1 = MoebiusMap::translation(c(1.0, 0.0));
        let expect = MoebiusMap::new(c(2.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(two.compose(&plus1).distance_to(&expect) < 1e-15);
        assert!(t.inverse().distance_to(&MoebiusMap::translation(c(-2.0, 0.0))) < 1e-15);
        assert_eq!(t.compose(&t.inverse()).classify(CLASS_TOL), MapClass::Identity);
        let f2 = MoebiusMap::new(c(0.0, 3.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 3.0)).unwrap();
        let i = SpherePoint::new(0.0, 1.0);
        assert!(f2.inverse().apply(i).chordal_dist(i) < 1e-12);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(MoebiusMap::translation(c(2.0, 0.0)).classify(CLASS_TOL), MapClass::Parabolic);
        let omega = Complex64::from_polar(1.0, core::f64::consts::TAU / 3.0);
        assert_eq!(MoebiusMap::scaling(omega).unwrap().classify(CLASS_TOL), MapClass::Elliptic);
        let f1 = MoebiusMap::new(c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(f1.classify(CLASS_TOL), MapClass::Loxodromic);
        // Half-turn: trace 0, σ = 0 sits on the elliptic boundary.
        let half = MoebiusMap::scaling(c(-1.0, 0.0)).unwrap();
        assert_eq!(half.classify(CLASS_TOL), MapClass::Elliptic);
        assert_eq!(MoebiusMap::IDENTITY.classify(CLASS_TOL), MapClass::Identity);
    }

    #[test]
    fn fixed_point_examples() {
        let f1 = MoebiusMap::new(c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let fp = f1.fixed_points().unwrap();
        assert_eq!(fp.len(), 2);
        assert!(fp[0].point.chordal_dist(SpherePoint::new(1.0, 0.0)) < 1e-12);
        assert!((fp[0].multiplier - c(0.5, 0.0)).norm() < 1e-12);
        assert_eq!(fp[1].point, SpherePoint::Infinity);
        assert!((fp[1].multiplier - c(2.0, 0.0)).norm() < 1e-12);

        let f2 = MoebiusMap::new(c(0.0, 3.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 3.0)).unwrap();
        let fp = f2.fixed_points().unwrap();
        assert!(fp[0].point.chordal_dist(SpherePoint::new(0.0, 1.0)) < 1e-12);
        assert!(fp[0].multiplier.norm() < 1.0);
        assert!(fp[1].point.chordal_dist(SpherePoint::new(0.0, -1.0)) < 1e-12);
        assert!(fp[1].multiplier.norm() > 1.0);

        // Tent branch λ - λz.
        let lambda = c(3.5, 0.0);
        let tent = MoebiusMap::new(-lambda, lambda, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let fp = tent.fixed_points().unwrap();
        let z_lambda = SpherePoint::finite(lambda / (lambda + 1.0));
        assert!(fp.iter().any(|f| f.point.chordal_dist(z_lambda) < 1e-12));
        assert!(fp.iter().any(|f| f.point == SpherePoint::Infinity));

        let t = MoebiusMap::translation(c(2.0, 0.0));
        let fp = t.fixed_points().unwrap();
        assert_eq!(fp.len(), 1);
        assert_eq!(fp[0].point, SpherePoint::Infinity);
        assert_eq!(MoebiusMap::IDENTITY.fixed_points(), Err(Error::IdentityMap));
    }

    #[test]
    fn spherical_derivative_examples() {
        let p = SpherePoint::new(0.3, 2.0);
        assert!((MoebiusMap::IDENTITY.spherical_derivative(p) - 1.0).abs() < 1e-15);
        let two = MoebiusMap::scaling(c(2.0, 0.0)).unwrap();
        assert!((two.spherical_derivative(SpherePoint::ZERO) - 2.0).abs() < 1e-14);
        assert!((two.spherical_derivative(SpherePoint::Infinity) - 0.5).abs() < 1e-14);
        let lambda = Complex64::from_polar(10.0 / 9.0, core::f64::consts::TAU / 3.0);
        let f2 = MoebiusMap::new(-lambda, lambda, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let z0 = SpherePoint::finite(lambda / (lambda + 1.0));
        assert!((f2.spherical_derivative(z0) - 10.0 / 9.0).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn determinant_is_one(m in map()) {
            let [a, b, c, d] = m.coefficients();
            prop_assert!((a * d - b * c - 1.0).norm() < 1e-12);
            prop_assert!(m.trace().re >= -SIGN_TIE_TOL);
        }

        #[test]
        fn group_laws(f in map(), g in map(), h in map(), p in point()) {
            let lhs = f.compose(&g).compose(&h).apply(p);
            let rhs = f.compose(&g.compose(&h)).apply(p);
            prop_assert!(chordal_dist(lhs, rhs) < 1e-9);
            prop_assert!(chordal_dist(f.compose(&g).apply(p), f.apply(g.apply(p))) < 1e-9);
            prop_assert!(chordal_dist(f.inverse().apply(f.apply(p)), p) < 1e-9);
            prop_assert_eq!(f.compose(&f.inverse()).classify(CLASS_TOL), MapClass::Identity);
            prop_assert_eq!(f.inverse().compose(&f).classify(CLASS_TOL), MapClass::Identity);
        }

        #[test]
        fn cocycle(words in proptest::collection::vec(map(), 1..=6), p in point()) {
            let mut composite = MoebiusMap::IDENTITY;
            let mut product = 1.0;
            let mut q = p;
            for m in &words {
                product *= m.spherical_derivative(q);
                q = m.apply(q);
                composite = m.compose(&composite);
            }
            let direct = composite.spherical_derivative(p);
            prop_assert!((direct - product).abs() <= 1e-8 * direct.max(product));
        }

        #[test]
        fn fixed_points_are_fixed(m in map()) {
            for fp in m.fixed_points().unwrap() {
                prop_assert!(chordal_dist(m.apply(fp.point), fp.point) < 1e-9);
            }
        }

        #[test]
        fn class_matches_multipliers(m in map()) {
            let fps = m.fixed_points().unwrap();
            match m.classify(CLASS_TOL) {
                MapClass::Parabolic => prop_assert_eq!(fps.len(), 1),
                MapClass::Elliptic => {
                    prop_assert_eq!(fps.len(), 2);
                    prop_assert!((fps[0].multiplier.norm() - 1.0).abs() < 1e-6);
                }
                MapClass::Loxodromic => {
                    prop_assert_eq!(fps.len(), 2);
                    prop_assert!(fps[0].multiplier.norm() < 1.0);
                    prop_assert!(fps[1].multiplier.norm() > 1.0);
                    prop_assert!((fps[0].multiplier * fps[1].multiplier - 1.0).norm() < 1e-9);
                }
                MapClass::Identity => prop_assert!(false),
            }
        }

        #[test]
        fn class_invariant_under_conjugation(m in map(), g in map()) {
            let sigma = m.trace_squared();
            // Only well-separated traces are expected to be stable.
            prop_assume!((sigma - 4.0).norm() > 1e-3 && sigma.im.abs() > 1e-3);
            let conj = g.compose(&m).compose(&g.inverse());
            prop_assert_eq!(conj.classify(CLASS_TOL), m.classify(CLASS_TOL));
        }
    }

    #[test]
    fn conjugated_elliptic_stays_elliptic() {
        let omega = Complex64::from_polar(1.0, 0.7);
        let rot = MoebiusMap::scaling(omega).unwrap();
        let g = MoebiusMap::new(c(1.0, 2.0), c(0.5, 0.0), c(-1.0, 0.3), c(2.0, 0.0)).unwrap();
        let conj = g.compose(&rot).compose(&g.inverse());
        assert_eq!(conj.classify(CLASS_TOL), MapClass::Elliptic);
        let fps = conj.fixed_points().unwrap();
        assert!((fps[0].multiplier.norm() - 1.0).abs() < 1e-9);
    }
}
