//! Partitions of the sphere into circline-bounded regions.
//!
//! Regions are indexed from 0 in the API; reports and file formats add 1.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circline::{Circline, Side};
use crate::moebius::MoebiusMap;
use crate::sphere::SpherePoint;
use crate::vec3::{self, Vec3};
use crate::{Error, Result};

/// Default boundary tolerance, in plane-value units.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Two constraint circlines closer than this are the same boundary component.
const SAME_COMPONENT_TOL: f64 = 1e-9;

/// Violation points kept per category in a [`ValidationReport`].
const MAX_REPORTED: usize = 16;

/// Where a point sits relative to a partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Region(usize),
    Boundary,
}

/// An intersection of open half-spheres, with a point known to lie inside.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    constraints: Vec<(Circline, Side)>,
    witness: SpherePoint,
}

impl Region {
    /// Finds a witness by scanning a fixed spherical lattice for the point
    /// with the most clearance.
    pub fn new(constraints: Vec<(Circline, Side)>) -> Result<Self> {
        let region = Region { constraints, witness: SpherePoint::ZERO };
        region.check_sides()?;
        let n = 4096;
        let mut best = (f64::INFINITY, SpherePoint::ZERO);
        for i in 0..n {
            let p = fibonacci_point(i, n);
            let m = region.margin(p);
            if m < best.0 {
                best = (m, p);
            }
        }
        if !(best.0 < -1e-6) {
            return Err(Error::InvalidPartition(format!(
                "region with {} constraints looks empty",
                region.constraints.len()
            )));
        }
        Ok(Region { witness: best.1, ..region })
    }

    pub fn with_witness(constraints: Vec<(Circline, Side)>, witness: SpherePoint) -> Result<Self> {
        let region = Region { constraints, witness };
        region.check_sides()?;
        if !(region.margin(witness) < 0.0) {
            return Err(Error::InvalidPartition(format!(
                "witness {witness:?} is not inside its region"
            )));
        }
        Ok(region)
    }

    fn check_sides(&self) -> Result<()> {
        if self.constraints.is_empty() {
            return Err(Error::InvalidPartition("region without constraints".into()));
        }
        if self.constraints.iter().any(|(_, s)| *s == Side::On) {
            return Err(Error::InvalidPartition("constraint side must be Inside or Outside".into()));
        }
        Ok(())
    }

    pub fn constraints(&self) -> &[(Circline, Side)] {
        &self.constraints
    }

    pub fn witness(&self) -> SpherePoint {
        self.witness
    }

    /// Largest oriented plane value over the constraints; negative exactly on
    /// the open region.
    pub fn margin(&self, p: SpherePoint) -> f64 {
        let q = p.to_unit_vector();
        self.constraints
            .iter()
            .map(|(c, s)| oriented(c.plane_value_at(q), *s))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, p: SpherePoint) -> bool {
        self.margin(p) < 0.0
    }

    fn transport(&self, g: &MoebiusMap) -> Region {
        Region {
            constraints: self.constraints.iter().map(|(c, s)| (c.image(g), *s)).collect(),
            witness: g.apply(self.witness),
        }
    }
}

fn oriented(value: f64, side: Side) -> f64 {
    match side {
        Side::Outside => -value,
        _ => value,
    }
}

/// Quasi-uniform point `i` of `n` on the sphere.
pub(crate) fn fibonacci_point(i: usize, n: usize) -> SpherePoint {
    let golden = core::f64::consts::PI * (3.0 - 5f64.sqrt());
    let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
    let r = (1.0 - z * z).max(0.0).sqrt();
    let phi = golden * i as f64;
    SpherePoint::from_unit_vector([r * phi.cos(), r * phi.sin(), z])
}

/// One boundary plane in unit form: `normal·P + offset` is the plane value.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Plane {
    normal: Vec3,
    offset: f64,
}

impl Plane {
    fn of(c: &Circline) -> Plane {
        let (a, b, d) = c.coefficients();
        let n = [2.0 * b.re, 2.0 * b.im, a - d];
        let len = vec3::norm(n);
        Plane { normal: vec3::scale(n, len.recip()), offset: (a + d) / len }
    }

    fn value(&self, q: Vec3) -> f64 {
        vec3::dot(self.normal, q) + self.offset
    }
}

/// A constraint resolved against the boundary list: the oriented value is
/// `sign * boundary_plane_value`, negative when satisfied.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Resolved {
    boundary: usize,
    sign: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    regions: Vec<Region>,
    boundary: Vec<Circline>,
    planes: Vec<Plane>,
    resolved: Vec<Vec<Resolved>>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub samples: usize,
    pub boundary_hits: usize,
    pub disjointness_violations: usize,
    pub covering_violations: usize,
    /// Up to 16 offending points per category.
    pub disjointness_points: Vec<SpherePoint>,
    pub covering_points: Vec<SpherePoint>,
    /// Regions whose witness is not claimed by exactly that region.
    pub witness_failures: Vec<usize>,
}

impl ValidationReport {
    pub fn violations(&self) -> usize {
        self.disjointness_violations + self.covering_violations + self.witness_failures.len()
    }

    pub fn is_valid(&self) -> bool {
        self.violations() == 0
    }
}

impl Partition {
    /// Collects the boundary components; disjointness and covering are left
    /// to [`validate`](Self::validate).
    pub fn new(regions: Vec<Region>) -> Result<Self> {
        if regions.len() < 2 {
            return Err(Error::InvalidPartition(format!(
                "need at least two regions, got {}",
                regions.len()
            )));
        }
        let mut boundary: Vec<Circline> = Vec::new();
        let mut resolved = Vec::with_capacity(regions.len());
        for region in &regions {
            let mut rs = Vec::with_capacity(region.constraints.len());
            for (c, side) in &region.constraints {
                let (index, flip) = match boundary.iter().position(|b| b.same_set(c, SAME_COMPONENT_TOL)) {
                    Some(i) => (i, !boundary[i].same_oriented(c, SAME_COMPONENT_TOL)),
                    None => {
                        boundary.push(*c);
                        (boundary.len() - 1, false)
                    }
                };
                let mut sign = if flip { -1.0 } else { 1.0 };
                if *side == Side::Outside {
                    sign = -sign;
                }
                rs.push(Resolved { boundary: index, sign });
            }
            resolved.push(rs);
        }
        let planes = boundary.iter().map(Plane::of).collect();
        Ok(Partition { regions, boundary, planes, resolved })
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region(&self, k: usize) -> &Region {
        &self.regions[k]
    }

    /// The deduplicated boundary circlines, each a connected component of B.
    pub fn boundary_components(&self) -> &[Circline] {
        &self.boundary
    }

    /// Boundary component index of each constraint of region `k`.
    pub fn constraint_components(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.resolved[k].iter().map(|r| r.boundary)
    }

    /// Smallest absolute plane value over the boundary components.
    pub fn boundary_clearance(&self, p: SpherePoint) -> f64 {
        let q = p.to_unit_vector();
        self.planes.iter().map(|pl| pl.value(q).abs()).fold(f64::INFINITY, f64::min)
    }

    /// Oriented margin of `p` for region `k` (see [`Region::margin`]).
    pub fn region_margin(&self, k: usize, p: SpherePoint) -> f64 {
        let q = p.to_unit_vector();
        self.margin_at(k, q)
    }

    fn margin_at(&self, k: usize, q: Vec3) -> f64 {
        self.resolved[k]
            .iter()
            .map(|r| r.sign * self.planes[r.boundary].value(q))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `Boundary` within `tol_b` of any component, otherwise the region that
    /// strictly contains `p`.
    pub fn locate(&self, p: SpherePoint, tol_b: f64) -> Result<Location> {
        let q = p.to_unit_vector();
        if self.planes.iter().any(|pl| pl.value(q).abs() <= tol_b) {
            return Ok(Location::Boundary);
        }
        (0..self.regions.len())
            .find(|&k| self.margin_at(k, q) < 0.0)
            .map(Location::Region)
            .ok_or(Error::NoRegion)
    }

    /// Samples `samples` uniform points from a seeded generator and checks
    /// that each is claimed by exactly one region or is on the boundary.
    pub fn validate(&self, samples: usize, seed: u64) -> ValidationReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = ValidationReport { samples, ..Default::default() };
        for _ in 0..samples {
            let p = SpherePoint::random_uniform(&mut rng);
            let q = p.to_unit_vector();
            if self.planes.iter().any(|pl| pl.value(q).abs() <= BOUNDARY_TOL) {
                report.boundary_hits += 1;
                continue;
            }
            let claims = (0..self.regions.len()).filter(|&k| self.margin_at(k, q) < 0.0).count();
            match claims {
                1 => {}
                0 => {
                    report.covering_violations += 1;
                    if report.covering_points.len() < MAX_REPORTED {
                        report.covering_points.push(p);
                    }
                }
                _ => {
                    report.disjointness_violations += 1;
                    if report.disjointness_points.len() < MAX_REPORTED {
                        report.disjointness_points.push(p);
                    }
                }
            }
        }
        for (k, region) in self.regions.iter().enumerate() {
            let q = region.witness.to_unit_vector();
            let claims: Vec<usize> =
                (0..self.regions.len()).filter(|&j| self.margin_at(j, q) < 0.0).collect();
            if claims != [k] {
                report.witness_failures.push(k);
            }
        }
        report
    }

    /// The partition carried by a global Möbius map.
    pub fn transport(&self, g: &MoebiusMap) -> Partition {
        let regions = self.regions.iter().map(|r| r.transport(g)).collect();
        // Images of distinct circlines stay distinct, so the boundary
        // bookkeeping cannot fail.
        Partition::new(regions).expect("transport preserves partition structure")
    }
}
