//! Piecewise Möbius transformations: evaluation, orbits and words.

use alloc::format;
use alloc::vec::Vec;

use crate::moebius::MoebiusMap;
use crate::partition::{Location, Partition};
use crate::sphere::SpherePoint;
use crate::{Error, Result};

/// Coefficient distance below which two maps count as equal for minimality.
pub const MINIMALITY_TOL: f64 = 1e-9;
/// Default chordal step size below which an orbit counts as settled.
pub const CONVERGENCE_TOL: f64 = 1e-6;
/// Consecutive small steps required for convergence.
pub const CONVERGENCE_STREAK: usize = 10;

/// Region indices applied first to last; index `k` selects `maps[k]`.
pub type Word = Vec<usize>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination {
    MaxIterations,
    /// Index into `points` of the point found on the boundary.
    HitBoundary(usize),
    ConvergedTo(SpherePoint),
    /// No region claimed a point off the boundary.
    NumericalLoss,
}

/// `itinerary[i]` is the region of `points[i]`, and
/// `points[i + 1] = maps[itinerary[i]](points[i])`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitRecord {
    pub points: Vec<SpherePoint>,
    pub itinerary: Vec<usize>,
    pub termination: Termination,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ItineraryCheck {
    Consistent,
    ConsistentOnClosure,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pmt {
    partition: Partition,
    maps: Vec<MoebiusMap>,
}

impl Pmt {
    /// Checks the region count and minimality: regions that share a boundary
    /// component must carry different maps.
    pub fn new(partition: Partition, maps: Vec<MoebiusMap>) -> Result<Self> {
        if partition.len() != maps.len() {
            return Err(Error::InvalidPmt(format!(
                "{} regions but {} maps",
                partition.len(),
                maps.len()
            )));
        }
        for k in 0..maps.len() {
            for j in k + 1..maps.len() {
                let shared = partition
                    .constraint_components(k)
                    .any(|c| partition.constraint_components(j).any(|d| d == c));
                if shared && maps[k].distance_to(&maps[j]) <= MINIMALITY_TOL {
                    return Err(Error::InvalidPmt(format!(
                        "adjacent regions {} and {} carry the same map",
                        k + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Pmt { partition, maps })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn maps(&self) -> &[MoebiusMap] {
        &self.maps
    }

    pub fn map(&self, k: usize) -> &MoebiusMap {
        &self.maps[k]
    }

    /// Number of regions.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// `None` on the boundary (and, for invalid partitions, where no region
    /// claims the point).
    pub fn apply(&self, p: SpherePoint, tol_b: f64) -> Option<SpherePoint> {
        match self.partition.locate(p, tol_b) {
            Ok(Location::Region(k)) => Some(self.maps[k].apply(p)),
            _ => None,
        }
    }

    /// Iterates up to `n` steps, stopping on the boundary or once
    /// [`CONVERGENCE_STREAK`] consecutive steps are shorter than `tol_conv`.
    pub fn orbit(&self, p: SpherePoint, n: usize, tol_b: f64, tol_conv: f64) -> OrbitRecord {
        let mut points = Vec::with_capacity(n.min(4096) + 1);
        let mut itinerary = Vec::with_capacity(n.min(4096));
        points.push(p);
        let mut current = p;
        let mut streak = 0;
        for step in 0..n {
            let k = match self.partition.locate(current, tol_b) {
                Ok(Location::Region(k)) => k,
                Ok(Location::Boundary) => {
                    return OrbitRecord { points, itinerary, termination: Termination::HitBoundary(step) }
                }
                Err(_) => {
                    return OrbitRecord { points, itinerary, termination: Termination::NumericalLoss }
                }
            };
            let next = self.maps[k].apply(current);
            itinerary.push(k);
            points.push(next);
            if next.chordal_dist(current) < tol_conv {
                streak += 1;
                if streak >= CONVERGENCE_STREAK {
                    return OrbitRecord { points, itinerary, termination: Termination::ConvergedTo(next) };
                }
            } else {
                streak = 0;
            }
            current = next;
        }
        OrbitRecord { points, itinerary, termination: Termination::MaxIterations }
    }

    /// `f_{w[n-1]} ∘ … ∘ f_{w[0]}`.
    pub fn word_map(&self, word: &[usize]) -> MoebiusMap {
        word.iter().fold(MoebiusMap::IDENTITY, |acc, &k| self.maps[k].compose(&acc))
    }

    /// Follows `word` from `p` and reports whether every visited point lies in
    /// the prescribed open region, or only in its closure.
    pub fn itinerary_consistent(&self, p: SpherePoint, word: &[usize], tol_b: f64) -> ItineraryCheck {
        let worst = self.itinerary_margin(p, word);
        if worst < -tol_b {
            ItineraryCheck::Consistent
        } else if worst <= tol_b {
            ItineraryCheck::ConsistentOnClosure
        } else {
            ItineraryCheck::Inconsistent
        }
    }

    /// Largest region margin met while following `word` from `p`.
    pub fn itinerary_margin(&self, p: SpherePoint, word: &[usize]) -> f64 {
        let mut q = p;
        let mut worst = f64::NEG_INFINITY;
        for &k in word {
            worst = worst.max(self.partition.region_margin(k, q));
            q = self.maps[k].apply(q);
        }
        worst
    }
}
