use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::pmt::{Pmt, Termination};
use crate::sphere::SpherePoint;

/// Chordal radius of an ω-limit cluster.
pub const OMEGA_CLUSTER_RADIUS: f64 = 1e-6;
/// Tails with more clusters than this are reported as saturated.
const MAX_CLUSTERS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub enum OmegaLimit {
    /// Cluster representatives of the orbit tail. `saturated` means the
    /// tail did not settle into at most 64 clusters.
    Clusters { points: Vec<SpherePoint>, saturated: bool },
    /// The orbit reached the boundary at this step.
    Divergent { step: usize },
}

/// Clusters the last `tail_fraction` of an orbit of up to `n` steps. An orbit
/// that settles early contributes its limit point alone.
pub fn omega_limit_approx(
    f: &Pmt,
    p: SpherePoint,
    n: usize,
    tail_fraction: f64,
    tol_b: f64,
    tol_conv: f64,
) -> OmegaLimit {
    let rec = f.orbit(p, n, tol_b, tol_conv);
    let tail: &[SpherePoint] = match rec.termination {
        Termination::HitBoundary(step) => return OmegaLimit::Divergent { step },
        Termination::NumericalLoss => return OmegaLimit::Divergent { step: rec.itinerary.len() },
        Termination::ConvergedTo(q) => return OmegaLimit::Clusters { points: alloc::vec![q], saturated: false },
        Termination::MaxIterations => {
            let len = rec.points.len();
            let take = ((len as f64 * tail_fraction.clamp(0.0, 1.0)).ceil() as usize).clamp(1, len);
            &rec.points[len - take..]
        }
    };
    let mut points: Vec<SpherePoint> = Vec::new();
    // Walk backwards so representatives are the latest, most settled points.
    for &q in tail.iter().rev() {
        if points.iter().all(|c| c.chordal_dist(q) > OMEGA_CLUSTER_RADIUS) {
            if points.len() == MAX_CLUSTERS {
                return OmegaLimit::Clusters { points, saturated: true };
            }
            points.push(q);
        }
    }
    OmegaLimit::Clusters { points, saturated: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::BOUNDARY_TOL;
    use crate::pmt::CONVERGENCE_TOL;
    use crate::presets;
    use core::f64::consts::TAU;
    use num_complex::Complex64;

    fn omega(f: &Pmt, p: SpherePoint) -> OmegaLimit {
        omega_limit_approx(f, p, 1000, 0.1, BOUNDARY_TOL, CONVERGENCE_TOL)
    }

    fn single(o: OmegaLimit) -> SpherePoint {
        match o {
            OmegaLimit::Clusters { points, saturated: false } if points.len() == 1 => points[0],
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn contraction_and_ghost_converge_to_zero() {
        let f = presets::two_scalings(Complex64::new(0.5, 0.0)).unwrap();
        assert!(single(omega(&f, SpherePoint::new(0.4, 0.0))).chordal_dist(SpherePoint::ZERO) < 1e-5);
        let g = presets::ghost().unwrap();
        assert!(single(omega(&g, SpherePoint::new(0.5, 0.0))).chordal_dist(SpherePoint::ZERO) < 1e-5);
    }

    #[test]
    fn rotation_gives_three_clusters() {
        let f = presets::expand_no_hyper().unwrap();
        let OmegaLimit::Clusters { points, saturated: false } = omega(&f, SpherePoint::new(0.1, 0.0)) else {
            panic!()
        };
        assert_eq!(points.len(), 3);
        for j in 0..3 {
            let expected = SpherePoint::finite(Complex64::from_polar(0.1, TAU * j as f64 / 3.0));
            assert!(points.iter().any(|q| q.chordal_dist(expected) < 1e-9));
        }
    }

    #[test]
    fn boundary_start_is_divergent() {
        let f = presets::two_scalings(Complex64::new(0.5, 0.0)).unwrap();
        assert_eq!(omega(&f, SpherePoint::new(1.0, 0.0)), OmegaLimit::Divergent { step: 0 });
    }
}
