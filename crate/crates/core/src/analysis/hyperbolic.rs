use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::omega::{omega_limit_approx, OmegaLimit, OMEGA_CLUSTER_RADIUS};
use crate::analysis::periodic::{attracting_cycles, find_periodic, PeriodicConfig, PeriodicKind, PeriodicPoint};
use crate::pmt::Pmt;
use crate::sphere::SpherePoint;
use crate::spiderweb::{raster_classify, Label, RasterImage, RasterParams, Window};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicityConfig {
    pub periodic: PeriodicConfig,
    /// Random seeds whose ω-limits are compared with the attracting cycles.
    pub seeds: usize,
    pub rng_seed: u64,
    pub orbit_len: usize,
    pub tail_fraction: f64,
    /// Step size at which a seed orbit counts as settled.
    pub tol_conv: f64,
    pub raster: Window,
    pub raster_params: RasterParams,
    /// Largest tolerated fraction of unresolved non-boundary pixels.
    pub unresolved_max: f64,
}

impl Default for HyperbolicityConfig {
    fn default() -> Self {
        HyperbolicityConfig {
            periodic: PeriodicConfig::default(),
            seeds: 200,
            rng_seed: 0x5eed,
            orbit_len: 20_000,
            tail_fraction: 0.05,
            tol_conv: 1e-10,
            raster: Window::Sphere { size: 48 },
            raster_params: RasterParams::with_iterations(2000),
            unresolved_max: 0.01,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum HyperbolicityVerdict {
    Hyperbolic,
    /// A neutral or ghost periodic point, the first one in census order.
    NotHyperbolic(PeriodicPoint),
    /// No attracting cycle up to the census length, or the seeds and raster
    /// suggest a wandering or undiscovered component.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicityReport {
    pub verdict: HyperbolicityVerdict,
    pub census: Vec<PeriodicPoint>,
    pub attracting_cycles: Vec<Vec<SpherePoint>>,
    /// Seeds whose orbit stayed regular for the whole run.
    pub regular_seeds: usize,
    pub boundary_seeds: usize,
    /// Regular seeds whose ω-limit clusters all lie on attracting cycles.
    pub matched_seeds: usize,
    /// One ω-cluster point per unmatched seed.
    pub unmatched: Vec<SpherePoint>,
    pub unresolved_fraction: f64,
    pub raster: RasterImage,
}

impl HyperbolicityReport {
    pub fn is_hyperbolic(&self) -> bool {
        self.verdict == HyperbolicityVerdict::Hyperbolic
    }

    /// Heuristic: some regular orbit found no catalogued attractor.
    pub fn wandering_suspected(&self, config: &HyperbolicityConfig) -> bool {
        !self.unmatched.is_empty() || self.unresolved_fraction >= config.unresolved_max
    }
}

/// Census, seed ω-limits and a sphere raster combined into a verdict.
pub fn hyperbolicity_check(f: &Pmt, config: &HyperbolicityConfig) -> Result<HyperbolicityReport> {
    let census = find_periodic(f, &config.periodic)?;
    let cycles = attracting_cycles(&census);
    let tol_b = config.periodic.boundary_tol;

    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let (mut regular_seeds, mut boundary_seeds, mut matched_seeds) = (0, 0, 0);
    let mut unmatched = Vec::new();
    for _ in 0..config.seeds {
        let p = SpherePoint::random_uniform(&mut rng);
        let points = match omega_limit_approx(f, p, config.orbit_len, config.tail_fraction, tol_b, config.tol_conv)
        {
            OmegaLimit::Divergent { .. } => {
                boundary_seeds += 1;
                continue;
            }
            OmegaLimit::Clusters { points, .. } => points,
        };
        regular_seeds += 1;
        let on_cycle = |q: &SpherePoint| {
            cycles.iter().flatten().any(|c| c.chordal_dist(*q) <= OMEGA_CLUSTER_RADIUS)
        };
        match points.iter().find(|q| !on_cycle(q)) {
            None => matched_seeds += 1,
            Some(&q) => unmatched.push(q),
        }
    }

    let raster = raster_classify(f, config.raster, config.raster_params, &cycles);
    let boundary = raster.count(|l| matches!(l, Label::BoundaryDepth(_)));
    let unresolved = raster.count(|l| l == Label::Unresolved);
    let open = raster.labels.len() - boundary;
    let unresolved_fraction = if open == 0 { 0.0 } else { unresolved as f64 / open as f64 };

    let offending = census
        .iter()
        .find(|pp| pp.kind.is_neutral() || pp.kind == PeriodicKind::Ghost);
    let verdict = if let Some(pp) = offending {
        HyperbolicityVerdict::NotHyperbolic(pp.clone())
    } else if cycles.is_empty() || !unmatched.is_empty() || unresolved_fraction >= config.unresolved_max {
        HyperbolicityVerdict::Inconclusive
    } else {
        HyperbolicityVerdict::Hyperbolic
    };

    Ok(HyperbolicityReport {
        verdict,
        census,
        attracting_cycles: cycles,
        regular_seeds,
        boundary_seeds,
        matched_seeds,
        unmatched,
        unresolved_fraction,
        raster,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use num_complex::Complex64;

    fn quick() -> HyperbolicityConfig {
        HyperbolicityConfig {
            periodic: PeriodicConfig::with_max_len(4),
            seeds: 50,
            raster: Window::Sphere { size: 16 },
            ..Default::default()
        }
    }

    #[test]
    fn two_scalings_is_hyperbolic() {
        let f = presets::two_scalings(Complex64::new(0.5, 0.0)).unwrap();
        let r = hyperbolicity_check(&f, &quick()).unwrap();
        assert_eq!(r.verdict, HyperbolicityVerdict::Hyperbolic);
        assert_eq!(r.matched_seeds, r.regular_seeds);
        assert!(r.regular_seeds > 40);
        assert!(!r.wandering_suspected(&quick()));
    }

    #[test]
    fn ghost_and_neutral_points_are_not_hyperbolic() {
        let g = presets::ghost().unwrap();
        match hyperbolicity_check(&g, &quick()).unwrap().verdict {
            HyperbolicityVerdict::NotHyperbolic(pp) => {
                assert_eq!(pp.kind, PeriodicKind::Ghost);
                assert!(pp.point.chordal_dist(SpherePoint::ZERO) < 1e-9);
            }
            v => panic!("{v:?}"),
        }
        let e = presets::expand_no_hyper().unwrap();
        match hyperbolicity_check(&e, &quick()).unwrap().verdict {
            HyperbolicityVerdict::NotHyperbolic(pp) => {
                assert!(pp.kind.is_neutral());
                assert!(pp.point.chordal_dist(SpherePoint::ZERO) < 1e-9);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn rotation_without_attractors_is_inconclusive() {
        // Irrational annulus: both fixed points repel, orbits wander.
        let f = presets::irrational_annulus().unwrap();
        let r = hyperbolicity_check(&f, &quick()).unwrap();
        assert_eq!(r.verdict, HyperbolicityVerdict::Inconclusive);
        assert!(r.wandering_suspected(&quick()));
    }
}
