use alloc::vec::Vec;

use crate::analysis::alpha::{alpha_expanding_check, alpha_sample, AlphaExpansion, AlphaSample};
use crate::analysis::hyperbolic::{hyperbolicity_check, HyperbolicityConfig, HyperbolicityReport};
use crate::analysis::schottky::{schottky_hypothesis_check, SchottkyResult};
use crate::moebius::{MapClass, CLASS_TOL};
use crate::pmt::Pmt;
use crate::spiderweb::{backward_arcs, SpiderwebConfig};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityConfig {
    pub hyperbolicity: HyperbolicityConfig,
    /// Spiderweb used for α sampling; must be at least `schottky_depth`.
    pub spiderweb: SpiderwebConfig,
    pub schottky_depth: usize,
    pub alpha_budget: usize,
    pub alpha_n_max: usize,
}

impl Default for StabilityConfig {
    fn default() -> Self {
        StabilityConfig {
            hyperbolicity: HyperbolicityConfig::default(),
            spiderweb: SpiderwebConfig::with_depth(8),
            schottky_depth: 5,
            alpha_budget: 256,
            alpha_n_max: 20,
        }
    }
}

/// Every sufficient condition for structural stability that can be checked,
/// with its evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// Class of each branch.
    pub component_classes: Vec<MapClass>,
    pub loxodromic_components: bool,
    pub hyperbolicity: HyperbolicityReport,
    pub alpha_sample: AlphaSample,
    pub alpha: AlphaExpansion,
    pub schottky: SchottkyResult,
    pub wandering_suspected: bool,
    /// Census completeness bound: periods up to this length were searched.
    pub census_max_len: usize,
    pub sufficient_conditions_met: bool,
}

pub fn stability_report(f: &Pmt, config: &StabilityConfig) -> Result<StabilityReport> {
    let component_classes: Vec<MapClass> = f.maps().iter().map(|m| m.classify(CLASS_TOL)).collect();
    let loxodromic_components = component_classes.iter().all(|&c| c == MapClass::Loxodromic);

    let hyperbolicity = hyperbolicity_check(f, &config.hyperbolicity)?;
    let mut spiderweb = config.spiderweb;
    spiderweb.depth = spiderweb.depth.max(config.schottky_depth);
    let s = backward_arcs(f, &spiderweb)?;
    let alpha_sample = alpha_sample(&s, &hyperbolicity.census, config.alpha_budget)?;
    let alpha = alpha_expanding_check(
        f,
        &alpha_sample,
        config.alpha_n_max,
        config.hyperbolicity.periodic.boundary_tol,
    );
    let schottky = schottky_hypothesis_check(f, &s, config.schottky_depth)?;
    let wandering_suspected = hyperbolicity.wandering_suspected(&config.hyperbolicity);

    let sufficient_conditions_met =
        loxodromic_components && hyperbolicity.is_hyperbolic() && alpha.is_expanding() && schottky.pass;
    Ok(StabilityReport {
        component_classes,
        loxodromic_components,
        hyperbolicity,
        alpha_sample,
        alpha,
        schottky,
        wandering_suspected,
        census_max_len: config.hyperbolicity.periodic.max_len,
        sufficient_conditions_met,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::periodic::PeriodicConfig;
    use crate::presets;
    use crate::spiderweb::Window;
    use num_complex::Complex64;

    fn quick() -> StabilityConfig {
        StabilityConfig {
            hyperbolicity: HyperbolicityConfig {
                periodic: PeriodicConfig::with_max_len(4),
                seeds: 40,
                raster: Window::Sphere { size: 16 },
                ..Default::default()
            },
            ..Default::default()
        }
    }

    #[test]
    fn tent_meets_every_condition() {
        let f = presets::tent(Complex64::new(-0.5, 0.0), 1.0, Complex64::new(3.5, 0.0)).unwrap();
        let r = stability_report(&f, &quick()).unwrap();
        assert!(r.loxodromic_components);
        assert!(r.hyperbolicity.is_hyperbolic(), "{:?}", r.hyperbolicity.verdict);
        assert!(r.alpha.is_expanding(), "{:?}", r.alpha);
        assert!(r.schottky.pass);
        assert!(r.sufficient_conditions_met);
    }

    #[test]
    fn parabolic_pair_fails() {
        let f = presets::parabolic_pair().unwrap();
        let r = stability_report(&f, &quick()).unwrap();
        assert!(!r.loxodromic_components);
        assert!(!r.hyperbolicity.is_hyperbolic());
        assert!(!r.sufficient_conditions_met);
    }

    #[test]
    fn two_scalings_is_not_alpha_expanding() {
        let f = presets::two_scalings(Complex64::new(0.5, 0.0)).unwrap();
        let r = stability_report(&f, &quick()).unwrap();
        assert!(r.hyperbolicity.is_hyperbolic());
        assert_eq!(r.alpha, AlphaExpansion::Empty);
        assert!(!r.sufficient_conditions_met);
    }
}
