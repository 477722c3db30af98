//! Named example PMTs.
//!
//! Every preset has two regions: region 0 is the open disk of a circle and
//! region 1 the open exterior.

use alloc::format;
use alloc::string::String;
use alloc::vec;

use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::circline::{Circline, Side};
use crate::moebius::MoebiusMap;
use crate::partition::{Partition, Region};
use crate::pmt::Pmt;
use crate::{Error, Result};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn map(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> Result<MoebiusMap> {
    MoebiusMap::new(a, b, cc, d)
}

/// Disk `|z - center| < radius` carrying `inside`, its exterior carrying `outside`.
pub fn disk_pair(
    center: Complex64,
    radius: f64,
    inside: MoebiusMap,
    outside: MoebiusMap,
) -> Result<Pmt> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::BadParameter(format!("radius must be positive, got {radius}")));
    }
    let circle = Circline::circle(center, radius)?;
    let partition = Partition::new(vec![
        Region::with_witness(vec![(circle, Side::Inside)], center.into())?,
        Region::with_witness(vec![(circle, Side::Outside)], crate::sphere::SpherePoint::Infinity)?,
    ])?;
    Pmt::new(partition, vec![inside, outside])
}

fn unit_disk_lambda(lambda: Complex64, what: &str) -> Result<()> {
    let r = lambda.norm();
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::BadParameter(format!("{what} needs 0 < |λ| < 1, got λ = {lambda}")));
    }
    Ok(())
}

/// `λz` on the unit disk, `z/λ` outside; `0 < |λ| < 1`.
pub fn two_scalings(lambda: Complex64) -> Result<Pmt> {
    unit_disk_lambda(lambda, "two_scalings")?;
    let zero = c(0.0, 0.0);
    disk_pair(
        zero,
        1.0,
        map(lambda, zero, zero, c(1.0, 0.0))?,
        map(c(1.0, 0.0), zero, zero, lambda)?,
    )
}

/// `z + 2` on the unit disk, `2z` outside.
pub fn translation_scaling() -> Result<Pmt> {
    let zero = c(0.0, 0.0);
    disk_pair(
        zero,
        1.0,
        map(c(1.0, 0.0), c(2.0, 0.0), zero, c(1.0, 0.0))?,
        map(c(2.0, 0.0), zero, zero, c(1.0, 0.0))?,
    )
}

/// `z/2` on `|z - 1| < 1`, `2z` outside. The attracting fixed point 0 of the
/// first branch sits on the boundary.
pub fn ghost() -> Result<Pmt> {
    let zero = c(0.0, 0.0);
    disk_pair(
        c(1.0, 0.0),
        1.0,
        map(c(1.0, 0.0), zero, zero, c(2.0, 0.0))?,
        map(c(2.0, 0.0), zero, zero, c(1.0, 0.0))?,
    )
}

/// `λz + λ` on `|z - 1| < 1`, `(6iλz - 1)/(z + 6iλ)` outside; `0 < |λ| < 1`.
pub fn hiper_no_ss(lambda: Complex64) -> Result<Pmt> {
    unit_disk_lambda(lambda, "hiper_no_ss")?;
    let six_i_lambda = c(0.0, 6.0) * lambda;
    disk_pair(
        c(1.0, 0.0),
        1.0,
        map(lambda, lambda, c(0.0, 0.0), c(1.0, 0.0))?,
        map(six_i_lambda, c(-1.0, 0.0), c(1.0, 0.0), six_i_lambda)?,
    )
}

/// The rotation `ωz` (`ω = e^{2πi/3}`) on `|z| < 1/2`, `λ(1 - z)` outside
/// with `λ = (10/9)ω`.
pub fn expand_no_hyper() -> Result<Pmt> {
    let omega = Complex64::from_polar(1.0, TAU / 3.0);
    let lambda = omega * (10.0 / 9.0);
    let zero = c(0.0, 0.0);
    disk_pair(
        zero,
        0.5,
        map(omega, zero, zero, c(1.0, 0.0))?,
        map(-lambda, lambda, zero, c(1.0, 0.0))?,
    )
}

/// `2z` on the unit disk, `2z/3` outside.
pub fn irrational_annulus() -> Result<Pmt> {
    let zero = c(0.0, 0.0);
    disk_pair(
        zero,
        1.0,
        map(c(2.0, 0.0), zero, zero, c(1.0, 0.0))?,
        map(c(2.0, 0.0), zero, zero, c(3.0, 0.0))?,
    )
}

/// `((1+i)z + c)/(-cz + 1-i)` on `|z| < 2/5`, `((1+i)z - c)/(cz + 1-i)`
/// outside.
pub fn perturbed_pair(cc: Complex64) -> Result<Pmt> {
    let (p, q) = (c(1.0, 1.0), c(1.0, -1.0));
    disk_pair(c(0.0, 0.0), 0.4, map(p, cc, -cc, q)?, map(p, -cc, cc, q)?)
}

/// [`perturbed_pair`] at `c = i`: both branches are parabolic.
pub fn parabolic_pair() -> Result<Pmt> {
    perturbed_pair(c(0.0, 1.0))
}

/// Base first branch, second branch `((0.8+i)z - i)/(iz + 1-i)`.
pub fn perturbed_pair_scaled() -> Result<Pmt> {
    let (p, q, i) = (c(1.0, 1.0), c(1.0, -1.0), c(0.0, 1.0));
    disk_pair(c(0.0, 0.0), 0.4, map(p, i, -i, q)?, map(c(0.8, 1.0), -i, i, q)?)
}

/// Base first branch, second branch `((1.1+i)z + 0.1-i)/((-0.1+i)z + 0.9-i)`.
pub fn perturbed_pair_shifted() -> Result<Pmt> {
    let (p, q, i) = (c(1.0, 1.0), c(1.0, -1.0), c(0.0, 1.0));
    disk_pair(
        c(0.0, 0.0),
        0.4,
        map(p, i, -i, q)?,
        map(c(1.1, 1.0), c(0.1, -1.0), c(-0.1, 1.0), c(0.9, -1.0))?,
    )
}

/// Complex tent map: `λz` on `|z - center| < radius`, `λ - λz` outside. The
/// circle must pass through 1/2, where the two branches agree.
pub fn tent(center: Complex64, radius: f64, lambda: Complex64) -> Result<Pmt> {
    let miss = ((c(0.5, 0.0) - center).norm() - radius).abs();
    if !(miss <= 1e-12) {
        return Err(Error::BadParameter(format!(
            "tent boundary must pass through 1/2 (off by {miss:e})"
        )));
    }
    if lambda.norm() == 0.0 {
        return Err(Error::BadParameter("tent needs λ ≠ 0".into()));
    }
    let zero = c(0.0, 0.0);
    disk_pair(
        center,
        radius,
        map(lambda, zero, zero, c(1.0, 0.0))?,
        map(-lambda, lambda, zero, c(1.0, 0.0))?,
    )
}

/// A preset with its parameters, for configuration files and sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preset {
    TwoScalings { lambda: Complex64 },
    TranslationScaling,
    Ghost,
    HiperNoSs { lambda: Complex64 },
    ExpandNoHyper,
    IrrationalAnnulus,
    PerturbedPair { c: Complex64 },
    ParabolicPair,
    PerturbedPairScaled,
    PerturbedPairShifted,
    Tent { center: Complex64, radius: f64, lambda: Complex64 },
}

impl Preset {
    /// Every preset name, with the default parameters used by [`Preset::named`].
    pub const NAMES: [&'static str; 11] = [
        "two_scalings",
        "translation_scaling",
        "ghost",
        "hiper_no_ss",
        "expand_no_hyper",
        "irrational_annulus",
        "perturbed_pair",
        "parabolic_pair",
        "perturbed_pair_scaled",
        "perturbed_pair_shifted",
        "tent",
    ];

    /// The preset called `name` at its default parameters (λ = 1/2,
    /// c = 0.99 + 0.01i, tent on `|z + 1/2| < 1` with λ = 7/2).
    pub fn named(name: &str) -> Option<Preset> {
        Some(match name {
            "two_scalings" => Preset::TwoScalings { lambda: c(0.5, 0.0) },
            "translation_scaling" => Preset::TranslationScaling,
            "ghost" => Preset::Ghost,
            "hiper_no_ss" => Preset::HiperNoSs { lambda: c(0.5, 0.0) },
            "expand_no_hyper" => Preset::ExpandNoHyper,
            "irrational_annulus" => Preset::IrrationalAnnulus,
            "perturbed_pair" => Preset::PerturbedPair { c: c(0.99, 0.01) },
            "parabolic_pair" => Preset::ParabolicPair,
            "perturbed_pair_scaled" => Preset::PerturbedPairScaled,
            "perturbed_pair_shifted" => Preset::PerturbedPairShifted,
            "tent" => Preset::Tent { center: c(-0.5, 0.0), radius: 1.0, lambda: c(3.5, 0.0) },
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::TwoScalings { .. } => "two_scalings",
            Preset::TranslationScaling => "translation_scaling",
            Preset::Ghost => "ghost",
            Preset::HiperNoSs { .. } => "hiper_no_ss",
            Preset::ExpandNoHyper => "expand_no_hyper",
            Preset::IrrationalAnnulus => "irrational_annulus",
            Preset::PerturbedPair { .. } => "perturbed_pair",
            Preset::ParabolicPair => "parabolic_pair",
            Preset::PerturbedPairScaled => "perturbed_pair_scaled",
            Preset::PerturbedPairShifted => "perturbed_pair_shifted",
            Preset::Tent { .. } => "tent",
        }
    }

    /// The complex parameter a sweep varies, if the preset has one.
    pub fn parameter(&self) -> Option<Complex64> {
        match *self {
            Preset::TwoScalings { lambda } | Preset::HiperNoSs { lambda } | Preset::Tent { lambda, .. } => {
                Some(lambda)
            }
            Preset::PerturbedPair { c } => Some(c),
            _ => None,
        }
    }

    /// The same preset with its sweep parameter replaced.
    pub fn with_parameter(&self, value: Complex64) -> Result<Preset> {
        Ok(match *self {
            Preset::TwoScalings { .. } => Preset::TwoScalings { lambda: value },
            Preset::HiperNoSs { .. } => Preset::HiperNoSs { lambda: value },
            Preset::Tent { center, radius, .. } => Preset::Tent { center, radius, lambda: value },
            Preset::PerturbedPair { .. } => Preset::PerturbedPair { c: value },
            other => {
                return Err(Error::BadParameter(format!("preset {} has no parameter", other.name())))
            }
        })
    }

    pub fn build(&self) -> Result<Pmt> {
        match *self {
            Preset::TwoScalings { lambda } => two_scalings(lambda),
            Preset::TranslationScaling => translation_scaling(),
            Preset::Ghost => ghost(),
            Preset::HiperNoSs { lambda } => hiper_no_ss(lambda),
            Preset::ExpandNoHyper => expand_no_hyper(),
            Preset::IrrationalAnnulus => irrational_annulus(),
            Preset::PerturbedPair { c } => perturbed_pair(c),
            Preset::ParabolicPair => parabolic_pair(),
            Preset::PerturbedPairScaled => perturbed_pair_scaled(),
            Preset::PerturbedPairShifted => perturbed_pair_shifted(),
            Preset::Tent { center, radius, lambda } => tent(center, radius, lambda),
        }
    }

    /// One-line description with parameters.
    pub fn describe(&self) -> String {
        match *self {
            Preset::TwoScalings { lambda } => format!("two_scalings(λ = {lambda}): λz on |z|<1, z/λ outside"),
            Preset::TranslationScaling => "translation_scaling: z+2 on |z|<1, 2z outside".into(),
            Preset::Ghost => "ghost: z/2 on |z-1|<1, 2z outside".into(),
            Preset::HiperNoSs { lambda } => {
                format!("hiper_no_ss(λ = {lambda}): λz+λ on |z-1|<1, (6iλz-1)/(z+6iλ) outside")
            }
            Preset::ExpandNoHyper => {
                "expand_no_hyper: e^(2πi/3)z on |z|<1/2, (10/9)e^(2πi/3)(1-z) outside".into()
            }
            Preset::IrrationalAnnulus => "irrational_annulus: 2z on |z|<1, 2z/3 outside".into(),
            Preset::PerturbedPair { c } => {
                format!("perturbed_pair(c = {c}): ((1+i)z+c)/(-cz+1-i) on |z|<2/5, ((1+i)z-c)/(cz+1-i) outside")
            }
            Preset::ParabolicPair => "parabolic_pair: perturbed_pair at c = i".into(),
            Preset::PerturbedPairScaled => {
                "perturbed_pair_scaled: base first branch, ((0.8+i)z-i)/(iz+1-i) outside".into()
            }
            Preset::PerturbedPairShifted => {
                "perturbed_pair_shifted: base first branch, ((1.1+i)z+0.1-i)/((-0.1+i)z+0.9-i) outside".into()
            }
            Preset::Tent { center, radius, lambda } => {
                format!("tent(center = {center}, radius = {radius}, λ = {lambda}): λz inside, λ-λz outside")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::MapClass;
    use crate::partition::BOUNDARY_TOL;
    use crate::sphere::SpherePoint;

    #[test]
    fn every_preset_validates() {
        for name in Preset::NAMES {
            let f = Preset::named(name).unwrap().build().unwrap();
            let report = f.partition().validate(100_000, 11);
            assert!(report.is_valid(), "{name}: {report:?}");
            assert_eq!(f.partition().boundary_components().len(), 1, "{name}");
        }
    }

    #[test]
    fn two_scalings_literal_maps() {
        let f = two_scalings(c(0.5, 0.0)).unwrap();
        let half = MoebiusMap::scaling(c(0.5, 0.0)).unwrap();
        assert!(f.map(0).distance_to(&half) < 1e-15);
        assert!(f.map(1).distance_to(&half.inverse()) < 1e-15);
        assert!(f.partition().boundary_components()[0].same_set(&Circline::unit_circle(), 1e-15));
    }

    #[test]
    fn tent_region_and_assertion() {
        let f = tent(c(-0.5, 0.0), 1.0, c(3.5, 0.0)).unwrap();
        let k = f.partition().boundary_components()[0];
        let (center, r) = k.euclidean_circle().unwrap();
        assert!((center - c(-0.5, 0.0)).norm() < 1e-15 && (r - 1.0).abs() < 1e-15);
        assert_eq!(
            f.partition().locate(SpherePoint::new(-0.5, 0.0), BOUNDARY_TOL),
            Ok(crate::partition::Location::Region(0))
        );
        assert!(matches!(tent(c(0.0, 0.0), 1.0, c(3.5, 0.0)), Err(Error::BadParameter(_))));
    }

    #[test]
    fn expand_no_hyper_literal() {
        let f = expand_no_hyper().unwrap();
        let (_, r) = f.partition().boundary_components()[0].euclidean_circle().unwrap();
        assert!((r - 0.5).abs() < 1e-15);
        let omega = Complex64::from_polar(1.0, TAU / 3.0);
        let y = f.apply(SpherePoint::new(0.1, 0.0), BOUNDARY_TOL).unwrap();
        assert!(y.chordal_dist(SpherePoint::finite(omega * 0.1)) < 1e-15);
        assert_eq!(f.map(0).classify(1e-9), MapClass::Elliptic);
    }

    #[test]
    fn parabolic_pair_branches_are_parabolic() {
        let f = parabolic_pair().unwrap();
        assert_eq!(f.map(0).classify(1e-9), MapClass::Parabolic);
        assert_eq!(f.map(1).classify(1e-9), MapClass::Parabolic);
        let g = perturbed_pair(c(0.99, 0.01)).unwrap();
        assert_eq!(g.map(0).classify(1e-9), MapClass::Loxodromic);
        assert_eq!(g.map(1).classify(1e-9), MapClass::Loxodromic);
    }

    #[test]
    fn parameter_domains() {
        assert!(two_scalings(c(0.0, 0.0)).is_err());
        assert!(two_scalings(c(1.5, 0.0)).is_err());
        assert!(hiper_no_ss(c(0.0, 0.0)).is_err());
        let p = Preset::named("hiper_no_ss").unwrap().with_parameter(c(0.5, -0.2)).unwrap();
        assert_eq!(p.parameter(), Some(c(0.5, -0.2)));
        assert!(Preset::Ghost.with_parameter(c(1.0, 0.0)).is_err());
        assert!(Preset::named("nope").is_none());
    }
}
