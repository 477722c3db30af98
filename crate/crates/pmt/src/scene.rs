//! Scene files: a PMT plus the settings of every command, in TOML.
//!
//! Complex numbers are `[re, im]` pairs. Points may also be the string
//! `"infinity"`. A scene names either a preset (with optional parameter
//! overrides) or lists regions explicitly:
//!
//! ```toml
//! [pmt]
//! preset = "tent"
//! lambda = [3.5, 0.0]
//!
//! [render]
//! window = "plane"
//! center = [0.0, 0.0]
//! half_width = 2.0
//! pixels = 400
//! ```
//!
//! ```toml
//! [[pmt.regions]]
//! map = [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [2.0, 0.0]]
//! witness = [1.0, 0.0]
//! constraints = [{ a = 1.0, b = [-1.0, 0.0], d = 0.0, side = "inside" }]
//! ```
//!
//! A constraint `{a, b, d, side}` is the circline `a|z|² + 2Re(b z̄) + d = 0`;
//! `inside` is where the form is negative. Unknown keys are errors.

use std::path::Path;

use pmt_core::analysis::{HyperbolicityConfig, PeriodicConfig, StabilityConfig};
use pmt_core::circline::{Circline, Side};
use pmt_core::moebius::MoebiusMap;
use pmt_core::partition::{Partition, Region, BOUNDARY_TOL};
use pmt_core::pmt::{Pmt, CONVERGENCE_TOL};
use pmt_core::presets::Preset;
use pmt_core::sphere::SpherePoint;
use pmt_core::spiderweb::{RasterParams, SpiderwebConfig, Window};
use pmt_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Samples used to validate explicit partitions on load.
const VALIDATION_SAMPLES: usize = 20_000;

type Pair = [f64; 2];

fn complex(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Finite(Pair),
    Named(String),
}

impl PointSpec {
    pub fn to_point(&self) -> Result<SpherePoint> {
        match self {
            PointSpec::Finite(p) => Ok(SpherePoint::finite(complex(*p))),
            PointSpec::Named(s) if s == "infinity" => Ok(SpherePoint::Infinity),
            PointSpec::Named(s) => Err(Error::Config(format!("unknown point {s:?}"))),
        }
    }

    pub fn from_point(p: SpherePoint) -> Self {
        match p.as_complex() {
            Some(z) => PointSpec::Finite(pair(z)),
            None => PointSpec::Named("infinity".into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideSpec {
    Inside,
    Outside,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    pub a: f64,
    pub b: Pair,
    pub d: f64,
    pub side: SideSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionSpec {
    /// Coefficients `a, b, c, d` of `(az + b)/(cz + d)`.
    pub map: [Pair; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<PointSpec>,
    pub constraints: Vec<ConstraintSpec>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PmtSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub regions: Vec<RegionSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowKind {
    Sphere,
    Plane,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RenderSpec {
    pub window: WindowKind,
    /// Square side in pixels (per chart for the sphere window).
    pub pixels: usize,
    pub center: Pair,
    pub half_width: f64,
    pub iterations: usize,
    /// Boundary threshold in local pixel diagonals.
    pub eps_pixels: f64,
    pub tol_conv: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            window: WindowKind::Plane,
            pixels: 400,
            center: [0.0, 0.0],
            half_width: 2.0,
            iterations: 100,
            eps_pixels: 1.5,
            tol_conv: CONVERGENCE_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpiderwebSpec {
    pub depth: usize,
    pub min_arc_chordal: f64,
    pub max_arcs: usize,
}

impl Default for SpiderwebSpec {
    fn default() -> Self {
        let d = SpiderwebConfig::default();
        SpiderwebSpec { depth: d.depth, min_arc_chordal: d.min_arc_chordal, max_arcs: d.max_arcs }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnalysisSpec {
    pub max_len: usize,
    pub seeds: usize,
    pub seed: u64,
    pub orbit_len: usize,
    pub raster_size: usize,
    pub raster_iterations: usize,
    pub alpha_budget: usize,
    pub alpha_n_max: usize,
    pub schottky_depth: usize,
}

impl Default for AnalysisSpec {
    fn default() -> Self {
        let s = StabilityConfig::default();
        let h = s.hyperbolicity;
        let Window::Sphere { size } = h.raster else { unreachable!("default raster is a sphere") };
        AnalysisSpec {
            max_len: h.periodic.max_len,
            seeds: h.seeds,
            seed: h.rng_seed,
            orbit_len: h.orbit_len,
            raster_size: size,
            raster_iterations: h.raster_params.iterations,
            alpha_budget: s.alpha_budget,
            alpha_n_max: s.alpha_n_max,
            schottky_depth: s.schottky_depth,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ToleranceSpec {
    pub boundary: f64,
    pub dedup: f64,
    pub neutral: f64,
}

impl Default for ToleranceSpec {
    fn default() -> Self {
        let p = PeriodicConfig::default();
        ToleranceSpec { boundary: BOUNDARY_TOL, dedup: p.dedup_tol, neutral: p.neutral_tol }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSpec {
    pub re: Pair,
    pub im: Pair,
    pub nx: usize,
    pub ny: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec { re: [0.45, 0.55], im: [-0.28, -0.17], nx: 40, ny: 40 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub pmt: PmtSpec,
    #[serde(default)]
    pub render: RenderSpec,
    #[serde(default)]
    pub spiderweb: SpiderwebSpec,
    #[serde(default)]
    pub analysis: AnalysisSpec,
    #[serde(default)]
    pub tolerances: ToleranceSpec,
    #[serde(default)]
    pub sweep: SweepSpec,
}

impl Scene {
    pub fn parse(text: &str, origin: &str) -> Result<Scene> {
        toml::from_str(text).map_err(|source| Error::Scene { path: origin.into(), source })
    }

    /// Reads a scene file, or builds a default scene for `preset:NAME`.
    pub fn load(arg: &str) -> Result<Scene> {
        if let Some(name) = arg.strip_prefix("preset:") {
            return Scene::for_preset(name);
        }
        let text = std::fs::read_to_string(Path::new(arg)).map_err(|e| Error::io(arg, e))?;
        Scene::parse(&text, arg)
    }

    pub fn for_preset(name: &str) -> Result<Scene> {
        if Preset::named(name).is_none() {
            return Err(Error::Config(format!(
                "unknown preset {name:?} (known: {})",
                Preset::NAMES.join(", ")
            )));
        }
        Ok(Scene { pmt: PmtSpec { preset: Some(name.into()), ..Default::default() }, ..Default::default() })
    }

    /// Scene with `f` written out region by region.
    pub fn explicit(f: &Pmt) -> Scene {
        let partition = f.partition();
        let regions = partition
            .regions()
            .iter()
            .zip(f.maps())
            .map(|(region, map)| RegionSpec {
                map: map.coefficients().map(pair),
                witness: Some(PointSpec::from_point(region.witness())),
                constraints: region
                    .constraints()
                    .iter()
                    .map(|(circle, side)| {
                        let (a, b, d) = circle.coefficients();
                        let side = match side {
                            Side::Outside => SideSpec::Outside,
                            _ => SideSpec::Inside,
                        };
                        ConstraintSpec { a, b: pair(b), d, side }
                    })
                    .collect(),
            })
            .collect();
        Scene { pmt: PmtSpec { regions, ..Default::default() }, ..Default::default() }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenes serialize")
    }

    /// The preset this scene names, with overrides applied.
    pub fn preset(&self) -> Result<Option<Preset>> {
        let spec = &self.pmt;
        let Some(name) = &spec.preset else {
            if spec.lambda.is_some() || spec.c.is_some() || spec.center.is_some() || spec.radius.is_some() {
                return Err(Error::Config("preset parameters given without a preset".into()));
            }
            return Ok(None);
        };
        if !spec.regions.is_empty() {
            return Err(Error::Config("give either a preset or explicit regions, not both".into()));
        }
        let mut preset = Scene::for_preset(name).map(|_| Preset::named(name).expect("checked"))?;
        let param = match (spec.lambda, spec.c) {
            (Some(_), Some(_)) => return Err(Error::Config("both lambda and c given".into())),
            (Some(l), None) => Some(("lambda", l)),
            (None, Some(c)) => Some(("c", c)),
            (None, None) => None,
        };
        if let Some((key, value)) = param {
            let expected = if matches!(preset, Preset::PerturbedPair { .. }) { "c" } else { "lambda" };
            if key != expected || preset.parameter().is_none() {
                return Err(Error::Config(format!("preset {name} does not take {key}")));
            }
            preset = preset.with_parameter(complex(value))?;
        }
        if spec.center.is_some() || spec.radius.is_some() {
            let Preset::Tent { center, radius, lambda } = preset else {
                return Err(Error::Config(format!("only tent takes center and radius, not {name}")));
            };
            preset = Preset::Tent {
                center: spec.center.map_or(center, complex),
                radius: spec.radius.unwrap_or(radius),
                lambda,
            };
        }
        Ok(Some(preset))
    }

    /// Builds the PMT; explicit partitions are validated by sampling.
    pub fn build(&self) -> Result<Pmt> {
        if let Some(preset) = self.preset()? {
            return Ok(preset.build()?);
        }
        if self.pmt.regions.is_empty() {
            return Err(Error::Config("scene has neither a preset nor regions".into()));
        }
        let mut regions = Vec::with_capacity(self.pmt.regions.len());
        let mut maps = Vec::with_capacity(self.pmt.regions.len());
        for spec in &self.pmt.regions {
            let constraints = spec
                .constraints
                .iter()
                .map(|c| {
                    let side = match c.side {
                        SideSpec::Inside => Side::Inside,
                        SideSpec::Outside => Side::Outside,
                    };
                    Ok((Circline::new(c.a, complex(c.b), c.d)?, side))
                })
                .collect::<Result<Vec<_>>>()?;
            regions.push(match &spec.witness {
                Some(w) => Region::with_witness(constraints, w.to_point()?)?,
                None => Region::new(constraints)?,
            });
            let [a, b, c, d] = spec.map.map(complex);
            maps.push(MoebiusMap::new(a, b, c, d)?);
        }
        let partition = Partition::new(regions)?;
        let report = partition.validate(VALIDATION_SAMPLES, self.analysis.seed);
        if !report.is_valid() {
            return Err(Error::Config(format!(
                "partition is not a partition: {} disjointness and {} covering violations, {} bad witnesses",
                report.disjointness_violations, report.covering_violations, report.witness_failures.len()
            )));
        }
        Ok(Pmt::new(partition, maps)?)
    }

    pub fn spiderweb_config(&self) -> SpiderwebConfig {
        SpiderwebConfig {
            depth: self.spiderweb.depth,
            min_arc_chordal: self.spiderweb.min_arc_chordal,
            max_arcs: self.spiderweb.max_arcs,
            boundary_tol: self.tolerances.boundary,
            ..SpiderwebConfig::default()
        }
    }

    pub fn window(&self) -> Window {
        let r = &self.render;
        match r.window {
            WindowKind::Sphere => Window::Sphere { size: r.pixels },
            WindowKind::Plane => Window::square(complex(r.center), r.half_width, r.pixels),
        }
    }

    pub fn raster_params(&self) -> RasterParams {
        RasterParams {
            iterations: self.render.iterations,
            boundary_eps_pixels: self.render.eps_pixels,
            boundary_eps: None,
            tol_conv: self.render.tol_conv,
            tol_b: self.tolerances.boundary,
        }
    }

    pub fn periodic_config(&self) -> PeriodicConfig {
        PeriodicConfig {
            max_len: self.analysis.max_len,
            dedup_tol: self.tolerances.dedup,
            neutral_tol: self.tolerances.neutral,
            boundary_tol: self.tolerances.boundary,
            ..PeriodicConfig::default()
        }
    }

    pub fn stability_config(&self) -> StabilityConfig {
        let a = &self.analysis;
        let defaults = HyperbolicityConfig::default();
        StabilityConfig {
            hyperbolicity: HyperbolicityConfig {
                periodic: self.periodic_config(),
                seeds: a.seeds,
                rng_seed: a.seed,
                orbit_len: a.orbit_len,
                raster: Window::Sphere { size: a.raster_size },
                raster_params: RasterParams {
                    iterations: a.raster_iterations,
                    tol_b: self.tolerances.boundary,
                    ..defaults.raster_params
                },
                ..defaults
            },
            spiderweb: self.spiderweb_config(),
            schottky_depth: a.schottky_depth,
            alpha_budget: a.alpha_budget,
            alpha_n_max: a.alpha_n_max,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_overrides() {
        let s = Scene::parse("[pmt]\npreset = \"tent\"\nlambda = [2.0, 2.0]\n", "t").unwrap();
        match s.preset().unwrap().unwrap() {
            Preset::Tent { lambda, .. } => assert_eq!(lambda, Complex64::new(2.0, 2.0)),
            p => panic!("{p:?}"),
        }
        let bad = Scene::parse("[pmt]\npreset = \"ghost\"\nlambda = [2.0, 2.0]\n", "t").unwrap();
        assert!(matches!(bad.build(), Err(Error::Config(_))));
        let c = Scene::parse("[pmt]\npreset = \"perturbed_pair\"\nc = [0.0, 1.02]\n", "t").unwrap();
        assert!(c.build().is_ok());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        for text in [
            "[pmt]\npreset = \"ghost\"\ncolour = 1\n",
            "[pmt]\npreset = \"ghost\"\n[render]\nzoom = 2\n",
            "[pmt]\npreset = \"ghost\"\n[extra]\n",
        ] {
            assert!(matches!(Scene::parse(text, "t"), Err(Error::Scene { .. })), "{text}");
        }
    }

    #[test]
    fn overlapping_regions_are_rejected() {
        let text = r#"
            [[pmt.regions]]
            map = [[2.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]
            constraints = [{ a = 1.0, b = [0.0, 0.0], d = -1.0, side = "inside" }]
            [[pmt.regions]]
            map = [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [3.0, 0.0]]
            constraints = [{ a = 1.0, b = [0.0, 0.0], d = -4.0, side = "inside" }]
        "#;
        let s = Scene::parse(text, "t").unwrap();
        assert!(matches!(s.build(), Err(Error::Config(_))));
    }
}
