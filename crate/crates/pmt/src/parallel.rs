//! Rayon drivers for the sequential core algorithms. Each returns exactly
//! what its sequential counterpart returns.

use pmt_core::analysis::{family_signature, ParameterGrid, SignatureConfig, SweepResult};
use pmt_core::pmt::Pmt;
use pmt_core::presets::Preset;
use pmt_core::sphere::SpherePoint;
use pmt_core::spiderweb::{
    arc_preimages, backward_arcs_with, Classifier, RasterImage, RasterParams, SpiderwebApprox,
    SpiderwebConfig, Window,
};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest raster accepted, in pixels.
pub const MAX_PIXELS: usize = 1 << 26;

/// Rows are classified in parallel.
pub fn raster(f: &Pmt, window: Window, params: RasterParams, attractors: &[Vec<SpherePoint>]) -> Result<RasterImage> {
    let (w, h) = window.dimensions();
    if w.checked_mul(h).is_none_or(|n| n > MAX_PIXELS) {
        return Err(Error::Resource(format!("{w}×{h} raster exceeds {MAX_PIXELS} pixels")));
    }
    let classifier = Classifier::new(f, attractors, params);
    let labels = (0..h)
        .into_par_iter()
        .flat_map_iter(|row| {
            let classifier = &classifier;
            (0..w).map(move |col| classifier.pixel(&window, col, row))
        })
        .collect();
    Ok(RasterImage { window, params, labels })
}

/// Preimages of each level are pulled back in parallel.
pub fn spiderweb(f: &Pmt, config: &SpiderwebConfig) -> Result<SpiderwebApprox> {
    Ok(backward_arcs_with(f, config, |arcs, k| {
        arcs.par_iter().map(|a| arc_preimages(f, a, k, config)).collect()
    })?)
}

/// Grid cells are evaluated in parallel; cells are reassembled in row-major
/// order.
pub fn sweep(family: &Preset, grid: ParameterGrid, config: &SignatureConfig) -> Result<SweepResult> {
    if family.parameter().is_none() {
        return Err(Error::Config(format!("preset {} has no parameter to sweep", family.name())));
    }
    let signatures = (0..grid.len())
        .into_par_iter()
        .map(|idx| family_signature(family, grid.at(idx), config))
        .collect::<pmt_core::Result<Vec<_>>>()?;
    Ok(SweepResult::from_cells(grid, signatures))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pmt_core::analysis::parameter_sweep;
    use pmt_core::presets;
    use pmt_core::spiderweb::{backward_arcs, raster_classify};
    use pmt_core::Complex64;

    #[test]
    fn parallel_matches_sequential() {
        let f = presets::tent(Complex64::new(-0.5, 0.0), 1.0, Complex64::new(3.5, 0.0)).unwrap();
        let config = SpiderwebConfig::with_depth(6);
        assert_eq!(spiderweb(&f, &config).unwrap(), backward_arcs(&f, &config).unwrap());

        let attractors = [vec![SpherePoint::Infinity]];
        let window = Window::Sphere { size: 24 };
        let params = RasterParams::with_iterations(30);
        assert_eq!(raster(&f, window, params, &attractors).unwrap(), raster_classify(&f, window, params, &attractors));

        let family = Preset::named("hiper_no_ss").unwrap();
        let grid = ParameterGrid { re: [0.45, 0.55], im: [-0.28, -0.17], nx: 3, ny: 3 };
        let sc = SignatureConfig::default();
        assert_eq!(sweep(&family, grid, &sc).unwrap(), parameter_sweep(&family, grid, &sc).unwrap());
    }

    #[test]
    fn oversized_raster_is_a_resource_error() {
        let f = presets::ghost().unwrap();
        let err = raster(&f, Window::Sphere { size: 1 << 14 }, RasterParams::default(), &[]).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
