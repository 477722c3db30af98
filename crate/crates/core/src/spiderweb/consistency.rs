use super::arcs::SpiderwebApprox;
use super::raster::{Label, RasterImage};

/// Samples taken along each arc.
const ARC_SAMPLES: usize = 30;
/// A flagged pixel counts as explained within this many local diagonals.
const NEAR_DIAGONALS: f64 = 2.0;

/// Agreement between the exact arcs and a raster of the same PMT.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsistencyReport {
    pub boundary_pixels: usize,
    /// Flagged `BoundaryDepth(n)` pixels near an arc of level at most `n`.
    pub pixels_near_arcs: usize,
    pub pixel_fraction: f64,
    /// In-window samples on arcs the raster can see (level below `N`).
    pub arc_samples: usize,
    pub samples_on_boundary_pixels: usize,
    pub arc_fraction: f64,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    }
}

/// The raster flags depth `n` for steps `0..N`, so only arcs of level below
/// `N` are sampled.
pub fn consistency_check(s: &SpiderwebApprox, r: &RasterImage) -> ConsistencyReport {
    let window = &r.window;
    let (w, h) = window.dimensions();
    let mut boundary_pixels = 0;
    let mut pixels_near_arcs = 0;
    for row in 0..h {
        for col in 0..w {
            let Label::BoundaryDepth(n) = r.labels[row * w + col] else { continue };
            boundary_pixels += 1;
            let p = window.pixel_center(col, row);
            let reach = NEAR_DIAGONALS * window.pixel_diagonal(col, row);
            let near = s
                .levels()
                .iter()
                .take(n as usize + 1)
                .flatten()
                .any(|a| a.chordal_dist_to(p) <= reach);
            if near {
                pixels_near_arcs += 1;
            }
        }
    }

    let mut arc_samples = 0;
    let mut samples_on_boundary_pixels = 0;
    for arc in s.arcs().filter(|a| a.level < r.params.iterations) {
        for p in arc.samples(ARC_SAMPLES) {
            let cells = window.pixels_containing(p);
            if cells.is_empty() {
                continue;
            }
            arc_samples += 1;
            if cells
                .iter()
                .any(|&(col, row)| matches!(r.labels[row * w + col], Label::BoundaryDepth(_)))
            {
                samples_on_boundary_pixels += 1;
            }
        }
    }

    ConsistencyReport {
        boundary_pixels,
        pixels_near_arcs,
        pixel_fraction: ratio(pixels_near_arcs, boundary_pixels),
        arc_samples,
        samples_on_boundary_pixels,
        arc_fraction: ratio(samples_on_boundary_pixels, arc_samples),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::sphere::SpherePoint;
    use crate::spiderweb::{backward_arcs, raster_classify, RasterParams, SpiderwebConfig, Window};
    use num_complex::Complex64;

    #[test]
    fn two_scalings_agree_exactly() {
        let f = presets::two_scalings(Complex64::new(0.5, 0.0)).unwrap();
        let s = backward_arcs(&f, &SpiderwebConfig::with_depth(4)).unwrap();
        let attractors = [alloc::vec![SpherePoint::ZERO], alloc::vec![SpherePoint::Infinity]];
        let r = raster_classify(&f, Window::Sphere { size: 64 }, RasterParams::with_iterations(50), &attractors);
        let report = consistency_check(&s, &r);
        assert!(report.boundary_pixels > 0);
        assert_eq!(report.pixel_fraction, 1.0);
        assert_eq!(report.arc_fraction, 1.0);
    }
}
