//! Pixel classification by forward iteration.
//!
//! A pixel center `p` is iterated up to `N` times. Before step `n` the
//! distance from `Fⁿ(p)` to the boundary is divided by the spherical
//! derivative of `Fⁿ` at `p`; when that estimate of the distance from `p` to
//! the level-`n` preimage of the boundary drops below `εB`, the pixel is
//! `BoundaryDepth(n)`. Otherwise an iterate within `tol_conv` of a catalogued
//! attracting cycle labels it `Basin(id)`. Pixels that survive all `N` steps
//! are `Unresolved`; with `N = 0` every pixel is.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::circline::SphereCircle;
use crate::partition::{Location, BOUNDARY_TOL};
use crate::pmt::{Pmt, CONVERGENCE_TOL};
use crate::sphere::SpherePoint;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Window {
    /// `[re_min, re_max] × [im_min, im_max]`, row 0 at the top.
    Plane { re_min: f64, re_max: f64, im_min: f64, im_max: f64, width: usize, height: usize },
    /// Two `size × size` charts side by side: `z` on `[-1, 1]²` on the left
    /// and `w = 1/z` on `[-1, 1]²` on the right.
    Sphere { size: usize },
}

impl Window {
    /// Centered square plane window.
    pub fn square(center: Complex64, half_width: f64, pixels: usize) -> Window {
        Window::Plane {
            re_min: center.re - half_width,
            re_max: center.re + half_width,
            im_min: center.im - half_width,
            im_max: center.im + half_width,
            width: pixels,
            height: pixels,
        }
    }

    /// `(width, height)` in pixels.
    pub fn dimensions(&self) -> (usize, usize) {
        match *self {
            Window::Plane { width, height, .. } => (width, height),
            Window::Sphere { size } => (2 * size, size),
        }
    }

    pub fn pixel_count(&self) -> usize {
        let (w, h) = self.dimensions();
        w * h
    }

    fn steps(&self) -> (f64, f64) {
        match *self {
            Window::Plane { re_min, re_max, im_min, im_max, width, height } => {
                ((re_max - re_min) / width as f64, (im_max - im_min) / height as f64)
            }
            Window::Sphere { size } => (2.0 / size as f64, 2.0 / size as f64),
        }
    }

    /// Chart coordinate of the pixel center and whether the chart is `1/z`.
    fn chart_center(&self, col: usize, row: usize) -> (Complex64, bool) {
        let (dx, dy) = self.steps();
        match *self {
            Window::Plane { re_min, im_max, .. } => (
                Complex64::new(re_min + (col as f64 + 0.5) * dx, im_max - (row as f64 + 0.5) * dy),
                false,
            ),
            Window::Sphere { size } => {
                let (c, inverted) = if col < size { (col, false) } else { (col - size, true) };
                (Complex64::new(-1.0 + (c as f64 + 0.5) * dx, 1.0 - (row as f64 + 0.5) * dy), inverted)
            }
        }
    }

    pub fn pixel_center(&self, col: usize, row: usize) -> SpherePoint {
        let (c, inverted) = self.chart_center(col, row);
        if !inverted {
            SpherePoint::Finite(c)
        } else if c.re == 0.0 && c.im == 0.0 {
            SpherePoint::Infinity
        } else {
            SpherePoint::finite(c.inv())
        }
    }

    /// Chordal length of the pixel diagonal at its center.
    pub fn pixel_diagonal(&self, col: usize, row: usize) -> f64 {
        let (dx, dy) = self.steps();
        let (c, _) = self.chart_center(col, row);
        2.0 * (dx * dx + dy * dy).sqrt() / (1.0 + c.norm_sqr())
    }

    /// Pixels whose square contains `p`: at most one per chart.
    pub fn pixels_containing(&self, p: SpherePoint) -> Vec<(usize, usize)> {
        let (dx, dy) = self.steps();
        let cell = |c: Complex64, x0: f64, y1: f64, w: usize, h: usize| {
            let i = ((c.re - x0) / dx).floor();
            let j = ((y1 - c.im) / dy).floor();
            if i >= 0.0 && j >= 0.0 && (i as usize) < w && (j as usize) < h {
                Some((i as usize, j as usize))
            } else {
                None
            }
        };
        let mut out = Vec::new();
        match *self {
            Window::Plane { re_min, im_max, width, height, .. } => {
                if let SpherePoint::Finite(z) = p {
                    out.extend(cell(z, re_min, im_max, width, height));
                }
            }
            Window::Sphere { size } => {
                if let SpherePoint::Finite(z) = p {
                    out.extend(cell(z, -1.0, 1.0, size, size));
                }
                let w = match p {
                    SpherePoint::Infinity => Complex64::new(0.0, 0.0),
                    SpherePoint::Finite(z) if z.norm_sqr() == 0.0 => return out,
                    SpherePoint::Finite(z) => z.inv(),
                };
                out.extend(cell(w, -1.0, 1.0, size, size).map(|(i, j)| (i + size, j)));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    BoundaryDepth(u32),
    Basin(u32),
    Unresolved,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RasterParams {
    /// Maximum number of map applications `N`.
    pub iterations: usize,
    /// `εB` in local pixel diagonals; ignored when `boundary_eps` is set.
    pub boundary_eps_pixels: f64,
    /// Fixed `εB` in chordal units.
    pub boundary_eps: Option<f64>,
    pub tol_conv: f64,
    pub tol_b: f64,
}

impl RasterParams {
    pub fn with_iterations(iterations: usize) -> Self {
        RasterParams { iterations, ..Self::default() }
    }
}

impl Default for RasterParams {
    fn default() -> Self {
        RasterParams {
            iterations: 100,
            boundary_eps_pixels: 1.5,
            boundary_eps: None,
            tol_conv: CONVERGENCE_TOL,
            tol_b: BOUNDARY_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RasterImage {
    pub window: Window,
    pub params: RasterParams,
    /// Row-major, `width * height` entries.
    pub labels: Vec<Label>,
}

impl RasterImage {
    pub fn label(&self, col: usize, row: usize) -> Label {
        let (w, _) = self.window.dimensions();
        self.labels[row * w + col]
    }

    pub fn count(&self, pred: impl Fn(Label) -> bool) -> usize {
        self.labels.iter().filter(|l| pred(**l)).count()
    }

    pub fn fraction(&self, pred: impl Fn(Label) -> bool) -> f64 {
        if self.labels.is_empty() {
            return 0.0;
        }
        self.count(pred) as f64 / self.labels.len() as f64
    }
}

/// Precomputed state shared by every pixel of one raster.
#[derive(Debug, Clone)]
pub struct Classifier<'a> {
    f: &'a Pmt,
    circles: Vec<SphereCircle>,
    attractors: &'a [Vec<SpherePoint>],
    params: RasterParams,
}

impl<'a> Classifier<'a> {
    /// `attractors[id]` lists the points of attracting cycle `id`.
    pub fn new(f: &'a Pmt, attractors: &'a [Vec<SpherePoint>], params: RasterParams) -> Self {
        let circles = f.partition().boundary_components().iter().map(|c| c.geometry()).collect();
        Classifier { f, circles, attractors, params }
    }

    pub fn params(&self) -> &RasterParams {
        &self.params
    }

    /// Label of the orbit of `p` with boundary threshold `eps` (chordal).
    pub fn classify(&self, p: SpherePoint, eps: f64) -> Label {
        let ln_eps = eps.ln();
        let mut q = p;
        let mut ln_gain = 0.0;
        for n in 0..self.params.iterations {
            let v = q.to_unit_vector();
            let dist = self.circles.iter().map(|c| c.distance(v)).fold(f64::INFINITY, f64::min);
            if dist.ln() - ln_gain < ln_eps {
                return Label::BoundaryDepth(n as u32);
            }
            for (id, cycle) in self.attractors.iter().enumerate() {
                if cycle.iter().any(|a| a.chordal_dist(q) < self.params.tol_conv) {
                    return Label::Basin(id as u32);
                }
            }
            match self.f.partition().locate(q, self.params.tol_b) {
                Ok(Location::Region(k)) => {
                    let m = self.f.map(k);
                    ln_gain += m.ln_spherical_derivative(q);
                    q = m.apply(q);
                }
                Ok(Location::Boundary) => return Label::BoundaryDepth(n as u32),
                Err(_) => return Label::Unresolved,
            }
        }
        Label::Unresolved
    }

    pub fn pixel(&self, window: &Window, col: usize, row: usize) -> Label {
        let eps = match self.params.boundary_eps {
            Some(e) => e,
            None => self.params.boundary_eps_pixels * window.pixel_diagonal(col, row),
        };
        self.classify(window.pixel_center(col, row), eps)
    }
}

/// Sequential raster; the result is a pure function of the arguments.
pub fn raster_classify(
    f: &Pmt,
    window: Window,
    params: RasterParams,
    attractors: &[Vec<SpherePoint>],
) -> RasterImage {
    let classifier = Classifier::new(f, attractors, params);
    let (w, h) = window.dimensions();
    let mut labels = Vec::with_capacity(w * h);
    for row in 0..h {
        for col in 0..w {
            labels.push(classifier.pixel(&window, col, row));
        }
    }
    RasterImage { window, params, labels }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn window_geometry() {
        let w = Window::Sphere { size: 4 };
        assert_eq!(w.dimensions(), (8, 4));
        let p = w.pixel_center(0, 0);
        assert!(p.chordal_dist(SpherePoint::new(-0.75, 0.75)) < 1e-15);
        let q = w.pixel_center(4, 0);
        assert!(q.chordal_dist(SpherePoint::finite(c(-0.75, 0.75).inv())) < 1e-15);
        assert!(w.pixels_containing(p).contains(&(0, 0)));
        assert!(w.pixels_containing(q).contains(&(4, 0)));
        assert!(w.pixels_containing(SpherePoint::Infinity).len() == 1);
        let plane = Window::square(c(0.0, 0.0), 2.0, 4);
        assert!(plane.pixel_center(3, 3).chordal_dist(SpherePoint::new(1.5, -1.5)) < 1e-15);
        assert_eq!(plane.pixels_containing(SpherePoint::new(1.6, -1.4)), alloc::vec![(3, 3)]);
        assert!(plane.pixels_containing(SpherePoint::new(3.0, 0.0)).is_empty());
    }

    #[test]
    fn zero_iterations_leave_everything_unresolved() {
        let f = presets::two_scalings(c(0.5, 0.0)).unwrap();
        let r = raster_classify(&f, Window::Sphere { size: 8 }, RasterParams::with_iterations(0), &[]);
        assert!(r.labels.iter().all(|l| *l == Label::Unresolved));
    }

    #[test]
    fn two_scalings_two_basins() {
        let f = presets::two_scalings(c(0.5, 0.0)).unwrap();
        let attractors = [alloc::vec![SpherePoint::ZERO], alloc::vec![SpherePoint::Infinity]];
        let window = Window::square(c(0.0, 0.0), 2.0, 64);
        let r = raster_classify(&f, window, RasterParams::with_iterations(100), &attractors);
        for row in 0..64 {
            for col in 0..64 {
                let p = window.pixel_center(col, row);
                let z = p.as_complex().unwrap();
                match r.label(col, row) {
                    Label::Basin(0) => assert!(z.norm() < 1.0),
                    Label::Basin(1) => assert!(z.norm() > 1.0),
                    Label::BoundaryDepth(0) => {
                        assert!((z.norm() - 1.0).abs() < 2.0 * window.pixel_diagonal(col, row))
                    }
                    other => panic!("{other:?} at {z}"),
                }
            }
        }
        assert_eq!(r.count(|l| l == Label::Unresolved), 0);
    }

    #[test]
    fn raster_is_deterministic() {
        let f = presets::tent(c(-0.5, 0.0), 1.0, c(3.5, 0.0)).unwrap();
        let attractors = [alloc::vec![SpherePoint::Infinity]];
        let run = || raster_classify(&f, Window::Sphere { size: 24 }, RasterParams::with_iterations(20), &attractors);
        assert_eq!(run(), run());
    }
}
