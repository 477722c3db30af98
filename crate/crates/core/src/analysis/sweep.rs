use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use num_complex::Complex64;

use crate::analysis::periodic::{attracting_cycles, find_periodic, PeriodicConfig, PeriodicKind};
use crate::pmt::Pmt;
use crate::presets::Preset;
use crate::spiderweb::{backward_arcs, raster_classify, Label, RasterParams, SpiderwebConfig, Window};
use crate::{Error, Result};

/// Cell-centred grid over a rectangle of the complex parameter plane. Cell
/// `(i, j)` has column `i` from the left and row `j` from the top.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParameterGrid {
    pub re: [f64; 2],
    pub im: [f64; 2],
    pub nx: usize,
    pub ny: usize,
}

impl ParameterGrid {
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell(&self, i: usize, j: usize) -> Complex64 {
        let re = self.re[0] + (i as f64 + 0.5) * (self.re[1] - self.re[0]) / self.nx as f64;
        let im = self.im[1] - (j as f64 + 0.5) * (self.im[1] - self.im[0]) / self.ny as f64;
        Complex64::new(re, im)
    }

    /// Parameter of the cell at row-major `index`.
    pub fn at(&self, index: usize) -> Complex64 {
        self.cell(index % self.nx, index / self.nx)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignatureConfig {
    pub max_len: usize,
    /// Per-region arc counts are recorded for levels `1..=arc_depth`.
    pub arc_depth: usize,
    /// Sphere raster size for the basin count; 0 skips the raster.
    pub raster_size: usize,
    pub raster_iterations: usize,
    /// A basin counts once it holds this fraction of the raster.
    pub basin_min_fraction: f64,
    /// Rounding step for attracting multipliers; `None` leaves them out.
    /// They vary continuously with the parameter, so any quantum splits
    /// every cell from its neighbours along a grid of level lines.
    pub multiplier_quantum: Option<f64>,
}

impl Default for SignatureConfig {
    fn default() -> Self {
        SignatureConfig {
            max_len: 4,
            arc_depth: 3,
            raster_size: 16,
            raster_iterations: 200,
            basin_min_fraction: 0.01,
            multiplier_quantum: None,
        }
    }
}

/// Coarse conjugacy invariants of one PMT.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    /// Period of each attracting cycle, sorted.
    pub attracting_periods: Vec<usize>,
    pub ghosts: usize,
    /// Basins holding at least the configured fraction of the raster.
    pub basins: usize,
    /// `arc_counts[n - 1][k]`: arcs of level `n` inside region `k`.
    pub arc_counts: Vec<Vec<usize>>,
    /// Quantized attracting multipliers, sorted; empty unless configured.
    pub multipliers: Vec<(i64, i64)>,
}

impl Signature {
    pub fn attracting_cycles(&self) -> usize {
        self.attracting_periods.len()
    }
}

pub fn cell_signature(f: &Pmt, config: &SignatureConfig) -> Result<Signature> {
    let census = find_periodic(f, &PeriodicConfig::with_max_len(config.max_len))?;
    let cycles = attracting_cycles(&census);
    let mut attracting_periods: Vec<usize> = cycles.iter().map(Vec::len).collect();
    attracting_periods.sort_unstable();
    let ghosts = census.iter().filter(|pp| pp.kind == PeriodicKind::Ghost).count();

    let mut multipliers: Vec<(i64, i64)> = match config.multiplier_quantum {
        Some(q) => census
            .iter()
            .filter(|pp| pp.kind == PeriodicKind::Attracting)
            .map(|pp| ((pp.multiplier.re / q).round() as i64, (pp.multiplier.im / q).round() as i64))
            .collect(),
        None => Vec::new(),
    };
    multipliers.sort_unstable();
    multipliers.dedup();

    let s = backward_arcs(f, &SpiderwebConfig::with_depth(config.arc_depth))?;
    let arc_counts = (1..=config.arc_depth)
        .map(|n| {
            let mut counts = vec![0; f.len()];
            for a in s.level(n) {
                counts[a.word[0]] += 1;
            }
            counts
        })
        .collect();

    let basins = if config.raster_size == 0 {
        0
    } else {
        let r = raster_classify(
            f,
            Window::Sphere { size: config.raster_size },
            RasterParams::with_iterations(config.raster_iterations),
            &cycles,
        );
        (0..cycles.len() as u32)
            .filter(|&id| r.fraction(|l| l == Label::Basin(id)) >= config.basin_min_fraction)
            .count()
    };

    Ok(Signature { attracting_periods, ghosts, basins, arc_counts, multipliers })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub grid: ParameterGrid,
    /// Row-major; `None` where the preset rejects the parameter.
    pub signatures: Vec<Option<Signature>>,
    /// Cells whose signature differs from a 4-neighbour.
    pub change_mask: Vec<bool>,
    pub distinct: usize,
}

impl SweepResult {
    /// Assembles a result from per-cell signatures in row-major order.
    pub fn from_cells(grid: ParameterGrid, signatures: Vec<Option<Signature>>) -> Self {
        let change_mask = change_locus(&signatures, grid.nx, grid.ny);
        let mut seen: Vec<&Signature> = signatures.iter().flatten().collect();
        seen.sort();
        seen.dedup();
        let distinct = seen.len();
        SweepResult { grid, signatures, change_mask, distinct }
    }

    pub fn changed_cells(&self) -> usize {
        self.change_mask.iter().filter(|&&c| c).count()
    }
}

pub fn change_locus(signatures: &[Option<Signature>], nx: usize, ny: usize) -> Vec<bool> {
    let at = |i: usize, j: usize| &signatures[j * nx + i];
    let mut mask = vec![false; nx * ny];
    for j in 0..ny {
        for i in 0..nx {
            let here = at(i, j);
            let differs = (i + 1 < nx && at(i + 1, j) != here)
                || (i > 0 && at(i - 1, j) != here)
                || (j + 1 < ny && at(i, j + 1) != here)
                || (j > 0 && at(i, j - 1) != here);
            mask[j * nx + i] = differs;
        }
    }
    mask
}

/// Signature of `family` at one parameter; `Ok(None)` if the preset rejects it.
pub fn family_signature(family: &Preset, lambda: Complex64, config: &SignatureConfig) -> Result<Option<Signature>> {
    let f = match family.with_parameter(lambda)?.build() {
        Ok(f) => f,
        Err(Error::BadParameter(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    cell_signature(&f, config).map(Some)
}

/// Sequential sweep of `family` over `grid`.
pub fn parameter_sweep(family: &Preset, grid: ParameterGrid, config: &SignatureConfig) -> Result<SweepResult> {
    if family.parameter().is_none() {
        return Err(Error::BadParameter(format!("preset {} has no parameter to sweep", family.name())));
    }
    let signatures = (0..grid.len())
        .map(|idx| family_signature(family, grid.at(idx), config))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult::from_cells(grid, signatures))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn grid_cells_are_centred() {
        let g = ParameterGrid { re: [0.0, 1.0], im: [0.0, 2.0], nx: 2, ny: 2 };
        assert_eq!(g.cell(0, 0), c(0.25, 1.5));
        assert_eq!(g.at(3), c(0.75, 0.5));
        let single = ParameterGrid { re: [0.0, 1.0], im: [0.0, 1.0], nx: 1, ny: 1 };
        assert_eq!(single.at(0), c(0.5, 0.5));
    }

    #[test]
    fn single_cell_has_no_change() {
        let family = Preset::named("two_scalings").unwrap();
        let grid = ParameterGrid { re: [0.4, 0.6], im: [-0.1, 0.1], nx: 1, ny: 1 };
        let r = parameter_sweep(&family, grid, &SignatureConfig::default()).unwrap();
        assert_eq!(r.distinct, 1);
        assert_eq!(r.changed_cells(), 0);
        let sig = r.signatures[0].as_ref().unwrap();
        assert_eq!(sig.attracting_periods, vec![1, 1]);
        assert_eq!(sig.basins, 2);
    }

    #[test]
    fn tent_sweep_has_one_signature() {
        let family = Preset::named("tent").unwrap();
        let grid = ParameterGrid { re: [3.0, 4.0], im: [0.0, 1.0], nx: 4, ny: 4 };
        let r = parameter_sweep(&family, grid, &SignatureConfig::default()).unwrap();
        assert_eq!(r.distinct, 1);
        assert_eq!(r.changed_cells(), 0);
        assert_eq!(r.signatures[0].as_ref().unwrap().attracting_periods, vec![1]);
    }

    #[test]
    fn rejected_parameters_are_empty_cells() {
        let family = Preset::named("two_scalings").unwrap();
        let grid = ParameterGrid { re: [0.5, 1.5], im: [-0.1, 0.1], nx: 2, ny: 1 };
        let r = parameter_sweep(&family, grid, &SignatureConfig { raster_size: 0, ..Default::default() }).unwrap();
        assert!(r.signatures[0].is_some());
        assert!(r.signatures[1].is_none());
        assert_eq!(r.changed_cells(), 2);
        assert!(parameter_sweep(&Preset::Ghost, grid, &SignatureConfig::default()).is_err());
    }

    #[test]
    fn changed_mask_marks_both_sides() {
        let a = Some(Signature {
            attracting_periods: vec![1],
            ghosts: 0,
            basins: 1,
            arc_counts: vec![],
            multipliers: vec![],
        });
        let mut b = a.clone();
        b.as_mut().unwrap().basins = 2;
        let mask = change_locus(&[a.clone(), a, b.clone(), b], 4, 1);
        assert_eq!(mask, vec![false, true, true, false]);
    }
}
