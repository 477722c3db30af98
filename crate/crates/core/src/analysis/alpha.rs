use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::analysis::periodic::{PeriodicKind, PeriodicPoint};
use crate::partition::Location;
use crate::pmt::Pmt;
use crate::sphere::SpherePoint;
use crate::spiderweb::SpiderwebApprox;
use crate::{Error, Result};

/// A derivative product must exceed `1 + EXPANSION_MARGIN` to count.
pub const EXPANSION_MARGIN: f64 = 1e-9;
/// Shallowest spiderweb accepted by [`alpha_sample`].
const MIN_DEPTH: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub enum AlphaSample {
    Points(Vec<SpherePoint>),
    /// No arcs beyond level 0 and no repelling or parabolic periodic points.
    Empty,
}

impl AlphaSample {
    pub fn points(&self) -> &[SpherePoint] {
        match self {
            AlphaSample::Points(p) => p,
            AlphaSample::Empty => &[],
        }
    }
}

/// Up to `budget` points approximating the α-limit set: every repelling and
/// parabolic periodic point of `census`, then endpoints and midpoints of the
/// arcs in the deeper half of the spiderweb, spread evenly.
///
/// A band of levels rather than the deepest one alone: some PMTs have a
/// single arc per level, which would leave α sampled at one point.
pub fn alpha_sample(
    s: &SpiderwebApprox,
    census: &[PeriodicPoint],
    budget: usize,
) -> Result<AlphaSample> {
    if s.depth() < MIN_DEPTH {
        return Err(Error::BadParameter(format!(
            "α sampling needs spiderweb depth at least {MIN_DEPTH}, got {}",
            s.depth()
        )));
    }
    let mut points: Vec<SpherePoint> = census
        .iter()
        .filter(|pp| matches!(pp.kind, PeriodicKind::Repelling | PeriodicKind::Parabolic))
        .map(|pp| pp.point)
        .collect();
    let deepest = s.deepest_nonempty();
    if deepest == 0 && points.is_empty() {
        return Ok(AlphaSample::Empty);
    }
    if deepest > 0 {
        let mut arc_points = Vec::new();
        for arc in s.levels()[deepest - deepest / 2..=deepest].iter().flatten() {
            arc_points.push(arc.midpoint());
            if let Some((a, b)) = arc.endpoints() {
                arc_points.push(a);
                arc_points.push(b);
            }
        }
        let room = budget.saturating_sub(points.len());
        if arc_points.len() <= room {
            points.extend(arc_points);
        } else if room > 0 {
            let stride = arc_points.len() as f64 / room as f64;
            points.extend((0..room).map(|i| arc_points[(i as f64 * stride) as usize]));
        }
    }
    points.truncate(budget.max(1));
    Ok(AlphaSample::Points(points))
}

#[derive(Debug, Clone, PartialEq)]
pub enum AlphaExpansion {
    /// Every sample whose orbit is defined for `n` steps has spherical
    /// derivative product above `1 + EXPANSION_MARGIN`; `products` follows
    /// the sample order, with `None` for skipped samples.
    Expanding { n: usize, min_product: f64, products: Vec<Option<f64>>, skipped: usize },
    /// No `n ≤ n_max` works; `witness` has the smallest product at `n`.
    NotExpanding { witness: SpherePoint, product: f64, n: usize, skipped: usize },
    /// α is empty, which does not count as expanding.
    Empty,
}

impl AlphaExpansion {
    pub fn is_expanding(&self) -> bool {
        matches!(self, AlphaExpansion::Expanding { .. })
    }
}

/// Logarithms of the spherical derivative products `|(F^n)'(p)|_s` for
/// `n = 1..` as long as the orbit stays off the boundary, at most `n_max`.
fn log_products(f: &Pmt, p: SpherePoint, n_max: usize, tol_b: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max);
    let mut q = p;
    let mut acc = 0.0;
    for _ in 0..n_max {
        let Ok(Location::Region(k)) = f.partition().locate(q, tol_b) else { break };
        let m = f.map(k);
        acc += m.ln_spherical_derivative(q);
        q = m.apply(q);
        out.push(acc);
    }
    out
}

/// Smallest `n ≤ n_max` at which every sample expands. Samples whose orbit
/// meets the boundary within `n` steps are skipped for that `n`.
pub fn alpha_expanding_check(
    f: &Pmt,
    samples: &AlphaSample,
    n_max: usize,
    tol_b: f64,
) -> AlphaExpansion {
    let points = match samples {
        AlphaSample::Empty => return AlphaExpansion::Empty,
        AlphaSample::Points(p) if p.is_empty() => return AlphaExpansion::Empty,
        AlphaSample::Points(p) => p,
    };
    let logs: Vec<Vec<f64>> = points.iter().map(|&p| log_products(f, p, n_max, tol_b)).collect();
    let threshold = EXPANSION_MARGIN.ln_1p();
    let mut last_worst: Option<(usize, usize, f64, usize)> = None;
    for n in 1..=n_max {
        let defined: Vec<(usize, f64)> =
            logs.iter().enumerate().filter_map(|(i, l)| l.get(n - 1).map(|&v| (i, v))).collect();
        if defined.is_empty() {
            continue;
        }
        let skipped = points.len() - defined.len();
        let &(wi, wv) = defined.iter().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
        if wv > threshold {
            let products = logs.iter().map(|l| l.get(n - 1).map(|v| v.exp())).collect();
            return AlphaExpansion::Expanding { n, min_product: wv.exp(), products, skipped };
        }
        last_worst = Some((n, wi, wv, skipped));
    }
    match last_worst {
        Some((n, wi, wv, skipped)) => {
            AlphaExpansion::NotExpanding { witness: points[wi], product: wv.exp(), n, skipped }
        }
        // Every sample starts on the boundary.
        None => AlphaExpansion::NotExpanding {
            witness: points[0],
            product: f64::NAN,
            n: 0,
            skipped: points.len(),
        },
    }
}
