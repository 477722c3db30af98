use alloc::vec;
use alloc::vec::Vec;

use core::cmp::Ordering;
use core::f64::consts::TAU;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::circline::{Circline, Intersection};
use crate::partition::BOUNDARY_TOL;
use crate::pmt::{Pmt, Word};
use crate::sphere::SpherePoint;
use crate::vec3;
use crate::{Error, Result};

pub const DEFAULT_MIN_ARC_CHORDAL: f64 = 1e-5;
pub const DEFAULT_MAX_ARCS: usize = 1_000_000;

/// Cut angles closer than this are merged.
const CUT_MERGE: f64 = 1e-12;

/// Angular extent of an arc in its circline's parameterization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Span {
    Full,
    /// Counterclockwise from `start ∈ [0, 2π)` to `end`, with
    /// `start < end <= start + 2π`.
    Interval { start: f64, end: f64 },
}

impl Span {
    fn interval(start: f64, end: f64) -> Span {
        let s = vec3::rem_tau(start);
        let mut len = vec3::rem_tau(end - start);
        if len == 0.0 {
            len = TAU;
        }
        Span::Interval { start: s, end: s + len }
    }

    pub fn sweep(&self) -> f64 {
        match *self {
            Span::Full => TAU,
            Span::Interval { start, end } => end - start,
        }
    }

    pub fn contains_angle(&self, theta: f64) -> bool {
        match *self {
            Span::Full => true,
            Span::Interval { start, end } => vec3::rem_tau(theta - start) <= end - start,
        }
    }

    /// Angle at fraction `t ∈ [0, 1]` along the span.
    pub fn angle_at(&self, t: f64) -> f64 {
        match *self {
            Span::Full => t * TAU,
            Span::Interval { start, end } => start + t * (end - start),
        }
    }

    fn start(&self) -> f64 {
        match *self {
            Span::Full => 0.0,
            Span::Interval { start, .. } => start,
        }
    }
}

/// A piece of the pre-discontinuity set. `word[0]` is the region containing
/// the arc and `F^level` carries it into boundary component `source`.
#[derive(Debug, Clone, PartialEq)]
pub struct Arc {
    pub circline: Circline,
    pub span: Span,
    pub word: Word,
    pub level: usize,
    pub source: usize,
}

impl Arc {
    pub fn point_at(&self, t: f64) -> SpherePoint {
        self.circline.point_at(self.span.angle_at(t))
    }

    pub fn midpoint(&self) -> SpherePoint {
        self.point_at(0.5)
    }

    pub fn endpoints(&self) -> Option<(SpherePoint, SpherePoint)> {
        match self.span {
            Span::Full => None,
            Span::Interval { .. } => Some((self.point_at(0.0), self.point_at(1.0))),
        }
    }

    pub fn is_full(&self) -> bool {
        self.span == Span::Full
    }

    /// Length in the chordal (spherical) metric.
    pub fn chordal_length(&self) -> f64 {
        self.circline.geometry().radius * self.span.sweep()
    }

    /// Chordal distance from `p` to the nearest point of the arc.
    pub fn chordal_dist_to(&self, p: SpherePoint) -> f64 {
        let g = self.circline.geometry();
        let q = p.to_unit_vector();
        let inside = match g.angle(q) {
            Some(theta) => self.span.contains_angle(theta),
            None => true,
        };
        if inside {
            g.distance(q)
        } else {
            // Distance along a circle grows with the angular offset, so the
            // nearest point is an endpoint.
            let a = vec3::norm(vec3::sub(q, g.point(self.span.angle_at(0.0))));
            let b = vec3::norm(vec3::sub(q, g.point(self.span.angle_at(1.0))));
            a.min(b)
        }
    }

    /// Evenly spaced interior sample points.
    pub fn samples(&self, n: usize) -> impl Iterator<Item = SpherePoint> + '_ {
        (0..n).map(move |i| self.point_at((i as f64 + 0.5) / n as f64))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpiderwebConfig {
    pub depth: usize,
    /// Arcs shorter than this (chordal) are dropped and counted.
    pub min_arc_chordal: f64,
    pub max_arcs: usize,
    /// Region test for clipped pieces, in plane-value units.
    pub boundary_tol: f64,
    /// Tolerance handed to [`Circline::intersect`].
    pub intersect_tol: f64,
}

impl SpiderwebConfig {
    pub fn with_depth(depth: usize) -> Self {
        SpiderwebConfig { depth, ..Self::default() }
    }
}

impl Default for SpiderwebConfig {
    fn default() -> Self {
        SpiderwebConfig {
            depth: 8,
            min_arc_chordal: DEFAULT_MIN_ARC_CHORDAL,
            max_arcs: DEFAULT_MAX_ARCS,
            boundary_tol: BOUNDARY_TOL,
            intersect_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LevelStats {
    pub arcs: usize,
    pub length: f64,
    pub dropped: usize,
    pub dropped_length: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpiderwebApprox {
    levels: Vec<Vec<Arc>>,
    stats: Vec<LevelStats>,
    config: SpiderwebConfig,
}

impl SpiderwebApprox {
    /// Number of computed levels beyond level 0.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[Vec<Arc>] {
        &self.levels
    }

    pub fn level(&self, n: usize) -> &[Arc] {
        self.levels.get(n).map_or(&[], |v| v.as_slice())
    }

    pub fn stats(&self) -> &[LevelStats] {
        &self.stats
    }

    pub fn config(&self) -> &SpiderwebConfig {
        &self.config
    }

    pub fn arcs(&self) -> impl Iterator<Item = &Arc> {
        self.levels.iter().flatten()
    }

    pub fn arc_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// Total chordal length dropped for being shorter than the threshold.
    pub fn truncated_length(&self) -> f64 {
        self.stats.iter().map(|s| s.dropped_length).sum()
    }

    /// Deepest level that still has arcs.
    pub fn deepest_nonempty(&self) -> usize {
        self.levels.iter().rposition(|l| !l.is_empty()).unwrap_or(0)
    }

    /// Chordal distance from `p` to the arcs of level at most `max_level`.
    pub fn distance_to(&self, p: SpherePoint, max_level: usize) -> f64 {
        self.levels
            .iter()
            .take(max_level.saturating_add(1))
            .flatten()
            .map(|a| a.chordal_dist_to(p))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Clipped preimages of one arc under one branch.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Preimages {
    pub kept: Vec<Arc>,
    pub dropped: usize,
    pub dropped_length: f64,
}

/// `f_k⁻¹(arc) ∩ R_k`, split into arcs at the region's constraint circles.
pub fn arc_preimages(f: &Pmt, arc: &Arc, k: usize, config: &SpiderwebConfig) -> Preimages {
    let inv = f.map(k).inverse();
    let image = arc.circline.image(&inv);
    let geom = image.geometry();
    let angle = |p: SpherePoint| geom.angle(p.to_unit_vector()).unwrap_or(0.0);

    let image_span = match arc.span {
        Span::Full => Span::Full,
        Span::Interval { .. } => {
            let (p0, p1) = arc.endpoints().expect("interval arcs have endpoints");
            let (t0, t1) = (angle(inv.apply(p0)), angle(inv.apply(p1)));
            let tm = angle(inv.apply(arc.midpoint()));
            let forward = Span::interval(t0, t1);
            if forward.contains_angle(tm) {
                forward
            } else {
                Span::interval(t1, t0)
            }
        }
    };

    let partition = f.partition();
    let boundary = partition.boundary_components();
    let mut cuts: Vec<f64> = Vec::new();
    for j in partition.constraint_components(k) {
        match image.intersect(&boundary[j], config.intersect_tol) {
            Intersection::Two(p, q) => {
                cuts.push(angle(p));
                cuts.push(angle(q));
            }
            Intersection::Tangent(p) => cuts.push(angle(p)),
            Intersection::Disjoint | Intersection::Coincident => {}
        }
    }
    if let Span::Interval { start, end } = image_span {
        cuts.push(start);
        cuts.push(vec3::rem_tau(end));
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    cuts.dedup_by(|b, a| *b - *a <= CUT_MERGE);
    if cuts.len() > 1 && cuts[0] + TAU - cuts[cuts.len() - 1] <= CUT_MERGE {
        cuts.pop();
    }

    let keep = |s: f64, e: f64| {
        let mid = 0.5 * (s + e);
        image_span.contains_angle(vec3::rem_tau(mid))
            && partition.region_margin(k, image.point_at(mid)) < -config.boundary_tol
    };

    let mut word = Vec::with_capacity(arc.word.len() + 1);
    word.push(k);
    word.extend_from_slice(&arc.word);
    let make = |span: Span| Arc { circline: image, span, word: word.clone(), level: arc.level + 1, source: arc.source };

    let mut spans: Vec<Span> = Vec::new();
    if cuts.is_empty() {
        if keep(0.0, TAU) {
            spans.push(Span::Full);
        }
    } else {
        let n = cuts.len();
        let pieces: Vec<(f64, f64, bool)> = (0..n)
            .map(|i| {
                let s = cuts[i];
                let e = if i + 1 < n { cuts[i + 1] } else { cuts[0] + TAU };
                (s, e, keep(s, e))
            })
            .collect();
        match pieces.iter().position(|p| !p.2) {
            None if image_span == Span::Full => spans.push(Span::Full),
            None => spans.push(Span::interval(pieces[0].0, pieces[0].0 + TAU)),
            Some(first_gap) => {
                // Walk once around starting after a rejected piece so that
                // kept runs never wrap.
                let mut run: Option<(f64, f64)> = None;
                for idx in first_gap + 1..=first_gap + n {
                    let (mut s, mut e, kept) = pieces[idx % n];
                    if idx >= n {
                        s += TAU;
                        e += TAU;
                    }
                    if kept {
                        run = Some(match run {
                            Some((rs, _)) => (rs, e),
                            None => (s, e),
                        });
                    } else if let Some((rs, re)) = run.take() {
                        spans.push(Span::interval(rs, re));
                    }
                }
                if let Some((rs, re)) = run {
                    spans.push(Span::interval(rs, re));
                }
            }
        }
    }

    let mut out = Preimages::default();
    let radius = geom.radius;
    for span in spans {
        let len = radius * span.sweep();
        if len < config.min_arc_chordal {
            out.dropped += 1;
            out.dropped_length += len;
        } else {
            out.kept.push(make(span));
        }
    }
    out
}

fn arc_order(a: &Arc, b: &Arc) -> Ordering {
    a.word
        .cmp(&b.word)
        .then(a.source.cmp(&b.source))
        .then(a.span.start().partial_cmp(&b.span.start()).unwrap_or(Ordering::Equal))
}

/// Level 0 is the boundary itself; level `n + 1` collects the clipped
/// preimages of level `n` under every branch, sorted by word.
pub fn backward_arcs(f: &Pmt, config: &SpiderwebConfig) -> Result<SpiderwebApprox> {
    backward_arcs_with(f, config, |arcs, k| {
        arcs.iter().map(|a| arc_preimages(f, a, k, config)).collect()
    })
}

/// [`backward_arcs`] with the per-level preimage computation supplied by the
/// caller; `pull(level_arcs, k)` must return one [`Preimages`] per arc, in
/// order. Used to parallelize without changing the result.
pub fn backward_arcs_with<P>(f: &Pmt, config: &SpiderwebConfig, mut pull: P) -> Result<SpiderwebApprox>
where
    P: FnMut(&[Arc], usize) -> Vec<Preimages>,
{
    let level0: Vec<Arc> = f
        .partition()
        .boundary_components()
        .iter()
        .enumerate()
        .map(|(j, c)| Arc { circline: *c, span: Span::Full, word: Vec::new(), level: 0, source: j })
        .collect();
    let mut total = level0.len();
    let mut stats = vec![LevelStats {
        arcs: level0.len(),
        length: level0.iter().map(Arc::chordal_length).sum(),
        ..LevelStats::default()
    }];
    let mut levels = vec![level0];
    for _ in 0..config.depth {
        let prev = levels.last().expect("level 0 exists");
        let mut next = Vec::new();
        let mut st = LevelStats::default();
        for k in 0..f.len() {
            for pre in pull(prev, k) {
                st.dropped += pre.dropped;
                st.dropped_length += pre.dropped_length;
                next.extend(pre.kept);
            }
            if total + next.len() > config.max_arcs {
                return Err(Error::DepthOverflow { arcs: total + next.len(), cap: config.max_arcs });
            }
        }
        next.sort_by(arc_order);
        st.arcs = next.len();
        st.length = next.iter().map(Arc::chordal_length).sum();
        total += next.len();
        stats.push(st);
        levels.push(next);
    }
    Ok(SpiderwebApprox { levels, stats, config: *config })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Location;
    use crate::presets;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn two_scalings_has_only_the_boundary() {
        let f = presets::two_scalings(c(0.5, 0.0)).unwrap();
        let s = backward_arcs(&f, &SpiderwebConfig::with_depth(8)).unwrap();
        assert_eq!(s.depth(), 8);
        assert_eq!(s.level(0).len(), 1);
        assert!(s.level(0)[0].is_full());
        for n in 1..=8 {
            assert!(s.level(n).is_empty(), "level {n}");
        }
    }

    #[test]
    fn ghost_level_one_is_empty() {
        // Both preimage circles |z-2| = 2 and |z-1/2| = 1/2 touch the
        // boundary |z-1| = 1 at 0 from outside their branch's region.
        let f = presets::ghost().unwrap();
        let s = backward_arcs(&f, &SpiderwebConfig::with_depth(1)).unwrap();
        assert!(s.level(1).is_empty());
    }

    #[test]
    fn span_interval_normalizes() {
        let s = Span::interval(-0.5, 0.5);
        match s {
            Span::Interval { start, end } => {
                assert!((start - (TAU - 0.5)).abs() < 1e-15);
                assert!((end - start - 1.0).abs() < 1e-15);
            }
            Span::Full => panic!(),
        }
        assert!(s.contains_angle(0.0));
        assert!(!s.contains_angle(1.0));
    }

    fn tent() -> Pmt {
        presets::tent(c(-0.5, 0.0), 1.0, c(3.5, 0.0)).unwrap()
    }

    #[test]
    fn tent_levels_are_populated() {
        let s = backward_arcs(&tent(), &SpiderwebConfig::with_depth(6)).unwrap();
        for n in 1..=6 {
            assert!(!s.level(n).is_empty(), "level {n}");
        }
    }

    #[test]
    fn refinement_is_monotone() {
        let f = presets::hiper_no_ss(c(0.5, -0.2)).unwrap();
        let shallow = backward_arcs(&f, &SpiderwebConfig::with_depth(3)).unwrap();
        let deep = backward_arcs(&f, &SpiderwebConfig::with_depth(5)).unwrap();
        assert_eq!(shallow.levels(), &deep.levels()[..4]);
    }

    #[test]
    fn overflow_is_reported() {
        let config = SpiderwebConfig { max_arcs: 3, ..SpiderwebConfig::with_depth(6) };
        assert!(matches!(backward_arcs(&tent(), &config), Err(Error::DepthOverflow { .. })));
    }

    fn check_arcs(f: &Pmt, depth: usize) {
        let s = backward_arcs(f, &SpiderwebConfig::with_depth(depth)).unwrap();
        let boundary = f.partition().boundary_components();
        for arc in s.arcs().filter(|a| a.level > 0) {
            assert_eq!(arc.word.len(), arc.level);
            assert_eq!(
                f.partition().locate(arc.midpoint(), 1e-12),
                Ok(Location::Region(arc.word[0]))
            );
            for p in arc.samples(30) {
                // Word correctness.
                let end = f.word_map(&arc.word).apply(p);
                assert!(boundary[arc.source].plane_value(end).abs() < 1e-7);
                // Backward invariance.
                let q = f.map(arc.word[0]).apply(p);
                let d = s
                    .level(arc.level - 1)
                    .iter()
                    .map(|b| b.chordal_dist_to(q))
                    .fold(f64::INFINITY, f64::min);
                assert!(d < 1e-7, "{d}");
            }
        }
    }

    #[test]
    fn arcs_are_backward_invariant_and_carry_words() {
        check_arcs(&tent(), 5);
        check_arcs(&presets::hiper_no_ss(c(0.5, -0.223)).unwrap(), 5);
        check_arcs(&presets::perturbed_pair(c(0.0, 1.02)).unwrap(), 5);
        check_arcs(&presets::expand_no_hyper().unwrap(), 12);
    }
}
