use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::moebius::{MapClass, CLASS_TOL};
use crate::partition::BOUNDARY_TOL;
use crate::pmt::{ItineraryCheck, Pmt, Word};
use crate::sphere::SpherePoint;
use crate::{Error, Result};

/// Chordal radius of the seed ring used to verify a ghost.
const GHOST_SEED_RADIUS: f64 = 1e-3;
const GHOST_SEEDS: usize = 8;
const GHOST_ORBIT_STEPS: usize = 5000;
/// A verification orbit must end this close (chordal) to the cycle.
const GHOST_CAPTURE: f64 = 1e-5;
/// A ghost must lie this close (plane value) to a preimage of the boundary.
const GHOST_PROXIMITY: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PeriodicKind {
    Attracting,
    Repelling,
    Elliptic,
    Parabolic,
    /// Unit multiplier that is a root of unity: the cycle sits in a domain on
    /// which the return map is the identity.
    Identity,
    Ghost,
}

impl PeriodicKind {
    pub fn is_neutral(self) -> bool {
        matches!(self, PeriodicKind::Elliptic | PeriodicKind::Parabolic | PeriodicKind::Identity)
    }

    pub fn name(self) -> &'static str {
        match self {
            PeriodicKind::Attracting => "attracting",
            PeriodicKind::Repelling => "repelling",
            PeriodicKind::Elliptic => "elliptic",
            PeriodicKind::Parabolic => "parabolic",
            PeriodicKind::Identity => "identity",
            PeriodicKind::Ghost => "ghost",
        }
    }
}

/// A periodic point with its primitive word; the period is `word.len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicPoint {
    pub point: SpherePoint,
    pub word: Word,
    /// Derivative of the word map at `point` (in the `1/z` chart at ∞).
    pub multiplier: Complex64,
    pub kind: PeriodicKind,
    pub consistency: ItineraryCheck,
}

impl PeriodicPoint {
    pub fn period(&self) -> usize {
        self.word.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicConfig {
    pub max_len: usize,
    /// Chordal radius within which two candidates are the same point.
    pub dedup_tol: f64,
    /// `||m| - 1|` at or below this is neutral.
    pub neutral_tol: f64,
    pub boundary_tol: f64,
    /// Highest root-of-unity order recognised as `Identity`.
    pub root_of_unity_max: u32,
    /// Refuse to run when `K^max_len` exceeds this.
    pub word_cap: u64,
}

impl Default for PeriodicConfig {
    fn default() -> Self {
        PeriodicConfig {
            max_len: 6,
            dedup_tol: 1e-9,
            neutral_tol: 1e-7,
            boundary_tol: BOUNDARY_TOL,
            root_of_unity_max: 64,
            word_cap: 1_000_000,
        }
    }
}

impl PeriodicConfig {
    pub fn with_max_len(max_len: usize) -> Self {
        PeriodicConfig { max_len, ..Self::default() }
    }
}

/// Lyndon words over `0..k` of length at most `n`, in lexicographic order.
/// Each primitive cycle has exactly one Lyndon rotation.
fn lyndon_words(k: usize, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if k == 0 || n == 0 {
        return out;
    }
    let mut w = vec![0usize];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < n {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => return out,
        }
    }
}

fn rotate(word: &[usize], i: usize) -> Word {
    word[i..].iter().chain(&word[..i]).copied().collect()
}

/// Every periodic point whose primitive word has length at most
/// `config.max_len`, classified, with each cycle listed once per point.
///
/// Candidates on the closure of their itinerary survive only as verified
/// ghosts; identity word maps (whole domains of periodic points) are skipped.
/// Sorted by period, then word.
pub fn find_periodic(f: &Pmt, config: &PeriodicConfig) -> Result<Vec<PeriodicPoint>> {
    let k = f.len() as u64;
    let words = (0..config.max_len).try_fold(1u64, |acc, _| acc.checked_mul(k));
    match words {
        Some(w) if w <= config.word_cap => {}
        _ => {
            let shown = words.unwrap_or(u64::MAX);
            return Err(Error::WordBudget { words: shown, cap: config.word_cap });
        }
    }

    let mut found: Vec<PeriodicPoint> = Vec::new();
    for word in lyndon_words(f.len(), config.max_len) {
        let m = f.word_map(&word);
        if m.is_identity() {
            continue;
        }
        for fp in m.fixed_points()? {
            let check = f.itinerary_consistent(fp.point, &word, config.boundary_tol);
            if check == ItineraryCheck::Inconsistent {
                continue;
            }
            let mut p = fp.point;
            let mut cycle = Vec::with_capacity(word.len());
            for i in 0..word.len() {
                let w = rotate(&word, i);
                let multiplier = f.word_map(&w).multiplier_at(p);
                let consistency = f.itinerary_consistent(p, &w, config.boundary_tol);
                let candidate = PeriodicPoint {
                    point: p,
                    word: w,
                    multiplier,
                    kind: PeriodicKind::Attracting,
                    consistency,
                };
                cycle.push(classify_periodic(f, &candidate, config));
                p = f.map(word[i]).apply(p);
            }
            // A closure candidate is kept only if it is a genuine ghost.
            if check == ItineraryCheck::ConsistentOnClosure
                && cycle.iter().any(|pp| pp.kind != PeriodicKind::Ghost)
            {
                continue;
            }
            found.extend(cycle);
        }
    }

    found.sort_by(|a, b| {
        (a.word.len(), a.consistency, &a.word).cmp(&(b.word.len(), b.consistency, &b.word))
    });
    let mut kept: Vec<PeriodicPoint> = Vec::with_capacity(found.len());
    for pp in found {
        if !kept.iter().any(|q| q.point.chordal_dist(pp.point) <= config.dedup_tol) {
            kept.push(pp);
        }
    }
    Ok(kept)
}

/// Kind of `pp` from its multiplier, word-map class and itinerary. An
/// attracting closure candidate that fails ghost verification is reported as
/// `Attracting`; [`find_periodic`] discards those.
pub fn classify_periodic(f: &Pmt, pp: &PeriodicPoint, config: &PeriodicConfig) -> PeriodicPoint {
    let r = pp.multiplier.norm();
    let kind = if r < 1.0 - config.neutral_tol {
        if pp.consistency == ItineraryCheck::ConsistentOnClosure && is_ghost(f, pp, config) {
            PeriodicKind::Ghost
        } else {
            PeriodicKind::Attracting
        }
    } else if r > 1.0 + config.neutral_tol {
        PeriodicKind::Repelling
    } else if f.word_map(&pp.word).classify(CLASS_TOL) == MapClass::Parabolic {
        PeriodicKind::Parabolic
    } else if is_root_of_unity(pp.multiplier, config.root_of_unity_max) {
        PeriodicKind::Identity
    } else {
        PeriodicKind::Elliptic
    };
    PeriodicPoint { kind, ..pp.clone() }
}

fn is_root_of_unity(m: Complex64, max_order: u32) -> bool {
    let turns = m.arg() / TAU;
    (1..=max_order).any(|q| {
        let x = turns * q as f64;
        (x - x.round()).abs() * TAU <= 1e-8
    })
}

/// Points of the cycle through `pp`, following its word.
fn cycle_points(f: &Pmt, pp: &PeriodicPoint) -> Vec<SpherePoint> {
    let mut p = pp.point;
    let mut out = Vec::with_capacity(pp.word.len());
    for &k in &pp.word {
        out.push(p);
        p = f.map(k).apply(p);
    }
    out
}

/// The three ghost signals beyond the attracting multiplier: the cycle
/// touches a preimage of the boundary, and orbits seeded in the adjacent
/// open region around `pp` converge to the cycle.
fn is_ghost(f: &Pmt, pp: &PeriodicPoint, config: &PeriodicConfig) -> bool {
    let cycle = cycle_points(f, pp);
    let partition = f.partition();
    let touches = cycle.iter().any(|&q| partition.boundary_clearance(q) <= GHOST_PROXIMITY);
    if !touches {
        return false;
    }
    let k = pp.word[0];
    let mut seeded = 0;
    for j in 0..GHOST_SEEDS {
        let seed = seed_near(pp.point, TAU * (j as f64 + 0.5) / GHOST_SEEDS as f64);
        if partition.region_margin(k, seed) >= -config.boundary_tol {
            continue;
        }
        seeded += 1;
        let rec = f.orbit(seed, GHOST_ORBIT_STEPS, config.boundary_tol, 0.0);
        let tail = &rec.points[rec.points.len().saturating_sub(pp.word.len())..];
        let close = tail
            .iter()
            .any(|&q| cycle.iter().any(|&c| c.chordal_dist(q) <= GHOST_CAPTURE));
        if !close {
            return false;
        }
    }
    seeded > 0
}

/// Point at chordal distance about [`GHOST_SEED_RADIUS`] from `p` in
/// direction `theta` of the local chart.
fn seed_near(p: SpherePoint, theta: f64) -> SpherePoint {
    let step = Complex64::from_polar(1.0, theta);
    match p.as_complex() {
        Some(z) if z.norm() <= 1.0 => {
            let r = GHOST_SEED_RADIUS * (1.0 + z.norm_sqr()) / 2.0;
            SpherePoint::finite(z + step * r)
        }
        _ => {
            let w = p.as_complex().map_or(Complex64::new(0.0, 0.0), |z| z.inv());
            let r = GHOST_SEED_RADIUS * (1.0 + w.norm_sqr()) / 2.0;
            let w = w + step * r;
            SpherePoint::finite(w.inv())
        }
    }
}

/// Points of each attracting cycle, one entry per cycle, in census order.
/// Ghosts are excluded.
pub fn attracting_cycles(census: &[PeriodicPoint]) -> Vec<Vec<SpherePoint>> {
    let mut cycles: Vec<(Word, Vec<SpherePoint>)> = Vec::new();
    for pp in census.iter().filter(|pp| pp.kind == PeriodicKind::Attracting) {
        let key = canonical_rotation(&pp.word);
        match cycles.iter_mut().find(|(w, _)| *w == key) {
            Some((_, points)) => points.push(pp.point),
            None => cycles.push((key, vec![pp.point])),
        }
    }
    cycles.into_iter().map(|(_, points)| points).collect()
}

fn canonical_rotation(word: &[usize]) -> Word {
    (0..word.len()).map(|i| rotate(word, i)).min().unwrap_or_default()
}
