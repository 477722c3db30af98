//! Text and JSON output. Region indices and words are 1-based here, and
//! points are `[re, im]` or `"infinity"`.
//!
//! Arc files have one arc per line, whitespace separated:
//!
//! ```text
//! level word source A B_re B_im D theta0 theta1 kind
//! ```
//!
//! `word` is dot-joined (`-` at level 0), `source` the boundary component,
//! `A, B, D` the circline coefficients, `theta0..theta1` the counterclockwise
//! span in the circline's angle parameter and `kind` is `full` or `arc`.
//!
//! JSON reports are pretty-printed with sorted keys, so identical runs give
//! identical bytes.

use std::fmt::Write as _;

use pmt_core::analysis::{
    AlphaExpansion, AlphaSample, HyperbolicityVerdict, PeriodicPoint, SchottkyCase, StabilityReport,
    SweepResult,
};
use pmt_core::pmt::{ItineraryCheck, Word};
use pmt_core::sphere::SpherePoint;
use pmt_core::spiderweb::{Arc, Span, SpiderwebApprox};
use pmt_core::Complex64;
use serde_json::{json, Value};

use crate::scene::Scene;

pub fn point(p: SpherePoint) -> Value {
    match p.as_complex() {
        Some(z) => json!([z.re, z.im]),
        None => json!("infinity"),
    }
}

pub fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn word(w: &[usize]) -> Value {
    json!(w.iter().map(|k| k + 1).collect::<Vec<_>>())
}

pub fn word_text(w: &Word) -> String {
    if w.is_empty() {
        return "-".into();
    }
    w.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(".")
}

fn point_text(p: SpherePoint) -> String {
    match p.as_complex() {
        Some(z) => format!("{:+.12} {:+.12}i", z.re, z.im),
        None => "infinity".into(),
    }
}

pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn scene_json(scene: &Scene) -> Value {
    serde_json::to_value(scene).expect("scenes serialize")
}

pub fn arcs_text(s: &SpiderwebApprox) -> String {
    let mut out = String::from("# level word source A B_re B_im D theta0 theta1 kind\n");
    for a in s.arcs() {
        write_arc(&mut out, a);
    }
    out
}

fn write_arc(out: &mut String, a: &Arc) {
    let (ca, b, d) = a.circline.coefficients();
    // `x + 0.0` turns -0 into 0 so equal arcs print identically.
    let z = |x: f64| x + 0.0;
    let (t0, t1, kind) = match a.span {
        Span::Full => (0.0, std::f64::consts::TAU, "full"),
        Span::Interval { start, end } => (start, end, "arc"),
    };
    let _ = writeln!(
        out,
        "{} {} {} {:e} {:e} {:e} {:e} {:e} {:e} {}",
        a.level,
        word_text(&a.word),
        a.source + 1,
        z(ca),
        z(b.re),
        z(b.im),
        z(d),
        z(t0),
        z(t1),
        kind
    );
}

pub fn spiderweb_json(scene: &Scene, s: &SpiderwebApprox) -> Value {
    let levels: Vec<Value> = s
        .stats()
        .iter()
        .enumerate()
        .map(|(n, st)| {
            json!({
                "level": n,
                "arcs": st.arcs,
                "full_arcs": s.level(n).iter().filter(|a| a.is_full()).count(),
                "length": st.length,
                "dropped": st.dropped,
                "dropped_length": st.dropped_length,
            })
        })
        .collect();
    json!({
        "config": scene_json(scene),
        "depth": s.depth(),
        "levels": levels,
        "total_arcs": s.arc_count(),
        "truncated_length": s.truncated_length(),
    })
}

pub fn spiderweb_summary(s: &SpiderwebApprox) -> String {
    let mut out = String::from("level  arcs  full  dropped  length\n");
    for (n, st) in s.stats().iter().enumerate() {
        let full = s.level(n).iter().filter(|a| a.is_full()).count();
        let _ = writeln!(out, "{n:>5}  {:>4}  {full:>4}  {:>7}  {:.6e}", st.arcs, st.dropped, st.length);
    }
    let _ = writeln!(out, "total arcs {}, truncated length {:.3e}", s.arc_count(), s.truncated_length());
    out
}

fn consistency(c: ItineraryCheck) -> &'static str {
    match c {
        ItineraryCheck::Consistent => "consistent",
        ItineraryCheck::ConsistentOnClosure => "closure",
        ItineraryCheck::Inconsistent => "inconsistent",
    }
}

fn periodic_json(pp: &PeriodicPoint) -> Value {
    json!({
        "point": point(pp.point),
        "word": word(&pp.word),
        "period": pp.period(),
        "multiplier": complex(pp.multiplier),
        "multiplier_abs": pp.multiplier.norm(),
        "kind": pp.kind.name(),
        "itinerary": consistency(pp.consistency),
    })
}

pub fn periodics_json(scene: &Scene, census: &[PeriodicPoint]) -> Value {
    json!({
        "config": scene_json(scene),
        "complete_up_to_period": scene.analysis.max_len,
        "points": census.iter().map(periodic_json).collect::<Vec<_>>(),
    })
}

pub fn periodics_table(census: &[PeriodicPoint]) -> String {
    let mut out = String::from("point                                  word          |m|          kind\n");
    for pp in census {
        let _ = writeln!(
            out,
            "{:<38} {:<13} {:<12.6} {}",
            point_text(pp.point),
            word_text(&pp.word),
            pp.multiplier.norm(),
            pp.kind.name()
        );
    }
    out
}

fn verdict_json(v: &HyperbolicityVerdict) -> Value {
    match v {
        HyperbolicityVerdict::Hyperbolic => json!({ "verdict": "hyperbolic" }),
        HyperbolicityVerdict::NotHyperbolic(pp) => {
            json!({ "verdict": "not_hyperbolic", "witness": periodic_json(pp) })
        }
        HyperbolicityVerdict::Inconclusive => json!({ "verdict": "inconclusive" }),
    }
}

fn alpha_json(sample: &AlphaSample, a: &AlphaExpansion) -> Value {
    let samples = sample.points().len();
    match a {
        AlphaExpansion::Expanding { n, min_product, skipped, .. } => json!({
            "verdict": "expanding", "n": n, "min_product": min_product,
            "samples": samples, "skipped": skipped,
        }),
        AlphaExpansion::NotExpanding { witness, product, n, skipped } => json!({
            "verdict": "not_expanding", "n": n, "witness": point(*witness), "product": product,
            "samples": samples, "skipped": skipped,
        }),
        AlphaExpansion::Empty => json!({ "verdict": "empty_alpha", "samples": 0 }),
    }
}

fn case_json(c: &Option<SchottkyCase>) -> Value {
    match c {
        Some(SchottkyCase::AllInside) => json!("all_inside"),
        Some(SchottkyCase::OneInside(j)) => json!(format!("one_inside:{}", j + 1)),
        Some(SchottkyCase::NoneInside) => json!("none_inside"),
        None => json!("fails"),
    }
}

pub fn stability_json(scene: &Scene, r: &StabilityReport) -> Value {
    let h = &r.hyperbolicity;
    let schottky: Vec<Value> = r
        .schottky
        .levels
        .iter()
        .map(|l| {
            json!({
                "level": l.level,
                "pass": l.pass,
                "arcs": l.arcs,
                "dropped": l.dropped,
                "cases": l.cases.iter().map(case_json).collect::<Vec<_>>(),
                "failed_region": l.failed_branch.map(|k| k + 1),
                "witness": l.witness.as_ref().map(|a| json!({
                    "word": word(&a.word), "source": a.source + 1, "midpoint": point(a.midpoint()),
                })),
            })
        })
        .collect();
    json!({
        "config": scene_json(scene),
        "complete_up_to_period": r.census_max_len,
        "loxodromic_components": r.loxodromic_components,
        "component_classes": r.component_classes.iter().map(|c| format!("{c:?}").to_lowercase()).collect::<Vec<_>>(),
        "hyperbolic": verdict_json(&h.verdict),
        "hyperbolicity_evidence": {
            "attracting_cycles": h.attracting_cycles.iter()
                .map(|c| c.iter().map(|&p| point(p)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "regular_seeds": h.regular_seeds,
            "boundary_seeds": h.boundary_seeds,
            "matched_seeds": h.matched_seeds,
            "unmatched_omega": h.unmatched.iter().map(|&p| point(p)).collect::<Vec<_>>(),
            "unresolved_fraction": h.unresolved_fraction,
        },
        "periodic_points": h.census.iter().map(periodic_json).collect::<Vec<_>>(),
        "alpha_expanding": alpha_json(&r.alpha_sample, &r.alpha),
        "schottky": { "pass": r.schottky.pass, "levels": schottky },
        "wandering_suspected": r.wandering_suspected,
        "sufficient_conditions_met": r.sufficient_conditions_met,
    })
}

pub fn sweep_json(scene: &Scene, family: &str, r: &SweepResult) -> Value {
    let mut distinct: Vec<_> = r.signatures.iter().flatten().collect();
    distinct.sort();
    distinct.dedup();
    let index = |s: &Option<_>| -> Value {
        match s {
            Some(s) => json!(distinct.binary_search(&s).expect("listed") + 1),
            None => Value::Null,
        }
    };
    let signatures: Vec<Value> = distinct
        .iter()
        .map(|s| {
            json!({
                "attracting_periods": s.attracting_periods,
                "ghosts": s.ghosts,
                "basins": s.basins,
                "arc_counts": s.arc_counts,
                "multipliers": s.multipliers,
            })
        })
        .collect();
    let g = r.grid;
    json!({
        "config": scene_json(scene),
        "family": family,
        "grid": { "re": g.re, "im": g.im, "nx": g.nx, "ny": g.ny },
        "signatures": signatures,
        "cells": (0..g.ny).map(|j| (0..g.nx).map(|i| index(&r.signatures[j * g.nx + i])).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "change_mask": (0..g.ny).map(|j| r.change_mask[j * g.nx..(j + 1) * g.nx].iter()
            .map(|&m| u8::from(m)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "changed_cells": r.changed_cells(),
        "distinct": r.distinct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use pmt_core::presets;
    use pmt_core::spiderweb::{backward_arcs, SpiderwebConfig};

    #[test]
    fn arc_lines() {
        let f = presets::two_scalings(Complex64::new(0.5, 0.0)).unwrap();
        let s = backward_arcs(&f, &SpiderwebConfig::with_depth(2)).unwrap();
        let text = arcs_text(&s);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], "0 - 1 1e0 0e0 0e0 -1e0 0e0 6.283185307179586e0 full");
    }

    #[test]
    fn words_are_one_based() {
        assert_eq!(word_text(&vec![0, 1, 1]), "1.2.2");
        assert_eq!(word(&[1]), json!([2]));
        assert_eq!(point(SpherePoint::Infinity), json!("infinity"));
    }
}
