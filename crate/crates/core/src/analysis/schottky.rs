use alloc::format;
use alloc::vec::Vec;

use crate::pmt::Pmt;
use crate::spiderweb::{Arc, SpiderwebApprox};
use crate::{Error, Result};

/// How the preimages of the boundary under one branch sit in its region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchottkyCase {
    /// Every component's preimage lies inside the region.
    AllInside,
    /// Exactly the preimage of this component lies inside.
    OneInside(usize),
    /// No preimage meets the region.
    NoneInside,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchottkyLevel {
    pub level: usize,
    pub pass: bool,
    /// Level 1 only: the case met by each branch, `None` where none holds.
    pub cases: Vec<Option<SchottkyCase>>,
    /// First branch that failed, at level 1.
    pub failed_branch: Option<usize>,
    /// A clipped arc witnessing the failure.
    pub witness: Option<Arc>,
    pub arcs: usize,
    /// Arcs dropped by the spiderweb's length threshold at this level.
    pub dropped: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchottkyResult {
    pub levels: Vec<SchottkyLevel>,
    pub pass: bool,
}

impl SchottkyResult {
    pub fn first_failure(&self) -> Option<&SchottkyLevel> {
        self.levels.iter().find(|l| !l.pass)
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Placement {
    Inside,
    Outside,
    Cut,
}

/// Level 1: each branch must have all, exactly one, or none of the boundary
/// preimages inside its region, and none may be cut. Levels `2..=depth`:
/// every arc must be a whole circline.
pub fn schottky_hypothesis_check(f: &Pmt, s: &SpiderwebApprox, depth: usize) -> Result<SchottkyResult> {
    if depth == 0 || s.depth() < depth {
        return Err(Error::BadParameter(format!(
            "Schottky check to depth {depth} needs a spiderweb of at least that depth (have {})",
            s.depth()
        )));
    }
    let components = f.partition().boundary_components().len();
    let mut levels = Vec::with_capacity(depth);

    let level1 = s.level(1);
    let mut cases = Vec::with_capacity(f.len());
    let mut failed_branch = None;
    let mut witness = None;
    for k in 0..f.len() {
        let placements: Vec<Placement> = (0..components)
            .map(|j| {
                let mut arcs = level1.iter().filter(|a| a.word[0] == k && a.source == j);
                match (arcs.next(), arcs.next()) {
                    (None, _) => Placement::Outside,
                    (Some(a), None) if a.is_full() => Placement::Inside,
                    (Some(a), _) => {
                        if witness.is_none() {
                            witness = Some(a.clone());
                        }
                        Placement::Cut
                    }
                }
            })
            .collect();
        let inside: Vec<usize> =
            (0..components).filter(|&j| placements[j] == Placement::Inside).collect();
        let case = if placements.contains(&Placement::Cut) {
            None
        } else if inside.len() == components {
            Some(SchottkyCase::AllInside)
        } else if inside.len() == 1 {
            Some(SchottkyCase::OneInside(inside[0]))
        } else if inside.is_empty() {
            Some(SchottkyCase::NoneInside)
        } else {
            None
        };
        if case.is_none() && failed_branch.is_none() {
            failed_branch = Some(k);
        }
        cases.push(case);
    }
    levels.push(SchottkyLevel {
        level: 1,
        pass: failed_branch.is_none(),
        cases,
        failed_branch,
        witness,
        arcs: level1.len(),
        dropped: s.stats()[1].dropped,
    });

    for n in 2..=depth {
        let arcs = s.level(n);
        let witness = arcs.iter().find(|a| !a.is_full()).cloned();
        levels.push(SchottkyLevel {
            level: n,
            pass: witness.is_none(),
            cases: Vec::new(),
            failed_branch: None,
            witness,
            arcs: arcs.len(),
            dropped: s.stats()[n].dropped,
        });
    }
    let pass = levels.iter().all(|l| l.pass);
    Ok(SchottkyResult { levels, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::spiderweb::{backward_arcs, SpiderwebConfig};
    use num_complex::Complex64;

    fn check(f: &Pmt, depth: usize) -> SchottkyResult {
        let s = backward_arcs(f, &SpiderwebConfig::with_depth(depth)).unwrap();
        schottky_hypothesis_check(f, &s, depth).unwrap()
    }

    #[test]
    fn two_scalings_pass_with_empty_preimages() {
        let f = presets::two_scalings(Complex64::new(0.5, 0.0)).unwrap();
        let r = check(&f, 5);
        assert!(r.pass);
        assert_eq!(r.levels.len(), 5);
        assert_eq!(r.levels[0].cases, alloc::vec![Some(SchottkyCase::NoneInside); 2]);
    }

    #[test]
    fn ghost_level_one_is_empty() {
        // Both preimage circles only touch the closed regions at 0.
        let f = presets::ghost().unwrap();
        let r = check(&f, 3);
        assert!(r.pass);
        assert_eq!(r.levels[0].arcs, 0);
    }

    #[test]
    fn tent_passes_with_copies_of_the_boundary() {
        let f = presets::tent(Complex64::new(-0.5, 0.0), 1.0, Complex64::new(3.5, 0.0)).unwrap();
        let r = check(&f, 5);
        assert!(r.pass, "{:?}", r.first_failure());
        assert_eq!(r.levels[0].cases, alloc::vec![Some(SchottkyCase::AllInside); 2]);
    }

    #[test]
    fn cut_preimage_fails_at_level_one() {
        let f = presets::perturbed_pair(Complex64::new(0.99, 0.01)).unwrap();
        let r = check(&f, 2);
        let fail = r.first_failure().unwrap();
        assert_eq!(fail.level, 1);
        assert_eq!(fail.failed_branch, Some(0));
        assert!(!fail.witness.as_ref().unwrap().is_full());
    }

    #[test]
    fn depth_beyond_spiderweb_is_rejected() {
        let f = presets::ghost().unwrap();
        let s = backward_arcs(&f, &SpiderwebConfig::with_depth(2)).unwrap();
        assert!(schottky_hypothesis_check(&f, &s, 3).is_err());
    }
}
