//! Proper linear separations of Gale diagrams.
//!
//! Any hyperplane through the origin that strictly separates a spanning
//! diagram can be rotated, keeping the origin and the strict side of every
//! other vector, until it contains `m-1` linearly independent vectors. So
//! enumerating the hyperplanes spanned by `(m-1)`-subsets, and pushing each
//! contained vector to either side, reaches every realizable partition.

mod ham_sandwich;
mod schedule;

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::rational::{dot, sign};
use crate::exact::{LinearProgram, LpStatus, Rational, Relation};
use crate::gale::{GaleDiagram, LinearSeparation};

pub(crate) use ham_sandwich::complement;
pub use ham_sandwich::{ham_sandwich_cut, HamSandwichCut, HamSandwichInstance};
pub use schedule::{
    schedule_lemma4, schedule_lemma5, Lemma4Case, ScheduleStep, ScheduleTrace,
};

/// A hyperplane through the origin spanned by `on_plane` (empty for `m = 1`).
#[derive(Debug, Clone)]
pub(crate) struct CandidatePlane {
    pub normal: Vec<Rational>,
    pub on_plane: Vec<usize>,
    /// sign of every vector against `normal`; zero exactly on `on_plane`
    pub signs: Vec<i8>,
}

impl CandidatePlane {
    /// Side sizes after pushing the on-plane vectors selected by `mask`
    /// (bit `j` set = `on_plane[j]` goes positive).
    pub fn positive_count(&self, mask: usize) -> usize {
        let off = self.signs.iter().filter(|&&s| s > 0).count();
        off + mask.count_ones() as usize
    }

    pub fn assignment(&self, mask: usize) -> Vec<(usize, bool)> {
        self.on_plane
            .iter()
            .enumerate()
            .map(|(j, &i)| (i, mask >> j & 1 == 1))
            .collect()
    }
}

/// Hyperplanes through every `(m-1)`-subset in label order. Requires the
/// spanning property, which makes each subset independent and keeps every
/// other vector off the plane.
pub(crate) fn candidate_planes(g: &GaleDiagram) -> Vec<CandidatePlane> {
    let m = g.m();
    let subsets: Vec<Vec<usize>> = if m <= 1 {
        vec![Vec::new()]
    } else {
        g.label_order().into_iter().combinations(m - 1).collect()
    };
    subsets
        .into_par_iter()
        .filter_map(|s| {
            let normal = if s.is_empty() {
                let mut v = vec![Rational::zero(); m];
                v[0] = Rational::one();
                v
            } else {
                let kernel = g.matrix_of(&s).kernel_basis();
                if kernel.len() != 1 {
                    return None;
                }
                kernel.into_iter().next()?
            };
            let signs: Vec<i8> = g.vectors().iter().map(|v| sign(&dot(&v.coords, &normal))).collect();
            let zeros = signs.iter().filter(|&&x| x == 0).count();
            (zeros == s.len()).then_some(CandidatePlane {
                normal,
                on_plane: s,
                signs,
            })
        })
        .collect()
}

/// Every partition of the diagram with part sizes `{s1, s2}` realizable by a
/// hyperplane through the origin, sorted canonically.
pub fn enumerate_separations(g: &GaleDiagram, sizes: (usize, usize)) -> Result<Vec<LinearSeparation>> {
    let (s1, s2) = sizes;
    if s1 + s2 != g.len() {
        return Err(Error::Sizes(format!(
            "sizes ({s1}, {s2}) do not sum to {} vectors",
            g.len()
        )));
    }
    g.require_spanning()?;
    let per_plane: Vec<Vec<LinearSeparation>> = candidate_planes(g)
        .par_iter()
        .map(|plane| {
            (0..1usize << plane.on_plane.len())
                .filter(|&mask| {
                    let pos = plane.positive_count(mask);
                    pos == s1 || pos == s2
                })
                .map(|mask| LinearSeparation::from_plane(g, &plane.normal, &plane.assignment(mask)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut unique: BTreeMap<(Vec<String>, Vec<String>), LinearSeparation> = BTreeMap::new();
    for sep in per_plane.into_iter().flatten() {
        unique
            .entry((sep.side_a.clone(), sep.side_b.clone()))
            .or_insert(sep);
    }
    Ok(unique.into_values().collect())
}

/// Independent realizability re-check: an LP looking for a normal `w` with
/// `w·g ≥ 1` on `side_a` and `w·g ≤ -1` on `side_b`.
pub fn is_strictly_realizable(g: &GaleDiagram, sep: &LinearSeparation) -> Result<bool> {
    if sep.side_a.len() + sep.side_b.len() != g.len() {
        return Ok(false);
    }
    let mut lp = LinearProgram::new(g.m());
    lp.free = vec![true; g.m()];
    for v in g.vectors() {
        match sep.side_of(&v.label) {
            Some(true) => lp.constrain(v.coords.clone(), Relation::Ge, Rational::one()),
            Some(false) => lp.constrain(v.coords.clone(), Relation::Le, -Rational::one()),
            None => return Ok(false),
        }
    }
    Ok(lp.solve()?.status == LpStatus::Optimal)
}
