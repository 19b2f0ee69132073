//! Simultaneous bisection of two colour classes of a Gale diagram (with the
//! origin as the third class) by a hyperplane through the origin.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exact::rational::{dot, sign};
use crate::gale::{GaleDiagram, LinearSeparation};

use super::{candidate_planes, enumerate_separations, CandidatePlane};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamSandwichInstance {
    pub ambient: usize,
    pub c1: Vec<String>,
    pub c2: Vec<String>,
    /// the origin is the third point set; always true for cuts through it
    pub c3_origin: bool,
}

impl HamSandwichInstance {
    pub fn new(g: &GaleDiagram, mut c1: Vec<String>, mut c2: Vec<String>) -> Result<Self> {
        c1.sort();
        c2.sort();
        for l in c1.iter().chain(&c2) {
            g.index_of(l)?;
        }
        if let Some(l) = c1.iter().find(|l| c2.binary_search(l).is_ok()) {
            return Err(Error::Sizes(format!("`{l}` is in both colour classes")));
        }
        Ok(Self {
            ambient: g.m(),
            c1,
            c2,
            c3_origin: true,
        })
    }

    fn colour_sets(&self) -> [&[String]; 2] {
        [&self.c1, &self.c2]
    }

    /// Bisection bound: each open side of the hyperplane with normal
    /// `normal` holds at most `⌊|c|/2⌋` of each colour.
    pub fn bisected_by(&self, g: &GaleDiagram, normal: &[crate::exact::Rational]) -> Result<bool> {
        for colour in self.colour_sets() {
            let (mut pos, mut neg) = (0, 0);
            for l in colour {
                match sign(&dot(g.vector(g.index_of(l)?), normal)) {
                    1 => pos += 1,
                    -1 => neg += 1,
                    _ => {}
                }
            }
            let half = colour.len() / 2;
            if pos > half || neg > half {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// After rotation every point is strictly on a side; each side then holds
    /// at most `⌈|c|/2⌉` of each colour.
    pub fn balanced(&self, sep: &LinearSeparation) -> bool {
        self.colour_sets().iter().all(|colour| {
            let a = colour.iter().filter(|l| sep.side_of(l) == Some(true)).count();
            let b = colour.len() - a;
            let cap = colour.len().div_ceil(2);
            a <= cap && b <= cap
        })
    }
}

#[derive(Debug, Clone)]
pub struct HamSandwichCut {
    pub separation: LinearSeparation,
    pub fallback: bool,
}

impl HamSandwichCut {
    /// Re-counts both guarantees on the returned cut: the open half-spaces
    /// of the unrotated hyperplane respect `⌊|c|/2⌋`, and the strict sides
    /// respect `⌈|c|/2⌉`.
    pub fn satisfies(&self, g: &GaleDiagram, inst: &HamSandwichInstance) -> Result<bool> {
        let plane = match &self.separation.rotation {
            Some(r) => r.plane_normal.clone(),
            None => self.separation.witness_normal.clone(),
        };
        Ok(inst.bisected_by(g, &plane)? && inst.balanced(&self.separation))
    }
}

fn try_plane(
    g: &GaleDiagram,
    inst: &HamSandwichInstance,
    plane: &CandidatePlane,
    sizes: (usize, usize),
) -> Result<Option<LinearSeparation>> {
    if !inst.bisected_by(g, &plane.normal)? {
        return Ok(None);
    }
    for mask in 0..1usize << plane.on_plane.len() {
        let pos = plane.positive_count(mask);
        if pos != sizes.0 && pos != sizes.1 {
            continue;
        }
        let sep = LinearSeparation::from_plane(g, &plane.normal, &plane.assignment(mask))?;
        if inst.balanced(&sep) {
            return Ok(Some(sep));
        }
    }
    Ok(None)
}

/// Finds a hyperplane through the origin bisecting both colour classes and
/// rotates it into a separation with part sizes `{s1, s2}`.
///
/// Candidates are the hyperplanes through the origin and `m-1` diagram
/// vectors (pairs, in `R^3`), in label order; for each bisecting candidate
/// the on-plane vectors are pushed to sides in mask order until sizes and
/// balance hold. If no candidate works, proper separations from the full
/// enumeration are filtered for the same conditions.
pub fn ham_sandwich_cut(
    g: &GaleDiagram,
    inst: &HamSandwichInstance,
    sizes: (usize, usize),
) -> Result<HamSandwichCut> {
    if !inst.c3_origin {
        return Err(Error::Unsupported("cuts must pass through the origin".into()));
    }
    if g.m() == 0 || g.m() > 3 {
        return Err(Error::Unsupported(format!(
            "ham sandwich cuts are implemented for m <= 3, got m = {}",
            g.m()
        )));
    }
    if inst.ambient != g.m() {
        return Err(Error::Dimension("instance built for another diagram".into()));
    }
    if sizes.0 + sizes.1 != g.len() {
        return Err(Error::Sizes(format!(
            "sizes ({}, {}) do not sum to {}",
            sizes.0,
            sizes.1,
            g.len()
        )));
    }
    g.require_spanning()?;
    for plane in candidate_planes(g) {
        if let Some(sep) = try_plane(g, inst, &plane, sizes)? {
            return Ok(HamSandwichCut {
                separation: sep,
                fallback: false,
            });
        }
    }
    for sep in enumerate_separations(g, sizes)? {
        let plane = sep
            .rotation
            .as_ref()
            .map(|r| r.plane_normal.clone())
            .unwrap_or_else(|| sep.witness_normal.clone());
        if inst.balanced(&sep) && inst.bisected_by(g, &plane)? {
            return Ok(HamSandwichCut {
                separation: sep,
                fallback: true,
            });
        }
    }
    Err(Error::SearchIncomplete(format!(
        "no bisecting separation with sizes ({}, {}) for c1={:?} c2={:?}",
        sizes.0, sizes.1, inst.c1, inst.c2
    )))
}

/// All labels of `g` not in `c1`.
pub(crate) fn complement(g: &GaleDiagram, c1: &[String]) -> Vec<String> {
    let set: HashSet<&str> = c1.iter().map(String::as_str).collect();
    let mut rest: Vec<String> = g
        .labels()
        .into_iter()
        .filter(|l| !set.contains(l.as_str()))
        .collect();
    rest.sort();
    rest
}
