//! Crossing of vertex-disjoint simplices, pair counting, Van Kampen–Flores
//! witnesses and extension of crossing pairs to larger simplices.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::configs::{lift_odd, PointConfig, SimplexPair, DUMMY_LABEL};
use crate::error::{Error, Result};
use crate::exact::{lp_max_min, LpStatus, RatMatrix, Rational};

/// Certificate that two simplices share a relative-interior point:
/// strictly positive barycentric coefficients on both sides reaching the
/// same `point`. Coefficients follow the sorted labels of each side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingWitness {
    pub pair: SimplexPair,
    pub point: Vec<Rational>,
    pub left_coeffs: Vec<Rational>,
    pub right_coeffs: Vec<Rational>,
}

impl CrossingWitness {
    /// Re-checks positivity, normalization and the common point with plain
    /// arithmetic, independently of how the witness was found.
    pub fn validate(&self, p: &PointConfig) -> Result<bool> {
        let d = p.dimension();
        let combine = |labels: &[String], coeffs: &[Rational]| -> Result<Option<Vec<Rational>>> {
            if labels.len() != coeffs.len()
                || coeffs.iter().any(|c| !c.is_positive())
                || coeffs.iter().sum::<Rational>() != Rational::one()
            {
                return Ok(None);
            }
            let mut acc = vec![Rational::zero(); d];
            for (l, c) in labels.iter().zip(coeffs) {
                let x = p.coords(p.index_of(l)?);
                for (a, xi) in acc.iter_mut().zip(x) {
                    *a += c * xi;
                }
            }
            Ok(Some(acc))
        };
        if self.pair.left.iter().any(|l| self.pair.right.contains(l)) {
            return Ok(false);
        }
        let l = combine(&self.pair.left, &self.left_coeffs)?;
        let r = combine(&self.pair.right, &self.right_coeffs)?;
        Ok(matches!((l, r), (Some(a), Some(b)) if a == self.point && b == self.point))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingCount {
    pub config_id: String,
    pub part_sizes: (usize, usize),
    pub total_pairs_checked: usize,
    pub crossing_pairs: usize,
    /// Filled only when retention was requested; ordered like the enumeration.
    pub witnesses: Vec<CrossingWitness>,
}

/// Relative-interior test by index. `left` and `right` must be disjoint.
pub fn cross_indices(
    p: &PointConfig,
    left: &[usize],
    right: &[usize],
) -> Result<Option<CrossingWitness>> {
    if left.is_empty() || right.is_empty() {
        return Err(Error::Sizes("both simplices need at least one vertex".into()));
    }
    if let Some(&s) = left.iter().find(|i| right.contains(i)) {
        return Err(Error::SharedVertex(p.label(s).to_string()));
    }
    let mut left = left.to_vec();
    let mut right = right.to_vec();
    left.sort_by(|&a, &b| p.label(a).cmp(p.label(b)));
    right.sort_by(|&a, &b| p.label(a).cmp(p.label(b)));

    let d = p.dimension();
    let nl = left.len();
    let nv = nl + right.len();
    // rows: d coordinate rows, then Σλ = 1 and Σμ = 1
    let mut a = RatMatrix::zeros(d + 2, nv);
    for (col, &i) in left.iter().enumerate() {
        for k in 0..d {
            a[(k, col)] = p.coords(i)[k].clone();
        }
        a[(d, col)] = Rational::one();
    }
    for (col, &j) in right.iter().enumerate() {
        for k in 0..d {
            a[(k, nl + col)] = -p.coords(j)[k].clone();
        }
        a[(d + 1, nl + col)] = Rational::one();
    }
    let mut b = vec![Rational::zero(); d + 2];
    b[d] = Rational::one();
    b[d + 1] = Rational::one();

    let res = lp_max_min(&a, &b, nv)?;
    if res.status != LpStatus::Optimal || !res.objective.as_ref().is_some_and(|t| t.is_positive())
    {
        return Ok(None);
    }
    let x = res.solution.expect("optimal result carries a solution");
    let (lc, rc) = x.split_at(nl);
    let mut point = vec![Rational::zero(); d];
    for (c, &i) in lc.iter().zip(&left) {
        for (acc, xi) in point.iter_mut().zip(p.coords(i)) {
            *acc += c * xi;
        }
    }
    let names = |idx: &[usize]| idx.iter().map(|&i| p.label(i).to_string()).collect();
    let (pair, swapped) = SimplexPair::canonical(names(&left), names(&right))?;
    let (left_coeffs, right_coeffs) = if swapped {
        (rc.to_vec(), lc.to_vec())
    } else {
        (lc.to_vec(), rc.to_vec())
    };
    Ok(Some(CrossingWitness {
        pair,
        point,
        left_coeffs,
        right_coeffs,
    }))
}

/// Whether the simplices on label sets `i` and `j` share a point of their
/// relative interiors. Pairs with a common vertex are rejected.
pub fn simplices_cross<S: AsRef<str>>(
    p: &PointConfig,
    i: &[S],
    j: &[S],
) -> Result<Option<CrossingWitness>> {
    let li = p.indices_of(i)?;
    let lj = p.indices_of(j)?;
    cross_indices(p, &li, &lj)
}

/// All unordered vertex-disjoint pairs `(I, J)` with `|I| = p`, `|J| = q`, in
/// label order; when `p == q` the side holding the smaller first label is
/// taken as `I` so each pair appears once.
pub fn disjoint_pairs(cfg: &PointConfig, p: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let order = cfg.label_order();
    let mut out = Vec::new();
    for left in order.iter().copied().combinations(p) {
        let rest: Vec<usize> = order.iter().copied().filter(|i| !left.contains(i)).collect();
        for right in rest.into_iter().combinations(q) {
            if p == q && cfg.label(right[0]) < cfg.label(left[0]) {
                continue;
            }
            out.push((left.clone(), right));
        }
    }
    out
}

pub fn count_crossing_pairs(
    cfg: &PointConfig,
    p: usize,
    q: usize,
    retain_witnesses: bool,
) -> Result<CrossingCount> {
    if p == 0 || q == 0 || p + q > cfg.len() {
        return Err(Error::Sizes(format!(
            "part sizes ({p}, {q}) for {} points",
            cfg.len()
        )));
    }
    cfg.require_general_position()?;
    let pairs = disjoint_pairs(cfg, p, q);
    let verdicts: Vec<Option<CrossingWitness>> = pairs
        .par_iter()
        .map(|(l, r)| cross_indices(cfg, l, r))
        .collect::<Result<_>>()?;
    let crossing_pairs = verdicts.iter().filter(|v| v.is_some()).count();
    Ok(CrossingCount {
        config_id: config_id(cfg),
        part_sizes: (p, q),
        total_pairs_checked: pairs.len(),
        crossing_pairs,
        witnesses: if retain_witnesses {
            verdicts.into_iter().flatten().collect()
        } else {
            Vec::new()
        },
    })
}

/// Short identifier: dimension, size and the first few labels.
pub fn config_id(cfg: &PointConfig) -> String {
    let mut labels = cfg.labels();
    labels.truncate(4);
    let more = if cfg.len() > 4 { ",…" } else { "" };
    format!(
        "d{}n{}[{}{}]",
        cfg.dimension(),
        cfg.len(),
        labels.join(","),
        more
    )
}

/// First crossing pair of disjoint `(k+1)`-subsets among `2k+3` points in
/// `R^{2k}`, in label order.
pub fn vkf_find(cfg: &PointConfig) -> Result<CrossingWitness> {
    let d = cfg.dimension();
    if d == 0 || !d.is_multiple_of(2) || cfg.len() != d + 3 {
        return Err(Error::Dimension(format!(
            "need 2k+3 points in R^(2k), got {} points in R^{d}",
            cfg.len()
        )));
    }
    cfg.require_general_position()?;
    vkf_search(cfg)
}

/// Odd-dimensional variant: `d+3` points in `R^d` (d odd) are lifted into
/// `R^{d+1}` together with a dummy point and searched there. The returned
/// witness never uses the dummy; it is a crossing of the original points.
pub fn vkf_find_lifted(cfg: &PointConfig) -> Result<CrossingWitness> {
    let d = cfg.dimension();
    if d % 2 != 1 || cfg.len() != d + 3 {
        return Err(Error::Dimension(format!(
            "need d+3 points in odd dimension d, got {} points in R^{d}",
            cfg.len()
        )));
    }
    let lifted = lift_odd(cfg)?;
    let w = vkf_search(&lifted)?;
    if w.pair.contains(DUMMY_LABEL) {
        return Err(Error::Invariant(
            "lifted crossing uses the dummy vertex".into(),
        ));
    }
    let found = simplices_cross(cfg, &w.pair.left, &w.pair.right)?;
    found.ok_or_else(|| {
        Error::Invariant("lifted crossing does not project to a crossing".into())
    })
}

fn vkf_search(cfg: &PointConfig) -> Result<CrossingWitness> {
    let k = cfg.dimension() / 2;
    for (l, r) in disjoint_pairs(cfg, k + 1, k + 1) {
        if let Some(w) = cross_indices(cfg, &l, &r)? {
            return Ok(w);
        }
    }
    Err(Error::TheoremViolation(format!(
        "no crossing pair of {}-subsets among {} points in R^{}",
        k + 1,
        cfg.len(),
        cfg.dimension()
    )))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    pub base: SimplexPair,
    pub target: usize,
    pub spares: Vec<String>,
    pub distributions_checked: usize,
    pub crossing: Vec<CrossingWitness>,
    /// extensions that were checked and found not to cross
    pub non_crossing: Vec<SimplexPair>,
}

/// Tops both sides of a crossing pair up to `target` vertices from the
/// points of `P` not already used, checking every distribution.
pub fn extend_crossing(
    cfg: &PointConfig,
    w: &CrossingWitness,
    target: usize,
) -> Result<ExtensionReport> {
    let left = cfg.indices_of(&w.pair.left)?;
    let right = cfg.indices_of(&w.pair.right)?;
    if target < left.len() || target < right.len() {
        return Err(Error::Sizes(format!(
            "target {target} below current sizes ({}, {})",
            left.len(),
            right.len()
        )));
    }
    let spares: Vec<usize> = cfg
        .label_order()
        .into_iter()
        .filter(|i| !left.contains(i) && !right.contains(i))
        .collect();
    let need_l = target - left.len();
    let need_r = target - right.len();
    if need_l + need_r > spares.len() {
        return Err(Error::Sizes(format!(
            "{} spare points cannot supply {need_l} + {need_r}",
            spares.len()
        )));
    }
    let mut candidates = Vec::new();
    for add_l in spares.iter().copied().combinations(need_l) {
        let rest: Vec<usize> = spares.iter().copied().filter(|i| !add_l.contains(i)).collect();
        for add_r in rest.into_iter().combinations(need_r) {
            let mut l = left.clone();
            l.extend(&add_l);
            let mut r = right.clone();
            r.extend(&add_r);
            candidates.push((l, r));
        }
    }
    let verdicts: Vec<(SimplexPair, Option<CrossingWitness>)> = candidates
        .par_iter()
        .map(|(l, r)| {
            let names = |idx: &[usize]| idx.iter().map(|&i| cfg.label(i).to_string()).collect();
            let pair = SimplexPair::new(names(l), names(r))?;
            Ok((pair, cross_indices(cfg, l, r)?))
        })
        .collect::<Result<_>>()?;
    let mut crossing = Vec::new();
    let mut non_crossing = Vec::new();
    for (pair, v) in verdicts {
        match v {
            Some(w) => crossing.push(w),
            None => non_crossing.push(pair),
        }
    }
    Ok(ExtensionReport {
        base: w.pair.clone(),
        target,
        spares: spares.iter().map(|&i| cfg.label(i).to_string()).collect(),
        distributions_checked: candidates.len(),
        crossing,
        non_crossing,
    })
}
