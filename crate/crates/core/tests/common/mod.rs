//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the library's linear algebra or LP code: the
//! Fourier–Motzkin routine does its own elimination, and the separation
//! oracle only evaluates signs of dot products.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use galecross::exact::rational::int;
use galecross::gale::GaleDiagram;
use galecross::{PointConfig, Rational};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FmOutcome {
    Infeasible,
    Unbounded,
    Optimal(Rational),
}

/// `coeffs · v >= rhs`
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Ineq {
    coeffs: Vec<Rational>,
    rhs: Rational,
}

/// Gauss–Jordan on `[A | b]`. Returns `None` when inconsistent, otherwise
/// the reduced rows and their pivot columns.
fn reduce(a: &[Vec<Rational>], b: &[Rational]) -> Option<(Vec<Vec<Rational>>, Vec<usize>)> {
    let cols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..=cols {
                    let delta = &f * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    rows.truncate(r);
    Some((rows, pivots))
}

fn eliminate(ineqs: Vec<Ineq>, var: usize) -> Vec<Ineq> {
    let (mut pos, mut neg, mut out) = (vec![], vec![], BTreeSet::new());
    for q in ineqs {
        if q.coeffs[var].is_positive() {
            pos.push(q);
        } else if q.coeffs[var].is_negative() {
            neg.push(q);
        } else {
            out.insert(q);
        }
    }
    for p in &pos {
        for n in &neg {
            let (sp, sn) = (-n.coeffs[var].clone(), p.coeffs[var].clone());
            let mut coeffs: Vec<Rational> = p
                .coeffs
                .iter()
                .zip(&n.coeffs)
                .map(|(a, b)| a * &sp + b * &sn)
                .collect();
            coeffs[var] = Rational::zero();
            let mut rhs = &p.rhs * &sp + &n.rhs * &sn;
            // scale so the first nonzero coefficient has magnitude one
            if let Some(lead) = coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
                for c in coeffs.iter_mut() {
                    *c /= &lead;
                }
                rhs /= &lead;
            }
            out.insert(Ineq { coeffs, rhs });
        }
    }
    out.into_iter().collect()
}

/// `maximize t` subject to `A x = b`, `x_i >= t`, by substituting the
/// equalities and eliminating every `x` with Fourier–Motzkin.
pub fn fm_max_min(a: &[Vec<Rational>], b: &[Rational], nvars: usize) -> FmOutcome {
    let Some((rows, pivots)) = reduce(a, b) else {
        return FmOutcome::Infeasible;
    };
    // variables 0..nvars are x, nvars is t
    let t = nvars;
    let mut ineqs = Vec::new();
    for i in 0..nvars {
        let mut coeffs = vec![Rational::zero(); nvars + 1];
        let mut rhs = Rational::zero();
        if let Some(r) = pivots.iter().position(|&p| p == i) {
            // x_i = rows[r][last] - Σ_{free f} rows[r][f] x_f
            for f in 0..nvars {
                if !pivots.contains(&f) {
                    coeffs[f] = -rows[r][f].clone();
                }
            }
            rhs = -rows[r][nvars].clone();
        } else {
            coeffs[i] = int(1);
        }
        coeffs[t] = int(-1);
        ineqs.push(Ineq { coeffs, rhs });
    }
    for v in 0..nvars {
        ineqs = eliminate(ineqs, v);
    }
    let (mut lower, mut upper): (Option<Rational>, Option<Rational>) = (None, None);
    for q in &ineqs {
        let c = &q.coeffs[t];
        if c.is_zero() {
            if q.rhs.is_positive() {
                return FmOutcome::Infeasible;
            }
        } else if c.is_positive() {
            let v = &q.rhs / c;
            lower = Some(lower.map_or(v.clone(), |l| l.max(v)));
        } else {
            let v = &q.rhs / c;
            upper = Some(upper.map_or(v.clone(), |u| u.min(v)));
        }
    }
    match (lower, upper) {
        (Some(l), Some(u)) if l > u => FmOutcome::Infeasible,
        (_, Some(u)) => FmOutcome::Optimal(u),
        (_, None) => FmOutcome::Unbounded,
    }
}

/// Crossing as decided by the oracle: some point lies in the relative
/// interiors of both simplices.
pub fn fm_crosses(p: &PointConfig, left: &[usize], right: &[usize]) -> bool {
    let d = p.dimension();
    let nv = left.len() + right.len();
    let mut a = vec![vec![Rational::zero(); nv]; d + 2];
    for (c, &i) in left.iter().enumerate() {
        for k in 0..d {
            a[k][c] = p.coords(i)[k].clone();
        }
        a[d][c] = int(1);
    }
    for (c, &j) in right.iter().enumerate() {
        for k in 0..d {
            a[k][left.len() + c] = -p.coords(j)[k].clone();
        }
        a[d + 1][left.len() + c] = int(1);
    }
    let mut b = vec![Rational::zero(); d + 2];
    b[d] = int(1);
    b[d + 1] = int(1);
    matches!(fm_max_min(&a, &b, nv), FmOutcome::Optimal(t) if t.is_positive())
}

/// A partition with its two sides sorted and ordered, so it compares
/// independently of orientation.
pub type Partition = (Vec<String>, Vec<String>);

pub fn partition(mut a: Vec<String>, mut b: Vec<String>) -> Partition {
    a.sort();
    b.sort();
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Partitions with part sizes `{s1, s2}` hit by random integer normals that
/// avoid every vector.
pub fn sampled_separations(
    g: &GaleDiagram,
    sizes: (usize, usize),
    samples: usize,
    seed: u64,
) -> BTreeSet<Partition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = BTreeSet::new();
    for _ in 0..samples {
        let w: Vec<Rational> = (0..g.m()).map(|_| int(rng.gen_range(-1000..=1000))).collect();
        let (mut pos, mut neg) = (vec![], vec![]);
        let mut zero = false;
        for v in g.vectors() {
            let s: Rational = v.coords.iter().zip(&w).map(|(a, b)| a * b).sum();
            if s.is_zero() {
                zero = true;
                break;
            }
            if s.is_positive() {
                pos.push(v.label.clone());
            } else {
                neg.push(v.label.clone());
            }
        }
        let ok = (pos.len(), neg.len()) == sizes || (neg.len(), pos.len()) == sizes;
        if !zero && ok {
            found.insert(partition(pos, neg));
        }
    }
    found
}

/// All `(p, q)` vertex-disjoint index pairs, each unordered pair once.
pub fn all_pairs(n: usize, p: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    use itertools::Itertools;
    let mut out = Vec::new();
    for a in (0..n).combinations(p) {
        let rest: Vec<usize> = (0..n).filter(|i| !a.contains(i)).collect();
        for b in rest.into_iter().combinations(q) {
            if p == q && a > b {
                continue;
            }
            out.push((a.clone(), b));
        }
    }
    out
}
