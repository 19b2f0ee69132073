//! Gale transforms and linear separations of Gale diagrams.
//!
//! For `n = m + d + 1` points in general position in `R^d`, the kernel of the
//! `(d+1) x n` matrix of coordinates plus an all-ones row has dimension `m`.
//! Reading a kernel basis column-wise gives one vector in `R^m` per point.
//! Partitions of those vectors by hyperplanes through the origin correspond
//! to pairs of vertex-disjoint simplices whose relative interiors meet: the
//! linear functional `g ↦ w·g` evaluated on the diagram is an affine
//! dependence of the points, positive on one side and negative on the other.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::configs::{PointConfig, SimplexPair};
use crate::error::{Error, Result};
use crate::exact::rational::{dot, sign};
use crate::exact::{RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledVector {
    pub label: String,
    pub coords: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaleDiagram {
    m: usize,
    source_d: usize,
    vectors: Vec<LabeledVector>,
}

impl GaleDiagram {
    pub fn new(m: usize, source_d: usize, vectors: Vec<LabeledVector>) -> Result<Self> {
        if vectors.len() != m + source_d + 1 {
            return Err(Error::Dimension(format!(
                "{} vectors but m + source_d + 1 = {}",
                vectors.len(),
                m + source_d + 1
            )));
        }
        let mut labels: Vec<&str> = vectors.iter().map(|v| v.label.as_str()).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].to_string()));
        }
        if let Some(v) = vectors.iter().find(|v| v.coords.len() != m) {
            return Err(Error::Dimension(format!(
                "vector `{}` has {} coordinates, expected {m}",
                v.label,
                v.coords.len()
            )));
        }
        Ok(Self {
            m,
            source_d,
            vectors,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn source_d(&self) -> usize {
        self.source_d
    }

    pub fn source_n(&self) -> usize {
        self.vectors.len()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[LabeledVector] {
        &self.vectors
    }

    pub fn label(&self, i: usize) -> &str {
        &self.vectors[i].label
    }

    pub fn vector(&self, i: usize) -> &[Rational] {
        &self.vectors[i].coords
    }

    pub fn labels(&self) -> Vec<String> {
        self.vectors.iter().map(|v| v.label.clone()).collect()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.vectors
            .iter()
            .position(|v| v.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn label_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self.vectors[a].label.cmp(&self.vectors[b].label));
        idx
    }

    /// `(⌊n/2⌋, ⌈n/2⌉)`.
    pub fn proper_sizes(&self) -> (usize, usize) {
        let n = self.len();
        (n / 2, n - n / 2)
    }

    /// Applies `g ↦ Ag` to every vector.
    pub fn map_linear(&self, a: &RatMatrix) -> Result<GaleDiagram> {
        if a.cols() != self.m || a.rows() != self.m {
            return Err(Error::Dimension("linear map must be m x m".into()));
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                Ok(LabeledVector {
                    label: v.label.clone(),
                    coords: a.mul_vec(&v.coords)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GaleDiagram::new(self.m, self.source_d, vectors)
    }

    pub fn matrix_of(&self, indices: &[usize]) -> RatMatrix {
        RatMatrix::from_rows(indices.iter().map(|&i| self.vector(i).to_vec()).collect())
            .unwrap_or_else(|_| RatMatrix::zeros(0, self.m))
    }

    /// First `m`-subset (in label order) that fails to span `R^m`.
    pub fn spanning_violation(&self) -> Option<Vec<usize>> {
        if self.m == 0 {
            return None;
        }
        self.label_order()
            .into_iter()
            .combinations(self.m)
            .find(|s| self.matrix_of(s).rank() < self.m)
    }

    pub fn require_spanning(&self) -> Result<()> {
        match self.spanning_violation() {
            None => Ok(()),
            Some(s) => Err(Error::NotSpanning {
                subset: s.iter().map(|&i| self.label(i).to_string()).collect(),
            }),
        }
    }

    /// Checks that the vectors sum to zero and are orthogonal to every
    /// coordinate row of the source configuration.
    pub fn orthogonal_to(&self, source: &PointConfig) -> bool {
        if source.len() != self.len() || source.dimension() != self.source_d {
            return false;
        }
        let n = self.len();
        (0..self.m).all(|j| {
            let sum: Rational = (0..n).map(|i| &self.vector(i)[j]).sum();
            sum.is_zero()
                && (0..self.source_d).all(|k| {
                    (0..n)
                        .map(|i| &source.coords(i)[k] * &self.vector(i)[j])
                        .sum::<Rational>()
                        .is_zero()
                })
        })
    }
}

/// Gale transform of a configuration in general position with `n ≥ d+2`.
pub fn gale_transform(p: &PointConfig) -> Result<GaleDiagram> {
    let d = p.dimension();
    if p.len() < d + 2 {
        return Err(Error::Sizes(format!(
            "Gale transform needs n >= d+2, got n={} d={d}",
            p.len()
        )));
    }
    p.require_general_position()?;
    gale_transform_unchecked(p)
}

/// Gale transform without the general-position precondition. The kernel
/// has dimension `n - rank(M)`, so for a degenerate configuration the result
/// may not have `m = n - d - 1`; that case is reported as a dimension error.
pub fn gale_transform_unchecked(p: &PointConfig) -> Result<GaleDiagram> {
    let d = p.dimension();
    let n = p.len();
    if n < d + 2 {
        return Err(Error::Sizes(format!(
            "Gale transform needs n >= d+2, got n={n} d={d}"
        )));
    }
    let all: Vec<usize> = (0..n).collect();
    let kernel = p.lifted_matrix(&all).kernel_basis();
    let m = n - d - 1;
    if kernel.len() != m {
        return Err(Error::Dimension(format!(
            "kernel has dimension {} instead of {m}; the points do not affinely span R^{d}",
            kernel.len()
        )));
    }
    let vectors = (0..n)
        .map(|i| LabeledVector {
            label: p.label(i).to_string(),
            coords: kernel.iter().map(|k| k[i].clone()).collect(),
        })
        .collect();
    GaleDiagram::new(m, d, vectors)
}

pub fn verify_spanning(g: &GaleDiagram) -> bool {
    g.spanning_violation().is_none()
}

/// Whether general position of `P` and spanning of its Gale diagram agree.
///
/// A configuration whose points fail to affinely span `R^d` has a kernel
/// of the wrong dimension; its diagram is then treated as non-spanning.
pub fn verify_lemma2(p: &PointConfig) -> Result<bool> {
    let d = p.dimension();
    if p.len() < d + 2 {
        return Err(Error::Sizes(format!(
            "need n >= d+2, got n={} d={d}",
            p.len()
        )));
    }
    let gp = p.is_general_position();
    let spans = match gale_transform_unchecked(p) {
        Ok(g) => verify_spanning(&g),
        Err(Error::Dimension(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(gp == spans)
}

/// Records how the points lying on a separating hyperplane were pushed to
/// either side.
#[derive(Debug, Clone)]
pub struct Rotation {
    /// normal of the hyperplane before rotation, oriented like `witness_normal`
    pub plane_normal: Vec<Rational>,
    /// `(label, true)` if the point was moved into `side_a`
    pub on_plane: Vec<(String, bool)>,
}

/// An unordered bipartition of diagram labels realized by a hyperplane
/// through the origin. `witness_normal` is strictly positive on every
/// vector of `side_a` and strictly negative on `side_b`. Equality, ordering
/// and hashing look only at the partition.
#[derive(Debug, Clone)]
pub struct LinearSeparation {
    pub side_a: Vec<String>,
    pub side_b: Vec<String>,
    pub witness_normal: Vec<Rational>,
    pub rotation: Option<Rotation>,
}

impl PartialEq for LinearSeparation {
    fn eq(&self, other: &Self) -> bool {
        self.side_a == other.side_a && self.side_b == other.side_b
    }
}

impl Eq for LinearSeparation {}

impl Hash for LinearSeparation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.side_a.hash(state);
        self.side_b.hash(state);
    }
}

impl PartialOrd for LinearSeparation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LinearSeparation {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.side_a, &self.side_b).cmp(&(&other.side_a, &other.side_b))
    }
}

impl LinearSeparation {
    /// Separation induced by a normal that classifies every vector strictly.
    pub fn from_normal(g: &GaleDiagram, normal: Vec<Rational>) -> Result<Self> {
        Self::classify(g, normal).map(|(s, _)| s)
    }

    /// Classifies strictly and canonicalizes; the flag reports whether the
    /// normal was negated.
    fn classify(g: &GaleDiagram, normal: Vec<Rational>) -> Result<(Self, bool)> {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for v in g.vectors() {
            match sign(&dot(&v.coords, &normal)) {
                1 => pos.push(v.label.clone()),
                -1 => neg.push(v.label.clone()),
                _ => {
                    return Err(Error::InvalidSeparation(format!(
                        "`{}` lies on the hyperplane",
                        v.label
                    )))
                }
            }
        }
        Ok(Self::canonical(pos, neg, normal))
    }

    /// Separation from a hyperplane through the origin with normal `plane`,
    /// where the vectors listed in `on_plane` lie on it and are pushed to the
    /// positive side when their flag is true. The witness normal is
    /// `plane + ε·δ` with `u·δ = ±1` on the on-plane vectors and `ε` small
    /// enough to keep every other vector on its side.
    pub fn from_plane(
        g: &GaleDiagram,
        plane: &[Rational],
        on_plane: &[(usize, bool)],
    ) -> Result<Self> {
        let m = g.m();
        let delta = if on_plane.is_empty() {
            vec![Rational::zero(); m]
        } else {
            let u = g.matrix_of(&on_plane.iter().map(|&(i, _)| i).collect::<Vec<_>>());
            let target: Vec<Rational> = on_plane
                .iter()
                .map(|&(_, pos)| if pos { Rational::one() } else { -Rational::one() })
                .collect();
            u.solve_particular(&target)?.ok_or_else(|| {
                Error::InvalidSeparation("on-plane vectors are linearly dependent".into())
            })?
        };
        let mut eps = Rational::one();
        for (i, v) in g.vectors().iter().enumerate() {
            if on_plane.iter().any(|&(j, _)| j == i) {
                continue;
            }
            let a = dot(&v.coords, plane);
            if a.is_zero() {
                return Err(Error::InvalidSeparation(format!(
                    "`{}` lies on the hyperplane but was not assigned a side",
                    v.label
                )));
            }
            let b = dot(&v.coords, &delta);
            if !b.is_zero() {
                let bound = a.abs() / (b.abs() * Rational::from_integer(2.into()));
                if bound < eps {
                    eps = bound;
                }
            }
        }
        let normal: Vec<Rational> = plane
            .iter()
            .zip(&delta)
            .map(|(p, d)| p + &eps * d)
            .collect();
        let (mut sep, flipped) = Self::classify(g, normal)?;
        let plane_normal: Vec<Rational> = if flipped {
            plane.iter().map(|x| -x.clone()).collect()
        } else {
            plane.to_vec()
        };
        sep.rotation = Some(Rotation {
            plane_normal,
            on_plane: on_plane
                .iter()
                .map(|&(i, _)| {
                    let l = g.label(i).to_string();
                    let in_a = sep.side_a.contains(&l);
                    (l, in_a)
                })
                .collect(),
        });
        Ok(sep)
    }

    /// Puts the side holding the smallest label first and orients the normal
    /// to be positive on it.
    fn canonical(mut pos: Vec<String>, mut neg: Vec<String>, mut normal: Vec<Rational>) -> (Self, bool) {
        pos.sort();
        neg.sort();
        let swap = match (pos.first(), neg.first()) {
            (Some(p), Some(n)) => n < p,
            (None, Some(_)) => true,
            _ => false,
        };
        if swap {
            for x in normal.iter_mut() {
                *x = -x.clone();
            }
            std::mem::swap(&mut pos, &mut neg);
        }
        (
            Self {
                side_a: pos,
                side_b: neg,
                witness_normal: normal,
                rotation: None,
            },
            swap,
        )
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.side_a.len(), self.side_b.len())
    }

    pub fn side_of(&self, label: &str) -> Option<bool> {
        if self.side_a.iter().any(|l| l == label) {
            Some(true)
        } else if self.side_b.iter().any(|l| l == label) {
            Some(false)
        } else {
            None
        }
    }

    pub fn splits(&self, a: &str, b: &str) -> bool {
        matches!((self.side_of(a), self.side_of(b)), (Some(x), Some(y)) if x != y)
    }

    /// Checks the partition covers the diagram, has proper sizes and that the
    /// witness normal classifies every vector strictly as recorded.
    pub fn check_proper(&self, g: &GaleDiagram) -> Result<()> {
        let (lo, hi) = g.proper_sizes();
        let (a, b) = self.sizes();
        if (a, b) != (lo, hi) && (a, b) != (hi, lo) {
            return Err(Error::InvalidSeparation(format!(
                "part sizes ({a}, {b}) instead of ({lo}, {hi})"
            )));
        }
        self.check_realized(g)
    }

    /// Checks the partition covers exactly the diagram's labels and that the
    /// witness normal realizes it strictly.
    pub fn check_realized(&self, g: &GaleDiagram) -> Result<()> {
        if self.side_a.len() + self.side_b.len() != g.len() {
            return Err(Error::InvalidSeparation("partition does not cover the diagram".into()));
        }
        if self.witness_normal.len() != g.m() {
            return Err(Error::InvalidSeparation("normal has wrong dimension".into()));
        }
        for v in g.vectors() {
            let s = sign(&dot(&v.coords, &self.witness_normal));
            let ok = match self.side_of(&v.label) {
                Some(true) => s > 0,
                Some(false) => s < 0,
                None => false,
            };
            if !ok {
                return Err(Error::InvalidSeparation(format!(
                    "`{}` is not strictly on its recorded side",
                    v.label
                )));
            }
        }
        Ok(())
    }
}

/// Maps a proper linear separation to the pair of simplices spanned by the
/// source points of each side.
pub fn separation_to_crossing(g: &GaleDiagram, s: &LinearSeparation) -> Result<SimplexPair> {
    s.check_proper(g)?;
    SimplexPair::new(s.side_a.clone(), s.side_b.clone())
}
