//! Labeled point configurations in `R^d`.

use std::collections::HashSet;

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::rational::int;
use crate::exact::{RatMatrix, Rational};

/// Label given to the extra point appended by [`lift_odd`].
pub const DUMMY_LABEL: &str = "dummy";

/// Whole-configuration resamples attempted by [`random_config`].
pub const RANDOM_RETRY_LIMIT: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPoint {
    pub label: String,
    pub coords: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    dimension: usize,
    points: Vec<LabeledPoint>,
}

impl PointConfig {
    pub fn new(dimension: usize, points: Vec<LabeledPoint>) -> Result<Self> {
        let mut seen = HashSet::new();
        for p in &points {
            if !seen.insert(p.label.as_str()) {
                return Err(Error::DuplicateLabel(p.label.clone()));
            }
            if p.coords.len() != dimension {
                return Err(Error::Dimension(format!(
                    "point `{}` has {} coordinates in dimension {dimension}",
                    p.label,
                    p.coords.len()
                )));
            }
        }
        Ok(Self { dimension, points })
    }

    /// Points labeled `p1`, `p2`, ... in order.
    pub fn from_coords(dimension: usize, coords: Vec<Vec<Rational>>) -> Result<Self> {
        let points = coords
            .into_iter()
            .enumerate()
            .map(|(i, c)| LabeledPoint {
                label: format!("p{}", i + 1),
                coords: c,
            })
            .collect();
        Self::new(dimension, points)
    }

    pub fn from_i64(dimension: usize, coords: &[&[i64]]) -> Result<Self> {
        Self::from_coords(
            dimension,
            coords
                .iter()
                .map(|c| c.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LabeledPoint] {
        &self.points
    }

    pub fn label(&self, i: usize) -> &str {
        &self.points[i].label
    }

    pub fn coords(&self, i: usize) -> &[Rational] {
        &self.points[i].coords
    }

    pub fn labels(&self) -> Vec<String> {
        self.points.iter().map(|p| p.label.clone()).collect()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|p| p.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    /// Point indices ordered by label; the enumeration order used wherever a
    /// deterministic "first" is needed.
    pub fn label_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self.points[a].label.cmp(&self.points[b].label));
        idx
    }

    /// Sub-configuration keeping the given points in the given order.
    pub fn subset(&self, indices: &[usize]) -> PointConfig {
        PointConfig {
            dimension: self.dimension,
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    /// The `(d+1) x k` matrix of the chosen points' coordinates with an
    /// appended all-ones row.
    pub fn lifted_matrix(&self, indices: &[usize]) -> RatMatrix {
        let d = self.dimension;
        let mut m = RatMatrix::zeros(d + 1, indices.len());
        for (col, &i) in indices.iter().enumerate() {
            for k in 0..d {
                m[(k, col)] = self.points[i].coords[k].clone();
            }
            m[(d, col)] = Rational::one();
        }
        m
    }

    /// Applies `x ↦ Ax + b`.
    pub fn map_affine(&self, a: &RatMatrix, b: &[Rational]) -> Result<PointConfig> {
        if a.rows() != b.len() || a.cols() != self.dimension {
            return Err(Error::Dimension("affine map shape".into()));
        }
        let points = self
            .points
            .iter()
            .map(|p| {
                let mut c = a.mul_vec(&p.coords)?;
                for (x, s) in c.iter_mut().zip(b) {
                    *x += s;
                }
                Ok(LabeledPoint {
                    label: p.label.clone(),
                    coords: c,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PointConfig::new(a.rows(), points)
    }

    /// First affinely dependent subset witnessing a general-position failure,
    /// if any. Subsets of size `d+1` are scanned in label order; with fewer
    /// than `d+1` points the whole set is tested.
    pub fn general_position_violation(&self) -> Option<Vec<usize>> {
        let d = self.dimension;
        let n = self.len();
        if n <= d + 1 {
            let all: Vec<usize> = self.label_order();
            return (self.lifted_matrix(&all).rank() < n).then_some(all);
        }
        self.label_order()
            .into_iter()
            .combinations(d + 1)
            .find(|s| {
                self.lifted_matrix(s)
                    .det()
                    .map(|v| v.is_zero())
                    .unwrap_or(true)
            })
    }

    pub fn is_general_position(&self) -> bool {
        self.general_position_violation().is_none()
    }

    pub fn require_general_position(&self) -> Result<()> {
        match self.general_position_violation() {
            None => Ok(()),
            Some(s) => Err(Error::Degenerate {
                subset: s.iter().map(|&i| self.label(i).to_string()).collect(),
            }),
        }
    }
}

/// Two vertex-disjoint label sets. The side holding the smallest label is
/// stored as `left`; each side is sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexPair {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

impl SimplexPair {
    pub fn new(a: Vec<String>, b: Vec<String>) -> Result<Self> {
        let (pair, _) = Self::canonical(a, b)?;
        Ok(pair)
    }

    /// Canonical pair plus whether the input sides were swapped.
    pub fn canonical(mut a: Vec<String>, mut b: Vec<String>) -> Result<(Self, bool)> {
        a.sort();
        b.sort();
        if let Some(shared) = a.iter().find(|l| b.binary_search(l).is_ok()) {
            return Err(Error::SharedVertex(shared.clone()));
        }
        let swap = match (a.first(), b.first()) {
            (Some(x), Some(y)) => y < x,
            (None, Some(_)) => true,
            _ => false,
        };
        Ok(if swap {
            (Self { left: b, right: a }, true)
        } else {
            (Self { left: a, right: b }, false)
        })
    }

    pub fn contains(&self, label: &str) -> bool {
        self.left.iter().chain(&self.right).any(|l| l == label)
    }
}

/// `t ↦ (t, t², …, t^d)` for `t = 1..=n`.
pub fn moment_curve_config(n: usize, d: usize) -> PointConfig {
    let coords = (1..=n as i64)
        .map(|t| {
            let mut v = Vec::with_capacity(d);
            let mut p = 1i64;
            for _ in 0..d {
                p *= t;
                v.push(int(p));
            }
            v
        })
        .collect();
    PointConfig::from_coords(d, coords).expect("labels are distinct")
}

/// Uniform integer coordinates in `[-range, range]`, resampling the whole
/// configuration until it is in general position.
///
/// The generator is ChaCha8 seeded with `ChaCha8Rng::seed_from_u64(seed)`;
/// coordinates are drawn point by point, axis by axis, with
/// `gen_range(-range..=range)`, and a rejected configuration simply keeps
/// drawing from the same stream.
pub fn random_config(n: usize, d: usize, seed: u64, range: u32) -> Result<PointConfig> {
    if n < d + 1 {
        return Err(Error::Sizes(format!("random_config needs n >= d+1, got n={n}, d={d}")));
    }
    if range == 0 {
        return Err(Error::Sizes("range must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = range as i64;
    for _ in 0..RANDOM_RETRY_LIMIT {
        let coords: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..d).map(|_| int(rng.gen_range(-r..=r))).collect())
            .collect();
        let cfg = PointConfig::from_coords(d, coords)?;
        if cfg.is_general_position() {
            return Ok(cfg);
        }
    }
    Err(Error::RetryLimit {
        n,
        d,
        range,
        attempts: RANDOM_RETRY_LIMIT,
    })
}

/// Embeds `P ⊂ R^d` into the hyperplane `x_{d+1} = 0` of `R^{d+1}` and
/// appends a `dummy` point at `(0, …, 0, 1)`.
pub fn lift_odd(p: &PointConfig) -> Result<PointConfig> {
    if p.points.iter().any(|q| q.label == DUMMY_LABEL) {
        return Err(Error::DuplicateLabel(DUMMY_LABEL.to_string()));
    }
    p.require_general_position()?;
    let d = p.dimension;
    let mut points: Vec<LabeledPoint> = p
        .points
        .iter()
        .map(|q| {
            let mut c = q.coords.clone();
            c.push(Rational::zero());
            LabeledPoint {
                label: q.label.clone(),
                coords: c,
            }
        })
        .collect();
    let mut dummy = vec![Rational::zero(); d + 1];
    dummy[d] = Rational::one();
    points.push(LabeledPoint {
        label: DUMMY_LABEL.to_string(),
        coords: dummy,
    });
    PointConfig::new(d + 1, points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moment_curve_small() {
        let p = moment_curve_config(3, 2);
        assert_eq!(p.coords(0), &[int(1), int(1)]);
        assert_eq!(p.coords(1), &[int(2), int(4)]);
        assert_eq!(p.coords(2), &[int(3), int(9)]);
        assert_eq!(p.labels(), vec!["p1", "p2", "p3"]);
        assert!(moment_curve_config(6, 3).is_general_position());
        assert!(moment_curve_config(8, 4).is_general_position());
        assert!(moment_curve_config(7, 4).is_general_position());
    }

    #[test]
    fn square_is_general_position() {
        let sq = PointConfig::from_i64(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert!(sq.is_general_position());
    }

    #[test]
    fn collinear_triple_detected() {
        let p = PointConfig::from_i64(2, &[&[0, 0], &[1, 1], &[2, 2], &[5, 0]]).unwrap();
        assert!(!p.is_general_position());
        match p.require_general_position() {
            Err(Error::Degenerate { subset }) => assert_eq!(subset, vec!["p1", "p2", "p3"]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn few_points_use_rank() {
        let p = PointConfig::from_i64(3, &[&[0, 0, 0], &[1, 0, 0], &[2, 0, 0]]).unwrap();
        assert!(!p.is_general_position());
        let q = PointConfig::from_i64(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert!(q.is_general_position());
    }

    #[test]
    fn constructor_validates() {
        let dup = vec![
            LabeledPoint {
                label: "a".into(),
                coords: vec![int(0)],
            },
            LabeledPoint {
                label: "a".into(),
                coords: vec![int(1)],
            },
        ];
        assert!(matches!(PointConfig::new(1, dup), Err(Error::DuplicateLabel(_))));
        let short = vec![LabeledPoint {
            label: "a".into(),
            coords: vec![int(0)],
        }];
        assert!(matches!(PointConfig::new(2, short), Err(Error::Dimension(_))));
    }

    #[test]
    fn random_config_examples() {
        let a = random_config(6, 3, 1, 100).unwrap();
        assert!(a.is_general_position());
        assert_eq!(random_config(5, 2, 7, 10).unwrap(), random_config(5, 2, 7, 10).unwrap());
        match random_config(10, 2, 3, 1) {
            Err(Error::RetryLimit { .. }) => {}
            Ok(cfg) => {
                for p in cfg.points() {
                    assert!(p.coords.iter().all(|c| *c >= int(-1) && *c <= int(1)));
                }
            }
            Err(e) => panic!("unexpected {e}"),
        }
        assert!(random_config(2, 2, 0, 5).is_err());
    }

    #[test]
    fn lift_odd_example() {
        let p = PointConfig::from_i64(3, &[&[1, 2, 3]]).unwrap();
        let l = lift_odd(&p).unwrap();
        assert_eq!(l.dimension(), 4);
        assert_eq!(l.coords(0), &[int(1), int(2), int(3), int(0)]);
        assert_eq!(l.label(1), DUMMY_LABEL);
        assert_eq!(l.coords(1), &[int(0), int(0), int(0), int(1)]);

        let six = moment_curve_config(6, 3);
        let l6 = lift_odd(&six).unwrap();
        assert_eq!((l6.len(), l6.dimension()), (7, 4));
    }

    #[test]
    fn lift_odd_rejects_dummy_collision() {
        let p = PointConfig::new(
            1,
            vec![LabeledPoint {
                label: DUMMY_LABEL.into(),
                coords: vec![int(0)],
            }],
        )
        .unwrap();
        assert!(matches!(lift_odd(&p), Err(Error::DuplicateLabel(_))));
    }

    #[test]
    fn simplex_pair_canonical() {
        let (p, swapped) =
            SimplexPair::canonical(vec!["p3".into(), "p2".into()], vec!["p1".into()]).unwrap();
        assert!(swapped);
        assert_eq!(p.left, vec!["p1"]);
        assert_eq!(p.right, vec!["p2", "p3"]);
        assert!(matches!(
            SimplexPair::new(vec!["a".into()], vec!["a".into()]),
            Err(Error::SharedVertex(_))
        ));
    }
}
