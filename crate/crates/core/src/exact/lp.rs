//! Exact two-phase simplex over the rationals.
//!
//! Bland's rule (lowest-index entering column, lowest-index leaving basic
//! variable on ratio ties) guarantees termination. Instances here are tiny,
//! so the tableau is dense and reduced costs are recomputed every pivot.

use num_traits::{One, Signed, Zero};

use super::matrix::RatMatrix;
use super::rational::{dot, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpResult {
    pub status: LpStatus,
    /// Present iff `status == Optimal`.
    pub objective: Option<Rational>,
    /// Present iff `status == Optimal`.
    pub solution: Option<Vec<Rational>>,
}

impl LpResult {
    fn infeasible() -> Self {
        Self {
            status: LpStatus::Infeasible,
            objective: None,
            solution: None,
        }
    }

    fn unbounded() -> Self {
        Self {
            status: LpStatus::Unbounded,
            objective: None,
            solution: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective·x` subject to the constraints; variables are
/// nonnegative unless flagged free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub free: Vec<bool>,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(nvars: usize) -> Self {
        Self {
            free: vec![false; nvars],
            constraints: Vec::new(),
            objective: vec![Rational::zero(); nvars],
        }
    }

    pub fn nvars(&self) -> usize {
        self.free.len()
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn solve(&self) -> Result<LpResult> {
        let n = self.nvars();
        if self.objective.len() != n {
            return Err(Error::Dimension("objective length".into()));
        }
        if let Some(c) = self.constraints.iter().find(|c| c.coeffs.len() != n) {
            return Err(Error::Dimension(format!(
                "constraint with {} coefficients over {n} variables",
                c.coeffs.len()
            )));
        }
        // columns: x+ (n), x- (one per free var), slack/surplus (one per inequality)
        let free_idx: Vec<usize> = (0..n).filter(|&i| self.free[i]).collect();
        let n_ineq = self
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let width = n + free_idx.len() + n_ineq;
        let mut rows = Vec::with_capacity(self.constraints.len());
        let mut rhs = Vec::with_capacity(self.constraints.len());
        let mut slack = n + free_idx.len();
        for c in &self.constraints {
            let mut row = vec![Rational::zero(); width];
            row[..n].clone_from_slice(&c.coeffs);
            for (k, &i) in free_idx.iter().enumerate() {
                row[n + k] = -c.coeffs[i].clone();
            }
            match c.relation {
                Relation::Le => {
                    row[slack] = Rational::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            rows.push(row);
            rhs.push(c.rhs.clone());
        }
        let mut cost = vec![Rational::zero(); width];
        cost[..n].clone_from_slice(&self.objective);
        for (k, &i) in free_idx.iter().enumerate() {
            cost[n + k] = -self.objective[i].clone();
        }
        let res = simplex_standard(rows, rhs, cost, width);
        Ok(match res {
            Standard::Optimal { x, objective } => {
                let mut sol: Vec<Rational> = x[..n].to_vec();
                for (k, &i) in free_idx.iter().enumerate() {
                    sol[i] -= &x[n + k];
                }
                LpResult {
                    status: LpStatus::Optimal,
                    objective: Some(objective),
                    solution: Some(sol),
                }
            }
            Standard::Infeasible => LpResult::infeasible(),
            Standard::Unbounded => LpResult::unbounded(),
        })
    }
}

/// Solves `maximize t` subject to `Aeq·x = b` and `x_i ≥ t` for all `i`.
///
/// The optimum `t*` is the largest achievable minimum coordinate; `t* > 0`
/// means a strictly positive solution exists. The returned solution holds
/// the `x` part only. Internally `x = y + t·1` with `y ≥ 0` and `t` split
/// into two nonnegative parts, which keeps the tableau at `rows(Aeq)` rows.
pub fn lp_max_min(aeq: &RatMatrix, b: &[Rational], nvars: usize) -> Result<LpResult> {
    if aeq.cols() != nvars {
        return Err(Error::Dimension(format!(
            "matrix has {} columns but nvars = {nvars}",
            aeq.cols()
        )));
    }
    if b.len() != aeq.rows() {
        return Err(Error::Dimension(format!(
            "b has length {} for {} rows",
            b.len(),
            aeq.rows()
        )));
    }
    let width = nvars + 2;
    let rows: Vec<Vec<Rational>> = (0..aeq.rows())
        .map(|i| {
            let r = aeq.row(i);
            let s: Rational = r.iter().sum();
            let mut row = r.to_vec();
            row.push(s.clone());
            row.push(-s);
            row
        })
        .collect();
    let mut cost = vec![Rational::zero(); width];
    cost[nvars] = Rational::one();
    cost[nvars + 1] = -Rational::one();
    Ok(match simplex_standard(rows, b.to_vec(), cost, width) {
        Standard::Optimal { x, objective } => {
            let t = &x[nvars] - &x[nvars + 1];
            let sol = x[..nvars].iter().map(|y| y + &t).collect();
            LpResult {
                status: LpStatus::Optimal,
                objective: Some(objective),
                solution: Some(sol),
            }
        }
        Standard::Infeasible => LpResult::infeasible(),
        Standard::Unbounded => LpResult::unbounded(),
    })
}

enum Standard {
    Optimal { x: Vec<Rational>, objective: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// each row: `width` coefficient columns followed by the rhs
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost` over the columns `< allowed`. Returns false if
    /// unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let basic_cost: Vec<&Rational> = self.basis.iter().map(|&b| &cost[b]).collect();
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let z = self
                    .rows
                    .iter()
                    .zip(&basic_cost)
                    .fold(Rational::zero(), |acc, (row, cb)| acc + *cb * &row[j]);
                (&cost[j] - z).is_positive()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    fn value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, &b)| acc + &cost[b] * self.rhs(i))
    }
}

/// `maximize cost·z` s.t. `rows·z = rhs`, `z ≥ 0`.
fn simplex_standard(
    mut rows: Vec<Vec<Rational>>,
    mut rhs: Vec<Rational>,
    cost: Vec<Rational>,
    width: usize,
) -> Standard {
    let m = rows.len();
    for (row, b) in rows.iter_mut().zip(rhs.iter_mut()) {
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            *b = -b.clone();
        }
    }
    // phase 1: one artificial per row
    let total = width + m;
    let mut tab = Tableau {
        rows: rows
            .into_iter()
            .zip(rhs)
            .enumerate()
            .map(|(i, (mut row, b))| {
                row.resize(total, Rational::zero());
                row[width + i] = Rational::one();
                row.push(b);
                row
            })
            .collect(),
        basis: (width..total).collect(),
        width: total,
    };
    let mut phase1 = vec![Rational::zero(); total];
    for c in phase1.iter_mut().skip(width) {
        *c = -Rational::one();
    }
    tab.optimize(&phase1, total);
    if tab.value(&phase1).is_negative() {
        return Standard::Infeasible;
    }
    // drive zero-level artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= width {
            match (0..width).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(j) => {
                    tab.pivot(i, j);
                    i += 1;
                }
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    let mut phase2 = cost;
    phase2.resize(total, Rational::zero());
    if !tab.optimize(&phase2, width) {
        return Standard::Unbounded;
    }
    let mut x = vec![Rational::zero(); width];
    for (i, &b) in tab.basis.iter().enumerate() {
        x[b] = tab.rhs(i).clone();
    }
    let objective = dot(&x, &phase2[..width]);
    Standard::Optimal { x, objective }
}
