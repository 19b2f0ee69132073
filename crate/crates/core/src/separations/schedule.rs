//! Colouring schedules that produce several distinct proper separations
//! from repeated Ham Sandwich cuts.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::gale::{GaleDiagram, LinearSeparation};

use super::ham_sandwich::{complement, ham_sandwich_cut, HamSandwichInstance};
use super::enumerate_separations;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma4Case {
    /// the third cut split every pair that survived the first two
    AllSplit,
    /// the third cut left two of those pairs together
    SomeTogether,
}

#[derive(Debug, Clone)]
pub struct ScheduleStep {
    pub coloring: HamSandwichInstance,
    pub separation: LinearSeparation,
    /// pairs together in every earlier separation and split by this one
    pub newly_separated_pairs: Vec<(String, String)>,
    /// for each earlier step, a pair on the same side in exactly one of the
    /// two separations
    pub distinct_from: Vec<(String, String)>,
    pub fallback: bool,
}

#[derive(Debug, Clone)]
pub struct ScheduleTrace {
    pub steps: Vec<ScheduleStep>,
    pub case_taken: Option<Lemma4Case>,
}

impl ScheduleTrace {
    pub fn separations(&self) -> Vec<&LinearSeparation> {
        self.steps.iter().map(|s| &s.separation).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-checks the distinctness certificates and pairwise distinctness.
    pub fn certificates_hold(&self) -> bool {
        self.steps.iter().enumerate().all(|(k, step)| {
            step.distinct_from.len() == k
                && step.distinct_from.iter().enumerate().all(|(j, (a, b))| {
                    self.steps[j].separation.splits(a, b) != step.separation.splits(a, b)
                })
        }) && self
            .steps
            .iter()
            .tuple_combinations()
            .all(|(x, y)| x.separation != y.separation)
    }
}

fn differing_pair(a: &LinearSeparation, b: &LinearSeparation, labels: &[String]) -> Option<(String, String)> {
    labels
        .iter()
        .tuple_combinations()
        .find(|(x, y)| a.splits(x, y) != b.splits(x, y))
        .map(|(x, y)| (x.clone(), y.clone()))
}

struct Scheduler<'a> {
    g: &'a GaleDiagram,
    labels: Vec<String>,
    sizes: (usize, usize),
    steps: Vec<ScheduleStep>,
}

impl<'a> Scheduler<'a> {
    fn new(g: &'a GaleDiagram) -> Self {
        let mut labels = g.labels();
        labels.sort();
        Self {
            g,
            labels,
            sizes: g.proper_sizes(),
            steps: Vec::new(),
        }
    }

    fn seen(&self, sep: &LinearSeparation) -> bool {
        self.steps.iter().any(|s| &s.separation == sep)
    }

    fn together_always(&self, a: &str, b: &str) -> bool {
        self.steps.iter().all(|s| !s.separation.splits(a, b))
    }

    fn newly_separated(&self, sep: &LinearSeparation) -> Vec<(String, String)> {
        self.labels
            .iter()
            .tuple_combinations()
            .filter(|(a, b)| sep.splits(a, b) && self.together_always(a, b))
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect()
    }

    fn record(&mut self, coloring: HamSandwichInstance, separation: LinearSeparation, fallback: bool) {
        let distinct_from = self
            .steps
            .iter()
            .map(|s| {
                differing_pair(&s.separation, &separation, &self.labels)
                    .expect("recorded separations are distinct")
            })
            .collect();
        let newly_separated_pairs = self.newly_separated(&separation);
        self.steps.push(ScheduleStep {
            coloring,
            separation,
            newly_separated_pairs,
            distinct_from,
            fallback,
        });
    }

    /// Colours `c1` against the rest and records the cut. When the cut is
    /// not new (or the search fails), falls back to the first unseen
    /// enumerated separation that passes `accept`, then to any unseen one.
    /// Returns false when nothing new exists.
    fn step(
        &mut self,
        c1: Vec<String>,
        c2: Vec<String>,
        accept: impl Fn(&Self, &LinearSeparation) -> bool,
    ) -> Result<bool> {
        let inst = HamSandwichInstance::new(self.g, c1, c2)?;
        match ham_sandwich_cut(self.g, &inst, self.sizes) {
            Ok(cut) if !self.seen(&cut.separation) && accept(self, &cut.separation) => {
                self.record(inst, cut.separation, cut.fallback);
                return Ok(true);
            }
            Ok(_) | Err(Error::SearchIncomplete(_)) => {}
            Err(e) => return Err(e),
        }
        let all = enumerate_separations(self.g, self.sizes)?;
        let pick = all
            .iter()
            .find(|s| !self.seen(s) && accept(self, s))
            .or_else(|| all.iter().find(|s| !self.seen(s)))
            .cloned();
        match pick {
            Some(sep) => {
                self.record(inst, sep, true);
                Ok(true)
            }
            None => Ok(false),
        }
    }

    fn last(&self) -> &LinearSeparation {
        &self.steps.last().expect("at least one step").separation
    }

    fn splits_a_block(&self, sep: &LinearSeparation) -> bool {
        !self.newly_separated(sep).is_empty()
    }

    fn finish(self, case_taken: Option<Lemma4Case>) -> ScheduleTrace {
        ScheduleTrace {
            steps: self.steps,
            case_taken,
        }
    }
}

fn check_shape(g: &GaleDiagram, n: Option<usize>) -> Result<()> {
    if g.m() != 3 {
        return Err(Error::Dimension(format!(
            "schedules run on diagrams in R^3, got m = {}",
            g.m()
        )));
    }
    if let Some(n) = n {
        if g.len() != n {
            return Err(Error::Dimension(format!("expected {n} vectors, got {}", g.len())));
        }
    }
    g.require_spanning()
}

/// The four-cut schedule for eight vectors in `R^3`:
/// all points one colour; the two halves as colours; one pair that stayed
/// together against the rest; then either another still-unsplit pair, or a
/// 4-subset that every earlier cut divided 3–1.
pub fn schedule_lemma4(g: &GaleDiagram) -> Result<ScheduleTrace> {
    check_shape(g, Some(8))?;
    let mut s = Scheduler::new(g);
    let any = |_: &Scheduler, _: &LinearSeparation| true;

    s.step(g.labels(), vec![], any)?;
    let first = s.last().clone();
    s.step(first.side_a.clone(), first.side_b.clone(), any)?;

    let stayed: Vec<(String, String)> = s
        .labels
        .iter()
        .tuple_combinations()
        .filter(|(a, b)| s.together_always(a, b))
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect();

    let Some((a, b)) = stayed.first().cloned() else {
        s.step(vec![], g.labels(), |sch, sep| sch.splits_a_block(sep))?;
        s.step(vec![], g.labels(), |sch, sep| sch.splits_a_block(sep))?;
        return Ok(s.finish(None));
    };
    let pair = vec![a.clone(), b.clone()];
    s.step(pair.clone(), complement(g, &pair), |_, sep| sep.splits(&a, &b))?;

    let still: Vec<(String, String)> = stayed[1..]
        .iter()
        .filter(|(x, y)| !s.last().splits(x, y))
        .cloned()
        .collect();

    let case = if let Some((x, y)) = still.first().cloned() {
        let pair = vec![x.clone(), y.clone()];
        s.step(pair.clone(), complement(g, &pair), |_, sep| sep.splits(&x, &y))?;
        Lemma4Case::SomeTogether
    } else {
        let seps: Vec<LinearSeparation> = s.steps.iter().map(|st| st.separation.clone()).collect();
        let quad = s.labels.iter().cloned().combinations(4).find(|q| {
            seps.iter().all(|sep| {
                let in_a = q.iter().filter(|l| sep.side_of(l) == Some(true)).count();
                in_a == 1 || in_a == 3
            })
        });
        match quad {
            Some(q) => {
                let q2 = q.clone();
                s.step(q.clone(), complement(g, &q), move |_, sep| {
                    q2.iter().filter(|l| sep.side_of(l) == Some(true)).count() == 2
                })?;
            }
            None => {
                s.step(vec![], g.labels(), |_, _| true)?;
            }
        }
        Lemma4Case::AllSplit
    };
    Ok(s.finish(Some(case)))
}

/// Block-refinement schedule for `d+4` vectors in `R^3`.
///
/// Labels are kept in blocks that no separation so far has split. The first
/// cut colours everything alike; each later cut colours the largest block
/// (smallest first label on ties) against the rest, which splits it. The
/// schedule ends once every block is a singleton. Eight vectors run the
/// four-cut schedule of [`schedule_lemma4`] instead.
pub fn schedule_lemma5(g: &GaleDiagram) -> Result<ScheduleTrace> {
    check_shape(g, None)?;
    if g.len() < 8 {
        return Err(Error::Dimension(format!(
            "block refinement needs d+4 >= 8 vectors, got {}",
            g.len()
        )));
    }
    if g.len() == 8 {
        return schedule_lemma4(g);
    }
    let mut s = Scheduler::new(g);
    if !s.step(g.labels(), vec![], |_, _| true)? {
        return Ok(s.finish(None));
    }
    for _ in 0..g.len() * g.len() {
        let blocks = blocks_of(&s);
        let Some(block) = blocks
            .iter()
            .filter(|b| b.len() >= 2)
            .max_by(|x, y| x.len().cmp(&y.len()).then_with(|| y[0].cmp(&x[0])))
            .cloned()
        else {
            break;
        };
        let rest = complement(g, &block);
        if !s.step(block, rest, |sch, sep| sch.splits_a_block(sep))? {
            break;
        }
        if s.steps.last().is_some_and(|st| st.newly_separated_pairs.is_empty()) {
            // fallback produced nothing that refines a block
            break;
        }
    }
    Ok(s.finish(None))
}

/// Maximal label groups that every separation so far keeps together, each
/// sorted, ordered by first label.
fn blocks_of(s: &Scheduler) -> Vec<Vec<String>> {
    let mut blocks: Vec<Vec<String>> = Vec::new();
    for l in &s.labels {
        match blocks.iter_mut().find(|b| s.together_always(&b[0], l)) {
            Some(b) => b.push(l.clone()),
            None => blocks.push(vec![l.clone()]),
        }
    }
    blocks
}
