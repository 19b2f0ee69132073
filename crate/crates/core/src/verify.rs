//! Seeded, reproducible verification runs tying the modules together, and
//! exact bound arithmetic.
//!
//! Trial `i` of a run with seed `s` uses the configuration seed
//! `s + i·0x9E3779B97F4A7C15` (wrapping), so any failing trial can be
//! replayed on its own from the seed recorded in the report.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::configs::{random_config, LabeledPoint, PointConfig, SimplexPair};
use crate::crossing::{
    count_crossing_pairs, extend_crossing, simplices_cross, vkf_find, vkf_find_lifted,
};
use crate::error::{Error, Result};
use crate::exact::rational::int;
use crate::exact::Rational;
use crate::gale::{
    gale_transform, separation_to_crossing, verify_lemma2 as lemma2_holds, GaleDiagram,
    LabeledVector,
};
use crate::separations::{
    enumerate_separations, ham_sandwich_cut, is_strictly_realizable, schedule_lemma4,
    schedule_lemma5, HamSandwichInstance,
};

/// Coordinate range for random configurations in verification runs.
pub const TRIAL_RANGE: u32 = 30;
/// Upper limit on `C(n, ⌊n/2⌋)` for exhaustive separation-versus-crossing checks.
pub const LEMMA1_BUDGET: u64 = 10_000;
/// Dimensions for which the `2d`-point pipeline is run exhaustively.
pub const LEMMA5_DIMENSIONS: [usize; 3] = [4, 5, 6];
pub const VKF_K_RANGE: std::ops::RangeInclusive<usize> = 1..=3;
pub const PLANAR_N_RANGE: std::ops::RangeInclusive<usize> = 4..=10;
/// Largest colour class in random Ham Sandwich instances.
pub const HAM_MAX_COLOUR: usize = 10;

pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_add((trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialFailure {
    pub trial: usize,
    pub seed: u64,
    pub detail: String,
    /// set when the failure is an invariant breach rather than a false claim
    pub breach: bool,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub check_name: String,
    pub parameters: BTreeMap<String, Value>,
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<TrialFailure>,
    /// per-metric min/max/sum over trials
    pub metrics: BTreeMap<String, Value>,
    /// observations worth reporting that are not failures
    pub findings: Vec<String>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn has_breach(&self) -> bool {
        self.failures.iter().any(|f| f.breach)
    }

    pub fn metric(&self, name: &str, stat: &str) -> Option<i64> {
        self.metrics.get(name)?.get(stat)?.as_i64()
    }

    /// JSON form. Elapsed time is left out so that reruns are byte-identical.
    pub fn to_json(&self) -> Value {
        json!({
            "check_name": self.check_name,
            "parameters": self.parameters,
            "trials": self.trials,
            "passes": self.passes,
            "failures": self.failures.iter().map(|f| json!({
                "trial": f.trial,
                "seed": f.seed,
                "detail": f.detail,
                "breach": f.breach,
            })).collect::<Vec<_>>(),
            "metrics": self.metrics,
            "findings": self.findings,
        })
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {}/{} passed ({} failures) in {:.2?}",
            self.check_name,
            self.passes,
            self.trials,
            self.failures.len(),
            self.elapsed
        )
    }
}

#[derive(Default)]
struct TrialData {
    failure: Option<String>,
    values: Vec<(&'static str, i64)>,
    findings: Vec<String>,
}

impl TrialData {
    fn fail_if(&mut self, cond: bool, detail: impl FnOnce() -> String) {
        if cond && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }

    fn value(&mut self, key: &'static str, v: impl TryInto<i64>) {
        self.values.push((key, v.try_into().unwrap_or(i64::MAX)));
    }
}

fn run_trials<F>(
    name: &str,
    parameters: BTreeMap<String, Value>,
    trials: usize,
    seed: u64,
    body: F,
) -> VerificationReport
where
    F: Fn(usize, u64) -> Result<TrialData> + Sync,
{
    let start = Instant::now();
    let outcomes: Vec<(usize, u64, Result<TrialData>)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(seed, i);
            (i, s, body(i, s))
        })
        .collect();
    let mut failures = Vec::new();
    let mut findings = Vec::new();
    let mut stats: BTreeMap<&'static str, (i64, i64, i64)> = BTreeMap::new();
    for (trial, s, outcome) in outcomes {
        match outcome {
            Ok(data) => {
                for (k, v) in data.values {
                    let e = stats.entry(k).or_insert((v, v, 0));
                    e.0 = e.0.min(v);
                    e.1 = e.1.max(v);
                    e.2 = e.2.saturating_add(v);
                }
                findings.extend(data.findings.into_iter().map(|f| format!("trial {trial}: {f}")));
                if let Some(detail) = data.failure {
                    failures.push(TrialFailure {
                        trial,
                        seed: s,
                        detail,
                        breach: false,
                    });
                }
            }
            Err(e) => failures.push(TrialFailure {
                trial,
                seed: s,
                detail: e.to_string(),
                breach: e.is_invariant_breach(),
            }),
        }
    }
    let metrics = stats
        .into_iter()
        .map(|(k, (min, max, sum))| (k.to_string(), json!({"min": min, "max": max, "sum": sum})))
        .collect();
    VerificationReport {
        check_name: name.to_string(),
        parameters,
        trials,
        passes: trials - failures.len(),
        failures,
        metrics,
        findings,
        elapsed: start.elapsed(),
    }
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn floor_log2(x: usize) -> usize {
    (usize::BITS - 1 - x.leading_zeros()) as usize
}

fn binom_u64(n: usize, k: usize) -> u64 {
    if k > n {
        0
    } else {
        binomial(n as u64, k as u64)
    }
}

fn pick(fixed: Option<&PointConfig>, n: usize, d: usize, seed: u64) -> Result<PointConfig> {
    match fixed {
        Some(p) => Ok(p.clone()),
        None => random_config(n, d, seed, TRIAL_RANGE),
    }
}

fn check_fixed(fixed: Option<&PointConfig>, n: usize, d: usize) -> Result<()> {
    if let Some(p) = fixed {
        if p.len() != n || p.dimension() != d {
            return Err(Error::Dimension(format!(
                "fixed configuration has {} points in R^{}, expected {n} in R^{d}",
                p.len(),
                p.dimension()
            )));
        }
        p.require_general_position()?;
    }
    Ok(())
}

/// Separation count of the Gale diagram against the direct crossing count
/// with part sizes `(⌊n/2⌋, ⌈n/2⌉)`, plus a crossing check of every mapped
/// pair.
pub fn verify_lemma1(
    d: usize,
    n: usize,
    trials: usize,
    seed: u64,
    fixed: Option<&PointConfig>,
) -> Result<VerificationReport> {
    if d == 0 || !((d + 2..=d + 6).contains(&n) || n == 2 * d) || n < d + 2 {
        return Err(Error::Budget(format!(
            "lemma1 needs d+2 <= n <= d+6 or n = 2d, got d={d} n={n}"
        )));
    }
    if binom_u64(n, n / 2) > LEMMA1_BUDGET {
        return Err(Error::Budget(format!(
            "C({n},{}) exceeds the exhaustive budget {LEMMA1_BUDGET}",
            n / 2
        )));
    }
    check_fixed(fixed, n, d)?;
    let trials = if fixed.is_some() { 1 } else { trials };
    Ok(run_trials(
        "lemma1",
        params(&[("d", json!(d)), ("n", json!(n)), ("seed", json!(seed))]),
        trials,
        seed,
        |_, s| {
            let p = pick(fixed, n, d, s)?;
            let g = gale_transform(&p)?;
            let mut t = TrialData::default();
            t.fail_if(!g.orthogonal_to(&p), || "diagram not orthogonal to M".into());
            let seps = enumerate_separations(&g, g.proper_sizes())?;
            let direct = count_crossing_pairs(&p, n / 2, n - n / 2, false)?;
            t.value("separations", seps.len());
            t.value("crossings", direct.crossing_pairs);
            t.fail_if(seps.len() != direct.crossing_pairs, || {
                format!(
                    "{} separations but {} crossing pairs",
                    seps.len(),
                    direct.crossing_pairs
                )
            });
            for sep in &seps {
                let pair = separation_to_crossing(&g, sep)?;
                let crosses = simplices_cross(&p, &pair.left, &pair.right)?.is_some();
                t.fail_if(!crosses, || {
                    format!("separation {:?} | {:?} maps to a non-crossing pair", pair.left, pair.right)
                });
            }
            Ok(t)
        },
    ))
}

/// Moves the last point onto the segment between the first two, creating
/// three collinear points.
fn make_degenerate(p: &PointConfig) -> Result<PointConfig> {
    let mut pts: Vec<LabeledPoint> = p.points().to_vec();
    let last = pts.len() - 1;
    let half = Rational::new(1.into(), 2.into());
    pts[last].coords = pts[0]
        .coords
        .iter()
        .zip(&pts[1].coords)
        .map(|(a, b)| (a + b) * &half)
        .collect();
    PointConfig::new(p.dimension(), pts)
}

/// General position against Gale spanning on `trials` random configurations
/// and `degenerate` configurations with three collinear points.
pub fn verify_lemma2(trials: usize, degenerate: usize, seed: u64) -> Result<VerificationReport> {
    let shapes: Vec<(usize, usize)> = (2..=4)
        .flat_map(|d| (d + 2..=d + 4).map(move |n| (d, n)))
        .collect();
    Ok(run_trials(
        "lemma2",
        params(&[
            ("trials", json!(trials)),
            ("degenerate", json!(degenerate)),
            ("seed", json!(seed)),
        ]),
        trials + degenerate,
        seed,
        |i, s| {
            let (d, n) = shapes[i % shapes.len()];
            let mut p = random_config(n, d, s, TRIAL_RANGE)?;
            let degen = i >= trials;
            if degen {
                p = make_degenerate(&p)?;
            }
            let mut t = TrialData::default();
            let gp = p.is_general_position();
            t.fail_if(gp == degen, || {
                format!("constructed configuration has general position = {gp}")
            });
            let agree = lemma2_holds(&p)?;
            t.fail_if(!agree, || {
                format!("general position = {gp} disagrees with Gale spanning (d={d}, n={n})")
            });
            t.value("degenerate", degen as i64);
            Ok(t)
        },
    ))
}

/// Eight points in `R^4`: at least four crossing (4,4)-pairs, at least four
/// distinct separations from the colouring schedule, each mapping to a
/// crossing.
pub fn verify_lemma4(
    trials: usize,
    seed: u64,
    fixed: Option<&PointConfig>,
) -> Result<VerificationReport> {
    check_fixed(fixed, 8, 4)?;
    let trials = if fixed.is_some() { 1 } else { trials };
    Ok(run_trials(
        "lemma4",
        params(&[("seed", json!(seed)), ("fixed", json!(fixed.is_some()))]),
        trials,
        seed,
        |_, s| {
            let p = pick(fixed, 8, 4, s)?;
            let mut t = TrialData::default();
            let direct = count_crossing_pairs(&p, 4, 4, false)?;
            t.value("direct_count", direct.crossing_pairs);
            t.fail_if(direct.crossing_pairs < 4, || {
                format!("only {} crossing (4,4)-pairs", direct.crossing_pairs)
            });
            let g = gale_transform(&p)?;
            let trace = schedule_lemma4(&g)?;
            t.value("schedule_separations", trace.len());
            t.value(
                "fallback_steps",
                trace.steps.iter().filter(|s| s.fallback).count(),
            );
            t.value(
                "case_i",
                (trace.case_taken == Some(crate::separations::Lemma4Case::AllSplit)) as i64,
            );
            t.fail_if(trace.len() < 4 || !trace.certificates_hold(), || {
                format!("schedule produced {} certified separations", trace.len())
            });
            for sep in trace.separations() {
                let pair = separation_to_crossing(&g, sep)?;
                t.fail_if(simplices_cross(&p, &pair.left, &pair.right)?.is_none(), || {
                    format!("schedule separation {:?} | {:?} does not cross", pair.left, pair.right)
                });
            }
            Ok(t)
        },
    ))
}

/// VKF-derived pair sizes for `d+3` points in `R^d`: `d/2+1` per side for
/// even `d`, `(d+3)/2` per side for odd `d` (found through the lifting).
pub fn vkf_side_size(d: usize) -> usize {
    if d.is_multiple_of(2) {
        d / 2 + 1
    } else {
        d.div_ceil(2) + 1
    }
}

/// Number of ways to top up a VKF pair to two `d`-vertex simplices using
/// the remaining points of a `2d`-point set.
pub fn expected_extensions(d: usize) -> u64 {
    let side = vkf_side_size(d);
    binom_u64(2 * d - 2 * side, d - side)
}

fn vkf_witness(sub: &PointConfig) -> Result<crate::crossing::CrossingWitness> {
    if sub.dimension().is_multiple_of(2) {
        vkf_find(sub)
    } else {
        vkf_find_lifted(sub)
    }
}

/// The `2d`-point pipeline: schedules on every `(d+4)`-subset, mapped to
/// crossings, extended to `(d,d)`-pairs and deduplicated, compared with the
/// exhaustive count.
pub fn verify_lemma5(
    d: usize,
    trials: usize,
    seed: u64,
    fixed: Option<&PointConfig>,
) -> Result<VerificationReport> {
    if !LEMMA5_DIMENSIONS.contains(&d) {
        return Err(Error::Budget(format!(
            "lemma5 runs only for d in {LEMMA5_DIMENSIONS:?}, got {d}"
        )));
    }
    check_fixed(fixed, 2 * d, d)?;
    let trials = if fixed.is_some() { 1 } else { trials };
    let floor = floor_log2(d + 4);
    Ok(run_trials(
        "lemma5",
        params(&[("d", json!(d)), ("seed", json!(seed)), ("fixed", json!(fixed.is_some()))]),
        trials,
        seed,
        |_, s| {
            let p = pick(fixed, 2 * d, d, s)?;
            let mut t = TrialData::default();
            let direct = count_crossing_pairs(&p, d, d, false)?;
            let mut derived: BTreeSet<SimplexPair> = BTreeSet::new();
            let mut raw_total = 0usize;
            let mut min_per_subset = usize::MAX;
            let mut subsets = 0usize;
            let mut distributions = 0usize;
            let mut crossing_ext = 0usize;
            for idx in p.label_order().into_iter().combinations(d + 4) {
                subsets += 1;
                let sub = p.subset(&idx);
                let g = gale_transform(&sub)?;
                let trace = schedule_lemma5(&g)?;
                min_per_subset = min_per_subset.min(trace.len());
                raw_total += trace.len();
                t.fail_if(trace.len() < floor || !trace.certificates_hold(), || {
                    format!(
                        "subset {:?}: {} certified separations < {floor}",
                        sub.labels(),
                        trace.len()
                    )
                });
                for sep in trace.separations() {
                    let pair = separation_to_crossing(&g, sep)?;
                    let Some(w) = simplices_cross(&p, &pair.left, &pair.right)? else {
                        t.fail_if(true, || {
                            format!("separation {:?} | {:?} does not cross", pair.left, pair.right)
                        });
                        continue;
                    };
                    let ext = extend_crossing(&p, &w, d)?;
                    distributions += ext.distributions_checked;
                    crossing_ext += ext.crossing.len();
                    derived.extend(ext.crossing.into_iter().map(|c| c.pair));
                }
            }
            t.value("direct_count", direct.crossing_pairs);
            t.value("derived_deduped", derived.len());
            t.value("derived_raw", raw_total);
            t.value("min_per_subset", min_per_subset);
            t.value("subsets", subsets);
            t.value("extension_distributions", distributions);
            t.value("extension_crossing", crossing_ext);
            t.fail_if(direct.crossing_pairs < derived.len(), || {
                format!(
                    "direct count {} below schedule-derived count {}",
                    direct.crossing_pairs,
                    derived.len()
                )
            });
            t.fail_if(derived.len() < floor, || {
                format!("deduplicated derived count {} < {floor}", derived.len())
            });

            // VKF cross-check on the first d+3 points (lifted when d is odd)
            let head: Vec<usize> = p.label_order().into_iter().take(d + 3).collect();
            let w = vkf_witness(&p.subset(&head))?;
            let ext = extend_crossing(&p, &w, d)?;
            t.value("vkf_extension_distributions", ext.distributions_checked);
            t.value("vkf_extension_crossing", ext.crossing.len());
            t.fail_if(ext.distributions_checked as u64 != expected_extensions(d), || {
                format!(
                    "VKF pair extended in {} ways, expected {}",
                    ext.distributions_checked,
                    expected_extensions(d)
                )
            });
            for nc in &ext.non_crossing {
                t.findings.push(format!(
                    "extension {:?} | {:?} of VKF pair {:?} | {:?} does not cross",
                    nc.left, nc.right, w.pair.left, w.pair.right
                ));
            }
            Ok(t)
        },
    ))
}

/// Every crossing pair among the first `d+3` points with the VKF part sizes
/// is extended over all distributions of the remaining `d-3` points; the
/// crossing fraction is reported and non-crossing extensions are listed as
/// findings.
pub fn verify_extension(d: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    if !LEMMA5_DIMENSIONS.contains(&d) {
        return Err(Error::Budget(format!(
            "extension study runs only for d in {LEMMA5_DIMENSIONS:?}, got {d}"
        )));
    }
    let side = vkf_side_size(d);
    let expected = expected_extensions(d);
    Ok(run_trials(
        "extension",
        params(&[("d", json!(d)), ("seed", json!(seed))]),
        trials,
        seed,
        |_, s| {
            let p = random_config(2 * d, d, s, TRIAL_RANGE)?;
            let head: Vec<usize> = p.label_order().into_iter().take(d + 3).collect();
            let sub = p.subset(&head);
            let mut t = TrialData::default();
            let pairs = count_crossing_pairs(&sub, side, side, true)?;
            t.fail_if(pairs.crossing_pairs == 0, || "no VKF pair found".into());
            let (mut checked, mut crossing) = (0usize, 0usize);
            for w in &pairs.witnesses {
                let ext = extend_crossing(&p, w, d)?;
                t.fail_if(ext.distributions_checked as u64 != expected, || {
                    format!("{} distributions, expected {expected}", ext.distributions_checked)
                });
                checked += ext.distributions_checked;
                crossing += ext.crossing.len();
                for nc in &ext.non_crossing {
                    t.findings.push(format!(
                        "extension {:?} | {:?} of {:?} | {:?} does not cross",
                        nc.left, nc.right, w.pair.left, w.pair.right
                    ));
                }
            }
            t.value("vkf_pairs", pairs.crossing_pairs);
            t.value("distributions", checked);
            t.value("crossing", crossing);
            Ok(t)
        },
    ))
}

pub fn verify_vkf(k: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    if !VKF_K_RANGE.contains(&k) {
        return Err(Error::Budget(format!("vkf runs for k in {VKF_K_RANGE:?}, got {k}")));
    }
    Ok(run_trials(
        "vkf",
        params(&[("k", json!(k)), ("seed", json!(seed))]),
        trials,
        seed,
        |_, s| {
            let p = random_config(2 * k + 3, 2 * k, s, TRIAL_RANGE)?;
            let w = vkf_find(&p)?;
            let mut t = TrialData::default();
            t.fail_if(!w.validate(&p)?, || "witness fails re-validation".into());
            t.fail_if(w.pair.left.len() != k + 1 || w.pair.right.len() != k + 1, || {
                "witness sides have the wrong size".into()
            });
            Ok(t)
        },
    ))
}

/// `⌈0.375·C(n,4)⌉ = ⌈3·C(n,4)/8⌉`.
pub fn planar_threshold(n: usize) -> u64 {
    (3 * binom_u64(n, 4)).div_ceil(8)
}

pub fn verify_planar_constant(n: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    if !PLANAR_N_RANGE.contains(&n) {
        return Err(Error::Budget(format!("planar check runs for n in {PLANAR_N_RANGE:?}, got {n}")));
    }
    let threshold = planar_threshold(n);
    Ok(run_trials(
        "planar",
        params(&[("n", json!(n)), ("seed", json!(seed)), ("threshold", json!(threshold))]),
        trials,
        seed,
        |_, s| {
            let p = random_config(n, 2, s, TRIAL_RANGE)?;
            let c = count_crossing_pairs(&p, 2, 2, false)?;
            let mut t = TrialData::default();
            t.value("crossings", c.crossing_pairs);
            t.fail_if((c.crossing_pairs as u64) < threshold, || {
                format!("{} crossings < {threshold}", c.crossing_pairs)
            });
            Ok(t)
        },
    ))
}

/// A random spanning diagram in `R^3` whose vectors sum to zero.
pub fn random_diagram(n: usize, seed: u64, range: i64) -> Result<GaleDiagram> {
    if n < 4 {
        return Err(Error::Sizes("random diagrams need at least 4 vectors".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..crate::configs::RANDOM_RETRY_LIMIT {
        let mut vs: Vec<Vec<Rational>> = (0..n - 1)
            .map(|_| (0..3).map(|_| int(rng.gen_range(-range..=range))).collect())
            .collect();
        let last: Vec<Rational> = (0..3)
            .map(|k| -vs.iter().map(|v| &v[k]).sum::<Rational>())
            .collect();
        vs.push(last);
        let g = GaleDiagram::new(
            3,
            n - 4,
            vs.into_iter()
                .enumerate()
                .map(|(i, c)| LabeledVector {
                    label: format!("p{}", i + 1),
                    coords: c,
                })
                .collect(),
        )?;
        if g.spanning_violation().is_none() {
            return Ok(g);
        }
    }
    Err(Error::RetryLimit {
        n,
        d: n - 4,
        range: range as u32,
        attempts: crate::configs::RANDOM_RETRY_LIMIT,
    })
}

/// Random two-colourings of random diagrams in `R^3` with colour classes of
/// at most ten vectors; each cut is re-counted against both bounds and its
/// realizability re-checked by LP.
pub fn verify_ham_sandwich(trials: usize, seed: u64) -> Result<VerificationReport> {
    Ok(run_trials(
        "hamsandwich",
        params(&[("seed", json!(seed)), ("max_colour", json!(HAM_MAX_COLOUR))]),
        trials,
        seed,
        |_, s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0x5EED);
            let n = rng.gen_range(6..=2 * HAM_MAX_COLOUR);
            let g = random_diagram(n, s, 20)?;
            let mut labels = g.labels();
            labels.shuffle(&mut rng);
            let lo = n.saturating_sub(HAM_MAX_COLOUR);
            let k = rng.gen_range(lo..=HAM_MAX_COLOUR.min(n));
            let c2 = labels.split_off(k);
            let inst = HamSandwichInstance::new(&g, labels, c2)?;
            let cut = ham_sandwich_cut(&g, &inst, g.proper_sizes())?;
            let mut t = TrialData::default();
            t.value("fallback", cut.fallback as i64);
            t.value("n", n);
            t.fail_if(!cut.satisfies(&g, &inst)?, || {
                format!("cut violates the bisection bounds for c1={:?}", inst.c1)
            });
            t.fail_if(!is_strictly_realizable(&g, &cut.separation)?, || {
                "cut is not strictly realizable".into()
            });
            cut.separation.check_proper(&g)?;
            Ok(t)
        },
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Lemma4,
    Lemma5Schedule,
    DirectCount,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Lemma4 => "lemma4",
            Provenance::Lemma5Schedule => "lemma5_schedule",
            Provenance::DirectCount => "direct_count",
        }
    }
}

impl std::str::FromStr for Provenance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma4" => Ok(Provenance::Lemma4),
            "lemma5_schedule" => Ok(Provenance::Lemma5Schedule),
            "direct_count" => Ok(Provenance::DirectCount),
            other => Err(Error::Parse(format!("unknown provenance `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub d: usize,
    pub n: usize,
    pub cd_lower_used: u64,
    pub pairs_choose: BigUint,
    pub implied_crossing_lower_bound: BigUint,
    pub provenance: Provenance,
}

impl BoundReport {
    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "n": self.n,
            "cd_lower_used": self.cd_lower_used,
            "pairs_choose": self.pairs_choose.to_string(),
            "implied_crossing_lower_bound": self.implied_crossing_lower_bound.to_string(),
            "provenance": self.provenance.as_str(),
        })
    }
}

/// `cd_lower · C(n, 2d)` as a lower bound on the number of crossing pairs of
/// `(d-1)`-simplices among `n` points.
pub fn bound_report(n: usize, d: usize, cd_lower: u64, provenance: Provenance) -> Result<BoundReport> {
    if d == 0 || n < 2 * d {
        return Err(Error::Sizes(format!("bound needs n >= 2d, got n={n} d={d}")));
    }
    let choose = binomial(BigUint::from(n), BigUint::from(2 * d));
    Ok(BoundReport {
        d,
        n,
        cd_lower_used: cd_lower,
        implied_crossing_lower_bound: &choose * BigUint::from(cd_lower),
        pairs_choose: choose,
        provenance,
    })
}

/// Pascal's rule, used to cross-check the closed-form binomials.
pub fn binomial_pascal(n: usize, k: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::one(); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(BigUint::zero)
}
