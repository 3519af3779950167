//! Runs the solvers on a corpus and reconciles bound ≤ constructed ≤ exact.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    asymp_avg_bound, avg2_bound, avg_degree_bound, delta_floor_bound, extremal_upper, f2_value,
    profile012_bound, profile01_bound, BoundValue,
};
use crate::constructive::{
    bihole_avg2, bihole_avg_degree, bihole_delta1, bihole_profile012, bounded_degree_solve,
    Algorithm, GuaranteedBihole,
};
use crate::error::{Error, Result};
use crate::exact::{max_bihole_with, ExactOptions};
use crate::graph::{BipartiteGraph, Side};
use crate::harness::config::{CorpusGraph, RunConfig};
use crate::randomized::{bihole_random3, SamplingParams, SamplingTranscript};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl Outcome {
    pub fn tag(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skip => "skip",
        }
    }

    fn from_bool(ok: bool) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmEntry {
    pub algorithm: Algorithm,
    pub guarantee: Option<Rational>,
    pub constructed: Option<usize>,
    pub outcome: Outcome,
    /// Skip reason or error message.
    pub note: Option<String>,
    pub transcript: Option<SamplingTranscript>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactSummary {
    pub order: usize,
    pub optimal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub bound: BoundValue,
    /// Upper bounds are compared the other way round.
    pub upper: bool,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRecord {
    pub graph_id: String,
    pub n_a: usize,
    pub n_b: usize,
    pub m: usize,
    pub d_avg: Rational,
    pub delta_a: usize,
    /// A-side counts of degree 0, 1, 2 and 3.
    pub profile: [usize; 4],
    pub entries: Vec<AlgorithmEntry>,
    pub exact: Option<ExactSummary>,
    pub bounds: Vec<BoundCheck>,
    pub checks: Vec<Check>,
}

impl VerificationRecord {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.outcome == Outcome::Fail)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub records: usize,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Summary {
    pub fn of(records: &[VerificationRecord]) -> Summary {
        let mut s = Summary {
            records: records.len(),
            ..Default::default()
        };
        for c in records.iter().flat_map(|r| &r.checks) {
            match c.outcome {
                Outcome::Pass => s.pass += 1,
                Outcome::Fail => s.fail += 1,
                Outcome::Skip => s.skip += 1,
            }
        }
        s
    }
}

/// Runs one algorithm; precondition violations come back as `Err` with
/// the reason so the caller can record a skip.
pub fn run_algorithm(
    alg: Algorithm,
    g: &BipartiteGraph,
    cfg: &RunConfig,
) -> Result<(GuaranteedBihole, Option<SamplingTranscript>)> {
    let base = &cfg.base;
    Ok(match alg {
        Algorithm::Delta1 => (bihole_delta1(g)?, None),
        Algorithm::Profile012 => (bihole_profile012(g, base)?, None),
        Algorithm::Avg => (bihole_avg_degree(g, base)?, None),
        Algorithm::Avg2 => (bihole_avg2(g, base)?, None),
        Algorithm::Bounded => (bounded_degree_solve(g, base)?, None),
        Algorithm::Rand3 => {
            let params = SamplingParams::new(cfg.epsilon, cfg.rand3_seed)?;
            let (r, t) = bihole_random3(g, &params, base)?;
            (r, Some(t))
        }
    })
}

/// Bounds whose hypotheses `g` satisfies, flagged as lower or upper.
pub fn applicable_bounds(g: &BipartiteGraph, extremal_i: Option<usize>) -> Vec<(BoundValue, bool)> {
    if !g.is_balanced() {
        return Vec::new();
    }
    let n = g.n_a();
    let delta = g.max_degree(Side::A);
    let profile = g.degree_profile(Side::A);
    let mut out = Vec::new();
    if delta <= 2 {
        out.push((f2_value(n), false));
        out.push((
            profile012_bound(profile.n0(), profile.n1(), profile.n2()),
            false,
        ));
    }
    if delta <= 1 {
        out.push((profile01_bound(profile.n0(), profile.n1()), false));
    }
    out.push((delta_floor_bound(n, delta), false));
    out.push((avg_degree_bound(n, g.avg_degree()), false));
    if g.m() <= 2 * n {
        out.push((avg2_bound(n), false));
    }
    let d = g.avg_degree();
    out.push((
        asymp_avg_bound(n, *d.numer() as f64 / *d.denom() as f64),
        false,
    ));
    if let Some(i) = extremal_i {
        out.push((extremal_upper(i), true));
    }
    out.retain(|(b, _)| b.applicable);
    out
}

pub fn verify_graph(item: &CorpusGraph, cfg: &RunConfig) -> VerificationRecord {
    let g = &item.graph;
    let profile = g.degree_profile(Side::A);
    let mut checks = Vec::new();

    let exact = (cfg.exact_budget > 0 && g.n_a() <= cfg.exact_max_n).then(|| {
        let r = max_bihole_with(
            g,
            &ExactOptions {
                budget: cfg.exact_budget,
                threads: cfg.exact_threads,
                ..Default::default()
            },
        );
        checks.push(Check {
            name: "exact:valid".into(),
            outcome: Outcome::from_bool(r.witness.is_valid_in(g) && r.witness.order() == r.order),
        });
        ExactSummary {
            order: r.order,
            optimal: r.optimal,
        }
    });
    let optimal_order = exact.filter(|e| e.optimal).map(|e| e.order);

    let mut entries = Vec::new();
    for &alg in &cfg.algorithms {
        let entry = match run_algorithm(alg, g, cfg) {
            Ok((r, transcript)) => {
                let mut ok = r.bihole.is_valid_in(g) && r.meets_guarantee();
                if let Some(opt) = optimal_order {
                    let within = r.order() <= opt;
                    checks.push(Check {
                        name: format!("{alg}:le-exact"),
                        outcome: Outcome::from_bool(within),
                    });
                    ok &= within;
                }
                checks.push(Check {
                    name: format!("{alg}:guarantee"),
                    outcome: Outcome::from_bool(r.bihole.is_valid_in(g) && r.meets_guarantee()),
                });
                AlgorithmEntry {
                    algorithm: alg,
                    guarantee: Some(r.guarantee),
                    constructed: Some(r.order()),
                    outcome: Outcome::from_bool(ok),
                    note: None,
                    transcript,
                }
            }
            Err(Error::Precondition { reason, .. }) => {
                checks.push(Check {
                    name: format!("{alg}:guarantee"),
                    outcome: Outcome::Skip,
                });
                AlgorithmEntry {
                    algorithm: alg,
                    guarantee: None,
                    constructed: None,
                    outcome: Outcome::Skip,
                    note: Some(reason),
                    transcript: None,
                }
            }
            Err(e) => {
                checks.push(Check {
                    name: format!("{alg}:guarantee"),
                    outcome: Outcome::Fail,
                });
                let transcript = match &e {
                    Error::RetriesExhausted(t) => Some((**t).clone()),
                    _ => None,
                };
                AlgorithmEntry {
                    algorithm: alg,
                    guarantee: None,
                    constructed: None,
                    outcome: Outcome::Fail,
                    note: Some(e.to_string()),
                    transcript,
                }
            }
        };
        entries.push(entry);
    }

    let bounds = applicable_bounds(g, item.extremal_i)
        .into_iter()
        .map(|(bound, upper)| {
            let outcome = match optimal_order {
                _ if bound.asymptotic => Outcome::Skip,
                None if !upper => Outcome::Skip,
                // an upper bound also caps every constructed order
                None => Outcome::from_bool(
                    entries
                        .iter()
                        .filter_map(|e| e.constructed)
                        .all(|c| c as i64 <= bound.value.floor()),
                ),
                Some(opt) if upper => Outcome::from_bool(opt as i64 <= bound.value.floor()),
                Some(opt) => Outcome::from_bool(opt >= bound.value.ceil_clamped()),
            };
            checks.push(Check {
                name: format!("bound:{}", bound.name),
                outcome,
            });
            BoundCheck {
                bound,
                upper,
                outcome,
            }
        })
        .collect();

    VerificationRecord {
        graph_id: item.id.clone(),
        n_a: g.n_a(),
        n_b: g.n_b(),
        m: g.m(),
        d_avg: g.avg_degree(),
        delta_a: g.max_degree(Side::A),
        profile: [profile.n0(), profile.n1(), profile.n2(), profile.n3()],
        entries,
        exact,
        bounds,
        checks,
    }
}

/// Verifies every corpus graph on a pool of `workers` threads; records come
/// back in corpus order.
pub fn run_verification(
    cfg: &RunConfig,
    workers: usize,
) -> Result<(Vec<VerificationRecord>, Summary)> {
    let corpus = cfg.corpus_graphs()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    let records: Vec<VerificationRecord> = pool.install(|| {
        corpus
            .par_iter()
            .map(|item| verify_graph(item, cfg))
            .collect()
    });
    let summary = Summary::of(&records);
    Ok((records, summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::Family;

    fn config(corpus: Vec<Family>) -> RunConfig {
        RunConfig {
            corpus,
            ..Default::default()
        }
    }

    #[test]
    fn extremal_two_all_algorithms() {
        let cfg = config(vec![Family::ExtremalPaths { i: vec![2] }]);
        let (records, summary) = run_verification(&cfg, 1).unwrap();
        assert_eq!(records.len(), 1);
        let r = &records[0];
        assert_eq!(
            r.exact,
            Some(ExactSummary {
                order: 5,
                optimal: true
            })
        );
        assert!(!r.failed(), "{:?}", r.checks);
        assert_eq!(summary.fail, 0);
        let delta1 = r
            .entries
            .iter()
            .find(|e| e.algorithm == Algorithm::Delta1)
            .unwrap();
        assert_eq!(delta1.outcome, Outcome::Skip);
        assert!(r
            .bounds
            .iter()
            .any(|b| b.upper && b.outcome == Outcome::Pass));
    }

    #[test]
    fn random_degree_two_profile_passes() {
        let cfg = RunConfig {
            algorithms: vec![Algorithm::Profile012],
            ..config(vec![Family::RandomDelta {
                n: vec![12],
                delta: vec![2],
                p: Rational::new(1, 2),
                seeds: (0..100).collect(),
            }])
        };
        let (records, summary) = run_verification(&cfg, 4).unwrap();
        assert_eq!(records.len(), 100);
        assert_eq!(summary.fail, 0);
        assert!(records
            .iter()
            .all(|r| r.entries[0].outcome == Outcome::Pass));
    }

    #[test]
    fn zero_budget_keeps_bound_checks() {
        let cfg = RunConfig {
            exact_budget: 0,
            algorithms: vec![Algorithm::Avg],
            ..config(vec![Family::RandomDelta {
                n: vec![50],
                delta: vec![2],
                p: Rational::from_integer(1),
                seeds: vec![1],
            }])
        };
        let (records, _) = run_verification(&cfg, 1).unwrap();
        assert!(records[0].exact.is_none());
        assert_eq!(records[0].entries[0].outcome, Outcome::Pass);
    }
}
