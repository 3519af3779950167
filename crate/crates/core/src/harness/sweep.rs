//! Achieved bihole order per side size over a range of sizes.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{format_rational, format_real};
use crate::constructive::{Algorithm, BoundedDegreeSolver};
use crate::error::{Error, Result};
use crate::generate::{gen_random_bounded, gen_random_edges};
use crate::graph::BipartiteGraph;
use crate::harness::config::RunConfig;
use crate::harness::verify::run_algorithm;
use crate::Rational;

pub const SWEEP_HEADER: &str = "n,algorithm,family,runs,failures,min_ratio,median_ratio,max_ratio";

#[derive(Debug, Clone, PartialEq)]
pub enum SweepFamily {
    RandomDelta { delta: usize, p: Rational },
    RandomEdges { d: Rational },
}

impl SweepFamily {
    fn generate(&self, n: usize, seed: u64) -> Result<BipartiteGraph> {
        match self {
            SweepFamily::RandomDelta { delta, p } => gen_random_bounded(n, *delta, *p, seed),
            SweepFamily::RandomEdges { d } => {
                let m = (*d * Rational::from_integer(n as i64))
                    .floor()
                    .to_integer()
                    .max(0) as usize;
                gen_random_edges(n, m, seed)
            }
        }
    }

    fn label(&self) -> String {
        match self {
            SweepFamily::RandomDelta { delta, p } => {
                format!("random-delta_D{delta}_p{}", format_rational(*p))
            }
            SweepFamily::RandomEdges { d } => format!("random-edges_d{}", format_rational(*d)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub family: SweepFamily,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub algorithm: Algorithm,
    pub epsilon: Rational,
    pub base: BoundedDegreeSolver,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub n: usize,
    pub algorithm: Algorithm,
    pub family: String,
    pub runs: usize,
    pub failures: usize,
    pub min_ratio: f64,
    pub median_ratio: f64,
    pub max_ratio: f64,
}

fn median(sorted: &[f64]) -> f64 {
    let k = sorted.len();
    if k % 2 == 1 {
        sorted[k / 2]
    } else {
        0.5 * (sorted[k / 2 - 1] + sorted[k / 2])
    }
}

/// Runs every `(n, seed)` pair; the seed drives both the graph and, for
/// the randomized algorithm, the sampling.
pub fn run_sweep(spec: &SweepSpec, workers: usize) -> Result<Vec<SweepPoint>> {
    if spec.sizes.is_empty() || spec.seeds.is_empty() {
        return Err(Error::InvalidInput(
            "sweep needs at least one size and one seed".into(),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))?;
    let mut points = Vec::with_capacity(spec.sizes.len());
    for &n in &spec.sizes {
        let outcomes: Vec<Result<Option<usize>>> = pool.install(|| {
            spec.seeds
                .par_iter()
                .map(|&seed| {
                    let g = spec.family.generate(n, seed)?;
                    let cfg = RunConfig {
                        base: spec.base,
                        epsilon: spec.epsilon,
                        rand3_seed: seed,
                        ..Default::default()
                    };
                    match run_algorithm(spec.algorithm, &g, &cfg) {
                        Ok((r, _)) => Ok(Some(r.order())),
                        Err(Error::Precondition { .. }) | Err(Error::RetriesExhausted(_)) => {
                            Ok(None)
                        }
                        Err(e) => Err(e),
                    }
                })
                .collect()
        });
        let mut ratios = Vec::new();
        let mut failures = 0;
        for o in outcomes {
            match o? {
                Some(order) => ratios.push(order as f64 / n.max(1) as f64),
                None => failures += 1,
            }
        }
        ratios.sort_by(f64::total_cmp);
        let (min, med, max) = if ratios.is_empty() {
            (f64::NAN, f64::NAN, f64::NAN)
        } else {
            (ratios[0], median(&ratios), ratios[ratios.len() - 1])
        };
        points.push(SweepPoint {
            n,
            algorithm: spec.algorithm,
            family: spec.family.label(),
            runs: ratios.len(),
            failures,
            min_ratio: min,
            median_ratio: med,
            max_ratio: max,
        });
    }
    Ok(points)
}

/// Whether medians never drop by more than `slack` from one size to the next.
pub fn medians_nondecreasing(points: &[SweepPoint], slack: f64) -> bool {
    points
        .windows(2)
        .all(|w| w[1].median_ratio + slack >= w[0].median_ratio)
}

pub fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            p.n,
            p.algorithm,
            p.family,
            p.runs,
            p.failures,
            format_real(p.min_ratio),
            format_real(p.median_ratio),
            format_real(p.max_ratio)
        ));
    }
    out
}
