//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines always show; any failure makes the binary exit non-zero.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bihole::bounds::{extremal_upper, profile012_bound, theorem1_constant, BoundNum};
use bihole::constructive::{
    bihole_avg2, bihole_avg_degree, bihole_delta1, bihole_profile012, BoundedDegreeSolver,
    GuaranteedBihole,
};
use bihole::exact::{
    brute_force_oracle, max_bihole, max_bihole_with, ExactOptions, DEFAULT_NODE_BUDGET,
};
use bihole::generate::{cycle, gen_extremal_paths, gen_random_bounded, gen_random_edges};
use bihole::harness::config::{CorpusGraph, Family, RunConfig};
use bihole::harness::sweep::{medians_nondecreasing, run_sweep, sweep_csv, SweepFamily, SweepSpec};
use bihole::harness::verify::verify_graph;
use bihole::harness::{render, run_verification, ReportFormat};
use bihole::randomized::{bihole_random3, solve_p_fixed_point, SamplingParams};
use bihole::{BipartiteGraph, Rational, Side};

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn fixed_point() -> Outcome {
    let start = Instant::now();
    let p = solve_p_fixed_point(1e-12);
    let elapsed = start.elapsed();
    let residual = (p - (1.0 - p).powi(3)).abs();
    outcome(
        (p - 0.31767).abs() < 1e-5 && residual <= 1e-12 && elapsed < Duration::from_millis(1),
        format!("p={p:.12} residual={residual:.1e} time={elapsed:?}"),
    )
}

fn constant_assembly() -> Outcome {
    let c = theorem1_constant(Rational::from_integer(0)).expect("epsilon 0 is in range");
    let p = solve_p_fixed_point(1e-12);
    let s = p * p * p + p;
    outcome(
        (0.34917..=0.34920).contains(&c) && s <= 0.34974,
        format!("constant(0)={c:.9} p^3+p={s:.9}"),
    )
}

fn extremal_sandwich() -> Outcome {
    let base = BoundedDegreeSolver::default();
    let g2 = gen_extremal_paths(2).unwrap();
    let exact2 = brute_force_oracle(&g2).unwrap().order;
    let built2 = bihole_profile012(&g2, &base).unwrap().order();

    let g4 = gen_extremal_paths(4).unwrap();
    let built4 = bihole_profile012(&g4, &base).unwrap().order();
    let upper4 = extremal_upper(4).value.floor();
    let start = Instant::now();
    let exact4 = max_bihole(&g4, DEFAULT_NODE_BUDGET);
    let pass = exact2 == 5
        && (4..=5).contains(&built2)
        && built4 >= 19
        && upper4 == 19
        && exact4.optimal
        && exact4.order == 19;
    outcome(
        pass,
        format!(
            "i=2: exact={exact2} constructed={built2}; i=4: constructed={built4} upper={upper4} exact={} optimal={} ({:?})",
            exact4.order,
            exact4.optimal,
            start.elapsed()
        ),
    )
}

fn exhaustive_four() -> Outcome {
    let mut hoods = vec![vec![]];
    for b in 0..4 {
        hoods.push(vec![b]);
        for c in b + 1..4 {
            hoods.push(vec![b, c]);
        }
    }
    let mut minimum = usize::MAX;
    let mut c8_order = None;
    let c8 = cycle(4);
    for code in 0..11usize.pow(4) {
        let mut rest = code;
        let mut edges = Vec::new();
        for a in 0..4 {
            edges.extend(hoods[rest % 11].iter().map(|&b| (a, b)));
            rest /= 11;
        }
        let g = BipartiteGraph::new(4, 4, edges).unwrap();
        let order = brute_force_oracle(&g).unwrap().order;
        minimum = minimum.min(order);
        if g == c8 {
            c8_order = Some(order);
        }
    }
    outcome(
        minimum == 1 && c8_order == Some(1),
        format!("graphs=14641 minimum={minimum} C8={c8_order:?}"),
    )
}

/// Seeded corpus with A-degrees up to 3 and sparse edge-count regimes.
fn guarantee_corpus() -> Vec<CorpusGraph> {
    let sizes = [2usize, 3, 5, 8, 12, 16, 24, 40, 70, 120, 200];
    let mut out = Vec::new();
    for delta in 0..=3usize {
        for &n in &sizes {
            for p in [Rational::new(1, 2), Rational::from_integer(1)] {
                for seed in 0..8u64 {
                    out.push(CorpusGraph {
                        id: format!("random-delta_n{n}_D{delta}_p{p}_s{seed}"),
                        graph: gen_random_bounded(n, delta.min(n), p, seed).unwrap(),
                        extremal_i: None,
                    });
                }
            }
        }
    }
    for d in [
        Rational::new(1, 2),
        Rational::from_integer(1),
        Rational::new(3, 2),
        Rational::from_integer(2),
        Rational::from_integer(3),
    ] {
        for &n in &sizes {
            for seed in 0..6u64 {
                let m = ((d * Rational::from_integer(n as i64)).to_integer() as usize).min(n * n);
                out.push(CorpusGraph {
                    id: format!("random-edges_n{n}_m{m}_s{seed}"),
                    graph: gen_random_edges(n, m, 1000 + seed).unwrap(),
                    extremal_i: None,
                });
            }
        }
    }
    out
}

fn guarantee_suite(corpus: &[CorpusGraph]) -> Outcome {
    let base = BoundedDegreeSolver::default();
    let mut runs = 0;
    let mut failures = Vec::new();
    let mut check =
        |id: &str, name: &str, g: &BipartiteGraph, r: bihole::Result<GuaranteedBihole>| {
            runs += 1;
            match r {
                Ok(r) if r.bihole.is_valid_in(g) && r.meets_guarantee() => {}
                Ok(r) => failures.push(format!(
                    "{id}/{name}: order {} vs {}",
                    r.order(),
                    r.guarantee
                )),
                Err(e) => failures.push(format!("{id}/{name}: {e}")),
            }
        };
    for item in corpus {
        let g = &item.graph;
        let delta = g.max_degree(Side::A);
        if delta <= 1 {
            check(&item.id, "delta1", g, bihole_delta1(g));
        }
        if delta <= 2 {
            check(&item.id, "profile012", g, bihole_profile012(g, &base));
        }
        check(&item.id, "avg", g, bihole_avg_degree(g, &base));
        if g.m() <= 2 * g.n_a() && g.n_a() >= 2 {
            check(&item.id, "avg2", g, bihole_avg2(g, &base));
        }
    }
    outcome(
        corpus.len() >= 1000 && failures.is_empty(),
        format!(
            "graphs={} runs={runs} failures={}{}",
            corpus.len(),
            failures.len(),
            failures
                .first()
                .map(|f| format!(" first: {f}"))
                .unwrap_or_default()
        ),
    )
}

fn exact_ordering(corpus: &[CorpusGraph]) -> Outcome {
    let cfg = RunConfig {
        exact_max_n: 16,
        ..Default::default()
    };
    let mut small: Vec<&CorpusGraph> = corpus.iter().filter(|c| c.graph.n_a() <= 16).collect();
    let extremal = CorpusGraph {
        id: "extremal-paths_i2".into(),
        graph: gen_extremal_paths(2).unwrap(),
        extremal_i: Some(2),
    };
    small.push(&extremal);
    let mut failures = Vec::new();
    let mut compared = 0;
    for item in &small {
        let record = verify_graph(item, &cfg);
        let Some(exact) = record.exact.filter(|e| e.optimal) else {
            failures.push(format!("{}: exact search incomplete", item.id));
            continue;
        };
        for e in &record.entries {
            if let Some(c) = e.constructed {
                compared += 1;
                if c > exact.order {
                    failures.push(format!(
                        "{}: {} built {c} > exact {}",
                        item.id, e.algorithm, exact.order
                    ));
                }
            }
        }
        for b in record.bounds.iter().filter(|b| !b.bound.asymptotic) {
            compared += 1;
            let ok = if b.upper {
                exact.order as i64 <= b.bound.value.floor()
            } else {
                exact.order >= b.bound.value.ceil_clamped()
            };
            if !ok {
                failures.push(format!(
                    "{}: exact {} vs {} {}",
                    item.id, exact.order, b.bound.name, b.bound.value
                ));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "graphs={} comparisons={compared} failures={}{}",
            small.len(),
            failures.len(),
            failures
                .first()
                .map(|f| format!(" first: {f}"))
                .unwrap_or_default()
        ),
    )
}

fn randomized_pipeline() -> Outcome {
    let n = 2000;
    let epsilon = Rational::new(1, 10);
    let base = BoundedDegreeSolver::default();
    let mut failures = Vec::new();
    let mut worst_retries = 0;
    let mut max_large = 0;
    let mut ratios = Vec::new();
    for seed in 0..50u64 {
        let g = gen_random_bounded(n, 3, Rational::from_integer(1), seed).unwrap();
        let params = SamplingParams::new(epsilon, seed).unwrap();
        match bihole_random3(&g, &params, &base) {
            Ok((r, t)) => {
                let formula = profile012_bound(t.n0_3, t.n1_3, t.n2_3).value;
                let need = BoundNum::ceil_clamped(formula);
                // |B_large| ≤ 3√n / ε^{3/2}  ⇔  |B_large|² ε³ ≤ 9n
                let (p, q) = (*epsilon.numer() as u128, *epsilon.denom() as u128);
                let large = t.b_large_size as u128;
                let large_ok = large * large * p * p * p <= 9 * n as u128 * q * q * q;
                if !r.bihole.is_valid_in(&g)
                    || r.order() < need
                    || !t.accepted
                    || t.retries_used > 100
                    || !large_ok
                {
                    failures.push(format!(
                        "seed {seed}: order {} need {need} transcript {t:?}",
                        r.order()
                    ));
                }
                worst_retries = worst_retries.max(t.retries_used);
                max_large = max_large.max(t.b_large_size);
                ratios.push(r.order() as f64 / n as f64);
            }
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "runs=50 failures={} max_retries_used={worst_retries} max|B_large|={max_large} median_ratio={:.4}{}",
            failures.len(),
            {
                ratios.sort_by(f64::total_cmp);
                ratios.get(ratios.len() / 2).copied().unwrap_or(f64::NAN)
            },
            failures.first().map(|f| format!(" first: {f}")).unwrap_or_default()
        ),
    )
}

/// Soft: logged, never fails the suite.
fn ratio_trend() -> String {
    let spec = SweepSpec {
        family: SweepFamily::RandomDelta {
            delta: 3,
            p: Rational::from_integer(1),
        },
        sizes: vec![500, 1000, 2000, 5000],
        seeds: (0..10).collect(),
        algorithm: bihole::constructive::Algorithm::Rand3,
        epsilon: Rational::new(1, 10),
        base: BoundedDegreeSolver::default(),
    };
    match run_sweep(&spec, bihole::harness::worker_count()) {
        Ok(points) => {
            let medians: Vec<String> = points
                .iter()
                .map(|p| format!("n={}:{:.4}", p.n, p.median_ratio))
                .collect();
            let csv = sweep_csv(&points);
            format!(
                "medians {} non-decreasing(slack 0.01)={} rows={}",
                medians.join(" "),
                medians_nondecreasing(&points, 0.01),
                csv.lines().count() - 1
            )
        }
        Err(e) => format!("sweep error: {e}"),
    }
}

fn determinism() -> Outcome {
    let cfg = RunConfig {
        corpus: vec![
            Family::ExtremalPaths { i: vec![2, 4] },
            Family::RandomDelta {
                n: vec![10, 14, 60],
                delta: vec![1, 2, 3],
                p: Rational::new(3, 4),
                seeds: (0..4).collect(),
            },
            Family::RandomEdges {
                n: vec![12, 30],
                m: bihole::harness::config::EdgeCount::PerVertex(Rational::from_integer(2)),
                seeds: (0..4).collect(),
            },
        ],
        exact_threads: 1,
        ..Default::default()
    };
    let render_all = |workers: usize| {
        let (records, summary) = run_verification(&cfg, workers).unwrap();
        (
            render(&records, summary, ReportFormat::Csv).unwrap(),
            render(&records, summary, ReportFormat::Json).unwrap(),
        )
    };
    let first = render_all(1);
    let second = render_all(1);
    let pooled = render_all(4);
    let g = gen_random_bounded(500, 3, Rational::from_integer(1), 9).unwrap();
    let params = SamplingParams::new(Rational::new(1, 10), 9).unwrap();
    let base = BoundedDegreeSolver::default();
    let rand_same =
        bihole_random3(&g, &params, &base).unwrap() == bihole_random3(&g, &params, &base).unwrap();
    let exact_same = {
        let h = gen_random_edges(30, 60, 5).unwrap();
        let opts = ExactOptions::default();
        let (a, b) = (max_bihole_with(&h, &opts), max_bihole_with(&h, &opts));
        a.witness == b.witness && a.nodes_explored == b.nodes_explored
    };
    outcome(
        first == second && first == pooled && rand_same && exact_same,
        format!(
            "csv={}B json={}B repeat={} pooled={} rand3={rand_same} exact={exact_same}",
            first.0.len(),
            first.1.len(),
            first == second,
            first == pooled
        ),
    )
}

fn main() -> ExitCode {
    let corpus = guarantee_corpus();
    let criteria: Vec<Criterion> = vec![
        ("1 fixed point", Box::new(fixed_point)),
        ("2 constant assembly", Box::new(constant_assembly)),
        ("3 extremal sandwich", Box::new(extremal_sandwich)),
        ("4 exhaustive n=4 minimum", Box::new(exhaustive_four)),
        ("5 guarantee suite", Box::new(|| guarantee_suite(&corpus))),
        (
            "6 exact vs constructed and bounds",
            Box::new(|| exact_ordering(&corpus)),
        ),
        ("7 randomized pipeline", Box::new(randomized_pipeline)),
        ("8 determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "acceptance {name}: {} ({}) [{:.2?}]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed()
        );
    }
    let start = Instant::now();
    println!(
        "acceptance 7 ratio trend (soft): {} [{:.2?}]",
        ratio_trend(),
        start.elapsed()
    );
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
