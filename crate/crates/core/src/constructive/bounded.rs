//! The bounded-degree base solver used by the recursive constructions.
//!
//! Certified mode runs the exact search and asserts the known bounds for
//! A-degrees at most Δ: `⌈n/2⌉ − 1` for Δ ≤ 2 and `⌊(n−2)/Δ⌋` for Δ ≥ 2.
//! Heuristic mode sweeps prefixes of a few vertex orders and then runs a
//! 1-swap local search. Two of its sweeps come with a proof:
//!
//! * Smallest degree first: the `k` smallest A-degrees sum to at most
//!   `k·m/n`, so some prefix reaches `⌊n²/(m+n)⌋`.
//! * Component order (A-degrees ≤ 2): components that are not trees go
//!   first, each scanned in BFS order so that every A-vertex after the first
//!   adds at most one new B-neighbour; trees follow. Along this order
//!   `|S| + |B ∖ N(S)|` stays at least `n − 1`, which forces a prefix of
//!   order `⌈n/2⌉ − 1`.
//!
//! The heuristic guarantee is the larger of the two.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{require_balanced, Algorithm, GuaranteedBihole};
use crate::bounds::{delta_floor_bound, f2_value};
use crate::error::{Error, Result};
use crate::exact::{complement_side, max_bihole_with, ExactOptions, DEFAULT_NODE_BUDGET};
use crate::graph::{Bihole, BipartiteGraph, Side};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverMode {
    /// Exact search; refuses sides larger than the cap.
    Certified,
    Heuristic,
    /// Certified up to the cap, heuristic above it.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundedDegreeSolver {
    pub mode: SolverMode,
    pub cap: usize,
    pub budget: u64,
}

impl Default for BoundedDegreeSolver {
    fn default() -> Self {
        BoundedDegreeSolver {
            mode: SolverMode::Auto,
            cap: 24,
            budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl BoundedDegreeSolver {
    pub fn certified() -> Self {
        BoundedDegreeSolver {
            mode: SolverMode::Certified,
            ..Default::default()
        }
    }

    pub fn heuristic() -> Self {
        BoundedDegreeSolver {
            mode: SolverMode::Heuristic,
            ..Default::default()
        }
    }
}

/// The best known-bound order for `g` from its maximum A-degree.
pub fn bounded_contract(g: &BipartiteGraph) -> Rational {
    let n = g.n_a();
    let delta = g.max_degree(Side::A);
    let mut best = Rational::from_integer(0);
    let f2 = f2_value(n);
    if delta <= 2 && f2.applicable {
        best = best.max(f2.value.exact().expect("rational"));
    }
    let floor = delta_floor_bound(n, delta);
    if floor.applicable {
        best = best.max(floor.value.exact().expect("rational"));
    }
    best
}

pub fn bounded_degree_solve(
    g: &BipartiteGraph,
    solver: &BoundedDegreeSolver,
) -> Result<GuaranteedBihole> {
    require_balanced(g, "bounded")?;
    let n = g.n_a();
    let certified = match solver.mode {
        SolverMode::Certified if n > solver.cap => {
            return Err(Error::CapExceeded { n, cap: solver.cap });
        }
        SolverMode::Certified => true,
        SolverMode::Heuristic => false,
        SolverMode::Auto => n <= solver.cap,
    };

    let (heuristic, provable) = heuristic_solve(g);
    let out = if certified {
        let exact = max_bihole_with(
            g,
            &ExactOptions {
                budget: solver.budget,
                initial: Some(heuristic),
                ..Default::default()
            },
        );
        GuaranteedBihole {
            bihole: exact.witness,
            guarantee: bounded_contract(g).max(provable),
            algorithm: Algorithm::Bounded,
            trace: Vec::new(),
        }
    } else {
        GuaranteedBihole {
            bihole: heuristic,
            guarantee: provable,
            algorithm: Algorithm::Bounded,
            trace: Vec::new(),
        }
    };
    out.checked(g)
}

/// Best bihole found by the sweeps plus local search, and the order the
/// sweeps provably reach.
fn heuristic_solve(g: &BipartiteGraph) -> (Bihole, Rational) {
    let n = g.n_a();
    let mut provable = Rational::from_integer(0);
    if n > 0 {
        provable = Rational::from_integer((n * n / (g.m() + n)) as i64);
    }
    let mut orders = vec![smallest_degree_order(g), min_marginal_order(g)];
    if g.max_degree(Side::A) <= 2 {
        let f2 = f2_value(n);
        if f2.applicable {
            provable = provable.max(f2.value.exact().expect("rational"));
        }
        orders.push(component_order(g));
    }
    let best = orders
        .iter()
        .map(|order| best_prefix(g, order))
        .max_by_key(|s| order_of(g, s))
        .unwrap_or_default();
    let improved = local_search(g, best);
    let free = complement_side(g, &improved);
    let k = improved.len().min(free.len());
    let mut s = improved;
    s.sort_unstable();
    let bihole = Bihole::new(s[..k].to_vec(), free[..k].to_vec()).expect("balanced");
    (bihole, provable)
}

fn order_of(g: &BipartiteGraph, s: &[usize]) -> usize {
    s.len().min(complement_side(g, s).len())
}

/// Longest prefix of `order` maximizing `min(|S|, |B ∖ N(S)|)`.
fn best_prefix(g: &BipartiteGraph, order: &[usize]) -> Vec<usize> {
    let mut covered = vec![false; g.n_b()];
    let mut free = g.n_b();
    let mut best = (0, 0);
    for (k, &a) in order.iter().enumerate() {
        for &b in g.neighbors(Side::A, a) {
            if !covered[b] {
                covered[b] = true;
                free -= 1;
            }
        }
        let value = (k + 1).min(free);
        if value > best.0 {
            best = (value, k + 1);
        }
    }
    order[..best.1].to_vec()
}

fn smallest_degree_order(g: &BipartiteGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n_a()).collect();
    order.sort_by_key(|&a| (g.degree(Side::A, a), a));
    order
}

/// Repeatedly takes the vertex with the fewest uncovered neighbours.
fn min_marginal_order(g: &BipartiteGraph) -> Vec<usize> {
    let n = g.n_a();
    let mut marginal: Vec<usize> = (0..n).map(|a| g.degree(Side::A, a)).collect();
    let mut used = vec![false; n];
    let mut covered = vec![false; g.n_b()];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let a = (0..n)
            .filter(|&a| !used[a])
            .min_by_key(|&a| (marginal[a], a))
            .expect("vertex left");
        used[a] = true;
        order.push(a);
        for &b in g.neighbors(Side::A, a) {
            if !covered[b] {
                covered[b] = true;
                for &x in g.neighbors(Side::B, b) {
                    marginal[x] -= 1;
                }
            }
        }
    }
    order
}

/// Non-tree components first, then trees; BFS order inside each component
/// starting from its smallest-degree A-vertex.
fn component_order(g: &BipartiteGraph) -> Vec<usize> {
    let mut components: Vec<_> = g
        .components()
        .into_iter()
        .filter(|c| c.a_size() > 0)
        .collect();
    components.sort_by_key(|c| c.is_tree && c.edges > 0);
    let mut seen_a = vec![false; g.n_a()];
    let mut seen_b = vec![false; g.n_b()];
    let mut order = Vec::with_capacity(g.n_a());
    for c in components {
        let start = *c
            .a_vertices
            .iter()
            .min_by_key(|&&a| (g.degree(Side::A, a), a))
            .expect("non-empty");
        let mut queue = VecDeque::from([start]);
        seen_a[start] = true;
        while let Some(a) = queue.pop_front() {
            order.push(a);
            for &b in g.neighbors(Side::A, a) {
                if seen_b[b] {
                    continue;
                }
                seen_b[b] = true;
                for &x in g.neighbors(Side::B, b) {
                    if !seen_a[x] {
                        seen_a[x] = true;
                        queue.push_back(x);
                    }
                }
            }
        }
    }
    order
}

/// Grows `s` while some vertex can be added without dropping the order,
/// otherwise swaps one vertex out and one in when that frees more of B.
fn local_search(g: &BipartiteGraph, s: Vec<usize>) -> Vec<usize> {
    let n = g.n_a();
    let mut in_s = vec![false; n];
    let mut hits = vec![0usize; g.n_b()];
    for &a in &s {
        in_s[a] = true;
        for &b in g.neighbors(Side::A, a) {
            hits[b] += 1;
        }
    }
    let mut size = s.len();
    let mut free = hits.iter().filter(|&&h| h == 0).count();
    let new_cover = |hits: &[usize], a: usize| {
        g.neighbors(Side::A, a)
            .iter()
            .filter(|&&b| hits[b] == 0)
            .count()
    };

    // each round either grows the order or strictly increases `free`
    for _ in 0..4 * (n + 1) {
        let target = size.min(free) + 1;
        if size < target {
            let addable = (0..n)
                .filter(|&a| !in_s[a])
                .map(|a| (new_cover(&hits, a), a))
                .min();
            if let Some((cost, a)) = addable {
                if free - cost >= target || (size < free - cost && size + 1 < target) {
                    in_s[a] = true;
                    size += 1;
                    free -= cost;
                    for &b in g.neighbors(Side::A, a) {
                        hits[b] += 1;
                    }
                    continue;
                }
            }
        }
        // swap out `x`, swap in `y`
        let mut swap = None;
        'outer: for x in (0..n).filter(|&x| in_s[x]) {
            let released: Vec<usize> = g
                .neighbors(Side::A, x)
                .iter()
                .copied()
                .filter(|&b| hits[b] == 1)
                .collect();
            for y in (0..n).filter(|&y| !in_s[y]) {
                let cost = g
                    .neighbors(Side::A, y)
                    .iter()
                    .filter(|&&b| hits[b] == 0 || released.contains(&b))
                    .count();
                if cost < released.len() {
                    swap = Some((x, y));
                    break 'outer;
                }
            }
        }
        let Some((x, y)) = swap else { break };
        in_s[x] = false;
        for &b in g.neighbors(Side::A, x) {
            hits[b] -= 1;
        }
        in_s[y] = true;
        for &b in g.neighbors(Side::A, y) {
            hits[b] += 1;
        }
        free = hits.iter().filter(|&&h| h == 0).count();
    }
    (0..n).filter(|&a| in_s[a]).collect()
}
