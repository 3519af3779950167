//! Exact maximum biholes.
//!
//! Within one side every subset is independent, so for a fixed `S ⊆ A` the
//! best partner is `B ∖ N(S)` and the bihole order reachable from `S` is
//! `min(|S|, |B ∖ N(S)|)`. Both solvers therefore search over subsets of A
//! only.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Bihole, BipartiteGraph, Side};

/// Largest A side accepted by [`brute_force_oracle`].
pub const ORACLE_CAP: usize = 20;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub order: usize,
    pub witness: Bihole,
    /// False when the budget ran out; `order` is then only a lower bound.
    pub optimal: bool,
    pub nodes_explored: u64,
    pub budget: u64,
}

#[derive(Debug, Clone)]
pub struct ExactOptions {
    /// Maximum number of search nodes.
    pub budget: u64,
    pub time_limit: Option<Duration>,
    /// Worker threads. `1` gives a sequential search with reproducible node
    /// counts.
    pub threads: usize,
    /// Warm-start incumbent; ignored unless it is a valid bihole of the graph.
    pub initial: Option<Bihole>,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            budget: DEFAULT_NODE_BUDGET,
            time_limit: None,
            threads: 1,
            initial: None,
        }
    }
}

/// `B ∖ N(s)`: the largest B-set with no edge to `s`.
pub fn complement_side(g: &BipartiteGraph, s: &[usize]) -> Vec<usize> {
    let mut hit = vec![false; g.n_b()];
    for &a in s {
        for &b in g.neighbors(Side::A, a) {
            hit[b] = true;
        }
    }
    (0..g.n_b()).filter(|&b| !hit[b]).collect()
}

/// Witness built from any `S` whose complement side is `free`: the first
/// `order` vertices of each.
fn witness_from(s: &[usize], free: &[usize]) -> Bihole {
    let order = s.len().min(free.len());
    let mut s = s.to_vec();
    s.sort_unstable();
    Bihole::new(s[..order].to_vec(), free[..order].to_vec()).expect("balanced by construction")
}

/// Enumerates all subsets of A in Gray-code order. Refuses `n_a > 20`.
pub fn brute_force_oracle(g: &BipartiteGraph) -> Result<ExactResult> {
    let n = g.n_a();
    if n > ORACLE_CAP {
        return Err(Error::CapExceeded { n, cap: ORACLE_CAP });
    }
    // hits[b] = number of chosen A-vertices adjacent to b
    let mut hits = vec![0u32; g.n_b()];
    let mut free = g.n_b();
    let mut size = 0usize;
    let mut mask = 0u32;
    let mut best = (0usize, 0u32);
    for step in 1u64..(1u64 << n) {
        let flip = step.trailing_zeros() as usize;
        mask ^= 1 << flip;
        if mask & (1 << flip) != 0 {
            size += 1;
            for &b in g.neighbors(Side::A, flip) {
                if hits[b] == 0 {
                    free -= 1;
                }
                hits[b] += 1;
            }
        } else {
            size -= 1;
            for &b in g.neighbors(Side::A, flip) {
                hits[b] -= 1;
                if hits[b] == 0 {
                    free += 1;
                }
            }
        }
        let value = size.min(free);
        if value > best.0 {
            best = (value, mask);
        }
    }
    let s: Vec<usize> = (0..n).filter(|&a| best.1 & (1 << a) != 0).collect();
    let witness = witness_from(&s, &complement_side(g, &s));
    Ok(ExactResult {
        order: best.0,
        witness,
        optimal: true,
        nodes_explored: 1u64 << n,
        budget: 1u64 << n,
    })
}

/// Branch and bound with the default options and the given node budget.
pub fn max_bihole(g: &BipartiteGraph, budget: u64) -> ExactResult {
    max_bihole_with(
        g,
        &ExactOptions {
            budget,
            ..ExactOptions::default()
        },
    )
}

/// Branch and bound over inclusion/exclusion of A-vertices, ordered by
/// descending degree (ties by index), with `N(S)` kept as a bitset.
///
/// At every node:
/// * candidates with no new neighbour are included for free;
/// * candidates whose new neighbours alone would push `|B ∖ N(S)|` to the
///   incumbent or below are dropped;
/// * with the remaining new-neighbour counts sorted ascending as `c_1 ≤ c_2 ≤ …`,
///   no completion beats `max_k min(|S| + k, free − c_k)`, which is compared
///   against the incumbent.
///
/// Graphs whose edge-bearing components each have at most [`ORACLE_CAP`]
/// A-vertices are instead solved exactly per component: every component's
/// frontier (best free B-count for each number of chosen A-vertices) is
/// enumerated and the frontiers are combined by a max-plus knapsack.
pub fn max_bihole_with(g: &BipartiteGraph, opts: &ExactOptions) -> ExactResult {
    if let Some(result) = solve_by_components(g, opts.budget) {
        let initial = opts.initial.as_ref().filter(|h| h.is_valid_in(g));
        return match initial {
            Some(h) if h.order() > result.order => ExactResult {
                order: h.order(),
                witness: h.clone(),
                ..result
            },
            _ => result,
        };
    }
    branch_and_bound(g, opts)
}

/// Best `|B_c ∖ N(S)|` over `S ⊆ A_c` with `|S| = k`, for each `k`, with
/// the maximizing subset as a bitmask over `a_vertices`.
fn component_frontier(
    g: &BipartiteGraph,
    a_vertices: &[usize],
    b_count: usize,
) -> Vec<(usize, u32)> {
    let n = a_vertices.len();
    let mut hits = vec![0u32; g.n_b()];
    let mut free = b_count;
    let mut frontier = vec![(0usize, 0u32); n + 1];
    frontier[0] = (b_count, 0);
    let mut mask = 0u32;
    for step in 1u64..(1u64 << n) {
        let flip = step.trailing_zeros() as usize;
        mask ^= 1 << flip;
        let adding = mask & (1 << flip) != 0;
        for &b in g.neighbors(Side::A, a_vertices[flip]) {
            let h = &mut hits[b];
            if adding {
                if *h == 0 {
                    free -= 1;
                }
                *h += 1;
            } else {
                *h -= 1;
                if *h == 0 {
                    free += 1;
                }
            }
        }
        let k = mask.count_ones() as usize;
        if free > frontier[k].0 || (k > 0 && frontier[k].1 == 0) {
            frontier[k] = (free, mask);
        }
    }
    frontier
}

fn solve_by_components(g: &BipartiteGraph, budget: u64) -> Option<ExactResult> {
    let components: Vec<_> = g.components().into_iter().filter(|c| c.edges > 0).collect();
    if components.len() < 2 || components.iter().any(|c| c.a_size() > ORACLE_CAP) {
        return None;
    }
    let work: u64 = components.iter().map(|c| 1u64 << c.a_size()).sum();
    if work > budget {
        return None;
    }
    let touched_a: usize = components.iter().map(|c| c.a_size()).sum();
    let touched_b: usize = components.iter().map(|c| c.b_size()).sum();
    let isolated_a = g.n_a() - touched_a;
    let isolated_b = g.n_b() - touched_b;

    // best[k] = max free B over the components processed so far, k chosen A
    let frontiers: Vec<_> = components
        .iter()
        .map(|c| component_frontier(g, &c.a_vertices, c.b_size()))
        .collect();
    let mut best: Vec<Option<usize>> = vec![Some(0)];
    let mut choice: Vec<Vec<usize>> = Vec::with_capacity(frontiers.len());
    for frontier in &frontiers {
        let mut next = vec![None; best.len() + frontier.len() - 1];
        let mut pick = vec![0; next.len()];
        for (k, value) in best.iter().enumerate() {
            let Some(value) = value else { continue };
            for (j, &(free, _)) in frontier.iter().enumerate() {
                let cand = value + free;
                if next[k + j].is_none_or(|v| cand > v) {
                    next[k + j] = Some(cand);
                    pick[k + j] = j;
                }
            }
        }
        best = next;
        choice.push(pick);
    }

    let mut order = 0;
    let mut k = 0;
    for (j, value) in best.iter().enumerate() {
        let Some(value) = value else { continue };
        let candidate = (j + isolated_a).min(value + isolated_b);
        if candidate > order {
            (order, k) = (candidate, j);
        }
    }

    let mut s: Vec<usize> = (0..g.n_a())
        .filter(|&a| g.degree(Side::A, a) == 0)
        .collect();
    for (idx, component) in components.iter().enumerate().rev() {
        let j = choice[idx][k];
        let mask = frontiers[idx][j].1;
        s.extend(
            component
                .a_vertices
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &a)| a),
        );
        k -= j;
    }
    let witness = witness_from(&s, &complement_side(g, &s));
    debug_assert_eq!(witness.order(), order);
    Some(ExactResult {
        order,
        witness,
        optimal: true,
        nodes_explored: work,
        budget,
    })
}

fn branch_and_bound(g: &BipartiteGraph, opts: &ExactOptions) -> ExactResult {
    let words = g.n_b().div_ceil(64).max(1);
    let mut order: Vec<usize> = (0..g.n_a()).collect();
    order.sort_by_key(|&a| (std::cmp::Reverse(g.degree(Side::A, a)), a));
    let mut masks = vec![0u64; words * g.n_a()];
    for (pos, &a) in order.iter().enumerate() {
        for &b in g.neighbors(Side::A, a) {
            masks[pos * words + b / 64] |= 1 << (b % 64);
        }
    }

    let initial = opts.initial.as_ref().filter(|h| h.is_valid_in(g));
    let init_order = initial.map_or(0, Bihole::order);
    let shared = Shared {
        best: AtomicUsize::new(init_order),
        best_witness: Mutex::new(initial.cloned().unwrap_or_default()),
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        budget: opts.budget,
        deadline: opts.time_limit.map(|d| Instant::now() + d),
    };
    let search = Search {
        g,
        order: &order,
        masks: &masks,
        words,
        shared: &shared,
        split_depth: if opts.threads > 1 { 12 } else { 0 },
    };
    let root = Node {
        chosen: Vec::new(),
        candidates: (0..g.n_a()).collect(),
        covered: vec![0; words],
        covered_count: 0,
        depth: 0,
    };
    if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .expect("thread pool");
        pool.install(|| search.run(root));
    } else {
        search.run(root);
    }

    let order = shared.best.load(Ordering::SeqCst);
    let witness = shared.best_witness.into_inner().expect("poisoned");
    debug_assert_eq!(witness.order(), order);
    ExactResult {
        order,
        witness,
        optimal: !shared.aborted.load(Ordering::SeqCst),
        nodes_explored: shared.nodes.load(Ordering::SeqCst),
        budget: opts.budget,
    }
}

struct Shared {
    best: AtomicUsize,
    best_witness: Mutex<Bihole>,
    nodes: AtomicU64,
    aborted: AtomicBool,
    budget: u64,
    deadline: Option<Instant>,
}

struct Search<'a> {
    g: &'a BipartiteGraph,
    order: &'a [usize],
    masks: &'a [u64],
    words: usize,
    shared: &'a Shared,
    split_depth: usize,
}

#[derive(Clone)]
struct Node {
    /// Positions in `order` already in S.
    chosen: Vec<usize>,
    /// Undecided positions, ascending.
    candidates: Vec<usize>,
    covered: Vec<u64>,
    covered_count: usize,
    depth: usize,
}

impl Search<'_> {
    fn mask(&self, pos: usize) -> &[u64] {
        &self.masks[pos * self.words..(pos + 1) * self.words]
    }

    fn new_neighbours(&self, pos: usize, covered: &[u64]) -> usize {
        self.mask(pos)
            .iter()
            .zip(covered)
            .map(|(m, c)| (m & !c).count_ones() as usize)
            .sum()
    }

    fn include(&self, node: &mut Node, pos: usize) {
        for (c, m) in node.covered.iter_mut().zip(self.mask(pos)) {
            *c |= m;
        }
        node.covered_count = node.covered.iter().map(|w| w.count_ones() as usize).sum();
        node.chosen.push(pos);
    }

    fn tick(&self) -> bool {
        let n = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.shared.budget {
            self.shared.aborted.store(true, Ordering::Relaxed);
        } else if n.is_multiple_of(1024) {
            if let Some(deadline) = self.shared.deadline {
                if Instant::now() >= deadline {
                    self.shared.aborted.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.shared.aborted.load(Ordering::Relaxed)
    }

    fn offer(&self, node: &Node) {
        let free = self.g.n_b() - node.covered_count;
        let value = node.chosen.len().min(free);
        if value <= self.shared.best.load(Ordering::Relaxed) {
            return;
        }
        let mut witness = self.shared.best_witness.lock().expect("poisoned");
        if value > self.shared.best.load(Ordering::Relaxed) {
            let s: Vec<usize> = node.chosen.iter().map(|&p| self.order[p]).collect();
            let free: Vec<usize> = (0..self.g.n_b())
                .filter(|&b| node.covered[b / 64] & (1 << (b % 64)) == 0)
                .collect();
            *witness = witness_from(&s, &free);
            self.shared.best.store(value, Ordering::SeqCst);
        }
    }

    fn run(&self, mut node: Node) {
        if !self.tick() {
            return;
        }
        let best = self.shared.best.load(Ordering::Relaxed);
        let free = self.g.n_b() - node.covered_count;
        if free <= best {
            return;
        }
        // free inclusions and hopeless candidates
        let slack = free - best - 1;
        let mut costs = Vec::with_capacity(node.candidates.len());
        let mut kept = Vec::with_capacity(node.candidates.len());
        for &pos in &node.candidates {
            let c = self.new_neighbours(pos, &node.covered);
            if c == 0 {
                node.chosen.push(pos);
            } else if c <= slack {
                kept.push(pos);
                costs.push(c);
            }
        }
        node.candidates = kept;
        self.offer(&node);

        let s = node.chosen.len();
        costs.sort_unstable();
        let bound = costs
            .iter()
            .enumerate()
            .map(|(k, &c)| (s + k + 1).min(free - c))
            .max()
            .unwrap_or(0)
            .max(s.min(free));
        if bound <= self.shared.best.load(Ordering::Relaxed) || node.candidates.is_empty() {
            return;
        }

        let pos = node.candidates[0];
        let mut without = node.clone();
        without.candidates.remove(0);
        without.depth += 1;
        let mut with = without.clone();
        self.include(&mut with, pos);
        if node.depth < self.split_depth {
            rayon::join(|| self.run(with), || self.run(without));
        } else {
            self.run(with);
            self.run(without);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle, gen_extremal_paths, perfect_matching};

    #[test]
    fn complement_side_examples() {
        assert!(complement_side(&BipartiteGraph::complete(3, 3), &[0]).is_empty());
        assert_eq!(
            complement_side(&BipartiteGraph::empty(3, 3), &[0, 1, 2]),
            vec![0, 1, 2]
        );
        assert_eq!(complement_side(&perfect_matching(3), &[0, 1]), vec![2]);
    }

    #[test]
    fn oracle_small_cases() {
        assert_eq!(
            brute_force_oracle(&BipartiteGraph::complete(3, 3))
                .unwrap()
                .order,
            0
        );
        assert_eq!(
            brute_force_oracle(&BipartiteGraph::empty(3, 3))
                .unwrap()
                .order,
            3
        );
        let r = brute_force_oracle(&perfect_matching(3)).unwrap();
        assert_eq!(r.order, 1);
        assert!(r.witness.is_valid_in(&perfect_matching(3)));
    }

    #[test]
    fn oracle_refuses_large() {
        assert!(matches!(
            brute_force_oracle(&BipartiteGraph::empty(21, 21)),
            Err(Error::CapExceeded { n: 21, cap: 20 })
        ));
    }

    #[test]
    fn solver_small_cases() {
        let g = gen_extremal_paths(2).unwrap();
        let r = max_bihole(&g, DEFAULT_NODE_BUDGET);
        assert_eq!(r.order, 5);
        assert!(r.optimal);
        assert!(r.witness.is_valid_in(&g));
        assert_eq!(max_bihole(&cycle(4), DEFAULT_NODE_BUDGET).order, 1);
        let e = max_bihole(&BipartiteGraph::empty(6, 6), DEFAULT_NODE_BUDGET);
        assert_eq!(e.order, 6);
        assert_eq!(e.nodes_explored, 1);
    }

    #[test]
    fn witness_uses_lowest_free_indices() {
        // a0 adjacent to b0; best S = {a0} with T the lowest free index b1
        let g = BipartiteGraph::new(1, 3, [(0, 0)]).unwrap();
        let r = max_bihole(&g, 100);
        assert_eq!(r.witness.t(), &[1]);
    }

    #[test]
    fn budget_exhaustion_keeps_valid_incumbent() {
        let g = crate::generate::gen_random_edges(30, 120, 5).unwrap();
        let r = max_bihole(&g, 10);
        assert!(!r.optimal);
        assert!(r.witness.is_valid_in(&g));
        assert_eq!(r.witness.order(), r.order);
    }

    #[test]
    fn warm_start_is_used() {
        let g = gen_extremal_paths(2).unwrap();
        let initial = max_bihole(&g, DEFAULT_NODE_BUDGET).witness;
        let r = max_bihole_with(
            &g,
            &ExactOptions {
                budget: 0,
                initial: Some(initial.clone()),
                ..Default::default()
            },
        );
        assert_eq!(r.order, 5);
        assert_eq!(r.witness, initial);
    }

    #[test]
    fn parallel_matches_sequential() {
        for seed in 0..5 {
            let g = crate::generate::gen_random_edges(14, 40, seed).unwrap();
            let seq = max_bihole(&g, DEFAULT_NODE_BUDGET);
            let par = max_bihole_with(
                &g,
                &ExactOptions {
                    threads: 4,
                    ..Default::default()
                },
            );
            assert_eq!(seq.order, par.order);
            assert!(par.witness.is_valid_in(&g));
        }
    }
}
