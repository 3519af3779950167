//! Graph families: the extremal path family, seeded random generators and a
//! few small fixed shapes used throughout the tests.
//!
//! Random generators use ChaCha8 seeded with the caller's seed. The bounded
//! generator gives every A-vertex its own stream (stream id = vertex index),
//! so the neighbourhood of vertex `a` depends only on `(seed, a, n, delta,
//! edge_prob)`.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::Rational;

/// `i` isolated A-vertices plus `i` paths with `4i + 1` vertices whose
/// endpoints lie in B. Both sides have `i + 2i²` vertices.
///
/// Layout: path `j` uses A-vertices `2ij .. 2i(j+1)` and B-vertices
/// `(2i+1)j .. (2i+1)(j+1)`, alternating `b a b … a b`; the isolated
/// A-vertices are the last `i` indices.
pub fn gen_extremal_paths(i: usize) -> Result<BipartiteGraph> {
    if i == 0 || i % 2 == 1 {
        return Err(Error::InvalidInput(format!(
            "extremal paths need an even positive i, got {i}"
        )));
    }
    let n = i + 2 * i * i;
    let a_per_path = 2 * i;
    let b_per_path = 2 * i + 1;
    let mut edges = Vec::with_capacity(4 * i * i);
    for j in 0..i {
        for k in 0..a_per_path {
            let a = j * a_per_path + k;
            let b = j * b_per_path + k;
            edges.push((a, b));
            edges.push((a, b + 1));
        }
    }
    BipartiteGraph::new(n, n, edges)
}

/// Balanced graph on `n + n` vertices with every A-degree at most `delta`.
///
/// Each A-vertex runs `delta` Bernoulli(`edge_prob`) trials; the number of
/// successes is its degree, and its neighbours are drawn uniformly without
/// replacement from B.
pub fn gen_random_bounded(
    n: usize,
    delta: usize,
    edge_prob: Rational,
    seed: u64,
) -> Result<BipartiteGraph> {
    if delta > n {
        return Err(Error::InvalidInput(format!(
            "delta {delta} exceeds side size {n}"
        )));
    }
    if *edge_prob.numer() < 0 || edge_prob > Rational::from_integer(1) {
        return Err(Error::InvalidInput(format!(
            "edge probability {edge_prob} outside [0,1]"
        )));
    }
    let (num, den) = (*edge_prob.numer() as u64, *edge_prob.denom() as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adjacency = Vec::with_capacity(n);
    for a in 0..n {
        rng.set_stream(a as u64);
        rng.set_word_pos(0);
        let degree = (0..delta).filter(|_| rng.gen_range(0..den) < num).count();
        let mut nbrs = index::sample(&mut rng, n, degree).into_vec();
        nbrs.sort_unstable();
        adjacency.push(nbrs);
    }
    BipartiteGraph::new(
        n,
        n,
        adjacency
            .into_iter()
            .enumerate()
            .flat_map(|(a, list)| list.into_iter().map(move |b| (a, b))),
    )
}

/// Balanced graph with exactly `m` distinct edges drawn uniformly from all
/// `n²` pairs.
pub fn gen_random_edges(n: usize, m: usize, seed: u64) -> Result<BipartiteGraph> {
    if m > n * n {
        return Err(Error::InvalidInput(format!(
            "{m} edges do not fit in {n}x{n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = index::sample(&mut rng, n * n, m);
    BipartiteGraph::new(n, n, picks.into_iter().map(|e| (e / n, e % n)))
}

/// Perfect matching `a_i – b_i`.
pub fn perfect_matching(n: usize) -> BipartiteGraph {
    BipartiteGraph::new(n, n, (0..n).map(|i| (i, i))).expect("in range")
}

/// The cycle `C_{2n}`: `a_i` adjacent to `b_i` and `b_{i+1 mod n}`. Needs `n ≥ 2`.
pub fn cycle(n: usize) -> BipartiteGraph {
    assert!(n >= 2, "cycle needs n >= 2");
    BipartiteGraph::new(n, n, (0..n).flat_map(|i| [(i, i), (i, (i + 1) % n)])).expect("in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Side;
    use std::collections::BTreeMap;

    #[test]
    fn extremal_two() {
        let g = gen_extremal_paths(2).unwrap();
        assert_eq!((g.n_a(), g.n_b(), g.m()), (10, 10, 16));
        assert_eq!(
            g.degree_profile(Side::A).counts,
            BTreeMap::from([(0, 2), (2, 8)])
        );
        let comps = g.components();
        let paths: Vec<_> = comps.iter().filter(|c| c.edges > 0).collect();
        assert_eq!(paths.len(), 2);
        assert!(paths
            .iter()
            .all(|c| c.b_excess == 1 && c.is_tree && c.a_size() + c.b_size() == 9));
        let isolated_a = comps
            .iter()
            .filter(|c| c.a_size() == 1 && c.b_size() == 0)
            .count();
        assert_eq!(isolated_a, 2);
        assert_eq!(comps.len(), 4);
    }

    #[test]
    fn extremal_four() {
        let g = gen_extremal_paths(4).unwrap();
        assert_eq!((g.n_a(), g.n_b()), (36, 36));
        assert_eq!(
            g.degree_profile(Side::A).counts,
            BTreeMap::from([(0, 4), (2, 32)])
        );
        assert_eq!(g.min_degree(Side::B), 1);
    }

    #[test]
    fn extremal_rejects_odd_or_zero() {
        assert!(gen_extremal_paths(0).is_err());
        assert!(gen_extremal_paths(3).is_err());
    }

    #[test]
    fn bounded_edgeless_and_saturated() {
        let g = gen_random_bounded(10, 0, Rational::new(1, 2), 7).unwrap();
        assert_eq!(g.m(), 0);
        let g = gen_random_bounded(10, 3, Rational::from_integer(1), 7).unwrap();
        assert!((0..10).all(|a| g.degree(Side::A, a) == 3));
    }

    #[test]
    fn bounded_is_deterministic() {
        let p = Rational::new(1, 2);
        let g1 = gen_random_bounded(10, 3, p, 42).unwrap();
        let g2 = gen_random_bounded(10, 3, p, 42).unwrap();
        assert_eq!(g1, g2);
        assert!(g1.max_degree(Side::A) <= 3);
        let g3 = gen_random_bounded(10, 3, p, 43).unwrap();
        assert_ne!(g1, g3);
    }

    #[test]
    fn bounded_rejects_bad_parameters() {
        assert!(gen_random_bounded(3, 4, Rational::new(1, 2), 0).is_err());
        assert!(gen_random_bounded(3, 2, Rational::new(3, 2), 0).is_err());
    }

    #[test]
    fn random_edges_counts() {
        assert_eq!(gen_random_edges(5, 0, 1).unwrap().m(), 0);
        assert_eq!(
            gen_random_edges(5, 25, 1).unwrap(),
            BipartiteGraph::complete(5, 5)
        );
        let g = gen_random_edges(5, 10, 1).unwrap();
        assert_eq!(g.m(), 10);
        assert_eq!(g.avg_degree(), Rational::from_integer(2));
        assert!(gen_random_edges(5, 26, 1).is_err());
        assert_eq!(
            gen_random_edges(6, 9, 3).unwrap(),
            gen_random_edges(6, 9, 3).unwrap()
        );
    }

    #[test]
    fn fixed_shapes() {
        let c = cycle(4);
        assert_eq!(c.m(), 8);
        assert_eq!(c.components().len(), 1);
        assert_eq!(perfect_matching(3).m(), 3);
    }
}
