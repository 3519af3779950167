use super::{
    argmax_degree, bihole_delta1, bounded_degree_solve, require_balanced, Algorithm,
    BoundedDegreeSolver, GuaranteedBihole, Reduction,
};
use crate::bounds::avg_degree_bound;
use crate::error::Result;
use crate::graph::{Bihole, BipartiteGraph, Side};
use crate::Rational;

/// Bihole of order at least `n/(d+1) − 2` where `d = m/n`.
///
/// Let `H` be the current sub-instance with average degree `d_H`. If one
/// side has maximum degree at most 1 the star construction finishes; if
/// one side has maximum degree in `[2, d_H+1)` the base solver finishes.
/// Otherwise both sides have a vertex of degree at least `d_H + 1`; the
/// smallest-index vertices of maximum degree are removed and the loop
/// continues. Removing them never lowers `n/(d+1) − 2`.
pub fn bihole_avg_degree(
    g: &BipartiteGraph,
    base: &BoundedDegreeSolver,
) -> Result<GuaranteedBihole> {
    require_balanced(g, "avg")?;
    let guarantee = avg_degree_bound(g.n_a(), g.avg_degree())
        .value
        .exact()
        .expect("rational formula");

    let mut red = Reduction::new(g);
    let (rule, rest) = loop {
        let (h, a_map, b_map) = red.current();
        if h.n_a() == 0 {
            break ("empty", Bihole::empty());
        }
        let threshold = h.avg_degree() + 1;
        let below = |delta: usize| delta >= 2 && Rational::from_integer(delta as i64) < threshold;
        let (delta_a, delta_b) = (h.max_degree(Side::A), h.max_degree(Side::B));
        let local = if delta_a <= 1 {
            Some(("delta1", bihole_delta1(&h)?.bihole))
        } else if delta_b <= 1 {
            Some((
                "delta1-swapped",
                bihole_delta1(&h.swapped())?.bihole.swapped(),
            ))
        } else if below(delta_a) {
            Some(("base", bounded_degree_solve(&h, base)?.bihole))
        } else if below(delta_b) {
            Some((
                "base-swapped",
                bounded_degree_solve(&h.swapped(), base)?.bihole.swapped(),
            ))
        } else {
            None
        };
        if let Some((rule, b)) = local {
            break (rule, b.lift(&a_map, &b_map));
        }
        let u = argmax_degree(&h, Side::A, &[]).expect("non-empty");
        let v = argmax_degree(&h, Side::B, &[]).expect("non-empty");
        red.step("remove-max", vec![a_map[u]], vec![b_map[v]], vec![], vec![]);
    };
    let (bihole, trace) = red.finish(rule, &rest);
    GuaranteedBihole {
        bihole,
        guarantee,
        algorithm: Algorithm::Avg,
        trace,
    }
    .checked(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructive::replay_trace;
    use crate::exact::brute_force_oracle;
    use crate::generate::{gen_random_edges, perfect_matching};

    #[test]
    fn perfect_matching_uses_stars() {
        let g = perfect_matching(6);
        let r = bihole_avg_degree(&g, &BoundedDegreeSolver::certified()).unwrap();
        assert_eq!(r.guarantee, Rational::from_integer(1));
        assert!(r.order() >= 3);
        assert_eq!(r.trace.last().unwrap().rule, "delta1");
    }

    #[test]
    fn complete_graph_negative_guarantee() {
        let g = BipartiteGraph::complete(5, 5);
        let r = bihole_avg_degree(&g, &BoundedDegreeSolver::certified()).unwrap();
        assert!(r.guarantee < Rational::from_integer(0));
        assert!(r.bihole.is_valid_in(&g));
        assert!(replay_trace(&g, &r.trace));
    }

    #[test]
    fn random_average_two() {
        for seed in 0..30 {
            let g = gen_random_edges(12, 24, seed).unwrap();
            let r = bihole_avg_degree(&g, &BoundedDegreeSolver::certified()).unwrap();
            assert!(r.order() >= 2);
            assert!(r.order() <= brute_force_oracle(&g).unwrap().order);
            assert!(replay_trace(&g, &r.trace));
        }
    }

    #[test]
    fn large_graph_with_heuristic_base() {
        for seed in 0..5 {
            let g = gen_random_edges(150, 450, seed).unwrap();
            let r = bihole_avg_degree(&g, &BoundedDegreeSolver::heuristic()).unwrap();
            assert!(r.meets_guarantee());
        }
    }
}
