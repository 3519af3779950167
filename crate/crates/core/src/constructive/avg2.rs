use super::{
    argmax_degree, bounded_degree_solve, require_balanced, Algorithm, BoundedDegreeSolver,
    GuaranteedBihole, Reduction,
};
use crate::bounds::avg2_bound;
use crate::error::{Error, Result};
use crate::exact::{max_bihole_with, ExactOptions};
use crate::graph::{Bihole, BipartiteGraph, Side};

/// One removal step in local indices of the current sub-instance.
struct Step {
    rule: &'static str,
    removed_a: Vec<usize>,
    removed_b: Vec<usize>,
    taken_a: Vec<usize>,
    taken_b: Vec<usize>,
}

impl Step {
    fn swapped(self) -> Step {
        Step {
            rule: self.rule,
            removed_a: self.removed_b,
            removed_b: self.removed_a,
            taken_a: self.taken_b,
            taken_b: self.taken_a,
        }
    }
}

/// Bihole of order at least `(n−2)/3` when `m ≤ 2n`.
///
/// While both sides have maximum degree at least 3, a step removes four or
/// six vertices and takes two of them, keeping the edge budget `m ≤ 2n` on
/// what is left. The budget is checked after every step; if it fails, or
/// the expected vertices are missing, the exact solver finishes the
/// current sub-instance and the trace records it.
pub fn bihole_avg2(g: &BipartiteGraph, base: &BoundedDegreeSolver) -> Result<GuaranteedBihole> {
    const NAME: &str = "avg2";
    require_balanced(g, NAME)?;
    let n = g.n_a();
    if n < 2 {
        return Err(Error::precondition(
            NAME,
            "needs at least two vertices per side",
        ));
    }
    if g.m() > 2 * n {
        return Err(Error::precondition(
            NAME,
            format!("{} edges exceed 2n = {}", g.m(), 2 * n),
        ));
    }
    let guarantee = avg2_bound(n).value.exact().expect("rational formula");

    let mut red = Reduction::new(g);
    let (rule, rest) = loop {
        let (h, a_map, b_map) = red.current();
        let lift = |b: Bihole| b.lift(&a_map, &b_map);
        if h.n_a() <= 2 || h.max_degree(Side::A) <= 2 {
            break ("base", lift(bounded_degree_solve(&h, base)?.bihole));
        }
        if h.max_degree(Side::B) <= 2 {
            break (
                "base-swapped",
                lift(bounded_degree_solve(&h.swapped(), base)?.bihole.swapped()),
            );
        }
        let step = if h.min_degree(Side::A) == 0 {
            isolated_step(&h)
        } else if h.min_degree(Side::B) == 0 {
            isolated_step(&h.swapped()).map(Step::swapped)
        } else {
            degree_one_step(&h)
        };
        let within_budget = step.as_ref().is_some_and(|s| {
            let left = h.n_a() - s.removed_a.len();
            let removed_edges = h
                .edges()
                .filter(|(a, b)| s.removed_a.contains(a) || s.removed_b.contains(b))
                .count();
            h.m() - removed_edges <= 2 * left
        });
        let Some(step) = step.filter(|_| within_budget) else {
            let exact = max_bihole_with(&h, &ExactOptions::default());
            break ("exact-fallback", lift(exact.witness));
        };
        let to_host = |v: &[usize], map: &[usize]| v.iter().map(|&x| map[x]).collect::<Vec<_>>();
        red.step(
            step.rule,
            to_host(&step.removed_a, &a_map),
            to_host(&step.removed_b, &b_map),
            to_host(&step.taken_a, &a_map),
            to_host(&step.taken_b, &b_map),
        );
    };
    let (bihole, trace) = red.finish(rule, &rest);
    GuaranteedBihole {
        bihole,
        guarantee,
        algorithm: Algorithm::Avg2,
        trace,
    }
    .checked(g)
}

/// An isolated A-vertex `u`, a B-vertex `v` of minimum degree, the A-vertex
/// `u'` of largest degree covering `N(v)`, and a B-vertex `v'` of maximum
/// degree; `u` and `v` are taken.
fn isolated_step(h: &BipartiteGraph) -> Option<Step> {
    let u = (0..h.n_a()).find(|&a| h.degree(Side::A, a) == 0)?;
    let v = (0..h.n_b()).min_by_key(|&b| (h.degree(Side::B, b), b))?;
    let u1 = match h.neighbors(Side::B, v) {
        [] => argmax_degree(h, Side::A, &[u])?,
        [x] => *x,
        _ => return None,
    };
    let v1 = argmax_degree(h, Side::B, &[v])?;
    Some(Step {
        rule: "isolated",
        removed_a: vec![u, u1],
        removed_b: vec![v, v1],
        taken_a: vec![u],
        taken_b: vec![v],
    })
}

/// Minimum degree 1 on both sides.
fn degree_one_step(h: &BipartiteGraph) -> Option<Step> {
    let ones_a: Vec<usize> = (0..h.n_a())
        .filter(|&a| h.degree(Side::A, a) == 1)
        .collect();
    let ones_b: Vec<usize> = (0..h.n_b())
        .filter(|&b| h.degree(Side::B, b) == 1)
        .collect();
    let pair = ones_a
        .iter()
        .flat_map(|&u| ones_b.iter().map(move |&v| (u, v)))
        .find(|&(u, v)| !h.has_edge(u, v));

    if let Some((u, v)) = pair {
        let v1 = h.neighbors(Side::A, u)[0];
        let u1 = h.neighbors(Side::B, v)[0];
        if h.degree(Side::A, u1) >= 3 || h.degree(Side::B, v1) >= 3 {
            return Some(Step {
                rule: "pair-4",
                removed_a: vec![u, u1],
                removed_b: vec![v, v1],
                taken_a: vec![u],
                taken_b: vec![v],
            });
        }
        let u2 = argmax_degree(h, Side::A, &[u, u1])?;
        let v2 = argmax_degree(h, Side::B, &[v, v1])?;
        return Some(Step {
            rule: "pair-6",
            removed_a: vec![u, u1, u2],
            removed_b: vec![v, v1, v2],
            taken_a: vec![u],
            taken_b: vec![v],
        });
    }

    // the degree-1 vertices are a single adjacent pair
    let (&u, &v) = (ones_a.first()?, ones_b.first()?);
    let u1 = (0..h.n_a()).find(|&a| h.degree(Side::A, a) == 2)?;
    let (v1, v2) = (h.neighbors(Side::A, u1)[0], h.neighbors(Side::A, u1)[1]);
    if v1 == v || v2 == v {
        return None;
    }
    let u2 = argmax_degree(h, Side::A, &[u, u1])?;
    Some(Step {
        rule: "adjacent-6",
        removed_a: vec![u, u1, u2],
        removed_b: vec![v, v1, v2],
        taken_a: vec![u1],
        taken_b: vec![v],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructive::replay_trace;
    use crate::exact::brute_force_oracle;
    use crate::generate::gen_random_edges;
    use crate::Rational;

    #[test]
    fn two_edgeless() {
        let r = bihole_avg2(
            &BipartiteGraph::empty(2, 2),
            &BoundedDegreeSolver::certified(),
        )
        .unwrap();
        assert_eq!(r.guarantee, Rational::from_integer(0));
    }

    #[test]
    fn four_cycle_with_isolated_pairs() {
        let g = BipartiteGraph::new(4, 4, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let r = bihole_avg2(&g, &BoundedDegreeSolver::certified()).unwrap();
        assert!(r.order() >= 1);
        assert_eq!(brute_force_oracle(&g).unwrap().order, 2);
    }

    #[test]
    fn random_fifteen() {
        for seed in 0..30 {
            let g = gen_random_edges(15, 30, seed).unwrap();
            let r = bihole_avg2(&g, &BoundedDegreeSolver::certified()).unwrap();
            assert!(r.order() >= 5, "seed {seed}");
            assert!(replay_trace(&g, &r.trace));
        }
    }

    #[test]
    fn forces_the_case_analysis() {
        // high-degree hubs on both sides keep the base solver out
        for seed in 0..40 {
            let mut edges: Vec<(usize, usize)> =
                gen_random_edges(30, 40, seed).unwrap().edges().collect();
            edges.extend([(0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (3, 0)]);
            let g = BipartiteGraph::new(30, 30, edges).unwrap();
            if g.m() > 60 {
                continue;
            }
            let r = bihole_avg2(&g, &BoundedDegreeSolver::heuristic()).unwrap();
            assert!(r.meets_guarantee());
            assert!(r.trace.len() > 1);
            assert!(replay_trace(&g, &r.trace));
        }
    }

    #[test]
    fn rejects_dense() {
        let g = BipartiteGraph::complete(3, 3);
        assert!(matches!(
            bihole_avg2(&g, &BoundedDegreeSolver::certified()),
            Err(Error::Precondition { .. })
        ));
    }
}
