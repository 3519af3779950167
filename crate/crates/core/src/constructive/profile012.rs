use super::{
    bounded_degree_solve, require_balanced, tree_split_independent, Algorithm, BoundedDegreeSolver,
    GuaranteedBihole, Reduction,
};
use crate::bounds::profile012_bound;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, ComponentView, Side};

/// Bihole of order at least `3n₀/4 + (n₁+n₂)/2 − 7/4` when every A-degree
/// is at most 2.
///
/// Every step removes whole components together with isolated A-vertices,
/// so the component list of the input stays valid throughout:
///
/// * fewer than four isolated A-vertices left: the base solver finishes;
/// * an isolated B-vertex left: it is paired with an isolated A-vertex;
/// * otherwise the four smallest components with one more B- than
///   A-vertex (all trees) are used. Two of them with sizes of different
///   parity are consumed with two isolated A-vertices; four of them with
///   pairwise equal parity are consumed with four.
pub fn bihole_profile012(
    g: &BipartiteGraph,
    base: &BoundedDegreeSolver,
) -> Result<GuaranteedBihole> {
    const NAME: &str = "profile012";
    require_balanced(g, NAME)?;
    if g.max_degree(Side::A) > 2 {
        return Err(Error::precondition(
            NAME,
            "some A-vertex has degree at least 3",
        ));
    }
    let profile = g.degree_profile(Side::A);
    let guarantee = profile012_bound(profile.n0(), profile.n1(), profile.n2())
        .value
        .exact()
        .expect("rational formula");

    let components = g.components();
    let mut isolated_a: Vec<usize> = components
        .iter()
        .filter(|c| c.a_size() == 1 && c.b_size() == 0)
        .map(|c| c.a_vertices[0])
        .collect();
    let mut isolated_b: Vec<usize> = components
        .iter()
        .filter(|c| c.a_size() == 0 && c.b_size() == 1)
        .map(|c| c.b_vertices[0])
        .collect();
    let mut deficient: Vec<&ComponentView> = components
        .iter()
        .filter(|c| c.b_excess > 0 && c.a_size() > 0)
        .collect();
    deficient.sort_by_key(|c| (c.a_size(), c.a_vertices[0]));
    // consumed from the front
    isolated_a.reverse();
    isolated_b.reverse();
    deficient.reverse();

    let mut red = Reduction::new(g);
    loop {
        if isolated_a.len() <= 3 {
            break;
        }
        if let Some(v) = isolated_b.pop() {
            let u = isolated_a.pop().expect("checked above");
            red.step("isolated-pair", vec![u], vec![v], vec![u], vec![v]);
            continue;
        }
        let n = deficient.len();
        debug_assert!(
            n >= 4,
            "at least as many deficient trees as isolated A-vertices"
        );
        let (g1, g2, g3, g4) = (
            deficient[n - 1],
            deficient[n - 2],
            deficient[n - 3],
            deficient[n - 4],
        );
        if g1.a_size() % 2 != g2.a_size() % 2 {
            pair_case(g, &mut red, &mut isolated_a, g1, g2)?;
            deficient.truncate(n - 2);
        } else if g3.a_size() % 2 != g4.a_size() % 2 {
            pair_case(g, &mut red, &mut isolated_a, g3, g4)?;
            deficient.remove(n - 3);
            deficient.remove(n - 4);
        } else {
            quad_case(g, &mut red, &mut isolated_a, [g1, g2, g3, g4])?;
            deficient.truncate(n - 4);
        }
    }

    let (sub, a_map, b_map) = red.current();
    let rest = if sub.n_a() == 0 {
        Default::default()
    } else {
        bounded_degree_solve(&sub, base)?
            .bihole
            .lift(&a_map, &b_map)
    };
    let (bihole, trace) = red.finish("base", &rest);
    GuaranteedBihole {
        bihole,
        guarantee,
        algorithm: Algorithm::Profile012,
        trace,
    }
    .checked(g)
}

/// Two trees with `a_lo ≤ a_hi` of different parity plus two isolated
/// A-vertices: all of `B_lo`, and a split of the larger tree with
/// `(a_lo + a_hi − 1)/2` A-vertices.
fn pair_case(
    g: &BipartiteGraph,
    red: &mut Reduction<'_>,
    isolated_a: &mut Vec<usize>,
    lo: &ComponentView,
    hi: &ComponentView,
) -> Result<()> {
    let u = [
        isolated_a.pop().expect("four left"),
        isolated_a.pop().expect("four left"),
    ];
    let (split_a, split_b) = tree_split_independent(g, hi, (lo.a_size() + hi.a_size() - 1) / 2)?;
    let mut removed_a = u.to_vec();
    removed_a.extend(&lo.a_vertices);
    removed_a.extend(&hi.a_vertices);
    let removed_b = [lo.b_vertices.clone(), hi.b_vertices.clone()].concat();
    let taken_a = [u.to_vec(), split_a].concat();
    let taken_b = [lo.b_vertices.clone(), split_b].concat();
    red.step("pair", removed_a, removed_b, taken_a, taken_b);
    Ok(())
}

/// Four trees with `a₁ ≡ a₂` and `a₃ ≡ a₄` (mod 2) plus four isolated
/// A-vertices: all of `B₁` and `B₃`, and splits of the second and fourth
/// tree with `(a₁+a₂)/2` and `(a₃+a₄−2)/2` A-vertices.
fn quad_case(
    g: &BipartiteGraph,
    red: &mut Reduction<'_>,
    isolated_a: &mut Vec<usize>,
    trees: [&ComponentView; 4],
) -> Result<()> {
    let u: Vec<usize> = (0..4)
        .map(|_| isolated_a.pop().expect("four left"))
        .collect();
    let [t1, t2, t3, t4] = trees;
    let (s2a, s2b) = tree_split_independent(g, t2, (t1.a_size() + t2.a_size()) / 2)?;
    let (s4a, s4b) = tree_split_independent(g, t4, (t3.a_size() + t4.a_size() - 2) / 2)?;
    let mut removed_a = u.clone();
    let mut removed_b = Vec::new();
    for t in trees {
        removed_a.extend(&t.a_vertices);
        removed_b.extend(&t.b_vertices);
    }
    let taken_a = [u, s2a, s4a].concat();
    let taken_b = [t1.b_vertices.clone(), s2b, t3.b_vertices.clone(), s4b].concat();
    red.step("quad", removed_a, removed_b, taken_a, taken_b);
    Ok(())
}
