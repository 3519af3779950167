use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, ComponentView, Side};

/// Independent set with exactly `i` A-vertices and `a_size − i` B-vertices
/// in a tree component that has one more B-vertex than A-vertices and only
/// A-vertices of degree 2.
///
/// While more than `i` A-vertices remain, the smallest-index B-leaf `u` and
/// its neighbour `v` are peeled off and `u` joins the set. Removing a leaf
/// and then the (now pendant) `v` leaves a tree of the same kind, so the
/// loop ends with exactly `i` A-vertices, all of which are taken.
///
/// Returns `(A-part, B-part)` in host indices, each sorted.
pub fn tree_split_independent(
    g: &BipartiteGraph,
    component: &ComponentView,
    i: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    const NAME: &str = "tree_split";
    if !component.is_tree || component.b_excess != 1 {
        return Err(Error::precondition(
            NAME,
            "component is not a tree with one extra B-vertex",
        ));
    }
    if let Some(&a) = component
        .a_vertices
        .iter()
        .find(|&&a| g.degree(Side::A, a) != 2)
    {
        return Err(Error::precondition(
            NAME,
            format!("A-vertex {a} does not have degree 2"),
        ));
    }
    let a_size = component.a_size();
    if i > a_size {
        return Err(Error::InvalidInput(format!(
            "split target {i} exceeds {a_size} A-vertices"
        )));
    }

    let mut alive_a: BTreeSet<usize> = component.a_vertices.iter().copied().collect();
    let mut b_degree: std::collections::HashMap<usize, usize> = component
        .b_vertices
        .iter()
        .map(|&b| (b, g.degree(Side::B, b)))
        .collect();
    let mut leaves: BTreeSet<usize> = b_degree
        .iter()
        .filter(|(_, &d)| d == 1)
        .map(|(&b, _)| b)
        .collect();
    let mut taken_b = Vec::with_capacity(a_size - i);

    while alive_a.len() > i {
        let u = leaves
            .pop_first()
            .expect("a tree with an edge has a B-leaf");
        let v = *g
            .neighbors(Side::B, u)
            .iter()
            .find(|a| alive_a.contains(a))
            .expect("leaf has a live neighbour");
        taken_b.push(u);
        b_degree.remove(&u);
        alive_a.remove(&v);
        for &w in g.neighbors(Side::A, v) {
            if let Some(d) = b_degree.get_mut(&w) {
                *d -= 1;
                if *d == 1 {
                    leaves.insert(w);
                }
            }
        }
    }
    taken_b.sort_unstable();
    Ok((alive_a.into_iter().collect(), taken_b))
}
