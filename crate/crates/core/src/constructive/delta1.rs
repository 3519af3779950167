use super::{require_balanced, Algorithm, GuaranteedBihole};
use crate::bounds::profile01_bound;
use crate::error::{Error, Result};
use crate::graph::{Bihole, BipartiteGraph, Side};

/// Bihole of order at least `n₀ + n₁/2 − 1/2` when every A-degree is at most 1.
///
/// Components are isolated vertices, `K₂`s and stars centred in B with at
/// least two A-leaves. The bihole takes every isolated A-vertex, all but one
/// leaf of each star, every isolated B-vertex, and splits the `K₂`s between
/// the sides (each `K₂` goes to the currently smaller side, A on ties)
/// before trimming the larger side back, last additions first.
pub fn bihole_delta1(g: &BipartiteGraph) -> Result<GuaranteedBihole> {
    const NAME: &str = "delta1";
    require_balanced(g, NAME)?;
    if g.max_degree(Side::A) > 1 {
        return Err(Error::precondition(
            NAME,
            "some A-vertex has degree at least 2",
        ));
    }

    let mut s = Vec::new();
    let mut t = Vec::new();
    for a in 0..g.n_a() {
        if g.degree(Side::A, a) == 0 {
            s.push(a);
        }
    }
    let mut k2 = Vec::new();
    for b in 0..g.n_b() {
        let leaves = g.neighbors(Side::B, b);
        match leaves.len() {
            0 => t.push(b),
            1 => k2.push((leaves[0], b)),
            _ => s.extend_from_slice(&leaves[..leaves.len() - 1]),
        }
    }
    for (a, b) in k2 {
        if s.len() <= t.len() {
            s.push(a);
        } else {
            t.push(b);
        }
    }
    let order = s.len().min(t.len());
    s.truncate(order);
    t.truncate(order);

    let profile = g.degree_profile(Side::A);
    GuaranteedBihole {
        bihole: Bihole::new(s, t)?,
        guarantee: profile01_bound(profile.n0(), profile.n1())
            .value
            .exact()
            .expect("rational formula"),
        algorithm: Algorithm::Delta1,
        trace: Vec::new(),
    }
    .checked(g)
}
