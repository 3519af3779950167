//! Polynomial-time bihole constructions, each returned together with the
//! order it provably reaches.
//!
//! Every public entry point checks its own output before returning: the
//! bihole must be valid in the input graph and its order must reach the
//! ceiling of the (zero-clamped) guarantee. A failure of either check is
//! reported as an error rather than returned.

mod avg2;
mod avg_degree;
mod bounded;
mod delta1;
mod profile012;
mod tree_split;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use avg2::bihole_avg2;
pub use avg_degree::bihole_avg_degree;
pub use bounded::{bounded_contract, bounded_degree_solve, BoundedDegreeSolver, SolverMode};
pub use delta1::bihole_delta1;
pub use profile012::bihole_profile012;
pub use tree_split::tree_split_independent;

use crate::bounds::{format_rational, BoundNum};
use crate::error::{Error, Result};
use crate::graph::{Bihole, BipartiteGraph};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Delta1,
    Profile012,
    Avg,
    Avg2,
    Bounded,
    Rand3,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Delta1,
        Algorithm::Profile012,
        Algorithm::Avg,
        Algorithm::Avg2,
        Algorithm::Bounded,
        Algorithm::Rand3,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Delta1 => "delta1",
            Algorithm::Profile012 => "profile012",
            Algorithm::Avg => "avg",
            Algorithm::Avg2 => "avg2",
            Algorithm::Bounded => "bounded",
            Algorithm::Rand3 => "rand3",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.tag() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown algorithm {s:?}")))
    }
}

/// One reduction step of a recursive construction, in host indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub rule: &'static str,
    pub removed_a: Vec<usize>,
    pub removed_b: Vec<usize>,
    pub taken_a: Vec<usize>,
    pub taken_b: Vec<usize>,
    /// Shape of the sub-instance left after this step.
    pub remaining_a: usize,
    pub remaining_b: usize,
    pub remaining_m: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GuaranteedBihole {
    pub bihole: Bihole,
    #[serde(serialize_with = "serialize_rational")]
    pub guarantee: Rational,
    pub algorithm: Algorithm,
    pub trace: Vec<TraceStep>,
}

fn serialize_rational<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(*r))
}

impl GuaranteedBihole {
    pub fn order(&self) -> usize {
        self.bihole.order()
    }

    /// Smallest order the guarantee forces.
    pub fn required_order(&self) -> usize {
        BoundNum::Exact(self.guarantee).ceil_clamped()
    }

    pub fn meets_guarantee(&self) -> bool {
        self.order() >= self.required_order()
    }

    /// Returns `self` if it is valid in `g` and meets its guarantee.
    pub(crate) fn checked(self, g: &BipartiteGraph) -> Result<Self> {
        if !self.bihole.is_valid_in(g) {
            return Err(Error::GuaranteeViolated {
                algorithm: self.algorithm.tag(),
                order: self.order(),
                guarantee: "a valid bihole".into(),
            });
        }
        if !self.meets_guarantee() {
            return Err(Error::GuaranteeViolated {
                algorithm: self.algorithm.tag(),
                order: self.order(),
                guarantee: format_rational(self.guarantee),
            });
        }
        Ok(self)
    }
}

/// Bookkeeping for constructions that peel vertices off the input graph:
/// the surviving vertices (host indices), the bihole collected so far and
/// the trace.
pub(crate) struct Reduction<'g> {
    host: &'g BipartiteGraph,
    alive_a: Vec<bool>,
    alive_b: Vec<bool>,
    taken_a: Vec<usize>,
    taken_b: Vec<usize>,
    trace: Vec<TraceStep>,
}

impl<'g> Reduction<'g> {
    pub(crate) fn new(host: &'g BipartiteGraph) -> Self {
        Reduction {
            host,
            alive_a: vec![true; host.n_a()],
            alive_b: vec![true; host.n_b()],
            taken_a: Vec::new(),
            taken_b: Vec::new(),
            trace: Vec::new(),
        }
    }

    pub(crate) fn alive_a(&self) -> Vec<usize> {
        (0..self.host.n_a()).filter(|&a| self.alive_a[a]).collect()
    }

    pub(crate) fn alive_b(&self) -> Vec<usize> {
        (0..self.host.n_b()).filter(|&b| self.alive_b[b]).collect()
    }

    /// The current sub-instance with the maps from its indices to the host.
    pub(crate) fn current(&self) -> (BipartiteGraph, Vec<usize>, Vec<usize>) {
        let a_map = self.alive_a();
        let b_map = self.alive_b();
        (self.host.induced(&a_map, &b_map), a_map, b_map)
    }

    fn remaining_edges(&self) -> usize {
        self.host
            .edges()
            .filter(|&(a, b)| self.alive_a[a] && self.alive_b[b])
            .count()
    }

    /// Removes vertices and adds the taken ones to the bihole. `taken_*`
    /// must be among the removed vertices.
    pub(crate) fn step(
        &mut self,
        rule: &'static str,
        removed_a: Vec<usize>,
        removed_b: Vec<usize>,
        taken_a: Vec<usize>,
        taken_b: Vec<usize>,
    ) {
        for &a in &removed_a {
            debug_assert!(self.alive_a[a]);
            self.alive_a[a] = false;
        }
        for &b in &removed_b {
            debug_assert!(self.alive_b[b]);
            self.alive_b[b] = false;
        }
        self.taken_a.extend_from_slice(&taken_a);
        self.taken_b.extend_from_slice(&taken_b);
        let step = TraceStep {
            rule,
            remaining_a: self.alive_a.iter().filter(|&&x| x).count(),
            remaining_b: self.alive_b.iter().filter(|&&x| x).count(),
            remaining_m: self.remaining_edges(),
            removed_a,
            removed_b,
            taken_a,
            taken_b,
        };
        self.trace.push(step);
    }

    /// Finishes with a bihole of the current sub-instance (host indices) and
    /// removes everything that is left.
    pub(crate) fn finish(mut self, rule: &'static str, rest: &Bihole) -> (Bihole, Vec<TraceStep>) {
        let removed_a = self.alive_a();
        let removed_b = self.alive_b();
        self.step(
            rule,
            removed_a,
            removed_b,
            rest.s().to_vec(),
            rest.t().to_vec(),
        );
        let bihole = Bihole::new(self.taken_a, self.taken_b)
            .expect("every step takes equally many from both sides");
        (bihole, self.trace)
    }
}

/// Replays a trace on `host` and checks that every recorded sub-instance
/// shape is reproduced. Used to audit the determinism of constructions.
pub fn replay_trace(host: &BipartiteGraph, trace: &[TraceStep]) -> bool {
    let mut alive_a = vec![true; host.n_a()];
    let mut alive_b = vec![true; host.n_b()];
    for step in trace {
        for &a in &step.removed_a {
            if a >= host.n_a() || !alive_a[a] {
                return false;
            }
            alive_a[a] = false;
        }
        for &b in &step.removed_b {
            if b >= host.n_b() || !alive_b[b] {
                return false;
            }
            alive_b[b] = false;
        }
        let a: Vec<usize> = (0..host.n_a()).filter(|&v| alive_a[v]).collect();
        let b: Vec<usize> = (0..host.n_b()).filter(|&v| alive_b[v]).collect();
        let sub = host.induced(&a, &b);
        if (sub.n_a(), sub.n_b(), sub.m()) != (step.remaining_a, step.remaining_b, step.remaining_m)
        {
            return false;
        }
    }
    true
}

pub(crate) fn require_balanced(g: &BipartiteGraph, algorithm: &'static str) -> Result<()> {
    if g.is_balanced() {
        Ok(())
    } else {
        Err(Error::precondition(
            algorithm,
            format!("graph is not balanced ({} vs {})", g.n_a(), g.n_b()),
        ))
    }
}

/// Smallest-index vertex of maximum degree on `side`, skipping `exclude`.
pub(crate) fn argmax_degree(
    g: &BipartiteGraph,
    side: crate::Side,
    exclude: &[usize],
) -> Option<usize> {
    (0..g.side_size(side))
        .filter(|v| !exclude.contains(v))
        .max_by_key(|&v| (g.degree(side, v), std::cmp::Reverse(v)))
}
