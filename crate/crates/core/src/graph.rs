//! Bipartite graphs with a fixed bipartition, biholes, degree profiles and
//! connected components.
//!
//! Vertices are identified by their side and a dense index on that side.
//! Adjacency is stored in both directions with sorted neighbour lists.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::A => f.write_str("A"),
            Side::B => f.write_str("B"),
        }
    }
}

/// Immutable simple bipartite graph with partite sets `A = 0..n_a` and
/// `B = 0..n_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_a: usize,
    n_b: usize,
    adj_a: Vec<Vec<usize>>,
    adj_b: Vec<Vec<usize>>,
    m: usize,
}

impl BipartiteGraph {
    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn new(
        n_a: usize,
        n_b: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut adj_a = vec![Vec::new(); n_a];
        for (a, b) in edges {
            if a >= n_a || b >= n_b {
                return Err(Error::InvalidInput(format!(
                    "edge ({a},{b}) out of range for sides {n_a}x{n_b}"
                )));
            }
            adj_a[a].push(b);
        }
        for list in &mut adj_a {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_sorted_adjacency(n_b, adj_a))
    }

    /// `adj_a` lists must be sorted, deduplicated and in range.
    fn from_sorted_adjacency(n_b: usize, adj_a: Vec<Vec<usize>>) -> Self {
        let mut adj_b = vec![Vec::new(); n_b];
        let mut m = 0;
        for (a, list) in adj_a.iter().enumerate() {
            m += list.len();
            for &b in list {
                adj_b[b].push(a);
            }
        }
        BipartiteGraph {
            n_a: adj_a.len(),
            n_b,
            adj_a,
            adj_b,
            m,
        }
    }

    pub fn empty(n_a: usize, n_b: usize) -> Self {
        Self::from_sorted_adjacency(n_b, vec![Vec::new(); n_a])
    }

    pub fn complete(n_a: usize, n_b: usize) -> Self {
        Self::from_sorted_adjacency(n_b, vec![(0..n_b).collect(); n_a])
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_balanced(&self) -> bool {
        self.n_a == self.n_b
    }

    pub fn side_size(&self, side: Side) -> usize {
        match side {
            Side::A => self.n_a,
            Side::B => self.n_b,
        }
    }

    pub fn neighbors(&self, side: Side, v: usize) -> &[usize] {
        match side {
            Side::A => &self.adj_a[v],
            Side::B => &self.adj_b[v],
        }
    }

    pub fn degree(&self, side: Side, v: usize) -> usize {
        self.neighbors(side, v).len()
    }

    /// Maximum degree on `side`, 0 for an empty side.
    pub fn max_degree(&self, side: Side) -> usize {
        self.adjacency(side).iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Minimum degree on `side`, 0 for an empty side.
    pub fn min_degree(&self, side: Side) -> usize {
        self.adjacency(side).iter().map(Vec::len).min().unwrap_or(0)
    }

    fn adjacency(&self, side: Side) -> &[Vec<usize>] {
        match side {
            Side::A => &self.adj_a,
            Side::B => &self.adj_b,
        }
    }

    /// Average degree `d = m / n` of the A side (0 for an empty A side).
    /// For balanced graphs this is the `d` with `m = d n`.
    pub fn avg_degree(&self) -> Rational {
        if self.n_a == 0 {
            Rational::from_integer(0)
        } else {
            Rational::new(self.m as i64, self.n_a as i64)
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n_a && self.adj_a[a].binary_search(&b).is_ok()
    }

    /// All edges as `(a, b)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj_a
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().map(move |&b| (a, b)))
    }

    /// The same graph with the roles of A and B exchanged.
    pub fn swapped(&self) -> BipartiteGraph {
        BipartiteGraph {
            n_a: self.n_b,
            n_b: self.n_a,
            adj_a: self.adj_b.clone(),
            adj_b: self.adj_a.clone(),
            m: self.m,
        }
    }

    /// Subgraph induced by `keep_a` and `keep_b`. Vertex `i` of the result on
    /// side A is `keep_a[i]` of `self` (likewise for B).
    pub fn induced(&self, keep_a: &[usize], keep_b: &[usize]) -> BipartiteGraph {
        let mut b_index = vec![usize::MAX; self.n_b];
        for (i, &b) in keep_b.iter().enumerate() {
            b_index[b] = i;
        }
        let adj_a = keep_a
            .iter()
            .map(|&a| {
                let mut list: Vec<usize> = self.adj_a[a]
                    .iter()
                    .filter_map(|&b| (b_index[b] != usize::MAX).then_some(b_index[b]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Self::from_sorted_adjacency(keep_b.len(), adj_a)
    }

    pub fn degree_profile(&self, side: Side) -> DegreeProfile {
        let mut counts = BTreeMap::new();
        for list in self.adjacency(side) {
            *counts.entry(list.len()).or_insert(0) += 1;
        }
        DegreeProfile { side, counts }
    }

    /// Maximal connected components. Components are listed in order of their
    /// first vertex, scanning A before B; isolated vertices are singletons.
    pub fn components(&self) -> Vec<ComponentView> {
        let mut seen_a = vec![false; self.n_a];
        let mut seen_b = vec![false; self.n_b];
        let mut out = Vec::new();
        let starts = (0..self.n_a)
            .map(|a| (Side::A, a))
            .chain((0..self.n_b).map(|b| (Side::B, b)));
        let mut queue = VecDeque::new();
        for (side, v) in starts {
            let seen = match side {
                Side::A => &mut seen_a[v],
                Side::B => &mut seen_b[v],
            };
            if *seen {
                continue;
            }
            *seen = true;
            let mut a_vertices = Vec::new();
            let mut b_vertices = Vec::new();
            let mut degree_sum = 0;
            queue.push_back((side, v));
            while let Some((side, v)) = queue.pop_front() {
                match side {
                    Side::A => {
                        a_vertices.push(v);
                        degree_sum += self.adj_a[v].len();
                        for &b in &self.adj_a[v] {
                            if !seen_b[b] {
                                seen_b[b] = true;
                                queue.push_back((Side::B, b));
                            }
                        }
                    }
                    Side::B => {
                        b_vertices.push(v);
                        for &a in &self.adj_b[v] {
                            if !seen_a[a] {
                                seen_a[a] = true;
                                queue.push_back((Side::A, a));
                            }
                        }
                    }
                }
            }
            a_vertices.sort_unstable();
            b_vertices.sort_unstable();
            out.push(ComponentView::new(a_vertices, b_vertices, degree_sum));
        }
        out
    }

    /// True iff `|s| = |t|`, both are duplicate-free and in range, and no
    /// edge joins `s` to `t`.
    pub fn is_bihole(&self, s: &[usize], t: &[usize]) -> bool {
        if s.len() != t.len() {
            return false;
        }
        let mut in_t = vec![false; self.n_b];
        for &b in t {
            if b >= self.n_b || in_t[b] {
                return false;
            }
            in_t[b] = true;
        }
        let mut in_s = vec![false; self.n_a];
        for &a in s {
            if a >= self.n_a || in_s[a] {
                return false;
            }
            in_s[a] = true;
            if self.adj_a[a].iter().any(|&b| in_t[b]) {
                return false;
            }
        }
        true
    }
}

/// A pair `(S ⊆ A, T ⊆ B)` with `|S| = |T|` and no `S`–`T` edge in the host
/// graph. Index lists are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Bihole {
    s: Vec<usize>,
    t: Vec<usize>,
}

impl Bihole {
    /// Checks only the balance and duplicate-freeness; independence depends
    /// on a host graph, see [`Bihole::is_valid_in`].
    pub fn new(mut s: Vec<usize>, mut t: Vec<usize>) -> Result<Self> {
        s.sort_unstable();
        t.sort_unstable();
        if s.len() != t.len() {
            return Err(Error::InvalidInput(format!(
                "unbalanced bihole: |S|={} |T|={}",
                s.len(),
                t.len()
            )));
        }
        if s.windows(2).any(|w| w[0] == w[1]) || t.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("bihole with repeated vertex".into()));
        }
        Ok(Bihole { s, t })
    }

    pub fn empty() -> Self {
        Bihole::default()
    }

    /// Half the number of vertices.
    pub fn order(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    pub fn t(&self) -> &[usize] {
        &self.t
    }

    pub fn is_valid_in(&self, g: &BipartiteGraph) -> bool {
        g.is_bihole(&self.s, &self.t)
    }

    pub fn swapped(&self) -> Bihole {
        Bihole {
            s: self.t.clone(),
            t: self.s.clone(),
        }
    }

    /// Maps the indices of a bihole in an induced subgraph back to the host.
    pub fn lift(&self, a_map: &[usize], b_map: &[usize]) -> Bihole {
        let mut s: Vec<usize> = self.s.iter().map(|&a| a_map[a]).collect();
        let mut t: Vec<usize> = self.t.iter().map(|&b| b_map[b]).collect();
        s.sort_unstable();
        t.sort_unstable();
        Bihole { s, t }
    }
}

/// Number of vertices of each degree on one side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub side: Side,
    pub counts: BTreeMap<usize, usize>,
}

impl DegreeProfile {
    pub fn count(&self, degree: usize) -> usize {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn n0(&self) -> usize {
        self.count(0)
    }

    pub fn n1(&self) -> usize {
        self.count(1)
    }

    pub fn n2(&self) -> usize {
        self.count(2)
    }

    pub fn n3(&self) -> usize {
        self.count(3)
    }

    /// Number of vertices on the side.
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Sum of degrees; equals the edge count of the host graph.
    pub fn degree_sum(&self) -> usize {
        self.counts.iter().map(|(d, c)| d * c).sum()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.counts.keys().next().copied()
    }
}

/// One connected component, by host indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentView {
    pub a_vertices: Vec<usize>,
    pub b_vertices: Vec<usize>,
    pub edges: usize,
    pub is_tree: bool,
    /// `b_size - a_size`.
    pub b_excess: isize,
}

impl ComponentView {
    fn new(a_vertices: Vec<usize>, b_vertices: Vec<usize>, edges: usize) -> Self {
        let order = a_vertices.len() + b_vertices.len();
        ComponentView {
            is_tree: edges + 1 == order,
            b_excess: b_vertices.len() as isize - a_vertices.len() as isize,
            a_vertices,
            b_vertices,
            edges,
        }
    }

    pub fn a_size(&self) -> usize {
        self.a_vertices.len()
    }

    pub fn b_size(&self) -> usize {
        self.b_vertices.len()
    }
}
