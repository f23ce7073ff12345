//! Digraphs with self-loops, undirected loop-graphs and the named families
//! that show up as extremal cases of the energy bounds.
//!
//! Loops are stored apart from arcs: `arcs` only ever holds pairs of distinct
//! vertices, and the adjacency matrix puts a 1 on the diagonal exactly at
//! the loop vertices.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("vertex id {id} out of range for a graph of order {n}")]
    IdOutOfRange { id: usize, n: usize },
    #[error("arc ({0}, {0}) joins a vertex to itself; loops belong in the loop list")]
    SelfPairInArcList(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("duplicate loop at vertex {0}")]
    DuplicateLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("bad partition: {0}")]
    BadPartition(String),
}

/// A digraph with self-loops `D_S`: vertices `0..n`, arcs between distinct
/// vertices and a set `S` of looped vertices.
///
/// Values are immutable once built.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDigraph", into = "RawDigraph")]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    loops: Vec<usize>,
    adj: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct RawDigraph {
    n: usize,
    arcs: Vec<[usize; 2]>,
    loops: Vec<usize>,
}

impl TryFrom<RawDigraph> for Digraph {
    type Error = GraphError;

    fn try_from(raw: RawDigraph) -> Result<Self, Self::Error> {
        let arcs: Vec<(usize, usize)> = raw.arcs.iter().map(|a| (a[0], a[1])).collect();
        Digraph::new_strict(raw.n, &arcs, &raw.loops)
    }
}

impl From<Digraph> for RawDigraph {
    fn from(d: Digraph) -> Self {
        RawDigraph {
            n: d.n,
            arcs: d.arcs.iter().map(|&(u, v)| [u, v]).collect(),
            loops: d.loops,
        }
    }
}

impl Digraph {
    /// Builds a digraph, silently merging repeated arcs and loops.
    pub fn new(n: usize, arcs: &[(usize, usize)], loops: &[usize]) -> Result<Self, GraphError> {
        Self::build(n, arcs, loops, false)
    }

    /// Like [`Digraph::new`] but rejects repeated arcs and loops. Used by the
    /// file parsers.
    pub fn new_strict(
        n: usize,
        arcs: &[(usize, usize)],
        loops: &[usize],
    ) -> Result<Self, GraphError> {
        Self::build(n, arcs, loops, true)
    }

    fn build(
        n: usize,
        arcs: &[(usize, usize)],
        loops: &[usize],
        strict: bool,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let check = |id: usize| {
            if id < n {
                Ok(())
            } else {
                Err(GraphError::IdOutOfRange { id, n })
            }
        };
        let mut arc_set = BTreeSet::new();
        for &(u, v) in arcs {
            check(u)?;
            check(v)?;
            if u == v {
                return Err(GraphError::SelfPairInArcList(u));
            }
            if !arc_set.insert((u, v)) && strict {
                return Err(GraphError::DuplicateArc(u, v));
            }
        }
        let mut loop_set = BTreeSet::new();
        for &v in loops {
            check(v)?;
            if !loop_set.insert(v) && strict {
                return Err(GraphError::DuplicateLoop(v));
            }
        }
        Ok(Self::from_sorted(n, arc_set.into_iter().collect(), loop_set.into_iter().collect()))
    }

    /// Assumes validated, sorted, duplicate-free input.
    fn from_sorted(n: usize, arcs: Vec<(usize, usize)>, loops: Vec<usize>) -> Self {
        let mut adj = vec![false; n * n];
        for &(u, v) in &arcs {
            adj[u * n + v] = true;
        }
        for &v in &loops {
            adj[v * n + v] = true;
        }
        Digraph { n, arcs, loops, adj }
    }

    /// Builds a digraph directly from a 0/1 pattern where entry `(i, j)` is
    /// `pattern(i, j)`; diagonal entries are loops.
    pub fn from_pattern(n: usize, pattern: impl Fn(usize, usize) -> bool) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut arcs = Vec::new();
        let mut loops = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if pattern(i, j) {
                    if i == j {
                        loops.push(i);
                    } else {
                        arcs.push((i, j));
                    }
                }
            }
        }
        Ok(Self::from_sorted(n, arcs, loops))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of arcs between distinct vertices (`m`).
    pub fn size(&self) -> usize {
        self.arcs.len()
    }

    /// Number of loops (`σ`).
    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn loops(&self) -> &[usize] {
        &self.loops
    }

    /// Adjacency entry `a_ij`, loops included.
    pub fn has(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has(v, v)
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| w != v && self.has(v, w))
    }

    pub fn degrees(&self) -> DegreeProfile {
        let n = self.n;
        let mut out_deg = vec![0; n];
        let mut in_deg = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                if self.has(i, j) {
                    out_deg[i] += 1;
                    in_deg[j] += 1;
                }
            }
        }
        // Undirected view: non-loop neighbours counted once per direction
        // pair, loops twice.
        let gs_deg = (0..n)
            .map(|v| {
                let nbrs = (0..n)
                    .filter(|&w| w != v && (self.has(v, w) || self.has(w, v)))
                    .count();
                nbrs + if self.has_loop(v) { 2 } else { 0 }
            })
            .collect();
        DegreeProfile { out_deg, in_deg, gs_deg }
    }

    /// `Some(r)` when every vertex has in- and out-degree `r` (loops count 1).
    pub fn regularity(&self) -> Option<usize> {
        let deg = self.degrees();
        let r = deg.out_deg[0];
        let regular = deg.out_deg.iter().chain(&deg.in_deg).all(|&d| d == r);
        regular.then_some(r)
    }

    /// `c₂ = Σ_{i≠j} a_ij a_ji`, the number of closed 2-walks that avoid
    /// loops. Every digon is counted twice.
    pub fn count_two_cycles(&self) -> usize {
        self.arcs.iter().filter(|&&(u, v)| self.has(v, u)).count()
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs.iter().all(|&(u, v)| self.has(v, u))
    }

    /// True iff the loopless projection has no directed cycle. Loops do not
    /// count as cycles here.
    pub fn is_acyclic(&self) -> bool {
        let n = self.n;
        let mut indeg = vec![0usize; n];
        for &(_, v) in &self.arcs {
            indeg[v] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = queue.pop_front() {
            seen += 1;
            for w in self.out_neighbors(u) {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        seen == n
    }

    /// The complement. With at least one loop, loops and arcs both flip
    /// (`A + Ā = J`); without loops no loops are created (`A + Ā = J − I`).
    pub fn complement(&self) -> Digraph {
        let flip_loops = !self.loops.is_empty();
        Digraph::from_pattern(self.n, |i, j| {
            if i == j {
                flip_loops && !self.has(i, i)
            } else {
                !self.has(i, j)
            }
        })
        .expect("order is positive")
    }

    /// Same arcs, no loops.
    pub fn loopless(&self) -> Digraph {
        Self::from_sorted(self.n, self.arcs.clone(), Vec::new())
    }

    /// Same arcs, a loop on every vertex.
    pub fn with_full_loops(&self) -> Digraph {
        Self::from_sorted(self.n, self.arcs.clone(), (0..self.n).collect())
    }

    /// Keeps only the arcs accepted by `keep`; loops are untouched.
    pub fn retain_arcs(&self, keep: impl Fn(usize, usize) -> bool) -> Digraph {
        let arcs = self.arcs.iter().copied().filter(|&(u, v)| keep(u, v)).collect();
        Self::from_sorted(self.n, arcs, self.loops.clone())
    }

    /// Induced sub-digraph on `vertices`, relabelled `0..k` in the given
    /// order. Loops are kept.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        Digraph::from_pattern(vertices.len(), |i, j| self.has(vertices[i], vertices[j]))
            .expect("induced subgraph on at least one vertex")
    }

    /// Disjoint union; ids of later parts are shifted past earlier ones.
    pub fn disjoint_union(parts: &[Digraph]) -> Result<Digraph, GraphError> {
        let n: usize = parts.iter().map(|p| p.n).sum();
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut arcs = Vec::new();
        let mut loops = Vec::new();
        let mut offset = 0;
        for p in parts {
            arcs.extend(p.arcs.iter().map(|&(u, v)| (u + offset, v + offset)));
            loops.extend(p.loops.iter().map(|&v| v + offset));
            offset += p.n;
        }
        // Offsets keep each part's block sorted and blocks are increasing.
        Ok(Self::from_sorted(n, arcs, loops))
    }

    /// The undirected loop-graph whose symmetrization this is, if symmetric.
    pub fn as_loop_graph(&self) -> Option<LoopGraph> {
        if !self.is_symmetric() {
            return None;
        }
        let edges: Vec<_> = self.arcs.iter().copied().filter(|&(u, v)| u < v).collect();
        Some(LoopGraph::new(self.n, &edges, &self.loops).expect("validated ids"))
    }

    /// Quick summary used in reports.
    pub fn stats(&self) -> GraphStats {
        GraphStats {
            n: self.n,
            m: self.size(),
            sigma: self.loop_count(),
            c2: self.count_two_cycles(),
        }
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?}, loops={:?})", self.n, self.arcs, self.loops)
    }
}

/// `(n, m, σ, c₂)` of a digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub sigma: usize,
    pub c2: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub out_deg: Vec<usize>,
    pub in_deg: Vec<usize>,
    /// Undirected degree with each loop counted twice.
    pub gs_deg: Vec<usize>,
}

/// An undirected graph with self-loops `G_S`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LoopGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    loops: Vec<usize>,
}

/// The two degree values of a bidegreed loop-graph, `low ≤ high`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bidegree {
    pub low: usize,
    pub high: usize,
    /// Every loop vertex has degree `high` and, when the values differ, every
    /// loopless vertex has degree `low`.
    pub loops_on_high: bool,
}

impl LoopGraph {
    /// Edges are unordered; `{u, v}` and `{v, u}` are the same edge.
    pub fn new(n: usize, edges: &[(usize, usize)], loops: &[usize]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut edge_set = BTreeSet::new();
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(GraphError::IdOutOfRange { id, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfPairInArcList(u));
            }
            if !edge_set.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        let mut loop_set = BTreeSet::new();
        for &v in loops {
            if v >= n {
                return Err(GraphError::IdOutOfRange { id: v, n });
            }
            if !loop_set.insert(v) {
                return Err(GraphError::DuplicateLoop(v));
            }
        }
        Ok(LoopGraph {
            n,
            edges: edge_set.into_iter().collect(),
            loops: loop_set.into_iter().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn loops(&self) -> &[usize] {
        &self.loops
    }

    /// Each edge becomes two opposite arcs, each loop a directed loop.
    pub fn symmetrize(&self) -> Digraph {
        let arcs: Vec<_> = self.edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
        Digraph::new(self.n, &arcs, &self.loops).expect("validated ids")
    }

    /// `deg_{G_S}`: neighbours plus two for a loop.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        for &v in &self.loops {
            deg[v] += 2;
        }
        deg
    }

    /// The (at most two) degree values, or `None` when there are three or
    /// more. A regular graph reports `(r, r)`.
    pub fn bidegree_profile(&self) -> Option<Bidegree> {
        let deg = self.degrees();
        let values: BTreeSet<usize> = deg.iter().copied().collect();
        if values.len() > 2 {
            return None;
        }
        let low = *values.first().expect("non-empty");
        let high = *values.last().expect("non-empty");
        let loops_on_high = (0..self.n).all(|v| {
            let looped = self.loops.binary_search(&v).is_ok();
            if looped {
                deg[v] == high
            } else {
                low == high || deg[v] == low
            }
        });
        Some(Bidegree { low, high, loops_on_high })
    }
}

/// Named families used by the extremal cases of the bounds. `loops` lists
/// the looped vertices explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `↔K_n`.
    Complete { n: usize, loops: Vec<usize> },
    /// `↔K_{p₁,…,p_k}` with parts laid out consecutively.
    CompleteMultipartite { parts: Vec<usize>, loops: Vec<usize> },
    /// `0 → 1 → … → n−1 → 0`, not symmetrized.
    DirectedCycle { n: usize, loops: Vec<usize> },
    /// `↔K_{a,b}`; vertices `0..a` form the first class.
    CompleteBipartite { a: usize, b: usize, loops: Vec<usize> },
    /// `n` isolated vertices.
    Empty { n: usize, loops: Vec<usize> },
}

pub fn generate(family: &Family) -> Result<Digraph, GraphError> {
    match family {
        Family::Complete { n, loops } => {
            Digraph::new(*n, &[], loops)?;
            Digraph::from_pattern(*n, |i, j| i != j || loops.contains(&i))
        }
        Family::CompleteMultipartite { parts, loops } => {
            if parts.is_empty() {
                return Err(GraphError::BadPartition("no parts".into()));
            }
            if let Some(i) = parts.iter().position(|&p| p == 0) {
                return Err(GraphError::BadPartition(format!("part {i} is empty")));
            }
            let part_of: Vec<usize> =
                parts.iter().enumerate().flat_map(|(i, &p)| std::iter::repeat_n(i, p)).collect();
            let n = part_of.len();
            Digraph::new(n, &[], loops)?;
            Digraph::from_pattern(n, |i, j| {
                if i == j {
                    loops.contains(&i)
                } else {
                    part_of[i] != part_of[j]
                }
            })
        }
        Family::DirectedCycle { n, loops } => {
            let arcs: Vec<_> = if *n >= 2 { (0..*n).map(|i| (i, (i + 1) % n)).collect() } else { Vec::new() };
            Digraph::new(*n, &arcs, loops)
        }
        Family::CompleteBipartite { a, b, loops } => {
            if *a == 0 || *b == 0 {
                return Err(GraphError::BadPartition("bipartition classes must be non-empty".into()));
            }
            generate(&Family::CompleteMultipartite { parts: vec![*a, *b], loops: loops.clone() })
        }
        Family::Empty { n, loops } => Digraph::new(*n, &[], loops),
    }
}
