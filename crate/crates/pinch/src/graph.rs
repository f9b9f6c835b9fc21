//! Finite simple undirected graphs over stable integer vertex ids.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub type Vertex = u32;
pub type Edge = (Vertex, Vertex);
pub type VertexSet = BTreeSet<Vertex>;

/// Simple undirected graph. Invariant: adjacency is symmetric and loop-free.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    adj: BTreeMap<Vertex, VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<Vertex>,
    edges: Vec<[Vertex; 2]>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            vertices: g.vertices().collect(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = crate::error::Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        let mut g = Graph::new();
        for v in r.vertices {
            g.add_vertex(v);
        }
        for [u, v] in r.edges {
            if !g.contains(u) || !g.contains(v) {
                return invalid(format!("edge {u}-{v} has an endpoint outside the vertex set"));
            }
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Graph on vertices `0..n` with no edges.
    pub fn empty(n: usize) -> Self {
        let mut g = Graph::new();
        for v in 0..n as Vertex {
            g.add_vertex(v);
        }
        g
    }

    /// Graph on `0..n` with the given edges.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n as Vertex {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n as Vertex - 1, 0);
        }
        g
    }

    /// K_{a,b} with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for u in 0..a as Vertex {
            for v in a as Vertex..(a + b) as Vertex {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        static EMPTY: VertexSet = BTreeSet::new();
        self.adj.get(&v).unwrap_or(&EMPTY)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    /// Smallest id not in use.
    pub fn fresh_vertex(&self) -> Vertex {
        self.adj.keys().next_back().map_or(0, |&v| v + 1)
    }

    pub fn add_vertex(&mut self, v: Vertex) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, VertexSet::new());
        true
    }

    /// Adds `uv`, creating missing endpoints. Panics on a loop.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        assert_ne!(u, v, "loops are not allowed");
        self.adj.entry(v).or_default().insert(u);
        self.adj.entry(u).or_default().insert(v)
    }

    pub fn try_add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        if u == v {
            return invalid(format!("loop at vertex {u}"));
        }
        Ok(self.add_edge(u, v))
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        let had = self.adj.get_mut(&u).is_some_and(|s| s.remove(&v));
        if had {
            self.adj.get_mut(&v).map(|s| s.remove(&u));
        }
        had
    }

    pub fn remove_vertex(&mut self, v: Vertex) -> bool {
        let Some(ns) = self.adj.remove(&v) else {
            return false;
        };
        for u in ns {
            self.adj.get_mut(&u).map(|s| s.remove(&v));
        }
        true
    }

    pub fn without_vertices(&self, xs: &VertexSet) -> Graph {
        let mut g = self.clone();
        for &x in xs {
            g.remove_vertex(x);
        }
        g
    }

    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Graph {
        let mut g = self.clone();
        g.remove_edge(u, v);
        g
    }

    pub fn induced(&self, xs: &VertexSet) -> Graph {
        let mut adj = BTreeMap::new();
        for &x in xs {
            if let Some(ns) = self.adj.get(&x) {
                adj.insert(x, ns.intersection(xs).copied().collect());
            }
        }
        Graph { adj }
    }

    /// Contracts edge `uv` (or identifies non-adjacent `u`, `v`); the merged
    /// vertex keeps the smaller id.
    pub fn contract(&mut self, u: Vertex, v: Vertex) -> Vertex {
        let (keep, gone) = if u < v { (u, v) } else { (v, u) };
        let ns = self.adj.remove(&gone).unwrap_or_default();
        for w in ns {
            self.adj.get_mut(&w).map(|s| s.remove(&gone));
            if w != keep {
                self.add_edge(keep, w);
            }
        }
        keep
    }

    pub fn is_subgraph_of(&self, g: &Graph) -> bool {
        self.vertices().all(|v| g.contains(v)) && self.edges().all(|(u, v)| g.has_edge(u, v))
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let comp = self.reach(v, &VertexSet::new());
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    /// Components of `G - removed`.
    pub fn components_without(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let mut seen = removed.clone();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let comp = self.reach(v, removed);
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `s` avoiding `blocked`.
    pub fn reach(&self, s: Vertex, blocked: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::from([s]);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if !blocked.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => true,
            Some(v) => self.reach(v, &VertexSet::new()).len() == self.n(),
        }
    }

    /// Whether `xs` induces a connected (nonempty) subgraph.
    pub fn is_connected_set(&self, xs: &VertexSet) -> bool {
        let Some(&s) = xs.iter().next() else {
            return false;
        };
        let mut seen = VertexSet::from([s]);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in self.neighbors(u) {
                if xs.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == xs.len()
    }

    /// Open neighbourhood of a set.
    pub fn neighborhood(&self, xs: &VertexSet) -> VertexSet {
        xs.iter()
            .flat_map(|&x| self.neighbors(x).iter().copied())
            .filter(|w| !xs.contains(w))
            .collect()
    }

    /// Shortest path from `s` to any vertex of `targets`, avoiding `blocked`.
    pub fn shortest_path(&self, s: Vertex, targets: &VertexSet, blocked: &VertexSet) -> Option<Vec<Vertex>> {
        let mut prev = BTreeMap::from([(s, s)]);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if targets.contains(&u) {
                let mut path = vec![u];
                let mut cur = u;
                while cur != s {
                    cur = prev[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &w in self.neighbors(u) {
                if !blocked.contains(&w) && !prev.contains_key(&w) {
                    prev.insert(w, u);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Relabels vertices to `0..n` in increasing id order.
    pub fn compact(&self) -> (Graph, Vec<Vertex>) {
        let ids: Vec<Vertex> = self.vertices().collect();
        let index: BTreeMap<Vertex, Vertex> = ids.iter().enumerate().map(|(i, &v)| (v, i as Vertex)).collect();
        let mut g = Graph::empty(ids.len());
        for (u, v) in self.edges() {
            g.add_edge(index[&u], index[&v]);
        }
        (g, ids)
    }

    /// Applies an injective relabelling.
    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> Graph {
        let mut g = Graph::new();
        for v in self.vertices() {
            g.add_vertex(f(v));
        }
        for (u, v) in self.edges() {
            g.add_edge(f(u), f(v));
        }
        g
    }

    /// Disjoint union; the second graph is shifted past the first.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.fresh_vertex();
        let mut g = self.clone();
        for v in other.vertices() {
            g.add_vertex(v + shift);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift);
        }
        g
    }

    /// Adjacency lists over `0..n` plus the id table.
    pub fn dense(&self) -> (Vec<Vec<usize>>, Vec<Vertex>) {
        let ids: Vec<Vertex> = self.vertices().collect();
        let index: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = ids
            .iter()
            .map(|v| self.neighbors(*v).iter().map(|w| index[w]).collect())
            .collect();
        (adj, ids)
    }

    pub fn is_independent(&self, xs: &VertexSet) -> bool {
        xs.iter().all(|&x| self.neighbors(x).iter().all(|w| !xs.contains(w)))
    }
}

/// Normalized edge with the smaller endpoint first.
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}
