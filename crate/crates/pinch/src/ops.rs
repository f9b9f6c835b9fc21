//! Identification, bridges, torsos, stellation and separations.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{edge, Edge, Graph, Vertex, VertexSet};
use crate::partition::{for_each_rgs, VertexPartition};

/// Identifies `u` and `v` into one vertex carrying the smaller id.
pub fn identify_pair(g: &Graph, u: Vertex, v: Vertex) -> Result<Graph> {
    if u == v {
        return invalid(format!("cannot identify vertex {u} with itself"));
    }
    for x in [u, v] {
        if !g.contains(x) {
            return invalid(format!("vertex {x} is not in the graph"));
        }
    }
    let mut h = g.clone();
    h.contract(u, v);
    Ok(h)
}

/// `G // P`: each part collapses to its smallest vertex.
pub fn identify_partition(g: &Graph, p: &VertexPartition) -> Result<Graph> {
    if let Some(x) = p.ground().into_iter().find(|&x| !g.contains(x)) {
        return invalid(format!("vertex {x} is not in the graph"));
    }
    let mut h = g.clone();
    collapse_parts(&mut h, p.parts());
    Ok(h)
}

fn collapse_parts(h: &mut Graph, parts: &[VertexSet]) {
    for part in parts {
        let mut it = part.iter();
        let Some(&first) = it.next() else { continue };
        for &x in it {
            h.contract(first, x);
        }
    }
}

/// Visits one `(P, G // P)` per partition `P` of `xs`, in restricted growth
/// string order over `xs` sorted ascending.
pub fn enumerate_identifications<B>(
    g: &Graph,
    xs: &VertexSet,
    mut visit: impl FnMut(&VertexPartition, &Graph) -> ControlFlow<B>,
) -> Result<ControlFlow<B>> {
    if let Some(x) = xs.iter().find(|&&x| !g.contains(x)) {
        return invalid(format!("vertex {x} is not in the graph"));
    }
    let ground: Vec<Vertex> = xs.iter().copied().collect();
    Ok(for_each_rgs(ground.len(), |rgs| {
        let p = VertexPartition::from_rgs(&ground, rgs);
        let mut h = g.clone();
        collapse_parts(&mut h, p.parts());
        visit(&p, &h)
    }))
}

/// A bridge of `G` relative to a subgraph `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bridge {
    pub edges: BTreeSet<Edge>,
    pub attachments: VertexSet,
    /// Vertices of the bridge outside `H` (empty for single-edge bridges).
    pub interior: VertexSet,
}

/// Bridges of `G` relative to `H`: single chords first, then one bridge per
/// component of `G - V(H)`, both in increasing order.
pub fn bridges(g: &Graph, h: &Graph) -> Result<Vec<Bridge>> {
    if !h.is_subgraph_of(g) {
        return invalid("H is not a subgraph of G");
    }
    let hv = h.vertex_set();
    let mut out: Vec<Bridge> = g
        .edges()
        .filter(|&(u, v)| hv.contains(&u) && hv.contains(&v) && !h.has_edge(u, v))
        .map(|(u, v)| Bridge {
            edges: BTreeSet::from([(u, v)]),
            attachments: VertexSet::from([u, v]),
            interior: VertexSet::new(),
        })
        .collect();
    for comp in g.components_without(&hv) {
        let mut edges = BTreeSet::new();
        let mut attachments = VertexSet::new();
        for &x in &comp {
            for &w in g.neighbors(x) {
                edges.insert(edge(x, w));
                if hv.contains(&w) {
                    attachments.insert(w);
                }
            }
        }
        out.push(Bridge {
            edges,
            attachments,
            interior: comp,
        });
    }
    Ok(out)
}

/// `G[X]` plus a clique on `N(C)` for each component `C` of `G - X`.
pub fn torso_of_set(g: &Graph, xs: &VertexSet) -> Graph {
    let mut t = g.induced(xs);
    for comp in g.components_without(xs) {
        let nb = g.neighborhood(&comp);
        add_clique(&mut t, &nb);
    }
    t
}

pub fn add_clique(g: &mut Graph, xs: &VertexSet) {
    for (&a, &b) in xs.iter().tuple_combinations() {
        g.add_edge(a, b);
    }
}

/// `G*_S`: one fresh vertex per set, adjacent to that set. Returns the new ids.
pub fn stellate(g: &Graph, sets: &[VertexSet]) -> (Graph, Vec<Vertex>) {
    let mut h = g.clone();
    let mut fresh = Vec::with_capacity(sets.len());
    for s in sets {
        let z = h.fresh_vertex();
        h.add_vertex(z);
        for &x in s {
            h.add_edge(z, x);
        }
        fresh.push(z);
    }
    (h, fresh)
}

/// `G°_S`: every set turned into a clique.
pub fn clique_complete(g: &Graph, sets: &[VertexSet]) -> Graph {
    let mut h = g.clone();
    for s in sets {
        add_clique(&mut h, s);
    }
    h
}

/// Separation `(A, B)`: `A ∪ B = V(G)` with no edge between `A - B` and `B - A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Separation {
    pub fn order(&self) -> usize {
        self.a.intersection(&self.b).count()
    }

    pub fn separator(&self) -> VertexSet {
        self.a.intersection(&self.b).copied().collect()
    }

    pub fn a_strict(&self) -> VertexSet {
        self.a.difference(&self.b).copied().collect()
    }

    pub fn b_strict(&self) -> VertexSet {
        self.b.difference(&self.a).copied().collect()
    }

    pub fn flipped(&self) -> Separation {
        Separation {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        let all: VertexSet = self.a.union(&self.b).copied().collect();
        if all != g.vertex_set() {
            return false;
        }
        let bs = self.b_strict();
        self.a_strict()
            .iter()
            .all(|&x| g.neighbors(x).iter().all(|w| !bs.contains(w)))
    }
}

/// Visits each separation of order at most `max_order` with both strict sides
/// nonempty, once per unordered pair. With `connected_sides`, only those whose
/// strict sides each induce a connected graph.
pub fn enumerate_separations<B>(
    g: &Graph,
    max_order: usize,
    connected_sides: bool,
    mut visit: impl FnMut(&Separation) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let vs: Vec<Vertex> = g.vertices().collect();
    for k in 0..=max_order.min(vs.len()) {
        for sep in vs.iter().copied().combinations(k) {
            let s: VertexSet = sep.into_iter().collect();
            let comps = g.components_without(&s);
            if comps.len() < 2 {
                continue;
            }
            if connected_sides {
                if comps.len() == 2 {
                    let a = comps[0].union(&s).copied().collect();
                    let b = comps[1].union(&s).copied().collect();
                    visit(&Separation { a, b })?;
                }
                continue;
            }
            // comps[0] stays on side A; every other component chooses a side.
            let r = comps.len() - 1;
            for mask in 0u64..(1u64 << r) - 1 {
                let mut a = s.clone();
                let mut b = s.clone();
                a.extend(comps[0].iter().copied());
                for (i, c) in comps[1..].iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        a.extend(c.iter().copied());
                    } else {
                        b.extend(c.iter().copied());
                    }
                }
                visit(&Separation { a, b })?;
            }
        }
    }
    ControlFlow::Continue(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[Vertex]) -> VertexSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn identify_examples() {
        let p3 = Graph::path(3);
        let h = identify_pair(&p3, 0, 2).unwrap();
        assert_eq!(h, Graph::from_edges(0, &[(0, 1)]));
        let c4 = Graph::cycle(4);
        let h = identify_pair(&c4, 0, 2).unwrap();
        assert_eq!(h.m(), 2);
        assert_eq!(h.degree(0), 2);
        let e = Graph::path(2);
        let h = identify_pair(&e, 0, 1).unwrap();
        assert_eq!((h.n(), h.m()), (1, 0));
        assert!(identify_pair(&e, 0, 0).is_err());
        assert!(identify_pair(&e, 0, 7).is_err());
    }

    #[test]
    fn identify_partition_singletons_is_identity() {
        let g = Graph::petersen();
        let p = VertexPartition::singletons(&g.vertex_set());
        assert_eq!(identify_partition(&g, &p).unwrap(), g);
    }

    #[test]
    fn k7_pair_merge_gives_k6() {
        let g = Graph::complete(7);
        let p = VertexPartition::new(vec![set(&[2, 5])]).unwrap();
        let h = identify_partition(&g, &p).unwrap();
        assert_eq!((h.n(), h.m()), (6, 15));
    }

    #[test]
    fn enumerate_identifications_counts() {
        let g = Graph::complete(7);
        let mut n = 0;
        let _ = enumerate_identifications::<()>(&g, &VertexSet::new(), |_, h| {
            assert_eq!(h, &g);
            n += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(n, 1);
        let mut n = 0;
        let mut saw_k6 = false;
        let _ = enumerate_identifications::<()>(&g, &set(&[0, 1, 2]), |_, h| {
            n += 1;
            saw_k6 |= h.n() == 6 && h.m() == 15;
            ControlFlow::Continue(())
        });
        assert_eq!(n, 5);
        assert!(saw_k6);
    }

    #[test]
    fn bridge_examples() {
        let c4 = Graph::cycle(4);
        assert!(bridges(&c4, &c4).unwrap().is_empty());
        let h = Graph::from_edges(2, &[(0, 1)]);
        let bs = bridges(&c4, &h).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].edges.len(), 3);
        assert_eq!(bs[0].attachments, set(&[0, 1]));
        let k4 = Graph::complete(4);
        let tri = Graph::cycle(3);
        let bs = bridges(&k4, &tri).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].attachments, set(&[0, 1, 2]));
        assert!(bridges(&tri, &k4).is_err());
    }

    #[test]
    fn torso_examples() {
        let g = Graph::petersen();
        assert_eq!(torso_of_set(&g, &g.vertex_set()), g);
        let t = torso_of_set(&Graph::path(3), &set(&[0, 2]));
        assert!(t.has_edge(0, 2));
        let star = Graph::complete_bipartite(1, 3);
        let t = torso_of_set(&star, &set(&[1, 2, 3]));
        assert_eq!(t.m(), 3);
    }

    #[test]
    fn stellation_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(stellate(&k3, &[]).0, k3);
        assert_eq!(clique_complete(&k3, &[]), k3);
        let (s, z) = stellate(&k3, &[set(&[0, 1])]);
        assert_eq!(s.n(), 4);
        assert_eq!(s.degree(z[0]), 2);
        let p3 = Graph::path(3);
        assert!(clique_complete(&p3, &[set(&[0, 2])]).has_edge(0, 2));
    }

    fn count_seps(g: &Graph, k: usize, connected: bool) -> usize {
        let mut n = 0;
        let _ = enumerate_separations::<()>(g, k, connected, |s| {
            assert!(s.is_valid(g));
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }

    #[test]
    fn separation_examples() {
        assert_eq!(count_seps(&Graph::path(3), 1, true), 1);
        assert_eq!(count_seps(&Graph::complete(4), 2, true), 0);
        assert_eq!(count_seps(&Graph::empty(2), 0, true), 1);
        assert_eq!(count_seps(&Graph::empty(2), 0, false), 1);
        // Three isolated vertices: {a}|{b,c} style splits, three of them.
        assert_eq!(count_seps(&Graph::empty(3), 0, false), 3);
    }
}
