//! Edge-apex and pinched-sphere membership, and neighbourhood-class counts.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::planar::{is_planar_graph, kuratowski_subgraph, planar_embedding};
use super::{Certificate, EmbedVerdict};
use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::minors::{verify_model, MinorModel};

/// `G - e` planar for some edge `e`. Planar graphs qualify through any edge
/// (or vacuously when edgeless).
pub fn is_edge_apex(g: &Graph) -> EmbedVerdict {
    if let Some(r) = planar_embedding(g) {
        return match g.edges().next() {
            Some(e) => EmbedVerdict::yes(Certificate::Edge(e)),
            None => EmbedVerdict::yes(Certificate::Embedding(r)),
        };
    }
    let mut witnesses = Vec::new();
    for (u, v) in g.edges() {
        let h = g.without_edge(u, v);
        match kuratowski_subgraph(&h) {
            None => return EmbedVerdict::yes(Certificate::Edge((u, v))),
            Some(w) => witnesses.push(((u, v), w)),
        }
    }
    EmbedVerdict::no(Certificate::EveryEdge(witnesses))
}

/// Split of `vertex` into itself (keeping `stay`) and a new vertex `twin`
/// (taking `moved`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitWitness {
    pub vertex: Vertex,
    pub twin: Vertex,
    pub stay: VertexSet,
    pub moved: VertexSet,
}

impl SplitWitness {
    pub fn split_graph(&self, g: &Graph) -> Graph {
        let mut h = g.clone();
        h.add_vertex(self.twin);
        for &x in &self.moved {
            h.remove_edge(self.vertex, x);
            h.add_edge(self.twin, x);
        }
        h
    }

    fn valid_for(&self, g: &Graph) -> bool {
        g.contains(self.vertex)
            && !g.contains(self.twin)
            && self.stay.is_disjoint(&self.moved)
            && self.stay.union(&self.moved).copied().collect::<VertexSet>() == *g.neighbors(self.vertex)
    }
}

/// Pinched-sphere embeddability: planar, or planar after splitting one
/// vertex's edges between two new vertices.
pub fn is_pinched(g: &Graph) -> EmbedVerdict {
    if let Some(r) = planar_embedding(g) {
        return EmbedVerdict::yes(Certificate::Embedding(r));
    }
    let twin = g.fresh_vertex();
    let mut witnesses = Vec::new();
    for w in g.vertices() {
        let ns: Vec<Vertex> = g.neighbors(w).iter().copied().collect();
        if ns.len() < 2 {
            continue;
        }
        // ns[0] stays with w; every subset of the rest may move.
        let rest = &ns[1..];
        for mask in 1u64..(1u64 << rest.len()) {
            let moved: VertexSet = rest
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect();
            let stay: VertexSet = ns.iter().copied().filter(|x| !moved.contains(x)).collect();
            let s = SplitWitness {
                vertex: w,
                twin,
                stay,
                moved,
            };
            let h = s.split_graph(g);
            match kuratowski_subgraph(&h) {
                None => return EmbedVerdict::yes(Certificate::Split(s)),
                Some(k) => witnesses.push((s, k)),
            }
        }
    }
    EmbedVerdict::no(Certificate::EverySplit(witnesses))
}

/// Edge-apex graph containing `g` as a minor, from a positive pinched
/// verdict: the split graph plus the edge joining the two halves, with the
/// model contracting that edge. A planar certificate returns `g` itself.
pub fn edge_apex_supergraph(g: &Graph, witness: &Certificate) -> Result<(Graph, MinorModel)> {
    match witness {
        Certificate::Embedding(r) if r.euler_genus(g) == Some(0) => Ok((g.clone(), MinorModel::identity(g))),
        Certificate::Split(s) => {
            if !s.valid_for(g) {
                return invalid("split witness does not match the graph");
            }
            let mut h = s.split_graph(g);
            if !is_planar_graph(&h) {
                return invalid("split witness does not planarize the graph");
            }
            h.add_edge(s.vertex, s.twin);
            let mut model = MinorModel::identity(g);
            model
                .branchsets
                .get_mut(&s.vertex)
                .expect("vertex present")
                .insert(s.twin);
            debug_assert!(verify_model(&h, g, &model));
            Ok((h, model))
        }
        _ => invalid("expected a planar embedding or a split witness"),
    }
}

/// Number of distinct sets `N(s) ∩ X` over `s ∈ S`, where `(X, S)`
/// partitions `V(G)` and `S` is independent.
pub fn neighborhood_class_count(g: &Graph, xs: &VertexSet, ss: &VertexSet) -> Result<usize> {
    if xs.is_empty() {
        return invalid("X must be nonempty");
    }
    if !xs.is_disjoint(ss) || xs.union(ss).copied().collect::<VertexSet>() != g.vertex_set() {
        return invalid("X and S must partition the vertex set");
    }
    if !g.is_independent(ss) {
        return invalid("S must be independent");
    }
    let classes: BTreeSet<Vec<Vertex>> = ss
        .iter()
        .map(|&s| g.neighbors(s).intersection(xs).copied().collect_vec())
        .collect();
    Ok(classes.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinched_examples() {
        let k5 = Graph::complete(5);
        let v = is_pinched(&k5);
        assert!(v.is_yes());
        let (h, m) = edge_apex_supergraph(&k5, v.certificate.as_ref().unwrap()).unwrap();
        assert!(verify_model(&h, &k5, &m));
        assert!(is_pinched(&Graph::complete(6)).is_no());
        assert!(is_pinched(&Graph::cycle(5)).is_yes());
    }

    #[test]
    fn edge_apex_examples() {
        assert!(is_edge_apex(&Graph::complete(5)).is_yes());
        assert!(is_edge_apex(&Graph::complete(4)).is_yes());
        let v = is_edge_apex(&Graph::complete(7));
        assert!(v.is_no());
        if let Some(Certificate::EveryEdge(ws)) = v.certificate {
            assert_eq!(ws.len(), 21);
        } else {
            panic!("missing certificate");
        }
    }

    #[test]
    fn neighborhood_counts() {
        let star = Graph::complete_bipartite(1, 3);
        assert_eq!(
            neighborhood_class_count(&star, &VertexSet::from([0]), &VertexSet::from([1, 2, 3])).unwrap(),
            1
        );
        let c4 = Graph::cycle(4);
        assert_eq!(
            neighborhood_class_count(&c4, &VertexSet::from([0, 2]), &VertexSet::from([1, 3])).unwrap(),
            1
        );
        let p3 = Graph::path(3);
        assert_eq!(
            neighborhood_class_count(&p3, &VertexSet::from([0, 2]), &VertexSet::from([1])).unwrap(),
            1
        );
        assert!(neighborhood_class_count(&p3, &VertexSet::from([1]), &VertexSet::from([0, 2])).is_ok());
        assert!(neighborhood_class_count(&p3, &VertexSet::from([0]), &VertexSet::from([1, 2])).is_err());
    }
}
