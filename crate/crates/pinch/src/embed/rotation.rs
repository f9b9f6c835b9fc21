//! Signed rotation systems and face tracing.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::graph::{edge, Edge, Graph, Vertex};

/// Embedding of a graph in a surface: a cyclic order of neighbours at each
/// vertex plus the set of edges with signature -1. All-positive systems are
/// orientable.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedRotation {
    pub rotation: BTreeMap<Vertex, Vec<Vertex>>,
    pub twisted: BTreeSet<Edge>,
}

impl SignedRotation {
    pub fn orientable(rotation: BTreeMap<Vertex, Vec<Vertex>>) -> Self {
        SignedRotation {
            rotation,
            twisted: BTreeSet::new(),
        }
    }

    pub fn sign(&self, u: Vertex, v: Vertex) -> i8 {
        if self.twisted.contains(&edge(u, v)) {
            -1
        } else {
            1
        }
    }

    /// Whether the rotation at every vertex is a cyclic order of exactly its
    /// neighbours and every twisted edge exists.
    pub fn matches(&self, g: &Graph) -> bool {
        if self.rotation.len() != g.n() {
            return false;
        }
        for v in g.vertices() {
            let Some(r) = self.rotation.get(&v) else {
                return false;
            };
            let set: BTreeSet<Vertex> = r.iter().copied().collect();
            if set.len() != r.len() || &set != g.neighbors(v) {
                return false;
            }
        }
        self.twisted.iter().all(|&(u, v)| g.has_edge(u, v))
    }

    /// Facial walks, one per face, each as the vertex sequence with the
    /// local orientation sign on arrival at each vertex.
    pub fn faces(&self) -> Vec<Vec<(Vertex, i8)>> {
        let pos: HashMap<(Vertex, Vertex), usize> = self
            .rotation
            .iter()
            .flat_map(|(&v, r)| r.iter().enumerate().map(move |(i, &u)| ((v, u), i)))
            .collect();
        let step = |u: Vertex, v: Vertex, s: i8| -> (Vertex, Vertex, i8) {
            let s2 = s * self.sign(u, v);
            let r = &self.rotation[&v];
            let i = pos[&(v, u)];
            let w = if s2 > 0 {
                r[(i + 1) % r.len()]
            } else {
                r[(i + r.len() - 1) % r.len()]
            };
            (v, w, s2)
        };
        let mut seen: BTreeSet<(Vertex, Vertex, i8)> = BTreeSet::new();
        let mut out = Vec::new();
        for (&u, r) in &self.rotation {
            for &v in r {
                for s in [1i8, -1] {
                    if seen.contains(&(u, v, s)) {
                        continue;
                    }
                    let mut walk = Vec::new();
                    let mut state = (u, v, s);
                    while seen.insert(state) {
                        let next = step(state.0, state.1, state.2);
                        walk.push((state.1, next.2));
                        state = next;
                    }
                    // Mark the reverse orbit so each face is reported once.
                    let mut rev = {
                        let (a, b, sa) = state;
                        let sb = sa * self.sign(a, b);
                        (b, a, -sb)
                    };
                    while seen.insert(rev) {
                        rev = step(rev.0, rev.1, rev.2);
                    }
                    out.push(walk);
                }
            }
        }
        out
    }

    /// Euler genus `2c - V + E - F`, or `None` if the system does not match `g`.
    pub fn euler_genus(&self, g: &Graph) -> Option<usize> {
        if !self.matches(g) {
            return None;
        }
        let c = g.components().len() as i64;
        let isolated = g.vertices().filter(|&v| g.degree(v) == 0).count() as i64;
        let f = self.faces().len() as i64 + isolated;
        let eg = 2 * c - g.n() as i64 + g.m() as i64 - f;
        (eg >= 0).then_some(eg as usize)
    }
}

/// Builds a rotation from consistently oriented facial walks: `succ_v(u) = w`
/// for every consecutive `u, v, w` on a face.
pub fn rotation_from_faces(faces: &[Vec<Vertex>]) -> BTreeMap<Vertex, Vec<Vertex>> {
    let mut succ: BTreeMap<Vertex, BTreeMap<Vertex, Vertex>> = BTreeMap::new();
    for f in faces {
        let l = f.len();
        for i in 0..l {
            let (u, v, w) = (f[(i + l - 1) % l], f[i], f[(i + 1) % l]);
            succ.entry(v).or_default().insert(u, w);
        }
    }
    succ.into_iter()
        .map(|(v, s)| {
            let start = *s.keys().next().expect("nonempty");
            let mut order = vec![start];
            let mut cur = s[&start];
            while cur != start {
                order.push(cur);
                cur = s[&cur];
            }
            (v, order)
        })
        .collect()
}
