//! Projective-planarity by embedding extension.
//!
//! A nonplanar block contains a Kuratowski subdivision K; every embedding of
//! the block in the projective plane restricts to one of the (finitely many,
//! cellular) projective embeddings of K. For each such embedding the bridges
//! of K are distributed over faces by backtracking, each face being a disk
//! whose contents must embed inside its boundary cycle. Negative answers are
//! certified by minimizing to a minor-minimal non-projective graph and
//! matching it against the obstruction list.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use super::planar::{blocks, dmp, kuratowski_subgraph, planar_embedding, KuratowskiKind, KuratowskiWitness};
use super::rotation::SignedRotation;
use super::{Certificate, EmbedVerdict};
use crate::budget::{Budget, Meter, Search};
use crate::canon::{canonical_form, isomorphism};
use crate::graph::{edge, Edge, Graph, Vertex, VertexSet};
use crate::minors::{verify_model, MinorModel};
use crate::obstructions::projective_obstructions;
use crate::ops::bridges;

/// A labelled projective embedding of abstract K5 or K3,3.
struct AbstractEmbedding {
    rotation: BTreeMap<Vertex, Vec<Vertex>>,
    twisted: BTreeSet<Edge>,
}

fn abstract_graph(kind: KuratowskiKind) -> Graph {
    match kind {
        KuratowskiKind::K5 => Graph::complete(5),
        KuratowskiKind::K33 => Graph::complete_bipartite(3, 3),
    }
}

/// All projective embeddings (Euler genus 1) of the abstract graph, up to
/// equality of facial cycles. Tree edges of a fixed spanning tree are kept
/// untwisted, which loses no embedding up to local switching.
fn abstract_embeddings(kind: KuratowskiKind) -> &'static [AbstractEmbedding] {
    static K5: OnceLock<Vec<AbstractEmbedding>> = OnceLock::new();
    static K33: OnceLock<Vec<AbstractEmbedding>> = OnceLock::new();
    let cell = match kind {
        KuratowskiKind::K5 => &K5,
        KuratowskiKind::K33 => &K33,
    };
    cell.get_or_init(|| enumerate_embeddings(&abstract_graph(kind)))
}

fn enumerate_embeddings(g: &Graph) -> Vec<AbstractEmbedding> {
    let vs: Vec<Vertex> = g.vertices().collect();
    let per_vertex: Vec<Vec<Vec<Vertex>>> = vs
        .iter()
        .map(|&v| {
            let ns: Vec<Vertex> = g.neighbors(v).iter().copied().collect();
            cyclic_orders(&ns)
        })
        .collect();
    let tree: BTreeSet<Edge> = {
        let mut seen = VertexSet::from([vs[0]]);
        let mut t = BTreeSet::new();
        let mut stack = vec![vs[0]];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if seen.insert(w) {
                    t.insert(edge(u, w));
                    stack.push(w);
                }
            }
        }
        t
    };
    let free: Vec<Edge> = g.edges().filter(|e| !tree.contains(e)).collect();
    let mut out = Vec::new();
    let mut keys = BTreeSet::new();
    let mut idx = vec![0usize; vs.len()];
    loop {
        let rotation: BTreeMap<Vertex, Vec<Vertex>> = vs
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, per_vertex[i][idx[i]].clone()))
            .collect();
        for mask in 0u32..(1 << free.len()) {
            let twisted: BTreeSet<Edge> = free
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let sr = SignedRotation {
                rotation: rotation.clone(),
                twisted,
            };
            let faces = sr.faces();
            if faces.len() + 1 != g.m() - g.n() + 2 {
                continue;
            }
            let mut key: Vec<Vec<Vertex>> = faces
                .iter()
                .map(|f| canonical_cycle(&f.iter().map(|x| x.0).collect::<Vec<_>>()))
                .collect();
            key.sort();
            if keys.insert(key) {
                out.push(AbstractEmbedding {
                    rotation: sr.rotation,
                    twisted: sr.twisted,
                });
            }
        }
        // Odometer over rotation choices.
        let mut i = 0;
        loop {
            if i == vs.len() {
                return out;
            }
            idx[i] += 1;
            if idx[i] < per_vertex[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Cyclic orders of `ns` with the first element fixed.
fn cyclic_orders(ns: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let rest: Vec<Vertex> = ns[1..].to_vec();
    permute(&rest, &mut Vec::new(), &mut vec![false; rest.len()], &mut |p| {
        let mut o = vec![ns[0]];
        o.extend_from_slice(p);
        out.push(o);
    });
    out
}

fn permute(items: &[Vertex], cur: &mut Vec<Vertex>, used: &mut Vec<bool>, f: &mut impl FnMut(&[Vertex])) {
    if cur.len() == items.len() {
        f(cur);
        return;
    }
    for i in 0..items.len() {
        if !used[i] {
            used[i] = true;
            cur.push(items[i]);
            permute(items, cur, used, f);
            cur.pop();
            used[i] = false;
        }
    }
}

/// Cycle read from its least vertex in the lexicographically smaller direction.
fn canonical_cycle(c: &[Vertex]) -> Vec<Vertex> {
    let l = c.len();
    let (i, _) = c.iter().enumerate().min_by_key(|x| x.1).expect("nonempty");
    let fwd: Vec<Vertex> = (0..l).map(|k| c[(i + k) % l]).collect();
    let bwd: Vec<Vertex> = (0..l).map(|k| c[(i + l - k) % l]).collect();
    fwd.min(bwd)
}

/// Signed rotation of the subdivision `K` induced by an abstract embedding.
fn expand(w: &KuratowskiWitness, emb: &AbstractEmbedding) -> SignedRotation {
    let index: BTreeMap<Vertex, Vertex> = w.branch.iter().enumerate().map(|(i, &b)| (b, i as Vertex)).collect();
    // path between abstract vertices i < j, oriented from i to j
    let mut path_of: BTreeMap<Edge, Vec<Vertex>> = BTreeMap::new();
    for p in &w.paths {
        let (a, b) = (index[&p[0]], index[p.last().expect("path")]);
        let mut p = p.clone();
        if a > b {
            p.reverse();
        }
        path_of.insert(edge(a, b), p);
    }
    let mut rotation = BTreeMap::new();
    let mut twisted = BTreeSet::new();
    for (&i, order) in &emb.rotation {
        let b = w.branch[i as usize];
        let r = order
            .iter()
            .map(|&j| {
                let p = &path_of[&edge(i, j)];
                if i < j {
                    p[1]
                } else {
                    p[p.len() - 2]
                }
            })
            .collect();
        rotation.insert(b, r);
    }
    for (&(i, j), p) in &path_of {
        for k in 1..p.len() - 1 {
            rotation.insert(p[k], vec![p[k - 1], p[k + 1]]);
        }
        if emb.twisted.contains(&(i, j)) {
            twisted.insert(edge(p[0], p[1]));
        }
    }
    SignedRotation { rotation, twisted }
}

/// One face of the embedded subdivision: its cycle and arrival signs.
struct Face {
    cycle: Vec<Vertex>,
    signs: Vec<i8>,
    members: VertexSet,
}

struct BlockSearch<'a> {
    block: &'a Graph,
    faces: Vec<Face>,
    bridges: Vec<crate::ops::Bridge>,
    candidates: Vec<Vec<usize>>,
    assigned: Vec<Vec<usize>>,
    choice: Vec<usize>,
    meter: &'a Meter,
}

impl BlockSearch<'_> {
    fn piece(&self, f: usize) -> (Graph, Vec<Vertex>) {
        let face = &self.faces[f];
        let mut h = Graph::new();
        let l = face.cycle.len();
        for i in 0..l {
            h.add_edge(face.cycle[i], face.cycle[(i + 1) % l]);
        }
        for &b in &self.assigned[f] {
            for &(u, v) in &self.bridges[b].edges {
                h.add_edge(u, v);
            }
        }
        (h, face.cycle.clone())
    }

    fn piece_faces(&self, f: usize) -> Option<Vec<Vec<Vertex>>> {
        let (h, cycle) = self.piece(f);
        let (adj, ids) = h.dense();
        let pos: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let start: Vec<usize> = cycle.iter().map(|v| pos[v]).collect();
        let faces = dmp(&adj, Some(&start))?;
        Some(
            faces
                .into_iter()
                .map(|f| f.into_iter().map(|i| ids[i]).collect())
                .collect(),
        )
    }

    /// Backtracking over bridges in candidate-count order. `None` = budget out.
    fn assign(&mut self, k: usize) -> Option<bool> {
        if !self.meter.tick() {
            return None;
        }
        if k == self.bridges.len() {
            return Some(true);
        }
        let b = self.choice[k];
        for fi in 0..self.candidates[b].len() {
            let f = self.candidates[b][fi];
            self.assigned[f].push(b);
            if self.piece_faces(f).is_some() {
                match self.assign(k + 1) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            self.assigned[f].pop();
        }
        Some(false)
    }
}

/// Result of testing one block.
enum BlockResult {
    Embedded(SignedRotation),
    NotProjective,
    OutOfBudget,
}

fn embed_block(block: &Graph, meter: &Meter) -> BlockResult {
    let Some(w) = kuratowski_subgraph(block) else {
        return match planar_embedding(block) {
            Some(r) => BlockResult::Embedded(r),
            None => BlockResult::NotProjective,
        };
    };
    let k = w.subgraph();
    let bridges = match bridges(block, &k) {
        Ok(b) => b,
        Err(_) => return BlockResult::NotProjective,
    };
    for emb in abstract_embeddings(w.kind) {
        if !meter.tick() {
            return BlockResult::OutOfBudget;
        }
        let kr = expand(&w, emb);
        let faces: Vec<Face> = kr
            .faces()
            .into_iter()
            .map(|f| Face {
                cycle: f.iter().map(|x| x.0).collect(),
                signs: f.iter().map(|x| x.1).collect(),
                members: f.iter().map(|x| x.0).collect(),
            })
            .collect();
        if faces.iter().any(|f| f.members.len() != f.cycle.len()) {
            continue;
        }
        let candidates: Vec<Vec<usize>> = bridges
            .iter()
            .map(|b| {
                (0..faces.len())
                    .filter(|&f| b.attachments.is_subset(&faces[f].members))
                    .collect()
            })
            .collect();
        if candidates.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut choice: Vec<usize> = (0..bridges.len()).collect();
        choice.sort_by_key(|&b| (candidates[b].len(), std::cmp::Reverse(bridges[b].edges.len())));
        let mut search = BlockSearch {
            block,
            assigned: vec![Vec::new(); faces.len()],
            faces,
            bridges: bridges.clone(),
            candidates,
            choice,
            meter,
        };
        match search.assign(0) {
            None => return BlockResult::OutOfBudget,
            Some(false) => continue,
            Some(true) => {
                return match assemble(&search, &kr) {
                    Some(r) => BlockResult::Embedded(r),
                    None => BlockResult::OutOfBudget,
                }
            }
        }
    }
    BlockResult::NotProjective
}

/// Merges the disk embeddings of all faces into the embedding of K.
fn assemble(s: &BlockSearch<'_>, kr: &SignedRotation) -> Option<SignedRotation> {
    // slot[v][x]: neighbours inserted right after x in the rotation at v.
    let mut slots: BTreeMap<Vertex, BTreeMap<Vertex, Vec<Vertex>>> = BTreeMap::new();
    let mut rotation: BTreeMap<Vertex, Vec<Vertex>> = kr.rotation.clone();
    let mut twisted = kr.twisted.clone();
    for (f, face) in s.faces.iter().enumerate() {
        if s.assigned[f].is_empty() {
            continue;
        }
        let pf = s.piece_faces(f)?;
        let prot = super::rotation::rotation_from_faces(&pf);
        let l = face.cycle.len();
        let pos: BTreeMap<Vertex, usize> = face.cycle.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        for (i, &v) in face.cycle.iter().enumerate() {
            let prev = face.cycle[(i + l - 1) % l];
            let next = face.cycle[(i + 1) % l];
            let r = &prot[&v];
            let a = r.iter().position(|&x| x == prev)?;
            let rr: Vec<Vertex> = (0..r.len()).map(|k| r[(a + k) % r.len()]).collect();
            if *rr.last()? != next {
                return None;
            }
            let inner: Vec<Vertex> = rr[1..rr.len() - 1].to_vec();
            let s_i = face.signs[i];
            for &x in &inner {
                let sign = match pos.get(&x) {
                    Some(&j) => s_i * face.signs[j],
                    None => s_i,
                };
                if sign < 0 {
                    twisted.insert(edge(v, x));
                }
            }
            if s_i > 0 {
                slots.entry(v).or_default().insert(prev, inner);
            } else {
                let mut rev = inner;
                rev.reverse();
                slots.entry(v).or_default().insert(next, rev);
            }
        }
        for (&v, r) in &prot {
            if !pos.contains_key(&v) {
                rotation.insert(v, r.clone());
            }
        }
    }
    for (v, sl) in slots {
        let base = rotation[&v].clone();
        let mut out = Vec::new();
        for x in base {
            out.push(x);
            if let Some(ins) = sl.get(&x) {
                out.extend(ins.iter().copied());
            }
        }
        rotation.insert(v, out);
    }
    let r = SignedRotation { rotation, twisted };
    (r.euler_genus(s.block) == Some(1)).then_some(r)
}

/// Embedding of Euler genus at most 1, if one exists (unbounded search).
pub fn projective_embedding(g: &Graph) -> Option<SignedRotation> {
    match embed_with(g, &Budget::unlimited().meter()) {
        BlockResult::Embedded(r) => Some(r),
        _ => None,
    }
}

fn embed_with(g: &Graph, meter: &Meter) -> BlockResult {
    if let Some(r) = planar_embedding(g) {
        return BlockResult::Embedded(r);
    }
    let mut bad: Option<Graph> = None;
    for block in blocks(g) {
        let mut b = Graph::new();
        for &(u, v) in &block {
            b.add_edge(u, v);
        }
        if planar_embedding(&b).is_none() {
            if bad.is_some() {
                return BlockResult::NotProjective;
            }
            bad = Some(b);
        }
    }
    let b = bad.expect("a nonplanar graph has a nonplanar block");
    let rb = match embed_block(&b, meter) {
        BlockResult::Embedded(r) => r,
        other => return other,
    };
    let mut rest = g.clone();
    for (u, v) in b.edges() {
        rest.remove_edge(u, v);
    }
    let Some(rp) = planar_embedding(&rest) else {
        return BlockResult::NotProjective;
    };
    let mut rotation = rp.rotation;
    for (v, r) in rb.rotation {
        let mut merged = r;
        merged.extend(rotation.remove(&v).unwrap_or_default());
        rotation.insert(v, merged);
    }
    let sr = SignedRotation {
        rotation,
        twisted: rb.twisted,
    };
    match sr.euler_genus(g) {
        Some(1) => BlockResult::Embedded(sr),
        _ => BlockResult::OutOfBudget,
    }
}

/// Projective-plane membership. Yes carries an embedding of Euler genus at
/// most 1; no carries a verified model of a listed obstruction.
pub fn is_projective(g: &Graph, budget: &Budget) -> EmbedVerdict {
    let meter = budget.meter();
    match embed_with(g, &meter) {
        BlockResult::Embedded(r) => EmbedVerdict::yes(Certificate::Embedding(r)),
        BlockResult::OutOfBudget => EmbedVerdict::unknown(),
        BlockResult::NotProjective => match obstruction_model(g, &meter) {
            Some((index, model)) => EmbedVerdict::no(Certificate::Obstruction { index, model }),
            None => EmbedVerdict::unknown(),
        },
    }
}

/// Decides projectivity without certificates; `None` when the budget runs out.
pub(crate) fn projective_decision(g: &Graph, meter: &Meter) -> Option<bool> {
    match embed_with(g, meter) {
        BlockResult::Embedded(_) => Some(true),
        BlockResult::NotProjective => Some(false),
        BlockResult::OutOfBudget => None,
    }
}

/// Graph with a branchset for every vertex, tracked through minor operations.
#[derive(Clone)]
struct Tracked {
    h: Graph,
    branch: BTreeMap<Vertex, VertexSet>,
}

impl Tracked {
    fn delete_edge(&self, u: Vertex, v: Vertex) -> Tracked {
        let mut t = self.clone();
        t.h.remove_edge(u, v);
        t.cleanup();
        t
    }

    fn contract(&self, u: Vertex, v: Vertex) -> Tracked {
        let mut t = self.clone();
        t.merge(u, v);
        t.cleanup();
        t
    }

    fn merge(&mut self, u: Vertex, v: Vertex) {
        let keep = self.h.contract(u, v);
        let gone = if keep == u { v } else { u };
        let moved = self.branch.remove(&gone).unwrap_or_default();
        self.branch.get_mut(&keep).expect("tracked").extend(moved);
    }

    /// Drops vertices of degree at most 1 and suppresses degree-2 vertices
    /// with non-adjacent neighbours; neither changes embeddability.
    fn cleanup(&mut self) {
        loop {
            let mut changed = false;
            let vs: Vec<Vertex> = self.h.vertices().collect();
            for v in vs {
                if !self.h.contains(v) {
                    continue;
                }
                match self.h.degree(v) {
                    0 | 1 => {
                        self.h.remove_vertex(v);
                        self.branch.remove(&v);
                        changed = true;
                    }
                    2 => {
                        let ns: Vec<Vertex> = self.h.neighbors(v).iter().copied().collect();
                        if !self.h.has_edge(ns[0], ns[1]) {
                            self.merge(v, ns[0]);
                            changed = true;
                        }
                    }
                    _ => {}
                }
            }
            if !changed {
                return;
            }
        }
    }
}

/// Minor-minimal non-projective minor of `g` with its model.
pub(crate) fn minimal_nonprojective(g: &Graph, meter: &Meter) -> Option<(Graph, MinorModel)> {
    let mut t = Tracked {
        h: g.clone(),
        branch: g.vertices().map(|v| (v, VertexSet::from([v]))).collect(),
    };
    t.cleanup();
    if projective_decision(&t.h, meter)? {
        return None;
    }
    loop {
        let mut changed = false;
        let edges: Vec<Edge> = t.h.edges().collect();
        for (u, v) in edges {
            if !t.h.has_edge(u, v) {
                continue;
            }
            let d = t.delete_edge(u, v);
            if !projective_decision(&d.h, meter)? {
                t = d;
                changed = true;
            }
        }
        let edges: Vec<Edge> = t.h.edges().collect();
        for (u, v) in edges {
            if !t.h.has_edge(u, v) {
                continue;
            }
            let c = t.contract(u, v);
            if !projective_decision(&c.h, meter)? {
                t = c;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let model = MinorModel::new(t.branch.clone());
    Some((t.h, model))
}

/// Minor-minimal non-projective minor of `g` with its model; absent when
/// `g` is projective.
pub fn minimal_nonprojective_minor(g: &Graph, budget: &Budget) -> Search<(Graph, MinorModel)> {
    let meter = budget.meter();
    match projective_decision(g, &meter) {
        None => return Search::Unknown,
        Some(true) => return Search::Absent,
        Some(false) => {}
    }
    match minimal_nonprojective(g, &meter) {
        Some(r) => Search::Found(r),
        None => Search::Unknown,
    }
}

/// Every one-step minor (edge deletion, edge contraction, isolated-vertex
/// deletion) of `g` is projective while `g` is not.
pub fn is_minimal_nonprojective(g: &Graph) -> bool {
    let meter = Budget::unlimited().meter();
    let decide = |h: &Graph| projective_decision(h, &meter).expect("unbounded");
    if decide(g) {
        return false;
    }
    if g.vertices().any(|v| g.degree(v) == 0) {
        return false;
    }
    g.edges().all(|(u, v)| {
        let mut c = g.clone();
        c.contract(u, v);
        decide(&g.without_edge(u, v)) && decide(&c)
    })
}

fn obstruction_model(g: &Graph, meter: &Meter) -> Option<(usize, MinorModel)> {
    let (h, model) = minimal_nonprojective(g, meter)?;
    let form = canonical_form(&h);
    let list = projective_obstructions();
    let index = list.iter().position(|o| o.form == form)?;
    let obs = &list[index].graph;
    let iso = isomorphism(obs, &h)?;
    let inner = MinorModel::new(iso.iter().map(|(&x, &y)| (x, VertexSet::from([y]))).collect());
    let composed = model.compose(&inner);
    verify_model(g, obs, &composed).then_some((index, composed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abstract_embedding_faces_are_cycles() {
        for kind in [KuratowskiKind::K5, KuratowskiKind::K33] {
            let g = abstract_graph(kind);
            let embs = abstract_embeddings(kind);
            assert!(!embs.is_empty());
            for e in embs {
                let sr = SignedRotation {
                    rotation: e.rotation.clone(),
                    twisted: e.twisted.clone(),
                };
                assert_eq!(sr.euler_genus(&g), Some(1));
                for f in sr.faces() {
                    let set: VertexSet = f.iter().map(|x| x.0).collect();
                    assert_eq!(set.len(), f.len(), "{kind:?} face {f:?}");
                }
            }
        }
    }

    #[test]
    fn small_projective_cases() {
        assert!(projective_embedding(&Graph::complete(6)).is_some());
        assert!(projective_embedding(&Graph::complete(5)).is_some());
        assert!(projective_embedding(&Graph::petersen()).is_some());
        assert!(projective_embedding(&Graph::complete(7)).is_none());
        let k5 = Graph::complete(5);
        assert!(projective_embedding(&k5.disjoint_union(&k5)).is_none());
        assert!(projective_embedding(&Graph::complete_bipartite(3, 4)).is_some());
        assert!(projective_embedding(&Graph::complete_bipartite(3, 5)).is_none());
        assert!(projective_embedding(&Graph::complete_bipartite(4, 4)).is_none());
    }
}
