//! Planarity by path embedding (Demoucron, Malgrange, Pertuiset) on blocks,
//! with Kuratowski subgraphs extracted by greedy edge deletion.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::rotation::{rotation_from_faces, SignedRotation};
use crate::graph::{edge, Edge, Graph, Vertex, VertexSet};

/// Edge sets of the biconnected components (isolated vertices excluded).
pub fn blocks(g: &Graph) -> Vec<Vec<Edge>> {
    let (adj, ids) = g.dense();
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut estack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    estack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    estack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some((a, b)) = estack.pop() {
                            block.push(edge(ids[a], ids[b]));
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

/// Embeds a 2-connected graph given as dense adjacency. With `start`, the
/// walk is used as the first cycle and its outer side stays empty, so the
/// result draws everything inside that cycle. Returns facial walks.
pub(crate) fn dmp(adj: &[Vec<usize>], start: Option<&[usize]>) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    let mut on = vec![false; n];
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let cycle = match start {
        Some(c) => c.to_vec(),
        None => find_cycle(adj)?,
    };
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        on[a] = true;
        used.insert((a.min(b), a.max(b)));
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces: Vec<Vec<usize>> = vec![cycle, rev];
    let mut forbidden = vec![false, start.is_some()];
    loop {
        let frags = fragments(adj, &on, &used);
        if frags.is_empty() {
            return Some(faces);
        }
        let members: Vec<Vec<bool>> = faces
            .iter()
            .map(|f| {
                let mut m = vec![false; n];
                for &v in f {
                    m[v] = true;
                }
                m
            })
            .collect();
        let mut best: Option<(usize, usize, usize)> = None; // (count, frag, face)
        for (fi, fr) in frags.iter().enumerate() {
            let mut count = 0;
            let mut first = usize::MAX;
            for (k, m) in members.iter().enumerate() {
                if !forbidden[k] && fr.attachments.iter().all(|&a| m[a]) {
                    count += 1;
                    if first == usize::MAX {
                        first = k;
                    }
                }
            }
            if count == 0 {
                return None;
            }
            if best.is_none_or(|b| count < b.0) {
                best = Some((count, fi, first));
            }
            if count == 1 {
                break;
            }
        }
        let (_, fi, k) = best.expect("fragments exist");
        let path = frags[fi].path(adj, &on);
        for w in path.windows(2) {
            used.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            on[v] = true;
        }
        let (f1, f2) = split_face(&faces[k], &path);
        faces[k] = f1;
        faces.push(f2);
        forbidden.push(false);
    }
}

struct Fragment {
    attachments: Vec<usize>,
    /// Interior vertices; empty for a chord.
    interior: Vec<usize>,
}

impl Fragment {
    fn path(&self, adj: &[Vec<usize>], on: &[bool]) -> Vec<usize> {
        if self.interior.is_empty() {
            return self.attachments.clone();
        }
        let inside: BTreeSet<usize> = self.interior.iter().copied().collect();
        let a = self.attachments[0];
        let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for &w in &adj[a] {
            if inside.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, a);
                queue.push_back(w);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &w in &adj[x] {
                if on[w] && w != a {
                    let mut path = vec![w, x];
                    let mut cur = x;
                    while prev[&cur] != a {
                        cur = prev[&cur];
                        path.push(cur);
                    }
                    path.push(a);
                    path.reverse();
                    return path;
                }
                if inside.contains(&w) && !prev.contains_key(&w) {
                    prev.insert(w, x);
                    queue.push_back(w);
                }
            }
        }
        unreachable!("fragment of a 2-connected graph has two attachments")
    }
}

fn fragments(adj: &[Vec<usize>], on: &[bool], used: &BTreeSet<(usize, usize)>) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for u in 0..n {
        if !on[u] {
            continue;
        }
        for &v in &adj[u] {
            if u < v && on[v] && !used.contains(&(u, v)) {
                out.push(Fragment {
                    attachments: vec![u, v],
                    interior: Vec::new(),
                });
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if on[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut interior = vec![s];
        let mut att = BTreeSet::new();
        let mut i = 0;
        while i < interior.len() {
            let x = interior[i];
            i += 1;
            for &w in &adj[x] {
                if on[w] {
                    att.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    interior.push(w);
                }
            }
        }
        out.push(Fragment {
            attachments: att.into_iter().collect(),
            interior,
        });
    }
    out
}

/// Splits face `f` along `path` (endpoints on `f`, interior new).
fn split_face(f: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a = path[0];
    let b = *path.last().expect("path");
    let ia = f.iter().position(|&x| x == a).expect("a on face");
    let l = f.len();
    let rot: Vec<usize> = (0..l).map(|i| f[(ia + i) % l]).collect();
    let jb = rot.iter().position(|&x| x == b).expect("b on face");
    let inner = &path[1..path.len() - 1];
    let mut f1: Vec<usize> = rot[..=jb].to_vec();
    f1.extend(inner.iter().rev());
    let mut f2: Vec<usize> = rot[jb..].to_vec();
    f2.push(rot[0]);
    f2.extend(inner.iter());
    (f1, f2)
}

fn find_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = v;
                    stack.push(w);
                } else if w != parent[v] && depth[w] != usize::MAX && parent[w] != v {
                    // Non-tree edge: walk both ends up to their meeting point.
                    let (mut x, mut y) = (v, w);
                    let mut left = vec![x];
                    let mut right = vec![y];
                    while x != y {
                        if depth[x] >= depth[y] {
                            x = parent[x];
                            left.push(x);
                        } else {
                            y = parent[y];
                            right.push(y);
                        }
                    }
                    right.pop();
                    right.reverse();
                    left.extend(right);
                    if left.len() >= 3 && is_cycle(adj, &left) {
                        return Some(left);
                    }
                }
            }
        }
    }
    None
}

fn is_cycle(adj: &[Vec<usize>], c: &[usize]) -> bool {
    let set: BTreeSet<usize> = c.iter().copied().collect();
    set.len() == c.len() && (0..c.len()).all(|i| adj[c[i]].contains(&c[(i + 1) % c.len()]))
}

/// Planar embedding as a rotation system, if one exists.
pub fn planar_embedding(g: &Graph) -> Option<SignedRotation> {
    if g.n() >= 3 && g.m() > 3 * g.n() - 6 {
        return None;
    }
    let mut rotation: BTreeMap<Vertex, Vec<Vertex>> = g.vertices().map(|v| (v, Vec::new())).collect();
    for block in blocks(g) {
        if block.len() == 1 {
            let (u, v) = block[0];
            rotation.get_mut(&u).expect("vertex").push(v);
            rotation.get_mut(&v).expect("vertex").push(u);
            continue;
        }
        let mut b = Graph::new();
        for &(u, v) in &block {
            b.add_edge(u, v);
        }
        let (adj, ids) = b.dense();
        let faces = dmp(&adj, None)?;
        let faces: Vec<Vec<Vertex>> = faces.iter().map(|f| f.iter().map(|&i| ids[i]).collect()).collect();
        for (v, order) in rotation_from_faces(&faces) {
            rotation.get_mut(&v).expect("vertex").extend(order);
        }
    }
    Some(SignedRotation::orientable(rotation))
}

pub fn is_planar_graph(g: &Graph) -> bool {
    planar_embedding(g).is_some()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// Subdivision of K5 or K3,3: branch vertices and the internally disjoint
/// paths joining them (each listed from one branch vertex to another).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch: Vec<Vertex>,
    pub paths: Vec<Vec<Vertex>>,
}

impl KuratowskiWitness {
    pub fn subgraph(&self) -> Graph {
        let mut h = Graph::new();
        for &b in &self.branch {
            h.add_vertex(b);
        }
        for p in &self.paths {
            for w in p.windows(2) {
                h.add_edge(w[0], w[1]);
            }
        }
        h
    }

    pub fn verify(&self, g: &Graph) -> bool {
        let branch: BTreeSet<Vertex> = self.branch.iter().copied().collect();
        if branch.len() != self.branch.len() {
            return false;
        }
        let mut pairs = BTreeSet::new();
        let mut inner_seen = BTreeSet::new();
        for p in &self.paths {
            if p.len() < 2 {
                return false;
            }
            let (a, b) = (p[0], *p.last().expect("len"));
            if !branch.contains(&a) || !branch.contains(&b) || a == b || !pairs.insert(edge(a, b)) {
                return false;
            }
            for &x in &p[1..p.len() - 1] {
                if branch.contains(&x) || !inner_seen.insert(x) {
                    return false;
                }
            }
            if !p.windows(2).all(|w| g.has_edge(w[0], w[1])) {
                return false;
            }
        }
        match self.kind {
            KuratowskiKind::K5 => branch.len() == 5 && pairs.len() == 10,
            KuratowskiKind::K33 => {
                if branch.len() != 6 || pairs.len() != 9 {
                    return false;
                }
                let b = &self.branch;
                let side: BTreeSet<Vertex> = b[..3].iter().copied().collect();
                pairs.iter().all(|&(x, y)| side.contains(&x) != side.contains(&y))
            }
        }
    }
}

/// Shrinks a nonplanar graph to a Kuratowski subdivision.
pub fn kuratowski_subgraph(g: &Graph) -> Option<KuratowskiWitness> {
    if is_planar_graph(g) {
        return None;
    }
    let mut h = g.clone();
    // Drop planar blocks first: some block is already nonplanar.
    for block in blocks(g) {
        let mut b = Graph::new();
        for &(u, v) in &block {
            b.add_edge(u, v);
        }
        if !is_planar_graph(&b) {
            h = b;
            break;
        }
    }
    let edges: Vec<Edge> = h.edges().collect();
    for (u, v) in edges {
        h.remove_edge(u, v);
        if is_planar_graph(&h) {
            h.add_edge(u, v);
        }
    }
    let isolated: Vec<Vertex> = h.vertices().filter(|&v| h.degree(v) == 0).collect();
    for v in isolated {
        h.remove_vertex(v);
    }
    let branch: Vec<Vertex> = h.vertices().filter(|&v| h.degree(v) >= 3).collect();
    let branch_set: VertexSet = branch.iter().copied().collect();
    let mut paths = Vec::new();
    let mut done: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    for &b in &branch {
        for &n0 in h.neighbors(b) {
            if done.contains(&(b, n0)) {
                continue;
            }
            let mut path = vec![b, n0];
            let (mut prev, mut cur) = (b, n0);
            while !branch_set.contains(&cur) {
                let next = *h.neighbors(cur).iter().find(|&&w| w != prev).expect("degree two");
                path.push(next);
                (prev, cur) = (cur, next);
            }
            done.insert((cur, prev));
            done.insert((b, n0));
            paths.push(path);
        }
    }
    let kind = if branch.len() == 5 {
        KuratowskiKind::K5
    } else {
        KuratowskiKind::K33
    };
    let branch = match kind {
        KuratowskiKind::K5 => branch,
        KuratowskiKind::K33 => {
            let first = branch[0];
            let across: BTreeSet<Vertex> = paths
                .iter()
                .filter(|p| p[0] == first || *p.last().expect("len") == first)
                .map(|p| if p[0] == first { *p.last().expect("len") } else { p[0] })
                .collect();
            let mut side: Vec<Vertex> = branch.iter().copied().filter(|v| !across.contains(v)).collect();
            side.extend(across);
            side
        }
    };
    let w = KuratowskiWitness { kind, branch, paths };
    debug_assert!(w.verify(g));
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(is_planar_graph(&Graph::complete(4)));
        assert!(!is_planar_graph(&Graph::complete(5)));
        assert!(!is_planar_graph(&Graph::complete_bipartite(3, 3)));
        assert!(!is_planar_graph(&Graph::petersen()));
        assert!(is_planar_graph(&Graph::cycle(7)));
        assert!(is_planar_graph(&Graph::empty(3)));
        let k5e = Graph::complete(5).without_edge(0, 1);
        let emb = planar_embedding(&k5e).unwrap();
        assert_eq!(emb.euler_genus(&k5e), Some(0));
    }

    #[test]
    fn witnesses_verify() {
        for g in [
            Graph::complete(5),
            Graph::complete_bipartite(3, 3),
            Graph::petersen(),
            Graph::complete(7),
        ] {
            let w = kuratowski_subgraph(&g).unwrap();
            assert!(w.verify(&g), "{w:?}");
        }
    }

    #[test]
    fn blocks_of_bowtie() {
        let mut g = Graph::cycle(3);
        g.add_edge(2, 3);
        g.add_edge(3, 4);
        g.add_edge(4, 2);
        g.add_edge(4, 5);
        let b = blocks(&g);
        assert_eq!(b.len(), 3);
    }
}
