//! Societies: segments, crosses, ruralness, transactions and their types,
//! depth, monotone extraction, and linear decompositions.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter, Search};
use crate::embed::{kuratowski_subgraph, planar_embedding, Certificate, EmbedVerdict};
use crate::error::{invalid, Result};
use crate::generators::{grid_zoo, ZooFamily};
use crate::graph::{Graph, Vertex, VertexSet};

/// A graph with a cyclic order `omega` on some of its vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Society {
    pub graph: Graph,
    pub omega: Vec<Vertex>,
}

impl Society {
    pub fn new(graph: Graph, omega: Vec<Vertex>) -> Result<Self> {
        let set: VertexSet = omega.iter().copied().collect();
        if set.len() != omega.len() {
            return invalid("omega repeats a vertex");
        }
        if let Some(v) = omega.iter().find(|v| !graph.contains(**v)) {
            return invalid(format!("omega vertex {v} is not in the graph"));
        }
        Ok(Society { graph, omega })
    }

    pub fn omega_set(&self) -> VertexSet {
        self.omega.iter().copied().collect()
    }

    fn positions(&self) -> BTreeMap<Vertex, usize> {
        self.omega.iter().enumerate().map(|(i, &v)| (v, i)).collect()
    }

    /// The segment from `s` forward to `t`; all of omega when `t` precedes `s`.
    pub fn segment(&self, s: Vertex, t: Vertex) -> Result<Vec<Vertex>> {
        let pos = self.positions();
        let (Some(&i), Some(&j)) = (pos.get(&s), pos.get(&t)) else {
            return invalid("segment ends must lie on omega");
        };
        let n = self.omega.len();
        let len = if (i + n - 1) % n == j { n } else { (j + n - i) % n + 1 };
        Ok((0..len).map(|d| self.omega[(i + d) % n]).collect())
    }

    pub fn reversed(&self) -> Society {
        let mut omega = self.omega.clone();
        omega.reverse();
        Society {
            graph: self.graph.clone(),
            omega,
        }
    }
}

/// Whether `s` is a cyclic interval of omega.
pub fn is_segment(soc: &Society, s: &VertexSet) -> Result<bool> {
    if !s.is_subset(&soc.omega_set()) {
        return invalid("S must be a subset of V(omega)");
    }
    // A cyclic interval has at most one boundary where membership switches on.
    let n = soc.omega.len();
    let starts = (0..n)
        .filter(|&i| s.contains(&soc.omega[i]) && !s.contains(&soc.omega[(i + n - 1) % n]))
        .count();
    Ok(starts <= 1)
}

/// Cyclic interleaving of two position pairs.
fn interleaved(a: (usize, usize), b: (usize, usize)) -> bool {
    let inside = |x: usize, (lo, hi): (usize, usize)| {
        let (lo, hi) = (lo.min(hi), lo.max(hi));
        lo < x && x < hi
    };
    let distinct = a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1;
    distinct && inside(b.0, a) != inside(b.1, a)
}

/// Two disjoint omega-paths with interleaved ends, or `None` after checking
/// every interleaved 4-tuple of boundary vertices.
pub fn find_cross(soc: &Society) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    let n = soc.omega.len();
    if n < 4 {
        return None;
    }
    let boundary = soc.omega_set();
    for (i, j) in (0..n).tuple_combinations() {
        for k in i + 1..j {
            for l in (j + 1..n).chain(0..i) {
                if l > i && l < j {
                    continue;
                }
                let (s1, t1, s2, t2) = (soc.omega[i], soc.omega[j], soc.omega[k], soc.omega[l]);
                if let Some(c) = two_disjoint_paths(&soc.graph, &boundary, (s1, t1), (s2, t2)) {
                    return Some(c);
                }
            }
        }
    }
    None
}

/// Disjoint `s1-t1` and `s2-t2` paths whose interiors avoid `boundary`.
fn two_disjoint_paths(
    g: &Graph,
    boundary: &VertexSet,
    (s1, t1): (Vertex, Vertex),
    (s2, t2): (Vertex, Vertex),
) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    let mut found = None;
    let mut path = vec![s1];
    let mut on_path = VertexSet::from([s1]);
    fn dfs(
        g: &Graph,
        boundary: &VertexSet,
        t1: Vertex,
        other: (Vertex, Vertex),
        path: &mut Vec<Vertex>,
        on_path: &mut VertexSet,
        found: &mut Option<(Vec<Vertex>, Vec<Vertex>)>,
    ) {
        let v = *path.last().expect("nonempty");
        for &w in g.neighbors(v) {
            if found.is_some() {
                return;
            }
            if w == t1 {
                path.push(w);
                let mut blocked: VertexSet = boundary
                    .iter()
                    .copied()
                    .filter(|&x| x != other.0 && x != other.1)
                    .collect();
                blocked.extend(path.iter().copied());
                if let Some(q) = g.shortest_path(other.0, &VertexSet::from([other.1]), &blocked) {
                    *found = Some((path.clone(), q));
                }
                path.pop();
                continue;
            }
            if boundary.contains(&w) || on_path.contains(&w) {
                continue;
            }
            path.push(w);
            on_path.insert(w);
            dfs(g, boundary, t1, other, path, on_path, found);
            on_path.remove(&w);
            path.pop();
        }
    }
    dfs(g, boundary, t1, (s2, t2), &mut path, &mut on_path, &mut found);
    found
}

/// Replaces every boundary-free piece attached at most three vertices by a
/// clique on its attachments. Crosses are preserved in both directions.
pub fn reduce_society(soc: &Society) -> Graph {
    let boundary = soc.omega_set();
    let mut g = soc.graph.clone();
    'outer: loop {
        let vs: Vec<Vertex> = g.vertices().collect();
        for size in 0..=3.min(vs.len()) {
            for s in vs.iter().copied().combinations(size) {
                let sset: VertexSet = s.into_iter().collect();
                for c in g.components_without(&sset) {
                    if !c.is_disjoint(&boundary) {
                        continue;
                    }
                    let attach = g.neighborhood(&c);
                    for &v in &c {
                        g.remove_vertex(v);
                    }
                    for (a, b) in attach.iter().copied().tuple_combinations() {
                        g.add_edge(a, b);
                    }
                    continue 'outer;
                }
            }
        }
        return g;
    }
}

/// Ruralness: after [`reduce_society`], the graph plus a cycle through
/// omega in order plus an apex joined to omega must be planar. Yes carries
/// that embedding; no carries a cross (or a Kuratowski subgraph of the
/// augmented graph if no cross is found).
pub fn is_rural(soc: &Society) -> EmbedVerdict {
    let mut aug = reduce_society(soc);
    let n = soc.omega.len();
    for v in &soc.omega {
        aug.add_vertex(*v);
    }
    if n >= 3 {
        for i in 0..n {
            aug.add_edge(soc.omega[i], soc.omega[(i + 1) % n]);
        }
    } else if n == 2 {
        aug.add_edge(soc.omega[0], soc.omega[1]);
    }
    let apex = aug.fresh_vertex().max(soc.graph.fresh_vertex());
    aug.add_vertex(apex);
    for v in &soc.omega {
        aug.add_edge(apex, *v);
    }
    if let Some(r) = planar_embedding(&aug) {
        return EmbedVerdict::yes(Certificate::Embedding(r));
    }
    match find_cross(soc) {
        Some((p, q)) => EmbedVerdict::no(Certificate::Cross(p, q)),
        None => EmbedVerdict::no(Certificate::Kuratowski(
            kuratowski_subgraph(&aug).expect("augmented graph is nonplanar"),
        )),
    }
}

/// Vertex-disjoint A-B paths between disjoint segments, oriented from A.
/// Paths are sorted so their A-ends follow omega inside A.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transaction {
    pub paths: Vec<Vec<Vertex>>,
    pub seg_a: Vec<Vertex>,
    pub seg_b: Vec<Vertex>,
}

impl Transaction {
    /// Validates against `soc` and orders the paths by their A-ends.
    pub fn new(soc: &Society, mut paths: Vec<Vec<Vertex>>, seg_a: Vec<Vertex>, seg_b: Vec<Vertex>) -> Result<Self> {
        let a: VertexSet = seg_a.iter().copied().collect();
        let b: VertexSet = seg_b.iter().copied().collect();
        if a.is_empty() || b.is_empty() || !a.is_disjoint(&b) {
            return invalid("segments must be nonempty and disjoint");
        }
        if !is_segment(soc, &a)? || !is_segment(soc, &b)? {
            return invalid("A and B must be segments of omega");
        }
        // Order each segment along omega from its first vertex.
        let seg_a = ordered_segment(soc, &a);
        let seg_b = ordered_segment(soc, &b);
        let mut used = VertexSet::new();
        for p in &mut paths {
            if p.is_empty() {
                return invalid("empty path");
            }
            if b.contains(&p[0]) {
                p.reverse();
            }
            let (first, last) = (p[0], *p.last().expect("nonempty"));
            if !a.contains(&first) || !b.contains(&last) {
                return invalid("every path must join A to B");
            }
            if p.len() < 2 {
                return invalid("A and B are disjoint, so paths have an edge");
            }
            for w in p.windows(2) {
                if !soc.graph.has_edge(w[0], w[1]) {
                    return invalid(format!("{}-{} is not an edge", w[0], w[1]));
                }
            }
            for &v in &p[1..p.len() - 1] {
                if a.contains(&v) || b.contains(&v) {
                    return invalid("paths must be internally disjoint from A and B");
                }
            }
            for &v in p.iter() {
                if !used.insert(v) {
                    return invalid(format!("vertex {v} is used twice"));
                }
            }
        }
        let apos: BTreeMap<Vertex, usize> = seg_a.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        paths.sort_by_key(|p| apos[&p[0]]);
        Ok(Transaction { paths, seg_a, seg_b })
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// `pi[i]` is the rank of path `i`'s B-end inside B.
    pub fn b_ranks(&self) -> Vec<usize> {
        let bpos: BTreeMap<Vertex, usize> = self.seg_b.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let raw: Vec<usize> = self.paths.iter().map(|p| bpos[p.last().expect("nonempty")]).collect();
        let mut sorted = raw.clone();
        sorted.sort_unstable();
        raw.iter().map(|x| sorted.binary_search(x).expect("present")).collect()
    }

    pub fn subset(&self, keep: &[usize]) -> Transaction {
        Transaction {
            paths: keep.iter().map(|&i| self.paths[i].clone()).collect(),
            seg_a: self.seg_a.clone(),
            seg_b: self.seg_b.clone(),
        }
    }

    /// The transaction realizing `pi` on a bare society: omega is
    /// `0..2t`, path `i` is the single edge from `i` to `t + pi[i]`.
    pub fn from_ranks(pi: &[usize]) -> Result<(Society, Transaction)> {
        let t = pi.len();
        let mut sorted = pi.to_vec();
        sorted.sort_unstable();
        if sorted != (0..t).collect::<Vec<_>>() {
            return invalid("ranks must be a permutation of 0..t");
        }
        let mut g = Graph::empty(2 * t);
        let paths: Vec<Vec<Vertex>> = pi
            .iter()
            .enumerate()
            .map(|(i, &r)| vec![i as Vertex, (t + r) as Vertex])
            .collect();
        for p in &paths {
            g.add_edge(p[0], p[1]);
        }
        let soc = Society::new(g, (0..2 * t as Vertex).collect())?;
        let tr = Transaction::new(
            &soc,
            paths,
            (0..t as Vertex).collect(),
            (t as Vertex..2 * t as Vertex).collect(),
        )?;
        Ok((soc, tr))
    }
}

fn ordered_segment(soc: &Society, s: &VertexSet) -> Vec<Vertex> {
    let n = soc.omega.len();
    if s.len() == n {
        return soc.omega.clone();
    }
    let start = (0..n)
        .find(|&i| s.contains(&soc.omega[i]) && !s.contains(&soc.omega[(i + n - 1) % n]))
        .expect("a proper segment has a first vertex");
    (0..s.len()).map(|d| soc.omega[(start + d) % n]).collect()
}

/// Transaction types. Labels are not mutually exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransactionType {
    Planar,
    Crosscap,
    Crooked,
    LongJump(usize),
    NestedCrosses(usize),
    TwistedCrosses(usize),
    DoubleJump(usize, usize),
    AltDoubleJump(usize, usize),
    Klein(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub labels: BTreeSet<TransactionType>,
    /// `crossing[i][j]`: paths `i` and `j` (in A-order) cross.
    pub crossing: Vec<Vec<bool>>,
}

/// Endpoint layout of a transaction: omega positions of each path's ends.
struct Layout {
    n: usize,
    ends: Vec<(usize, usize)>,
    cross: Vec<Vec<bool>>,
}

impl Layout {
    fn new(soc: &Society, t: &Transaction) -> Self {
        let pos = soc.positions();
        let ends: Vec<(usize, usize)> = t
            .paths
            .iter()
            .map(|p| (pos[&p[0]], pos[p.last().expect("nonempty")]))
            .collect();
        let cross = (0..ends.len())
            .map(|i| {
                (0..ends.len())
                    .map(|j| i != j && interleaved(ends[i], ends[j]))
                    .collect()
            })
            .collect();
        Layout {
            n: soc.omega.len(),
            ends,
            cross,
        }
    }

    fn planar(&self, s: &[usize]) -> bool {
        s.iter().tuple_combinations().all(|(&i, &j)| !self.cross[i][j])
    }

    fn crosscap(&self, s: &[usize]) -> bool {
        s.iter().tuple_combinations().all(|(&i, &j)| self.cross[i][j])
    }

    /// One member crosses all others, which are pairwise non-crossing.
    fn long_jump_with(&self, jump: usize, rest: &[usize]) -> bool {
        !rest.is_empty() && rest.iter().all(|&j| self.cross[jump][j]) && self.planar(rest)
    }

    fn none_cross(&self, s: &[usize], u: &[usize]) -> bool {
        s.iter().all(|&i| u.iter().all(|&j| !self.cross[i][j]))
    }

    /// Every endpoint of the paths `s` lies on the forward arc from
    /// position `from` to position `to`.
    fn inside_arc(&self, s: &[usize], from: usize, to: usize) -> bool {
        let len = (to + self.n - from) % self.n;
        s.iter().all(|&i| {
            let (x, y) = self.ends[i];
            (x + self.n - from) % self.n <= len && (y + self.n - from) % self.n <= len
        })
    }

    fn peripheral(&self, i: usize) -> bool {
        // Both arcs between the ends of `i`; one must hold no other endpoint.
        let (x, y) = self.ends[i];
        let others: Vec<usize> = (0..self.ends.len()).filter(|&j| j != i).collect();
        let clear = |from: usize, to: usize| {
            let len = (to + self.n - from) % self.n;
            others.iter().all(|&j| {
                let (p, q) = self.ends[j];
                [p, q].iter().all(|&z| {
                    let d = (z + self.n - from) % self.n;
                    d == 0 || d >= len
                })
            })
        };
        clear(x, y) || clear(y, x)
    }

    fn double_jump(&self, k1: usize, k2: usize) -> bool {
        let t = self.ends.len();
        (0..t).permutations(2).any(|q| {
            let (q1, q2) = (q[0], q[1]);
            let rest: Vec<usize> = (0..t).filter(|&i| i != q1 && i != q2).collect();
            let linked = [self.ends[q1].0, self.ends[q1].1].iter().any(|&e1| {
                [self.ends[q2].0, self.ends[q2].1]
                    .iter()
                    .any(|&e2| self.inside_arc(&rest, e1, e2) || self.inside_arc(&rest, e2, e1))
            });
            linked
                && rest.iter().copied().combinations(k1).any(|s1| {
                    let s2: Vec<usize> = rest.iter().copied().filter(|i| !s1.contains(i)).collect();
                    let mut full1 = s1.clone();
                    full1.push(q1);
                    let mut full2 = s2.clone();
                    full2.push(q2);
                    s2.len() == k2
                        && self.long_jump_with(q1, &s1)
                        && self.long_jump_with(q2, &s2)
                        && self.none_cross(&full1, &full2)
                })
        })
    }

    fn alt_double_jump(&self, k1: usize, k2: usize) -> bool {
        let t = self.ends.len();
        (0..t).permutations(3).any(|q| {
            let (q0, q1, q2) = (q[0], q[1], q[2]);
            let rest: Vec<usize> = (0..t).filter(|i| !q.contains(i)).collect();
            let mut without: Vec<usize> = rest.clone();
            without.push(q0);
            let separated = [self.ends[q1].0, self.ends[q1].1].iter().all(|&e1| {
                [self.ends[q2].0, self.ends[q2].1]
                    .iter()
                    .all(|&e2| !self.inside_arc(&without, e1, e2) && !self.inside_arc(&without, e2, e1))
            });
            let (a, b) = self.ends[q0];
            separated
                && rest.iter().copied().combinations(k1).any(|s1| {
                    let s2: Vec<usize> = rest.iter().copied().filter(|i| !s1.contains(i)).collect();
                    s2.len() == k2
                        && self.long_jump_with(q1, &s1)
                        && self.long_jump_with(q2, &s2)
                        && ((self.inside_arc(&s1, a, b) && self.inside_arc(&s2, b, a))
                            || (self.inside_arc(&s1, b, a) && self.inside_arc(&s2, a, b)))
                })
        })
    }

    fn klein(&self, k1: usize, k2: usize) -> bool {
        let t = self.ends.len();
        (0..t).combinations(k1).any(|s1| {
            let s2: Vec<usize> = (0..t).filter(|i| !s1.contains(i)).collect();
            s2.len() == k2 && self.crosscap(&s1) && self.crosscap(&s2) && self.none_cross(&s1, &s2)
        })
    }
}

/// All matching types plus the crossing matrix. Long-jump detection is
/// orientation-free: the jumping path is first in A-order for one
/// orientation of omega and last for the other.
pub fn classify_transaction(soc: &Society, t: &Transaction) -> Classification {
    let lay = Layout::new(soc, t);
    let n = t.len();
    let all: Vec<usize> = (0..n).collect();
    let mut labels = BTreeSet::new();
    if lay.planar(&all) {
        labels.insert(TransactionType::Planar);
    }
    if lay.crosscap(&all) {
        labels.insert(TransactionType::Crosscap);
    }
    if n >= 2 && !(0..n).any(|i| lay.peripheral(i)) {
        labels.insert(TransactionType::Crooked);
    }
    if n >= 2 {
        let jump = [0, n - 1]
            .iter()
            .any(|&j| lay.long_jump_with(j, &all.iter().copied().filter(|&i| i != j).collect::<Vec<_>>()));
        if jump {
            labels.insert(TransactionType::LongJump(n - 1));
        }
    }
    if n >= 2 && n.is_multiple_of(2) {
        let paired = |i: usize, j: usize| i.is_multiple_of(2) && j == i + 1;
        let nested = all
            .iter()
            .tuple_combinations()
            .all(|(&i, &j)| lay.cross[i][j] == paired(i, j));
        if nested {
            labels.insert(TransactionType::NestedCrosses(n / 2));
        }
        let twisted = all
            .iter()
            .tuple_combinations()
            .all(|(&i, &j)| lay.cross[i][j] != paired(i, j));
        if twisted {
            labels.insert(TransactionType::TwistedCrosses(n / 2));
        }
    }
    for k1 in 1..n {
        let k2 = n - k1;
        if lay.klein(k1, k2) {
            labels.insert(TransactionType::Klein(k1, k2));
        }
        if k2 >= 3 && lay.double_jump(k1, k2 - 2) {
            labels.insert(TransactionType::DoubleJump(k1, k2 - 2));
        }
        if k2 >= 4 && lay.alt_double_jump(k1, k2 - 3) {
            labels.insert(TransactionType::AltDoubleJump(k1, k2 - 3));
        }
    }
    Classification {
        labels,
        crossing: lay.cross,
    }
}

/// A planar sub-transaction of size at least `r` or a crosscap one of size
/// at least `s`, from a longest decreasing or increasing run of B-ranks.
pub fn erdos_szekeres_extract(t: &Transaction, r: usize, s: usize) -> Result<Transaction> {
    if r == 0 || s == 0 {
        return invalid("r and s must be positive");
    }
    let need = (r - 1) * (s - 1) + 1;
    if t.len() < need {
        return invalid(format!("need at least {need} paths, have {}", t.len()));
    }
    let pi = t.b_ranks();
    let dec = longest_monotone(&pi, |a, b| a > b);
    if dec.len() >= r {
        return Ok(t.subset(&dec));
    }
    let inc = longest_monotone(&pi, |a, b| a < b);
    debug_assert!(inc.len() >= s);
    Ok(t.subset(&inc))
}

/// Indices of a longest subsequence whose consecutive values satisfy `ok`.
fn longest_monotone(xs: &[usize], ok: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let n = xs.len();
    let mut len = vec![1usize; n];
    let mut prev = vec![usize::MAX; n];
    for j in 0..n {
        for i in 0..j {
            if ok(xs[i], xs[j]) && len[i] + 1 > len[j] {
                len[j] = len[i] + 1;
                prev[j] = i;
            }
        }
    }
    let Some(mut end) = (0..n).max_by_key(|&i| (len[i], std::cmp::Reverse(i))) else {
        return Vec::new();
    };
    let mut out = vec![end];
    while prev[end] != usize::MAX {
        end = prev[end];
        out.push(end);
    }
    out.reverse();
    out
}

/// Largest transaction over all splits of omega into two complementary
/// segments (larger segments never hurt), with a witness.
pub fn depth(soc: &Society) -> (usize, Option<Transaction>) {
    let n = soc.omega.len();
    let mut best: (usize, Option<Transaction>) = (0, None);
    for i in 0..n {
        for len in 1..n {
            let a: Vec<Vertex> = (0..len).map(|d| soc.omega[(i + d) % n]).collect();
            let b: Vec<Vertex> = (len..n).map(|d| soc.omega[(i + d) % n]).collect();
            let paths = max_linkage(&soc.graph, &a, &b);
            if paths.len() > best.0 {
                let t = Transaction::new(soc, paths, a, b).expect("flow paths form a transaction");
                best = (t.len(), Some(t));
            }
        }
    }
    best
}

/// Maximum set of disjoint A-B paths internally avoiding `A ∪ B`, by unit
/// vertex-capacity augmenting paths.
pub fn max_linkage(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Vec<Vec<Vertex>> {
    let aset: VertexSet = a.iter().copied().collect();
    let bset: VertexSet = b.iter().copied().collect();
    let (adj, ids) = g.dense();
    let n = ids.len();
    let idx: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // Nodes: 2v = in, 2v+1 = out, 2n = source, 2n+1 = sink.
    let (src, snk) = (2 * n, 2 * n + 1);
    let mut cap: BTreeMap<(usize, usize), i32> = BTreeMap::new();
    let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); 2 * n + 2];
    let mut arc = |u: usize, v: usize, c: i32, cap: &mut BTreeMap<(usize, usize), i32>| {
        *cap.entry((u, v)).or_insert(0) += c;
        cap.entry((v, u)).or_insert(0);
        nbrs[u].insert(v);
        nbrs[v].insert(u);
    };
    for v in 0..n {
        arc(2 * v, 2 * v + 1, 1, &mut cap);
        let x = ids[v];
        if aset.contains(&x) {
            arc(src, 2 * v, 1, &mut cap);
        }
        if bset.contains(&x) {
            arc(2 * v + 1, snk, 1, &mut cap);
        }
        for &w in &adj[v] {
            let y = ids[w];
            // Paths may not re-enter A or leave B.
            if aset.contains(&y) || bset.contains(&x) {
                continue;
            }
            arc(2 * v + 1, 2 * w, 1, &mut cap);
        }
    }
    loop {
        let mut parent = vec![usize::MAX; 2 * n + 2];
        parent[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &nbrs[u] {
                if parent[v] == usize::MAX && cap[&(u, v)] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[snk] == usize::MAX {
            break;
        }
        let mut v = snk;
        while v != src {
            let u = parent[v];
            *cap.get_mut(&(u, v)).expect("arc") -= 1;
            *cap.get_mut(&(v, u)).expect("arc") += 1;
            v = u;
        }
    }
    // Decompose the flow: follow saturated out->in arcs from each A vertex.
    let mut paths = Vec::new();
    for &x in a {
        let s = idx[&x];
        if cap[&(src, 2 * s)] != 0 {
            continue;
        }
        let mut path = vec![x];
        let mut v = s;
        while !bset.contains(&ids[v]) {
            let next = adj[v]
                .iter()
                .copied()
                .find(|&w| cap.get(&(2 * w, 2 * v + 1)).copied().unwrap_or(0) > 0 && cap[&(2 * v + 1, 2 * w)] == 0)
                .expect("flow continues");
            path.push(ids[next]);
            v = next;
        }
        paths.push(path);
    }
    debug_assert_eq!(paths.len(), idx.len().min(paths.len()));
    paths
}

/// Omega labelled `v_1..v_l` in order (a rotation of omega) and bags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearDecomposition {
    pub labels: Vec<Vertex>,
    pub bags: Vec<VertexSet>,
}

impl LinearDecomposition {
    /// Itemized violations; empty iff valid.
    pub fn defects(&self, soc: &Society) -> Vec<String> {
        let mut out = Vec::new();
        let n = soc.omega.len();
        let rotation = soc.omega.iter().position(|v| Some(v) == self.labels.first());
        let rotated_ok = self.labels.len() == n
            && rotation.is_some_and(|r| (0..n).all(|i| self.labels[i] == soc.omega[(r + i) % n]));
        if !rotated_ok {
            out.push("labels are not omega in cyclic order".to_string());
        }
        if self.bags.len() != self.labels.len() {
            out.push(format!("{} bags for {} labels", self.bags.len(), self.labels.len()));
            return out;
        }
        for (i, (v, bag)) in self.labels.iter().zip(&self.bags).enumerate() {
            if !bag.contains(v) {
                out.push(format!("bag {} misses its label {v}", i + 1));
            }
            if let Some(x) = bag.iter().find(|x| !soc.graph.contains(**x)) {
                out.push(format!("bag {} holds non-vertex {x}", i + 1));
            }
        }
        for v in soc.graph.vertices() {
            let idx: Vec<usize> = (0..self.bags.len()).filter(|&i| self.bags[i].contains(&v)).collect();
            match (idx.first(), idx.last()) {
                (None, _) => out.push(format!("vertex {v} is in no bag")),
                (Some(&lo), Some(&hi)) if hi - lo + 1 != idx.len() => {
                    out.push(format!("bags of vertex {v} are not an interval"))
                }
                _ => {}
            }
        }
        for (u, v) in soc.graph.edges() {
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                out.push(format!("edge {u}-{v} is in no bag"));
            }
        }
        out
    }

    pub fn validate(&self, soc: &Society) -> bool {
        self.defects(soc).is_empty()
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Largest intersection of consecutive bags.
    pub fn adhesion(&self) -> usize {
        self.bags
            .windows(2)
            .map(|w| w[0].intersection(&w[1]).count())
            .max()
            .unwrap_or(0)
    }
}

/// Minimum-width linear decomposition by exhaustive interval assignment,
/// trying widths in increasing order. `Unknown` when the budget runs out.
pub fn min_width_linear_decomposition(soc: &Society, budget: &Budget) -> Search<LinearDecomposition> {
    let l = soc.omega.len();
    if l == 0 {
        return Search::Absent;
    }
    let meter = budget.meter();
    let n = soc.graph.n();
    // Boundary vertices first, then breadth-first from them.
    let mut order: Vec<Vertex> = soc.omega.clone();
    let mut seen: VertexSet = soc.omega_set();
    let mut queue: VecDeque<Vertex> = soc.omega.iter().copied().collect();
    loop {
        while let Some(v) = queue.pop_front() {
            for &w in soc.graph.neighbors(v) {
                if seen.insert(w) {
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        match soc.graph.vertices().find(|v| !seen.contains(v)) {
            Some(v) => {
                seen.insert(v);
                order.push(v);
                queue.push_back(v);
            }
            None => break,
        }
    }
    let lower = 1 + usize::from(soc.graph.m() > 0);
    for w in lower..=n.max(1) {
        for rot in 0..l {
            let labels: Vec<Vertex> = (0..l).map(|i| soc.omega[(rot + i) % l]).collect();
            let home: BTreeMap<Vertex, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let mut search = IntervalSearch {
                g: &soc.graph,
                order: &order,
                home: &home,
                l,
                w,
                meter: &meter,
                span: BTreeMap::new(),
                load: vec![0; l],
            };
            match search.run(0) {
                None => return Search::Unknown,
                Some(true) => {
                    let bags = (0..l)
                        .map(|i| {
                            search
                                .span
                                .iter()
                                .filter(|(_, &(lo, hi))| lo <= i && i <= hi)
                                .map(|(&v, _)| v)
                                .collect()
                        })
                        .collect();
                    return Search::Found(LinearDecomposition { labels, bags });
                }
                Some(false) => {}
            }
        }
    }
    Search::Absent
}

struct IntervalSearch<'a> {
    g: &'a Graph,
    order: &'a [Vertex],
    home: &'a BTreeMap<Vertex, usize>,
    l: usize,
    w: usize,
    meter: &'a Meter,
    span: BTreeMap<Vertex, (usize, usize)>,
    load: Vec<usize>,
}

impl IntervalSearch<'_> {
    fn run(&mut self, k: usize) -> Option<bool> {
        if k == self.order.len() {
            return Some(true);
        }
        if !self.meter.tick() {
            return None;
        }
        let v = self.order[k];
        // Must meet every placed neighbour's interval and contain its label.
        let mut lo_max = self.l - 1;
        let mut hi_min = 0;
        for u in self.g.neighbors(v) {
            if let Some(&(a, b)) = self.span.get(u) {
                lo_max = lo_max.min(b);
                hi_min = hi_min.max(a);
            }
        }
        if let Some(&i) = self.home.get(&v) {
            lo_max = lo_max.min(i);
            hi_min = hi_min.max(i);
        }
        let mut choices: Vec<(usize, usize)> = (0..=lo_max)
            .flat_map(|lo| (hi_min.max(lo)..self.l).map(move |hi| (lo, hi)))
            .collect();
        choices.sort_by_key(|&(lo, hi)| hi - lo);
        for (lo, hi) in choices {
            if (lo..=hi).any(|i| self.load[i] >= self.w) {
                continue;
            }
            for i in lo..=hi {
                self.load[i] += 1;
            }
            self.span.insert(v, (lo, hi));
            if self.run(k + 1)? {
                return Some(true);
            }
            self.span.remove(&v);
            for i in lo..=hi {
                self.load[i] -= 1;
            }
        }
        Some(false)
    }
}

/// The innermost-cycle society of a two-cycle transaction-pattern grid and
/// its chord transaction; A and B are the chord ends on either side of the
/// two spacer positions.
pub fn zoo_transaction(family: ZooFamily, k1: usize, k2: Option<usize>) -> Result<(Society, Transaction)> {
    let g = grid_zoo(family, k1, k2, 2)?;
    let len = g.coords.len() / 2;
    let omega: Vec<Vertex> = (1..=len).map(|p| g.at(2, p)).collect();
    let t = g.chords.len();
    let soc = Society::new(g.graph.clone(), omega.clone())?;
    let paths: Vec<Vec<Vertex>> = g.chords.iter().map(|&(u, v)| vec![u, v]).collect();
    Transaction::new(&soc, paths, omega[..t].to_vec(), omega[t + 1..2 * t + 1].to_vec()).map(|tr| (soc, tr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::grid;

    fn boundary_of_grid3() -> Society {
        let g = grid(3, 3).unwrap();
        let ring = [(1, 1), (1, 2), (1, 3), (2, 3), (3, 3), (3, 2), (3, 1), (2, 1)];
        let omega = ring.iter().map(|&(i, j)| g.at(i, j)).collect();
        Society::new(g.graph, omega).unwrap()
    }

    #[test]
    fn segments() {
        let soc = Society::new(Graph::cycle(8), (0..8).collect()).unwrap();
        assert!(is_segment(&soc, &VertexSet::from([2, 3, 4])).unwrap());
        assert!(is_segment(&soc, &VertexSet::from([7, 0, 1])).unwrap());
        assert!(!is_segment(&soc, &VertexSet::from([0, 4])).unwrap());
        assert!(is_segment(&soc, &soc.omega_set()).unwrap());
        assert!(is_segment(&soc, &VertexSet::from([9])).is_err());
        assert_eq!(soc.segment(6, 1).unwrap(), vec![6, 7, 0, 1]);
        assert_eq!(soc.segment(3, 2).unwrap().len(), 8);
    }

    #[test]
    fn crosses_and_ruralness() {
        let k4 = Society::new(Graph::complete(4), vec![0, 1, 2, 3]).unwrap();
        assert!(find_cross(&k4).is_some());
        assert!(is_rural(&k4).is_no());
        let c4 = Society::new(Graph::cycle(4), vec![0, 1, 2, 3]).unwrap();
        assert!(find_cross(&c4).is_none());
        assert!(is_rural(&c4).is_yes());
        let g3 = boundary_of_grid3();
        assert!(find_cross(&g3).is_none());
        assert!(is_rural(&g3).is_yes());
        // A K5 hanging off one boundary vertex sits inside a cell.
        let mut g = Graph::cycle(4);
        for (u, v) in Graph::complete(5).edges() {
            g.add_edge(u + 3, v + 3);
        }
        let soc = Society::new(g, vec![0, 1, 2, 3]).unwrap();
        assert!(find_cross(&soc).is_none());
        assert!(is_rural(&soc).is_yes());
        // Two vertices on the same three boundary vertices: the unreduced
        // apex graph contains K3,3, yet each sits in its own cell.
        let mut g = Graph::cycle(4);
        for x in [4, 5] {
            for b in [0, 1, 2] {
                g.add_edge(x, b);
            }
        }
        let soc = Society::new(g, vec![0, 1, 2, 3]).unwrap();
        assert!(find_cross(&soc).is_none());
        assert!(is_rural(&soc).is_yes());
    }

    #[test]
    fn classification_examples() {
        let lab = |pi: &[usize]| {
            let (s, t) = Transaction::from_ranks(pi).unwrap();
            classify_transaction(&s, &t).labels
        };
        assert!(lab(&[2, 1, 0]).contains(&TransactionType::Planar));
        assert!(lab(&[0, 1, 2]).contains(&TransactionType::Crosscap));
        assert!(lab(&[0, 2, 1]).contains(&TransactionType::LongJump(2)));
        assert!(!lab(&[0, 2, 1]).contains(&TransactionType::Planar));
        // Mirror image: the jumping path is last in A-order.
        assert!(lab(&[1, 0, 2]).contains(&TransactionType::LongJump(2)));
        assert!(lab(&[0, 1]).contains(&TransactionType::Crooked));
        assert!(!lab(&[1, 0]).contains(&TransactionType::Crooked));
    }

    #[test]
    fn zoo_patterns_classify() {
        use TransactionType::*;
        let cases = [
            (ZooFamily::NestedCrosses, 2, None, NestedCrosses(2)),
            (ZooFamily::TwistedCrosses, 2, None, TwistedCrosses(2)),
            (ZooFamily::Klein, 1, Some(1), Klein(1, 1)),
            (ZooFamily::Klein, 2, Some(3), Klein(2, 3)),
            (ZooFamily::DoubleJump, 1, Some(1), DoubleJump(1, 1)),
            (ZooFamily::DoubleJump, 2, Some(1), DoubleJump(2, 1)),
            (ZooFamily::AltDoubleJump, 1, Some(1), AltDoubleJump(1, 1)),
            (ZooFamily::AltDoubleJump, 1, Some(2), AltDoubleJump(1, 2)),
        ];
        for (f, k1, k2, want) in cases {
            let (s, t) = zoo_transaction(f, k1, k2).unwrap();
            let c = classify_transaction(&s, &t);
            assert!(c.labels.contains(&want), "{f} {k1} {k2:?}: {:?}", c.labels);
        }
    }

    #[test]
    fn extraction_examples() {
        // Ranks (2,4,1,5,3) in 1-based form.
        let (_, t) = Transaction::from_ranks(&[1, 3, 0, 4, 2]).unwrap();
        let sub = erdos_szekeres_extract(&t, 3, 3).unwrap();
        let (s, _) = Transaction::from_ranks(&[1, 3, 0, 4, 2]).unwrap();
        assert_eq!(sub.len(), 3);
        assert!(classify_transaction(&s, &sub)
            .labels
            .contains(&TransactionType::Crosscap));
        let (s, t) = Transaction::from_ranks(&[4, 3, 2, 1, 0]).unwrap();
        let sub = erdos_szekeres_extract(&t, 5, 1).unwrap();
        assert_eq!(sub.len(), 5);
        assert!(classify_transaction(&s, &sub).labels.contains(&TransactionType::Planar));
        assert!(erdos_szekeres_extract(&t, 3, 4).is_err());
    }

    #[test]
    fn depth_examples() {
        let single = Society::new(Graph::path(3), vec![1]).unwrap();
        assert_eq!(depth(&single).0, 0);
        let g = grid(3, 3).unwrap();
        let left: Vec<Vertex> = (1..=3).map(|i| g.at(i, 1)).collect();
        let right: Vec<Vertex> = (1..=3).map(|i| g.at(i, 3)).collect();
        assert_eq!(max_linkage(&g.graph, &left, &right).len(), 3);
        let soc = boundary_of_grid3();
        let (d, w) = depth(&soc);
        assert!(d >= 3);
        let w = w.unwrap();
        assert_eq!(w.len(), d);
    }

    #[test]
    fn linear_decompositions() {
        let soc = Society::new(Graph::path(2), vec![0, 1]).unwrap();
        let ld = min_width_linear_decomposition(&soc, &Budget::default())
            .found()
            .unwrap();
        assert!(ld.validate(&soc));
        assert_eq!(ld.width(), 2);
        let g3 = boundary_of_grid3();
        let all = LinearDecomposition {
            labels: g3.omega.clone(),
            bags: vec![g3.graph.vertex_set(); 8],
        };
        assert!(all.validate(&g3));
        let ld = min_width_linear_decomposition(&g3, &Budget::default()).found().unwrap();
        assert!(ld.validate(&g3));
        assert!(ld.width() <= 9);
        let (d, _) = depth(&g3);
        assert!(2 * ld.adhesion() >= d);
        let broken = LinearDecomposition {
            labels: g3.omega.clone(),
            bags: vec![VertexSet::new(); 8],
        };
        assert!(!broken.defects(&g3).is_empty());
    }

    #[test]
    fn rural_iff_cross_free_on_random_societies() {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for round in 0..600 {
            let n = rng.gen_range(4..=9);
            let g = crate::generators::gnp(n, rng.gen_range(0.2..0.7), round).unwrap();
            let mut vs: Vec<Vertex> = g.vertices().collect();
            vs.shuffle(&mut rng);
            vs.truncate(rng.gen_range(1..=n));
            let soc = Society::new(g, vs).unwrap();
            let cross = find_cross(&soc);
            let rural = is_rural(&soc);
            assert_eq!(cross.is_none(), rural.is_yes(), "round {round}: {soc:?}");
        }
    }
}
