//! Tree decompositions, torsos, normalization, clique-sum closure membership,
//! balanced separators, wall tangles and tight connectivity.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::ops::ControlFlow;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter, Search};
use crate::canon::{canonical_form, CanonForm};
use crate::error::{invalid, Error, Result};
use crate::generators::WallCoordinates;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::ops::{add_clique, enumerate_separations, torso_of_set, Separation};

/// A tree with a bag per node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub bags: BTreeMap<Vertex, VertexSet>,
    pub root: Option<Vertex>,
}

impl TreeDecomposition {
    pub fn single_bag(g: &Graph) -> Self {
        TreeDecomposition {
            tree: Graph::empty(1),
            bags: BTreeMap::from([(0, g.vertex_set())]),
            root: Some(0),
        }
    }

    /// Path-shaped decomposition with the given bags in order.
    pub fn path(bags: Vec<VertexSet>) -> Self {
        let tree = Graph::path(bags.len());
        TreeDecomposition {
            tree,
            bags: bags.into_iter().enumerate().map(|(i, b)| (i as Vertex, b)).collect(),
            root: Some(0),
        }
    }

    /// Largest bag size minus one; `-1` has no `usize` form, so an empty
    /// decomposition reports 0.
    pub fn width(&self) -> usize {
        self.bags.values().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Largest intersection of adjacent bags.
    pub fn adhesion(&self) -> usize {
        self.tree
            .edges()
            .map(|(s, t)| self.bags[&s].intersection(&self.bags[&t]).count())
            .max()
            .unwrap_or(0)
    }

    fn root_node(&self) -> Option<Vertex> {
        self.root.or_else(|| self.tree.vertices().next())
    }

    /// Itemized violations of the decomposition axioms; empty iff valid.
    pub fn defects(&self, g: &Graph) -> Vec<String> {
        let mut out = Vec::new();
        let nodes = self.tree.vertex_set();
        let keys: VertexSet = self.bags.keys().copied().collect();
        if nodes != keys {
            out.push("tree nodes and bag keys differ".to_string());
            return out;
        }
        if nodes.is_empty() {
            if g.n() > 0 {
                out.push("empty tree for a nonempty graph".to_string());
            }
            return out;
        }
        if !self.tree.is_connected() || self.tree.m() + 1 != self.tree.n() {
            out.push("the tree is not a tree".to_string());
        }
        if let Some(r) = self.root {
            if !nodes.contains(&r) {
                out.push(format!("root {r} is not a node"));
            }
        }
        for (t, bag) in &self.bags {
            if let Some(x) = bag.iter().find(|x| !g.contains(**x)) {
                out.push(format!("bag {t} holds non-vertex {x}"));
            }
        }
        for v in g.vertices() {
            let holders: VertexSet = self
                .bags
                .iter()
                .filter(|(_, b)| b.contains(&v))
                .map(|(&t, _)| t)
                .collect();
            if holders.is_empty() {
                out.push(format!("vertex {v} is in no bag"));
            } else if !self.tree.is_connected_set(&holders) {
                out.push(format!("bags containing vertex {v} do not form a subtree"));
            }
        }
        for (u, v) in g.edges() {
            if !self.bags.values().any(|b| b.contains(&u) && b.contains(&v)) {
                out.push(format!("edge {u}-{v} is in no bag"));
            }
        }
        out
    }
}

/// Decomposition validity plus its itemized failures.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> (bool, Vec<String>) {
    let d = td.defects(g);
    (d.is_empty(), d)
}

/// `G[β(t)]` plus a clique on `β(t) ∩ β(t')` for every tree neighbour `t'`.
pub fn torso_at_node(g: &Graph, td: &TreeDecomposition, t: Vertex) -> Result<Graph> {
    let Some(bag) = td.bags.get(&t) else {
        return invalid(format!("{t} is not a node"));
    };
    let mut h = g.induced(bag);
    for u in td.tree.neighbors(t) {
        let s: VertexSet = bag.intersection(&td.bags[u]).copied().collect();
        add_clique(&mut h, &s);
    }
    Ok(h)
}

/// Rewrites a valid decomposition so the torso at every node equals the
/// torso of its bag in `G`. While some node `t` has a neighbour `t'` whose
/// adhesion holds a non-adjacent pair not inside a common `N(C)` for a
/// component `C` of `G - β(t)`, the side of `t'` is replaced by one copy
/// per component met, bags restricted to `C ∪ N(C)` (a side meeting no
/// component is dropped). Nodes whose bag lies inside a neighbour's bag are
/// then merged into that neighbour. Bags only shrink, so width never grows.
pub fn normalize_td(g: &Graph, td: &TreeDecomposition) -> Result<TreeDecomposition> {
    let (ok, defects) = validate_td(g, td);
    if !ok {
        return Err(Error::InvalidArgument(format!(
            "invalid decomposition: {}",
            defects.join("; ")
        )));
    }
    let mut cur = td.clone();
    merge_redundant(&mut cur);
    while let Some((t, side)) = find_violation(g, &cur) {
        cur = split_side(g, &cur, t, side);
        merge_redundant(&mut cur);
    }
    debug_assert!(cur.defects(g).is_empty());
    Ok(cur)
}

/// Merges each node whose bag is contained in a neighbour's bag into that
/// neighbour; validity is preserved since the merged bag covers both.
fn merge_redundant(td: &mut TreeDecomposition) {
    loop {
        let hit = td.tree.edges().find_map(|(a, b)| {
            if td.bags[&a].is_subset(&td.bags[&b]) {
                Some((a, b))
            } else if td.bags[&b].is_subset(&td.bags[&a]) {
                Some((b, a))
            } else {
                None
            }
        });
        let Some((gone, into)) = hit else { break };
        let nbrs: Vec<Vertex> = td.tree.neighbors(gone).iter().copied().filter(|&w| w != into).collect();
        td.tree.remove_vertex(gone);
        td.bags.remove(&gone);
        for w in nbrs {
            td.tree.add_edge(into, w);
        }
        if td.root == Some(gone) {
            td.root = Some(into);
        }
    }
}

/// Node and neighbour whose adhesion clique adds an edge that the torso
/// of the node's bag in `G` lacks.
fn find_violation(g: &Graph, td: &TreeDecomposition) -> Option<(Vertex, Vertex)> {
    for (&t, bag) in &td.bags {
        let comps = g.components_without(bag);
        let hoods: Vec<VertexSet> = comps.iter().map(|c| g.neighborhood(c)).collect();
        for &u in td.tree.neighbors(t) {
            let adhesion: VertexSet = bag.intersection(&td.bags[&u]).copied().collect();
            let uncovered = adhesion
                .iter()
                .tuple_combinations()
                .any(|(&y, &z)| !g.has_edge(y, z) && !hoods.iter().any(|h| h.contains(&y) && h.contains(&z)));
            if uncovered {
                return Some((t, u));
            }
        }
    }
    None
}

/// Union of bags on `u`'s side of the tree edge `tu`.
fn side_vertices(td: &TreeDecomposition, t: Vertex, u: Vertex) -> VertexSet {
    td.tree
        .reach(u, &VertexSet::from([t]))
        .iter()
        .flat_map(|n| td.bags[n].iter().copied())
        .collect()
}

fn components_met(g: &Graph, bag: &VertexSet, far: &VertexSet) -> Vec<VertexSet> {
    g.components_without(bag)
        .into_iter()
        .filter(|c| !c.is_disjoint(far))
        .collect()
}

fn split_side(g: &Graph, td: &TreeDecomposition, t: Vertex, u: Vertex) -> TreeDecomposition {
    let bag = &td.bags[&t];
    let far = side_vertices(td, t, u);
    let comps = components_met(g, bag, &far);
    let side_nodes = td.tree.reach(u, &VertexSet::from([t]));
    let mut out = td.clone();
    for n in &side_nodes {
        out.tree.remove_vertex(*n);
        out.bags.remove(n);
    }
    if out.root.is_some_and(|r| side_nodes.contains(&r)) {
        out.root = Some(t);
    }
    for c in comps {
        let keep: VertexSet = c.union(&g.neighborhood(&c)).copied().collect();
        let mut fresh = BTreeMap::new();
        for &n in &side_nodes {
            let id = out.tree.fresh_vertex();
            out.tree.add_vertex(id);
            fresh.insert(n, id);
            out.bags.insert(id, td.bags[&n].intersection(&keep).copied().collect());
        }
        for &n in &side_nodes {
            for m in td.tree.neighbors(n) {
                if let Some(&fm) = fresh.get(m) {
                    out.tree.add_edge(fresh[&n], fm);
                }
            }
        }
        out.tree.add_edge(t, fresh[&u]);
    }
    out
}

/// Hereditary class membership test; `None` means undecided.
pub type Predicate<'a> = dyn Fn(&Graph) -> Option<bool> + 'a;

/// Whether `G` has a tree decomposition with every torso in the class
/// and adhesion at most `max_adhesion`. Pieces are a component `C` plus
/// `N(C)`, with `N(C)` completed to a clique and required in the piece's
/// root bag; results are memoized per piece.
pub fn cc_member(g: &Graph, pred: &Predicate<'_>, max_adhesion: usize, budget: &Budget) -> Search<TreeDecomposition> {
    let meter = budget.meter();
    let mut s = Closure {
        g,
        pred,
        max_adhesion,
        meter: &meter,
        memo: HashMap::new(),
        verdicts: HashMap::new(),
    };
    let root = (g.vertex_set(), VertexSet::new());
    match s.solve(&root) {
        None => Search::Unknown,
        Some(false) => Search::Absent,
        Some(true) => {
            let mut td = TreeDecomposition {
                tree: Graph::new(),
                bags: BTreeMap::new(),
                root: Some(0),
            };
            s.emit(&root, None, &mut td);
            assert!(td.defects(g).is_empty(), "closure decomposition must validate");
            for t in td.tree.vertices() {
                let torso = torso_at_node(g, &td, t).expect("node");
                assert_ne!(pred(&torso), Some(false), "closure torso must satisfy the predicate");
            }
            Search::Found(td)
        }
    }
}

type Piece = (VertexSet, VertexSet);

enum Memo {
    Busy,
    Done(Option<(VertexSet, Vec<Piece>)>),
}

struct Closure<'a> {
    g: &'a Graph,
    pred: &'a Predicate<'a>,
    max_adhesion: usize,
    meter: &'a Meter,
    memo: HashMap<Piece, Memo>,
    verdicts: HashMap<CanonForm, Option<bool>>,
}

impl Closure<'_> {
    fn test(&mut self, h: &Graph) -> Option<bool> {
        let key = canonical_form(h);
        if let Some(&v) = self.verdicts.get(&key) {
            return v;
        }
        let v = (self.pred)(h);
        self.verdicts.insert(key, v);
        v
    }

    /// `None` when the budget runs out or the predicate is undecided.
    fn solve(&mut self, piece: &Piece) -> Option<bool> {
        match self.memo.get(piece) {
            Some(Memo::Busy) => return Some(false),
            Some(Memo::Done(r)) => return Some(r.is_some()),
            None => {}
        }
        self.memo.insert(piece.clone(), Memo::Busy);
        let (u, b) = piece;
        let free: Vec<Vertex> = u.difference(b).copied().collect();
        let sub = self.g.induced(u);
        let mut result = None;
        'search: for size in 0..=free.len() {
            for extra in free.iter().copied().combinations(size) {
                if !self.meter.tick() {
                    self.memo.remove(piece);
                    return None;
                }
                let x: VertexSet = b.iter().copied().chain(extra).collect();
                let comps = sub.components_without(&x);
                let mut torso = sub.induced(&x);
                add_clique(&mut torso, b);
                let mut children = Vec::new();
                let mut bad = false;
                for c in &comps {
                    let nc = sub.neighborhood(c);
                    if nc.len() > self.max_adhesion {
                        bad = true;
                        break;
                    }
                    add_clique(&mut torso, &nc);
                    children.push((c.union(&nc).copied().collect::<VertexSet>(), nc));
                }
                if bad || !self.test(&torso)? {
                    continue;
                }
                let mut all = true;
                for ch in &children {
                    match self.solve(ch) {
                        None => {
                            self.memo.remove(piece);
                            return None;
                        }
                        Some(false) => {
                            all = false;
                            break;
                        }
                        Some(true) => {}
                    }
                }
                if all {
                    result = Some((x, children));
                    break 'search;
                }
            }
        }
        let found = result.is_some();
        self.memo.insert(piece.clone(), Memo::Done(result));
        Some(found)
    }

    fn emit(&self, piece: &Piece, parent: Option<Vertex>, td: &mut TreeDecomposition) {
        let Some(Memo::Done(Some((x, children)))) = self.memo.get(piece) else {
            unreachable!("emitted pieces were solved");
        };
        let id = td.tree.fresh_vertex();
        td.tree.add_vertex(id);
        td.bags.insert(id, x.clone());
        if let Some(p) = parent {
            td.tree.add_edge(p, id);
        }
        for ch in children {
            self.emit(ch, Some(id), td);
        }
    }
}

/// `p*(G)`: least `k` such that `G` is in the clique-sum closure of
/// `{H : p(H) <= k}`, by binary search over `0..=p(G)`.
pub fn star_extension(g: &Graph, p: &dyn Fn(&Graph) -> Option<usize>, budget: &Budget) -> Search<usize> {
    star_extension_witnessed(g, p, budget).map(|(k, _)| k)
}

/// As [`star_extension`], with a decomposition whose torsos all have
/// `p <= k`.
pub fn star_extension_witnessed(
    g: &Graph,
    p: &dyn Fn(&Graph) -> Option<usize>,
    budget: &Budget,
) -> Search<(usize, TreeDecomposition)> {
    let Some(upper) = p(g) else {
        return Search::Unknown;
    };
    let values: std::cell::RefCell<HashMap<CanonForm, Option<usize>>> = Default::default();
    let value = |h: &Graph| {
        let key = canonical_form(h);
        if let Some(&v) = values.borrow().get(&key) {
            return v;
        }
        let v = p(h);
        values.borrow_mut().insert(key, v);
        v
    };
    let (mut lo, mut hi) = (0, upper);
    let mut best = TreeDecomposition::single_bag(g);
    while lo < hi {
        let mid = (lo + hi) / 2;
        let pred = |h: &Graph| value(h).map(|v| v <= mid);
        match cc_member(g, &pred, g.n(), budget) {
            Search::Found(td) => {
                hi = mid;
                best = td;
            }
            Search::Absent => lo = mid + 1,
            Search::Unknown => return Search::Unknown,
        }
    }
    Search::Found((lo, best))
}

/// Exact treewidth by dynamic programming over vertex subsets (n <= 18):
/// `TW(S) = min_v max(TW(S - v), |Q(S - v, v)|)` where `Q(S, v)` is the set
/// of vertices outside `S + v` reachable from `v` through `S`.
pub fn treewidth_exact(g: &Graph) -> Result<usize> {
    let (adj, _) = g.dense();
    let n = adj.len();
    if n > 18 {
        return invalid("exact treewidth is capped at 18 vertices");
    }
    if n == 0 {
        return Ok(0);
    }
    let masks: Vec<u32> = adj.iter().map(|ns| ns.iter().fold(0, |m, &w| m | 1 << w)).collect();
    let q = |s: u32, v: usize| -> u32 {
        // Flood from v through s; count boundary vertices outside s + v.
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut outside = 0u32;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = masks[x] & !seen;
            seen |= nb;
            outside |= nb & !s;
            frontier |= nb & s;
        }
        outside.count_ones()
    };
    let full = (1u32 << n) - 1;
    let mut tw = vec![i32::MAX; 1 << n];
    tw[0] = -1;
    for s in 1..=full {
        let mut best = i32::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let val = tw[rest as usize].max(q(rest, v) as i32);
            best = best.min(val);
        }
        tw[s as usize] = best;
    }
    Ok(tw[full as usize].max(0) as usize)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(2.0 / 3.0..1.0).contains(&alpha) {
        return invalid("alpha must lie in [2/3, 1)");
    }
    Ok(())
}

/// Smallest set `S` of at most `k` vertices such that every component of
/// `G - S` holds at most `alpha |X|` vertices of `X`.
pub fn balanced_separator(g: &Graph, x: &VertexSet, alpha: f64, k: usize) -> Result<Option<VertexSet>> {
    check_alpha(alpha)?;
    if !x.is_subset(&g.vertex_set()) {
        return invalid("X must be a subset of V(G)");
    }
    let cap = alpha * x.len() as f64;
    let vs: Vec<Vertex> = g.vertices().collect();
    for size in 0..=k.min(vs.len()) {
        for s in vs.iter().copied().combinations(size) {
            let s: VertexSet = s.into_iter().collect();
            let ok = g
                .components_without(&s)
                .iter()
                .all(|c| c.intersection(x).count() as f64 <= cap);
            if ok {
                return Ok(Some(s));
            }
        }
    }
    Ok(None)
}

/// No `alpha`-balanced separator of size at most `k` exists.
pub fn is_well_linked(g: &Graph, x: &VertexSet, k: usize, alpha: f64) -> Result<bool> {
    Ok(balanced_separator(g, x, alpha, k)?.is_none())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

/// The side whose strict part contains a full row and a full column of
/// the wall.
pub fn tangle_of_wall_orient(w: &WallCoordinates, sep: &Separation) -> Result<Side> {
    if sep.order() >= w.height.min(w.width) {
        return invalid("separation order must be below the wall size");
    }
    let holds = |strict: &VertexSet| {
        w.rows.iter().any(|r| r.is_subset(strict)) && w.columns.iter().any(|c| c.is_subset(strict))
    };
    match (holds(&sep.a_strict()), holds(&sep.b_strict())) {
        (false, true) => Ok(Side::B),
        (true, false) => Ok(Side::A),
        _ => Err(Error::Certificate("no unique side holds a row and a column".into())),
    }
}

/// Maps a separation to its big side.
pub type Orientation<'a> = Box<dyn Fn(&Separation) -> Result<Side> + 'a>;

/// A tangle given by an orientation function over separations of order
/// below `order`; the returned side is the big side.
pub struct TangleOracle<'a> {
    pub order: usize,
    pub orient: Orientation<'a>,
}

impl TangleOracle<'_> {
    /// Checks by enumeration that no three small sides cover `G`.
    pub fn verify(&self, g: &Graph) -> Result<bool> {
        let mut small: Vec<VertexSet> = Vec::new();
        let mut err = None;
        let _ = enumerate_separations(g, self.order.saturating_sub(1), false, |sep| {
            match (self.orient)(sep) {
                Ok(Side::B) => small.push(sep.a.clone()),
                Ok(Side::A) => small.push(sep.b.clone()),
                Err(e) => {
                    err = Some(e);
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        if let Some(e) = err {
            return Err(e);
        }
        let all = g.vertex_set();
        for (i, a1) in small.iter().enumerate() {
            for (j, a2) in small.iter().enumerate().skip(i) {
                let two: VertexSet = a1.union(a2).copied().collect();
                if two == all {
                    return Ok(false);
                }
                for a3 in &small[j..] {
                    if two.union(a3).count() == all.len() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Every separation of order `q < k` whose strict sides are both
/// connected has a side of at most `f(q)` vertices.
pub fn is_tightly_connected(g: &Graph, f: &dyn Fn(usize) -> usize, k: usize, budget: &Budget) -> Search<bool> {
    if k == 0 {
        return Search::Found(true);
    }
    let meter = budget.meter();
    let flow = enumerate_separations(g, k - 1, true, |sep| {
        if !meter.tick() {
            return ControlFlow::Break(None);
        }
        if sep.a.len().min(sep.b.len()) > f(sep.order()) {
            return ControlFlow::Break(Some(()));
        }
        ControlFlow::Continue(())
    });
    match flow {
        ControlFlow::Continue(()) => Search::Found(true),
        ControlFlow::Break(Some(())) => Search::Found(false),
        ControlFlow::Break(None) => Search::Unknown,
    }
}

/// Decomposition from an elimination order: bag of `v` is `v` plus its
/// later neighbours in the fill-in graph, attached to the earliest of them.
pub fn td_from_elimination(g: &Graph, order: &[Vertex]) -> Result<TreeDecomposition> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != g.vertices().collect::<Vec<_>>() {
        return invalid("order must list every vertex once");
    }
    let pos: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut fill = g.clone();
    let mut tree = Graph::new();
    let mut bags = BTreeMap::new();
    for &v in order {
        let later: VertexSet = fill.neighbors(v).iter().copied().filter(|w| pos[w] > pos[&v]).collect();
        add_clique(&mut fill, &later);
        tree.add_vertex(v);
        let mut bag = later.clone();
        bag.insert(v);
        bags.insert(v, bag);
    }
    for &v in order {
        let parent = bags[&v].iter().copied().filter(|w| *w != v).min_by_key(|w| pos[w]);
        // Components finished without a later neighbour join the next root.
        let parent = parent.or_else(|| order.get(pos[&v] + 1).copied());
        if let Some(p) = parent {
            tree.add_edge(v, p);
        }
    }
    let root = order.last().copied();
    Ok(TreeDecomposition { tree, bags, root })
}

/// Whether `torso_at_node == torso_of_set(G, bag)` at every node.
pub fn is_normal(g: &Graph, td: &TreeDecomposition) -> bool {
    td.bags
        .iter()
        .all(|(&t, bag)| torso_at_node(g, td, t).expect("node") == torso_of_set(g, bag))
}

/// Breadth-first order of tree nodes from the root.
pub fn node_order(td: &TreeDecomposition) -> Vec<Vertex> {
    let Some(r) = td.root_node() else {
        return Vec::new();
    };
    let mut seen = VertexSet::from([r]);
    let mut out = vec![r];
    let mut q = VecDeque::from([r]);
    while let Some(t) = q.pop_front() {
        for &u in td.tree.neighbors(t) {
            if seen.insert(u) {
                out.push(u);
                q.push_back(u);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::is_planar_graph;
    use crate::generators::{elementary_wall, grid, satellite_long_jump};

    fn set(xs: &[Vertex]) -> VertexSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn validation_examples() {
        let p = Graph::petersen();
        let one = TreeDecomposition::single_bag(&p);
        assert!(validate_td(&p, &one).0);
        assert_eq!(one.width(), 9);
        assert_eq!(torso_at_node(&p, &one, 0).unwrap(), p);
        let p3 = Graph::path(3);
        let td = TreeDecomposition::path(vec![set(&[0, 1]), set(&[1, 2])]);
        assert!(validate_td(&p3, &td).0);
        assert_eq!(td.width(), 1);
        assert_eq!(td.adhesion(), 1);
        assert_eq!(torso_at_node(&p3, &td, 0).unwrap().m(), 1);
        let bad = TreeDecomposition::path(vec![set(&[0, 1]), set(&[1, 2]), set(&[0, 2])]);
        let (ok, why) = validate_td(&p3, &bad);
        assert!(!ok);
        assert!(why.iter().any(|w| w.contains("vertex 0")), "{why:?}");
    }

    #[test]
    fn normalization_splits_components() {
        // Bag {0,1,4} sees components {2} and {3} through one neighbour, so
        // its node torso gains the edge 01 that its set torso lacks; the
        // neighbour splits into one copy per component.
        let g = Graph::from_edges(5, &[(0, 2), (1, 3), (0, 4)]);
        let td = TreeDecomposition::path(vec![set(&[0, 1, 4]), set(&[0, 1, 2, 3])]);
        assert!(!is_normal(&g, &td));
        let n = normalize_td(&g, &td).unwrap();
        assert!(validate_td(&g, &n).0);
        assert!(is_normal(&g, &n));
        assert!(n.width() <= td.width());
        let mut bags: Vec<VertexSet> = n.bags.values().cloned().collect();
        bags.sort();
        assert_eq!(bags, vec![set(&[0, 1, 4]), set(&[0, 2]), set(&[1, 3])]);
        // Already normal decompositions survive unchanged.
        let p3 = Graph::path(3);
        let td = TreeDecomposition::path(vec![set(&[0, 1]), set(&[1, 2])]);
        assert_eq!(normalize_td(&p3, &td).unwrap(), td);
    }

    #[test]
    fn closure_examples() {
        let b = Budget::default();
        let mut two_k4 = Graph::complete(4);
        for (u, v) in [(0, 4), (1, 4), (0, 5), (1, 5), (4, 5)] {
            two_k4.add_edge(u, v);
        }
        let planar = |h: &Graph| Some(is_planar_graph(h));
        assert!(cc_member(&two_k4, &planar, 6, &b).is_found());
        let small = |k: usize| move |h: &Graph| Some(h.n() <= k);
        let tree = Graph::from_edges(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]);
        let td = cc_member(&tree, &small(2), 6, &b).found().unwrap();
        assert_eq!(td.width(), 1);
        assert!(cc_member(&Graph::complete(5), &small(4), 5, &b).is_absent());
        let size = |h: &Graph| Some(h.n());
        assert_eq!(star_extension(&Graph::cycle(5), &size, &b), Search::Found(3));
        assert_eq!(star_extension(&Graph::complete(5), &size, &b), Search::Found(5));
        assert_eq!(star_extension(&Graph::new(), &size, &b), Search::Found(0));
    }

    #[test]
    fn elimination_decompositions() {
        let g = Graph::petersen();
        let order: Vec<Vertex> = g.vertices().collect();
        let td = td_from_elimination(&g, &order).unwrap();
        assert!(validate_td(&g, &td).0);
        assert!(td.width() >= 4);
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        let td = td_from_elimination(&two, &[0, 1, 2, 3]).unwrap();
        assert!(validate_td(&two, &td).0);
        assert!(td_from_elimination(&two, &[0, 1]).is_err());
    }

    #[test]
    fn exact_treewidth_values() {
        assert_eq!(treewidth_exact(&Graph::path(5)).unwrap(), 1);
        assert_eq!(treewidth_exact(&Graph::cycle(6)).unwrap(), 2);
        assert_eq!(treewidth_exact(&Graph::complete(6)).unwrap(), 5);
        assert_eq!(treewidth_exact(&Graph::petersen()).unwrap(), 4);
        assert_eq!(treewidth_exact(&grid(4, 4).unwrap().graph).unwrap(), 4);
        assert!(treewidth_exact(&Graph::empty(19)).is_err());
    }

    #[test]
    fn separators() {
        let p9 = Graph::path(9);
        let all = p9.vertex_set();
        let s = balanced_separator(&p9, &all, 2.0 / 3.0, 1).unwrap().unwrap();
        assert_eq!(s.len(), 1);
        assert!(p9.components_without(&set(&[4])).iter().all(|c| c.len() <= 6));
        assert!(!is_well_linked(&p9, &all, 1, 2.0 / 3.0).unwrap());
        let k5 = Graph::complete(5);
        assert!(is_well_linked(&k5, &k5.vertex_set(), 1, 2.0 / 3.0).unwrap());
        let g = grid(5, 5).unwrap().graph;
        assert!(is_well_linked(&g, &g.vertex_set(), 2, 2.0 / 3.0).unwrap());
        assert!(balanced_separator(&p9, &all, 0.5, 1).is_err());
    }

    #[test]
    fn wall_tangle() {
        let w = elementary_wall(3, 3).unwrap();
        let g = &w.graph;
        let corner = w.corners()[0];
        let sep = Separation {
            a: set(&[corner]),
            b: g.vertex_set(),
        };
        assert_eq!(tangle_of_wall_orient(&w, &sep).unwrap(), Side::B);
        assert_eq!(tangle_of_wall_orient(&w, &sep.flipped()).unwrap(), Side::A);
        let oracle = TangleOracle {
            order: 3,
            orient: Box::new(|s: &Separation| tangle_of_wall_orient(&w, s)),
        };
        assert!(oracle.verify(g).unwrap());
        let big = Separation {
            a: g.vertex_set(),
            b: g.vertex_set(),
        };
        assert!(tangle_of_wall_orient(&w, &big).is_err());
    }

    #[test]
    fn tight_connectivity() {
        let b = Budget::default();
        let f = |q: usize| (2 * q + 1) * (2 * q + 1);
        assert_eq!(is_tightly_connected(&Graph::path(20), &f, 2, &b), Search::Found(false));
        let s = satellite_long_jump(1).unwrap().graph;
        assert_eq!(is_tightly_connected(&s, &f, 2, &b), Search::Found(true));
        assert_eq!(is_tightly_connected(&Graph::path(20), &f, 0, &b), Search::Found(true));
    }
}
