//! Exact (rooted) minor search.
//!
//! `H` is a minor of `G` iff `H` is a subgraph of some contraction of `G`,
//! so the search walks contraction states, memoized by coloured canonical
//! form, and tests subgraph containment at each state. In rooted mode a
//! contracted vertex is coloured as a root iff its branchset meets `X`, and
//! pattern vertices may only land on root-coloured vertices.

use std::collections::{BTreeMap, HashSet};

use super::heuristic::{find_minor_heuristic, RootRule};
use super::model::{verify_model, MinorModel};
use crate::budget::{Budget, Meter, Search};
use crate::canon::{canonical_form_colored, CanonForm};
use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Searches for a model of `h` in `g`, rooted at `roots` when given.
/// `Unknown` means the budget ran out before the search completed.
pub fn find_minor_model(
    g: &Graph,
    h: &Graph,
    roots: Option<&VertexSet>,
    budget: &Budget,
) -> Result<Search<MinorModel>> {
    if let Some(x) = roots {
        if !x.is_subset(&g.vertex_set()) {
            return invalid("root set is not a subset of the host vertices");
        }
    }
    let attach = |m: MinorModel| match roots {
        Some(x) => m.rooted(x.clone()),
        None => m,
    };
    if h.n() == 0 {
        return Ok(Search::Found(attach(MinorModel::new(BTreeMap::new()))));
    }
    let available = roots.map_or(g.n(), |x| x.len());
    if h.n() > g.n() || h.m() > g.m() || h.n() > available {
        return Ok(Search::Absent);
    }
    let rule = match roots {
        Some(x) => RootRule::Within(x.clone()),
        None => RootRule::Free,
    };
    if let Some(m) = find_minor_heuristic(g, h, &rule, budget.seed, 2) {
        return Ok(Search::Found(m));
    }
    let meter = budget.meter();
    let mut search = Contractor {
        h,
        rooted_mode: roots.is_some(),
        min_degree: h.vertices().map(|v| h.degree(v)).min().unwrap_or(0),
        meter: &meter,
        seen: HashSet::new(),
        found: None,
    };
    let start = State {
        g: g.clone(),
        roots: roots.cloned().unwrap_or_else(|| g.vertex_set()),
        branch: g.vertices().map(|v| (v, VertexSet::from([v]))).collect(),
    };
    Ok(match search.run(start) {
        Some(true) => {
            let m = attach(search.found.expect("recorded with success"));
            debug_assert!(verify_model(g, h, &m));
            Search::Found(m)
        }
        Some(false) => Search::Absent,
        None => Search::Unknown,
    })
}

#[derive(Clone)]
struct State {
    g: Graph,
    /// Vertices whose branchset meets the root set (all, in unrooted mode).
    roots: VertexSet,
    branch: BTreeMap<Vertex, VertexSet>,
}

impl State {
    fn merge(&mut self, keep_hint: Vertex, gone_hint: Vertex) {
        let rooted = self.roots.contains(&keep_hint) || self.roots.contains(&gone_hint);
        let keep = self.g.contract(keep_hint, gone_hint);
        let gone = if keep == keep_hint { gone_hint } else { keep_hint };
        self.roots.remove(&gone);
        if rooted {
            self.roots.insert(keep);
        }
        let moved = self.branch.remove(&gone).unwrap_or_default();
        self.branch.get_mut(&keep).expect("tracked").extend(moved);
    }

    fn delete(&mut self, v: Vertex) {
        self.g.remove_vertex(v);
        self.roots.remove(&v);
        self.branch.remove(&v);
    }
}

struct Contractor<'a> {
    h: &'a Graph,
    rooted_mode: bool,
    min_degree: usize,
    meter: &'a Meter,
    seen: HashSet<CanonForm>,
    found: Option<MinorModel>,
}

impl Contractor<'_> {
    /// Applies reductions that preserve the existence of a model: low-degree
    /// non-root vertices cannot be singleton branchsets, and vertices of
    /// degree below the pattern's minimum degree cannot either.
    fn reduce(&self, s: &mut State) {
        loop {
            let mut changed = false;
            let vs: Vec<Vertex> = s.g.vertices().collect();
            for v in vs {
                if !s.g.contains(v) {
                    continue;
                }
                let nonroot = !s.roots.contains(&v);
                let ns: Vec<Vertex> = s.g.neighbors(v).iter().copied().collect();
                match ns.len() {
                    0 if nonroot || self.min_degree >= 1 => s.delete(v),
                    1 if nonroot => s.delete(v),
                    1 if self.min_degree >= 2 => s.merge(ns[0], v),
                    // Contracting into either neighbour yields `G - v + ab`.
                    2 if nonroot || (!self.rooted_mode && self.min_degree >= 3) => s.merge(ns[0], v),
                    _ => continue,
                }
                changed = true;
            }
            if !changed {
                return;
            }
        }
    }

    fn run(&mut self, mut s: State) -> Option<bool> {
        if !self.meter.tick() {
            return None;
        }
        self.reduce(&mut s);
        if s.g.n() < self.h.n() || s.g.m() < self.h.m() || s.roots.len() < self.h.n() {
            return Some(false);
        }
        let key = canonical_form_colored(&s.g, |v| u32::from(s.roots.contains(&v)));
        if !self.seen.insert(key) {
            return Some(false);
        }
        if let Some(phi) = subgraph_embedding(self.h, &s.g, &s.roots, self.meter)? {
            let model = phi.iter().map(|(&x, v)| (x, s.branch[v].clone())).collect();
            self.found = Some(MinorModel::new(model));
            return Some(true);
        }
        if s.g.n() == self.h.n() {
            return Some(false);
        }
        let mut edges: Vec<(usize, Vertex, Vertex)> =
            s.g.edges()
                .map(|(u, v)| (s.g.degree(u) + s.g.degree(v), u, v))
                .collect();
        edges.sort_unstable();
        for (_, u, v) in edges {
            // Contracting loses the edge itself plus one per common neighbour.
            let lost = 1 + s.g.neighbors(u).intersection(s.g.neighbors(v)).count();
            if s.g.m() - lost < self.h.m() {
                continue;
            }
            let mut next = s.clone();
            next.merge(u, v);
            if self.run(next)? {
                return Some(true);
            }
        }
        Some(false)
    }
}

/// Injective map from `h` into `allowed` vertices of `g` preserving edges.
/// `None` when the budget runs out.
pub(crate) fn subgraph_embedding(
    h: &Graph,
    g: &Graph,
    allowed: &VertexSet,
    meter: &Meter,
) -> Option<Option<BTreeMap<Vertex, Vertex>>> {
    let (gadj, gids) = g.dense();
    let n = gids.len();
    let words = n.div_ceil(64).max(1);
    let mut rows = vec![vec![0u64; words]; n];
    for (u, ns) in gadj.iter().enumerate() {
        for &w in ns {
            rows[u][w / 64] |= 1 << (w % 64);
        }
    }
    let mut allowed_bits = vec![0u64; words];
    for (i, v) in gids.iter().enumerate() {
        if allowed.contains(v) {
            allowed_bits[i / 64] |= 1 << (i % 64);
        }
    }
    let gdeg: Vec<usize> = gadj.iter().map(Vec::len).collect();

    // Pattern order: each vertex has as many earlier neighbours as possible.
    let hv: Vec<Vertex> = h.vertices().collect();
    let mut order: Vec<Vertex> = Vec::with_capacity(hv.len());
    let mut placed = VertexSet::new();
    while order.len() < hv.len() {
        let next = hv
            .iter()
            .filter(|v| !placed.contains(v))
            .max_by_key(|&&v| (h.neighbors(v).intersection(&placed).count(), h.degree(v)))
            .copied()
            .expect("unplaced vertex");
        placed.insert(next);
        order.push(next);
    }
    let pos: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let back: Vec<Vec<usize>> = order
        .iter()
        .map(|v| h.neighbors(*v).iter().map(|w| pos[w]).filter(|&j| j < pos[v]).collect())
        .collect();
    let need: Vec<usize> = order.iter().map(|&v| h.degree(v)).collect();

    struct Ctx<'a> {
        rows: &'a [Vec<u64>],
        allowed: &'a [u64],
        gdeg: &'a [usize],
        back: &'a [Vec<usize>],
        need: &'a [usize],
        meter: &'a Meter,
    }
    fn extend(c: &Ctx<'_>, i: usize, img: &mut Vec<usize>, used: &mut [u64]) -> Option<bool> {
        if i == c.back.len() {
            return Some(true);
        }
        if !c.meter.tick() {
            return None;
        }
        let mut cand: Vec<u64> = c.allowed.iter().zip(used.iter()).map(|(a, u)| a & !u).collect();
        for &j in &c.back[i] {
            for (w, r) in cand.iter_mut().zip(&c.rows[img[j]]) {
                *w &= r;
            }
        }
        for (wi, &word) in cand.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let v = wi * 64 + b;
                if c.gdeg[v] < c.need[i] {
                    continue;
                }
                img.push(v);
                used[wi] |= 1 << b;
                if extend(c, i + 1, img, used)? {
                    return Some(true);
                }
                used[wi] &= !(1 << b);
                img.pop();
            }
        }
        Some(false)
    }
    let ctx = Ctx {
        rows: &rows,
        allowed: &allowed_bits,
        gdeg: &gdeg,
        back: &back,
        need: &need,
        meter,
    };
    let mut img = Vec::with_capacity(order.len());
    let mut used = vec![0u64; words];
    if !extend(&ctx, 0, &mut img, &mut used)? {
        return Some(None);
    }
    Some(Some(order.iter().zip(&img).map(|(&x, &i)| (x, gids[i])).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::grid;

    #[test]
    fn spec_examples() {
        let b = Budget::default();
        let k3 = Graph::complete(3);
        let m = find_minor_model(&Graph::cycle(5), &k3, None, &b)
            .unwrap()
            .found()
            .unwrap();
        assert!(verify_model(&Graph::cycle(5), &k3, &m));
        let p = Graph::petersen();
        assert!(find_minor_model(&p, &Graph::complete(4), None, &b).unwrap().is_found());
        assert!(find_minor_model(&p, &Graph::complete(5), None, &b).unwrap().is_found());
        assert!(find_minor_model(&p, &Graph::complete(6), None, &b).unwrap().is_absent());
        assert!(
            find_minor_model(&Graph::complete_bipartite(3, 3), &Graph::complete(5), None, &b)
                .unwrap()
                .is_absent()
        );
    }

    #[test]
    fn rooted_search_respects_roots() {
        let b = Budget::default();
        // A path rooted at its two ends has K2 but not K3 as a rooted minor.
        let p = Graph::path(5);
        let x = VertexSet::from([0, 4]);
        let m = find_minor_model(&p, &Graph::complete(2), Some(&x), &b)
            .unwrap()
            .found()
            .unwrap();
        assert!(verify_model(&p, &Graph::complete(2), &m));
        let c = Graph::cycle(6);
        assert!(find_minor_model(&c, &Graph::complete(3), Some(&x), &b)
            .unwrap()
            .is_absent());
        let g = grid(3, 3).unwrap().graph;
        let corners = VertexSet::from([0, 2, 6, 8]);
        assert!(find_minor_model(&g, &Graph::cycle(4), Some(&corners), &b)
            .unwrap()
            .is_found());
    }

    #[test]
    fn tiny_budget_reports_unknown() {
        let b = Budget::nodes(3);
        let g = grid(4, 4).unwrap().graph;
        let r = find_minor_model(&g, &Graph::complete(5), None, &b).unwrap();
        assert_eq!(r, Search::Unknown);
    }
}
