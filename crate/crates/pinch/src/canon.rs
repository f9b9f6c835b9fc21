//! Canonical forms by colour refinement plus individualization.
//!
//! Pruning: twins inside the branching cell are explored once, and at the
//! root, vertices in the orbit of an explored vertex under discovered
//! automorphisms are skipped.

use std::collections::BTreeMap;

use crate::graph::{Graph, Vertex};

/// Isomorphism-invariant code of a (vertex-coloured) graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonForm {
    pub n: usize,
    pub colors: Vec<u32>,
    pub bits: Vec<u64>,
}

/// Canonical form together with the labelling that produced it:
/// `order[i]` is the vertex placed at canonical position `i`.
#[derive(Debug, Clone)]
pub struct Canon {
    pub form: CanonForm,
    pub order: Vec<Vertex>,
}

pub fn canonical_form(g: &Graph) -> CanonForm {
    canon(g, |_| 0).form
}

pub fn canonical_form_colored(g: &Graph, color: impl Fn(Vertex) -> u32) -> CanonForm {
    canon(g, color).form
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.m() == h.m() && canonical_form(g) == canonical_form(h)
}

/// Maps each vertex of `g` to a vertex of `h` preserving adjacency, if any.
pub fn isomorphism(g: &Graph, h: &Graph) -> Option<BTreeMap<Vertex, Vertex>> {
    if g.n() != h.n() || g.m() != h.m() {
        return None;
    }
    let cg = canon(g, |_| 0);
    let ch = canon(h, |_| 0);
    (cg.form == ch.form).then(|| cg.order.iter().copied().zip(ch.order.iter().copied()).collect())
}

pub fn canon(g: &Graph, color: impl Fn(Vertex) -> u32) -> Canon {
    let (adj, ids) = g.dense();
    let n = ids.len();
    let words = n.div_ceil(64).max(1);
    let mut rows = vec![vec![0u64; words]; n];
    for (u, ns) in adj.iter().enumerate() {
        for &w in ns {
            rows[u][w / 64] |= 1 << (w % 64);
        }
    }
    let user: Vec<u32> = ids.iter().map(|&v| color(v)).collect();
    let mut keyed: Vec<u32> = user.clone();
    keyed.sort_unstable();
    keyed.dedup();
    let init: Vec<u32> = user
        .iter()
        .map(|c| keyed.binary_search(c).expect("present") as u32)
        .collect();
    let mut s = Searcher {
        adj: &adj,
        rows: &rows,
        best: None,
        autos: Vec::new(),
    };
    let start = refine(&adj, init);
    s.search(start, 0);
    let (bits, perm) = s.best.expect("at least one leaf");
    let order: Vec<Vertex> = perm.iter().map(|&i| ids[i]).collect();
    let colors_in_order: Vec<u32> = perm.iter().map(|&i| user[i]).collect();
    Canon {
        form: CanonForm {
            n,
            colors: colors_in_order,
            bits,
        },
        order,
    }
}

/// Colour refinement to a stable partition; colours are dense ranks and the
/// ordering of new classes depends only on invariant data.
fn refine(adj: &[Vec<usize>], mut col: Vec<u32>) -> Vec<u32> {
    let n = adj.len();
    let mut classes = count_classes(&col);
    loop {
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut ns: Vec<u32> = adj[v].iter().map(|&w| col[w]).collect();
                ns.sort_unstable();
                (col[v], ns, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut next = vec![0u32; n];
        let mut rank = 0u32;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                rank += 1;
            }
            next[sigs[i].2] = rank;
        }
        let k = if n == 0 { 0 } else { rank as usize + 1 };
        col = next;
        if k == classes {
            return col;
        }
        classes = k;
    }
}

fn count_classes(col: &[u32]) -> usize {
    let mut c: Vec<u32> = col.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Searcher<'a> {
    adj: &'a [Vec<usize>],
    rows: &'a [Vec<u64>],
    best: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Searcher<'_> {
    fn search(&mut self, col: Vec<u32>, depth: usize) {
        let n = col.len();
        let mut cells: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (v, &c) in col.iter().enumerate() {
            cells.entry(c).or_default().push(v);
        }
        let target = cells.values().filter(|c| c.len() > 1).min_by_key(|c| c.len()).cloned();
        let Some(cell) = target else {
            let mut perm = vec![0usize; n];
            for (v, &c) in col.iter().enumerate() {
                perm[c as usize] = v;
            }
            self.leaf(perm);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if explored.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            if depth == 0 && explored.iter().any(|&u| self.same_orbit(u, v)) {
                continue;
            }
            explored.push(v);
            let ind: Vec<u32> = col
                .iter()
                .enumerate()
                .map(|(u, &c)| 2 * c + u32::from(u != v))
                .collect();
            let next = refine(self.adj, ind);
            self.search(next, depth + 1);
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        let (ru, rv) = (&self.rows[u], &self.rows[v]);
        ru.iter().zip(rv).enumerate().all(|(i, (&a, &b))| {
            let mut mask = !0u64;
            if u / 64 == i {
                mask &= !(1 << (u % 64));
            }
            if v / 64 == i {
                mask &= !(1 << (v % 64));
            }
            a & mask == b & mask
        })
    }

    fn same_orbit(&self, u: usize, v: usize) -> bool {
        // Closure of u under the generators found so far.
        let mut seen = vec![false; self.adj.len()];
        seen[u] = true;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            if x == v {
                return true;
            }
            for a in &self.autos {
                let y = a[x];
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    fn leaf(&mut self, perm: Vec<usize>) {
        let n = perm.len();
        let total = n * n.saturating_sub(1) / 2;
        let mut bits = vec![0u64; total.div_ceil(64)];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.rows[perm[i]][perm[j] / 64] >> (perm[j] % 64) & 1 == 1 {
                    bits[k / 64] |= 1 << (k % 64);
                }
                k += 1;
            }
        }
        match &self.best {
            None => self.best = Some((bits, perm)),
            Some((b, p)) => {
                if &bits == b {
                    // perm ∘ p⁻¹ is an automorphism.
                    let mut auto = vec![0usize; n];
                    for i in 0..n {
                        auto[p[i]] = perm[i];
                    }
                    self.autos.push(auto);
                } else if &bits > b {
                    self.best = Some((bits, perm));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_graphs_share_forms() {
        let g = Graph::petersen();
        let h = g.relabel(|v| (v * 7 + 3) % 10 + 100);
        assert!(are_isomorphic(&g, &h));
        let map = isomorphism(&g, &h).unwrap();
        for (u, v) in g.edges() {
            assert!(h.has_edge(map[&u], map[&v]));
        }
    }

    #[test]
    fn distinguishes_nonisomorphic() {
        assert!(!are_isomorphic(
            &Graph::cycle(6),
            &Graph::cycle(3).disjoint_union(&Graph::cycle(3))
        ));
        assert!(!are_isomorphic(&Graph::complete_bipartite(3, 3), &Graph::cycle(6)));
    }

    #[test]
    fn colours_matter() {
        let g = Graph::path(3);
        let a = canonical_form_colored(&g, |v| u32::from(v == 0));
        let b = canonical_form_colored(&g, |v| u32::from(v == 1));
        let c = canonical_form_colored(&g, |v| u32::from(v == 2));
        assert_ne!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn symmetric_graphs_terminate() {
        for g in [Graph::complete(9), Graph::empty(12), Graph::complete_bipartite(5, 6)] {
            let h = g.relabel(|v| 50 - v);
            assert!(are_isomorphic(&g, &h));
        }
    }
}
