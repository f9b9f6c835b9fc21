//! Randomized minor embedding by negotiated congestion.
//!
//! Each pattern vertex owns a chain (branchset). Chains are rebuilt one at a
//! time as a root plus shortest paths to the chains of placed neighbours,
//! where shared host vertices cost more each round. A result is returned
//! only after `verify_model` accepts it, so the heuristic never misreports.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::{verify_model, MinorModel};
use crate::graph::{Graph, Vertex, VertexSet};

/// Constraint on where branchsets may be rooted.
#[derive(Debug, Clone)]
pub enum RootRule {
    Free,
    /// Every branchset must meet this set.
    Within(VertexSet),
    /// Pattern vertex -> host vertex its branchset must contain.
    Fixed(BTreeMap<Vertex, Vertex>),
}

const ROUNDS: usize = 40;

/// Tries `tries` seeded restarts; returns a verified model or `None`.
pub fn find_minor_heuristic(g: &Graph, h: &Graph, rule: &RootRule, seed: u64, tries: usize) -> Option<MinorModel> {
    if h.n() == 0 || h.n() > g.n() || h.m() > g.m() {
        return None;
    }
    let (adj, ids) = g.dense();
    let index: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let pv: Vec<Vertex> = h.vertices().collect();
    let pidx: BTreeMap<Vertex, usize> = pv.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let padj: Vec<Vec<usize>> = pv
        .iter()
        .map(|v| h.neighbors(*v).iter().map(|w| pidx[w]).collect())
        .collect();
    let n = ids.len();
    let candidates: Vec<Vec<usize>> = pv
        .iter()
        .map(|x| match rule {
            RootRule::Free => (0..n).collect(),
            RootRule::Within(set) => set.iter().filter_map(|v| index.get(v).copied()).collect(),
            RootRule::Fixed(map) => map.get(x).and_then(|v| index.get(v)).into_iter().copied().collect(),
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let roots = match rule {
        RootRule::Within(set) => Some(set.clone()),
        RootRule::Fixed(map) => Some(map.values().copied().collect()),
        RootRule::Free => None,
    };
    let ctx = Ctx {
        adj: &adj,
        padj: &padj,
        candidates: &candidates,
    };
    for t in 0..tries as u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
        let Some(chains) = ctx.attempt(&mut rng) else {
            continue;
        };
        let mut model = MinorModel::new(
            pv.iter()
                .zip(&chains)
                .map(|(&x, c)| (x, c.iter().map(|&i| ids[i]).collect()))
                .collect(),
        );
        if let Some(r) = &roots {
            model = model.rooted(r.clone());
        }
        if verify_model(g, h, &model) {
            return Some(model);
        }
    }
    None
}

struct Ctx<'a> {
    adj: &'a [Vec<usize>],
    padj: &'a [Vec<usize>],
    candidates: &'a [Vec<usize>],
}

#[derive(PartialEq)]
struct Item(f64, usize);

impl Eq for Item {}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl Ctx<'_> {
    fn attempt(&self, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<usize>>> {
        let n = self.adj.len();
        let k = self.padj.len();
        let mut chains: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut occ = vec![0u32; n];
        let mut history = vec![0.0f64; n];
        let mut pressure = 1.0f64;
        // Fixed roots are pre-placed so other chains avoid them early.
        for (x, c) in self.candidates.iter().enumerate() {
            if c.len() == 1 {
                chains[x] = vec![c[0]];
                occ[c[0]] += 1;
            }
        }
        let mut order: Vec<usize> = (0..k).collect();
        for _ in 0..ROUNDS {
            order.shuffle(rng);
            for &x in &order {
                for &v in &chains[x] {
                    occ[v] -= 1;
                }
                let cost: Vec<f64> = (0..n)
                    .map(|v| (1.0 + history[v]) * (1.0 + pressure * f64::from(occ[v])))
                    .collect();
                chains[x] = self.route(x, &chains, &cost, rng);
                for &v in &chains[x] {
                    occ[v] += 1;
                }
            }
            if occ.iter().all(|&o| o <= 1) && chains.iter().all(|c| !c.is_empty()) {
                return Some(chains);
            }
            for v in 0..n {
                if occ[v] > 1 {
                    history[v] += f64::from(occ[v] - 1);
                }
            }
            pressure *= 1.6;
        }
        None
    }

    /// New chain for `x`: the cheapest root joined by shortest paths to
    /// every placed neighbour chain.
    fn route(&self, x: usize, chains: &[Vec<usize>], cost: &[f64], rng: &mut ChaCha8Rng) -> Vec<usize> {
        let n = self.adj.len();
        let placed: Vec<usize> = self.padj[x]
            .iter()
            .copied()
            .filter(|&y| !chains[y].is_empty())
            .collect();
        let trees: Vec<(Vec<f64>, Vec<usize>)> = placed.iter().map(|&y| self.dijkstra(&chains[y], cost)).collect();
        let mut best: Option<(f64, usize)> = None;
        for &r in &self.candidates[x] {
            let mut score = cost[r];
            for (dist, _) in &trees {
                let d = dist[r];
                if !d.is_finite() {
                    score = f64::INFINITY;
                    break;
                }
                // `dist` counts the endpoint; the root is already paid for.
                score += if d > 0.0 { d - cost[r] } else { 0.0 };
            }
            // Random jitter breaks ties between equivalent roots.
            score += rng.gen::<f64>() * 1e-6;
            if best.is_none_or(|(b, _)| score < b) {
                best = Some((score, r));
            }
        }
        let Some((score, root)) = best else {
            return Vec::new();
        };
        if !score.is_finite() {
            return vec![root];
        }
        let mut chain = vec![root];
        let mut inside = vec![false; n];
        inside[root] = true;
        for (dist, parent) in &trees {
            let mut v = root;
            while dist[v] > 0.0 {
                let p = parent[v];
                if dist[p] == 0.0 {
                    break;
                }
                if !inside[p] {
                    inside[p] = true;
                    chain.push(p);
                }
                v = p;
            }
        }
        chain
    }

    /// Vertex-weighted shortest paths from `sources` (distance 0); `dist[v]`
    /// includes `cost[v]` for non-sources.
    fn dijkstra(&self, sources: &[usize], cost: &[f64]) -> (Vec<f64>, Vec<usize>) {
        let n = self.adj.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut parent = vec![usize::MAX; n];
        let mut heap = BinaryHeap::new();
        for &s in sources {
            dist[s] = 0.0;
            parent[s] = s;
            heap.push(Item(0.0, s));
        }
        while let Some(Item(d, u)) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &w in &self.adj[u] {
                let nd = d + cost[w];
                if nd < dist[w] {
                    dist[w] = nd;
                    parent[w] = u;
                    heap.push(Item(nd, w));
                }
            }
        }
        (dist, parent)
    }
}
