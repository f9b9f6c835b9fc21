//! Randomized invariants across the library, each against an independent
//! oracle where one exists.

use std::collections::BTreeSet;

use itertools::Itertools;
use proptest::prelude::*;

use pinch::canon::are_isomorphic;
use pinch::decomposition::{
    cc_member, is_normal, normalize_td, td_from_elimination, torso_at_node, treewidth_exact, validate_td,
};
use pinch::embed::{is_edge_apex, is_pinched, is_planar, Certificate};
use pinch::minors::{bidim, find_minor_model, verify_model};
use pinch::ops::{bridges, identify_partition, torso_of_set};
use pinch::params::{self, StarBase, Target};
use pinch::societies::{find_cross, is_rural, Society};
use pinch::{graph6, Budget, Edge, Graph, Vertex, VertexPartition, VertexSet};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Random simple graph on `lo..=hi` vertices labelled `0..n`.
fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges: Vec<Edge> = (0..n)
                .tuple_combinations()
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|((u, v), _)| (u as Vertex, v as Vertex))
                .collect();
            Graph::from_edges(n, &edges)
        })
    })
}

fn subset(g: &Graph, mask: u64) -> VertexSet {
    g.vertices().filter(|v| mask >> (v % 64) & 1 == 1).collect()
}

/// graph6 written directly from the format's bit layout.
fn graph6_reference(n: usize, adj: impl Fn(usize, usize) -> bool) -> String {
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let bits: Vec<bool> = (1..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .map(|(i, j)| adj(i, j))
        .collect();
    for chunk in bits.chunks(6) {
        let mut x = 0u8;
        for k in 0..6 {
            x = x << 1 | chunk.get(k).copied().unwrap_or(false) as u8;
        }
        out.push(x + 63);
    }
    String::from_utf8(out).unwrap()
}

/// Brute force: does some assignment of host vertices to pattern vertices
/// (or to nothing) form a minor model?
fn has_minor_brute(g: &Graph, h: &Graph) -> bool {
    let gv: Vec<Vertex> = g.vertices().collect();
    let hv: Vec<Vertex> = h.vertices().collect();
    let slots = hv.len() + 1;
    let total = slots.pow(gv.len() as u32);
    (0..total).any(|mut code| {
        let mut sets = vec![VertexSet::new(); hv.len()];
        for &v in &gv {
            let s = code % slots;
            code /= slots;
            if s < hv.len() {
                sets[s].insert(v);
            }
        }
        if sets.iter().any(|s| s.is_empty() || !g.is_connected_set(s)) {
            return false;
        }
        h.edges().all(|(x, y)| {
            let (i, j) = (
                hv.iter().position(|&v| v == x).unwrap(),
                hv.iter().position(|&v| v == y).unwrap(),
            );
            sets[i]
                .iter()
                .any(|&a| g.neighbors(a).iter().any(|b| sets[j].contains(b)))
        })
    })
}

fn k33() -> Graph {
    Graph::complete_bipartite(3, 3)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn graph6_matches_reference_and_round_trips(g in graph(0, 9)) {
        let s = graph6::encode(&g);
        prop_assert_eq!(&s, &graph6_reference(g.n(), |i, j| g.has_edge(i as Vertex, j as Vertex)));
        let h = graph6::decode(&s).unwrap();
        prop_assert_eq!(h, g);
    }

    #[test]
    fn graph6_long_header(n in 63usize..80, seed in any::<u64>()) {
        let g = pinch::generators::gnp(n, 0.1, seed).unwrap();
        let s = graph6::encode(&g);
        prop_assert_eq!(&s, &graph6_reference(n, |i, j| g.has_edge(i as Vertex, j as Vertex)));
        prop_assert_eq!(graph6::decode(&s).unwrap(), g);
    }

    #[test]
    fn collapse_order_is_irrelevant(g in graph(2, 8), rgs in prop::collection::vec(0usize..4, 8)) {
        let xs: Vec<Vertex> = g.vertices().collect();
        let groups = xs.iter().zip(&rgs).into_group_map_by(|(_, &label)| label);
        let p = VertexPartition::new(groups.into_values().map(|vs| vs.into_iter().map(|(&v, _)| v).collect()).collect()).unwrap();
        let all = identify_partition(&g, &p).unwrap();
        // Collapse the parts one at a time, last part first.
        let mut h = g.clone();
        for part in p.parts().iter().rev() {
            let single = VertexPartition::new(vec![part.clone()]).unwrap();
            h = identify_partition(&h, &single).unwrap();
        }
        prop_assert!(are_isomorphic(&all, &h));
        prop_assert_eq!(all.n(), p.parts().len());
    }

    #[test]
    fn overlapping_collapses_compose(g in graph(3, 8), a in any::<u64>(), b in any::<u64>()) {
        let s1 = subset(&g, a | 1);
        let s2 = subset(&g, b | 1);
        let once = identify_partition(&g, &VertexPartition::new(vec![s1.union(&s2).copied().collect()]).unwrap()).unwrap();
        let first = identify_partition(&g, &VertexPartition::new(vec![s1.clone()]).unwrap()).unwrap();
        // The merged vertex keeps the lowest id, which is 0 in both sets.
        let s2_after: VertexSet = s2.iter().copied().filter(|v| first.contains(*v)).chain([0]).collect();
        let twice = identify_partition(&first, &VertexPartition::new(vec![s2_after]).unwrap()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn torso_of_everything_is_identity(g in graph(0, 9)) {
        prop_assert_eq!(torso_of_set(&g, &g.vertex_set()), g);
    }

    #[test]
    fn bridges_partition_the_outside_edges(g in graph(2, 9), mask in any::<u64>()) {
        let h = g.induced(&subset(&g, mask));
        let bs = bridges(&g, &h).unwrap();
        let mut seen = BTreeSet::new();
        for b in &bs {
            for e in &b.edges {
                prop_assert!(seen.insert(*e), "edge {:?} in two bridges", e);
            }
            let touched: VertexSet = b.edges.iter().flat_map(|&(u, v)| [u, v]).filter(|v| h.contains(*v)).collect();
            prop_assert_eq!(&touched, &b.attachments);
        }
        let outside: BTreeSet<Edge> = g.edges().filter(|&(u, v)| !h.has_edge(u, v)).collect();
        prop_assert_eq!(seen, outside);
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn minor_search_is_sound_and_complete(g in graph(1, 6), h in graph(1, 4)) {
        let found = find_minor_model(&g, &h, None, &Budget::unlimited()).unwrap();
        prop_assert_eq!(found.is_found(), has_minor_brute(&g, &h));
        if let Some(m) = found.found() {
            prop_assert!(verify_model(&g, &h, &m));
        }
    }

    #[test]
    fn bidim_is_monotone_and_capped(g in graph(2, 8), a in any::<u64>(), b in any::<u64>()) {
        let budget = Budget::default();
        let x = subset(&g, a);
        let x2: VertexSet = x.union(&subset(&g, b)).copied().collect();
        let (m1, m2) = (bidim(&g, &x, &budget).unwrap(), bidim(&g, &x2, &budget).unwrap());
        let (v1, v2) = (m1.bracket.value().unwrap(), m2.bracket.value().unwrap());
        prop_assert!(v1 <= v2);
        prop_assert!(v1 * v1 <= x.len());
        if let Some(m) = m1.witness {
            prop_assert!(m.branchsets.values().all(|s| s.iter().any(|v| x.contains(v))));
        }
    }

    #[test]
    fn planarity_agrees_with_wagner(g in graph(1, 8)) {
        let budget = Budget::unlimited();
        let wagner = !find_minor_model(&g, &Graph::complete(5), None, &budget).unwrap().is_found()
            && !find_minor_model(&g, &k33(), None, &budget).unwrap().is_found();
        let v = is_planar(&g);
        prop_assert_eq!(v.is_yes(), wagner);
        match v.certificate {
            Some(Certificate::Embedding(rot)) => prop_assert_eq!(rot.euler_genus(&g), Some(0)),
            Some(Certificate::Kuratowski(w)) => prop_assert!(w.subgraph().is_subgraph_of(&g)),
            other => prop_assert!(false, "unexpected certificate {:?}", other),
        }
    }

    #[test]
    fn edge_apex_implies_pinched(g in graph(1, 8)) {
        if is_edge_apex(&g).is_yes() {
            prop_assert!(is_pinched(&g).is_yes());
        }
    }

    #[test]
    fn cross_free_iff_rural(g in graph(4, 8), perm in any::<u64>()) {
        let mut omega: Vec<Vertex> = g.vertices().collect();
        let k = 4 + (perm as usize) % (omega.len() - 3);
        let len = omega.len();
        omega.rotate_left((perm >> 8) as usize % len);
        omega.truncate(k);
        let soc = Society::new(g, omega).unwrap();
        prop_assert_eq!(find_cross(&soc).is_none(), is_rural(&soc).is_yes());
    }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn normalization_keeps_validity_and_width(g in graph(1, 9), seed in any::<u64>()) {
        let mut order: Vec<Vertex> = g.vertices().collect();
        let n = order.len();
        for i in 0..n {
            order.swap(i, (seed as usize).wrapping_mul(31).wrapping_add(i * 7) % n);
        }
        let td = td_from_elimination(&g, &order).unwrap();
        let norm = normalize_td(&g, &td).unwrap();
        prop_assert!(validate_td(&g, &norm).0);
        prop_assert!(is_normal(&g, &norm));
        prop_assert!(norm.width() <= td.width());
        // Direct recheck: the torso at each node equals the torso of its bag.
        for (&t, bag) in &norm.bags {
            prop_assert_eq!(torso_at_node(&g, &norm, t).unwrap(), torso_of_set(&g, bag));
        }
    }

    #[test]
    fn star_of_size_is_treewidth_plus_one(g in graph(1, 7)) {
        let r = params::star(&g, StarBase::Size, &Budget::default());
        prop_assert_eq!(r.value.value(), Some(treewidth_exact(&g).unwrap() + 1));
    }

    #[test]
    fn closure_certificates_revalidate(g in graph(1, 8), k in 1usize..5) {
        let pred = move |h: &Graph| Some(h.n() <= k);
        if let Some(td) = cc_member(&g, &pred, g.n(), &Budget::default()).found() {
            prop_assert!(validate_td(&g, &td).0);
            for &t in td.bags.keys() {
                prop_assert!(torso_at_node(&g, &td, t).unwrap().n() <= k);
            }
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn identification_parameters_are_ordered(g in graph(1, 7)) {
        let b = Budget::default();
        let pr = params::idpr(&g, &b).unwrap();
        let pl = params::idpl(&g, &b).unwrap();
        let pd = params::p_delete_planar(&g, &b).unwrap();
        let (pr_v, pl_v, pd_v) = (pr.value.value().unwrap(), pl.value.value().unwrap(), pd.value.value().unwrap());
        prop_assert!(pl_v >= pr_v);
        prop_assert!(pl_v >= pd_v);
        prop_assert!(params::verify_identification_witness(&g, &pr, Target::Projective, &b));
        prop_assert!(params::verify_identification_witness(&g, &pl, Target::Planar, &b));
    }
}
