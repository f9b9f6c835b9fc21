//! Regenerates `data/projective_obstructions.g6` by minimizing random
//! non-projective graphs and collecting the distinct minor-minimal results.
//!
//! Usage: `cargo run --release -p pinch --example obstruction_search -- [OUT] [ROUNDS]`

use std::collections::BTreeMap;

use pinch::canon::{canonical_form, CanonForm};
use pinch::embed::{is_minimal_nonprojective, minimal_nonprojective_minor};
use pinch::generators::gnp;
use pinch::graph6;
use pinch::obstructions::checksum;
use pinch::ops::identify_pair;
use pinch::{Budget, Graph, Search, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn seeds() -> Vec<Graph> {
    let k5 = Graph::complete(5);
    let k33 = Graph::complete_bipartite(3, 3);
    let mut out = Vec::new();
    let mut d17 = Graph::complete(7);
    for i in 0..4 {
        d17.remove_edge(i, (i + 1) % 4);
    }
    out.push(d17);
    out.push(Graph::complete_bipartite(3, 5));
    out.push(Graph::complete_bipartite(4, 4).without_edge(0, 4));
    let mut k45 = Graph::complete_bipartite(4, 5);
    for i in 0..4 {
        k45.remove_edge(i, 4 + i);
    }
    out.push(k45);
    let mut k1222 = Graph::complete(7);
    for (u, v) in [(1, 2), (3, 4), (5, 6)] {
        k1222.remove_edge(u, v);
    }
    out.push(k1222);
    for (a, b) in [(&k5, &k5), (&k5, &k33), (&k33, &k33)] {
        let u = a.disjoint_union(b);
        out.push(u.clone());
        out.push(identify_pair(&u, 0, a.n() as Vertex).expect("distinct vertices"));
    }
    out
}

fn glued(rng: &mut ChaCha8Rng) -> Graph {
    let pick = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.5) {
            Graph::complete(5)
        } else {
            Graph::complete_bipartite(3, 3)
        }
    };
    let a = pick(rng);
    let b = pick(rng);
    let mut g = a.disjoint_union(&b);
    let shared = rng.gen_range(0..=3);
    let mut used = Vec::new();
    for _ in 0..shared {
        let x = rng.gen_range(0..a.n() as Vertex);
        let y = rng.gen_range(a.n() as Vertex..(a.n() + b.n()) as Vertex);
        if used.contains(&x) || used.contains(&y) || !g.contains(x) || !g.contains(y) {
            continue;
        }
        used.push(x);
        used.push(y);
        g = identify_pair(&g, x, y).expect("distinct vertices");
    }
    for _ in 0..rng.gen_range(0..3) {
        let es: Vec<_> = g.edges().collect();
        let (u, v) = es[rng.gen_range(0..es.len())];
        g.remove_edge(u, v);
    }
    let vs: Vec<Vertex> = g.vertices().collect();
    for _ in 0..rng.gen_range(0..6) {
        let u = vs[rng.gen_range(0..vs.len())];
        let v = vs[rng.gen_range(0..vs.len())];
        if u != v {
            g.add_edge(u, v);
        }
    }
    // Subdivide a few edges so contractions have room to act.
    for _ in 0..rng.gen_range(0..4) {
        let es: Vec<_> = g.edges().collect();
        let (u, v) = es[rng.gen_range(0..es.len())];
        let w = g.fresh_vertex();
        g.remove_edge(u, v);
        g.add_edge(u, w);
        g.add_edge(w, v);
        let x = vs[rng.gen_range(0..vs.len())];
        if x != w {
            g.add_edge(w, x);
        }
    }
    g
}

fn random_bipartite(rng: &mut ChaCha8Rng) -> Graph {
    let a = rng.gen_range(3..=6);
    let b = rng.gen_range(3..=7);
    let p = rng.gen_range(0.5..0.95);
    let mut g = Graph::empty(a + b);
    for u in 0..a as Vertex {
        for v in a as Vertex..(a + b) as Vertex {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    // A few extra edges inside the sides.
    for _ in 0..rng.gen_range(0..3) {
        let u = rng.gen_range(0..(a + b) as Vertex);
        let v = rng.gen_range(0..(a + b) as Vertex);
        if u != v {
            g.add_edge(u, v);
        }
    }
    g
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let out_path = args
        .get(1)
        .cloned()
        .unwrap_or_else(|| "data/projective_obstructions.g6".into());
    let rounds: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let budget = Budget::unlimited();
    let mut found: BTreeMap<CanonForm, Graph> = BTreeMap::new();
    let consider = |g: &Graph, found: &mut BTreeMap<CanonForm, Graph>| {
        if let Search::Found((h, _)) = minimal_nonprojective_minor(g, &budget) {
            let (h, _) = h.compact();
            let f = canonical_form(&h);
            if !found.contains_key(&f) {
                eprintln!("new #{}: n={} m={}", found.len() + 1, h.n(), h.m());
                found.insert(f, h);
            }
        }
    };
    for g in seeds() {
        consider(&g, &mut found);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b57);
    for round in 0..rounds {
        if found.len() >= 35 && round > rounds / 4 {
            break;
        }
        let kind = rng.gen_range(0..3);
        let g = if kind == 0 {
            random_bipartite(&mut rng)
        } else if kind == 1 {
            let n = rng.gen_range(7..=12);
            let p = rng.gen_range(0.3..0.75);
            gnp(n, p, rng.gen()).expect("valid probability")
        } else {
            glued(&mut rng)
        };
        consider(&g, &mut found);
    }
    let mut graphs: Vec<Graph> = found.into_values().collect();
    graphs.sort_by_key(|g| (g.m(), g.n(), graph6::encode(g)));
    for g in &graphs {
        assert!(is_minimal_nonprojective(g), "non-minimal entry {}", graph6::encode(g));
    }
    let lines: Vec<String> = graphs.iter().map(graph6::encode).collect();
    let mut text = String::from(
        "# Minor-minimal graphs not embeddable in the projective plane, in graph6.\n\
         # Sorted by edge count, then order, then graph6 string.\n",
    );
    let d17 = canonical_form(&seeds()[0]);
    for (l, g) in lines.iter().zip(&graphs) {
        if canonical_form(g) == d17 {
            text.push_str("# D17: K7 minus a 4-cycle.\n");
        }
        text.push_str(l);
        text.push('\n');
    }
    text.push_str(&format!("# sha256:{}\n", checksum(lines.iter().map(String::as_str))));
    std::fs::write(&out_path, text).expect("write output");
    eprintln!("wrote {} graphs to {out_path}", graphs.len());
}
