//! Reproducible verification runs: each run samples or enumerates cases,
//! checks a quantitative claim, and reports violations with certificates.

use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Search};
use crate::canon::{are_isomorphic, canonical_form, canonical_form_colored};
use crate::decomposition::{
    is_normal, is_tightly_connected, normalize_td, td_from_elimination, treewidth_exact, validate_td, TreeDecomposition,
};
use crate::embed::{
    edge_apex_supergraph, is_edge_apex, is_pinched, is_planar, is_planar_graph, is_projective,
    neighborhood_class_count, Certificate,
};
use crate::error::{invalid, Result};
use crate::generators::{gnp, grid, grid_zoo, jprime, long_jump_grid, satellite_long_jump, LabeledGrid, ZooFamily};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::graph6;
use crate::minors::{
    find_minor_heuristic, find_minor_model, hadwiger, rooted_grid_in_grid, verify_model, MinorModel, RootRule,
};
use crate::ops::{identify_pair, identify_partition, Separation};
use crate::params::{bound_f67, idpl, idpr, star, verify_lemma_6_3, StarBase};
use crate::partition::VertexPartition;
use crate::societies::{
    classify_transaction, erdos_szekeres_extract, find_cross, is_rural, Society, Transaction, TransactionType,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateBody {
    MinorModel {
        host: String,
        guest: String,
        model: MinorModel,
    },
    TreeDecomposition {
        graph: String,
        decomposition: TreeDecomposition,
    },
    PartitionWitness {
        graph: String,
        x: VertexSet,
        partition: Option<VertexPartition>,
    },
    Embedding {
        graph: String,
        certificate: Certificate,
    },
    Separation {
        graph: String,
        separation: Separation,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledCertificate {
    pub label: String,
    pub body: CertificateBody,
}

/// Outcome is `fail` on any violation, else `unknown` if any case was
/// undecided within budget, else `pass`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub outcome: Outcome,
    pub checked: usize,
    pub undecided: usize,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
    pub certificates: Vec<LabeledCertificate>,
}

impl Report {
    fn new(id: &str) -> Self {
        Report {
            id: id.to_string(),
            outcome: Outcome::Pass,
            checked: 0,
            undecided: 0,
            violations: Vec::new(),
            notes: Vec::new(),
            certificates: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }

    fn finish(mut self) -> Self {
        self.outcome = if !self.violations.is_empty() {
            Outcome::Fail
        } else if self.undecided > 0 {
            Outcome::Unknown
        } else {
            Outcome::Pass
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

/// Knobs shared by all runs; `None` picks the run's default scale.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub k: Option<usize>,
    pub r: Option<usize>,
    pub samples: Option<usize>,
    pub budget: Budget,
}

pub const IDS: [&str; 12] = [
    "3.5",
    "5.3",
    "5.4",
    "6.1",
    "6.3",
    "6.6",
    "6.7",
    "P3.1",
    "P3.2",
    "P6.2",
    "O1.1",
    "TW-identity",
];

pub fn run(id: &str, o: &RunOptions) -> Result<Report> {
    let seed = o.budget.seed;
    let n = |d: usize| o.samples.unwrap_or(d);
    match id {
        "3.5" => lemma_3_5(o.k.unwrap_or(1), o.r.unwrap_or(2), &o.budget),
        "5.3" => lemma_5_3(n(200), 10, seed),
        "5.4" => lemma_5_4(n(200), 12, seed),
        "6.1" => lemma_6_1(n(300), 8, &o.budget),
        "6.3" => lemma_6_3(o.k.unwrap_or(2), n(20), &o.budget),
        "6.6" => lemma_6_6(n(100), 8, &o.budget),
        "6.7" => lemma_6_7(o.k.unwrap_or(3), &o.budget),
        "P3.1" => prop_3_1(6, n(1000), 9, seed),
        "P3.2" => prop_3_2(o.r.unwrap_or(4)),
        "P6.2" => prop_6_2(&[9, 13], n(50), seed),
        "O1.1" => obs_1_1(n(200), seed),
        "TW-identity" => tw_identity(6, n(100), 7, &o.budget),
        _ => invalid(format!("unknown lemma id {id:?}; expected one of {}", IDS.join(", "))),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_graph(rng: &mut ChaCha8Rng, n_lo: usize, n_hi: usize) -> Graph {
    let n = rng.gen_range(n_lo..=n_hi);
    let p = rng.gen_range(0.2..0.9);
    gnp(n, p, rng.gen()).expect("valid gnp arguments")
}

fn random_partition(rng: &mut ChaCha8Rng, xs: &[Vertex]) -> VertexPartition {
    let mut rgs = Vec::with_capacity(xs.len());
    let mut blocks = 0;
    for _ in xs {
        let b = rng.gen_range(0..=blocks);
        if b == blocks {
            blocks += 1;
        }
        rgs.push(b);
    }
    VertexPartition::from_rgs(xs, &rgs)
}

/// A random minor by a random sequence of edge deletions, vertex
/// deletions and edge contractions.
pub fn random_minor(rng: &mut ChaCha8Rng, g: &Graph) -> Graph {
    let mut h = g.clone();
    for _ in 0..rng.gen_range(0..=g.n()) {
        let edges: Vec<_> = h.edges().collect();
        match rng.gen_range(0..3) {
            0 if !edges.is_empty() => {
                let (u, v) = *edges.choose(rng).expect("nonempty");
                h.remove_edge(u, v);
            }
            1 if h.n() > 1 => {
                let vs: Vec<Vertex> = h.vertices().collect();
                h.remove_vertex(*vs.choose(rng).expect("nonempty"));
            }
            _ if !edges.is_empty() => {
                let (u, v) = *edges.choose(rng).expect("nonempty");
                h.contract(u, v);
            }
            _ => {}
        }
    }
    h
}

/// Identification algebra on random instances: every collapse order of a
/// partition gives an isomorphic graph, and `G // S1 // S2 = G // (S1 ∪ S2)`
/// when `S1` and `S2` meet.
pub fn identification_algebra(samples: usize, max_n: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new("identification-algebra");
    let mut rng = rng(seed);
    for case in 0..samples {
        let g = random_graph(&mut rng, 2, max_n);
        let mut vs: Vec<Vertex> = g.vertices().collect();
        vs.shuffle(&mut rng);
        let xs: Vec<Vertex> = vs[..rng.gen_range(1..=vs.len())].iter().copied().sorted().collect();
        let p = random_partition(&mut rng, &xs);
        let reference = identify_partition(&g, &p)?;
        // Collapse pairs in a random global order.
        let mut pairs: Vec<(Vertex, Vertex)> = p
            .parts()
            .iter()
            .flat_map(|part| part.iter().tuple_windows().map(|(&a, &b)| (a, b)))
            .collect();
        pairs.shuffle(&mut rng);
        let mut h = g.clone();
        let mut rep_of: BTreeMap<Vertex, Vertex> = g.vertices().map(|v| (v, v)).collect();
        for (a, b) in pairs {
            let (ra, rb) = (find(&rep_of, a), find(&rep_of, b));
            if ra != rb {
                let kept = h.contract(ra, rb);
                let gone = if kept == ra { rb } else { ra };
                rep_of.insert(gone, kept);
            }
        }
        rep.check(are_isomorphic(&h, &reference), || {
            format!("case {case}: collapse order changed the result")
        });

        let s1: VertexSet = vs.iter().copied().take(rng.gen_range(1..=vs.len())).collect();
        let pivot = *s1.iter().next().expect("nonempty");
        let mut s2: VertexSet = vs.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
        s2.insert(pivot);
        let union: VertexSet = s1.union(&s2).copied().collect();
        let once = identify_partition(&g, &single_part(&union)?)?;
        let first = identify_partition(&g, &single_part(&s1)?)?;
        let min1 = *s1.iter().next().expect("nonempty");
        let s2_after: VertexSet = s2.iter().map(|v| if s1.contains(v) { min1 } else { *v }).collect();
        let twice = identify_partition(&first, &single_part(&s2_after)?)?;
        rep.check(twice == once, || {
            format!("case {case}: G//S1//S2 differs from G//(S1 u S2)")
        });
        if s1.len() >= 2 {
            let pair: Vec<Vertex> = s1.iter().copied().take(2).collect();
            let direct = identify_pair(&g, pair[0], pair[1])?;
            let via = identify_partition(&g, &single_part(&pair.iter().copied().collect())?)?;
            rep.check(direct == via, || format!("case {case}: pair identification mismatch"));
        }
    }
    Ok(rep.finish())
}

fn find(rep_of: &BTreeMap<Vertex, Vertex>, mut v: Vertex) -> Vertex {
    while rep_of[&v] != v {
        v = rep_of[&v];
    }
    v
}

fn single_part(s: &VertexSet) -> Result<VertexPartition> {
    VertexPartition::new(vec![s.clone()])
}

/// The six host constructions for `J^r_k`, with labels.
pub fn lemma_3_5_hosts(k: usize, r: usize) -> Result<Vec<(String, LabeledGrid)>> {
    let (k1, k2) = (k - k / 2, k / 2);
    Ok(vec![
        (
            format!("alt-jump({}, {})", 2 * r, 2 * r + k - 2),
            grid_zoo(ZooFamily::AltJump, 2 * r, None, 2 * r + k - 2)?,
        ),
        (
            format!("nested-crosses({k}, {})", r + 1),
            grid_zoo(ZooFamily::NestedCrosses, k, None, r + 1)?,
        ),
        (
            format!("twisted-crosses({}, {})", k + 2 * r, r + 1),
            grid_zoo(ZooFamily::TwistedCrosses, k + 2 * r, None, r + 1)?,
        ),
        (
            format!("double-jump({k1}+{k2}, {})", r + 1),
            grid_zoo(ZooFamily::DoubleJump, k1, Some(k2), r + 1)?,
        ),
        (
            format!("alt-double-jump({k1}+{k2}, {})", r + 1),
            grid_zoo(ZooFamily::AltDoubleJump, k1, Some(k2), r + 1)?,
        ),
        (
            format!("klein({k}, {}; {})", k + 1, r + k),
            grid_zoo(ZooFamily::Klein, k, Some(k + 1), r + k)?,
        ),
    ])
}

/// `J^r_k` as a minor of each host; one verified model per host.
pub fn lemma_3_5(k: usize, r: usize, budget: &Budget) -> Result<Report> {
    if k == 0 || r == 0 {
        return invalid("k and r must be at least 1");
    }
    let mut rep = Report::new("3.5");
    let guest = long_jump_grid(k, r)?.graph;
    for (label, host) in lemma_3_5_hosts(k, r)? {
        let host = host.graph;
        let found = (0..8)
            .find_map(|i| find_minor_heuristic(&host, &guest, &RootRule::Free, budget.seed.wrapping_add(i), 200))
            .map(Search::Found)
            .unwrap_or_else(|| find_minor_model(&host, &guest, None, budget).unwrap_or(Search::Unknown));
        match found {
            Search::Found(model) => {
                rep.check(verify_model(&host, &guest, &model), || {
                    format!("{label}: model failed verification")
                });
                rep.certificates.push(LabeledCertificate {
                    label: format!("J({k}, {r}) in {label}"),
                    body: CertificateBody::MinorModel {
                        host: graph6::encode(&host),
                        guest: graph6::encode(&guest),
                        model,
                    },
                });
            }
            Search::Absent => rep.check(false, || format!("{label}: no model exists")),
            Search::Unknown => {
                rep.undecided += 1;
                rep.notes.push(format!("{label}: undecided within budget"));
            }
        }
    }
    Ok(rep.finish())
}

/// Normalization of random elimination-order decompositions: the result
/// is valid, normal and no wider.
pub fn lemma_5_3(samples: usize, max_n: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new("5.3");
    let mut rng = rng(seed);
    for case in 0..samples {
        let g = random_graph(&mut rng, 1, max_n);
        let mut order: Vec<Vertex> = g.vertices().collect();
        order.shuffle(&mut rng);
        let td = td_from_elimination(&g, &order)?;
        let norm = normalize_td(&g, &td)?;
        let (valid, defects) = validate_td(&g, &norm);
        rep.check(valid, || format!("case {case}: invalid result: {}", defects.join("; ")));
        rep.check(is_normal(&g, &norm), || format!("case {case}: result is not normal"));
        rep.check(norm.width() <= td.width(), || {
            format!("case {case}: width grew from {} to {}", td.width(), norm.width())
        });
    }
    Ok(rep.finish())
}

/// Neighbourhood classes over an independent set in projective graphs:
/// at most `6|X| - 4`.
pub fn lemma_5_4(samples: usize, max_n: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new("5.4");
    let mut rng = rng(seed);
    let budget = Budget::default();
    let mut tries = 0;
    while rep.checked < samples && tries < samples * 100 {
        tries += 1;
        let n = rng.gen_range(3..=max_n);
        let g = gnp(n, rng.gen_range(0.15..0.6), rng.gen())?;
        if !is_projective(&g, &budget).is_yes() {
            continue;
        }
        // Greedy random maximal independent set as S; X is the rest.
        let mut vs: Vec<Vertex> = g.vertices().collect();
        vs.shuffle(&mut rng);
        let mut s = VertexSet::new();
        for v in vs {
            if g.neighbors(v).iter().all(|w| !s.contains(w)) {
                s.insert(v);
            }
        }
        let x: VertexSet = g.vertices().filter(|v| !s.contains(v)).collect();
        if x.is_empty() {
            continue;
        }
        let count = neighborhood_class_count(&g, &x, &s)?;
        let bound = 6 * x.len() - 4;
        rep.check(count <= bound, || {
            format!("{}: {count} classes > {bound}", graph6::encode(&g))
        });
    }
    if rep.checked < samples {
        rep.notes.push(format!("only {} projective samples found", rep.checked));
    }
    Ok(rep.finish())
}

/// Minor monotonicity of idpr and idpl on random (G, minor) pairs.
pub fn lemma_6_1(samples: usize, max_n: usize, budget: &Budget) -> Result<Report> {
    let mut rep = Report::new("6.1");
    let mut rng = rng(budget.seed);
    for _ in 0..samples {
        let g = random_graph(&mut rng, 2, max_n);
        let h = random_minor(&mut rng, &g);
        for (name, f) in [("idpr", idpr as fn(&Graph, &Budget) -> Result<_>), ("idpl", idpl)] {
            let (pg, ph) = (f(&g, budget)?.value, f(&h, budget)?.value);
            match (pg.value(), ph.value()) {
                (Some(a), Some(b)) => rep.check(b <= a, || {
                    format!(
                        "{name}({}) = {b} > {name}({}) = {a}",
                        graph6::encode(&h),
                        graph6::encode(&g)
                    )
                }),
                _ => rep.undecided += 1,
            }
        }
    }
    Ok(rep.finish())
}

/// Exact idpr of `jprime(1)` plus the sampled margin mechanism on
/// `jprime(k)`.
pub fn lemma_6_3(k: usize, samples: usize, budget: &Budget) -> Result<Report> {
    let mut rep = Report::new("6.3");
    let r = verify_lemma_6_3(k, samples, budget)?;
    let g = jprime(1)?.graph;
    if let Some(exact) = &r.idpr {
        match exact.value.value() {
            Some(v) => {
                rep.notes.push(format!("idpr(jprime(1)) = {v}"));
            }
            None => rep.undecided += 1,
        }
        if let Some(w) = &exact.witness {
            rep.certificates.push(LabeledCertificate {
                label: "idpr witness for jprime(1)".to_string(),
                body: CertificateBody::PartitionWitness {
                    graph: graph6::encode(&g),
                    x: w.x.clone(),
                    partition: w.partition.clone(),
                },
            });
            if let Some(c) = &w.certificate {
                rep.certificates.push(LabeledCertificate {
                    label: "projective embedding of the identified jprime(1)".to_string(),
                    body: CertificateBody::Embedding {
                        graph: graph6::encode(&g),
                        certificate: c.clone(),
                    },
                });
            }
        }
    }
    rep.check(r.collapse_all_projective, || {
        "collapse-all identification is not projective".into()
    });
    for s in &r.samples {
        match s.projective {
            Some(p) => rep.check(!p, || {
                format!(
                    "margin {} sample X = {:?}, P = {:?}: identified graph is projective",
                    s.margin,
                    s.x,
                    s.partition.parts()
                )
            }),
            None => rep.undecided += 1,
        }
    }
    rep.notes.push(format!(
        "{} of {} margin-violating samples are projective",
        r.counterexamples,
        r.samples.len()
    ));
    Ok(rep.finish())
}

/// `hadwiger(G) <= idpr(G)^2 + 5` on random graphs.
pub fn lemma_6_6(samples: usize, max_n: usize, budget: &Budget) -> Result<Report> {
    let mut rep = Report::new("6.6");
    let mut rng = rng(budget.seed);
    for _ in 0..samples {
        let g = random_graph(&mut rng, 1, max_n);
        let (hw, p) = (hadwiger(&g, budget)?.bracket, idpr(&g, budget)?.value);
        match (hw.value(), p.value()) {
            (Some(h), Some(q)) => rep.check(h <= q * q + 5, || {
                format!("{}: hadwiger {h} > idpr^2 + 5 = {}", graph6::encode(&g), q * q + 5)
            }),
            _ => rep.undecided += 1,
        }
    }
    // Outside the sampled range: K7 has idpr 1 (merge two vertices into K6)
    // and hadwiger 7.
    let k7 = Graph::complete(7);
    if let (Some(h), Some(q)) = (hadwiger(&k7, budget)?.bracket.value(), idpr(&k7, budget)?.value.value()) {
        if h > q * q + 5 {
            rep.notes.push(format!(
                "K7 exceeds the bound: hadwiger {h} > idpr^2 + 5 = {}",
                q * q + 5
            ));
        }
    }
    Ok(rep.finish())
}

/// Satellite graphs: vertex count `8k^2 + 13k + 5`, 4-regularity for
/// `k <= max_k`, and `(f67, 2)`-tight connectivity at `k = 1`.
pub fn lemma_6_7(max_k: usize, budget: &Budget) -> Result<Report> {
    let mut rep = Report::new("6.7");
    for k in 1..=max_k {
        let g = satellite_long_jump(k)?.graph;
        let want = 8 * k * k + 13 * k + 5;
        rep.check(g.n() == want, || {
            format!("k = {k}: {} vertices, expected {want}", g.n())
        });
        let bad: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) != 4).collect();
        rep.check(bad.is_empty(), || {
            format!("k = {k}: vertices {bad:?} do not have degree 4")
        });
    }
    let g = satellite_long_jump(1)?.graph;
    match is_tightly_connected(&g, &bound_f67, 2, budget) {
        Search::Found(true) => rep.check(true, String::new),
        Search::Found(false) => rep.check(false, || "k = 1 is not (f67, 2)-tightly connected".into()),
        _ => rep.undecided += 1,
    }
    Ok(rep.finish())
}

/// Whether `soc` is cross-free exactly when it is rural.
fn cross_rural_agree(soc: &Society) -> Option<bool> {
    let cross = find_cross(soc).is_some();
    let rural = is_rural(soc);
    if rural.is_yes() {
        Some(!cross)
    } else if rural.is_no() {
        Some(cross)
    } else {
        None
    }
}

/// Cross-free iff rural: exhaustively over connected societies with four
/// boundary vertices and at most `exhaustive_n` vertices, then on random
/// societies up to `max_n` vertices.
pub fn prop_3_1(exhaustive_n: usize, samples: usize, max_n: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new("P3.1");
    for n in 4..=exhaustive_n {
        let pairs: Vec<(Vertex, Vertex)> = (0..n as Vertex).tuple_combinations().collect();
        let mut seen = HashSet::new();
        for mask in 0u64..1 << pairs.len() {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges);
            if !g.is_connected() {
                continue;
            }
            if !seen.insert(canonical_form_colored(&g, |v| if v < 4 { v + 1 } else { 0 })) {
                continue;
            }
            let soc = Society::new(g, vec![0, 1, 2, 3])?;
            match cross_rural_agree(&soc) {
                Some(ok) => rep.check(ok, || format!("exhaustive n = {n}: {:?}", edges)),
                None => rep.undecided += 1,
            }
        }
    }
    let mut rng = rng(seed);
    for _ in 0..samples {
        let g = random_graph(&mut rng, 4, max_n);
        let mut vs: Vec<Vertex> = g.vertices().collect();
        vs.shuffle(&mut rng);
        vs.truncate(rng.gen_range(4..=vs.len()));
        let soc = Society::new(g, vs)?;
        match cross_rural_agree(&soc) {
            Some(ok) => rep.check(ok, || {
                format!("random: {} omega {:?}", graph6::encode(&soc.graph), soc.omega)
            }),
            None => rep.undecided += 1,
        }
    }
    Ok(rep.finish())
}

/// Every b-permutation of size `(r-1)(s-1)+1` yields a planar
/// sub-transaction of size `r` or a crosscap one of size `s`.
pub fn prop_3_2(max_rs: usize) -> Result<Report> {
    let mut rep = Report::new("P3.2");
    for r in 2..=max_rs {
        for s in 2..=max_rs {
            let t = (r - 1) * (s - 1) + 1;
            for pi in (0..t).permutations(t) {
                let (soc, tr) = Transaction::from_ranks(&pi)?;
                let sub = erdos_szekeres_extract(&tr, r, s)?;
                let labels = classify_transaction(&soc, &sub).labels;
                let ok = (sub.len() >= r && labels.contains(&TransactionType::Planar))
                    || (sub.len() >= s && labels.contains(&TransactionType::Crosscap));
                rep.check(ok, || format!("r = {r}, s = {s}, pi = {pi:?}"));
            }
        }
    }
    Ok(rep.finish())
}

/// Rooted grids: for each `m`, random root sets in the central subgrid of
/// the `m x m` grid carry a verified rooted grid model of order
/// `floor(|S|^(1/4))`. Set sizes stay within the central-subgrid capacity.
pub fn prop_6_2(ms: &[usize], samples: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new("P6.2");
    let mut rng = rng(seed);
    for &m in ms {
        let host = grid(m, m)?;
        // Largest l with some size in [l^4, (m - 2l)^2].
        let l = (1..m)
            .take_while(|&l| l.pow(4) <= (m.saturating_sub(2 * l)).pow(2))
            .last()
            .unwrap_or(1);
        let side = m - 2 * l;
        let central: Vec<Vertex> = (l + 1..=l + side)
            .flat_map(|i| (l + 1..=l + side).map(move |j| (i, j)))
            .map(|(i, j)| host.at(i, j))
            .collect();
        let (lo, hi) = (l.pow(4), central.len().min((l + 1).pow(4) - 1));
        rep.notes.push(format!("m = {m}: |S| in {lo}..={hi}, grid order {l}"));
        for _ in 0..samples {
            let size = rng.gen_range(lo..=hi);
            let s: VertexSet = central.choose_multiple(&mut rng, size).copied().collect();
            let want = (size as f64).powf(0.25).floor() as usize;
            match rooted_grid_in_grid(m, &s) {
                Ok(model) => {
                    let pattern = grid(want, want)?.graph;
                    let ok = verify_model(&host.graph, &pattern, &model) && model.roots.as_ref() == Some(&s);
                    rep.check(ok, || format!("m = {m}, S = {s:?}: model failed verification"));
                }
                Err(e) => rep.check(false, || format!("m = {m}, S = {s:?}: {e}")),
            }
        }
    }
    Ok(rep.finish())
}

/// Identifying two vertices of a planar graph gives a pinched graph, and
/// each pinched witness lifts to an edge-apex supergraph containing it.
pub fn obs_1_1(samples: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new("O1.1");
    let mut rng = rng(seed);
    let mut done = 0;
    while done < samples {
        let n = rng.gen_range(3..=9);
        let g = gnp(n, rng.gen_range(0.2..0.7), rng.gen())?;
        if !is_planar_graph(&g) {
            continue;
        }
        done += 1;
        let pair: Vec<Vertex> = g
            .vertices()
            .collect::<Vec<_>>()
            .choose_multiple(&mut rng, 2)
            .copied()
            .collect();
        let h = identify_pair(&g, pair[0], pair[1])?;
        let verdict = is_pinched(&h);
        rep.check(verdict.is_yes(), || {
            format!("{} // {pair:?} is not pinched", graph6::encode(&g))
        });
        let yes = verdict.is_yes();
        if let Some(c) = verdict.certificate.filter(|_| yes) {
            let (sup, model) = edge_apex_supergraph(&h, &c)?;
            rep.check(is_edge_apex(&sup).is_yes() && verify_model(&sup, &h, &model), || {
                format!("{}: supergraph check failed", graph6::encode(&h))
            });
        }
    }
    rep.check(is_pinched(&Graph::complete(5)).is_yes(), || "K5 is not pinched".into());
    rep.check(is_pinched(&Graph::complete(6)).is_no(), || "K6 is pinched".into());
    rep.check(is_edge_apex(&Graph::complete(7)).is_no(), || "K7 is edge-apex".into());
    Ok(rep.finish())
}

/// All connected graphs with at most `n` vertices, one per isomorphism class.
pub fn connected_catalog(n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for order in 1..=n {
        let pairs: Vec<(Vertex, Vertex)> = (0..order as Vertex).tuple_combinations().collect();
        let mut seen = HashSet::new();
        for mask in 0u64..1 << pairs.len() {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(order, &edges);
            if g.is_connected() && seen.insert(canonical_form(&g)) {
                out.push(g);
            }
        }
    }
    out
}

/// `size*(G) - 1` equals treewidth on the connected catalog and on random
/// graphs of a fixed order.
pub fn tw_identity(exhaustive_n: usize, samples: usize, random_n: usize, budget: &Budget) -> Result<Report> {
    let mut rep = Report::new("TW-identity");
    let mut rng = rng(budget.seed);
    let random = (0..samples).map(|_| random_graph(&mut rng, random_n, random_n));
    for g in connected_catalog(exhaustive_n).into_iter().chain(random) {
        let tw = treewidth_exact(&g)?;
        match star(&g, StarBase::Size, budget).value.value() {
            Some(s) => rep.check(s == tw + 1, || {
                format!("{}: size* = {s}, treewidth = {tw}", graph6::encode(&g))
            }),
            None => rep.undecided += 1,
        }
    }
    Ok(rep.finish())
}

/// Spot checks of the planarity and projective-plane oracles.
pub fn oracle_spot_checks(budget: &Budget) -> Report {
    let mut rep = Report::new("oracles");
    rep.check(is_projective(&Graph::complete(6), budget).is_yes(), || {
        "K6 is not projective".into()
    });
    rep.check(is_projective(&Graph::complete(7), budget).is_no(), || {
        "K7 is projective".into()
    });
    rep.check(is_planar(&Graph::complete(5)).is_no(), || "K5 is planar".into());
    rep.check(crate::obstructions::projective_obstructions().len() == 35, || {
        "obstruction list size".into()
    });
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs() {
        let b = Budget::default();
        assert!(identification_algebra(30, 7, 1).unwrap().passed());
        assert!(lemma_5_3(20, 8, 2).unwrap().passed());
        assert!(lemma_3_5(1, 1, &b).unwrap().passed());
        assert!(prop_3_2(3).unwrap().passed());
        assert!(obs_1_1(10, 3).unwrap().passed());
        assert!(oracle_spot_checks(&b).passed());
        assert_eq!(connected_catalog(4).len(), 1 + 1 + 2 + 6);
    }
}
