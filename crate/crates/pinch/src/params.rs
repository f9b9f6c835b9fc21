//! Graph parameters built on bidimensionality and identifications, their
//! clique-sum extensions, grid-family orders, and numeric bound functions.

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;

use itertools::Itertools;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::{Bracket, Budget, Search};
use crate::canon::{canonical_form, CanonForm};
use crate::decomposition::{star_extension_witnessed, torso_at_node, TreeDecomposition};
use crate::embed::projective::projective_decision;
use crate::embed::{is_planar_graph, is_projective, planar_embedding, Certificate};
use crate::error::{invalid, Result};
use crate::generators::{enhanced_annulus, jprime, AnnulusFamily, Convention};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::minors::{bidim, find_minor_model, verify_model, MinorModel};
use crate::ops::{enumerate_identifications, identify_partition};
use crate::partition::VertexPartition;

/// Evidence for a parameter value.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamWitness {
    /// The optimizing vertex set.
    pub x: VertexSet,
    pub partition: Option<VertexPartition>,
    /// `X`-rooted grid model certifying `bidim(G, X)` from below.
    pub bidim_model: Option<MinorModel>,
    /// Target-class certificate for the modified graph.
    pub certificate: Option<Certificate>,
    pub decomposition: Option<TreeDecomposition>,
    /// Base-parameter value at each node torso of `decomposition`.
    pub torso_values: BTreeMap<Vertex, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamResult {
    pub value: Bracket,
    pub witness: Option<ParamWitness>,
}

impl ParamResult {
    fn exact(v: usize, witness: Option<ParamWitness>) -> Self {
        ParamResult {
            value: Bracket::exact(v),
            witness,
        }
    }
}

pub fn size(g: &Graph) -> usize {
    g.n()
}

/// Zero for planar graphs, the vertex count otherwise.
pub fn psize(g: &Graph) -> usize {
    if is_planar_graph(g) {
        0
    } else {
        g.n()
    }
}

/// Target class of an identification parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Projective,
    Planar,
}

struct Verdicts<'a> {
    target: Target,
    budget: &'a Budget,
    memo: HashMap<CanonForm, Option<bool>>,
}

impl Verdicts<'_> {
    fn decide(&mut self, h: &Graph) -> Option<bool> {
        let key = canonical_form(h);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = match self.target {
            Target::Planar => Some(is_planar_graph(h)),
            Target::Projective => projective_decision(h, &self.budget.meter()),
        };
        self.memo.insert(key, v);
        v
    }
}

fn certificate_for(h: &Graph, target: Target, budget: &Budget) -> Option<Certificate> {
    match target {
        Target::Planar => planar_embedding(h).map(Certificate::Embedding),
        Target::Projective => is_projective(h, budget).certificate,
    }
}

/// Shared search for the minimum of `bidim(G, X)` over sets `X` accepted
/// by `accept`, which returns the modification witness (or `None` when
/// undecided). Sets are visited by increasing size; since every nonempty
/// set has bidimensionality at least 1, the search stops once 1 is reached.
fn min_bidim_over(
    g: &Graph,
    budget: &Budget,
    mut accept: impl FnMut(&VertexSet) -> Option<Option<ParamWitness>>,
) -> Result<ParamResult> {
    let meter = budget.meter();
    let vs: Vec<Vertex> = g.vertices().collect();
    let mut best: Option<(usize, ParamWitness)> = None;
    let mut floor: Option<usize> = None;
    'sizes: for size in 0..=vs.len() {
        let lower = usize::from(size > 0);
        if best.as_ref().is_some_and(|(b, _)| *b <= lower) {
            break;
        }
        for combo in vs.iter().copied().combinations(size) {
            if !meter.tick() {
                floor = Some(floor.map_or(lower, |f: usize| f.min(lower)));
                break 'sizes;
            }
            let x: VertexSet = combo.into_iter().collect();
            let found = match accept(&x) {
                None => {
                    floor = Some(floor.map_or(lower, |f: usize| f.min(lower)));
                    continue;
                }
                Some(None) => continue,
                Some(Some(w)) => w,
            };
            let m = bidim(g, &x, budget)?;
            if m.bracket.lo != m.bracket.hi {
                floor = Some(floor.map_or(m.bracket.lo, |f| f.min(m.bracket.lo)));
            }
            if best.as_ref().is_none_or(|(b, _)| m.bracket.hi < *b) {
                let w = ParamWitness {
                    x: x.clone(),
                    bidim_model: m.witness,
                    ..found
                };
                best = Some((m.bracket.hi, w));
            }
        }
    }
    Ok(match best {
        Some((hi, w)) => ParamResult {
            value: Bracket {
                lo: floor.map_or(hi, |f| f.min(hi)),
                hi,
            },
            witness: Some(w),
        },
        // Only reachable when the budget ran out before X = V(G) was tried.
        None => ParamResult {
            value: Bracket {
                lo: floor.unwrap_or(0),
                hi: upper_bound(g),
            },
            witness: None,
        },
    })
}

/// `bidim(G, V(G))` is at most `floor(sqrt(n))`, and identifying all of
/// `V(G)` yields a single vertex.
fn upper_bound(g: &Graph) -> usize {
    (g.n() as f64).sqrt() as usize
}

/// Least `k` such that some `X` with `bidim(G, X) <= k` can be identified
/// (by a partition of `X`) into the target class.
pub fn identification_param(g: &Graph, target: Target, budget: &Budget) -> Result<ParamResult> {
    let mut verdicts = Verdicts {
        target,
        budget,
        memo: HashMap::new(),
    };
    let meter = budget.meter();
    min_bidim_over(g, budget, |x| {
        let mut undecided = false;
        let flow = enumerate_identifications(g, x, |p, h| {
            if !meter.tick() {
                undecided = true;
                return ControlFlow::Break(None);
            }
            match verdicts.decide(h) {
                Some(true) => ControlFlow::Break(Some((p.clone(), h.clone()))),
                Some(false) => ControlFlow::Continue(()),
                None => {
                    undecided = true;
                    ControlFlow::Continue(())
                }
            }
        })
        .expect("X is a vertex subset");
        match flow {
            ControlFlow::Break(Some((p, h))) => Some(Some(ParamWitness {
                partition: Some(p),
                certificate: certificate_for(&h, target, budget),
                ..ParamWitness::default()
            })),
            _ if undecided => None,
            _ => Some(None),
        }
    })
}

pub fn idpr(g: &Graph, budget: &Budget) -> Result<ParamResult> {
    identification_param(g, Target::Projective, budget)
}

pub fn idpl(g: &Graph, budget: &Budget) -> Result<ParamResult> {
    identification_param(g, Target::Planar, budget)
}

/// Least `bidim(G, X)` over `X` with `G - X` planar.
pub fn p_delete_planar(g: &Graph, budget: &Budget) -> Result<ParamResult> {
    min_bidim_over(g, budget, |x| {
        let rest = g.without_vertices(x);
        Some(planar_embedding(&rest).map(|r| ParamWitness {
            certificate: Some(Certificate::Embedding(r)),
            ..ParamWitness::default()
        }))
    })
}

/// Checks an identification witness: the partition covers `X`, the
/// identified graph is in the target class, and the grid model is an
/// `X`-rooted model of the claimed order.
pub fn verify_identification_witness(g: &Graph, r: &ParamResult, target: Target, budget: &Budget) -> bool {
    let Some(w) = &r.witness else {
        return false;
    };
    let Some(p) = &w.partition else {
        return false;
    };
    if p.ground() != w.x {
        return false;
    }
    let Ok(h) = identify_partition(g, p) else {
        return false;
    };
    let in_class = match target {
        Target::Planar => is_planar_graph(&h),
        Target::Projective => projective_decision(&h, &budget.meter()) == Some(true),
    };
    in_class && grid_witness_ok(g, w, r.value.hi)
}

fn grid_witness_ok(g: &Graph, w: &ParamWitness, value: usize) -> bool {
    match (&w.bidim_model, value) {
        (None, 0) => w.x.is_empty(),
        (Some(m), 1) => !w.x.is_empty() && m.branchsets.len() == 1 && verify_model(g, &Graph::empty(1), m),
        (Some(m), k) if k >= 2 => match crate::generators::grid(k, k) {
            Ok(grid) => verify_model(g, &grid.graph, m) && m.roots.as_ref() == Some(&w.x),
            Err(_) => false,
        },
        _ => false,
    }
}

/// Largest `k` with the order-`k` member of `family` as a minor of `G`.
/// Ascends from 1; orders whose member exceeds `G`'s vertex or edge count
/// are excluded outright.
pub fn param_grid_order(
    g: &Graph,
    family: AnnulusFamily,
    convention: Convention,
    budget: &Budget,
) -> Result<ParamResult> {
    let mut lo = 0;
    let mut witness = None;
    let mut k = 1;
    loop {
        let h = enhanced_annulus(family, k, convention)?.graph;
        if h.n() > g.n() || h.m() > g.m() {
            return Ok(ParamResult::exact(lo, witness));
        }
        match find_minor_model(g, &h, None, budget)? {
            Search::Found(m) => {
                lo = k;
                witness = Some(ParamWitness {
                    bidim_model: Some(m),
                    ..ParamWitness::default()
                });
            }
            Search::Absent => return Ok(ParamResult::exact(lo, witness)),
            Search::Unknown => {
                // Larger orders contain this one as a minor only up to the
                // count bound, so report the count cap as the upper end.
                let mut hi = k;
                while let Ok(next) = enhanced_annulus(family, hi + 1, convention) {
                    if next.graph.n() > g.n() || next.graph.m() > g.m() {
                        break;
                    }
                    hi += 1;
                }
                return Ok(ParamResult {
                    value: Bracket { lo, hi },
                    witness,
                });
            }
        }
        k += 1;
    }
}

/// Base parameters with clique-sum extensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StarBase {
    Size,
    Psize,
    Idpr,
    Idpl,
}

fn base_value(base: StarBase, h: &Graph, budget: &Budget) -> Option<usize> {
    match base {
        StarBase::Size => Some(size(h)),
        StarBase::Psize => Some(psize(h)),
        StarBase::Idpr => idpr(h, budget).ok()?.value.value(),
        StarBase::Idpl => idpl(h, budget).ok()?.value.value(),
    }
}

/// `p*(G)` with the decomposition achieving it and each torso's value.
pub fn star(g: &Graph, base: StarBase, budget: &Budget) -> ParamResult {
    let p = |h: &Graph| base_value(base, h, budget);
    match star_extension_witnessed(g, &p, budget) {
        Search::Found((k, td)) => {
            let torso_values = td
                .tree
                .vertices()
                .filter_map(|t| {
                    let torso = torso_at_node(g, &td, t).ok()?;
                    Some((t, p(&torso)?))
                })
                .collect();
            ParamResult::exact(
                k,
                Some(ParamWitness {
                    decomposition: Some(td),
                    torso_values,
                    ..ParamWitness::default()
                }),
            )
        }
        _ => ParamResult {
            value: Bracket {
                lo: 0,
                hi: p(g).unwrap_or(g.n()),
            },
            witness: None,
        },
    }
}

/// `f(1, r) = 14`, `f(k, r) = a_k f(k - 1, r) + b_k` with
/// `a_k = 6(r-1)(2k+1)` and `b_k = 6(r-1)k(3k+5) + 6`.
pub fn bound_f317(k: usize, r: usize) -> Result<BigUint> {
    if k == 0 || r == 0 {
        return invalid("k and r must be at least 1");
    }
    let mut f = BigUint::from(14u32);
    for i in 2..=k {
        f = f317_a(i, r) * f + f317_b(i, r);
    }
    Ok(f)
}

fn f317_a(i: usize, r: usize) -> BigUint {
    BigUint::from(6u32) * BigUint::from(r - 1) * BigUint::from(2 * i + 1)
}

fn f317_b(i: usize, r: usize) -> BigUint {
    BigUint::from(6u32) * BigUint::from(r - 1) * BigUint::from(i) * BigUint::from(3 * i + 5) + BigUint::from(6u32)
}

/// Unrolled form of the recursion: `(prod_{i=2..k} a_i) * 14 +
/// sum_{i=2..k} (prod_{j=i+1..k} a_j) * b_i`.
pub fn bound_f317_closed_form(k: usize, r: usize) -> Result<BigUint> {
    if k == 0 || r == 0 {
        return invalid("k and r must be at least 1");
    }
    let prod = |from: usize| (from..=k).fold(BigUint::from(1u32), |acc, j| acc * f317_a(j, r));
    let mut total = prod(2) * BigUint::from(14u32);
    for i in 2..=k {
        total += prod(i + 1) * f317_b(i, r);
    }
    Ok(total)
}

/// `(2q + 1)^2`.
pub fn bound_f67(q: usize) -> usize {
    (2 * q + 1) * (2 * q + 1)
}

/// One sampled identification on `jprime(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarginSample {
    pub x: VertexSet,
    pub partition: VertexPartition,
    /// Margin `b` with `|X_b| < k - b`.
    pub margin: usize,
    pub projective: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma63Report {
    pub k: usize,
    /// Exact `idpr(jprime(1))`.
    pub idpr: Option<ParamResult>,
    pub samples: Vec<MarginSample>,
    /// Margin-violating samples whose identified graph is projective,
    /// i.e. counterexamples to the mechanism.
    pub counterexamples: usize,
    /// The collapse-all identification of `V(jprime(k))` is projective.
    pub collapse_all_projective: bool,
    pub holds: bool,
}

/// `X_b`: the part of `X` inside rows and columns `b+1..=4k+1-b`.
fn margin_count(k: usize, x: &VertexSet, b: usize, coords: &BTreeMap<(usize, usize), Vertex>) -> usize {
    let side = 4 * k + 1;
    coords
        .iter()
        .filter(|(&(i, j), v)| x.contains(v) && i > b && j > b && i <= side - b && j <= side - b)
        .count()
}

/// Computes `idpr(jprime(1))` exactly and replays the margin argument on
/// sampled sparse `(X, P)` over `jprime(k)`: whenever `|X_b| < k - b` for
/// some margin `b`, the argument predicts `jprime(k) // P` is not
/// projective. Each sample fixes a margin `b`, puts fewer than `k - b`
/// vertices inside it and up to four in the outer `b` layers.
pub fn verify_lemma_6_3(k: usize, samples: usize, budget: &Budget) -> Result<Lemma63Report> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    let exact = idpr(&jprime(1)?.graph, budget)?;
    let jp = jprime(k)?;
    let g = &jp.graph;
    let side = 4 * k + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut out = Vec::new();
    for _ in 0..samples {
        let b = rng.gen_range(0..=k / 2);
        let (inner, outer): (Vec<Vertex>, Vec<Vertex>) = {
            let inside = |&(i, j): &(usize, usize)| i > b && j > b && i <= side - b && j <= side - b;
            let (a, o): (Vec<_>, Vec<_>) = jp.coords.iter().partition(|(c, _)| inside(c));
            (
                a.into_iter().map(|(_, &v)| v).collect(),
                o.into_iter().map(|(_, &v)| v).collect(),
            )
        };
        let (n_in, n_out) = (rng.gen_range(0..k - b), rng.gen_range(0..=4.min(outer.len())));
        let mut x: VertexSet = inner.choose_multiple(&mut rng, n_in).copied().collect();
        x.extend(outer.choose_multiple(&mut rng, n_out).copied());
        let margin = (0..=k / 2)
            .find(|&m| margin_count(k, &x, m, &jp.coords) < k - m)
            .expect("the chosen margin satisfies the bound");
        let ground: Vec<Vertex> = x.iter().copied().collect();
        let rgs = random_rgs(ground.len(), &mut rng);
        let partition = VertexPartition::from_rgs(&ground, &rgs);
        let h = identify_partition(g, &partition)?;
        let projective = projective_decision(&h, &budget.meter());
        out.push(MarginSample {
            x,
            partition,
            margin,
            projective,
        });
    }
    let counterexamples = out.iter().filter(|s| s.projective == Some(true)).count();
    let one = jprime(1)?.graph;
    let all = VertexPartition::new(vec![one.vertex_set()])?;
    let collapse_all_projective = projective_decision(&identify_partition(&one, &all)?, &budget.meter()) == Some(true);
    Ok(Lemma63Report {
        k,
        holds: counterexamples == 0,
        idpr: Some(exact),
        samples: out,
        counterexamples,
        collapse_all_projective,
    })
}

fn random_rgs(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut rgs = Vec::with_capacity(n);
    let mut blocks = 0;
    for _ in 0..n {
        let b = rng.gen_range(0..=blocks);
        if b == blocks {
            blocks += 1;
        }
        rgs.push(b);
    }
    rgs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::grid;

    #[test]
    fn sizes() {
        assert_eq!(psize(&grid(3, 3).unwrap().graph), 0);
        assert_eq!(psize(&Graph::complete(5)), 5);
        assert_eq!(size(&Graph::complete(5)), 5);
    }

    #[test]
    fn identification_values() {
        let b = Budget::default();
        let g3 = grid(3, 3).unwrap().graph;
        assert_eq!(idpr(&g3, &b).unwrap().value, Bracket::exact(0));
        assert_eq!(idpl(&g3, &b).unwrap().value, Bracket::exact(0));
        assert_eq!(idpr(&Graph::complete(6), &b).unwrap().value, Bracket::exact(0));
        let k7 = Graph::complete(7);
        let r = idpr(&k7, &b).unwrap();
        assert_eq!(r.value, Bracket::exact(1));
        assert!(verify_identification_witness(&k7, &r, Target::Projective, &b));
        assert_eq!(r.witness.unwrap().x.len(), 2);
        let k5 = Graph::complete(5);
        let r = idpl(&k5, &b).unwrap();
        assert_eq!(r.value, Bracket::exact(1));
        assert!(verify_identification_witness(&k5, &r, Target::Planar, &b));
    }

    #[test]
    fn deletion_values() {
        let b = Budget::default();
        assert_eq!(p_delete_planar(&Graph::cycle(5), &b).unwrap().value, Bracket::exact(0));
        assert_eq!(
            p_delete_planar(&Graph::complete(5), &b).unwrap().value,
            Bracket::exact(1)
        );
        let r = p_delete_planar(&Graph::complete(6), &b).unwrap();
        assert_eq!(r.value, Bracket::exact(1));
        assert_eq!(r.witness.unwrap().x.len(), 2);
    }

    #[test]
    fn grid_orders() {
        let b = Budget::default();
        let tree = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        let r = param_grid_order(&tree, AnnulusFamily::LongJump, Convention::Fig3, &b).unwrap();
        assert_eq!(r.value, Bracket::exact(0));
        let j2 = enhanced_annulus(AnnulusFamily::LongJump, 2, Convention::Fig3)
            .unwrap()
            .graph;
        let r = param_grid_order(&j2, AnnulusFamily::LongJump, Convention::Fig3, &b).unwrap();
        assert_eq!(r.value, Bracket::exact(2));
    }

    #[test]
    fn star_values() {
        let b = Budget::default();
        let tree = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        assert_eq!(star(&tree, StarBase::Size, &b).value, Bracket::exact(2));
        let g3 = grid(3, 3).unwrap().graph;
        assert_eq!(star(&g3, StarBase::Idpr, &b).value, Bracket::exact(0));
        assert_eq!(star(&g3, StarBase::Psize, &b).value, Bracket::exact(0));
        let k7 = star(&Graph::complete(7), StarBase::Idpr, &b);
        assert_eq!(k7.value, Bracket::exact(1));
        assert!(k7.witness.unwrap().decomposition.is_some());
    }

    #[test]
    fn bounds() {
        for r in 1..=10 {
            assert_eq!(bound_f317(1, r).unwrap(), BigUint::from(14u32));
        }
        assert_eq!(bound_f317(2, 2).unwrap(), BigUint::from(558u32));
        for k in 1..=6 {
            for r in 1..=5 {
                assert_eq!(bound_f317(k, r).unwrap(), bound_f317_closed_form(k, r).unwrap());
            }
        }
        assert_eq!(bound_f67(3), 49);
        assert!(bound_f317(0, 1).is_err());
    }

    #[test]
    fn lemma_6_3_report() {
        let b = Budget::default();
        let rep = verify_lemma_6_3(2, 6, &b).unwrap();
        let exact = rep.idpr.as_ref().unwrap();
        // The 5x5 grid plus its one extra edge embeds in the projective plane.
        assert_eq!(exact.value, Bracket::exact(0));
        let g = jprime(1).unwrap().graph;
        match &exact.witness.as_ref().unwrap().certificate {
            Some(Certificate::Embedding(r)) => assert!(r.euler_genus(&g).is_some_and(|eg| eg <= 1)),
            other => panic!("{other:?}"),
        }
        assert!(rep.collapse_all_projective);
        assert_eq!(rep.samples.len(), 6);
        assert!(rep.holds);
    }
}
