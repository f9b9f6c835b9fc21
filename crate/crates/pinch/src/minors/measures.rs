//! Bidimensionality, Hadwiger number, and rooted grids inside grids.

use serde::{Deserialize, Serialize};

use super::exact::find_minor_model;
use super::heuristic::{find_minor_heuristic, RootRule};
use super::model::{verify_model, MinorModel};
use crate::budget::{Bracket, Budget, Search};
use crate::error::{invalid, Error, Result};
use crate::generators::grid;
use crate::graph::{Graph, Vertex, VertexSet};

/// A budget-limited maximum with the model achieving its lower end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measured {
    pub bracket: Bracket,
    pub witness: Option<MinorModel>,
}

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Largest `k` such that `g` has an `x`-rooted `k x k` grid minor.
/// Descends from `floor(sqrt(|x|))`, which bounds it from above.
pub fn bidim(g: &Graph, x: &VertexSet, budget: &Budget) -> Result<Measured> {
    if !x.is_subset(&g.vertex_set()) {
        return invalid("X is not a subset of V(G)");
    }
    let Some(&first) = x.iter().next() else {
        return Ok(Measured {
            bracket: Bracket::exact(0),
            witness: None,
        });
    };
    let mut hi: Option<usize> = None;
    for k in (2..=isqrt(x.len())).rev() {
        let pattern = grid(k, k)?.graph;
        match find_minor_model(g, &pattern, Some(x), budget)? {
            Search::Found(m) => {
                return Ok(Measured {
                    bracket: Bracket {
                        lo: k,
                        hi: hi.unwrap_or(k),
                    },
                    witness: Some(m),
                })
            }
            Search::Absent => {}
            Search::Unknown => {
                hi.get_or_insert(k);
            }
        }
    }
    let single = MinorModel::new([(0, VertexSet::from([first]))].into()).rooted(x.clone());
    Ok(Measured {
        bracket: Bracket {
            lo: 1,
            hi: hi.unwrap_or(1),
        },
        witness: Some(single),
    })
}

/// Largest `t` with `K_t` a minor of `g`, ascending from the trivial bounds.
pub fn hadwiger(g: &Graph, budget: &Budget) -> Result<Measured> {
    let n = g.n();
    let Some(v0) = g.vertices().next() else {
        return Ok(Measured {
            bracket: Bracket::exact(0),
            witness: None,
        });
    };
    // K_t needs t vertices and t(t-1)/2 edges.
    let mut cap = 1;
    while cap < n && (cap + 1) * cap / 2 <= g.m() {
        cap += 1;
    }
    let mut lo = 1;
    let mut witness = MinorModel::new([(0, VertexSet::from([v0]))].into());
    if let Some((u, v)) = g.edges().next() {
        lo = 2;
        witness = MinorModel::new([(0, VertexSet::from([u])), (1, VertexSet::from([v]))].into());
    }
    for t in lo + 1..=cap {
        match find_minor_model(g, &Graph::complete(t), None, budget)? {
            Search::Found(m) => {
                lo = t;
                witness = m;
            }
            Search::Absent => {
                return Ok(Measured {
                    bracket: Bracket::exact(lo),
                    witness: Some(witness),
                })
            }
            Search::Unknown => {
                return Ok(Measured {
                    bracket: Bracket { lo, hi: cap },
                    witness: Some(witness),
                })
            }
        }
    }
    Ok(Measured {
        bracket: Bracket::exact(lo),
        witness: Some(witness),
    })
}

/// Integer fourth root.
fn iroot4(n: usize) -> usize {
    isqrt(isqrt(n))
}

/// `S`-rooted `l x l` grid model in the `m x m` grid, `l = floor(|S|^(1/4))`,
/// for `S` inside the central `(m - 2l) x (m - 2l)` subgrid.
///
/// Roots are spread over the sorted root list and assigned to grid positions
/// by row bands then columns; branchsets are then routed by negotiated
/// congestion and verified.
pub fn rooted_grid_in_grid(m: usize, s: &VertexSet) -> Result<MinorModel> {
    if s.is_empty() {
        return invalid("S must be nonempty");
    }
    let l = iroot4(s.len());
    if m < 2 * l + 1 {
        return invalid(format!("grid of side {m} has no central subgrid for l = {l}"));
    }
    let host = grid(m, m)?;
    let mut cells: Vec<(usize, usize, Vertex)> = Vec::with_capacity(s.len());
    for &v in s {
        let (i, j) = (v as usize / m + 1, v as usize % m + 1);
        if v as usize >= m * m {
            return invalid(format!("vertex {v} is not in grid({m},{m})"));
        }
        let central = l + 1..=m - l;
        if !central.contains(&i) || !central.contains(&j) {
            return invalid(format!(
                "vertex {v} at ({i},{j}) lies outside the central {0}x{0} subgrid",
                m - 2 * l
            ));
        }
        cells.push((i, j, v));
    }
    cells.sort_unstable();
    let pattern = grid(l, l)?.graph;
    let need = l * l;
    let mut attempts: Vec<Vec<(usize, usize, Vertex)>> = Vec::new();
    let step = cells.len() / need;
    attempts.push((0..need).map(|t| cells[t * step]).collect());
    attempts.push(cells[..need].to_vec());
    attempts.push(cells[cells.len() - need..].to_vec());
    for mut chosen in attempts {
        // Row bands of l roots each, ordered by column inside a band.
        for band in chosen.chunks_mut(l) {
            band.sort_unstable_by_key(|&(i, j, _)| (j, i));
        }
        let fixed = chosen
            .iter()
            .enumerate()
            .map(|(t, &(_, _, v))| (t as Vertex, v))
            .collect();
        if let Some(model) = find_minor_heuristic(&host.graph, &pattern, &RootRule::Fixed(fixed), 0x6e1d, 8) {
            let model = model.rooted(s.clone());
            debug_assert!(verify_model(&host.graph, &pattern, &model));
            return Ok(model);
        }
    }
    Err(Error::Certificate(format!(
        "no rooted {l}x{l} grid model was routed in grid({m},{m})"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bidim_examples() {
        let b = Budget::default();
        let g3 = grid(3, 3).unwrap().graph;
        assert_eq!(bidim(&g3, &VertexSet::new(), &b).unwrap().bracket, Bracket::exact(0));
        let r = bidim(&g3, &g3.vertex_set(), &b).unwrap();
        assert_eq!(r.bracket, Bracket::exact(3));
        assert!(verify_model(&g3, &g3, r.witness.as_ref().unwrap()));
        let k9 = Graph::complete(9);
        assert_eq!(bidim(&k9, &k9.vertex_set(), &b).unwrap().bracket, Bracket::exact(3));
        let c4 = Graph::cycle(4);
        assert_eq!(
            bidim(&c4, &VertexSet::from([0, 1, 2]), &b).unwrap().bracket,
            Bracket::exact(1)
        );
    }

    #[test]
    fn hadwiger_examples() {
        let b = Budget::default();
        assert_eq!(hadwiger(&Graph::path(6), &b).unwrap().bracket, Bracket::exact(2));
        assert_eq!(hadwiger(&Graph::petersen(), &b).unwrap().bracket, Bracket::exact(5));
        assert_eq!(hadwiger(&Graph::complete(7), &b).unwrap().bracket, Bracket::exact(7));
        assert_eq!(hadwiger(&Graph::new(), &b).unwrap().bracket, Bracket::exact(0));
    }

    #[test]
    fn rooted_grid_examples() {
        let single = rooted_grid_in_grid(5, &VertexSet::from([12])).unwrap();
        assert_eq!(single.branchsets.len(), 1);
        // 16 roots in the central 5x5 of grid(9,9).
        let s: VertexSet = (3..7)
            .flat_map(|i| (3..7).map(move |j| (i * 9 + j) as Vertex))
            .collect();
        let m = rooted_grid_in_grid(9, &s).unwrap();
        let host = grid(9, 9).unwrap().graph;
        assert!(verify_model(&host, &grid(2, 2).unwrap().graph, &m));
        // A root on the border row violates the precondition.
        assert!(rooted_grid_in_grid(
            9,
            &VertexSet::from([0, 40, 41, 42, 43, 44, 45, 46, 47, 48, 49, 50, 51, 52, 53, 54])
        )
        .is_err());
    }
}
