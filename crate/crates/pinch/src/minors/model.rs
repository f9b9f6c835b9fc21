//! Minor models and their verification.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex, VertexSet};

/// Map from pattern vertices to disjoint connected host branchsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorModel {
    pub branchsets: BTreeMap<Vertex, VertexSet>,
    pub roots: Option<VertexSet>,
}

/// First violated model invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelDefect {
    MissingBranchset(Vertex),
    ExtraBranchset(Vertex),
    EmptyBranchset(Vertex),
    ForeignVertex(Vertex, Vertex),
    Overlap(Vertex, Vertex),
    Disconnected(Vertex),
    MissingEdge(Vertex, Vertex),
    Unrooted(Vertex),
}

impl fmt::Display for ModelDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelDefect::MissingBranchset(x) => write!(f, "pattern vertex {x} has no branchset"),
            ModelDefect::ExtraBranchset(x) => write!(f, "branchset for unknown pattern vertex {x}"),
            ModelDefect::EmptyBranchset(x) => write!(f, "branchset of {x} is empty"),
            ModelDefect::ForeignVertex(x, v) => write!(f, "branchset of {x} uses non-host vertex {v}"),
            ModelDefect::Overlap(x, y) => write!(f, "branchsets of {x} and {y} overlap"),
            ModelDefect::Disconnected(x) => write!(f, "branchset of {x} is disconnected"),
            ModelDefect::MissingEdge(x, y) => write!(f, "no host edge realizes pattern edge {x}-{y}"),
            ModelDefect::Unrooted(x) => write!(f, "branchset of {x} misses the root set"),
        }
    }
}

impl MinorModel {
    pub fn new(branchsets: BTreeMap<Vertex, VertexSet>) -> Self {
        MinorModel {
            branchsets,
            roots: None,
        }
    }

    pub fn rooted(mut self, roots: VertexSet) -> Self {
        self.roots = Some(roots);
        self
    }

    /// The identity model of `g` in itself.
    pub fn identity(g: &Graph) -> Self {
        MinorModel::new(g.vertices().map(|v| (v, VertexSet::from([v]))).collect())
    }

    /// Host vertex -> pattern vertex.
    pub fn owner(&self) -> BTreeMap<Vertex, Vertex> {
        self.branchsets
            .iter()
            .flat_map(|(&x, bs)| bs.iter().map(move |&v| (v, x)))
            .collect()
    }

    /// Composes `self` (model of `h` in `g`) with `inner` (model of `f` in `h`).
    pub fn compose(&self, inner: &MinorModel) -> MinorModel {
        let branchsets = inner
            .branchsets
            .iter()
            .map(|(&x, hs)| {
                let set = hs.iter().flat_map(|y| self.branchsets[y].iter().copied()).collect();
                (x, set)
            })
            .collect();
        MinorModel {
            branchsets,
            roots: self.roots.clone(),
        }
    }

    pub fn check(&self, g: &Graph, h: &Graph) -> Result<(), ModelDefect> {
        for x in h.vertices() {
            if !self.branchsets.contains_key(&x) {
                return Err(ModelDefect::MissingBranchset(x));
            }
        }
        let mut owner: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        for (&x, bs) in &self.branchsets {
            if !h.contains(x) {
                return Err(ModelDefect::ExtraBranchset(x));
            }
            if bs.is_empty() {
                return Err(ModelDefect::EmptyBranchset(x));
            }
            for &v in bs {
                if !g.contains(v) {
                    return Err(ModelDefect::ForeignVertex(x, v));
                }
                if let Some(y) = owner.insert(v, x) {
                    return Err(ModelDefect::Overlap(y, x));
                }
            }
            if !g.is_connected_set(bs) {
                return Err(ModelDefect::Disconnected(x));
            }
            if let Some(roots) = &self.roots {
                if bs.is_disjoint(roots) {
                    return Err(ModelDefect::Unrooted(x));
                }
            }
        }
        for (x, y) in h.edges() {
            let realized = self.branchsets[&x]
                .iter()
                .any(|&u| g.neighbors(u).iter().any(|w| owner.get(w) == Some(&y)));
            if !realized {
                return Err(ModelDefect::MissingEdge(x, y));
            }
        }
        Ok(())
    }
}

/// Whether `model` certifies `h` as a (rooted, if roots are set) minor of `g`.
pub fn verify_model(g: &Graph, h: &Graph, model: &MinorModel) -> bool {
    model.check(g, h).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_verifies() {
        let g = Graph::petersen();
        assert!(verify_model(&g, &g, &MinorModel::identity(&g)));
    }

    #[test]
    fn defects_detected() {
        let g = Graph::path(3);
        let h = Graph::path(2);
        let overlap = MinorModel::new(BTreeMap::from([
            (0, VertexSet::from([0, 1])),
            (1, VertexSet::from([1, 2])),
        ]));
        assert!(!verify_model(&g, &h, &overlap));
        let missing = MinorModel::new(BTreeMap::from([(0, VertexSet::from([0])), (1, VertexSet::from([2]))]));
        assert_eq!(missing.check(&g, &h), Err(ModelDefect::MissingEdge(0, 1)));
        let ok = MinorModel::new(BTreeMap::from([
            (0, VertexSet::from([0, 1])),
            (1, VertexSet::from([2])),
        ]));
        assert!(verify_model(&g, &h, &ok));
        assert!(!verify_model(&g, &h, &ok.clone().rooted(VertexSet::from([2]))));
    }
}
