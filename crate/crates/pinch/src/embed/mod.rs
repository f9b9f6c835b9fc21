//! Surface membership tests with checkable certificates.

pub mod pinched;
pub mod planar;
pub mod projective;
pub mod rotation;

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Vertex, VertexSet};
use crate::minors::MinorModel;

pub use pinched::{edge_apex_supergraph, is_edge_apex, is_pinched, neighborhood_class_count, SplitWitness};
pub use planar::{is_planar_graph, kuratowski_subgraph, planar_embedding, KuratowskiKind, KuratowskiWitness};
pub use projective::{is_minimal_nonprojective, is_projective, minimal_nonprojective_minor, projective_embedding};
pub use rotation::SignedRotation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// Embedding whose Euler genus is checked by face tracing.
    Embedding(SignedRotation),
    Kuratowski(KuratowskiWitness),
    /// Model of obstruction number `index` of the loaded list.
    Obstruction {
        index: usize,
        model: MinorModel,
    },
    Split(SplitWitness),
    Edge(Edge),
    /// One Kuratowski subgraph of `G - e` for every edge `e`.
    EveryEdge(Vec<(Edge, KuratowskiWitness)>),
    /// One Kuratowski subgraph of the split graph for every vertex split.
    EverySplit(Vec<(SplitWitness, KuratowskiWitness)>),
    /// Two disjoint paths with interleaved ends on the boundary.
    Cross(Vec<Vertex>, Vec<Vertex>),
    Vertices(VertexSet),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedVerdict {
    pub answer: Answer,
    pub certificate: Option<Certificate>,
}

impl EmbedVerdict {
    pub fn yes(c: Certificate) -> Self {
        EmbedVerdict {
            answer: Answer::Yes,
            certificate: Some(c),
        }
    }

    pub fn no(c: Certificate) -> Self {
        EmbedVerdict {
            answer: Answer::No,
            certificate: Some(c),
        }
    }

    pub fn unknown() -> Self {
        EmbedVerdict {
            answer: Answer::Unknown,
            certificate: None,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn is_no(&self) -> bool {
        self.answer == Answer::No
    }
}

/// Planarity with a rotation-system or Kuratowski certificate.
pub fn is_planar(g: &crate::Graph) -> EmbedVerdict {
    match planar_embedding(g) {
        Some(r) => EmbedVerdict::yes(Certificate::Embedding(r)),
        None => EmbedVerdict::no(Certificate::Kuratowski(
            kuratowski_subgraph(g).expect("nonplanar graphs have a Kuratowski subgraph"),
        )),
    }
}
