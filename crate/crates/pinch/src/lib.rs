//! Structural graph toolkit: identifications, rooted minors, surface tests,
//! societies, tree decompositions and the parameters built on them.

pub mod budget;
pub mod canon;
pub mod decomposition;
pub mod embed;
pub mod error;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod minors;
pub mod obstructions;
pub mod ops;
pub mod params;
pub mod partition;
pub mod societies;
pub mod verify;

pub use budget::{Bracket, Budget, Search};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, Vertex, VertexSet};
pub use ops::{Bridge, Separation};
pub use partition::VertexPartition;
