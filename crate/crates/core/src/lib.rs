//! Clique-sparse graph toolkit: clique quotients, local parameters, width
//! measures, induced Menger separations and coupled-pair patterns.

pub mod cliques;
pub mod corpus;
pub mod decomposition;
mod error;
pub mod generators;
pub mod graph;
pub mod measure;
pub mod menger;
pub mod params;
pub mod patterns;
pub mod rank;

pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, VertexSet};
