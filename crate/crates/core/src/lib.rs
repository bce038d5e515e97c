//! Removal-cospectral vertex sets, replaceable vertices and edges, and the
//! vertex/edge compositions that turn them into families of cospectral
//! regular graphs.

pub mod bijection;
pub mod canon;
pub mod compose;
pub mod error;
pub mod graph;
pub mod removal;
pub mod spectrum;
pub mod survey;

pub use bijection::Bijection;
pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexSet};
pub use spectrum::CharPoly;
