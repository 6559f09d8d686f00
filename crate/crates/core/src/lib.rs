pub mod bisplit;
pub mod canon;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod lemmas;
pub mod lines;
pub mod metric;
pub mod proof;
pub mod sweep;
pub mod vset;

pub use error::{Error, Result};
pub use graph::Graph;
pub use vset::VertexSet;
