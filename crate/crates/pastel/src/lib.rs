//! Globular plane graphs, their nerves and the marked-subgraph calculus,
//! pasting-diagram algebra, simplicial categories of pasting diagrams,
//! inner-anodyne filtration certificates, and pasting composition in strict
//! 2-categories.

pub mod anodyne;
pub mod catalog;
pub mod compositor;
pub mod nerve;
pub mod pasting;
pub mod scat;
pub mod paths_poset;
pub mod sset;
pub mod error;
pub mod plane_graph;

pub use error::{Error, Result};
