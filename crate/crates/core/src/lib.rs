//! Triangle-centric 3D adjacency matrices for undirected graphs.
//!
//! Parse an edge list into a [`Graph`], enumerate its triangles into a
//! [`TriMatrix`], order the nodes with [`reorder`] so dense triangle
//! clusters become contiguous blocks, and bundle everything into a
//! [`SceneDocument`] for the browser viewer.

pub mod cli;
pub mod error;
pub mod graph;
pub mod layout;
pub mod matrix;
pub mod reorder;
pub mod scene;
pub mod server;

pub use error::{Error, Result};
pub use graph::{Graph, Triangle, TriangleStats};
pub use layout::{force_layout, Layout};
pub use matrix::{SymTriMatrix, TriMatrix};
pub use reorder::{reorder, Ordering};
pub use scene::{build_scene, OrderingDocument, Palette, SceneDocument};
