//! Crystal structure on 5-vertex ice models.
//!
//! A partition λ determines a boundary condition; the models satisfying it
//! carry crystal operators that move boxes (type 2 vertices) along
//! diagonals. This crate builds those models and operators, generates the
//! full crystal graph, verifies the Stembridge regularity axioms and the
//! crystal axioms, and certifies the graph against an independently built
//! tableau crystal.

pub mod crystal_graph;
pub mod crystal_ops;
pub mod graph;
pub mod ice_model;
pub mod partition;
pub mod stembridge;
pub mod tableau;

pub use crystal_graph::{generate, highest_weight_model, IceCrystal};
pub use crystal_ops::{e_op, f_op, weight, Weight};
pub use graph::CrystalGraph;
pub use ice_model::{BoxSet, IceModel, Sign, VertexConfig};
pub use partition::Partition;
