//! Planar edge packing and partitioning toolkit.
//!
//! Builds the three gadget reductions from planar CNF expressions to
//! planar graph instances of the nonseparating-cycle, nonseparating
//! s-t-path, and tree + spanning-tree partition problems; translates
//! witnesses in both directions; and ships exact desk-scale oracles with
//! a verification harness that checks reduction correctness instance by
//! instance.

pub mod embed;
pub mod harness;
pub mod graph;
pub mod label;
pub mod sat;
pub mod reduce;
pub mod solve;
pub mod textio;

pub use graph::{Edge, EdgeSubset, Graph, GraphError, VertexId};
pub use label::{EdgeColor, Sign, VertexLabel};
