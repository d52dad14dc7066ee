//! Certifying recognition of normal Helly circular-arc (NHCA) graphs.
//!
//! The entry point is [`driver::recognize`], which returns either a normal and
//! Helly circular-arc model of the input graph or a minimal forbidden induced
//! subgraph, and [`driver::verify_certificate`], which checks either answer
//! independently of how it was produced.

pub mod arcmodel;
pub mod auxgraph;
pub mod catalog;
pub mod chordal;
pub mod driver;
pub mod extraction;
pub mod graph;
pub mod holeframe;
pub mod interval;
pub mod oracle;
pub mod pq;

pub use graph::{parse_graph, Graph};
