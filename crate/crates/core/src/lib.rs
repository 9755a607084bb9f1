//! Tree Ramsey and Turán numbers: closed-form evaluation, witness graphs,
//! certificates and brute-force cross-checks.

pub mod canon;
pub mod certify;
pub mod config;
pub mod containment;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod oracle;
pub mod ramsey;
pub mod trees;
pub mod turan;
pub mod witness;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use trees::{Family, TreeSpec};
