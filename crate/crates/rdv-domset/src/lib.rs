//! Dominating sets in RDV graphs, computed directly from the intersection
//! representation.
//!
//! An RDV graph is the vertex-intersection graph of downward paths in a
//! rooted tree. Given such a representation, [`solver::solve`] finds a
//! minimum dominating set in `O(|T| + n log^2 n)` time without ever
//! materializing the edge set, by translating adjacency into intersections
//! of axis-parallel segments and driving a greedy with a priority search
//! tree and two ray-shooting structures. [`interval::solve_interval`]
//! specializes this to path hosts (interval graphs) in `O(|T| + n)` time,
//! and [`solver::solve_independent_set`] reuses the same machinery for a
//! maximum independent set.
//!
//! All coordinates are exact integers (tree depths and leaf ranks); there
//! is no floating point anywhere.

pub mod format;
pub mod gen;
pub mod interval;
pub mod model;
pub mod oracle;
pub mod pst;
pub mod rayshoot;
pub mod solver;

pub use model::{HostTree, NodeCoordinates, RdvRepresentation, SegmentPair, VertexOrder};
pub use solver::{Solution, SolveStats};

/// Index of a node in the host tree.
pub type NodeId = u32;
/// Index of a vertex of the represented graph.
pub type VertexId = u32;
