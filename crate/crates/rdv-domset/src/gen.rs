//! Deterministic, seeded instance generators.
//!
//! The PRNG is pinned by its recurrence so any implementation in any
//! language reproduces the same instances bit for bit.

use crate::model::{HostTree, RdvRepresentation};
use crate::NodeId;

/// SplitMix64. State update `s += 0x9E3779B97F4A7C15`; output
/// `z = s; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9;
/// z = (z ^ z>>27) * 0x94D049BB133111EB; z ^ z>>31`,
/// all in wrapping 64-bit arithmetic.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound` by modulo. `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

/// A random RDV instance: a uniform random recursive tree shape (each
/// node picks its parent uniformly among earlier nodes), then per vertex
/// a uniform random top node and a random downward walk of length at most
/// `max_path_len` to pick the bottom.
pub fn gen_rdv(seed: u64, n: usize, tree_nodes: usize, max_path_len: usize) -> RdvRepresentation {
    assert!(tree_nodes >= 1);
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::with_capacity(tree_nodes - 1);
    for node in 1..tree_nodes as NodeId {
        let parent = rng.below(node as u64) as NodeId;
        edges.push((parent, node));
    }
    let tree = HostTree::new(tree_nodes, 0, &edges).expect("generated shape is a tree");

    let mut top = Vec::with_capacity(n);
    let mut bottom = Vec::with_capacity(n);
    for _ in 0..n {
        let t = rng.below(tree_nodes as u64) as NodeId;
        let steps = rng.below(max_path_len as u64 + 1);
        let mut node = t;
        for _ in 0..steps {
            let cs = tree.children(node);
            if cs.is_empty() {
                break;
            }
            node = cs[rng.below(cs.len() as u64) as usize];
        }
        top.push(t);
        bottom.push(node);
    }
    RdvRepresentation { tree, top, bottom }
}

/// A random interval instance: the host is a path of `path_len` nodes
/// rooted at one end, and every vertex is a random subpath.
pub fn gen_interval(seed: u64, n: usize, path_len: usize) -> RdvRepresentation {
    assert!(path_len >= 1);
    let mut rng = SplitMix64::new(seed.wrapping_add(0x1D7E_11A0)); // domain-separated from gen_rdv
    let edges: Vec<(NodeId, NodeId)> = (1..path_len as NodeId).map(|i| (i - 1, i)).collect();
    let tree = HostTree::new(path_len, 0, &edges).expect("path");
    let mut top = Vec::with_capacity(n);
    let mut bottom = Vec::with_capacity(n);
    for _ in 0..n {
        let a = rng.below(path_len as u64) as NodeId;
        let b = rng.below(path_len as u64) as NodeId;
        top.push(a.min(b));
        bottom.push(a.max(b));
    }
    RdvRepresentation { tree, top, bottom }
}

/// The 7-vertex worked example: a 10-node host tree with two co-located
/// top pairs at inner nodes, two tops at the root, and one shared bottom
/// leaf. Used by the golden tests.
///
/// Nodes: 0 root; 1, 8 children of 0; 2, 5, 7 children of 1; 3, 4
/// children of 2; 6 child of 5; 9 child of 8.
pub fn gen_paper_example() -> RdvRepresentation {
    let edges = [
        (0, 1),
        (0, 8),
        (1, 2),
        (1, 5),
        (1, 7),
        (2, 3),
        (2, 4),
        (5, 6),
        (8, 9),
    ];
    let tree = HostTree::new(10, 0, &edges).expect("static tree");
    RdvRepresentation {
        tree,
        top: vec![2, 2, 5, 1, 1, 0, 0],
        bottom: vec![3, 2, 6, 4, 6, 7, 9],
    }
}
