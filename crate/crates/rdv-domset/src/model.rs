//! The RDV representation: host tree, downward paths, node coordinates,
//! segments, and the constant-time geometric adjacency test.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::{NodeId, VertexId};

/// Errors while building a [`HostTree`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("node {0} out of range (tree has {1} nodes)")]
    NodeOutOfRange(NodeId, usize),
    #[error("node {0} has more than one parent")]
    MultipleParents(NodeId),
    #[error("root {0} must not have a parent")]
    RootHasParent(NodeId),
    #[error("tree is not connected or contains a cycle (node {0} unreachable from root)")]
    NotATree(NodeId),
    #[error("tree must have at least one node")]
    Empty,
}

/// Violations reported by [`RdvRepresentation::validate`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Violation {
    #[error("vertex {vertex}: top node {node} out of range")]
    TopOutOfRange { vertex: VertexId, node: NodeId },
    #[error("vertex {vertex}: bottom node {node} out of range")]
    BottomOutOfRange { vertex: VertexId, node: NodeId },
    #[error("vertex {vertex}: bottom {bottom} is not a descendant of top {top}")]
    BottomNotBelowTop {
        vertex: VertexId,
        top: NodeId,
        bottom: NodeId,
    },
}

/// A rooted tree with ordered children. Children order is taken from the
/// input and never reordered; it determines the left-to-right leaf order
/// and with it all x-coordinates.
/// Sentinel for "no parent" in the packed parent table.
const NO_PARENT: NodeId = NodeId::MAX;

#[derive(Debug, Clone)]
pub struct HostTree {
    root: NodeId,
    /// Parent per node, `NO_PARENT` for the root; packed to half the
    /// width of an `Option` so big normalized trees traverse faster.
    parent: Vec<NodeId>,
    /// Child lists in CSR form: the children of `v` are
    /// `list[head[v]..head[v + 1]]`. One flat allocation keeps
    /// traversals of normalized trees (linear in the vertex count)
    /// cache-friendly.
    head: Vec<u32>,
    list: Vec<NodeId>,
}

impl HostTree {
    /// Builds a tree from `(parent, child)` edges. Edge order fixes the
    /// children order at every node.
    pub fn new(
        node_count: usize,
        root: NodeId,
        edges: &[(NodeId, NodeId)],
    ) -> Result<Self, TreeError> {
        if node_count == 0 {
            return Err(TreeError::Empty);
        }
        if (root as usize) >= node_count {
            return Err(TreeError::NodeOutOfRange(root, node_count));
        }
        if node_count >= NO_PARENT as usize {
            return Err(TreeError::NodeOutOfRange(NO_PARENT, node_count));
        }
        let mut parent = vec![NO_PARENT; node_count];
        for &(p, c) in edges {
            if (p as usize) >= node_count {
                return Err(TreeError::NodeOutOfRange(p, node_count));
            }
            if (c as usize) >= node_count {
                return Err(TreeError::NodeOutOfRange(c, node_count));
            }
            if c == root {
                return Err(TreeError::RootHasParent(root));
            }
            if parent[c as usize] != NO_PARENT {
                return Err(TreeError::MultipleParents(c));
            }
            parent[c as usize] = p;
        }
        let tree = HostTree::from_parts(root, parent, edges.iter().copied());
        // Every node must be reachable from the root; with unique parents
        // this also rules out cycles.
        let mut seen = vec![false; node_count];
        let mut stack = vec![root];
        seen[root as usize] = true;
        while let Some(v) = stack.pop() {
            for &c in tree.children(v) {
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    stack.push(c);
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(TreeError::NotATree(v as NodeId));
        }
        Ok(tree)
    }

    /// A tree with a single node, which is the root.
    /// Assembles a tree from already-consistent parts: the parent table
    /// plus the `(parent, child)` edges, whose order fixes the children
    /// order at every node (a stable counting sort by parent).
    pub(crate) fn from_parts(
        root: NodeId,
        parent: Vec<NodeId>,
        edges: impl IntoIterator<Item = (NodeId, NodeId)> + Clone,
    ) -> Self {
        let m = parent.len();
        let mut head = vec![0u32; m + 1];
        for (p, _) in edges.clone() {
            head[p as usize + 1] += 1;
        }
        for i in 1..=m {
            head[i] += head[i - 1];
        }
        let mut fill = head.clone();
        let mut list = vec![0 as NodeId; head[m] as usize];
        for (p, c) in edges {
            list[fill[p as usize] as usize] = c;
            fill[p as usize] += 1;
        }
        HostTree {
            root,
            parent,
            head,
            list,
        }
    }

    pub fn singleton() -> Self {
        HostTree {
            root: 0,
            parent: vec![NO_PARENT],
            head: vec![0, 0],
            list: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        let p = self.parent[v as usize];
        (p != NO_PARENT).then_some(p)
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.list[self.head[v as usize] as usize..self.head[v as usize + 1] as usize]
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.head[v as usize] == self.head[v as usize + 1]
    }

    /// True when every node has at most one child (the host of an
    /// interval representation).
    pub fn is_path(&self) -> bool {
        self.head.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// Nodes in preorder; children are visited in their stored order, so
    /// leaves appear in left-to-right order.
    fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.node_count());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            for &c in self.children(v).iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    /// Euler-tour intervals: `u` is an ancestor of (or equal to) `v` iff
    /// `tin[u] <= tin[v] < tout[u]`.
    fn euler_intervals(&self) -> (Vec<u32>, Vec<u32>) {
        let mut tin = vec![0u32; self.node_count()];
        let mut tout = vec![0u32; self.node_count()];
        let mut clock = 0u32;
        // (node, entering?)
        let mut stack = vec![(self.root, true)];
        while let Some((v, enter)) = stack.pop() {
            if enter {
                tin[v as usize] = clock;
                clock += 1;
                stack.push((v, false));
                for &c in self.children(v).iter().rev() {
                    stack.push((c, true));
                }
            } else {
                tout[v as usize] = clock;
            }
        }
        (tin, tout)
    }
}

/// An RDV representation: a host tree plus, per vertex, the top and bottom
/// node of its downward path.
#[derive(Debug, Clone)]
pub struct RdvRepresentation {
    pub tree: HostTree,
    pub top: Vec<NodeId>,
    pub bottom: Vec<NodeId>,
}

impl RdvRepresentation {
    pub fn vertex_count(&self) -> usize {
        self.top.len()
    }

    /// Checks every representation invariant and reports the first
    /// violating vertex.
    pub fn validate(&self) -> Result<(), Violation> {
        let m = self.tree.node_count();
        for v in 0..self.vertex_count() {
            if (self.top[v] as usize) >= m {
                return Err(Violation::TopOutOfRange {
                    vertex: v as VertexId,
                    node: self.top[v],
                });
            }
            if (self.bottom[v] as usize) >= m {
                return Err(Violation::BottomOutOfRange {
                    vertex: v as VertexId,
                    node: self.bottom[v],
                });
            }
        }
        let (tin, tout) = self.tree.euler_intervals();
        for v in 0..self.vertex_count() {
            let (t, b) = (self.top[v] as usize, self.bottom[v] as usize);
            if !(tin[t] <= tin[b] && tin[b] < tout[t]) {
                return Err(Violation::BottomNotBelowTop {
                    vertex: v as VertexId,
                    top: self.top[v],
                    bottom: self.bottom[v],
                });
            }
        }
        Ok(())
    }
}

/// Grid coordinates of the host-tree nodes: `y` is the depth (root at 0),
/// `x` the 1-based rank of the leftmost descendant leaf. `max_x` is the
/// rank of the rightmost descendant leaf, which bounds every horizontal
/// segment on the right.
#[derive(Debug, Clone)]
pub struct NodeCoordinates {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
    pub max_x: Vec<i64>,
}

/// Assigns coordinates in time linear in the node count.
pub fn assign_coordinates(tree: &HostTree) -> NodeCoordinates {
    let m = tree.node_count();
    let mut x = vec![0i64; m];
    let mut y = vec![0i64; m];
    let mut max_x = vec![0i64; m];
    let order = tree.preorder();
    let mut next_leaf = 0i64;
    for &v in &order {
        if let Some(p) = tree.parent(v) {
            y[v as usize] = y[p as usize] + 1;
        }
        if tree.is_leaf(v) {
            next_leaf += 1;
            x[v as usize] = next_leaf;
            max_x[v as usize] = next_leaf;
        }
    }
    // Parents precede children in preorder, so a reverse sweep sees all
    // children before the parent.
    for &v in order.iter().rev() {
        if !tree.is_leaf(v) {
            let cs = tree.children(v);
            x[v as usize] = x[cs[0] as usize];
            max_x[v as usize] = max_x[*cs.last().unwrap() as usize];
        }
    }
    NodeCoordinates { x, y, max_x }
}

/// A bottom-up enumeration: vertices sorted by decreasing depth of their
/// top node, ties broken by ascending vertex id.
#[derive(Debug, Clone)]
pub struct VertexOrder {
    /// `order[r]` is the vertex at rank `r`.
    pub order: Vec<VertexId>,
    /// `rank[v]` is the rank of vertex `v`.
    pub rank: Vec<u32>,
}

/// Bucket sort by decreasing `y(t(z))` in `O(|T| + n)`.
pub fn bottom_up_order(rep: &RdvRepresentation, coords: &NodeCoordinates) -> VertexOrder {
    let max_depth = coords.y.iter().copied().max().unwrap_or(0) as usize;
    let mut buckets: Vec<Vec<VertexId>> = vec![Vec::new(); max_depth + 1];
    for v in 0..rep.vertex_count() {
        buckets[coords.y[rep.top[v] as usize] as usize].push(v as VertexId);
    }
    let mut order = Vec::with_capacity(rep.vertex_count());
    for depth in (0..=max_depth).rev() {
        order.extend_from_slice(&buckets[depth]);
    }
    let mut rank = vec![0u32; rep.vertex_count()];
    for (r, &v) in order.iter().enumerate() {
        rank[v as usize] = r as u32;
    }
    VertexOrder { order, rank }
}

/// The per-vertex segment pair. The horizontal segment sits at the top
/// node's row and spans its descendants' x-range; the vertical segment
/// sits at the bottom leaf's column and spans the path's depth range.
/// Its top endpoint lies on the horizontal segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentPair {
    pub h_y: i64,
    pub h_x_lo: i64,
    pub h_x_hi: i64,
    pub v_x: i64,
    pub v_y_lo: i64,
    pub v_y_hi: i64,
}

/// Builds the segment pair of every vertex.
pub fn build_segments(rep: &RdvRepresentation, coords: &NodeCoordinates) -> Vec<SegmentPair> {
    (0..rep.vertex_count())
        .map(|v| {
            let t = rep.top[v] as usize;
            let b = rep.bottom[v] as usize;
            SegmentPair {
                h_y: coords.y[t],
                h_x_lo: coords.x[t],
                h_x_hi: coords.max_x[t],
                v_x: coords.x[b],
                v_y_lo: coords.y[t],
                v_y_hi: coords.y[b],
            }
        })
        .collect()
}

/// True when all horizontal segments are pairwise disjoint and likewise
/// all vertical segments; guaranteed after [`normalize`].
pub fn segments_disjoint(segments: &[SegmentPair]) -> bool {
    fn family_disjoint(mut segs: Vec<(i64, i64, i64)>) -> bool {
        segs.sort_unstable();
        let mut reach: Option<(i64, i64)> = None; // (line, rightmost end so far)
        for (line, lo, hi) in segs {
            if let Some((l, r)) = reach {
                if l == line && lo <= r {
                    return false;
                }
            }
            match reach {
                Some((l, r)) if l == line => reach = Some((l, r.max(hi))),
                _ => reach = Some((line, hi)),
            }
        }
        true
    }
    family_disjoint(
        segments
            .iter()
            .map(|s| (s.h_y, s.h_x_lo, s.h_x_hi))
            .collect(),
    ) && family_disjoint(
        segments
            .iter()
            .map(|s| (s.v_x, s.v_y_lo, s.v_y_hi))
            .collect(),
    )
}

/// The geometric adjacency test: for ranks `i < j` in bottom-up order,
/// the edge exists iff the vertical segment of the later vertex crosses
/// the horizontal segment of the earlier one. Two interval-containment
/// checks, O(1).
pub fn edge_query(i: u32, j: u32, segments: &[SegmentPair], order: &VertexOrder) -> bool {
    assert!(i < j, "edge_query requires i < j in bottom-up order");
    let si = &segments[order.order[i as usize] as usize];
    let sj = &segments[order.order[j as usize] as usize];
    si.h_x_lo <= sj.v_x && sj.v_x <= si.h_x_hi && sj.v_y_lo <= si.h_y && si.h_y <= sj.v_y_hi
}

/// True when the representation already has pairwise distinct tops,
/// pairwise distinct leaf bottoms, and no leaf tops.
pub fn is_normalized(rep: &RdvRepresentation) -> bool {
    let mut top_seen = vec![false; rep.tree.node_count()];
    let mut bottom_seen = vec![false; rep.tree.node_count()];
    for v in 0..rep.vertex_count() {
        let (t, b) = (rep.top[v], rep.bottom[v]);
        if rep.tree.is_leaf(t) || !rep.tree.is_leaf(b) {
            return false;
        }
        if top_seen[t as usize] || bottom_seen[b as usize] {
            return false;
        }
        top_seen[t as usize] = true;
        bottom_seen[b as usize] = true;
    }
    true
}

/// Rewrites the representation so that all tops are pairwise distinct,
/// all bottoms are pairwise distinct leaves, and no top is a leaf, while
/// keeping the intersection graph unchanged under the identity vertex
/// mapping.
///
/// Every vertex gets a fresh private leaf below its old bottom. At a node
/// that is the top of `k >= 2` vertices, the link to the parent is
/// subdivided with `k - 1` new nodes; the lowest-id vertex keeps the node
/// and the others move up in ascending id order. When the node is the
/// root, the topmost subdivision node becomes the new root. At most two
/// nodes are added per vertex.
pub fn normalize(rep: &RdvRepresentation) -> Result<RdvRepresentation, Violation> {
    rep.validate()?;
    let n = rep.vertex_count();
    let m = rep.tree.node_count();
    let mut parent: Vec<NodeId> = (0..m)
        .map(|v| rep.tree.parent(v as NodeId).unwrap_or(NO_PARENT))
        .collect();
    let mut root = rep.tree.root();
    let mut top = rep.top.clone();
    let mut bottom = rep.bottom.clone();

    // Child edges in slot order: the original edges first (a chain may
    // rewrite its slot in place), then the new private leaves in vertex
    // order, then the subdivision chain links.
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(m + 2 * n);
    let mut edge_at = vec![usize::MAX; m];
    for v in 0..m as NodeId {
        for &c in rep.tree.children(v) {
            edge_at[c as usize] = edges.len();
            edges.push((v, c));
        }
    }

    // New private leaf bottoms, appended in ascending vertex id.
    for b in bottom.iter_mut().take(n) {
        let leaf = parent.len() as NodeId;
        parent.push(*b);
        edges.push((*b, leaf));
        *b = leaf;
    }

    // Group vertices by top node (ascending id within each node);
    // counting sort, so grouping stays linear.
    let mut group = vec![0u32; m + 1];
    for v in 0..n {
        group[top[v] as usize + 1] += 1;
    }
    for i in 1..=m {
        group[i] += group[i - 1];
    }
    let mut fill = group.clone();
    let mut grouped = vec![0 as VertexId; n];
    for v in 0..n {
        grouped[fill[rep.top[v] as usize] as usize] = v as VertexId;
        fill[rep.top[v] as usize] += 1;
    }

    for node in 0..m {
        let vs = &grouped[group[node] as usize..group[node + 1] as usize];
        if vs.len() < 2 {
            continue;
        }
        // The lowest id keeps `node`; the rest get subdivision nodes on
        // the way up to the old parent, in ascending id order.
        let old_parent = parent[node];
        let mut below = node as NodeId;
        for &w in &vs[1..] {
            let s = parent.len() as NodeId;
            parent.push(NO_PARENT);
            edges.push((s, below));
            parent[below as usize] = s;
            top[w as usize] = s;
            below = s;
        }
        parent[below as usize] = old_parent;
        if old_parent == NO_PARENT {
            root = below;
        } else {
            edges[edge_at[node]] = (old_parent, below);
        }
    }

    Ok(RdvRepresentation {
        tree: HostTree::from_parts(root, parent, edges.iter().copied()),
        top,
        bottom,
    })
}

/// Explicit adjacency lists of the intersection graph, by direct
/// path-intersection testing. Oracle support only; the solvers never
/// call this.
pub fn materialize_graph(rep: &RdvRepresentation) -> Vec<Vec<VertexId>> {
    let n = rep.vertex_count();
    // Vertices covering each node, found by walking each path bottom-up.
    let mut cover: Vec<Vec<VertexId>> = vec![Vec::new(); rep.tree.node_count()];
    for v in 0..n {
        let mut node = rep.bottom[v];
        loop {
            cover[node as usize].push(v as VertexId);
            if node == rep.top[v] {
                break;
            }
            node = rep.tree.parent(node).expect("bottom below top");
        }
    }
    let mut edges = BTreeSet::new();
    for vs in &cover {
        for (a, &u) in vs.iter().enumerate() {
            for &w in &vs[a + 1..] {
                edges.insert((u.min(w), u.max(w)));
            }
        }
    }
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for (u, w) in edges {
        adj[u as usize].push(w);
        adj[w as usize].push(u);
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single() -> RdvRepresentation {
        RdvRepresentation {
            tree: HostTree::singleton(),
            top: vec![0],
            bottom: vec![0],
        }
    }

    #[test]
    fn singleton_rep_validates() {
        assert_eq!(single().validate(), Ok(()));
    }

    #[test]
    fn bottom_above_top_is_reported() {
        // Path 0 -> 1; vertex has top at the leaf and bottom at the root.
        let tree = HostTree::new(2, 0, &[(0, 1)]).unwrap();
        let rep = RdvRepresentation {
            tree,
            top: vec![1],
            bottom: vec![0],
        };
        assert_eq!(
            rep.validate(),
            Err(Violation::BottomNotBelowTop {
                vertex: 0,
                top: 1,
                bottom: 0
            })
        );
    }

    #[test]
    fn tree_rejects_cycles_and_disconnection() {
        assert!(matches!(
            HostTree::new(3, 0, &[(0, 1)]),
            Err(TreeError::NotATree(2))
        ));
        assert!(matches!(
            HostTree::new(3, 0, &[(0, 1), (1, 2), (2, 1)]),
            Err(TreeError::MultipleParents(1))
        ));
    }

    #[test]
    fn coordinates_on_root_only_tree() {
        let coords = assign_coordinates(&HostTree::singleton());
        assert_eq!(coords.x, vec![1]);
        assert_eq!(coords.y, vec![0]);
    }

    #[test]
    fn coordinates_on_path() {
        let k = 6;
        let edges: Vec<(NodeId, NodeId)> = (1..k).map(|i| (i - 1, i)).collect();
        let tree = HostTree::new(k as usize, 0, &edges).unwrap();
        let coords = assign_coordinates(&tree);
        for v in 0..k as usize {
            assert_eq!(coords.x[v], 1);
            assert_eq!(coords.y[v], v as i64);
        }
    }

    #[test]
    fn leaves_numbered_left_to_right() {
        // Root with children a, b; b has two children.
        let tree = HostTree::new(5, 0, &[(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        let coords = assign_coordinates(&tree);
        assert_eq!(coords.x[1], 1);
        assert_eq!(coords.x[3], 2);
        assert_eq!(coords.x[4], 3);
        assert_eq!(coords.x[0], 1);
        assert_eq!(coords.max_x[0], 3);
        assert_eq!(coords.x[2], 2);
        assert_eq!(coords.max_x[2], 3);
    }

    #[test]
    fn order_breaks_ties_by_vertex_id() {
        // Two vertices with tops at the same depth.
        let tree = HostTree::new(3, 0, &[(0, 1), (0, 2)]).unwrap();
        let rep = RdvRepresentation {
            tree,
            top: vec![2, 1],
            bottom: vec![2, 1],
        };
        let coords = assign_coordinates(&rep.tree);
        let order = bottom_up_order(&rep, &coords);
        assert_eq!(order.order, vec![0, 1]);
        assert_eq!(order.rank, vec![0, 1]);
    }

    #[test]
    fn normalize_idempotent_adjacency() {
        let rep = single();
        let norm = normalize(&rep).unwrap();
        assert!(is_normalized(&norm));
        assert_eq!(materialize_graph(&rep), materialize_graph(&norm));
        let again = normalize(&norm).unwrap();
        assert_eq!(materialize_graph(&norm), materialize_graph(&again));
    }

    #[test]
    fn normalize_grows_by_at_most_two_per_vertex() {
        // Five identical vertices all on the root of a singleton tree.
        let rep = RdvRepresentation {
            tree: HostTree::singleton(),
            top: vec![0; 5],
            bottom: vec![0; 5],
        };
        let norm = normalize(&rep).unwrap();
        assert!(is_normalized(&norm));
        assert!(norm.tree.node_count() <= rep.tree.node_count() + 2 * 5);
        assert_eq!(materialize_graph(&rep), materialize_graph(&norm));
        let coords = assign_coordinates(&norm.tree);
        let segs = build_segments(&norm, &coords);
        assert!(segments_disjoint(&segs));
    }

    #[test]
    fn segment_of_simple_vertex() {
        // Root -> leaf, vertex spans both; after normalize h contains v_x.
        let tree = HostTree::new(2, 0, &[(0, 1)]).unwrap();
        let rep = RdvRepresentation {
            tree,
            top: vec![0],
            bottom: vec![1],
        };
        let norm = normalize(&rep).unwrap();
        let coords = assign_coordinates(&norm.tree);
        let segs = build_segments(&norm, &coords);
        let s = segs[0];
        assert_eq!(s.h_y, s.v_y_lo);
        assert!(s.h_x_lo <= s.v_x && s.v_x <= s.h_x_hi);
        assert!(s.v_y_lo <= s.v_y_hi);
    }
}
