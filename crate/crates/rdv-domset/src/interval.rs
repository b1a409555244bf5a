//! The O(n) dominating-set algorithm for interval graphs given as
//! path-host representations.
//!
//! Same greedy as the RDV solver, but the geometry collapses: all nodes
//! share one column, so the pending structure is an unsorted list with
//! per-vertex handles. Operation A is a brute scan of that list (paid
//! for by the iterations it lets us skip), earlier neighbors are
//! bulk-marked by rank, and later neighbors are deferred to the selected
//! vertex's own iteration, where they are exactly the list contents.

use std::time::Instant;

use thiserror::Error;

use crate::model::{
    assign_coordinates, bottom_up_order, build_segments, edge_query, HostTree, RdvRepresentation,
    Violation,
};
use crate::solver::{Solution, SolveStats};
use crate::{NodeId, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntervalError {
    #[error("host tree is not a path")]
    NotAPath,
    #[error(transparent)]
    Invalid(#[from] Violation),
}

/// Makes all top nodes distinct by subdividing path links, keeping the
/// host a path and the intersection graph unchanged. Bottoms are left
/// alone; the interval algorithm does not need them distinct.
pub fn normalize_interval(rep: &RdvRepresentation) -> Result<RdvRepresentation, IntervalError> {
    if !rep.tree.is_path() {
        return Err(IntervalError::NotAPath);
    }
    rep.validate()?;
    let n = rep.vertex_count();
    let m = rep.tree.node_count();
    const NONE: NodeId = NodeId::MAX;
    let mut parent: Vec<NodeId> = (0..m)
        .map(|v| rep.tree.parent(v as NodeId).unwrap_or(NONE))
        .collect();
    let mut root = rep.tree.root();
    let mut top = rep.top.clone();
    let bottom = rep.bottom.clone();

    // Child edges in slot order; a path has one edge per non-root node,
    // and a subdivision chain rewrites that edge in place.
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(m + n);
    let mut edge_at = vec![usize::MAX; m];
    for v in 0..m as NodeId {
        for &c in rep.tree.children(v) {
            edge_at[c as usize] = edges.len();
            edges.push((v, c));
        }
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
        let old_parent = parent[node];
        let mut below = node as NodeId;
        for &w in &vs[1..] {
            let s = parent.len() as NodeId;
            parent.push(NONE);
            edges.push((s, below));
            parent[below as usize] = s;
            top[w as usize] = s;
            below = s;
        }
        parent[below as usize] = old_parent;
        if old_parent == NONE {
            root = below;
        } else {
            edges[edge_at[node]] = (old_parent, below);
        }
    }

    let out = RdvRepresentation {
        tree: HostTree::from_parts(root, parent, edges.iter().copied()),
        top,
        bottom,
    };
    debug_assert!(out.tree.is_path());
    Ok(out)
}

fn tops_distinct(rep: &RdvRepresentation) -> bool {
    let mut seen = vec![false; rep.tree.node_count()];
    rep.top
        .iter()
        .all(|&t| !std::mem::replace(&mut seen[t as usize], true))
}

/// Minimum dominating set for a path-host representation in
/// O(|T| + n) time.
pub fn solve_interval(rep: &RdvRepresentation) -> Result<Solution, IntervalError> {
    let start = Instant::now();
    if !rep.tree.is_path() {
        return Err(IntervalError::NotAPath);
    }
    rep.validate()?;
    let rep = if tops_distinct(rep) {
        rep.clone()
    } else {
        normalize_interval(rep)?
    };
    let n = rep.vertex_count();
    let coords = assign_coordinates(&rep.tree);
    let order = bottom_up_order(&rep, &coords);
    let segments = build_segments(&rep, &coords);

    // Pending list L by decreasing bottom depth; bucket sort.
    let max_depth = coords.y.iter().copied().max().unwrap_or(0) as usize;
    let mut buckets: Vec<Vec<VertexId>> = vec![Vec::new(); max_depth + 1];
    for v in 0..n {
        buckets[coords.y[rep.bottom[v] as usize] as usize].push(v as VertexId);
    }
    let pending: Vec<VertexId> = (0..=max_depth)
        .rev()
        .flat_map(|d| buckets[d].iter().copied())
        .collect();
    let mut next_pending = 0usize;

    // P: intrusive doubly-linked list over vertex ids, O(1) insert and
    // delete by handle.
    const NIL: u32 = u32::MAX;
    let mut next = vec![NIL; n];
    let mut prev = vec![NIL; n];
    let mut in_p = vec![false; n];
    let mut head = NIL;
    let push =
        |v: VertexId, head: &mut u32, next: &mut [u32], prev: &mut [u32], in_p: &mut [bool]| {
            in_p[v as usize] = true;
            next[v as usize] = *head;
            prev[v as usize] = NIL;
            if *head != NIL {
                prev[*head as usize] = v;
            }
            *head = v;
        };

    let mut stats = SolveStats::default();
    let mut dominated = vec![false; n];
    let mut dominated_by: Vec<Option<VertexId>> = vec![None; n];
    let mut in_d = vec![false; n];
    let mut selected = Vec::new();

    for i in 0..n {
        let z_i = order.order[i];
        let row = segments[z_i as usize].h_y;
        while next_pending < n && segments[pending[next_pending] as usize].v_y_hi >= row {
            push(
                pending[next_pending],
                &mut head,
                &mut next,
                &mut prev,
                &mut in_p,
            );
            next_pending += 1;
        }

        if !dominated[z_i as usize] && !in_d[z_i as usize] {
            // Operation A: brute scan of P for the maximum rank.
            let mut q = z_i;
            let mut cur = head;
            while cur != NIL {
                stats.scan_cost += 1;
                if order.rank[cur as usize] > order.rank[q as usize] {
                    q = cur;
                }
                cur = next[cur as usize];
            }
            selected.push(q);
            in_d[q as usize] = true;
            // Operation B, earlier side: everything from this rank up to
            // the selection is dominated by it.
            for r in i..order.rank[q as usize] as usize {
                let p = order.order[r];
                debug_assert!(
                    dominated[p as usize]
                        || edge_query(r as u32, order.rank[q as usize], &segments, &order),
                    "bulk-marked vertex must be adjacent to the selection"
                );
                if !dominated[p as usize] {
                    dominated[p as usize] = true;
                    dominated_by[p as usize] = Some(q);
                }
            }
        }

        if in_d[z_i as usize] {
            // Deferred Operation B, later side: P is exactly the closed
            // upper neighborhood of the selected vertex.
            let mut cur = head;
            while cur != NIL {
                if !dominated[cur as usize] {
                    dominated[cur as usize] = true;
                    dominated_by[cur as usize] = Some(z_i);
                }
                cur = next[cur as usize];
            }
        }

        // Remove z_i from P.
        debug_assert!(in_p[z_i as usize]);
        in_p[z_i as usize] = false;
        let (pr, nx) = (prev[z_i as usize], next[z_i as usize]);
        if pr != NIL {
            next[pr as usize] = nx;
        } else {
            head = nx;
        }
        if nx != NIL {
            prev[nx as usize] = pr;
        }
    }

    debug_assert!(dominated.iter().all(|&d| d));
    stats.wall_ns = start.elapsed().as_nanos();
    Ok(Solution {
        selected,
        dominated_by,
        stats,
    })
}
