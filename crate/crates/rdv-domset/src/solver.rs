//! Greedy minimum dominating set over a normalized RDV representation,
//! with the neighborhood operations served by geometric structures:
//!
//! * Operation A (max-index vertex in the closed neighborhood of the
//!   current vertex) is a range-maximum query on a priority search tree
//!   holding one tuple per vertex whose vertical segment spans the
//!   current row.
//! * Operation B (mark the whole closed neighborhood of the chosen
//!   vertex dominated) is repeated first-hit ray shooting with deletion,
//!   downward for earlier neighbors and rightward for later ones.
//!
//! The same Operation-B machinery drives the greedy maximum independent
//! set. The solvers never materialize the edge set.

use std::time::Instant;

use crate::model::{
    self, assign_coordinates, bottom_up_order, build_segments, NodeCoordinates, RdvRepresentation,
    SegmentPair, VertexOrder, Violation,
};
use crate::pst::{PrioritySearchTree, PstEntry};
use crate::rayshoot::{HSegment, HorizontalSegments, VSegment, VerticalSegments};
use crate::VertexId;

/// Operation counters for one solve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Priority search tree inserts, deletes and range-maximum queries.
    pub pst_ops: u64,
    /// Ray-shooting queries, both orientations.
    pub ray_queries: u64,
    /// Elements scanned by the interval solver's Operation A (unused by
    /// the RDV solver).
    pub scan_cost: u64,
    pub wall_ns: u128,
}

/// A dominating set plus per-vertex audit trail.
#[derive(Debug, Clone)]
pub struct Solution {
    /// Selected vertices, in selection order.
    pub selected: Vec<VertexId>,
    /// For every vertex, the selection that first dominated it.
    pub dominated_by: Vec<Option<VertexId>>,
    pub stats: SolveStats,
}

/// Record of one Operation-B run, for golden tests: every downward query
/// result (`None` = null) and every rightward query result with its
/// accept/reject verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionTrace {
    pub selected: VertexId,
    pub down: Vec<Option<VertexId>>,
    pub right: Vec<Option<(VertexId, bool)>>,
}

/// Finds a minimum dominating set. The representation is normalized
/// internally when needed; vertex ids are preserved throughout.
pub fn solve(rep: &RdvRepresentation) -> Result<Solution, Violation> {
    solve_inner(rep, false, None)
}

/// Like [`solve`], additionally recording the Operation-B query trace of
/// every selection.
pub fn solve_traced(rep: &RdvRepresentation) -> Result<(Solution, Vec<SelectionTrace>), Violation> {
    let mut traces = Vec::new();
    let sol = solve_inner(rep, false, Some(&mut traces))?;
    Ok((sol, traces))
}

/// Like [`solve`], but re-checking the priority-search-tree and
/// segment-set invariants by full scans at the top of every iteration.
/// Quadratic; test use only.
pub fn solve_checked(rep: &RdvRepresentation) -> Result<Solution, Violation> {
    solve_inner(rep, true, None)
}

struct Geometry {
    rep: RdvRepresentation,
    segments: Vec<SegmentPair>,
    order: VertexOrder,
    coords: NodeCoordinates,
}

fn prepare(rep: &RdvRepresentation) -> Result<Geometry, Violation> {
    // `normalize` validates its input and produces a correct
    // representation by construction; only the passthrough needs a check.
    let rep = if model::is_normalized(rep) {
        rep.validate()?;
        rep.clone()
    } else {
        model::normalize(rep)?
    };
    let coords = assign_coordinates(&rep.tree);
    let order = bottom_up_order(&rep, &coords);
    let segments = build_segments(&rep, &coords);
    debug_assert!(model::segments_disjoint(&segments));
    Ok(Geometry {
        rep,
        segments,
        order,
        coords,
    })
}

/// One entry of the pending list L, carrying everything its transfer
/// into the tree needs so the scan stays sequential.
#[derive(Clone, Copy)]
struct Pending {
    v_y_hi: i64,
    entry: PstEntry,
}

/// Vertices sorted by decreasing depth of the bottom node (the pending
/// list L), ties by ascending id; bucket sort.
fn pending_list(geo: &Geometry) -> Vec<Pending> {
    let (rep, coords) = (&geo.rep, &geo.coords);
    let max_depth = coords.y.iter().copied().max().unwrap_or(0) as usize;
    let mut buckets: Vec<Vec<VertexId>> = vec![Vec::new(); max_depth + 1];
    for v in 0..rep.vertex_count() {
        buckets[coords.y[rep.bottom[v] as usize] as usize].push(v as VertexId);
    }
    let mut list = Vec::with_capacity(rep.vertex_count());
    for depth in (0..=max_depth).rev() {
        for &v in &buckets[depth] {
            list.push(Pending {
                v_y_hi: geo.segments[v as usize].v_y_hi,
                entry: PstEntry {
                    value: geo.segments[v as usize].v_x,
                    weight: geo.order.rank[v as usize],
                    payload: v,
                },
            });
        }
    }
    list
}

fn solve_inner(
    rep: &RdvRepresentation,
    check_invariants: bool,
    mut traces: Option<&mut Vec<SelectionTrace>>,
) -> Result<Solution, Violation> {
    let start = Instant::now();
    let geo = prepare(rep)?;
    let n = geo.rep.vertex_count();
    let segments = &geo.segments;
    let order = &geo.order;

    let mut stats = SolveStats::default();
    let mut pst = PrioritySearchTree::with_universe(segments.iter().map(|s| s.v_x));
    let (mut s_h, mut s_v) = build_segment_sets(segments);

    let pending = pending_list(&geo);
    let mut next_pending = 0usize;

    // Compact per-vertex top row, so the loop's random reads touch 4
    // bytes instead of a whole segment pair.
    let rows: Vec<u32> = segments.iter().map(|s| s.h_y as u32).collect();
    // Dominating vertex per vertex, `NONE` while undominated.
    const NONE: VertexId = VertexId::MAX;
    let mut dominated_by: Vec<VertexId> = vec![NONE; n];
    let mut selected = Vec::new();

    for i in 0..n {
        let z_i = order.order[i];
        let row = rows[z_i as usize] as i64;

        // Transfer from L: tuples whose vertical segment reaches this row.
        while next_pending < n && pending[next_pending].v_y_hi >= row {
            pst.insert(pending[next_pending].entry)
                .expect("each vertex transferred once");
            next_pending += 1;
            stats.pst_ops += 1;
        }

        if check_invariants {
            check_iteration_invariants(&geo, i, &pst, &s_h, &s_v, &dominated_by);
        }

        if dominated_by[z_i as usize] == NONE {
            // Operation A.
            let s_i = &segments[z_i as usize];
            let hit = pst
                .range_max(s_i.h_x_lo, s_i.h_x_hi)
                .expect("z_i itself is always a candidate");
            stats.pst_ops += 1;
            let q = hit.payload;
            debug_assert!(order.rank[q as usize] >= i as u32);
            selected.push(q);

            let mut trace = traces.as_deref_mut().map(|_| SelectionTrace {
                selected: q,
                down: Vec::new(),
                right: Vec::new(),
            });
            let s_q = segments[q as usize];

            let mark = |p: VertexId,
                        dominated_by: &mut Vec<VertexId>,
                        s_h: &mut HorizontalSegments,
                        s_v: &mut VerticalSegments| {
                dominated_by[p as usize] = q;
                s_h.delete(p).expect("segment of undominated vertex");
                s_v.delete(p).expect("segment of undominated vertex");
            };

            // Operation B, earlier neighbors: shoot down along v(z_q).
            loop {
                stats.ray_queries += 1;
                match s_h.shoot_down(s_q.v_x, s_q.v_y_lo) {
                    Some(h) => {
                        if let Some(t) = trace.as_mut() {
                            t.down.push(Some(h.owner));
                        }
                        let top_row = rows[h.owner as usize] as i64;
                        if s_q.v_y_lo <= top_row && top_row <= s_q.v_y_hi {
                            debug_assert!(order.rank[h.owner as usize] <= order.rank[q as usize]);
                            mark(h.owner, &mut dominated_by, &mut s_h, &mut s_v);
                        } else {
                            break;
                        }
                    }
                    None => {
                        if let Some(t) = trace.as_mut() {
                            t.down.push(None);
                        }
                        break;
                    }
                }
            }

            // Operation B, later neighbors: shoot right along h(z_q).
            loop {
                stats.ray_queries += 1;
                match s_v.shoot_right(s_q.h_y, s_q.h_x_lo) {
                    Some(v) => {
                        let col = v.x;
                        let accept = s_q.h_x_lo <= col && col <= s_q.h_x_hi;
                        if let Some(t) = trace.as_mut() {
                            t.right.push(Some((v.owner, accept)));
                        }
                        if accept {
                            debug_assert!(order.rank[v.owner as usize] > order.rank[q as usize]);
                            mark(v.owner, &mut dominated_by, &mut s_h, &mut s_v);
                        } else {
                            break;
                        }
                    }
                    None => {
                        if let Some(t) = trace.as_mut() {
                            t.right.push(None);
                        }
                        break;
                    }
                }
            }

            debug_assert_ne!(dominated_by[z_i as usize], NONE);
            if let (Some(ts), Some(t)) = (traces.as_deref_mut(), trace) {
                ts.push(t);
            }
        }

        pst.delete(z_i).expect("tuple of z_i is live");
        stats.pst_ops += 1;
    }

    debug_assert!(dominated_by.iter().all(|&d| d != NONE));
    stats.wall_ns = start.elapsed().as_nanos();
    Ok(Solution {
        selected,
        dominated_by: dominated_by
            .into_iter()
            .map(|d| (d != NONE).then_some(d))
            .collect(),
        stats,
    })
}

/// Greedy maximum independent set on the bottom-up (perfect elimination)
/// order: whenever the current vertex is uncovered, select it and cover
/// its closed neighborhood with the Operation-B machinery. Returns the
/// selected vertices in ascending id order.
pub fn solve_independent_set(rep: &RdvRepresentation) -> Result<Vec<VertexId>, Violation> {
    let geo = prepare(rep)?;
    let n = geo.rep.vertex_count();
    let segments = &geo.segments;

    let (mut s_h, mut s_v) = build_segment_sets(segments);
    let mut covered = vec![false; n];

    let mut selected = Vec::new();
    for i in 0..n {
        let z_i = geo.order.order[i];
        if covered[z_i as usize] {
            continue;
        }
        selected.push(z_i);
        let s_q = segments[z_i as usize];
        // Cover N[z_i], both directions.
        while let Some(h) = s_h.shoot_down(s_q.v_x, s_q.v_y_lo) {
            let top_row = segments[h.owner as usize].h_y;
            if !(s_q.v_y_lo <= top_row && top_row <= s_q.v_y_hi) {
                break;
            }
            covered[h.owner as usize] = true;
            s_h.delete(h.owner).unwrap();
            s_v.delete(h.owner).unwrap();
        }
        while let Some(v) = s_v.shoot_right(s_q.h_y, s_q.h_x_lo) {
            if !(s_q.h_x_lo <= v.x && v.x <= s_q.h_x_hi) {
                break;
            }
            covered[v.owner as usize] = true;
            s_h.delete(v.owner).unwrap();
            s_v.delete(v.owner).unwrap();
        }
    }
    selected.sort_unstable();
    Ok(selected)
}

/// Both ray-shooting sets, bulk-built over every vertex's segment pair.
fn build_segment_sets(segments: &[SegmentPair]) -> (HorizontalSegments, VerticalSegments) {
    let s_h = HorizontalSegments::with_segments(
        segments.iter().flat_map(|s| [s.h_x_lo, s.h_x_hi, s.v_x]),
        segments.iter().enumerate().map(|(v, s)| HSegment {
            owner: v as VertexId,
            y: s.h_y,
            x_lo: s.h_x_lo,
            x_hi: s.h_x_hi,
        }),
    )
    .expect("vertex ids are distinct");
    let s_v = VerticalSegments::with_segments(
        segments.iter().flat_map(|s| [s.v_y_lo, s.v_y_hi, s.h_y]),
        segments.iter().enumerate().map(|(v, s)| VSegment {
            owner: v as VertexId,
            x: s.v_x,
            y_lo: s.v_y_lo,
            y_hi: s.v_y_hi,
        }),
    )
    .expect("vertex ids are distinct");
    (s_h, s_v)
}

/// Full-scan re-check of the Lemma-2 PST invariant and of the
/// segment-set invariant. Quadratic; called only from `solve_checked`.
fn check_iteration_invariants(
    geo: &Geometry,
    i: usize,
    pst: &PrioritySearchTree,
    s_h: &HorizontalSegments,
    s_v: &VerticalSegments,
    dominated_by: &[VertexId],
) {
    let z_i = geo.order.order[i];
    let row = geo.segments[z_i as usize].h_y;
    for p in 0..geo.rep.vertex_count() as VertexId {
        let s = &geo.segments[p as usize];
        let should_hold =
            geo.order.rank[p as usize] >= i as u32 && s.v_y_hi >= row && row >= s.v_y_lo;
        assert_eq!(
            pst.contains(p),
            should_hold,
            "PST invariant broken for vertex {p} at iteration {i}"
        );
        let undominated = dominated_by[p as usize] == VertexId::MAX;
        assert_eq!(
            s_h.contains(p),
            undominated,
            "S_H out of sync for vertex {p}"
        );
        assert_eq!(
            s_v.contains(p),
            undominated,
            "S_V out of sync for vertex {p}"
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_paper_example, gen_rdv};
    use crate::model::{materialize_graph, HostTree};
    use crate::oracle;

    #[test]
    fn single_vertex_selects_itself() {
        let rep = RdvRepresentation {
            tree: HostTree::singleton(),
            top: vec![0],
            bottom: vec![0],
        };
        let sol = solve(&rep).unwrap();
        assert_eq!(sol.selected, vec![0]);
        assert_eq!(sol.dominated_by, vec![Some(0)]);
    }

    #[test]
    fn empty_instance_yields_empty_solution() {
        let rep = RdvRepresentation {
            tree: HostTree::singleton(),
            top: vec![],
            bottom: vec![],
        };
        let sol = solve(&rep).unwrap();
        assert!(sol.selected.is_empty());
    }

    #[test]
    fn edgeless_graph_selects_everything() {
        // n leaves under a star's center; every path is a single private
        // leaf, so the graph has no edges.
        let n = 7u32;
        let edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
        let tree = HostTree::new(n as usize + 1, 0, &edges).unwrap();
        let rep = RdvRepresentation {
            tree,
            top: (1..=n).collect(),
            bottom: (1..=n).collect(),
        };
        let mut sol = solve(&rep).unwrap();
        sol.selected.sort_unstable();
        assert_eq!(sol.selected, (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn paper_example_selects_4_5_7() {
        let (sol, traces) = solve_traced(&gen_paper_example()).unwrap();
        // 0-based: z4 = 3, z5 = 4, z7 = 6.
        assert_eq!(sol.selected, vec![3, 4, 6]);
        assert_eq!(traces[0].selected, 3);
        // Downward: h(z4), h(z2), h(z1), null.
        assert_eq!(traces[0].down, vec![Some(3), Some(1), Some(0), None]);
        // Rightward: v(z5), v(z6) accepted, v(z7) rejected.
        assert_eq!(
            traces[0].right,
            vec![Some((4, true)), Some((5, true)), Some((6, false))]
        );
    }

    #[test]
    fn invariants_hold_on_random_instances() {
        for seed in 0..60 {
            let rep = gen_rdv(seed, 14, 10, 4);
            let sol = solve_checked(&rep).unwrap();
            let adj = materialize_graph(&rep);
            assert!(
                oracle::verify_dominating(&adj, &sol.selected),
                "seed {seed}: output is not dominating"
            );
            // dominated_by names a selected vertex adjacent-or-equal.
            for (v, d) in sol.dominated_by.iter().enumerate() {
                let d = d.expect("every vertex dominated");
                assert!(sol.selected.contains(&d));
                assert!(d == v as VertexId || adj[v].contains(&d));
            }
        }
    }

    #[test]
    fn work_accounting_bounds() {
        for seed in 0..40 {
            let rep = gen_rdv(seed * 31 + 7, 120, 60, 6);
            let sol = solve(&rep).unwrap();
            let n = rep.vertex_count() as u64;
            let b_invocations = sol.selected.len() as u64;
            assert!(sol.stats.pst_ops <= 3 * n);
            assert!(sol.stats.ray_queries <= 2 * n + 2 * b_invocations);
        }
    }

    #[test]
    fn independent_set_on_edgeless_and_complete() {
        // Edgeless: disjoint leaves in a star.
        let edges: Vec<_> = (1..=5u32).map(|i| (0, i)).collect();
        let tree = HostTree::new(6, 0, &edges).unwrap();
        let rep = RdvRepresentation {
            tree,
            top: (1..=5).collect(),
            bottom: (1..=5).collect(),
        };
        assert_eq!(solve_independent_set(&rep).unwrap(), vec![0, 1, 2, 3, 4]);

        // Complete graph: every path sits on the root.
        let rep = RdvRepresentation {
            tree: HostTree::singleton(),
            top: vec![0; 5],
            bottom: vec![0; 5],
        };
        assert_eq!(solve_independent_set(&rep).unwrap().len(), 1);
    }
}
