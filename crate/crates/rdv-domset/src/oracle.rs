//! Reference implementations used to validate the fast solvers.
//! Deliberately slow and simple; they work on explicit adjacency lists.

use crate::VertexId;

/// Maximum instance size accepted by the exhaustive searches.
pub const EXACT_LIMIT: usize = 24;

/// The linear-time greedy on explicit adjacency lists: scan the order;
/// when the current vertex is undominated, select its maximum-index
/// closed neighbor and mark that neighbor's closed neighborhood.
pub fn greedy_booth_johnson(adj: &[Vec<VertexId>], order: &[VertexId]) -> Vec<VertexId> {
    let n = adj.len();
    assert_eq!(order.len(), n);
    let mut rank = vec![0u32; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v as usize] = r as u32;
    }
    let mut dominated = vec![false; n];
    let mut selected = Vec::new();
    for &z in order {
        if dominated[z as usize] {
            continue;
        }
        let q = std::iter::once(z)
            .chain(adj[z as usize].iter().copied())
            .max_by_key(|&v| rank[v as usize])
            .unwrap();
        selected.push(q);
        dominated[q as usize] = true;
        for &w in &adj[q as usize] {
            dominated[w as usize] = true;
        }
    }
    selected
}

fn closed_masks(adj: &[Vec<VertexId>]) -> Vec<u32> {
    adj.iter()
        .enumerate()
        .map(|(v, nbrs)| {
            let mut m = 1u32 << v;
            for &w in nbrs {
                m |= 1 << w;
            }
            m
        })
        .collect()
}

/// Exhaustive minimum dominating set, by increasing subset size with
/// early exit. Panics above [`EXACT_LIMIT`] vertices.
pub fn exact_min_domset(adj: &[Vec<VertexId>]) -> Vec<VertexId> {
    let n = adj.len();
    assert!(n <= EXACT_LIMIT, "instance too large for exhaustive search");
    if n == 0 {
        return Vec::new();
    }
    let masks = closed_masks(adj);
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };

    // Depth-first over subsets of fixed size, pruning on remaining picks.
    fn search(
        masks: &[u32],
        full: u32,
        start: usize,
        left: usize,
        covered: u32,
        chosen: &mut Vec<VertexId>,
    ) -> bool {
        if covered == full {
            return true;
        }
        if left == 0 || start >= masks.len() {
            return false;
        }
        for v in start..masks.len() {
            if masks.len() - v < left {
                break;
            }
            chosen.push(v as VertexId);
            if search(masks, full, v + 1, left - 1, covered | masks[v], chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    for k in 0..=n {
        let mut chosen = Vec::with_capacity(k);
        if k == 0 {
            if full == 0 {
                return chosen;
            }
            continue;
        }
        if search(&masks, full, 0, k, 0, &mut chosen) {
            return chosen;
        }
    }
    unreachable!("the full vertex set always dominates");
}

/// Exhaustive maximum independent set by branching on the lowest
/// uncovered vertex: either skip it or take it and drop its closed
/// neighborhood. Panics above [`EXACT_LIMIT`] vertices.
pub fn exact_max_indset(adj: &[Vec<VertexId>]) -> Vec<VertexId> {
    let n = adj.len();
    assert!(n <= EXACT_LIMIT, "instance too large for exhaustive search");
    let masks = closed_masks(adj);

    fn best(masks: &[u32], avail: u32, current: Vec<VertexId>) -> Vec<VertexId> {
        if avail == 0 {
            return current;
        }
        let v = avail.trailing_zeros() as usize;
        // Take v.
        let mut with_v = current.clone();
        with_v.push(v as VertexId);
        let take = best(masks, avail & !masks[v], with_v);
        // Skip v.
        let skip = best(masks, avail & !(1 << v), current);
        if take.len() >= skip.len() {
            take
        } else {
            skip
        }
    }

    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut out = best(&masks, full, Vec::new());
    out.sort_unstable();
    out
}

/// True iff every vertex is in the candidate set or adjacent to one of
/// its members.
pub fn verify_dominating(adj: &[Vec<VertexId>], candidate: &[VertexId]) -> bool {
    first_undominated(adj, candidate).is_none()
}

/// The smallest-id vertex left undominated by the candidate set, if any.
pub fn first_undominated(adj: &[Vec<VertexId>], candidate: &[VertexId]) -> Option<VertexId> {
    let mut dominated = vec![false; adj.len()];
    for &v in candidate {
        dominated[v as usize] = true;
        for &w in &adj[v as usize] {
            dominated[w as usize] = true;
        }
    }
    dominated.iter().position(|&d| !d).map(|v| v as VertexId)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::gen_paper_example;
    use crate::model::materialize_graph;

    fn star(k: usize) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); k + 1];
        for leaf in 1..=k {
            adj[0].push(leaf as VertexId);
            adj[leaf].push(0);
        }
        adj
    }

    #[test]
    fn star_minimum_is_the_center() {
        assert_eq!(exact_min_domset(&star(6)), vec![0]);
    }

    #[test]
    fn empty_graph_needs_everyone() {
        let adj = vec![Vec::new(); 5];
        assert_eq!(exact_min_domset(&adj).len(), 5);
        assert_eq!(
            greedy_booth_johnson(&adj, &[0, 1, 2, 3, 4]),
            vec![0, 1, 2, 3, 4]
        );
        assert_eq!(exact_max_indset(&adj).len(), 5);
    }

    #[test]
    fn greedy_on_paper_example() {
        let adj = materialize_graph(&gen_paper_example());
        let order: Vec<VertexId> = (0..7).collect();
        assert_eq!(greedy_booth_johnson(&adj, &order), vec![3, 4, 6]);
        assert_eq!(exact_min_domset(&adj).len(), 3);
    }

    #[test]
    fn single_vertex_greedy() {
        let adj = vec![Vec::new()];
        assert_eq!(greedy_booth_johnson(&adj, &[0]), vec![0]);
    }

    #[test]
    fn verify_reports_first_undominated() {
        let adj = star(3);
        assert!(verify_dominating(&adj, &[0]));
        assert!(!verify_dominating(&adj, &[1]));
        assert_eq!(first_undominated(&adj, &[1]), Some(2));
    }

    #[test]
    fn exact_min_output_dominates_and_is_tight() {
        let adj = materialize_graph(&gen_paper_example());
        let best = exact_min_domset(&adj);
        assert!(verify_dominating(&adj, &best));
        // Nothing smaller dominates: re-run capped a size below.
        assert_eq!(best.len(), 3);
    }
}
