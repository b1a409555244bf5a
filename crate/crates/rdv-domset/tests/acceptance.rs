//! End-to-end acceptance checks. Each test covers one numbered criterion
//! and prints a single pass line; run with `--nocapture` to see them all.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use rdv_domset::gen::{gen_interval, gen_paper_example, gen_rdv, SplitMix64};
use rdv_domset::interval::solve_interval;
use rdv_domset::model::{
    assign_coordinates, bottom_up_order, build_segments, edge_query, is_normalized,
    materialize_graph, normalize,
};
use rdv_domset::oracle;
use rdv_domset::pst::{PrioritySearchTree, PstEntry};
use rdv_domset::rayshoot::{HSegment, HorizontalSegments, VSegment, VerticalSegments};
use rdv_domset::solver::{solve, solve_independent_set, solve_traced};
use rdv_domset::VertexId;

fn pass(n: u32, what: &str) {
    println!("criterion {n}: pass — {what}");
}

#[test]
fn criterion_01_golden_example() {
    let start = Instant::now();
    let sol = solve(&gen_paper_example()).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(sol.selected.len(), 3);
    assert_eq!(
        sol.selected[0], 3,
        "first greedy selection must be vertex 3"
    );
    let adj = materialize_graph(&gen_paper_example());
    assert!(oracle::verify_dominating(&adj, &sol.selected));
    assert_eq!(oracle::exact_min_domset(&adj).len(), 3);
    assert!(elapsed.as_micros() < 1000, "solve took {elapsed:?}");
    pass(
        1,
        "golden example: size 3, first pick vertex 3, optimal, < 1 ms",
    );
}

#[test]
fn criterion_02_ray_trace_golden() {
    let (sol, traces) = solve_traced(&gen_paper_example()).unwrap();
    assert_eq!(sol.selected, vec![3, 4, 6]);
    let t = &traces[0];
    assert_eq!(t.selected, 3);
    assert_eq!(t.down, vec![Some(3), Some(1), Some(0), None]);
    assert_eq!(
        t.right,
        vec![Some((4, true)), Some((5, true)), Some((6, false))]
    );
    pass(
        2,
        "operation-B trace for the first selection matches exactly",
    );
}

#[test]
fn criterion_03_optimal_at_desk_scale() {
    let mut rng = SplitMix64::new(0x03AC);
    for trial in 0..1000u64 {
        let n = 1 + (rng.below(20) as usize);
        let tree_nodes = 1 + (rng.below(16) as usize);
        let rep = gen_rdv(trial * 3 + 1, n, tree_nodes, 6);
        let sol = solve(&rep).unwrap();
        let exact = oracle::exact_min_domset(&materialize_graph(&rep));
        assert_eq!(sol.selected.len(), exact.len(), "trial {trial}, n = {n}");
    }
    pass(3, "1000 instances with n <= 20 match the exact minimum");
}

#[test]
fn criterion_04_greedy_agreement_at_scale() {
    // Sparse shape: host tree about as large as the vertex set and short
    // paths, so materializing adjacency stays cheap even at n = 100,000.
    let mut sizes = Vec::new();
    for seed in 0..170u64 {
        sizes.push((seed, 200 + (seed as usize) * 37));
    }
    for seed in 170..195u64 {
        sizes.push((seed, 10_000));
    }
    for seed in 195..200u64 {
        sizes.push((seed, 100_000));
    }
    for &(seed, n) in &sizes {
        let rep = gen_rdv(seed, n, n.max(2), 4);
        let sol = solve(&rep).unwrap();
        let norm = if is_normalized(&rep) {
            rep.clone()
        } else {
            normalize(&rep).unwrap()
        };
        let coords = assign_coordinates(&norm.tree);
        let order = bottom_up_order(&norm, &coords);
        let adj = materialize_graph(&norm);
        let greedy = oracle::greedy_booth_johnson(&adj, &order.order);
        assert!(oracle::verify_dominating(&adj, &greedy));
        assert_eq!(sol.selected.len(), greedy.len(), "seed {seed}, n = {n}");
    }
    pass(
        4,
        "200 instances up to n = 100,000 agree with the greedy oracle",
    );
}

#[test]
fn criterion_05_theorem_1_equivalence() {
    for seed in 0..500u64 {
        let n = 1 + (seed as usize % 12);
        let rep = gen_rdv(seed + 0x500, n, 8, 5);
        let norm = if is_normalized(&rep) {
            rep.clone()
        } else {
            normalize(&rep).unwrap()
        };
        let coords = assign_coordinates(&norm.tree);
        let order = bottom_up_order(&norm, &coords);
        let segments = build_segments(&norm, &coords);
        let adj = materialize_graph(&norm);
        let brute: BTreeSet<(VertexId, VertexId)> = adj
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| {
                vs.iter()
                    .filter(move |&&w| (u as VertexId) < w)
                    .map(move |&w| (u as VertexId, w))
            })
            .collect();
        for i in 0..n as u32 {
            for j in (i + 1)..n as u32 {
                let u = order.order[i as usize].min(order.order[j as usize]);
                let w = order.order[i as usize].max(order.order[j as usize]);
                assert_eq!(
                    edge_query(i, j, &segments, &order),
                    brute.contains(&(u, w)),
                    "seed {seed}, ranks {i},{j}"
                );
            }
        }
    }
    pass(
        5,
        "edge_query matches path-intersection brute force on all pairs",
    );
}

#[test]
fn criterion_06_normalization_postconditions() {
    for seed in 0..500u64 {
        let n = 1 + (seed as usize % 18);
        let rep = gen_rdv(seed + 0x600, n, 10, 6);
        let norm = normalize(&rep).unwrap();
        assert!(is_normalized(&norm), "seed {seed}");
        let tops: BTreeSet<_> = norm.top.iter().collect();
        let bottoms: BTreeSet<_> = norm.bottom.iter().collect();
        assert_eq!(tops.len(), n, "seed {seed}: tops not distinct");
        assert_eq!(bottoms.len(), n, "seed {seed}: bottoms not distinct");
        for v in 0..n {
            assert!(norm.tree.is_leaf(norm.bottom[v]), "seed {seed}");
            assert!(!norm.tree.is_leaf(norm.top[v]), "seed {seed}");
        }
        assert!(
            norm.tree.node_count() <= rep.tree.node_count() + 2 * n,
            "seed {seed}: grew too much"
        );
        assert_eq!(
            materialize_graph(&rep),
            materialize_graph(&norm),
            "seed {seed}: adjacency changed"
        );
    }
    pass(6, "500 normalizations satisfy every postcondition");
}

#[test]
fn criterion_07_data_structure_oracles() {
    // Priority search tree vs a flat list.
    let mut rng = SplitMix64::new(0x07A1);
    for _script in 0..10_000u32 {
        let mut tree = PrioritySearchTree::new();
        let mut flat: Vec<PstEntry> = Vec::new();
        let mut next_id = 0u32;
        for _op in 0..12 {
            match rng.below(4) {
                0 | 1 => {
                    let entry = PstEntry {
                        value: rng.below(30) as i64,
                        weight: rng.below(100) as u32,
                        payload: next_id,
                    };
                    next_id += 1;
                    tree.insert(entry).unwrap();
                    flat.push(entry);
                }
                2 if !flat.is_empty() => {
                    let k = rng.below(flat.len() as u64) as usize;
                    let gone = flat.swap_remove(k);
                    assert_eq!(tree.delete(gone.payload).unwrap(), gone);
                }
                _ => {
                    let a = rng.below(32) as i64;
                    let b = rng.below(32) as i64;
                    let (lo, hi) = (a.min(b), a.max(b));
                    let best = flat
                        .iter()
                        .filter(|e| lo <= e.value && e.value <= hi)
                        .max_by_key(|e| (e.weight, e.value, e.payload))
                        .copied();
                    assert_eq!(tree.range_max(lo, hi), best);
                }
            }
        }
    }

    // Ray shooting vs a flat list, both orientations in lockstep.
    let mut rng = SplitMix64::new(0x07B2);
    for _script in 0..10_000u32 {
        let universe: Vec<i64> = (0..16).collect();
        let mut hs = HorizontalSegments::new(universe.iter().copied());
        let mut vs = VerticalSegments::new(universe.iter().copied());
        let mut flat: Vec<HSegment> = Vec::new();
        let mut next_id = 0u32;
        for _op in 0..12 {
            match rng.below(4) {
                0 | 1 => {
                    let a = rng.below(16) as i64;
                    let b = rng.below(16) as i64;
                    // Keep lines distinct per owner; reuse owner id as the
                    // line so segments never overlap on a shared line.
                    let seg = HSegment {
                        owner: next_id,
                        y: next_id as i64,
                        x_lo: a.min(b),
                        x_hi: a.max(b),
                    };
                    next_id += 1;
                    hs.insert(seg).unwrap();
                    vs.insert(VSegment {
                        owner: seg.owner,
                        x: seg.y,
                        y_lo: seg.x_lo,
                        y_hi: seg.x_hi,
                    })
                    .unwrap();
                    flat.push(seg);
                }
                2 if !flat.is_empty() => {
                    let k = rng.below(flat.len() as u64) as usize;
                    let gone = flat.swap_remove(k);
                    assert_eq!(hs.delete(gone.owner).unwrap(), gone);
                    vs.delete(gone.owner).unwrap();
                }
                _ => {
                    let x = rng.below(16) as i64;
                    let y0 = rng.below(40) as i64 - 8;
                    let best = flat
                        .iter()
                        .filter(|s| s.x_lo <= x && x <= s.x_hi && s.y >= y0)
                        .min_by_key(|s| s.y)
                        .copied();
                    assert_eq!(hs.shoot_down(x, y0), best);
                    assert_eq!(
                        vs.shoot_right(x, y0).map(|s| s.owner),
                        best.map(|s| s.owner)
                    );
                }
            }
        }
    }
    pass(
        7,
        "10,000 scripts each for pst and rayshoot match linear scans",
    );
}

#[test]
fn criterion_08_interval_solver() {
    for seed in 0..1000u64 {
        let n = 1 + (seed as usize % 20);
        let path_len = 2 + (seed as usize % 24);
        let rep = gen_interval(seed, n, path_len);
        let sol = solve_interval(&rep).unwrap();
        let exact = oracle::exact_min_domset(&materialize_graph(&rep));
        assert_eq!(sol.selected.len(), exact.len(), "seed {seed}, n = {n}");
        assert!(
            sol.stats.scan_cost <= 2 * n as u64,
            "seed {seed}: scan cost {} > 2n",
            sol.stats.scan_cost
        );
    }
    pass(8, "1000 path-host instances optimal with scan cost <= 2n");
}

#[test]
fn criterion_09_independent_set() {
    for seed in 0..500u64 {
        let n = 1 + (seed as usize % 14);
        let rep = gen_rdv(seed + 0x900, n, 8, 5);
        let set = solve_independent_set(&rep).unwrap();
        let adj = materialize_graph(&rep);
        for (a, &u) in set.iter().enumerate() {
            for &w in &set[a + 1..] {
                assert!(
                    !adj[u as usize].contains(&w),
                    "seed {seed}: not independent"
                );
            }
        }
        let exact = oracle::exact_max_indset(&adj);
        assert_eq!(set.len(), exact.len(), "seed {seed}, n = {n}");
    }
    pass(9, "500 instances match the exact maximum independent set");
}

#[test]
fn criterion_10_scaling() {
    let start = Instant::now();
    let csv_path = std::env::temp_dir().join("rdv-domset-scaling.csv");
    let sizes = [1usize << 14, 1 << 16, 1 << 18, 1 << 20];
    let status = Command::new(env!("CARGO_BIN_EXE_rdv-domset"))
        .args([
            "bench",
            "--kind",
            "rdv",
            "--sizes",
            "16384,65536,262144,1048576",
            "--seeds",
            "3",
            "--csv",
        ])
        .arg(&csv_path)
        .status()
        .unwrap();
    assert!(status.success());

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut best_wall: Vec<(usize, f64)> = Vec::new();
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let n: usize = f[0].parse().unwrap();
        let wall: f64 = f[2].parse().unwrap();
        let pst: u64 = f[3].parse().unwrap();
        let ray: u64 = f[4].parse().unwrap();
        assert!(pst <= 3 * n as u64, "n = {n}: pst ops {pst} > 3n");
        assert!(ray <= 4 * n as u64, "n = {n}: ray queries {ray} > 4n");
        match best_wall.iter_mut().find(|(m, _)| *m == n) {
            Some(entry) => entry.1 = entry.1.min(wall),
            None => best_wall.push((n, wall)),
        }
    }
    assert_eq!(best_wall.len(), sizes.len());

    // Least-squares slope of ln(t/n) against ln(log2 n); an exact
    // n log^2 n law gives slope 2.
    let pts: Vec<(f64, f64)> = best_wall
        .iter()
        .map(|&(n, wall)| (((n as f64).log2()).ln(), (wall / n as f64).ln()))
        .collect();
    let k = pts.len() as f64;
    let (sx, sy): (f64, f64) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    assert!(slope < 2.3, "fitted exponent {slope:.3} >= 2.3");
    assert!(
        start.elapsed().as_secs() < 600,
        "sweep exceeded ten minutes"
    );
    pass(
        10,
        &format!("dense sweep to n = 2^20, fitted exponent {slope:.3} < 2.3"),
    );
}
