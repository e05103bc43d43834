//! Cross-module properties: Prim runs checked against brute force, the
//! dendrogram's interval ranges checked against explicit tree traversal,
//! and the whole pipeline checked against naive agglomerative clustering.

use std::collections::HashSet;

use proptest::prelude::*;

use primlink::oracle::{
    components_after_removal, kruskal_weight_matrix, naive_single_linkage, DistanceMatrix,
};
use primlink::{
    canonical_labels, parse_newick, prim_mst, to_newick, Dataset, Dendrogram,
    DissimilaritySource, EdgeWeightedGraph, Metric, NewickNode, PrimResult,
};

fn source(rows: &[Vec<f64>], metric: Metric) -> DissimilaritySource<f64> {
    DissimilaritySource::points(Dataset::new(rows.to_vec(), None).unwrap(), metric)
}

fn matrix(rows: &[Vec<f64>], metric: Metric) -> DistanceMatrix<f64> {
    DistanceMatrix::from_points(&Dataset::new(rows.to_vec(), None).unwrap(), metric)
}

fn positions(prim: &PrimResult<f64>) -> Vec<usize> {
    let mut pos = vec![0usize; prim.n()];
    for (i, &v) in prim.order().iter().enumerate() {
        pos[v] = i + 1;
    }
    pos
}

fn all_distinct(m: &DistanceMatrix<f64>) -> bool {
    let n = m.n();
    let mut seen = HashSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if !seen.insert(m.get(i, j).to_bits()) {
                return false;
            }
        }
    }
    true
}

/// Midpoints between consecutive distinct merge heights.
fn height_midpoints(heights: &[f64]) -> Vec<f64> {
    let mut sorted = heights.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sorted.dedup();
    sorted.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect()
}

fn continuous_points() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (2usize..=25, 1usize..=3).prop_flat_map(|(n, d)| {
        proptest::collection::vec(proptest::collection::vec(-100.0..100.0f64, d), n)
    })
}

/// Small integer grids: guaranteed weight ties, frequent duplicates.
fn grid_points() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (2usize..=20, 1usize..=3).prop_flat_map(|(n, d)| {
        proptest::collection::vec(
            proptest::collection::vec((0i32..=3).prop_map(f64::from), d),
            n,
        )
    })
}

proptest! {
    #[test]
    fn prim_order_is_permutation_with_earlier_parents(rows in continuous_points(), seed_sel in 0usize..64) {
        let src = source(&rows, Metric::Euclidean);
        let seed = seed_sel % rows.len();
        let prim = prim_mst(&src, seed).unwrap();

        let mut sorted = prim.order().to_vec();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..rows.len()).collect::<Vec<_>>());
        prop_assert_eq!(prim.order()[0], seed);

        // Each attach parent sits at a strictly earlier position, which is
        // prefix connectivity: positions 1..=k always induce one tree.
        let pos = positions(&prim);
        for (k, edge) in prim.attach().iter().enumerate() {
            prop_assert!(pos[edge.parent] < k + 2);
        }
    }

    #[test]
    fn prim_steps_take_minimum_frontier_edges(rows in continuous_points()) {
        let src = source(&rows, Metric::Euclidean);
        let m = matrix(&rows, Metric::Euclidean);
        let prim = prim_mst(&src, 0).unwrap();
        // Replay the growth; at each step no frontier edge may be strictly
        // lighter than the attach edge taken.
        let mut inside = vec![false; rows.len()];
        inside[0] = true;
        for (step, edge) in prim.attach().iter().enumerate() {
            let mut frontier_min = f64::INFINITY;
            for (u, &u_inside) in inside.iter().enumerate() {
                if !u_inside {
                    continue;
                }
                for (v, &v_inside) in inside.iter().enumerate() {
                    if !v_inside {
                        frontier_min = frontier_min.min(m.get(u, v));
                    }
                }
            }
            prop_assert_eq!(edge.weight, frontier_min, "step {}", step);
            inside[prim.order()[step + 1]] = true;
        }
    }

    #[test]
    fn prim_weight_equals_kruskal(rows in continuous_points()) {
        let src = source(&rows, Metric::Euclidean);
        let prim = prim_mst(&src, 0).unwrap();
        let kruskal = kruskal_weight_matrix(&matrix(&rows, Metric::Euclidean)).unwrap();
        prop_assert_eq!(prim.total_weight(), kruskal);
    }

    #[test]
    fn sorted_attach_weights_are_seed_invariant(rows in continuous_points(), s1 in 0usize..64, s2 in 0usize..64) {
        let src = source(&rows, Metric::Euclidean);
        let (s1, s2) = (s1 % rows.len(), s2 % rows.len());
        let sorted = |seed: usize| {
            let mut w: Vec<u64> = prim_mst(&src, seed)
                .unwrap()
                .attach()
                .iter()
                .map(|e| e.weight.to_bits())
                .collect();
            w.sort_unstable();
            w
        };
        prop_assert_eq!(sorted(s1), sorted(s2));
    }

    #[test]
    fn rerunning_prim_on_its_own_tree_reproduces_the_order(rows in continuous_points(), seed_sel in 0usize..64) {
        let m = matrix(&rows, Metric::Euclidean);
        prop_assume!(all_distinct(&m));
        let seed = seed_sel % rows.len();
        let src = source(&rows, Metric::Euclidean);
        let prim = prim_mst(&src, seed).unwrap();

        let tree = EdgeWeightedGraph::new(rows.len(), prim.mst_edges().collect()).unwrap();
        let replay = prim_mst(&DissimilaritySource::graph(tree), seed).unwrap();
        prop_assert_eq!(replay.order(), prim.order());
        prop_assert_eq!(replay.attach(), prim.attach());
    }

    #[test]
    fn points_mode_matches_explicit_complete_graph(rows in continuous_points(), seed_sel in 0usize..64) {
        let seed = seed_sel % rows.len();
        let src = source(&rows, Metric::Euclidean);
        let prim = prim_mst(&src, seed).unwrap();

        let m = matrix(&rows, Metric::Euclidean);
        let mut edges = Vec::new();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                edges.push((i, j, m.get(i, j)));
            }
        }
        let complete = EdgeWeightedGraph::new(rows.len(), edges).unwrap();
        let sparse = prim_mst(&DissimilaritySource::graph(complete), seed).unwrap();
        prop_assert_eq!(sparse.order(), prim.order());
        prop_assert_eq!(sparse.attach(), prim.attach());
    }

    #[test]
    fn split_ranges_match_tree_components(rows in continuous_points()) {
        check_ranges_against_components(&rows)?;
    }

    #[test]
    fn split_ranges_match_tree_components_with_ties(rows in grid_points()) {
        check_ranges_against_components(&rows)?;
    }

    #[test]
    fn edge_sets_partition_by_position(rows in grid_points()) {
        let src = source(&rows, Metric::Euclidean);
        let prim = prim_mst(&src, 0).unwrap();
        let d = Dendrogram::build(&prim);
        let edges: Vec<(usize, usize)> = prim.mst_edges().map(|(u, v, _)| (u, v)).collect();

        for node in d.nodes().iter().filter(|n| !n.is_leaf()) {
            let s = node.split_pos().unwrap();
            let (lo, hi) = (node.lo(), node.hi());
            let (left_id, right_id) = node.children().unwrap();
            let left: HashSet<usize> = d.members(left_id).iter().copied().collect();
            let right: HashSet<usize> = d.members(right_id).iter().copied().collect();

            // Edge at position p connects order[p-1] to an earlier vertex.
            for (p, &(u, v)) in (2..).zip(&edges) {
                let in_left = left.contains(&u) && left.contains(&v);
                let in_right = right.contains(&u) && right.contains(&v);
                prop_assert_eq!(in_left, p > lo && p < s);
                prop_assert_eq!(in_right, p > s && p <= hi);
                if p == s {
                    prop_assert!(!in_left && !in_right);
                }
            }
        }
    }

    #[test]
    fn heights_equal_attach_weight_multiset(rows in grid_points()) {
        let src = source(&rows, Metric::Euclidean);
        let prim = prim_mst(&src, 0).unwrap();
        let d = Dendrogram::build(&prim);
        let mut heights: Vec<u64> = d
            .nodes()
            .iter()
            .filter_map(|n| n.height().map(f64::to_bits))
            .collect();
        let mut weights: Vec<u64> = prim.attach().iter().map(|e| e.weight.to_bits()).collect();
        heights.sort_unstable();
        weights.sort_unstable();
        prop_assert_eq!(heights, weights);
    }

    #[test]
    fn merge_heights_never_decrease_toward_the_root(rows in grid_points()) {
        let src = source(&rows, Metric::Euclidean);
        let d = Dendrogram::build(&prim_mst(&src, 0).unwrap());
        for node in d.nodes().iter().filter(|n| !n.is_leaf()) {
            let (l, r) = node.children().unwrap();
            for child in [l, r] {
                if let Some(child_height) = d.node(child).height() {
                    prop_assert!(node.height().unwrap() >= child_height);
                }
            }
        }
    }

    #[test]
    fn split_takes_the_lexicographic_argmax(rows in grid_points()) {
        let src = source(&rows, Metric::Euclidean);
        let prim = prim_mst(&src, 0).unwrap();
        let weights: Vec<f64> = prim.attach().iter().map(|e| e.weight).collect();
        let d = Dendrogram::build(&prim);
        for node in d.nodes().iter().filter(|n| !n.is_leaf()) {
            let (lo, hi) = (node.lo(), node.hi());
            let best = (lo + 1..=hi)
                .max_by(|&a, &b| {
                    weights[a - 2]
                        .partial_cmp(&weights[b - 2])
                        .unwrap()
                        .then(a.cmp(&b))
                })
                .unwrap();
            prop_assert_eq!(node.split_pos().unwrap(), best);
            prop_assert_eq!(node.height().unwrap(), weights[best - 2]);
        }
    }

    #[test]
    fn threshold_cuts_match_naive_linkage(rows in continuous_points()) {
        let src = source(&rows, Metric::Euclidean);
        let d = Dendrogram::build(&prim_mst(&src, 0).unwrap());
        let naive = naive_single_linkage(&matrix(&rows, Metric::Euclidean));

        let heights: Vec<f64> = naive.rows().iter().map(|r| r.height).collect();
        let mut thresholds = height_midpoints(&heights);
        thresholds.push(0.0);
        thresholds.push(f64::INFINITY);
        for t in thresholds {
            let ours = canonical_labels(d.cut_threshold(t).labels());
            let reference = naive.labels_at_threshold(t);
            prop_assert_eq!(ours, reference, "threshold {}", t);
        }
    }

    #[test]
    fn naive_heights_match_mst_weights(rows in grid_points()) {
        let src = source(&rows, Metric::Euclidean);
        let prim = prim_mst(&src, 0).unwrap();
        let naive = naive_single_linkage(&matrix(&rows, Metric::Euclidean));
        let mut heights: Vec<u64> = naive.rows().iter().map(|r| r.height.to_bits()).collect();
        let mut weights: Vec<u64> = prim.attach().iter().map(|e| e.weight.to_bits()).collect();
        heights.sort_unstable();
        weights.sort_unstable();
        prop_assert_eq!(heights, weights);
    }

    #[test]
    fn partitions_are_seed_invariant(rows in continuous_points(), s1 in 0usize..64, s2 in 0usize..64) {
        let m = matrix(&rows, Metric::Euclidean);
        prop_assume!(all_distinct(&m));
        let src = source(&rows, Metric::Euclidean);
        let (s1, s2) = (s1 % rows.len(), s2 % rows.len());
        let d1 = Dendrogram::build(&prim_mst(&src, s1).unwrap());
        let d2 = Dendrogram::build(&prim_mst(&src, s2).unwrap());
        let heights: Vec<f64> = d1.nodes().iter().filter_map(|n| n.height()).collect();
        for t in height_midpoints(&heights) {
            prop_assert_eq!(
                canonical_labels(d1.cut_threshold(t).labels()),
                canonical_labels(d2.cut_threshold(t).labels())
            );
        }
    }

    #[test]
    fn squared_euclidean_gives_the_same_topology(rows in continuous_points()) {
        let plain = Dendrogram::build(&prim_mst(&source(&rows, Metric::Euclidean), 0).unwrap());
        let squared =
            Dendrogram::build(&prim_mst(&source(&rows, Metric::SquaredEuclidean), 0).unwrap());

        let member_sets = |d: &Dendrogram<f64>| -> HashSet<Vec<usize>> {
            d.nodes()
                .iter()
                .enumerate()
                .map(|(id, _)| {
                    let mut m = d.members(id).to_vec();
                    m.sort_unstable();
                    m
                })
                .collect()
        };
        prop_assert_eq!(member_sets(&plain), member_sets(&squared));

        // Same split sequence, so heights pair up position by position;
        // the euclidean height is exactly the square root of the squared
        // one because both runs fold the identical coordinate sums.
        for (a, b) in plain.nodes().iter().zip(squared.nodes()) {
            prop_assert_eq!(a.lo(), b.lo());
            prop_assert_eq!(a.hi(), b.hi());
            if let (Some(ha), Some(hb)) = (a.height(), b.height()) {
                prop_assert_eq!(ha.to_bits(), hb.sqrt().to_bits());
            }
        }
    }

    #[test]
    fn cut_k_matches_cut_threshold_between_heights(rows in continuous_points()) {
        let m = matrix(&rows, Metric::Euclidean);
        prop_assume!(all_distinct(&m));
        let src = source(&rows, Metric::Euclidean);
        let d = Dendrogram::build(&prim_mst(&src, 0).unwrap());
        let heights: Vec<f64> = d.nodes().iter().filter_map(|n| n.height()).collect();
        for (i, t) in height_midpoints(&heights).iter().enumerate() {
            // Cutting above the i-th smallest height leaves n-1-i merges.
            let k = d.cut_threshold(*t).k();
            prop_assert_eq!(k, rows.len() - 1 - i);
            let by_k = d.cut_k(k).unwrap();
            prop_assert_eq!(
                canonical_labels(by_k.labels()),
                canonical_labels(d.cut_threshold(*t).labels())
            );
        }
    }

    #[test]
    fn newick_round_trip_recovers_members_and_heights(rows in continuous_points()) {
        let src = source(&rows, Metric::Euclidean);
        let d = Dendrogram::build(&prim_mst(&src, 0).unwrap());
        let text = to_newick(&d, None).unwrap();
        let parsed: NewickNode<f64> = parse_newick(&text).unwrap();

        let mut expected: Vec<Vec<usize>> = d
            .nodes()
            .iter()
            .enumerate()
            .map(|(id, _)| {
                let mut m = d.members(id).to_vec();
                m.sort_unstable();
                m
            })
            .collect();
        expected.sort();

        let mut parsed_sets: Vec<Vec<usize>> = Vec::new();
        let mut parsed_heights: Vec<(Vec<usize>, f64)> = Vec::new();
        collect_sets(&parsed, &mut parsed_sets, &mut parsed_heights);
        parsed_sets.sort();
        prop_assert_eq!(parsed_sets, expected);

        for (members, height) in parsed_heights {
            let node = d
                .nodes()
                .iter()
                .enumerate()
                .find(|(id, n)| {
                    !n.is_leaf() && {
                        let mut m = d.members(*id).to_vec();
                        m.sort_unstable();
                        m == members
                    }
                })
                .map(|(_, n)| n)
                .unwrap();
            let expected_height = node.height().unwrap();
            // Heights are recovered as sums of printed branch lengths, so
            // allow a few ulps of accumulation error.
            let tol = 1e-9 * expected_height.abs().max(1.0);
            prop_assert!((height - expected_height).abs() <= tol);
        }
    }
}

/// Shared check: every internal node's two position ranges must equal the
/// two components obtained by deleting the split edge from the explicit
/// MST, as verified by traversal.
fn check_ranges_against_components(rows: &[Vec<f64>]) -> Result<(), TestCaseError> {
    let src = source(rows, Metric::Euclidean);
    let prim = prim_mst(&src, 0).unwrap();
    let d = Dendrogram::build(&prim);
    let edges: Vec<(usize, usize)> = prim.mst_edges().map(|(u, v, _)| (u, v)).collect();

    for node in d.nodes().iter().filter(|n| !n.is_leaf()) {
        let s = node.split_pos().unwrap();
        let split_edge = edges[s - 2];
        let labels = components_after_removal(rows.len(), &edges, &[split_edge]).unwrap();

        let (left_id, right_id) = node.children().unwrap();
        let left = d.members(left_id);
        let right = d.members(right_id);
        let left_label = labels[left[0]];
        let right_label = labels[right[0]];
        prop_assert_ne!(left_label, right_label);
        for &v in left {
            prop_assert_eq!(labels[v], left_label);
        }
        for &v in right {
            prop_assert_eq!(labels[v], right_label);
        }
    }
    Ok(())
}

fn collect_sets(
    node: &NewickNode<f64>,
    sets: &mut Vec<Vec<usize>>,
    heights: &mut Vec<(Vec<usize>, f64)>,
) {
    // Node height reconstructs as (child height + child branch length),
    // taken from the first child; leaf height is zero.
    fn walk(
        node: &NewickNode<f64>,
        sets: &mut Vec<Vec<usize>>,
        heights: &mut Vec<(Vec<usize>, f64)>,
    ) -> (Vec<usize>, f64) {
        if node.is_leaf() {
            let id: usize = node.label.as_deref().unwrap().parse().unwrap();
            sets.push(vec![id]);
            return (vec![id], 0.0);
        }
        let mut members = Vec::new();
        let mut height = 0.0;
        for (i, child) in node.children.iter().enumerate() {
            let (child_members, child_height) = walk(child, sets, heights);
            if i == 0 {
                height = child_height + child.length.unwrap();
            }
            members.extend(child_members);
        }
        members.sort_unstable();
        sets.push(members.clone());
        heights.push((members.clone(), height));
        (members, height)
    }
    walk(node, sets, heights);
}
