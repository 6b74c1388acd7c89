use affinity_kappa::curve::connectivity_sweep;
use affinity_kappa::io::{parse_curve_json, parse_matrix_csv, parse_matrix_json};
use affinity_kappa::io::{render_curve_json, render_matrix_csv, render_matrix_json};
use affinity_kappa::topology::{is_connected_subset, is_open_literal, open_sets};
use affinity_kappa::{
    boundary_affinity, compare, components_graph, components_topological, connectivity_curve,
    generate_sequence, is_open, kappa_at, metric_affinity, minimal_neighborhood, AffinityMatrix,
    DisjointSetForest, PointSet, SequenceKind,
};
use proptest::prelude::*;

const INF: f64 = f64::INFINITY;

fn from_upper(n: usize, upper: &[f64]) -> AffinityMatrix {
    let mut rows = vec![vec![INF; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            rows[i][j] = upper[k];
            rows[j][i] = upper[k];
            k += 1;
        }
    }
    AffinityMatrix::validate(&rows).unwrap()
}

/// Matrices with entries from a small pool, so ties and infinities are frequent.
fn pooled_matrix(max_n: usize) -> impl Strategy<Value = AffinityMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        let cell = prop::sample::select(vec![0.5, 1.0, 2.0, 3.0, INF]);
        prop::collection::vec(cell, n * (n - 1) / 2).prop_map(move |u| from_upper(n, &u))
    })
}

/// Matrices with arbitrary positive finite entries and some infinities.
fn real_matrix(max_n: usize) -> impl Strategy<Value = AffinityMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        let cell = prop_oneof![8 => 1e-6f64..1e6, 1 => Just(INF)];
        prop::collection::vec(cell, n * (n - 1) / 2).prop_map(move |u| from_upper(n, &u))
    })
}

fn bits(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask & (1 << i) != 0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn threshold_is_monotone_in_lambda(a in real_matrix(8), l1 in 1e-6f64..1e6, l2 in 1e-6f64..1e6) {
        let (lo, hi) = if l1 < l2 { (l1, l2) } else { (l2, l1) };
        let (t_lo, t_hi) = (a.threshold(lo).unwrap(), a.threshold(hi).unwrap());
        for i in 0..a.n() {
            for j in 0..a.n() {
                prop_assert!(t_lo.get(i, j) >= t_hi.get(i, j));
                prop_assert!(t_hi.get(i, j) >= a.get(i, j));
                prop_assert_eq!(t_lo.get(i, j), t_lo.get(j, i));
            }
            prop_assert!(t_lo.get(i, i).is_infinite());
        }
    }

    #[test]
    fn threshold_stabilizes_above_max(a in real_matrix(8)) {
        let top = a.max_finite().unwrap_or(1.0);
        prop_assert_eq!(a.threshold(top * (1.0 + 1e-12) + 1e-300).unwrap(), a);
    }

    #[test]
    fn normalize_keeps_pattern_and_order(a in real_matrix(8)) {
        prop_assume!(a.max_finite().is_some());
        let b = a.normalize().unwrap();
        prop_assert_eq!(b.max_finite(), Some(1.0));
        let pairs: Vec<_> = a.pairs().zip(b.pairs()).collect();
        for ((_, _, x), (_, _, y)) in &pairs {
            prop_assert_eq!(x.is_infinite(), y.is_infinite());
        }
        for ((_, _, x1), (_, _, y1)) in &pairs {
            for ((_, _, x2), (_, _, y2)) in &pairs {
                if x1 < x2 {
                    prop_assert!(y1 <= y2);
                }
            }
        }
        prop_assert_eq!(b.normalize().unwrap(), b);
    }

    #[test]
    fn curve_invariants(a in real_matrix(12)) {
        let c = connectivity_curve(&a);
        let v = c.values();
        prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(v.iter().all(|&k| (1..=a.n()).contains(&k)));
        prop_assert_eq!(v[0], 1);
        prop_assert_eq!(c.kappa_inf(), components_graph(&a).block_count());
        if let Some(&top) = c.breakpoints().last() {
            prop_assert_eq!(c.evaluate(top).unwrap(), c.kappa_inf());
            prop_assert_eq!(c.evaluate(top * 10.0).unwrap(), c.kappa_inf());
        }
    }

    #[test]
    fn evaluate_matches_point_oracle(a in real_matrix(10), lambdas in prop::collection::vec(1e-7f64..2e6, 20)) {
        let c = connectivity_curve(&a);
        let sweep = connectivity_sweep(&a);
        let mut probes = lambdas;
        probes.extend(a.finite_values());
        for lambda in probes {
            let k = kappa_at(&a, lambda).unwrap();
            prop_assert_eq!(c.evaluate(lambda).unwrap(), k);
            let graph = components_graph(&a.threshold(lambda).unwrap());
            prop_assert_eq!(graph.block_count(), k);
            prop_assert_eq!(sweep.partition_at(lambda).unwrap(), &graph);
        }
    }

    #[test]
    fn topological_and_graph_components_agree(a in pooled_matrix(7)) {
        prop_assert_eq!(components_topological(&a).unwrap(), components_graph(&a));
    }

    #[test]
    fn open_sets_form_a_topology(a in pooled_matrix(6)) {
        let n = a.n();
        let opens = open_sets(&a).unwrap();
        let full = (1u32 << n) - 1;
        prop_assert!(opens.contains(&0) && opens.contains(&full));
        for &u in &opens {
            for &v in &opens {
                prop_assert!(opens.binary_search(&(u | v)).is_ok());
                prop_assert!(opens.binary_search(&(u & v)).is_ok());
            }
        }
        for u in 0..=full {
            let set = bits(u, n);
            prop_assert_eq!(is_open(&a, &set).unwrap(), is_open_literal(&a, &set).unwrap());
            prop_assert_eq!(is_open(&a, &set).unwrap(), opens.binary_search(&u).is_ok());
        }
    }

    #[test]
    fn minimal_neighborhood_sits_in_every_open_set(a in pooled_matrix(6)) {
        let n = a.n();
        let opens = open_sets(&a).unwrap();
        for x in 0..n {
            let nb = minimal_neighborhood(&a, x).unwrap();
            prop_assert!(nb.contains(&x));
            let mask: u32 = nb.iter().map(|&y| 1u32 << y).sum();
            let containing: Vec<u32> = opens.iter().copied().filter(|&u| u & (1 << x) != 0).collect();
            for &u in &containing {
                prop_assert_eq!(mask & !u, 0);
            }
            // The least open set around x is its infinity-graph component, which
            // is larger than the neighborhood when infinite pairs chain.
            let least = containing.iter().fold(u32::MAX, |acc, &u| acc & u);
            prop_assert!(opens.binary_search(&least).is_ok());
            let blocks = components_graph(&a);
            let component: u32 = (0..n)
                .filter(|&y| blocks.labels()[y] == blocks.labels()[x])
                .map(|y| 1u32 << y)
                .sum();
            prop_assert_eq!(least, component);
            prop_assert_eq!(is_open(&a, &nb).unwrap(), mask == component);
        }
    }

    #[test]
    fn connected_sets_through_a_point_have_connected_union(a in pooled_matrix(6), picks in prop::collection::vec(any::<u32>(), 1..6)) {
        let n = a.n();
        let full = (1u32 << n) - 1;
        for x in 0..n {
            let connected: Vec<u32> = (1..=full)
                .filter(|&s| s & (1 << x) != 0 && is_connected_subset(&a, &bits(s, n)).unwrap())
                .collect();
            let union = picks.iter().fold(0, |acc, p| acc | connected[*p as usize % connected.len()]);
            prop_assert!(is_connected_subset(&a, &bits(union, n)).unwrap());
        }
    }

    #[test]
    fn scaling_rescales_breakpoints_only(a in real_matrix(10), c in prop::sample::select(vec![0.1, 3.0, 10.0, 0.37])) {
        let base = connectivity_curve(&a);
        let scaled = connectivity_curve(&a.scale(c).unwrap());
        prop_assert_eq!(scaled.values(), base.values());
        for (s, b) in scaled.breakpoints().iter().zip(base.breakpoints()) {
            prop_assert!(((s - c * b) / (c * b)).abs() <= 1e-12);
        }
    }

    #[test]
    fn compare_is_a_pseudometric(a in real_matrix(9), b in real_matrix(9), d in real_matrix(9)) {
        let (ca, cb, cd) = (connectivity_curve(&a), connectivity_curve(&b), connectivity_curve(&d));
        prop_assume!([&ca, &cb, &cd].iter().all(|c| c.breakpoints().len() >= 2));
        let ab = compare(&ca, &cb).unwrap();
        let bd = compare(&cb, &cd).unwrap();
        let ad = compare(&ca, &cd).unwrap();
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(ab, compare(&cb, &ca).unwrap());
        prop_assert_eq!(compare(&ca, &ca).unwrap(), 0.0);
        prop_assert!(ad <= ab + bd + 1e-12);
    }

    #[test]
    fn text_formats_round_trip(a in real_matrix(8)) {
        let csv = render_matrix_csv(&a);
        prop_assert_eq!(AffinityMatrix::validate(&parse_matrix_csv(&csv).unwrap()).unwrap(), a.clone());
        let json = render_matrix_json(&a);
        prop_assert_eq!(AffinityMatrix::validate(&parse_matrix_json(&json).unwrap()).unwrap(), a.clone());
        let c = connectivity_curve(&a);
        prop_assert_eq!(parse_curve_json(&render_curve_json(&c)).unwrap(), c);
    }

    #[test]
    fn union_never_increases_count(edges in prop::collection::vec((0usize..20, 0usize..20), 0..60)) {
        let mut dsu = DisjointSetForest::new(20);
        for (a, b) in edges {
            let before = dsu.component_count();
            let merged = dsu.union(a, b);
            let after = dsu.component_count();
            prop_assert_eq!(after + usize::from(merged), before);
            prop_assert_eq!(dsu.find(a), dsu.find(b));
        }
        let mut roots = dsu.roots();
        roots.sort_unstable();
        roots.dedup();
        prop_assert_eq!(roots.len(), dsu.component_count());
    }

    #[test]
    fn sequences_strictly_increase(m in 2usize..120) {
        for kind in SequenceKind::ALL {
            let v: Vec<f64> = generate_sequence(kind, m).iter().map(|p| p[0]).collect();
            prop_assert!(v.windows(2).all(|w| w[0] < w[1]), "{kind} m={m}");
            if matches!(kind, SequenceKind::HarmonicCap | SequenceKind::GeometricCap) {
                prop_assert!(v.iter().all(|&x| x <= 20.0));
            }
        }
    }

    #[test]
    fn coincident_points_are_infinitely_close(xs in prop::collection::vec(-5i32..5, 1..10)) {
        let pts: Vec<f64> = xs.iter().map(|&x| x as f64).collect();
        let a = metric_affinity(&PointSet::from_reals(&pts).unwrap());
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                prop_assert_eq!(a.get(i, j).is_infinite(), pts[i] == pts[j]);
            }
        }
    }
}

#[test]
fn unbounded_sequences_grow_past_any_bound() {
    for kind in [SequenceKind::Log2, SequenceKind::SqrtShift] {
        let v = generate_sequence(kind, 5000);
        assert!(v.point(v.len() - 1)[0] > 12.0, "{kind}");
    }
}

#[test]
fn harmonic_pipeline_uses_adjacent_gaps_only() {
    let points = generate_sequence(SequenceKind::HarmonicCap, 20);
    let x: Vec<f64> = points.iter().map(|p| p[0]).collect();
    let a = metric_affinity(&points);
    let c = connectivity_curve(&a);
    let adjacent: Vec<f64> = x.windows(2).map(|w| 1.0 / (w[1] - w[0])).collect();
    assert_eq!(c.breakpoints(), adjacent.as_slice());
    for (i, b) in adjacent.iter().enumerate() {
        let exact = ((i + 1) * (i + 2)) as f64 / 20.0;
        assert!((b - exact).abs() <= 1e-12 * exact.max(1.0) * 100.0, "i={i} {b} vs {exact}");
    }
    // Dropping every non-adjacent pair leaves the curve unchanged.
    let n = x.len();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => INF,
                    1 => a.get(i, j).get(),
                    _ => 1e-12,
                })
                .collect()
        })
        .collect();
    let chain = AffinityMatrix::validate(&rows).unwrap();
    assert_eq!(connectivity_curve(&chain), c);
}

#[test]
fn epsilon_floor_behaves_like_a_missing_pair() {
    let lengths = [
        [0.0, 4.2, 0.0, 1.0],
        [4.2, 0.0, 2.5, 0.0],
        [0.0, 2.5, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
    ];
    let eps = 1e-12;
    let a = boundary_affinity(&lengths, eps).unwrap();
    // Reference: graph built from the positive lengths alone.
    for lambda in [eps, 1e-6, 0.5, 1.0, 2.0, 2.5, 3.0, 4.2, 5.0] {
        let mut seen = [false; 4];
        let mut count = 0;
        for s in 0..4 {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for v in 0..4 {
                    if !seen[v] && lengths[u][v] > lambda {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        assert_eq!(kappa_at(&a, lambda).unwrap(), count, "lambda={lambda}");
        assert_eq!(connectivity_curve(&a).evaluate(lambda).unwrap(), count);
    }
}
