//! Cross-module properties: laws connecting the deciders, the exact search,
//! the extension algorithm and the coloring machinery on randomized inputs,
//! plus serialization round trips.

mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use semicover::cover::{fold_number, is_degree_obedient, verify_cover};
use semicover::decide::{
    check_bc_coloring, cover_from_coloring, decide_bc_coloring, swap_side_colors, ColorTag,
    TargetParams, TwoColoring, Witness,
};
use semicover::graph::Graph;
use semicover::oracle::{enumerate_colorings, solve_cover, EnumOutcome, SearchBudget};

/// Vertex maps of verified covers are degree-obedient, and fold numbers
/// match the common fibre size, on randomly lifted targets.
#[test]
fn lifted_covers_verify_and_obey() {
    let mut rng = common::rng(501);
    let targets = [
        TargetParams::OneVertex { semi: 2, loops: 1 }.graph(),
        TargetParams::TwoVertex { k: 1, m: 1, l: 2, p: 0, q: 3 }.graph(),
        semicover::families::complete(4),
    ];
    for round in 0..30 {
        let h = &targets[round % targets.len()];
        let g = common::random_two_lift(&mut rng, h, false);
        let out = solve_cover(&g, h, &SearchBudget::unlimited());
        let map = out.witness().expect("a two-lift always covers its base");
        let report = verify_cover(&g, h, &map).unwrap();
        assert!(report.ok());
        assert!(is_degree_obedient(&g, h, &map.vertex_map).unwrap());
        assert_eq!(fold_number(&g, h, &map).unwrap(), Some(2));
    }
}

/// On bipartite semi-edge-free graphs, balanced colorings and covers of
/// regular two-vertex targets are the same thing: the coloring decider, the
/// cover-from-coloring construction and the exact search all agree.
#[test]
fn coloring_cover_equivalence_on_bipartite_inputs() {
    let mut rng = common::rng(733);
    let params: [(usize, usize, usize, usize, usize); 3] =
        [(2, 0, 1, 0, 2), (0, 1, 2, 1, 0), (1, 0, 2, 0, 1)];
    let mut positives = 0;
    for round in 0..60 {
        let g = if round % 2 == 0 {
            let n = rand::Rng::random_range(&mut rng, 1..=4usize);
            let k = rand::Rng::random_range(&mut rng, 1..=4usize);
            common::regular_bipartite_multigraph(&mut rng, n, k)
        } else {
            common::bipartite_multigraph(&mut rng, 4, 4)
        };
        for &(k, m, l, p, q) in &params {
            let own = k + 2 * m;
            let coloring_verdict = decide_bc_coloring(&g, own, l);
            let target = TargetParams::TwoVertex { k, m, l, p, q }.graph();
            let cover_outcome = solve_cover(&g, &target, &SearchBudget::unlimited());
            assert_eq!(
                coloring_verdict.is_yes(),
                cover_outcome.is_yes(),
                "round {round} params ({k},{m},{l},{p},{q}) on:\n{g}"
            );
            if let Some(Witness::Coloring(col)) = &coloring_verdict.witness {
                let map = cover_from_coloring(&g, (k, m, l, p, q), col)
                    .unwrap()
                    .expect("valid colorings of bipartite semi-edge-free graphs lift");
                assert!(verify_cover(&g, &target, &map).unwrap().ok());
                positives += 1;
            }
        }
    }
    assert!(positives > 0);
}

/// Swapping one side of the bipartition transposes the coloring contract
/// and is an involution, on enumerated colorings of random bipartite
/// graphs.
#[test]
fn swap_transposes_enumerated_colorings() {
    let mut rng = common::rng(911);
    let mut seen = 0;
    for _ in 0..40 {
        let n = rand::Rng::random_range(&mut rng, 1..=3usize);
        let k = rand::Rng::random_range(&mut rng, 1..=3usize);
        let g = common::regular_bipartite_multigraph(&mut rng, n, k);
        let part = g.bipartition().expect("construction is bipartite");
        for (own, other) in [(k, 0), (0, k), (1, k.saturating_sub(1))] {
            if own + other != k {
                continue;
            }
            let EnumOutcome::Complete(cols) =
                enumerate_colorings(&g, own, other, None, &SearchBudget::unlimited())
            else {
                panic!("unlimited budget");
            };
            for col in cols {
                if !check_bc_coloring(&g, &col).unwrap() {
                    continue; // frame-valid but not total-degree-valid
                }
                let swapped = swap_side_colors(&g, &part, &col).unwrap();
                assert_eq!((swapped.own, swapped.other), (other, own));
                assert!(check_bc_coloring(&g, &swapped).unwrap());
                let back = swap_side_colors(&g, &part, &swapped).unwrap();
                assert_eq!(back.colors, col.colors);
                seen += 1;
            }
        }
    }
    assert!(seen > 0);
}

/// Enumerations with the default frame are closed under the global swap and
/// every member passes the frame checker.
#[test]
fn enumerations_swap_closed_on_random_graphs() {
    let mut rng = common::rng(1234);
    for _ in 0..25 {
        let g = common::messy_multigraph(&mut rng, 6, 4);
        let b = rand::Rng::random_range(&mut rng, 0..=2usize);
        let c = rand::Rng::random_range(&mut rng, 0..=2usize);
        let EnumOutcome::Complete(cols) =
            enumerate_colorings(&g, b, c, None, &SearchBudget::unlimited())
        else {
            panic!("unlimited budget");
        };
        let frame = semicover::decide::full_degree_frame(&g, b, c);
        for col in &cols {
            assert!(semicover::decide::check_frame_coloring(&g, col, &frame).unwrap());
            let swapped: BTreeMap<_, _> =
                col.colors.iter().map(|(v, t)| (v.clone(), t.flipped())).collect();
            assert!(
                cols.iter().any(|other| other.colors == swapped),
                "enumeration must be closed under the color swap"
            );
        }
    }
}

/// A coloring read back from its serialized form is the same coloring.
#[test]
fn coloring_text_round_trip_on_random_colorings() {
    let mut rng = common::rng(77);
    for _ in 0..20 {
        let g = common::messy_multigraph(&mut rng, 6, 4);
        let colors: BTreeMap<_, _> = g
            .vertices()
            .map(|v| {
                let tag = if rand::Rng::random_bool(&mut rng, 0.5) {
                    ColorTag::Red
                } else {
                    ColorTag::Blue
                };
                (v.clone(), tag)
            })
            .collect();
        let col = TwoColoring { colors, own: 1, other: 2 };
        let back = TwoColoring::parse(&col.to_text(), 1, 2).unwrap();
        assert_eq!(back, col);
    }
}

/// In a loop-free `(k+1)`-regular multigraph, `k` disjoint perfect
/// matchings exist exactly when the graph is `(k+1)`-edge-colorable: the
/// complement of their union is the final color class.
#[test]
fn disjoint_matchings_match_edge_colorability_on_cubic_graphs() {
    let mut rng = common::rng(314);
    let mut found = 0;
    for _ in 0..40 {
        let n = 2 * rand::Rng::random_range(&mut rng, 2..=4usize);
        let g = common::regular_multigraph(&mut rng, n, 3, 0.0);
        if g.loops().next().is_some() {
            continue; // a loop never sits in a matching or a proper class
        }
        let has_two = semicover::factor::disjoint_perfect_matchings(&g, 2).is_some();
        assert_eq!(has_two, brute_force_3_edge_colorable(&g), "on:\n{g}");
        found += 1;
    }
    assert!(found > 5, "the sample must contain loop-free cubic graphs");
}

/// Greedy backtracking proper 3-edge-coloring, independent of the library.
fn brute_force_3_edge_colorable(g: &Graph) -> bool {
    let edges: Vec<(semicover::graph::VertexId, semicover::graph::VertexId)> =
        g.ordinary_edges().map(|(_, u, v)| (u.clone(), v.clone())).collect();
    fn go(
        edges: &[(semicover::graph::VertexId, semicover::graph::VertexId)],
        i: usize,
        used: &mut std::collections::BTreeSet<(semicover::graph::VertexId, usize)>,
    ) -> bool {
        if i == edges.len() {
            return true;
        }
        let (u, v) = &edges[i];
        for color in 0..3 {
            if used.contains(&(u.clone(), color)) || used.contains(&(v.clone(), color)) {
                continue;
            }
            used.insert((u.clone(), color));
            used.insert((v.clone(), color));
            if go(edges, i + 1, used) {
                return true;
            }
            used.remove(&(u.clone(), color));
            used.remove(&(v.clone(), color));
        }
        false
    }
    go(&edges, 0, &mut std::collections::BTreeSet::new())
}

/// Exhaustive sweep: every labeled connected simple graph on up to five
/// vertices with maximum degree four, checked decider-vs-oracle on the
/// polynomial one- and two-vertex parameter sets. Complements the larger
/// random sample in the acceptance suite.
#[test]
fn deciders_match_oracle_on_all_small_connected_simple_graphs() {
    use semicover::decide::{decide_f, decide_w, TargetParams};

    let f_params = [(0usize, 1usize), (1, 0), (1, 1), (2, 0)];
    let w_params = [(1usize, 0usize, 1usize, 0usize, 1usize), (0, 0, 2, 0, 0), (1, 0, 1, 0, 2)];
    let mut graphs = 0u64;
    for n in 2..=5usize {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let mut g = Graph::new();
            for i in 0..n {
                g.add_vertex(format!("v{i}")).unwrap();
            }
            for (idx, (i, j)) in pairs.iter().enumerate() {
                if mask & (1 << idx) != 0 {
                    g.add_edge(format!("e{idx}"), format!("v{i}"), format!("v{j}")).unwrap();
                }
            }
            if !g.is_connected() || g.vertices().any(|v| g.degree(v).unwrap().degree() > 4) {
                continue;
            }
            graphs += 1;
            for &(b, c) in &f_params {
                let target = TargetParams::OneVertex { semi: b, loops: c }.graph();
                assert_eq!(
                    decide_f(&g, b, c).is_yes(),
                    solve_cover(&g, &target, &SearchBudget::unlimited()).is_yes(),
                    "F({b},{c}) on:\n{g}"
                );
            }
            for &(k, m, l, p, q) in &w_params {
                let target = TargetParams::TwoVertex { k, m, l, p, q }.graph();
                assert_eq!(
                    decide_w(&g, (k, m, l, p, q)).unwrap().is_yes(),
                    solve_cover(&g, &target, &SearchBudget::unlimited()).is_yes(),
                    "W({k},{m},{l},{p},{q}) on:\n{g}"
                );
            }
        }
    }
    assert!(graphs > 400, "sweep covered {graphs} graphs");
}

/// The two labelings of the example two-vertex target describe isomorphic
/// graphs, and the exact search finds the isomorphism as a 1-fold cover in
/// both directions.
#[test]
fn symmetric_two_vertex_targets_cover_each_other() {
    use semicover::decide::TargetParams;
    let a = TargetParams::TwoVertex { k: 1, m: 1, l: 2, p: 1, q: 0 }.graph();
    let b = TargetParams::TwoVertex { k: 0, m: 1, l: 2, p: 1, q: 1 }.graph();
    for (g, h) in [(&a, &b), (&b, &a)] {
        let out = solve_cover(g, h, &SearchBudget::unlimited());
        let map = out.witness().expect("relabeled targets are isomorphic");
        assert_eq!(fold_number(g, h, &map).unwrap(), Some(1));
    }
}

// Property tests: serialization round trips on arbitrary generated graphs.

fn arbitrary_graph() -> impl Strategy<Value = Graph> {
    let vertex_names = prop::collection::btree_set("[a-z][a-z0-9.]{0,6}", 1..8);
    vertex_names.prop_flat_map(|names| {
        let names: Vec<String> = names.into_iter().collect();
        let n = names.len();
        let edges = prop::collection::vec(
            (0usize..3, 0..n, 0..n),
            0..12,
        );
        (Just(names), edges).prop_map(|(names, edges)| {
            let mut g = Graph::new();
            for name in &names {
                g.add_vertex(name.clone()).unwrap();
            }
            for (i, (kind, a, b)) in edges.into_iter().enumerate() {
                let id = format!("e{i}");
                match kind {
                    0 => {
                        let _ = g.add_semi_edge(id, names[a].clone());
                    }
                    1 => {
                        let _ = g.add_loop(id, names[a].clone());
                    }
                    _ => {
                        if a != b {
                            let _ = g.add_edge(id, names[a].clone(), names[b].clone());
                        }
                    }
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn graph_serialization_round_trips(g in arbitrary_graph()) {
        let text = g.to_text();
        let back = Graph::parse(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn tensor_preserves_degrees_and_kills_semi_edges(g in arbitrary_graph()) {
        let t = g.tensor_k2();
        prop_assert_eq!(t.vertex_count(), 2 * g.vertex_count());
        prop_assert!(t.semi_edges().next().is_none());
        prop_assert!(t.loops().next().is_none());
        for v in g.vertices() {
            let d = g.degree(v).unwrap().degree();
            for side in 0..2 {
                let copy = semicover::graph::VertexId::new(format!("{v}.{side}"));
                prop_assert_eq!(t.degree(&copy).unwrap().degree(), d);
            }
        }
    }

    #[test]
    fn components_partition_vertices_and_edges(g in arbitrary_graph()) {
        let comps = g.connected_components();
        let vtotal: usize = comps.iter().map(|c| c.vertex_count()).sum();
        let etotal: usize = comps.iter().map(|c| c.edge_count()).sum();
        prop_assert_eq!(vtotal, g.vertex_count());
        prop_assert_eq!(etotal, g.edge_count());
    }
}
