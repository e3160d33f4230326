use std::collections::BTreeMap;

use super::*;
use crate::cover::verify_cover;
use crate::families;
use crate::oracle::{solve_cover, SearchBudget};

fn assert_yes_with_verified_cover(g: &Graph, h: &Graph, v: &Verdict) {
    assert!(v.is_yes());
    match &v.witness {
        Some(Witness::Cover(map)) => {
            let report = verify_cover(g, h, map).unwrap();
            assert!(report.ok(), "witness fails: {:?}", report.violations);
        }
        other => panic!("expected a cover witness, got {other:?}"),
    }
}

mod one_vertex {
    use super::*;

    #[test]
    fn k4_covers_three_semi_edges_by_exact_fallback() {
        let v = decide_f(&families::complete(4), 3, 0);
        assert_eq!(v.method, Method::ExactFallback);
        assert_yes_with_verified_cover(&families::complete(4), &one_vertex_graph(3, 0), &v);
    }

    #[test]
    fn petersen_does_not_cover_three_semi_edges() {
        let v = decide_f(&families::petersen(), 3, 0);
        assert!(!v.is_yes());
        assert_eq!(v.method, Method::ExactFallback);
    }

    #[test]
    fn odd_cycles_do_not_cover_two_semi_edges() {
        let mut g = families::cycle(3);
        // A second odd component, to exercise the component rule.
        for i in 0..5 {
            g.add_vertex(format!("w{i}")).unwrap();
        }
        for i in 0..5 {
            g.add_edge(format!("f{i}"), format!("w{i}"), format!("w{}", (i + 1) % 5)).unwrap();
        }
        let v = decide_f(&g, 2, 0);
        assert!(!v.is_yes());
        assert_eq!(v.method, Method::Polynomial);
        let even = decide_f(&families::cycle(6), 2, 0);
        assert!(even.is_yes());
        assert_eq!(even.method, Method::Polynomial);
    }

    #[test]
    fn perfect_matching_case_with_loops() {
        // K4 is cubic: one perfect matching plus a 2-factor covers F(1,1).
        let g = families::complete(4);
        let v = decide_f(&g, 1, 1);
        assert_eq!(v.method, Method::Polynomial);
        assert_yes_with_verified_cover(&g, &one_vertex_graph(1, 1), &v);
    }

    #[test]
    fn two_factor_only_case() {
        let g = families::complete(5);
        let v = decide_f(&g, 0, 2);
        assert_eq!(v.method, Method::Polynomial);
        assert_yes_with_verified_cover(&g, &one_vertex_graph(0, 2), &v);
    }

    #[test]
    fn semi_edges_join_the_matching_class() {
        let mut g = Graph::new();
        g.add_vertex("a").unwrap();
        g.add_vertex("b").unwrap();
        g.add_edge("ab", "a", "b").unwrap();
        g.add_semi_edge("sa", "a").unwrap();
        g.add_semi_edge("sb", "b").unwrap();
        // 2-regular with semi-edges leaves the even-components shortcut.
        let v = decide_f(&g, 2, 0);
        assert_eq!(v.method, Method::ExactFallback);
        assert_yes_with_verified_cover(&g, &one_vertex_graph(2, 0), &v);

        let mut single = Graph::new();
        single.add_vertex("a").unwrap();
        single.add_semi_edge("s", "a").unwrap();
        let v = decide_f(&single, 1, 0);
        assert!(v.is_yes());
        assert_eq!(v.method, Method::Polynomial);
        assert_yes_with_verified_cover(&single, &one_vertex_graph(1, 0), &v);
    }

    #[test]
    fn matching_case_with_semi_edges_and_loops() {
        // Cube vertices: one semi-edge each would break regularity, so use a
        // 3-regular graph where two vertices carry semi-edges and the rest
        // pair up: a path a-b with semi-edges and a loop at each end is
        // 3-regular and covers F(1,1).
        let mut g = Graph::new();
        g.add_vertex("a").unwrap();
        g.add_vertex("b").unwrap();
        g.add_edge("ab", "a", "b").unwrap();
        g.add_semi_edge("sa", "a").unwrap();
        g.add_semi_edge("sb", "b").unwrap();
        g.add_loop("la", "a").unwrap();
        g.add_loop("lb", "b").unwrap();
        assert_eq!(g.regular_degree(), Some(4));
        let v = decide_f(&g, 2, 1);
        assert_eq!(v.method, Method::ExactFallback);
        assert_yes_with_verified_cover(&g, &one_vertex_graph(2, 1), &v);

        // b = 1: semi-edge vertices sit out of the matching.
        let mut h = Graph::new();
        h.add_vertex("a").unwrap();
        h.add_vertex("b").unwrap();
        h.add_semi_edge("sa", "a").unwrap();
        h.add_semi_edge("sb", "b").unwrap();
        h.add_loop("la", "a").unwrap();
        h.add_loop("lb", "b").unwrap();
        h.add_edge("ab1", "a", "b").unwrap();
        h.add_edge("ab2", "a", "b").unwrap();
        assert_eq!(h.regular_degree(), Some(5));
        let v = decide_f(&h, 1, 2);
        assert_eq!(v.method, Method::Polynomial);
        assert_yes_with_verified_cover(&h, &one_vertex_graph(1, 2), &v);
    }

    #[test]
    fn non_regular_input_is_rejected_fast() {
        let v = decide_f(&families::path(3), 1, 0);
        assert!(!v.is_yes());
        assert_eq!(v.method, Method::Polynomial);
        // Too many semi-edges at one vertex.
        let mut g = Graph::new();
        g.add_vertex("a").unwrap();
        g.add_semi_edge("s1", "a").unwrap();
        g.add_semi_edge("s2", "a").unwrap();
        g.add_vertex("b").unwrap();
        g.add_loop("lb", "b").unwrap();
        assert!(!decide_f(&g, 0, 1).is_yes());
    }
}

mod two_vertex {
    use super::*;

    #[test]
    fn cycle_length_mod_four() {
        let yes = decide_w(&families::cycle(8), (1, 0, 1, 0, 1)).unwrap();
        assert_eq!(yes.method, Method::Polynomial);
        assert_yes_with_verified_cover(&families::cycle(8), &two_vertex_graph(1, 0, 1, 0, 1), &yes);
        let no = decide_w(&families::cycle(6), (1, 0, 1, 0, 1)).unwrap();
        assert!(!no.is_yes());
        assert_eq!(no.method, Method::Polynomial);
    }

    #[test]
    fn bare_bars_need_bipartite_regular_inputs() {
        let g = families::complete_bipartite(3, 3);
        let v = decide_w(&g, (0, 0, 3, 0, 0)).unwrap();
        assert_eq!(v.method, Method::Polynomial);
        assert_yes_with_verified_cover(&g, &two_vertex_graph(0, 0, 3, 0, 0), &v);
        assert!(!decide_w(&families::complete(4), (0, 0, 3, 0, 0)).unwrap().is_yes());
        assert!(!decide_w(&families::cycle(5), (0, 0, 2, 0, 0)).unwrap().is_yes());
    }

    #[test]
    fn forced_coloring_case_round_trip() {
        // Blue side: two vertices with a semi-edge each, degree 2. Red side:
        // two vertices joined by a parallel pair, degree 3.
        let mut g = Graph::new();
        for v in ["b1", "b2", "r1", "r2"] {
            g.add_vertex(v).unwrap();
        }
        g.add_edge("x1", "r1", "r2").unwrap();
        g.add_edge("x2", "r1", "r2").unwrap();
        g.add_edge("c1", "b1", "r1").unwrap();
        g.add_edge("c2", "b2", "r2").unwrap();
        g.add_semi_edge("s1", "b1").unwrap();
        g.add_semi_edge("s2", "b2").unwrap();
        let v = decide_w(&g, (1, 0, 1, 0, 2)).unwrap();
        assert_eq!(v.method, Method::Polynomial);
        assert_yes_with_verified_cover(&g, &two_vertex_graph(1, 0, 1, 0, 2), &v);
        assert!(solve_cover(&g, &two_vertex_graph(1, 0, 1, 0, 2), &SearchBudget::unlimited())
            .is_yes());
    }

    #[test]
    fn forced_coloring_with_fallback_side() {
        // Blue side needs three semi-edges (exact search territory), red
        // side a single one. Blue = K4, red = one pendant-with-semi-edge
        // per blue vertex.
        let mut g = families::complete(4);
        for i in 0..4 {
            g.add_vertex(format!("r{i}")).unwrap();
            g.add_edge(format!("c{i}"), format!("v{i}"), format!("r{i}")).unwrap();
            g.add_semi_edge(format!("rs{i}"), format!("r{i}")).unwrap();
        }
        let v = decide_w(&g, (3, 0, 1, 0, 1)).unwrap();
        assert_eq!(v.method, Method::ExactFallback, "one side went through the exact search");
        assert_yes_with_verified_cover(&g, &two_vertex_graph(3, 0, 1, 0, 1), &v);
    }

    #[test]
    fn degree_mismatch_is_immediate_no() {
        let v = decide_w(&families::cycle(4), (1, 0, 1, 0, 2)).unwrap();
        assert!(!v.is_yes());
        assert_eq!(v.method, Method::Polynomial);
    }

    #[test]
    fn zero_bars_is_an_error() {
        assert!(matches!(
            decide_w(&families::cycle(4), (1, 0, 0, 0, 1)),
            Err(DecideError::NoBars)
        ));
    }

    #[test]
    fn semi_capped_paths_go_to_the_oracle_per_component() {
        let mut path2 = Graph::new();
        path2.add_vertex("a").unwrap();
        path2.add_vertex("b").unwrap();
        path2.add_edge("ab", "a", "b").unwrap();
        path2.add_semi_edge("sa", "a").unwrap();
        path2.add_semi_edge("sb", "b").unwrap();
        let v = decide_w(&path2, (1, 0, 1, 0, 1)).unwrap();
        assert_yes_with_verified_cover(&path2, &two_vertex_graph(1, 0, 1, 0, 1), &v);

        let mut lonely = Graph::new();
        lonely.add_vertex("a").unwrap();
        lonely.add_semi_edge("s1", "a").unwrap();
        lonely.add_semi_edge("s2", "a").unwrap();
        assert!(!decide_w(&lonely, (1, 0, 1, 0, 1)).unwrap().is_yes());
    }

    #[test]
    fn hard_parameters_fall_back_to_exact_search() {
        // The dumbbell target: one bar, a loop on each side. The triangular
        // prism covers it: each triangle lifts a loop, the rungs lift the
        // bar.
        let mut g = Graph::new();
        for i in 0..6 {
            g.add_vertex(format!("v{i}")).unwrap();
        }
        for (id, (a, b)) in
            [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
                .iter()
                .enumerate()
        {
            g.add_edge(format!("e{id}"), format!("v{a}"), format!("v{b}")).unwrap();
        }
        let v = decide_w(&g, (0, 1, 1, 1, 0)).unwrap();
        assert_eq!(v.method, Method::ExactFallback);
        assert_yes_with_verified_cover(&g, &two_vertex_graph(0, 1, 1, 1, 0), &v);
        // Wrong regularity is an immediate no.
        let no = decide_w(&families::cycle(6), (0, 1, 1, 1, 0)).unwrap();
        assert!(!no.is_yes());
    }
}

mod extension {
    use super::*;

    #[test]
    fn c4_extends_onto_two_bars() {
        let g = families::cycle(4);
        let h = two_vertex_graph(0, 0, 2, 0, 0);
        let f_v: BTreeMap<VertexId, VertexId> = g
            .vertices()
            .enumerate()
            .map(|(i, v)| (v.clone(), VertexId::from(if i % 2 == 0 { "blue" } else { "red" })))
            .collect();
        let map = extend_obedient(&g, &h, &f_v).unwrap().expect("extension exists");
        assert!(verify_cover(&g, &h, &map).unwrap().ok());
    }

    #[test]
    fn semi_edge_demands_can_be_infeasible() {
        // Both sides 4-regular toward F(2,1), but the factor demands sum to
        // 4 on the left and 2 on the right, so no extension exists; the
        // exact search confirms there is no cover at all.
        let mut g = Graph::new();
        for v in ["a1", "a2", "b1", "b2", "b3"] {
            g.add_vertex(v).unwrap();
        }
        g.add_edge("e1", "a1", "b1").unwrap();
        g.add_edge("e2", "a1", "b2").unwrap();
        g.add_edge("e3", "a1", "b2").unwrap();
        g.add_edge("e4", "a1", "b3").unwrap();
        g.add_edge("e5", "a2", "b1").unwrap();
        g.add_edge("e6", "a2", "b2").unwrap();
        g.add_edge("e7", "a2", "b3").unwrap();
        g.add_edge("e8", "a2", "b3").unwrap();
        g.add_semi_edge("s1", "b1").unwrap();
        g.add_semi_edge("s2", "b1").unwrap();
        g.add_semi_edge("s3", "b2").unwrap();
        g.add_semi_edge("s4", "b3").unwrap();
        assert_eq!(g.regular_degree(), Some(4));

        let h = one_vertex_graph(2, 1);
        let f_v: BTreeMap<VertexId, VertexId> =
            g.vertices().map(|v| (v.clone(), VertexId::from("u"))).collect();
        assert!(crate::cover::is_degree_obedient(&g, &h, &f_v).unwrap());
        assert_eq!(extend_obedient(&g, &h, &f_v).unwrap(), None);
        assert!(solve_cover(&g, &h, &SearchBudget::unlimited()).is_no());
    }

    #[test]
    fn preconditions_are_errors() {
        let g = families::cycle(5);
        let h = one_vertex_graph(0, 1);
        let f_v: BTreeMap<VertexId, VertexId> =
            g.vertices().map(|v| (v.clone(), VertexId::from("u"))).collect();
        assert!(matches!(extend_obedient(&g, &h, &f_v), Err(DecideError::NotBipartite)));

        let g = families::cycle(4);
        let h = one_vertex_graph(1, 0);
        let f_v: BTreeMap<VertexId, VertexId> =
            g.vertices().map(|v| (v.clone(), VertexId::from("u"))).collect();
        assert!(matches!(extend_obedient(&g, &h, &f_v), Err(DecideError::NotObedient)));
    }
}

mod colorings {
    use super::*;

    fn coloring(pairs: &[(&str, ColorTag)], own: usize, other: usize) -> TwoColoring {
        TwoColoring {
            colors: pairs.iter().map(|(v, c)| (VertexId::from(*v), *c)).collect(),
            own,
            other,
        }
    }

    fn alternating_c4(own: usize, other: usize) -> TwoColoring {
        coloring(
            &[
                ("v0", ColorTag::Red),
                ("v1", ColorTag::Blue),
                ("v2", ColorTag::Red),
                ("v3", ColorTag::Blue),
            ],
            own,
            other,
        )
    }

    #[test]
    fn check_bc_basics() {
        let g = families::cycle(4);
        assert!(check_bc_coloring(&g, &alternating_c4(0, 2)).unwrap());
        let mono = coloring(
            &[
                ("v0", ColorTag::Red),
                ("v1", ColorTag::Red),
                ("v2", ColorTag::Red),
                ("v3", ColorTag::Red),
            ],
            0,
            2,
        );
        assert!(!check_bc_coloring(&g, &mono).unwrap());
        // Monochromatic K_{3,3} is a (3,0)-coloring.
        let k33 = families::complete_bipartite(3, 3);
        let all_red = TwoColoring {
            colors: k33.vertices().map(|v| (v.clone(), ColorTag::Red)).collect(),
            own: 3,
            other: 0,
        };
        assert!(check_bc_coloring(&k33, &all_red).unwrap());
    }

    #[test]
    fn check_bc_counts_loops_and_multiplicity() {
        let mut g = Graph::new();
        g.add_vertex("a").unwrap();
        g.add_vertex("b").unwrap();
        g.add_edge("e1", "a", "b").unwrap();
        g.add_edge("e2", "a", "b").unwrap();
        g.add_loop("la", "a").unwrap();
        g.add_loop("lb", "b").unwrap();
        g.add_semi_edge("sa", "a").unwrap(); // ignored by the counts
        let col = coloring(&[("a", ColorTag::Red), ("b", ColorTag::Blue)], 2, 2);
        assert!(check_bc_coloring(&g, &col).unwrap());
    }

    #[test]
    fn partial_colorings_error() {
        let g = families::cycle(4);
        let partial = coloring(&[("v0", ColorTag::Red)], 0, 2);
        assert!(matches!(check_bc_coloring(&g, &partial), Err(DecideError::PartialColoring(_))));
    }

    #[test]
    fn decide_bc_cases() {
        // Pairs pattern on the eight-cycle.
        let v = decide_bc_coloring(&families::cycle(8), 1, 1);
        assert!(v.is_yes());
        match v.witness {
            Some(Witness::Coloring(col)) => {
                assert!(check_bc_coloring(&families::cycle(8), &col).unwrap())
            }
            other => panic!("expected coloring witness, got {other:?}"),
        }
        assert!(decide_bc_coloring(&families::cycle(6), 0, 2).is_yes());
        assert!(!decide_bc_coloring(&families::cycle(5), 0, 2).is_yes());
        assert!(decide_bc_coloring(&families::complete(4), 3, 0).is_yes());
        assert!(!decide_bc_coloring(&families::cycle(8), 2, 1).is_yes());
    }

    #[test]
    fn swap_side_colors_swaps_the_contract() {
        let g = families::cycle(4);
        let part = g.bipartition().unwrap();
        let col = alternating_c4(0, 2);
        let swapped = swap_side_colors(&g, &part, &col).unwrap();
        assert_eq!(swapped.own, 2);
        assert_eq!(swapped.other, 0);
        assert!(check_bc_coloring(&g, &swapped).unwrap());
        let back = swap_side_colors(&g, &part, &swapped).unwrap();
        assert_eq!(back.colors, col.colors);

        // Monochromatic (b,0) on K_{b,b} becomes the alternating (0,b).
        let k33 = families::complete_bipartite(3, 3);
        let all_red = TwoColoring {
            colors: k33.vertices().map(|v| (v.clone(), ColorTag::Red)).collect(),
            own: 3,
            other: 0,
        };
        let part = k33.bipartition().unwrap();
        let alt = swap_side_colors(&k33, &part, &all_red).unwrap();
        assert!(check_bc_coloring(&k33, &alt).unwrap());
    }

    #[test]
    fn swap_rejects_bad_inputs() {
        let g = families::cycle(4);
        let part = g.bipartition().unwrap();
        let invalid = coloring(
            &[
                ("v0", ColorTag::Red),
                ("v1", ColorTag::Red),
                ("v2", ColorTag::Red),
                ("v3", ColorTag::Red),
            ],
            0,
            2,
        );
        assert!(matches!(
            swap_side_colors(&g, &part, &invalid),
            Err(DecideError::InvalidColoring { .. })
        ));
        let bad_part = (part.0.clone(), std::collections::BTreeSet::new());
        assert!(matches!(
            swap_side_colors(&g, &bad_part, &alternating_c4(0, 2)),
            Err(DecideError::InvalidBipartition)
        ));
    }

    #[test]
    fn cover_from_coloring_on_c4() {
        let g = families::cycle(4);
        let col = alternating_c4(0, 2);
        let map = cover_from_coloring(&g, (0, 0, 2, 0, 0), &col).unwrap().unwrap();
        let h = two_vertex_graph(0, 0, 2, 0, 0);
        assert!(verify_cover(&g, &h, &map).unwrap().ok());
    }

    #[test]
    fn cover_from_coloring_rejects_mismatches() {
        let g = families::cycle(4);
        let col = alternating_c4(0, 2);
        assert!(matches!(
            cover_from_coloring(&g, (1, 0, 2, 0, 1), &col),
            Err(DecideError::ParameterMismatch(_))
        ));
        assert!(cover_from_coloring(&families::cycle(5), (0, 0, 2, 0, 0), &col).is_err());
    }

    #[test]
    fn coloring_text_round_trip() {
        let col = alternating_c4(0, 2);
        let text = col.to_text();
        let back = TwoColoring::parse(&text, 0, 2).unwrap();
        assert_eq!(back, col);
        assert!(TwoColoring::parse("c v0 green\n", 0, 2).is_err());
    }
}

#[test]
fn target_params_parse() {
    assert_eq!(TargetParams::parse("F:3,0").unwrap(), TargetParams::OneVertex { semi: 3, loops: 0 });
    assert_eq!(
        TargetParams::parse("W:1,0,1,0,1").unwrap(),
        TargetParams::TwoVertex { k: 1, m: 0, l: 1, p: 0, q: 1 }
    );
    assert!(TargetParams::parse("W:1,0,0,0,1").is_err());
    assert!(TargetParams::parse("F:1").is_err());
    assert!(TargetParams::parse("X:1,2").is_err());
    let g = TargetParams::parse("W:1,1,2,1,1").unwrap().graph();
    assert_eq!(g.vertex_count(), 2);
    assert_eq!(g.edge_count(), 6);
}
