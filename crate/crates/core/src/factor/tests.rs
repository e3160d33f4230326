use std::collections::BTreeSet;

use super::*;
use crate::families;
use crate::graph::Graph;

/// Brute-force maximum matching size by subset enumeration. Ground truth for
/// the blossom implementation on small graphs.
fn brute_force_matching_size(g: &Graph) -> usize {
    let edges: Vec<(&VertexId, &VertexId)> =
        g.ordinary_edges().map(|(_, u, v)| (u, v)).collect();
    let m = edges.len();
    assert!(m <= 20, "brute force oracle limited to small graphs");
    let mut best = 0;
    for mask in 0u32..(1 << m) {
        let mut used = BTreeSet::new();
        let mut ok = true;
        let mut size = 0;
        for (i, (u, v)) in edges.iter().enumerate() {
            if mask & (1 << i) != 0 {
                if !used.insert(*u) || !used.insert(*v) {
                    ok = false;
                    break;
                }
                size += 1;
            }
        }
        if ok {
            best = best.max(size);
        }
    }
    best
}

/// Brute force for `k` disjoint perfect matchings by enumerating edge
/// subsets, the independent oracle for the exact search.
fn brute_force_has_disjoint_pms(g: &Graph, k: usize) -> bool {
    fn go(g: &Graph, k: usize, banned: &BTreeSet<EdgeId>) -> bool {
        if k == 0 {
            return true;
        }
        let edges: Vec<(EdgeId, VertexId, VertexId)> = g
            .ordinary_edges()
            .filter(|(e, _, _)| !banned.contains(e))
            .map(|(e, u, v)| (e.clone(), u.clone(), v.clone()))
            .collect();
        let m = edges.len();
        assert!(m <= 20);
        for mask in 0u32..(1 << m) {
            if (mask.count_ones() as usize) * 2 != g.vertex_count() {
                continue;
            }
            let mut used = BTreeSet::new();
            let mut ok = true;
            for (i, (_, u, v)) in edges.iter().enumerate() {
                if mask & (1 << i) != 0 && (!used.insert(u.clone()) || !used.insert(v.clone())) {
                    ok = false;
                    break;
                }
            }
            if ok && used.len() == g.vertex_count() {
                let mut next_banned = banned.clone();
                for (i, (e, _, _)) in edges.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        next_banned.insert(e.clone());
                    }
                }
                if go(g, k - 1, &next_banned) {
                    return true;
                }
            }
        }
        false
    }
    go(g, k, &BTreeSet::new())
}

#[test]
fn max_matching_sizes() {
    assert_eq!(max_matching(&families::complete(4)).len(), 2);
    assert_eq!(max_matching(&families::cycle(5)).len(), 2);
    // The Petersen graph has a perfect matching.
    assert_eq!(max_matching(&families::petersen()).len(), 5);
    assert_eq!(brute_force_matching_size(&families::petersen()), 5);
}

#[test]
fn max_matching_agrees_with_brute_force() {
    use rand::prelude::*;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let n = rng.random_range(2..9);
        let mut g = Graph::new();
        for i in 0..n {
            g.add_vertex(format!("v{i}")).unwrap();
        }
        let mut id = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.random_bool(0.4) && id < 18 {
                    g.add_edge(format!("e{id}"), format!("v{i}"), format!("v{j}")).unwrap();
                    id += 1;
                }
            }
        }
        let got = max_matching(&g);
        assert!(got.is_matching(&g));
        assert_eq!(got.len(), brute_force_matching_size(&g), "graph:\n{g}");
    }
}

#[test]
fn perfect_matching_families() {
    assert!(perfect_matching(&families::cycle(4)).is_some());
    assert!(perfect_matching(&families::cycle(3)).is_none());
    // K4 minus one vertex has odd order.
    let mut k4 = families::complete(4);
    let keep: BTreeSet<VertexId> =
        k4.vertices().take(3).cloned().collect();
    k4 = k4.induced(&keep);
    assert!(perfect_matching(&k4).is_none());
    let pm = perfect_matching(&families::cube()).unwrap();
    assert!(pm.is_perfect_matching(&families::cube()));
}

#[test]
fn blossom_handles_odd_structures() {
    // Two triangles joined by an edge: perfect matching exists.
    let mut g = Graph::new();
    for i in 0..6 {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    for (id, (a, b)) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)]
        .iter()
        .enumerate()
    {
        g.add_edge(format!("e{id}"), format!("v{a}"), format!("v{b}")).unwrap();
    }
    let pm = perfect_matching(&g).expect("two joined triangles are matchable");
    assert!(pm.is_perfect_matching(&g));
}

#[test]
fn edge_coloring_c4() {
    let classes = bipartite_edge_coloring(&families::cycle(4), 2).unwrap();
    assert_eq!(classes.len(), 2);
    for c in &classes {
        assert!(c.is_perfect_matching(&families::cycle(4)));
    }
}

#[test]
fn edge_coloring_k33_gives_three_disjoint_perfect_matchings() {
    let g = families::complete_bipartite(3, 3);
    let classes = bipartite_edge_coloring(&g, 3).unwrap();
    assert_eq!(classes.len(), 3);
    let mut all = BTreeSet::new();
    for c in &classes {
        assert!(c.is_perfect_matching(&g));
        for e in &c.edges {
            assert!(all.insert(e.clone()), "classes must be disjoint");
        }
    }
    assert_eq!(all.len(), g.edge_count());
}

#[test]
fn edge_coloring_parallel_edges() {
    let mut g = Graph::new();
    g.add_vertex("a").unwrap();
    g.add_vertex("b").unwrap();
    for i in 0..4 {
        g.add_edge(format!("e{i}"), "a", "b").unwrap();
    }
    let classes = bipartite_edge_coloring(&g, 4).unwrap();
    assert_eq!(classes.len(), 4);
    assert!(classes.iter().all(|c| c.len() == 1));
}

#[test]
fn edge_coloring_rejects_bad_input() {
    assert!(matches!(
        bipartite_edge_coloring(&families::cycle(5), 2),
        Err(FactorError::NotBipartite)
    ));
    assert!(matches!(
        bipartite_edge_coloring(&families::path(3), 2),
        Err(FactorError::NotRegular { .. })
    ));
}

#[test]
fn two_factorization_k5() {
    let g = families::complete(5);
    let factors = two_factorization(&g).unwrap();
    assert_eq!(factors.len(), 2);
    let mut all = BTreeSet::new();
    for f in &factors {
        assert!(f.is_two_factor(&g));
        for e in &f.edges {
            assert!(all.insert(e.clone()));
        }
    }
    assert_eq!(all.len(), g.edge_count());
}

#[test]
fn two_factorization_c6_is_identity() {
    let g = families::cycle(6);
    let factors = two_factorization(&g).unwrap();
    assert_eq!(factors.len(), 1);
    assert_eq!(factors[0].len(), 6);
    assert!(factors[0].is_two_factor(&g));
}

#[test]
fn two_factorization_of_two_loops() {
    let mut g = Graph::new();
    g.add_vertex("a").unwrap();
    g.add_loop("l0", "a").unwrap();
    g.add_loop("l1", "a").unwrap();
    let factors = two_factorization(&g).unwrap();
    assert_eq!(factors.len(), 2);
    assert!(factors.iter().all(|f| f.len() == 1 && f.is_two_factor(&g)));
}

#[test]
fn two_factorization_rejects_odd_degree_and_semi_edges() {
    assert!(matches!(
        two_factorization(&families::complete(4)),
        Err(FactorError::OddDegree(_))
    ));
    let mut g = families::cycle(4);
    g.add_semi_edge("s", "v0").unwrap();
    assert!(matches!(two_factorization(&g), Err(FactorError::SemiEdgesPresent)));
}

#[test]
fn g_factor_demand_one_on_c4_is_perfect_matching() {
    let g = families::cycle(4);
    let f = g_factor(&g, &DegreeDemand::uniform(&g, 1)).unwrap().unwrap();
    assert!(f.satisfies_demand(&g, &DegreeDemand::uniform(&g, 1)));
    assert_eq!(f.len(), 2);
}

#[test]
fn g_factor_demand_two_on_c4_is_everything() {
    let g = families::cycle(4);
    let f = g_factor(&g, &DegreeDemand::uniform(&g, 2)).unwrap().unwrap();
    assert_eq!(f.len(), 4);
}

#[test]
fn g_factor_on_k33() {
    let g = families::complete_bipartite(3, 3);
    let d = DegreeDemand::uniform(&g, 2);
    let f = g_factor(&g, &d).unwrap().unwrap();
    assert!(f.satisfies_demand(&g, &d));
    assert_eq!(f.len(), 6);
}

#[test]
fn g_factor_infeasible_and_error_cases() {
    let g = families::cycle(4);
    // Unequal side totals are infeasible.
    let mut d = DegreeDemand::uniform(&g, 1);
    d.0.insert("v0".into(), 2);
    assert_eq!(g_factor(&g, &d).unwrap(), None);
    // Demand above the vertex degree is an error.
    let mut too_big = DegreeDemand::default();
    too_big.0.insert("v0".into(), 3);
    assert!(matches!(
        g_factor(&g, &too_big),
        Err(FactorError::DemandExceedsDegree { .. })
    ));
    assert!(matches!(
        g_factor(&families::cycle(5), &DegreeDemand::default()),
        Err(FactorError::NotBipartite)
    ));
    let mut unknown = DegreeDemand::default();
    unknown.0.insert("zz".into(), 1);
    assert!(matches!(g_factor(&g, &unknown), Err(FactorError::UnknownVertex(_))));
}

#[test]
fn disjoint_pms_on_even_two_regular_graphs() {
    // Any 2-regular graph whose components are even cycles has both.
    let mut g = families::cycle(4);
    for v in ["w0", "w1"] {
        g.add_vertex(v).unwrap();
    }
    g.add_edge("p0", "w0", "w1").unwrap();
    g.add_edge("p1", "w0", "w1").unwrap();
    let ms = disjoint_perfect_matchings(&g, 2).expect("even components");
    assert_eq!(ms.len(), 2);
    assert!(ms.iter().all(|m| m.is_perfect_matching(&g)));
    assert!(ms[0].edges.is_disjoint(&ms[1].edges));

    // An odd cycle in the mix kills it.
    assert_eq!(disjoint_perfect_matchings(&families::cycle(5), 2), None);
}

#[test]
fn petersen_has_no_three_disjoint_pms() {
    assert!(disjoint_perfect_matchings(&families::petersen(), 3).is_none());
    assert!(!brute_force_has_disjoint_pms(&families::petersen(), 3));
}

#[test]
fn k4_has_three_disjoint_pms() {
    let g = families::complete(4);
    let ms = disjoint_perfect_matchings(&g, 3).expect("K4 splits into 3 matchings");
    assert_eq!(ms.len(), 3);
    let mut all = BTreeSet::new();
    for m in &ms {
        assert!(m.is_perfect_matching(&g));
        for e in &m.edges {
            assert!(all.insert(e.clone()));
        }
    }
}

#[test]
fn disjoint_pms_trivial_cases() {
    assert_eq!(disjoint_perfect_matchings(&families::cycle(4), 0), Some(Vec::new()));
    let one = disjoint_perfect_matchings(&families::cube(), 1).unwrap();
    assert_eq!(one.len(), 1);
}

#[test]
fn disjoint_pms_agree_with_subset_enumeration() {
    use rand::prelude::*;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for round in 0..50 {
        let n = 2 * rng.random_range(1..4usize);
        let mut g = Graph::new();
        for i in 0..n {
            g.add_vertex(format!("v{i}")).unwrap();
        }
        let mut id = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.random_bool(0.55) && id < 10 {
                    g.add_edge(format!("e{id}"), format!("v{i}"), format!("v{j}")).unwrap();
                    id += 1;
                }
            }
        }
        for k in 1..=3usize {
            let got = disjoint_perfect_matchings(&g, k);
            let want = brute_force_has_disjoint_pms(&g, k);
            assert_eq!(got.is_some(), want, "round {round} k {k} graph:\n{g}");
            if let Some(ms) = got {
                assert_eq!(ms.len(), k);
                let mut all = BTreeSet::new();
                for m in &ms {
                    assert!(m.is_perfect_matching(&g));
                    for e in &m.edges {
                        assert!(all.insert(e.clone()));
                    }
                }
            }
        }
    }
}

#[test]
fn edge_subset_line_format() {
    let s = EdgeSubset::new(SubsetRole::Matching, [EdgeId::from("b"), EdgeId::from("a")]);
    assert_eq!(s.to_line(), "f matching a b");
    assert_eq!(SubsetRole::parse("two-factor"), Some(SubsetRole::TwoFactor));
}
