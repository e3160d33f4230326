//! Decider for one-vertex targets.
//!
//! A `(b+2c)`-regular graph covers the one-vertex graph with `b` semi-edges
//! and `c` loops exactly when its edges split into `b` disjoint spanning
//! families of single incidences (the semi-edge preimages, each an ordinary
//! edge or a semi-edge per vertex) followed by `c` spanning 2-factors for
//! the loops; the 2-factors always exist once the semi-edge part is fixed.
//! For `b = 0` and `b = 1` the semi-edge part is a perfect-matching
//! computation, for `b = 2, c = 0` on semi-edge-free input it is the even-
//! components test, and everything else goes to the exact search.

use std::collections::BTreeSet;

use crate::cover::{verify_cover, CoverMap};
use crate::factor::{disjoint_perfect_matchings, perfect_matching, two_factorization, EdgeSubset};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::oracle::{solve_cover, CoverOutcome, SearchBudget};

use super::{one_vertex_graph, Method, Verdict, Witness};

/// Complete decision with an unlimited internal budget.
pub fn decide_f(g: &Graph, b: usize, c: usize) -> Verdict {
    decide_f_budgeted(g, b, c, &SearchBudget::unlimited())
        .expect("unlimited budget cannot be exhausted")
}

/// Budgeted variant: `None` when the exact fallback ran out of budget.
pub fn decide_f_budgeted(
    g: &Graph,
    b: usize,
    c: usize,
    budget: &SearchBudget,
) -> Option<Verdict> {
    if g.regular_degree() != Some(b + 2 * c) {
        return Some(Verdict::no(Method::Polynomial));
    }
    // No vertex may carry more semi-edges than the target.
    if g.vertices().any(|v| g.degree(v).unwrap().semi > b) {
        return Some(Verdict::no(Method::Polynomial));
    }

    let h = one_vertex_graph(b, c);
    match b {
        0 => {
            let factors = two_factorization(g).expect("2c-regular without semi-edges");
            Some(assemble(g, &h, b, c, &[], &BTreeSet::new(), factors))
        }
        1 => {
            // Vertices with a semi-edge are covered by it; the rest must be
            // perfectly matched among themselves.
            let semi_covered: BTreeSet<VertexId> =
                g.semi_edges().map(|(_, u)| u.clone()).collect();
            let rest: BTreeSet<VertexId> =
                g.vertices().filter(|v| !semi_covered.contains(v)).cloned().collect();
            let Some(matching) = perfect_matching(&g.induced(&rest)) else {
                return Some(Verdict::no(Method::Polynomial));
            };
            let matching_edges: Vec<BTreeSet<EdgeId>> = vec![matching.edges.clone()];
            let residual = strip(g, matching_edges.iter().flatten());
            let factors = two_factorization(&residual).expect("residual is 2c-regular");
            Some(assemble(g, &h, b, c, &matching_edges, &semi_covered, factors))
        }
        2 if c == 0 && g.semi_edges().next().is_none() => {
            match disjoint_perfect_matchings(g, 2) {
                None => Some(Verdict::no(Method::Polynomial)),
                Some(ms) => {
                    let edges: Vec<BTreeSet<EdgeId>> =
                        ms.into_iter().map(|m| m.edges).collect();
                    Some(assemble(g, &h, b, c, &edges, &BTreeSet::new(), Vec::new()))
                }
            }
        }
        _ => match solve_cover(g, &h, budget) {
            CoverOutcome::Yes(map) => {
                Some(Verdict::yes(Witness::Cover(map), Method::ExactFallback))
            }
            CoverOutcome::No => Some(Verdict::no(Method::ExactFallback)),
            CoverOutcome::Unknown => None,
        },
    }
}

/// Removes the named ordinary edges and all semi-edges.
fn strip<'a>(g: &Graph, remove: impl Iterator<Item = &'a EdgeId>) -> Graph {
    let gone: BTreeSet<&EdgeId> = remove.collect();
    let mut out = Graph::new();
    for v in g.vertices() {
        out.add_vertex(v.clone()).unwrap();
    }
    for (e, inc) in g.edges() {
        if gone.contains(e) {
            continue;
        }
        match inc {
            crate::graph::Incidence::Semi(_) => {}
            crate::graph::Incidence::Loop(u) => out.add_loop(e.clone(), u.clone()).unwrap(),
            crate::graph::Incidence::Between(u, v) => {
                out.add_edge(e.clone(), u.clone(), v.clone()).unwrap()
            }
        }
    }
    out
}

/// Builds the witness cover: matching `i` and all source semi-edges at its
/// uncovered vertices feed semi-edge `s{i+1}`, 2-factor `j` feeds loop
/// `l{j+1}`, and every vertex maps to the single target vertex.
fn assemble(
    g: &Graph,
    h: &Graph,
    b: usize,
    _c: usize,
    matchings: &[BTreeSet<EdgeId>],
    semi_covered: &BTreeSet<VertexId>,
    factors: Vec<EdgeSubset>,
) -> Verdict {
    let mut map = CoverMap::new();
    for v in g.vertices() {
        map.map_vertex(v.clone(), "u");
    }
    for (i, class) in matchings.iter().enumerate() {
        for e in class {
            map.map_edge(e.clone(), format!("s{}", i + 1));
        }
    }
    // With b = 1 every semi-edge joins the single matching class; in general
    // each semi-covered vertex's own semi-edges take the classes its
    // matching edges left free. Only b <= 1 reaches this path, so the free
    // class is always s1.
    debug_assert!(b <= 1 || semi_covered.is_empty());
    for (e, u) in g.semi_edges() {
        debug_assert!(semi_covered.contains(u));
        map.map_edge(e.clone(), "s1");
    }
    for (j, factor) in factors.iter().enumerate() {
        for e in &factor.edges {
            map.map_edge(e.clone(), format!("l{}", j + 1));
        }
    }
    debug_assert!(verify_cover(g, h, &map).map(|r| r.ok()).unwrap_or(false));
    Verdict::yes(Witness::Cover(map), Method::Polynomial)
}
