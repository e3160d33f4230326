//! Decider for two-vertex targets `W(k,m,l,p,q)`.
//!
//! Non-regular targets force the vertex coloring through the two distinct
//! degrees, after which the blue and red induced subgraphs reduce to
//! one-vertex decisions and the leftover cross subgraph is an `l`-regular
//! bipartite graph that always maps onto the bars. For regular targets the
//! polynomial cases are the cycle test for one bar with one semi-edge per
//! side, and the bipartite test when both sides are bare; everything else is
//! the exact search.

use std::collections::BTreeMap;

use crate::cover::{is_degree_obedient, verify_cover, CoverMap};
use crate::factor::bipartite_edge_coloring;
use crate::graph::{Graph, VertexId};
use crate::oracle::{solve_cover, CoverOutcome, SearchBudget};

use super::{
    decide_f_budgeted, extend_obedient, two_vertex_graph, DecideError, Method, Verdict, Witness,
};

pub fn decide_w(
    g: &Graph,
    (k, m, l, p, q): (usize, usize, usize, usize, usize),
) -> Result<Verdict, DecideError> {
    decide_w_budgeted(g, (k, m, l, p, q), &SearchBudget::unlimited())
        .map(|v| v.expect("unlimited budget cannot be exhausted"))
}

/// Budgeted variant: `Ok(None)` when an exact search ran out of budget.
pub fn decide_w_budgeted(
    g: &Graph,
    (k, m, l, p, q): (usize, usize, usize, usize, usize),
    budget: &SearchBudget,
) -> Result<Option<Verdict>, DecideError> {
    if l == 0 {
        return Err(DecideError::NoBars);
    }
    let blue_degree = k + 2 * m + l;
    let red_degree = 2 * p + q + l;
    if blue_degree != red_degree {
        return Ok(forced_coloring_case(g, (k, m, l, p, q), budget));
    }

    // Regular target: the input must be regular of the common degree.
    if g.regular_degree() != Some(blue_degree) {
        return Ok(Some(Verdict::no(Method::Polynomial)));
    }

    if k == 0 && m == 0 && p == 0 && q == 0 {
        return Ok(Some(bare_bars_case(g, l)));
    }

    if k == 1 && q == 1 && m == 0 && p == 0 && l == 1 {
        return Ok(one_bar_one_semi_case(g, budget));
    }

    // NP-hard parameter range: complete exact search.
    let h = two_vertex_graph(k, m, l, p, q);
    Ok(match solve_cover(g, &h, budget) {
        CoverOutcome::Yes(map) => Some(Verdict::yes(Witness::Cover(map), Method::ExactFallback)),
        CoverOutcome::No => Some(Verdict::no(Method::ExactFallback)),
        CoverOutcome::Unknown => None,
    })
}

/// Distinct degrees pin every vertex's image. Degree obedience of that
/// forced map, one-vertex covers on the monochromatic subgraphs, and an edge
/// coloring of the cross subgraph settle the answer.
fn forced_coloring_case(
    g: &Graph,
    (k, m, l, p, q): (usize, usize, usize, usize, usize),
    budget: &SearchBudget,
) -> Option<Verdict> {
    let blue_degree = k + 2 * m + l;
    let red_degree = 2 * p + q + l;
    let h = two_vertex_graph(k, m, l, p, q);
    let mut f_v: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for v in g.vertices() {
        let d = g.degree(v).unwrap().degree();
        if d == blue_degree {
            f_v.insert(v.clone(), "blue".into());
        } else if d == red_degree {
            f_v.insert(v.clone(), "red".into());
        } else {
            return Some(Verdict::no(Method::Polynomial));
        }
    }
    if !is_degree_obedient(g, &h, &f_v).expect("map is total by construction") {
        return Some(Verdict::no(Method::Polynomial));
    }

    let blue: std::collections::BTreeSet<VertexId> =
        f_v.iter().filter(|(_, img)| img.as_str() == "blue").map(|(v, _)| v.clone()).collect();
    let red: std::collections::BTreeSet<VertexId> =
        f_v.iter().filter(|(_, img)| img.as_str() == "red").map(|(v, _)| v.clone()).collect();

    let blue_verdict = decide_f_budgeted(&g.induced(&blue), k, m, budget)?;
    if !blue_verdict.is_yes() {
        return Some(Verdict::no(blue_verdict.method));
    }
    let red_verdict = decide_f_budgeted(&g.induced(&red), q, p, budget)?;
    if !red_verdict.is_yes() {
        return Some(Verdict::no(blue_verdict.method.and(red_verdict.method)));
    }

    // Cross subgraph: one endpoint in each fibre, l-regular and bipartite by
    // obedience, so it splits into l matchings, one per bar.
    let mut cross = Graph::new();
    for v in g.vertices() {
        cross.add_vertex(v.clone()).unwrap();
    }
    for (e, u, v) in g.ordinary_edges() {
        if blue.contains(u) != blue.contains(v) {
            cross.add_edge(e.clone(), u.clone(), v.clone()).unwrap();
        }
    }
    let classes =
        bipartite_edge_coloring(&cross, l).expect("cross subgraph is l-regular bipartite");

    let mut map = CoverMap { vertex_map: f_v, edge_map: BTreeMap::new() };
    for (i, class) in classes.iter().enumerate() {
        for e in &class.edges {
            map.map_edge(e.clone(), format!("bar{}", i + 1));
        }
    }
    remap_one_vertex_witness(&mut map, &blue_verdict, "blue");
    remap_one_vertex_witness(&mut map, &red_verdict, "red");
    debug_assert!(verify_cover(g, &h, &map).map(|r| r.ok()).unwrap_or(false));
    Some(Verdict::yes(Witness::Cover(map), blue_verdict.method.and(red_verdict.method)))
}

/// Copies a one-vertex witness into the two-vertex map, renaming `s{i}` to
/// `<side>.s{i}` and `l{i}` to `<side>.l{i}`.
fn remap_one_vertex_witness(map: &mut CoverMap, verdict: &Verdict, side: &str) {
    let Some(Witness::Cover(sub)) = &verdict.witness else {
        panic!("one-vertex yes verdicts always carry a cover witness");
    };
    for (e, img) in &sub.edge_map {
        map.map_edge(e.clone(), format!("{side}.{img}"));
    }
}

/// Covers of the two-vertex graph with `l` bars and nothing else are exactly
/// the bipartite `l`-regular graphs without semi-edges.
fn bare_bars_case(g: &Graph, l: usize) -> Verdict {
    if g.semi_edges().next().is_some() {
        return Verdict::no(Method::Polynomial);
    }
    let Some((side_a, _)) = g.bipartition() else {
        return Verdict::no(Method::Polynomial);
    };
    let h = two_vertex_graph(0, 0, l, 0, 0);
    let f_v: BTreeMap<VertexId, VertexId> = g
        .vertices()
        .map(|v| (v.clone(), VertexId::from(if side_a.contains(v) { "blue" } else { "red" })))
        .collect();
    let map = extend_obedient(g, &h, &f_v)
        .expect("bipartition map is obedient on an l-regular graph")
        .expect("bipartite semi-edge-free maps always extend");
    Verdict::yes(Witness::Cover(map), Method::Polynomial)
}

/// One bar and one semi-edge per side: a 2-regular input covers the target
/// exactly when every cycle component has length divisible by four. Path
/// components capped by semi-edges are rare and small, so they go to the
/// exact search one component at a time.
fn one_bar_one_semi_case(g: &Graph, budget: &SearchBudget) -> Option<Verdict> {
    let h = two_vertex_graph(1, 0, 1, 0, 1);
    let mut map = CoverMap::new();
    for comp in g.connected_components() {
        if comp.semi_edges().next().is_some() {
            match solve_cover(&comp, &h, budget) {
                CoverOutcome::Yes(sub) => {
                    map.vertex_map.extend(sub.vertex_map);
                    map.edge_map.extend(sub.edge_map);
                }
                CoverOutcome::No => return Some(Verdict::no(Method::Polynomial)),
                CoverOutcome::Unknown => return None,
            }
            continue;
        }
        // A loop component has walk length 1, a parallel pair 2; neither is
        // divisible by four, matching the general cycle rule.
        let Some(cycle) = cycle_walk(&comp) else {
            return Some(Verdict::no(Method::Polynomial));
        };
        if cycle.len() % 4 != 0 {
            return Some(Verdict::no(Method::Polynomial));
        }
        for (i, (v, e)) in cycle.iter().enumerate() {
            map.map_vertex(v.clone(), if i % 4 < 2 { "blue" } else { "red" });
            let img = match i % 4 {
                0 => "blue.s1",
                2 => "red.s1",
                _ => "bar1",
            };
            map.map_edge(e.clone(), img);
        }
    }
    debug_assert!(verify_cover(g, &h, &map).map(|r| r.ok()).unwrap_or(false));
    Some(Verdict::yes(Witness::Cover(map), Method::Polynomial))
}

/// Walks a 2-regular loop-free component, returning `(vertex, outgoing
/// edge)` pairs in cyclic order, or `None` for loop components.
fn cycle_walk(comp: &Graph) -> Option<Vec<(VertexId, crate::graph::EdgeId)>> {
    if comp.loops().next().is_some() {
        return None;
    }
    let start = comp.vertices().next().expect("components are nonempty").clone();
    let mut walk = Vec::new();
    let mut used = std::collections::BTreeSet::new();
    let mut cur = start.clone();
    loop {
        let (e, next) = comp
            .ordinary_edges()
            .filter(|(e, u, v)| !used.contains(*e) && (**u == cur || **v == cur))
            .map(|(e, u, v)| (e.clone(), if u == &cur { v.clone() } else { u.clone() }))
            .next()?;
        used.insert(e.clone());
        walk.push((cur.clone(), e));
        cur = next;
        if cur == start {
            return Some(walk);
        }
    }
}
