//! Gadgets reducing edge colorability to disjoint perfect matchings.

use std::collections::BTreeSet;

use crate::factor::{EdgeSubset, SubsetRole};
use crate::graph::{EdgeId, Graph};

use super::{one_factorization, GadgetError, ReductionArtifact};

/// The auxiliary graph used to pad degrees: start from the complete graph on
/// `t + 1` vertices for the smallest odd `t >= d + 1`, keep the color
/// classes `1..=d` of a one-factorization arranged so that class 1 contains
/// `xy`, class 2 contains `xz` and `yz` falls outside the kept range, then
/// drop `xy` and `xz` and add `yz`. Vertex `x` ends with degree `d - 2`, all
/// others with degree `d`, and classes `3..=d` survive as `d - 2` pairwise
/// disjoint perfect matchings, returned as the witness.
pub fn build_matchings_gadget(d: usize) -> Result<ReductionArtifact, GadgetError> {
    if d < 3 {
        return Err(GadgetError::BadParameters(format!("need d >= 3, got {d}")));
    }
    let t = if (d + 1) % 2 == 1 { d + 1 } else { d + 2 };
    let n = t + 1;
    let rounds = one_factorization(n);

    // x = 0, y = 1, z = 2. Find the rounds holding xy, xz, yz; they are
    // pairwise distinct because the edges pairwise share a vertex.
    let round_of = |a: usize, b: usize| {
        rounds
            .iter()
            .position(|round| round.contains(&(a.min(b), a.max(b))))
            .expect("every pair appears in some round")
    };
    let (r_xy, r_xz, r_yz) = (round_of(0, 1), round_of(0, 2), round_of(1, 2));

    // Relabel rounds so that slot 1 holds xy, slot 2 holds xz and slot t
    // holds yz; the rest fill the remaining slots in increasing order.
    let mut slot_of_round = vec![0usize; t];
    slot_of_round[r_xy] = 1;
    slot_of_round[r_xz] = 2;
    slot_of_round[r_yz] = t;
    let mut next_slot = 3;
    for r in 0..t {
        if r == r_xy || r == r_xz || r == r_yz {
            continue;
        }
        slot_of_round[r] = next_slot;
        next_slot += 1;
    }

    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    let edge_id = |a: usize, b: usize| format!("v{}~v{}", a.min(b), a.max(b));
    let mut slot_edges: Vec<BTreeSet<EdgeId>> = vec![BTreeSet::new(); t + 1];
    for (r, round) in rounds.iter().enumerate() {
        let slot = slot_of_round[r];
        if slot > d {
            continue;
        }
        for &(a, b) in round {
            if slot == 1 && (a, b) == (0, 1) {
                continue;
            }
            if slot == 2 && (a, b) == (0, 2) {
                continue;
            }
            g.add_edge(edge_id(a, b), format!("v{a}"), format!("v{b}")).unwrap();
            slot_edges[slot].insert(edge_id(a, b).into());
        }
    }
    g.add_edge(edge_id(1, 2), "v1", "v2").unwrap();

    let witness: Vec<EdgeSubset> = (3..=d)
        .map(|slot| EdgeSubset { role: SubsetRole::Matching, edges: slot_edges[slot].clone() })
        .collect();

    // Shape checks promised by the construction.
    assert_eq!(g.degree(&"v0".into()).unwrap().degree(), d - 2);
    for i in 1..n {
        assert_eq!(g.degree(&format!("v{i}").into()).unwrap().degree(), d);
    }
    assert_eq!(witness.len(), d - 2);
    let mut seen = BTreeSet::new();
    for m in &witness {
        assert!(m.is_perfect_matching(&g));
        for e in &m.edges {
            assert!(seen.insert(e.clone()), "witness matchings overlap");
        }
    }

    let mut artifact = ReductionArtifact::new(
        g,
        format!(
            "vertex v0 has degree {}, all others degree {d}, and the witness lists {} pairwise \
             disjoint perfect matchings",
            d - 2,
            d - 2
        ),
    );
    artifact.annotate("v0", "x (low-degree attachment vertex)");
    artifact.annotate("v1", "y (endpoint of the replacement edge)");
    artifact.annotate("v2", "z (endpoint of the replacement edge)");
    for i in 3..n {
        artifact.annotate(format!("v{i}"), format!("clique vertex {i}"));
    }
    artifact.witness = Some(crate::decide::Witness::EdgeSets(witness));
    artifact.assert_fully_annotated();
    Ok(artifact)
}

/// Degree-padding reduction: two copies of a simple `(k+1)`-regular graph,
/// each pair of clone vertices joined through `d - k - 1` length-two paths
/// whose middle vertices are the low-degree vertices of private copies of
/// the auxiliary gadget. The result is `d`-regular and simple, and contains
/// `k` pairwise disjoint perfect matchings exactly when the source is
/// `(k+1)`-edge-colorable: the auxiliary copies have even order, so no
/// perfect matching can use the connector edges.
pub fn build_onevertex_instance(
    g: &Graph,
    k: usize,
    d: usize,
) -> Result<ReductionArtifact, GadgetError> {
    if k < 2 {
        return Err(GadgetError::BadParameters(format!("need k >= 2, got {k}")));
    }
    if d < k + 2 {
        return Err(GadgetError::BadParameters(format!("need d >= k + 2, got d={d}, k={k}")));
    }
    if !g.is_simple() {
        return Err(GadgetError::BadSource("source must be simple".into()));
    }
    if g.regular_degree() != Some(k + 1) {
        return Err(GadgetError::BadSource(format!("source must be {}-regular", k + 1)));
    }

    let aux = build_matchings_gadget(d)?;
    let aux_graph = &aux.instance;
    let copies = d - k - 1;

    let mut out = Graph::new();
    let mut artifact_annotations: Vec<(String, String)> = Vec::new();
    for (side, tag) in [("a", "copy-1"), ("b", "copy-2")] {
        for v in g.vertices() {
            out.add_vertex(format!("{side}.{v}")).unwrap();
            artifact_annotations.push((format!("{side}.{v}"), format!("{tag} of source vertex {v}")));
        }
        for (e, u, v) in g.ordinary_edges() {
            out.add_edge(format!("{side}.{e}"), format!("{side}.{u}"), format!("{side}.{v}"))
                .unwrap();
        }
    }
    for u in g.vertices() {
        for i in 1..=copies {
            let prefix = format!("h.{u}.{i}");
            for w in aux_graph.vertices() {
                out.add_vertex(format!("{prefix}.{w}")).unwrap();
                let role = if w.as_str() == "v0" {
                    format!("middle vertex x for ({u},{i})")
                } else {
                    format!("gadget ({u},{i}) inner {w}")
                };
                artifact_annotations.push((format!("{prefix}.{w}"), role));
            }
            for (e, a, b) in aux_graph.ordinary_edges() {
                out.add_edge(format!("{prefix}.{e}"), format!("{prefix}.{a}"), format!("{prefix}.{b}"))
                    .unwrap();
            }
            out.add_edge(format!("ca.{u}.{i}"), format!("a.{u}"), format!("{prefix}.v0")).unwrap();
            out.add_edge(format!("cb.{u}.{i}"), format!("b.{u}"), format!("{prefix}.v0")).unwrap();
        }
    }

    let n = g.vertex_count();
    let t_plus_1 = aux_graph.vertex_count();
    assert_eq!(out.vertex_count(), 2 * n + n * copies * t_plus_1);
    assert_eq!(out.regular_degree(), Some(d));
    assert!(out.is_simple());

    let mut artifact = ReductionArtifact::new(
        out,
        format!(
            "contains {k} pairwise disjoint perfect matchings iff the source graph is \
             {}-edge-colorable",
            k + 1
        ),
    );
    for (v, label) in artifact_annotations {
        artifact.annotate(v, label);
    }
    artifact.assert_fully_annotated();
    Ok(artifact)
}
