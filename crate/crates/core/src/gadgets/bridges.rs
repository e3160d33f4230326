//! Bridge gadgets for coloring reductions and the instance builder that
//! glues them between two copies of a source graph.

use std::collections::{BTreeMap, VecDeque};

use crate::decide::{
    check_bc_coloring, check_frame_coloring, decide_bc_coloring, full_degree_frame, ColorTag,
    TwoColoring, Witness,
};
use crate::graph::{Graph, VertexId};

use super::{GadgetError, ReductionArtifact};

fn coloring(pairs: impl IntoIterator<Item = (VertexId, ColorTag)>, own: usize, other: usize) -> TwoColoring {
    TwoColoring { colors: pairs.into_iter().collect(), own, other }
}

/// General bridge for `b >= c + 2`, `c >= 2`: two complete bipartite blocks
/// `A x B` and `C x D` of side `b`, `c` disjoint matchings from `A` to `C`
/// and from `B` to `D`, the edge `a1 b1` replaced by pendant connectors `x`
/// at `a1` and `t` at `b1`. The 4b inner vertices have degree `b + c` (a
/// count divisible by four, which the forcing argument needs), the
/// connectors degree 1. In every coloring that is exact on the inner
/// vertices, the connector `x`, its neighbor `y = a1`, the vertex `s = b1`
/// and the connector `t` are either all one color, or split
/// `x,s` versus `y,t`; the witness colors `A, B, x, t` one way and `C, D`
/// the other, putting all four in one class.
pub fn build_bridge_general(b: usize, c: usize) -> Result<ReductionArtifact, GadgetError> {
    if c < 2 || b < c + 2 {
        return Err(GadgetError::BadParameters(format!(
            "need c >= 2 and b >= c + 2, got b={b}, c={c}"
        )));
    }
    let mut g = Graph::new();
    for part in ["a", "b", "c", "d"] {
        for i in 1..=b {
            g.add_vertex(format!("{part}{i}")).unwrap();
        }
    }
    g.add_vertex("x").unwrap();
    g.add_vertex("t").unwrap();
    for i in 1..=b {
        for j in 1..=b {
            if i == 1 && j == 1 {
                continue; // replaced by the two pendant edges
            }
            g.add_edge(format!("a{i}~b{j}"), format!("a{i}"), format!("b{j}")).unwrap();
        }
    }
    for i in 1..=b {
        for j in 1..=b {
            g.add_edge(format!("c{i}~d{j}"), format!("c{i}"), format!("d{j}")).unwrap();
        }
    }
    for o in 0..c {
        for i in 1..=b {
            let j = (i - 1 + o) % b + 1;
            g.add_edge(format!("a{i}~c{j}"), format!("a{i}"), format!("c{j}")).unwrap();
            g.add_edge(format!("b{i}~d{j}"), format!("b{i}"), format!("d{j}")).unwrap();
        }
    }
    g.add_edge("x~a1", "x", "a1").unwrap();
    g.add_edge("t~b1", "t", "b1").unwrap();

    for part in ["a", "b", "c", "d"] {
        for i in 1..=b {
            assert_eq!(g.degree(&format!("{part}{i}").into()).unwrap().degree(), b + c);
        }
    }
    assert!(g.is_bipartite());

    let mut colors: Vec<(VertexId, ColorTag)> = Vec::new();
    for i in 1..=b {
        colors.push((format!("a{i}").into(), ColorTag::Red));
        colors.push((format!("b{i}").into(), ColorTag::Red));
        colors.push((format!("c{i}").into(), ColorTag::Blue));
        colors.push((format!("d{i}").into(), ColorTag::Blue));
    }
    colors.push(("x".into(), ColorTag::Red));
    colors.push(("t".into(), ColorTag::Red));
    let witness = coloring(colors, b, c);
    let frame = full_degree_frame(&g, b, c);
    assert_eq!(frame.len(), 4 * b);
    assert_eq!(check_frame_coloring(&g, &witness, &frame), Ok(true));

    let mut artifact = ReductionArtifact::new(
        g,
        format!(
            "in every ({b},{c})-coloring exact on the inner vertices, x, a1, b1, t are \
             monochromatic or split as {{x,b1}} vs {{a1,t}}; the witness makes them monochromatic"
        ),
    );
    artifact.annotate("x", "connector x");
    artifact.annotate("t", "connector t");
    artifact.annotate("a1", "y (neighbor of connector x)");
    artifact.annotate("b1", "s (neighbor of connector t)");
    for i in 1..=b {
        if i > 1 {
            artifact.annotate(format!("a{i}"), format!("A part {i}"));
            artifact.annotate(format!("b{i}"), format!("B part {i}"));
        }
        artifact.annotate(format!("c{i}"), format!("C part {i}"));
        artifact.annotate(format!("d{i}"), format!("D part {i}"));
    }
    artifact.witness = Some(Witness::Coloring(witness));
    artifact.assert_fully_annotated();
    Ok(artifact)
}

/// Explicit bridge for the `(c+1, c)` case, `c >= 2`. Inner families
/// `r_i, s_i, t_i, w_i` for `i = 1..=c+1`: connectors `x` adjacent to
/// `r_1..r_c` and `y` adjacent to `t_1..t_c`; all `r_i t_j` except `i = j
/// <= c`; all `s_i w_j`; all `r_i s_j` and `t_i w_j` except `i = j`. The
/// `4(c+1)` inner vertices have degree `2c + 1`, the connectors degree `c`,
/// the graph is bipartite and the connectors sit at odd distance. In every
/// coloring exact on the inner vertices, `x`, `y` and all `r_i`, `t_i` for
/// `i <= c` share one color; the witness colors all `r`, `t`, `x`, `y` red
/// and all `s`, `w` blue.
pub fn build_bridge_cplus1(c: usize) -> Result<ReductionArtifact, GadgetError> {
    if c < 2 {
        return Err(GadgetError::BadParameters(format!("need c >= 2, got {c}")));
    }
    let n = c + 1;
    let mut g = Graph::new();
    g.add_vertex("x").unwrap();
    g.add_vertex("y").unwrap();
    for i in 1..=n {
        for fam in ["r", "s", "t", "w"] {
            g.add_vertex(format!("{fam}{i}")).unwrap();
        }
    }
    for i in 1..=c {
        g.add_edge(format!("x~r{i}"), "x", format!("r{i}")).unwrap();
        g.add_edge(format!("y~t{i}"), "y", format!("t{i}")).unwrap();
    }
    for i in 1..=n {
        for j in 1..=n {
            if !(i == j && i <= c) {
                g.add_edge(format!("r{i}~t{j}"), format!("r{i}"), format!("t{j}")).unwrap();
            }
            g.add_edge(format!("s{i}~w{j}"), format!("s{i}"), format!("w{j}")).unwrap();
            if i != j {
                g.add_edge(format!("r{i}~s{j}"), format!("r{i}"), format!("s{j}")).unwrap();
                g.add_edge(format!("t{i}~w{j}"), format!("t{i}"), format!("w{j}")).unwrap();
            }
        }
    }

    assert_eq!(g.vertex_count(), 4 * n + 2);
    for i in 1..=n {
        for fam in ["r", "s", "t", "w"] {
            assert_eq!(g.degree(&format!("{fam}{i}").into()).unwrap().degree(), 2 * c + 1);
        }
    }
    for conn in ["x", "y"] {
        assert_eq!(g.degree(&conn.into()).unwrap().degree(), c);
    }
    assert!(g.is_bipartite());
    assert!(distance(&g, &"x".into(), &"y".into()).expect("connected") % 2 == 1);

    let mut colors: Vec<(VertexId, ColorTag)> = vec![
        ("x".into(), ColorTag::Red),
        ("y".into(), ColorTag::Red),
    ];
    for i in 1..=n {
        colors.push((format!("r{i}").into(), ColorTag::Red));
        colors.push((format!("t{i}").into(), ColorTag::Red));
        colors.push((format!("s{i}").into(), ColorTag::Blue));
        colors.push((format!("w{i}").into(), ColorTag::Blue));
    }
    let witness = coloring(colors, c + 1, c);
    let frame = full_degree_frame(&g, c + 1, c);
    assert_eq!(frame.len(), 4 * n);
    assert_eq!(check_frame_coloring(&g, &witness, &frame), Ok(true));

    let mut artifact = ReductionArtifact::new(
        g,
        format!(
            "in every ({},{c})-coloring exact on the inner vertices, x, y and all r_i, t_i for \
             i <= {c} share one color",
            c + 1
        ),
    );
    artifact.annotate("x", "connector x");
    artifact.annotate("y", "connector y");
    for i in 1..=n {
        let special = if i == n { " (special index)" } else { "" };
        artifact.annotate(format!("r{i}"), format!("r family {i}{special}"));
        artifact.annotate(format!("s{i}"), format!("s family {i}{special}"));
        artifact.annotate(format!("t{i}"), format!("t family {i}{special}"));
        artifact.annotate(format!("w{i}"), format!("w family {i}{special}"));
    }
    artifact.witness = Some(Witness::Coloring(witness));
    artifact.assert_fully_annotated();
    Ok(artifact)
}

fn distance(g: &Graph, from: &VertexId, to: &VertexId) -> Option<usize> {
    let mut dist: BTreeMap<&VertexId, usize> = BTreeMap::new();
    dist.insert(from, 0);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            return Some(dist[u]);
        }
        let d = dist[u];
        for (_, a, bb) in g.ordinary_edges() {
            let w = if a == u {
                bb
            } else if bb == u {
                a
            } else {
                continue;
            };
            if !dist.contains_key(w) {
                dist.insert(w, d + 1);
                queue.push_back(w);
            }
        }
    }
    None
}

/// Color-replication gadget for `(b,1)`-colorings, `b >= 3`: two complete
/// bipartite blocks `A1 x B1` and `A2 x B2` of side `b` joined by matchings
/// `A1-A2` and `B1-B2`, degree-one vertices `u` at `u' = a1` and `v` at
/// `v' = b1`, and the edge `a1 b1` removed. In any coloring exact on the
/// `4b` full-degree vertices, `u`, `v`, `u'`, `v'` all receive the same
/// color; the witness colors `A2, B2` red and everything else blue.
pub fn build_f_gadget(b: usize) -> Result<ReductionArtifact, GadgetError> {
    if b < 3 {
        return Err(GadgetError::BadParameters(format!("need b >= 3, got {b}")));
    }
    let mut g = Graph::new();
    for part in ["a", "b", "c", "d"] {
        for i in 1..=b {
            g.add_vertex(format!("{part}{i}")).unwrap();
        }
    }
    g.add_vertex("u").unwrap();
    g.add_vertex("v").unwrap();
    for i in 1..=b {
        for j in 1..=b {
            if i == 1 && j == 1 {
                continue; // the removed edge u'v'
            }
            g.add_edge(format!("a{i}~b{j}"), format!("a{i}"), format!("b{j}")).unwrap();
        }
    }
    for i in 1..=b {
        for j in 1..=b {
            g.add_edge(format!("c{i}~d{j}"), format!("c{i}"), format!("d{j}")).unwrap();
        }
    }
    for i in 1..=b {
        g.add_edge(format!("a{i}~c{i}"), format!("a{i}"), format!("c{i}")).unwrap();
        g.add_edge(format!("b{i}~d{i}"), format!("b{i}"), format!("d{i}")).unwrap();
    }
    g.add_edge("u~a1", "u", "a1").unwrap();
    g.add_edge("v~b1", "v", "b1").unwrap();

    assert_eq!(g.vertex_count(), 4 * b + 2);
    for part in ["a", "b", "c", "d"] {
        for i in 1..=b {
            assert_eq!(g.degree(&format!("{part}{i}").into()).unwrap().degree(), b + 1);
        }
    }

    let mut colors: Vec<(VertexId, ColorTag)> = vec![
        ("u".into(), ColorTag::Blue),
        ("v".into(), ColorTag::Blue),
    ];
    for i in 1..=b {
        colors.push((format!("a{i}").into(), ColorTag::Blue));
        colors.push((format!("b{i}").into(), ColorTag::Blue));
        colors.push((format!("c{i}").into(), ColorTag::Red));
        colors.push((format!("d{i}").into(), ColorTag::Red));
    }
    let witness = coloring(colors, b, 1);
    let frame = full_degree_frame(&g, b, 1);
    assert_eq!(frame.len(), 4 * b);
    assert_eq!(check_frame_coloring(&g, &witness, &frame), Ok(true));

    let mut artifact = ReductionArtifact::new(
        g,
        format!(
            "in every ({b},1)-coloring exact on the full-degree vertices, u, v, a1, b1 receive \
             the same color"
        ),
    );
    artifact.annotate("u", "attachment u");
    artifact.annotate("v", "attachment v");
    artifact.annotate("a1", "u' (neighbor of u)");
    artifact.annotate("b1", "v' (neighbor of v)");
    for i in 1..=b {
        if i > 1 {
            artifact.annotate(format!("a{i}"), format!("A1 part {i}"));
            artifact.annotate(format!("b{i}"), format!("B1 part {i}"));
        }
        artifact.annotate(format!("c{i}"), format!("A2 part {i}"));
        artifact.annotate(format!("d{i}"), format!("B2 part {i}"));
    }
    artifact.witness = Some(Witness::Coloring(witness));
    artifact.assert_fully_annotated();
    Ok(artifact)
}

/// Full coloring reduction: two copies of a simple bipartite `(1+c)`-regular
/// source joined, for every source vertex, by `b - 1` private copies of the
/// general bridge whose connectors are identified with the two clones. The
/// result is `(b+c)`-regular and has a `(b,c)`-coloring exactly when the
/// source has a `(1,c)`-coloring. When the source is colorable the witness
/// lifts its coloring: both copies keep it and each bridge takes the
/// monochromatic pattern in the clone's color.
pub fn build_bb1_instance(g: &Graph, b: usize, c: usize) -> Result<ReductionArtifact, GadgetError> {
    let bridge = build_bridge_general(b, c)?;
    if !g.is_simple() {
        return Err(GadgetError::BadSource("source must be simple".into()));
    }
    if !g.is_bipartite() {
        return Err(GadgetError::BadSource("source must be bipartite".into()));
    }
    if g.regular_degree() != Some(1 + c) {
        return Err(GadgetError::BadSource(format!("source must be {}-regular", 1 + c)));
    }

    let mut out = Graph::new();
    let mut artifact = ReductionArtifact::new(
        Graph::new(),
        format!("has a ({b},{c})-coloring iff the source has a (1,{c})-coloring"),
    );
    for (side, tag) in [("a", "copy-1"), ("b", "copy-2")] {
        for v in g.vertices() {
            out.add_vertex(format!("{side}.{v}")).unwrap();
            artifact.annotate(format!("{side}.{v}"), format!("{tag} of source vertex {v}"));
        }
        for (e, u, v) in g.ordinary_edges() {
            out.add_edge(format!("{side}.{e}"), format!("{side}.{u}"), format!("{side}.{v}"))
                .unwrap();
        }
    }
    let inner: Vec<&VertexId> = bridge
        .instance
        .vertices()
        .filter(|v| !matches!(v.as_str(), "x" | "t"))
        .collect();
    for u in g.vertices() {
        for i in 1..=(b - 1) {
            let prefix = format!("h.{u}.{i}");
            for w in &inner {
                out.add_vertex(format!("{prefix}.{w}")).unwrap();
                artifact.annotate(format!("{prefix}.{w}"), format!("bridge ({u},{i}) {w}"));
            }
            for (e, p, q) in bridge.instance.ordinary_edges() {
                let rename = |z: &VertexId| match z.as_str() {
                    "x" => format!("a.{u}"),
                    "t" => format!("b.{u}"),
                    other => format!("{prefix}.{other}"),
                };
                out.add_edge(format!("{prefix}.{e}"), rename(p), rename(q)).unwrap();
            }
        }
    }

    let n = g.vertex_count();
    assert_eq!(out.vertex_count(), 2 * n + n * (b - 1) * 4 * b);
    assert_eq!(out.regular_degree(), Some(b + c));

    // Constructive witness when the source is colorable.
    let source_verdict = decide_bc_coloring(g, 1, c);
    if let Some(Witness::Coloring(src)) = source_verdict.witness {
        let mut colors: BTreeMap<VertexId, ColorTag> = BTreeMap::new();
        for (v, tag) in &src.colors {
            colors.insert(format!("a.{v}").into(), *tag);
            colors.insert(format!("b.{v}").into(), *tag);
        }
        for u in g.vertices() {
            let own = src.colors[u];
            for i in 1..=(b - 1) {
                let prefix = format!("h.{u}.{i}");
                for w in &inner {
                    let is_ab = matches!(w.as_str().as_bytes()[0], b'a' | b'b');
                    let tag = if is_ab { own } else { own.flipped() };
                    colors.insert(format!("{prefix}.{w}").into(), tag);
                }
            }
        }
        let lifted = TwoColoring { colors, own: b, other: c };
        assert_eq!(check_bc_coloring(&out, &lifted), Ok(true));
        artifact.witness = Some(Witness::Coloring(lifted));
    }

    artifact.instance = out;
    artifact.assert_fully_annotated();
    Ok(artifact)
}

#[cfg(test)]
mod tests_local {
    use super::*;
    use crate::families;

    #[test]
    fn bridge_general_shape() {
        let art = build_bridge_general(4, 2).unwrap();
        assert_eq!(art.instance.vertex_count(), 18);
        assert_eq!(art.instance.degree(&"x".into()).unwrap().degree(), 1);
        assert!(build_bridge_general(3, 2).is_err());
        assert!(build_bridge_general(4, 1).is_err());
        assert_eq!(
            art.instance.to_text(),
            build_bridge_general(4, 2).unwrap().instance.to_text()
        );
    }

    #[test]
    fn bridge_cplus1_shape() {
        let art = build_bridge_cplus1(3).unwrap();
        assert_eq!(art.instance.vertex_count(), 18);
        assert_eq!(art.instance.degree(&"r1".into()).unwrap().degree(), 7);
        assert_eq!(art.instance.degree(&"x".into()).unwrap().degree(), 3);
        assert!(build_bridge_cplus1(1).is_err());
        let c2 = build_bridge_cplus1(2).unwrap();
        assert_eq!(c2.instance.vertex_count(), 14);
    }

    #[test]
    fn f_gadget_shape() {
        let art = build_f_gadget(3).unwrap();
        assert_eq!(art.instance.vertex_count(), 14);
        assert_eq!(art.instance.degree(&"u".into()).unwrap().degree(), 1);
        assert!(build_f_gadget(2).is_err());
    }

    #[test]
    fn bb1_instance_counts_and_witness() {
        // The cube has a (1,2)-coloring, so the lifted witness must check
        // out on the full instance.
        let g = families::cube();
        let art = build_bb1_instance(&g, 4, 2).unwrap();
        assert_eq!(art.instance.vertex_count(), 2 * 8 + 8 * 3 * 16);
        assert_eq!(art.instance.regular_degree(), Some(6));
        assert!(art.witness.is_some());

        assert!(build_bb1_instance(&families::cycle(6), 4, 2).is_err());
    }
}
