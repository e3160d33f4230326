//! Cover maps and their verification.
//!
//! A [`CoverMap`] is a candidate covering projection: a vertex map together
//! with an edge map. [`verify_cover`] checks the eight defining conditions of
//! a covering projection and reports *all* violations instead of failing
//! fast, which keeps gadget debugging tractable. [`is_degree_obedient`]
//! checks the three local counting conditions that any covering projection's
//! vertex map necessarily satisfies.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, Incidence, VertexId};

/// A pair of mappings: vertices of the source onto vertices of the target and
/// edges of the source onto edges of the target.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CoverMap {
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
}

/// Errors that make a map unverifiable, as opposed to verifiably wrong.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("vertex `{0}` of the source has no image")]
    MissingVertexImage(VertexId),
    #[error("edge `{0}` of the source has no image")]
    MissingEdgeImage(EdgeId),
    #[error("map references unknown source vertex `{0}`")]
    UnknownSourceVertex(VertexId),
    #[error("map references unknown source edge `{0}`")]
    UnknownSourceEdge(EdgeId),
    #[error("image vertex `{0}` does not exist in the target")]
    UnknownTargetVertex(VertexId),
    #[error("image edge `{0}` does not exist in the target")]
    UnknownTargetEdge(EdgeId),
    #[error("map failed verification; fold number undefined")]
    NotACover,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// One failed condition, identified by its index 1..=8.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub condition: u8,
    /// Offending edge or vertex id.
    pub subject: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {} at `{}`: {}", self.condition, self.subject, self.message)
    }
}

/// Outcome of [`verify_cover`]: `ok` holds exactly when `violations` is empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl CoverMap {
    pub fn new() -> Self {
        CoverMap::default()
    }

    pub fn map_vertex(&mut self, from: impl Into<VertexId>, to: impl Into<VertexId>) {
        self.vertex_map.insert(from.into(), to.into());
    }

    pub fn map_edge(&mut self, from: impl Into<EdgeId>, to: impl Into<EdgeId>) {
        self.edge_map.insert(from.into(), to.into());
    }

    /// The identity cover of a graph onto itself.
    pub fn identity(g: &Graph) -> CoverMap {
        CoverMap {
            vertex_map: g.vertices().map(|v| (v.clone(), v.clone())).collect(),
            edge_map: g.edges().map(|(e, _)| (e.clone(), e.clone())).collect(),
        }
    }

    /// Parses the text format, one mapping per line:
    ///
    /// ```text
    /// m v <source-vertex> <target-vertex>
    /// m e <source-edge> <target-edge>
    /// ```
    pub fn parse(text: &str) -> Result<CoverMap, CoverError> {
        let mut map = CoverMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            match toks.as_slice() {
                ["m", "v", from, to] => map.map_vertex(*from, *to),
                ["m", "e", from, to] => map.map_edge(*from, *to),
                _ => {
                    return Err(CoverError::Parse {
                        line,
                        msg: format!("expected `m v <id> <id>` or `m e <id> <id>`, got `{content}`"),
                    })
                }
            }
        }
        Ok(map)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (from, to) in &self.vertex_map {
            out.push_str(&format!("m v {from} {to}\n"));
        }
        for (from, to) in &self.edge_map {
            out.push_str(&format!("m e {from} {to}\n"));
        }
        out
    }
}

/// Checks totality of the map and existence of every referenced id. These are
/// errors distinct from a failed verification report.
fn check_totality(g: &Graph, h: &Graph, f: &CoverMap) -> Result<(), CoverError> {
    for v in g.vertices() {
        match f.vertex_map.get(v) {
            None => return Err(CoverError::MissingVertexImage(v.clone())),
            Some(img) if !h.has_vertex(img) => {
                return Err(CoverError::UnknownTargetVertex(img.clone()))
            }
            _ => {}
        }
    }
    for v in f.vertex_map.keys() {
        if !g.has_vertex(v) {
            return Err(CoverError::UnknownSourceVertex(v.clone()));
        }
    }
    for (e, _) in g.edges() {
        match f.edge_map.get(e) {
            None => return Err(CoverError::MissingEdgeImage(e.clone())),
            Some(img) if h.incidence(img).is_none() => {
                return Err(CoverError::UnknownTargetEdge(img.clone()))
            }
            _ => {}
        }
    }
    for e in f.edge_map.keys() {
        if g.incidence(e).is_none() {
            return Err(CoverError::UnknownSourceEdge(e.clone()));
        }
    }
    Ok(())
}

/// Verifies the eight conditions of a covering projection from `g` to `h`.
///
/// 1. loops map to loops;
/// 2. semi-edges map to semi-edges;
/// 3. the image of a loop or semi-edge sits at the image of its vertex;
/// 4. an ordinary edge mapped onto a loop or semi-edge has both endpoint
///    images equal to that vertex;
/// 5. an ordinary edge mapped onto an ordinary edge has endpoint images equal
///    to the image edge's endpoints;
/// 6. the preimage of a loop is a disjoint union of loops and cycles spanning
///    its fibre (every fibre vertex carries exactly two incidences, a loop
///    counting two);
/// 7. the preimage of a semi-edge is a disjoint union of ordinary edges and
///    semi-edges spanning its fibre exactly once each;
/// 8. the preimage of an ordinary edge is a perfect matching spanning the two
///    endpoint fibres.
pub fn verify_cover(g: &Graph, h: &Graph, f: &CoverMap) -> Result<VerifyReport, CoverError> {
    check_totality(g, h, f)?;
    let mut violations = Vec::new();
    let mut violate = |condition: u8, subject: &dyn fmt::Display, message: String| {
        violations.push(Violation { condition, subject: subject.to_string(), message });
    };

    // Conditions 1-5, edge by edge.
    for (e, inc) in g.edges() {
        let img = &f.edge_map[e];
        let img_inc = h.incidence(img).unwrap();
        match inc {
            Incidence::Loop(u) => {
                if !matches!(img_inc, Incidence::Loop(_)) {
                    violate(1, e, format!("loop maps to non-loop `{img}`"));
                } else if let Incidence::Loop(x) = img_inc {
                    if f.vertex_map[u] != *x {
                        violate(3, e, format!("image loop sits at `{x}`, vertex image is `{}`", f.vertex_map[u]));
                    }
                }
            }
            Incidence::Semi(u) => {
                if !matches!(img_inc, Incidence::Semi(_)) {
                    violate(2, e, format!("semi-edge maps to non-semi-edge `{img}`"));
                } else if let Incidence::Semi(x) = img_inc {
                    if f.vertex_map[u] != *x {
                        violate(3, e, format!("image semi-edge sits at `{x}`, vertex image is `{}`", f.vertex_map[u]));
                    }
                }
            }
            Incidence::Between(u, v) => {
                let (fu, fv) = (&f.vertex_map[u], &f.vertex_map[v]);
                match img_inc {
                    Incidence::Semi(x) | Incidence::Loop(x) => {
                        if fu != x || fv != x {
                            violate(4, e, format!(
                                "edge maps into vertex `{x}` but endpoint images are `{fu}`, `{fv}`"
                            ));
                        }
                    }
                    Incidence::Between(x, y) => {
                        let matches_pair = (fu == x && fv == y) || (fu == y && fv == x);
                        if !matches_pair {
                            violate(5, e, format!(
                                "edge maps onto `{x}`-`{y}` but endpoint images are `{fu}`, `{fv}`"
                            ));
                        }
                    }
                }
            }
        }
    }

    // Fibres of target vertices.
    let mut fibre: BTreeMap<&VertexId, Vec<&VertexId>> = BTreeMap::new();
    for x in h.vertices() {
        fibre.insert(x, Vec::new());
    }
    for (v, img) in &f.vertex_map {
        fibre.get_mut(img).unwrap().push(v);
    }
    // Preimages of target edges.
    let mut preimage: BTreeMap<&EdgeId, Vec<&EdgeId>> = BTreeMap::new();
    for (e, _) in h.edges() {
        preimage.insert(e, Vec::new());
    }
    for (e, img) in &f.edge_map {
        preimage.get_mut(img).unwrap().push(e);
    }

    // Conditions 6-8: local incidence counts within fibres. A preimage
    // element whose endpoints land in the wrong fibre has already been
    // reported by conditions 3-5, so here each vertex only counts elements
    // that genuinely touch it.
    for (he, hinc) in h.edges() {
        let pre = &preimage[he];
        match hinc {
            Incidence::Loop(x) => {
                for &u in &fibre[x] {
                    let mut weight = 0usize;
                    for &e in pre {
                        match g.incidence(e).unwrap() {
                            Incidence::Loop(w) if w == u => weight += 2,
                            Incidence::Between(a, b) if a == u || b == u => weight += 1,
                            _ => {}
                        }
                    }
                    if weight != 2 {
                        violate(6, he, format!(
                            "fibre vertex `{u}` carries {weight} incidences of the loop preimage, expected 2"
                        ));
                    }
                }
            }
            Incidence::Semi(x) => {
                for &u in &fibre[x] {
                    let mut count = 0usize;
                    for &e in pre {
                        match g.incidence(e).unwrap() {
                            Incidence::Semi(w) if w == u => count += 1,
                            Incidence::Between(a, b) if a == u || b == u => count += 1,
                            _ => {}
                        }
                    }
                    if count != 1 {
                        violate(7, he, format!(
                            "fibre vertex `{u}` carries {count} elements of the semi-edge preimage, expected 1"
                        ));
                    }
                }
            }
            Incidence::Between(x, y) => {
                for &u in fibre[x].iter().chain(fibre[y].iter()) {
                    let mut count = 0usize;
                    for &e in pre {
                        if let Incidence::Between(a, b) = g.incidence(e).unwrap() {
                            if a == u || b == u {
                                count += 1;
                            }
                        }
                    }
                    if count != 1 {
                        violate(8, he, format!(
                            "fibre vertex `{u}` is covered {count} times by the edge preimage, expected 1"
                        ));
                    }
                }
            }
        }
    }

    Ok(VerifyReport { violations })
}

/// Checks the three degree-obedience conditions of a vertex map:
///
/// 1. for distinct target vertices `u != v`, every `x` in the fibre of `u`
///    sends exactly as many ordinary edges into the fibre of `v` as there are
///    ordinary edges between `u` and `v`;
/// 2. for every target vertex `u` and fibre vertex `x`, the semi-edge/loop
///    weight `semi(u) + 2 loops(u)` equals `semi(x) + 2 loops(x) + r`, where
///    `r` counts ordinary edges from `x` into its own fibre;
/// 3. `x` carries at most as many semi-edges as `u`.
///
/// Errors when `f_v` is partial or references unknown ids.
pub fn is_degree_obedient(
    g: &Graph,
    h: &Graph,
    f_v: &BTreeMap<VertexId, VertexId>,
) -> Result<bool, CoverError> {
    for v in g.vertices() {
        match f_v.get(v) {
            None => return Err(CoverError::MissingVertexImage(v.clone())),
            Some(img) if !h.has_vertex(img) => {
                return Err(CoverError::UnknownTargetVertex(img.clone()))
            }
            _ => {}
        }
    }
    for v in f_v.keys() {
        if !g.has_vertex(v) {
            return Err(CoverError::UnknownSourceVertex(v.clone()));
        }
    }

    // Multiplicity of ordinary target edges per vertex pair, and per-vertex
    // semi/loop counts of the target.
    let mut bars: BTreeMap<(&VertexId, &VertexId), usize> = BTreeMap::new();
    for (_, x, y) in h.ordinary_edges() {
        *bars.entry((x, y)).or_default() += 1;
    }
    let bar_count = |x: &VertexId, y: &VertexId| -> usize {
        let key = if x < y { (x, y) } else { (y, x) };
        bars.get(&(key.0, key.1)).copied().unwrap_or(0)
    };

    // Edges from each source vertex into each target fibre, with multiplicity.
    let mut to_fibre: BTreeMap<(&VertexId, &VertexId), usize> = BTreeMap::new();
    for (_, a, b) in g.ordinary_edges() {
        *to_fibre.entry((a, &f_v[b])).or_default() += 1;
        *to_fibre.entry((b, &f_v[a])).or_default() += 1;
    }

    for x in g.vertices() {
        let u = &f_v[x];
        let px = g.degree(x).unwrap();
        let pu = h.degree(u).unwrap();
        // Condition 3.
        if px.semi > pu.semi {
            return Ok(false);
        }
        // Condition 2: r is the number of edges from x into its own fibre.
        let r = to_fibre.get(&(x, u)).copied().unwrap_or(0);
        if pu.semi + 2 * pu.loops != px.semi + 2 * px.loops + r {
            return Ok(false);
        }
        // Condition 1 against every other target vertex.
        for v in h.vertices() {
            if v == u {
                continue;
            }
            let cross = to_fibre.get(&(x, v)).copied().unwrap_or(0);
            if cross != bar_count(u, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Fold number of a verified cover: the common fibre size. Errors if the map
/// does not verify; returns `None` if the fibres differ (possible only when
/// the target is disconnected).
pub fn fold_number(g: &Graph, h: &Graph, f: &CoverMap) -> Result<Option<usize>, CoverError> {
    let report = verify_cover(g, h, f)?;
    if !report.ok() {
        return Err(CoverError::NotACover);
    }
    let mut sizes: BTreeMap<&VertexId, usize> = h.vertices().map(|v| (v, 0)).collect();
    for img in f.vertex_map.values() {
        *sizes.get_mut(img).unwrap() += 1;
    }
    let mut it = sizes.values();
    match it.next() {
        None => Ok(None),
        Some(&first) => {
            if it.all(|&s| s == first) {
                Ok(Some(first))
            } else {
                Ok(None)
            }
        }
    }
}

/// The set of source vertices mapping onto `x`.
pub fn fibre_of<'a>(f_v: &'a BTreeMap<VertexId, VertexId>, x: &VertexId) -> BTreeSet<&'a VertexId> {
    f_v.iter().filter(|(_, img)| *img == x).map(|(v, _)| v).collect()
}
