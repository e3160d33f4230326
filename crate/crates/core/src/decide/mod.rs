//! Decision procedures: one- and two-vertex target deciders, the bipartite
//! extension algorithm, and two-colorings with prescribed neighborhood
//! counts.
//!
//! A `(b,c)`-coloring is a red/blue vertex coloring in which every vertex has
//! exactly `b` neighbors of its own color and `c` of the other color.
//! Neighbors count with edge multiplicity, a loop adds two to the own-color
//! count, semi-edges add nothing. For regular two-vertex targets these
//! colorings are exactly the vertex maps of covers restricted to bipartite
//! semi-edge-free inputs, which is what makes them worth their own machinery.

pub(crate) mod bc;
mod extend;
mod onevertex;
mod twovertex;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::cover::{CoverError, CoverMap};
use crate::factor::EdgeSubset;
use crate::graph::{Graph, GraphError, VertexId};

pub use extend::extend_obedient;
pub use onevertex::{decide_f, decide_f_budgeted};
pub use twovertex::{decide_w, decide_w_budgeted};

/// Target of a cover decision: the one-vertex graph `F(b,c)` with `b`
/// semi-edges and `c` loops, the two-vertex graph `W(k,m,l,p,q)` with `k`
/// semi-edges and `m` loops on the blue vertex, `q` semi-edges and `p` loops
/// on the red one and `l` connecting bars, or an arbitrary graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TargetParams {
    OneVertex { semi: usize, loops: usize },
    TwoVertex { k: usize, m: usize, l: usize, p: usize, q: usize },
    Arbitrary(Graph),
}

impl TargetParams {
    /// Parses `F:b,c` or `W:k,m,l,p,q`. File targets are the caller's job.
    pub fn parse(spec: &str) -> Result<TargetParams, DecideError> {
        let bad = || DecideError::BadTargetSpec(spec.to_owned());
        let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> =
            rest.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        match (kind, nums.as_slice()) {
            ("F", [b, c]) => Ok(TargetParams::OneVertex { semi: *b, loops: *c }),
            ("W", [k, m, l, p, q]) => {
                if *l == 0 {
                    return Err(DecideError::NoBars);
                }
                Ok(TargetParams::TwoVertex { k: *k, m: *m, l: *l, p: *p, q: *q })
            }
            _ => Err(bad()),
        }
    }

    /// Materializes the target graph. One-vertex targets use vertex `u` with
    /// semi-edges `s1..` and loops `l1..`; two-vertex targets use vertices
    /// `blue` and `red`, bars `bar1..` and per-vertex `blue.s1..`,
    /// `blue.l1..`, `red.s1..`, `red.l1..`.
    pub fn graph(&self) -> Graph {
        match self {
            TargetParams::OneVertex { semi, loops } => one_vertex_graph(*semi, *loops),
            TargetParams::TwoVertex { k, m, l, p, q } => two_vertex_graph(*k, *m, *l, *p, *q),
            TargetParams::Arbitrary(g) => g.clone(),
        }
    }
}

pub(crate) fn one_vertex_graph(semi: usize, loops: usize) -> Graph {
    let mut h = Graph::new();
    h.add_vertex("u").unwrap();
    for i in 1..=semi {
        h.add_semi_edge(format!("s{i}"), "u").unwrap();
    }
    for i in 1..=loops {
        h.add_loop(format!("l{i}"), "u").unwrap();
    }
    h
}

pub(crate) fn two_vertex_graph(k: usize, m: usize, l: usize, p: usize, q: usize) -> Graph {
    let mut h = Graph::new();
    h.add_vertex("blue").unwrap();
    h.add_vertex("red").unwrap();
    for i in 1..=l {
        h.add_edge(format!("bar{i}"), "blue", "red").unwrap();
    }
    for i in 1..=k {
        h.add_semi_edge(format!("blue.s{i}"), "blue").unwrap();
    }
    for i in 1..=m {
        h.add_loop(format!("blue.l{i}"), "blue").unwrap();
    }
    for i in 1..=q {
        h.add_semi_edge(format!("red.s{i}"), "red").unwrap();
    }
    for i in 1..=p {
        h.add_loop(format!("red.l{i}"), "red").unwrap();
    }
    h
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ColorTag {
    Red,
    Blue,
}

impl ColorTag {
    pub fn flipped(self) -> ColorTag {
        match self {
            ColorTag::Red => ColorTag::Blue,
            ColorTag::Blue => ColorTag::Red,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ColorTag::Red => "red",
            ColorTag::Blue => "blue",
        }
    }
}

/// A red/blue vertex assignment with its `(own, other)` neighborhood
/// contract.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoColoring {
    pub colors: BTreeMap<VertexId, ColorTag>,
    pub own: usize,
    pub other: usize,
}

impl TwoColoring {
    pub fn color_of(&self, v: &VertexId) -> Option<ColorTag> {
        self.colors.get(v).copied()
    }

    /// Lines `c <vertex-id> <red|blue>` in vertex order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, c) in &self.colors {
            out.push_str(&format!("c {v} {}\n", c.as_str()));
        }
        out
    }

    pub fn parse(text: &str, own: usize, other: usize) -> Result<TwoColoring, DecideError> {
        let mut colors = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            match toks.as_slice() {
                ["c", v, "red"] => colors.insert(VertexId::from(*v), ColorTag::Red),
                ["c", v, "blue"] => colors.insert(VertexId::from(*v), ColorTag::Blue),
                _ => {
                    return Err(DecideError::ParseColoring {
                        line,
                        msg: format!("expected `c <vertex> <red|blue>`, got `{content}`"),
                    })
                }
            };
        }
        Ok(TwoColoring { colors, own, other })
    }
}

/// Evidence attached to a yes answer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    Cover(CoverMap),
    Coloring(TwoColoring),
    EdgeSets(Vec<EdgeSubset>),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Answer {
    Yes,
    No,
}

/// Which route produced the verdict: a polynomial-time procedure or the
/// complete exact search.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    Polynomial,
    ExactFallback,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Polynomial => "polynomial",
            Method::ExactFallback => "exact-fallback",
        }
    }

    fn and(self, other: Method) -> Method {
        if self == Method::Polynomial && other == Method::Polynomial {
            Method::Polynomial
        } else {
            Method::ExactFallback
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub answer: Answer,
    pub witness: Option<Witness>,
    pub method: Method,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn no(method: Method) -> Verdict {
        Verdict { answer: Answer::No, witness: None, method }
    }

    pub fn yes(witness: Witness, method: Method) -> Verdict {
        Verdict { answer: Answer::Yes, witness: Some(witness), method }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let answer = match self.answer {
            Answer::Yes => "yes",
            Answer::No => "no",
        };
        write!(f, "{answer} method={}", self.method.as_str())
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("two-vertex targets need at least one bar")]
    NoBars,
    #[error("invalid target spec `{0}`")]
    BadTargetSpec(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph has semi-edges")]
    SemiEdges,
    #[error("vertex map is not degree-obedient")]
    NotObedient,
    #[error("coloring misses vertex `{0}`")]
    PartialColoring(VertexId),
    #[error("coloring names unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    #[error("input coloring is not a valid ({own},{other})-coloring")]
    InvalidColoring { own: usize, other: usize },
    #[error("not a bipartition of the graph")]
    InvalidBipartition,
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("coloring parse error on line {line}: {msg}")]
    ParseColoring { line: usize, msg: String },
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Weighted same/other-color neighbor counts of `v` under `col`: parallel
/// edges count with multiplicity, loops add two to the own side, semi-edges
/// add nothing. `None` when some neighbor is uncolored.
fn neighbor_counts(g: &Graph, col: &BTreeMap<VertexId, ColorTag>, v: &VertexId) -> Option<(usize, usize)> {
    let mine = *col.get(v)?;
    let mut own = 0;
    let mut other = 0;
    for (_, inc) in g.edges() {
        match inc {
            crate::graph::Incidence::Loop(u) if u == v => own += 2,
            crate::graph::Incidence::Between(a, b) if a == v || b == v => {
                let w = if a == v { b } else { a };
                if *col.get(w)? == mine {
                    own += 1;
                } else {
                    other += 1;
                }
            }
            _ => {}
        }
    }
    Some((own, other))
}

/// True when the coloring is total on `g` and every vertex sees exactly
/// `col.own` same-color and `col.other` other-color neighbors.
pub fn check_bc_coloring(g: &Graph, col: &TwoColoring) -> Result<bool, DecideError> {
    for v in col.colors.keys() {
        if !g.has_vertex(v) {
            return Err(DecideError::UnknownVertex(v.clone()));
        }
    }
    for v in g.vertices() {
        if !col.colors.contains_key(v) {
            return Err(DecideError::PartialColoring(v.clone()));
        }
    }
    for v in g.vertices() {
        let (own, other) = neighbor_counts(g, &col.colors, v).unwrap();
        if own != col.own || other != col.other {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Like [`check_bc_coloring`] but only vertices in `frame` must meet the
/// exact counts; the rest are unconstrained. Used for the partial colorings
/// the bridge gadget lemmas quantify over.
pub fn check_frame_coloring(
    g: &Graph,
    col: &TwoColoring,
    frame: &BTreeSet<VertexId>,
) -> Result<bool, DecideError> {
    for v in g.vertices() {
        if !col.colors.contains_key(v) {
            return Err(DecideError::PartialColoring(v.clone()));
        }
    }
    for v in frame {
        if !g.has_vertex(v) {
            return Err(DecideError::UnknownVertex(v.clone()));
        }
        let (own, other) = neighbor_counts(g, &col.colors, v).unwrap();
        if own != col.own || other != col.other {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The default frame: vertices whose weighted degree (loops twice,
/// semi-edges not at all) equals `b + c`, i.e. those that could meet the
/// exact constraint.
pub fn full_degree_frame(g: &Graph, b: usize, c: usize) -> BTreeSet<VertexId> {
    g.vertices()
        .filter(|v| {
            let p = g.degree(v).unwrap();
            p.ordinary + 2 * p.loops == b + c
        })
        .cloned()
        .collect()
}

/// Decides whether `g` admits a `(b,c)`-coloring by complete backtracking
/// with forced-move propagation. The witness, when present, passes
/// [`check_bc_coloring`].
pub fn decide_bc_coloring(g: &Graph, b: usize, c: usize) -> Verdict {
    let frame: BTreeSet<VertexId> = g.vertices().cloned().collect();
    let outcome = bc::search(g, b, c, &frame, bc::Mode::FindOne, &crate::oracle::SearchBudget::unlimited());
    match outcome {
        bc::Outcome::Complete(mut found) => match found.pop() {
            Some(coloring) => {
                debug_assert_eq!(check_bc_coloring(g, &coloring), Ok(true));
                Verdict::yes(Witness::Coloring(coloring), Method::ExactFallback)
            }
            None => Verdict::no(Method::ExactFallback),
        },
        bc::Outcome::Unknown => unreachable!("unlimited budget cannot be exhausted"),
    }
}

/// Swaps the colors on the second side of a bipartition, turning a valid
/// `(b,c)`-coloring into a valid `(c,b)`-coloring. Applied twice this is the
/// identity. Errors when the partition is not a bipartition of `g` or the
/// input coloring is invalid.
pub fn swap_side_colors(
    g: &Graph,
    part: &(BTreeSet<VertexId>, BTreeSet<VertexId>),
    col: &TwoColoring,
) -> Result<TwoColoring, DecideError> {
    let (a, b) = part;
    if a.intersection(b).next().is_some()
        || a.len() + b.len() != g.vertex_count()
        || !a.union(b).all(|v| g.has_vertex(v))
    {
        return Err(DecideError::InvalidBipartition);
    }
    if g.loops().next().is_some() {
        return Err(DecideError::InvalidBipartition);
    }
    for (_, u, v) in g.ordinary_edges() {
        if a.contains(u) == a.contains(v) {
            return Err(DecideError::InvalidBipartition);
        }
    }
    if !check_bc_coloring(g, col)? {
        return Err(DecideError::InvalidColoring { own: col.own, other: col.other });
    }
    let colors = col
        .colors
        .iter()
        .map(|(v, &tag)| (v.clone(), if b.contains(v) { tag.flipped() } else { tag }))
        .collect();
    let swapped = TwoColoring { colors, own: col.other, other: col.own };
    debug_assert_eq!(check_bc_coloring(g, &swapped), Ok(true));
    Ok(swapped)
}

/// Builds a verified cover of `W(k,m,l,p,q)` from a `(k+2m, l)`-coloring of a
/// bipartite semi-edge-free graph, for regular targets (`k+2m = 2p+q`). The
/// coloring is a degree-obedient vertex map, which the bipartite extension
/// turns into a full cover.
pub fn cover_from_coloring(
    g: &Graph,
    (k, m, l, p, q): (usize, usize, usize, usize, usize),
    col: &TwoColoring,
) -> Result<Option<CoverMap>, DecideError> {
    if l == 0 {
        return Err(DecideError::NoBars);
    }
    if k + 2 * m != 2 * p + q {
        return Err(DecideError::ParameterMismatch(format!(
            "k+2m = {} but 2p+q = {}",
            k + 2 * m,
            2 * p + q
        )));
    }
    if col.own != k + 2 * m || col.other != l {
        return Err(DecideError::ParameterMismatch(format!(
            "need a ({},{})-coloring, got ({},{})",
            k + 2 * m,
            l,
            col.own,
            col.other
        )));
    }
    if !g.is_bipartite() {
        return Err(DecideError::NotBipartite);
    }
    if g.semi_edges().next().is_some() {
        return Err(DecideError::SemiEdges);
    }
    if !check_bc_coloring(g, col)? {
        return Err(DecideError::InvalidColoring { own: col.own, other: col.other });
    }
    let h = two_vertex_graph(k, m, l, p, q);
    let f_v: BTreeMap<VertexId, VertexId> = col
        .colors
        .iter()
        .map(|(v, tag)| {
            (v.clone(), VertexId::from(match tag {
                ColorTag::Blue => "blue",
                ColorTag::Red => "red",
            }))
        })
        .collect();
    extend_obedient(g, &h, &f_v)
}

#[cfg(test)]
mod tests;
