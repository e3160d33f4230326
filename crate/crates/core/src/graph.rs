//! The multigraph-with-semi-edges data model.
//!
//! A [`Graph`] owns a vertex set and three disjoint edge families (semi-edges,
//! ordinary edges, loops) tied together by an incidence map. Edges are
//! first-class identified objects, not adjacency counts: cover maps must map
//! individual parallel edges, so every edge carries its own id.
//!
//! Values are immutable after construction by convention: all operations take
//! `&Graph` and return fresh values, so graphs are safe to share between
//! worker threads.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Opaque vertex identifier. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

/// Opaque edge identifier. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(String);

macro_rules! id_impls {
    ($t:ident) => {
        impl $t {
            pub fn new(s: impl Into<String>) -> Self {
                $t(s.into())
            }
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }
        impl fmt::Debug for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:?}", self.0)
            }
        }
        impl From<&str> for $t {
            fn from(s: &str) -> Self {
                $t(s.to_owned())
            }
        }
        impl From<String> for $t {
            fn from(s: String) -> Self {
                $t(s)
            }
        }
        impl AsRef<str> for $t {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }
    };
}
id_impls!(VertexId);
id_impls!(EdgeId);

/// Incidence of a single edge: which vertex (or pair) it belongs to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Incidence {
    /// Semi-edge: one attached end, one free end. Contributes 1 to the degree.
    Semi(VertexId),
    /// Loop at a vertex. Contributes 2 to the degree.
    Loop(VertexId),
    /// Ordinary edge between two distinct vertices, stored with the
    /// lexicographically smaller endpoint first.
    Between(VertexId, VertexId),
}

impl Incidence {
    /// The kind tag used in the text format: `s`, `l` or `e`.
    pub fn tag(&self) -> char {
        match self {
            Incidence::Semi(_) => 's',
            Incidence::Loop(_) => 'l',
            Incidence::Between(_, _) => 'e',
        }
    }

    pub fn is_ordinary(&self) -> bool {
        matches!(self, Incidence::Between(_, _))
    }

    /// Endpoints, one entry for semi-edges and loops, two for ordinary edges.
    pub fn endpoints(&self) -> Vec<&VertexId> {
        match self {
            Incidence::Semi(u) | Incidence::Loop(u) => vec![u],
            Incidence::Between(u, v) => vec![u, v],
        }
    }

    /// True when `u` is an endpoint.
    pub fn touches(&self, u: &VertexId) -> bool {
        match self {
            Incidence::Semi(x) | Incidence::Loop(x) => x == u,
            Incidence::Between(x, y) => x == u || y == u,
        }
    }
}

/// Per-vertex incidence counts and the resulting degree.
///
/// The degree is `semi + ordinary + 2 * loops`: a loop contributes two, a
/// semi-edge only one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DegreeProfile {
    pub semi: usize,
    pub ordinary: usize,
    pub loops: usize,
}

impl DegreeProfile {
    pub fn degree(&self) -> usize {
        self.semi + self.ordinary + 2 * self.loops
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(EdgeId),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(VertexId),
    #[error("ordinary edge `{0}` must join two distinct vertices")]
    NotAPair(EdgeId),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A multigraph with semi-edges.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Incidence>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn add_vertex(&mut self, v: impl Into<VertexId>) -> Result<(), GraphError> {
        let v = v.into();
        if !self.vertices.insert(v.clone()) {
            return Err(GraphError::DuplicateVertex(v));
        }
        Ok(())
    }

    fn check_new_edge(&self, e: &EdgeId) -> Result<(), GraphError> {
        if self.edges.contains_key(e) {
            return Err(GraphError::DuplicateEdge(e.clone()));
        }
        Ok(())
    }

    fn check_vertex(&self, v: &VertexId) -> Result<(), GraphError> {
        if !self.vertices.contains(v) {
            return Err(GraphError::UnknownVertex(v.clone()));
        }
        Ok(())
    }

    pub fn add_semi_edge(
        &mut self,
        e: impl Into<EdgeId>,
        u: impl Into<VertexId>,
    ) -> Result<(), GraphError> {
        let (e, u) = (e.into(), u.into());
        self.check_new_edge(&e)?;
        self.check_vertex(&u)?;
        self.edges.insert(e, Incidence::Semi(u));
        Ok(())
    }

    pub fn add_loop(
        &mut self,
        e: impl Into<EdgeId>,
        u: impl Into<VertexId>,
    ) -> Result<(), GraphError> {
        let (e, u) = (e.into(), u.into());
        self.check_new_edge(&e)?;
        self.check_vertex(&u)?;
        self.edges.insert(e, Incidence::Loop(u));
        Ok(())
    }

    pub fn add_edge(
        &mut self,
        e: impl Into<EdgeId>,
        u: impl Into<VertexId>,
        v: impl Into<VertexId>,
    ) -> Result<(), GraphError> {
        let (e, u, v) = (e.into(), u.into(), v.into());
        self.check_new_edge(&e)?;
        self.check_vertex(&u)?;
        self.check_vertex(&v)?;
        if u == v {
            return Err(GraphError::NotAPair(e));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges.insert(e, Incidence::Between(a, b));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter()
    }

    /// All edges in id order, regardless of kind.
    pub fn edges(&self) -> impl Iterator<Item = (&EdgeId, &Incidence)> {
        self.edges.iter()
    }

    pub fn incidence(&self, e: &EdgeId) -> Option<&Incidence> {
        self.edges.get(e)
    }

    pub fn semi_edges(&self) -> impl Iterator<Item = (&EdgeId, &VertexId)> {
        self.edges.iter().filter_map(|(e, i)| match i {
            Incidence::Semi(u) => Some((e, u)),
            _ => None,
        })
    }

    pub fn loops(&self) -> impl Iterator<Item = (&EdgeId, &VertexId)> {
        self.edges.iter().filter_map(|(e, i)| match i {
            Incidence::Loop(u) => Some((e, u)),
            _ => None,
        })
    }

    pub fn ordinary_edges(&self) -> impl Iterator<Item = (&EdgeId, &VertexId, &VertexId)> {
        self.edges.iter().filter_map(|(e, i)| match i {
            Incidence::Between(u, v) => Some((e, u, v)),
            _ => None,
        })
    }

    /// Incidence counts of `u`. Errors on unknown vertex ids.
    pub fn degree(&self, u: &VertexId) -> Result<DegreeProfile, GraphError> {
        self.check_vertex(u)?;
        let mut p = DegreeProfile { semi: 0, ordinary: 0, loops: 0 };
        for inc in self.edges.values() {
            match inc {
                Incidence::Semi(x) if x == u => p.semi += 1,
                Incidence::Loop(x) if x == u => p.loops += 1,
                Incidence::Between(x, y) if x == u || y == u => p.ordinary += 1,
                _ => {}
            }
        }
        Ok(p)
    }

    /// Returns `Some(d)` when every vertex has degree `d`. The empty graph is
    /// not considered regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let mut degrees = BTreeMap::new();
        for v in &self.vertices {
            degrees.insert(v.clone(), 0usize);
        }
        for inc in self.edges.values() {
            match inc {
                Incidence::Semi(u) => *degrees.get_mut(u).unwrap() += 1,
                Incidence::Loop(u) => *degrees.get_mut(u).unwrap() += 2,
                Incidence::Between(u, v) => {
                    *degrees.get_mut(u).unwrap() += 1;
                    *degrees.get_mut(v).unwrap() += 1;
                }
            }
        }
        let mut it = degrees.values();
        let first = *it.next()?;
        if it.all(|d| *d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// A proper 2-coloring of the vertices over the ordinary edges, if one
    /// exists. Loops make a graph non-bipartite (a loop is an odd closed
    /// walk); semi-edges are ignored. The side containing the smallest vertex
    /// of each component is listed first.
    pub fn bipartition(&self) -> Option<(BTreeSet<VertexId>, BTreeSet<VertexId>)> {
        if self.loops().next().is_some() {
            return None;
        }
        let mut adj: BTreeMap<&VertexId, Vec<&VertexId>> = BTreeMap::new();
        for (_, u, v) in self.ordinary_edges() {
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        let mut side: BTreeMap<&VertexId, bool> = BTreeMap::new();
        for start in &self.vertices {
            if side.contains_key(start) {
                continue;
            }
            side.insert(start, false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let s = side[u];
                for &w in adj.get(u).into_iter().flatten() {
                    match side.get(w) {
                        None => {
                            side.insert(w, !s);
                            queue.push_back(w);
                        }
                        Some(&t) if t == s => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let mut a = BTreeSet::new();
        let mut b = BTreeSet::new();
        for (v, s) in side {
            if s {
                b.insert(v.clone());
            } else {
                a.insert(v.clone());
            }
        }
        Some((a, b))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Splits the graph into maximal connected induced sub-multigraphs.
    /// Semi-edges and loops travel with their vertex; only ordinary edges
    /// connect. Components are ordered by their smallest vertex id.
    pub fn connected_components(&self) -> Vec<Graph> {
        let mut adj: BTreeMap<&VertexId, Vec<&VertexId>> = BTreeMap::new();
        for (_, u, v) in self.ordinary_edges() {
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        let mut seen: BTreeSet<&VertexId> = BTreeSet::new();
        let mut components = Vec::new();
        for start in &self.vertices {
            if seen.contains(start) {
                continue;
            }
            let mut members = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(u) = queue.pop_front() {
                members.insert(u.clone());
                for &w in adj.get(u).into_iter().flatten() {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            components.push(self.induced(&members));
        }
        components
    }

    /// The sub-multigraph induced by `keep`: all named vertices, their loops
    /// and semi-edges, and the ordinary edges with both endpoints inside.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let mut g = Graph::new();
        for v in keep {
            if self.vertices.contains(v) {
                g.vertices.insert(v.clone());
            }
        }
        for (e, inc) in &self.edges {
            let inside = match inc {
                Incidence::Semi(u) | Incidence::Loop(u) => g.vertices.contains(u),
                Incidence::Between(u, v) => g.vertices.contains(u) && g.vertices.contains(v),
            };
            if inside {
                g.edges.insert(e.clone(), inc.clone());
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// True when the graph has no semi-edges, no loops and no parallel
    /// ordinary edges.
    pub fn is_simple(&self) -> bool {
        let mut pairs = BTreeSet::new();
        for (_, inc) in self.edges() {
            match inc {
                Incidence::Between(u, v) => {
                    if !pairs.insert((u, v)) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// True when every vertex has at most one semi-edge and the graph has no
    /// loops and no parallel ordinary edges.
    pub fn is_semi_simple(&self) -> bool {
        let mut pairs = BTreeSet::new();
        let mut semi_at = BTreeSet::new();
        for (_, inc) in self.edges() {
            match inc {
                Incidence::Between(u, v) => {
                    if !pairs.insert((u, v)) {
                        return false;
                    }
                }
                Incidence::Semi(u) => {
                    if !semi_at.insert(u) {
                        return false;
                    }
                }
                Incidence::Loop(_) => return false,
            }
        }
        true
    }

    /// Tensor product with an edge: vertices `v.0`, `v.1` for every vertex
    /// `v`; each ordinary edge `uv` lifts to the two cross edges `u.0 v.1`
    /// and `u.1 v.0`; a semi-edge at `v` becomes the single edge `v.0 v.1`; a
    /// loop at `v` becomes a pair of parallel edges `v.0 v.1`. The result has
    /// no semi-edges and no loops, and each copy of `v` keeps the degree of
    /// `v`. This is the unique degree-preserving lift rule.
    pub fn tensor_k2(&self) -> Graph {
        let copy = |v: &VertexId, side: usize| VertexId::new(format!("{v}.{side}"));
        let mut g = Graph::new();
        for v in &self.vertices {
            g.add_vertex(copy(v, 0)).unwrap();
            g.add_vertex(copy(v, 1)).unwrap();
        }
        for (e, inc) in &self.edges {
            match inc {
                Incidence::Semi(u) => {
                    g.add_edge(EdgeId::new(format!("{e}.x")), copy(u, 0), copy(u, 1)).unwrap();
                }
                Incidence::Loop(u) => {
                    g.add_edge(EdgeId::new(format!("{e}.0")), copy(u, 0), copy(u, 1)).unwrap();
                    g.add_edge(EdgeId::new(format!("{e}.1")), copy(u, 0), copy(u, 1)).unwrap();
                }
                Incidence::Between(u, v) => {
                    g.add_edge(EdgeId::new(format!("{e}.0")), copy(u, 0), copy(v, 1)).unwrap();
                    g.add_edge(EdgeId::new(format!("{e}.1")), copy(u, 1), copy(v, 0)).unwrap();
                }
            }
        }
        g
    }

    /// Parses the line-based text format:
    ///
    /// ```text
    /// v <vertex-id>
    /// e <edge-id> <u> <v>      # ordinary edge, u != v
    /// l <edge-id> <u>          # loop
    /// s <edge-id> <u>          # semi-edge
    /// ```
    ///
    /// `#` starts a comment, blank lines are skipped, duplicate ids are
    /// errors.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut g = Graph::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut tok = content.split_whitespace();
            let kind = tok.next().unwrap();
            let mut next = |what: &str| {
                tok.next().map(str::to_owned).ok_or(GraphError::Parse {
                    line,
                    msg: format!("missing {what}"),
                })
            };
            let lift = |r: Result<(), GraphError>| {
                r.map_err(|e| GraphError::Parse { line, msg: e.to_string() })
            };
            match kind {
                "v" => lift(g.add_vertex(next("vertex id")?))?,
                "e" => {
                    lift(g.add_edge(next("edge id")?, next("endpoint")?, next("endpoint")?))?
                }
                "l" => lift(g.add_loop(next("edge id")?, next("vertex")?))?,
                "s" => lift(g.add_semi_edge(next("edge id")?, next("vertex")?))?,
                other => {
                    return Err(GraphError::Parse {
                        line,
                        msg: format!("unknown declaration `{other}`"),
                    })
                }
            }
            if tok.next().is_some() {
                return Err(GraphError::Parse { line, msg: "trailing tokens".into() });
            }
        }
        Ok(g)
    }

    /// Canonical serialization: the `v` block sorted by id, then the edge
    /// block sorted by id. `parse` of the output reproduces the graph.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("v {v}\n"));
        }
        for (e, inc) in &self.edges {
            match inc {
                Incidence::Semi(u) => out.push_str(&format!("s {e} {u}\n")),
                Incidence::Loop(u) => out.push_str(&format!("l {e} {u}\n")),
                Incidence::Between(u, v) => out.push_str(&format!("e {e} {u} {v}\n")),
            }
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
