//! Matching, factor and edge-coloring primitives.
//!
//! These are the engines behind the polynomial deciders: maximum matching in
//! general graphs, perfect matchings, edge colorings of regular bipartite
//! multigraphs, 2-factorizations of even-regular multigraphs,
//! degree-constrained subgraphs of bipartite graphs, and a complete exact
//! search for pairwise disjoint perfect matchings.
//!
//! All ties are broken by lexicographic id order so repeated runs produce
//! identical results.

mod bipartite;
mod blossom;
mod disjoint;
mod euler;
mod flow;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexId};
use crate::indexed::IndexedGraph;

pub(crate) use bipartite::color_bipartite_edges;

/// What a returned edge subset claims to be.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubsetRole {
    Matching,
    TwoFactor,
    GFactor,
    ColorClass,
}

impl SubsetRole {
    pub fn as_str(&self) -> &'static str {
        match self {
            SubsetRole::Matching => "matching",
            SubsetRole::TwoFactor => "two-factor",
            SubsetRole::GFactor => "g-factor",
            SubsetRole::ColorClass => "color-class",
        }
    }

    pub fn parse(s: &str) -> Option<SubsetRole> {
        match s {
            "matching" => Some(SubsetRole::Matching),
            "two-factor" => Some(SubsetRole::TwoFactor),
            "g-factor" => Some(SubsetRole::GFactor),
            "color-class" => Some(SubsetRole::ColorClass),
            _ => None,
        }
    }
}

/// A set of edge ids with a role tag.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeSubset {
    pub role: SubsetRole,
    pub edges: BTreeSet<EdgeId>,
}

impl EdgeSubset {
    pub fn new(role: SubsetRole, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        EdgeSubset { role, edges: edges.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: &EdgeId) -> bool {
        self.edges.contains(e)
    }

    /// Vertex-disjoint ordinary edges.
    pub fn is_matching(&self, g: &Graph) -> bool {
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            match g.incidence(e) {
                Some(crate::graph::Incidence::Between(u, v)) => {
                    if !seen.insert(u) || !seen.insert(v) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// A matching covering every vertex of `g`.
    pub fn is_perfect_matching(&self, g: &Graph) -> bool {
        self.is_matching(g) && 2 * self.edges.len() == g.vertex_count()
    }

    /// Spanning subgraph in which every vertex carries exactly two
    /// incidences, a loop counting two.
    pub fn is_two_factor(&self, g: &Graph) -> bool {
        let mut weight: BTreeMap<&VertexId, usize> = g.vertices().map(|v| (v, 0)).collect();
        for e in &self.edges {
            match g.incidence(e) {
                Some(crate::graph::Incidence::Loop(u)) => *weight.get_mut(u).unwrap() += 2,
                Some(crate::graph::Incidence::Between(u, v)) => {
                    *weight.get_mut(u).unwrap() += 1;
                    *weight.get_mut(v).unwrap() += 1;
                }
                _ => return false,
            }
        }
        weight.values().all(|&w| w == 2)
    }

    /// Ordinary edges giving every vertex exactly its demanded degree.
    pub fn satisfies_demand(&self, g: &Graph, demand: &DegreeDemand) -> bool {
        let mut count: BTreeMap<&VertexId, usize> = g.vertices().map(|v| (v, 0)).collect();
        for e in &self.edges {
            match g.incidence(e) {
                Some(crate::graph::Incidence::Between(u, v)) => {
                    *count.get_mut(u).unwrap() += 1;
                    *count.get_mut(v).unwrap() += 1;
                }
                _ => return false,
            }
        }
        g.vertices().all(|v| count[v] == demand.get(v))
    }

    /// One-line serialization: `f <role> <edge> <edge> ...`.
    pub fn to_line(&self) -> String {
        let mut s = format!("f {}", self.role.as_str());
        for e in &self.edges {
            s.push(' ');
            s.push_str(e.as_str());
        }
        s
    }
}

impl fmt::Display for EdgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

/// Prescribed per-vertex degrees for a degree-constrained subgraph. Vertices
/// absent from the map demand zero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DegreeDemand(pub BTreeMap<VertexId, usize>);

impl DegreeDemand {
    pub fn uniform(g: &Graph, d: usize) -> Self {
        DegreeDemand(g.vertices().map(|v| (v.clone(), d)).collect())
    }

    pub fn get(&self, v: &VertexId) -> usize {
        self.0.get(v).copied().unwrap_or(0)
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("vertex `{vertex}` has degree {got}, expected {want}")]
    NotRegular { vertex: VertexId, got: usize, want: usize },
    #[error("vertex `{0}` has odd degree")]
    OddDegree(VertexId),
    #[error("graph has semi-edges")]
    SemiEdgesPresent,
    #[error("demand {demand} at `{vertex}` exceeds its degree {degree}")]
    DemandExceedsDegree { vertex: VertexId, demand: usize, degree: usize },
    #[error("demand names unknown vertex `{0}`")]
    UnknownVertex(VertexId),
}

/// Lexicographically least edge joining `u` and `v`.
fn least_edge_between(ix: &IndexedGraph, u: usize, v: usize) -> usize {
    ix.adj[u]
        .iter()
        .filter(|(w, _)| *w == v)
        .map(|(_, e)| *e)
        .min()
        .expect("matched pair must be adjacent")
}

/// Maximum-cardinality matching among the ordinary edges; semi-edges and
/// loops are ignored. Non-bipartite graphs are supported.
pub fn max_matching(g: &Graph) -> EdgeSubset {
    let ix = IndexedGraph::new(g);
    let partner = blossom::maximum_matching(&ix);
    let mut edges = BTreeSet::new();
    for u in 0..ix.vertex_count() {
        if let Some(v) = partner[u] {
            if u < v {
                edges.insert(ix.edge_ids[least_edge_between(&ix, u, v)].clone());
            }
        }
    }
    EdgeSubset { role: SubsetRole::Matching, edges }
}

/// A matching covering every vertex, or `None`.
pub fn perfect_matching(g: &Graph) -> Option<EdgeSubset> {
    let m = max_matching(g);
    if 2 * m.len() == g.vertex_count() {
        Some(m)
    } else {
        None
    }
}

/// Partitions the ordinary edges of a `k`-regular bipartite multigraph into
/// `k` perfect matchings. Semi-edges are ignored; loops make the graph
/// non-bipartite. Errors when the graph is not bipartite or some vertex does
/// not have exactly `k` ordinary edges.
pub fn bipartite_edge_coloring(g: &Graph, k: usize) -> Result<Vec<EdgeSubset>, FactorError> {
    if !g.is_bipartite() {
        return Err(FactorError::NotBipartite);
    }
    let ix = IndexedGraph::new(g);
    for u in 0..ix.vertex_count() {
        if ix.ordinary_degree(u) != k {
            return Err(FactorError::NotRegular {
                vertex: ix.vertex_ids[u].clone(),
                got: ix.ordinary_degree(u),
                want: k,
            });
        }
    }
    let pairs: Vec<(usize, usize)> = ix
        .ends
        .iter()
        .filter_map(|e| match e {
            crate::indexed::Ends::Between(u, v) => Some((*u, *v)),
            _ => None,
        })
        .collect();
    let ordinary: Vec<usize> = (0..ix.edge_count())
        .filter(|&e| matches!(ix.ends[e], crate::indexed::Ends::Between(_, _)))
        .collect();
    let colors = color_bipartite_edges(ix.vertex_count(), &pairs, k);
    let mut classes = vec![
        EdgeSubset { role: SubsetRole::ColorClass, edges: BTreeSet::new() };
        k
    ];
    for (local, &edge) in ordinary.iter().enumerate() {
        classes[colors[local]].edges.insert(ix.edge_ids[edge].clone());
    }
    debug_assert!(classes.iter().all(|c| c.is_perfect_matching(g)));
    Ok(classes)
}

/// Splits a `2c`-regular multigraph without semi-edges into `c` spanning
/// 2-factors. Loops are allowed and count two; a factor may contain loops.
pub fn two_factorization(g: &Graph) -> Result<Vec<EdgeSubset>, FactorError> {
    euler::two_factorization(g)
}

/// A spanning subgraph of a bipartite graph meeting the demanded ordinary
/// degree at every vertex, or `None` when no such subgraph exists. Errors on
/// non-bipartite input, demands above the vertex degree, or demands naming
/// unknown vertices.
pub fn g_factor(g: &Graph, demand: &DegreeDemand) -> Result<Option<EdgeSubset>, FactorError> {
    let Some((left, _right)) = g.bipartition() else {
        return Err(FactorError::NotBipartite);
    };
    for v in demand.0.keys() {
        if !g.has_vertex(v) {
            return Err(FactorError::UnknownVertex(v.clone()));
        }
    }
    for v in g.vertices() {
        let d = demand.get(v);
        let degree = g.degree(v).unwrap().degree();
        if d > degree {
            return Err(FactorError::DemandExceedsDegree {
                vertex: v.clone(),
                demand: d,
                degree,
            });
        }
    }
    Ok(flow::bipartite_degree_factor(g, demand, &left))
}

/// `k` pairwise edge-disjoint perfect matchings, or `None` when no such
/// family exists. Complete: polynomial shortcuts handle `k <= 1` and `k = 2`
/// on 2-regular graphs, everything else runs an exact search whose index
/// symmetry is broken by requiring the matchings to appear in increasing
/// edge order at the first vertex. The search runs sequentially over a
/// fixed candidate order, so repeated calls return the identical family.
pub fn disjoint_perfect_matchings(g: &Graph, k: usize) -> Option<Vec<EdgeSubset>> {
    disjoint::disjoint_perfect_matchings(g, k, None).0
}

/// Same search, reporting the number of explored nodes and honoring an
/// optional node cap. `None` in the first slot with `nodes < cap` means the
/// search exhausted the space; hitting the cap returns `None` with
/// `nodes == cap`.
pub fn disjoint_perfect_matchings_counted(
    g: &Graph,
    k: usize,
    max_nodes: Option<u64>,
) -> (Option<Vec<EdgeSubset>>, u64) {
    disjoint::disjoint_perfect_matchings(g, k, max_nodes)
}

#[cfg(test)]
mod tests;
