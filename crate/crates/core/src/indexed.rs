//! Dense integer view of a [`Graph`](crate::graph::Graph) for the search and
//! factor algorithms. Vertices and edges are numbered in sorted id order, so
//! everything derived from this view is deterministic.

use std::collections::BTreeMap;

use crate::graph::{EdgeId, Graph, Incidence, VertexId};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Ends {
    Semi(usize),
    Loop(usize),
    Between(usize, usize),
}

pub(crate) struct IndexedGraph {
    pub vertex_ids: Vec<VertexId>,
    pub edge_ids: Vec<EdgeId>,
    pub ends: Vec<Ends>,
    /// Ordinary-edge adjacency: `adj[u]` lists `(neighbor, edge index)` in
    /// (neighbor, edge) order.
    pub adj: Vec<Vec<(usize, usize)>>,
    pub loops_at: Vec<Vec<usize>>,
    pub semis_at: Vec<Vec<usize>>,
}

impl IndexedGraph {
    pub fn new(g: &Graph) -> Self {
        let vertex_ids: Vec<VertexId> = g.vertices().cloned().collect();
        let pos: BTreeMap<&VertexId, usize> =
            vertex_ids.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let n = vertex_ids.len();
        let mut edge_ids = Vec::with_capacity(g.edge_count());
        let mut ends = Vec::with_capacity(g.edge_count());
        let mut adj = vec![Vec::new(); n];
        let mut loops_at = vec![Vec::new(); n];
        let mut semis_at = vec![Vec::new(); n];
        for (idx, (e, inc)) in g.edges().enumerate() {
            edge_ids.push(e.clone());
            match inc {
                Incidence::Semi(u) => {
                    let u = pos[u];
                    ends.push(Ends::Semi(u));
                    semis_at[u].push(idx);
                }
                Incidence::Loop(u) => {
                    let u = pos[u];
                    ends.push(Ends::Loop(u));
                    loops_at[u].push(idx);
                }
                Incidence::Between(u, v) => {
                    let (u, v) = (pos[u], pos[v]);
                    ends.push(Ends::Between(u, v));
                    adj[u].push((v, idx));
                    adj[v].push((u, idx));
                }
            }
        }
        for list in &mut adj {
            list.sort();
        }
        IndexedGraph { vertex_ids, edge_ids, ends, adj, loops_at, semis_at }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ids.len()
    }

    /// Degree with loops counted twice and semi-edges once.
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len() + 2 * self.loops_at[u].len() + self.semis_at[u].len()
    }

    pub fn ordinary_degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }
}
