//! Degree-constrained subgraphs of bipartite graphs by maximum flow.
//!
//! The demand network has a source feeding every left vertex with capacity
//! `demand(u)`, unit arcs across every ordinary edge, and every right vertex
//! draining into the sink with capacity `demand(v)`. A factor exists exactly
//! when the demands saturate, and the saturated unit arcs name its edges.

use std::collections::{BTreeSet, VecDeque};

use crate::graph::{Graph, VertexId};
use crate::indexed::{Ends, IndexedGraph};

use super::{DegreeDemand, EdgeSubset, SubsetRole};

struct Dinic {
    to: Vec<usize>,
    cap: Vec<i64>,
    head: Vec<Vec<usize>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic { to: Vec::new(), cap: Vec::new(), head: vec![Vec::new(); n], level: vec![0; n], iter: vec![0; n] }
    }

    fn add_edge(&mut self, u: usize, v: usize, c: i64) -> usize {
        let id = self.to.len();
        self.head[u].push(id);
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(id + 1);
        self.to.push(u);
        self.cap.push(0);
        id
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, f: i64) -> i64 {
        if u == t {
            return f;
        }
        while self.iter[u] < self.head[u].len() {
            let e = self.head[u][self.iter[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, f.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.iter.fill(0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }
}

/// `left` is one side of a bipartition of `g`. Returns the factor when the
/// demands are satisfiable, `None` otherwise.
pub(super) fn bipartite_degree_factor(
    g: &Graph,
    demand: &DegreeDemand,
    left: &BTreeSet<VertexId>,
) -> Option<EdgeSubset> {
    let ix = IndexedGraph::new(g);
    let n = ix.vertex_count();
    let is_left: Vec<bool> = ix.vertex_ids.iter().map(|v| left.contains(v)).collect();
    let total_left: usize =
        ix.vertex_ids.iter().filter(|v| left.contains(v)).map(|v| demand.get(v)).sum();
    let total_right: usize =
        ix.vertex_ids.iter().filter(|v| !left.contains(v)).map(|v| demand.get(v)).sum();
    if total_left != total_right {
        return None;
    }

    let source = n;
    let sink = n + 1;
    let mut net = Dinic::new(n + 2);
    for u in 0..n {
        let d = demand.get(&ix.vertex_ids[u]) as i64;
        if is_left[u] {
            net.add_edge(source, u, d);
        } else {
            net.add_edge(u, sink, d);
        }
    }
    let mut arc_of_edge = Vec::new();
    for e in 0..ix.edge_count() {
        if let Ends::Between(u, v) = ix.ends[e] {
            let (from, to) = if is_left[u] { (u, v) } else { (v, u) };
            arc_of_edge.push(Some(net.add_edge(from, to, 1)));
        } else {
            arc_of_edge.push(None);
        }
    }
    let flow = net.max_flow(source, sink);
    if flow != total_left as i64 {
        return None;
    }
    let mut edges = BTreeSet::new();
    for e in 0..ix.edge_count() {
        if let Some(arc) = arc_of_edge[e] {
            if net.cap[arc] == 0 {
                edges.insert(ix.edge_ids[e].clone());
            }
        }
    }
    Some(EdgeSubset { role: SubsetRole::GFactor, edges })
}
