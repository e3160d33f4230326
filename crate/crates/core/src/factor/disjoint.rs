//! Exact search for `k` pairwise disjoint perfect matchings.
//!
//! Shortcuts: `k <= 1` reduces to a single matching computation, and on
//! 2-regular graphs two disjoint perfect matchings exist exactly when every
//! component is an even cycle. Everything else runs a complete backtracking
//! search over (vertex, matching-index) slots with forced-move propagation
//! and an odd-component cut: after every assignment, each matching's
//! available graph restricted to its unmatched vertices must consist of even
//! components, otherwise the branch is dead. Since every matching covers the
//! first vertex with a distinct edge, requiring those edges to increase with
//! the matching index removes the index permutation symmetry entirely.

use std::collections::BTreeSet;

use crate::graph::Graph;
use crate::indexed::IndexedGraph;

use super::{perfect_matching, EdgeSubset, SubsetRole};

const NONE: usize = usize::MAX;

pub(super) fn disjoint_perfect_matchings(
    g: &Graph,
    k: usize,
    max_nodes: Option<u64>,
) -> (Option<Vec<EdgeSubset>>, u64) {
    if k == 0 {
        return (Some(Vec::new()), 0);
    }
    let ix = IndexedGraph::new(g);
    let n = ix.vertex_count();
    if !n.is_multiple_of(2) {
        return (None, 0);
    }
    if (0..n).any(|v| ix.ordinary_degree(v) < k) {
        return (None, 0);
    }
    if k == 1 {
        let found = perfect_matching(g).map(|m| vec![m]);
        return (found, 0);
    }
    if k == 2 && (0..n).all(|v| ix.degree(v) == 2) {
        return (alternate_even_cycles(&ix), 0);
    }

    let mut search = Search {
        ix: &ix,
        k,
        edge_at: vec![vec![NONE; n]; k],
        edge_used: vec![NONE; ix.edge_count()],
        trail: Vec::new(),
        nodes: 0,
        max_nodes,
    };
    let outcome = search.dfs();
    let witness = match outcome {
        Step::Found => {
            let mut result = Vec::new();
            for h in 0..k {
                let mut edges = BTreeSet::new();
                for v in 0..n {
                    edges.insert(ix.edge_ids[search.edge_at[h][v]].clone());
                }
                result.push(EdgeSubset { role: SubsetRole::Matching, edges });
            }
            debug_assert!(result.iter().all(|m| m.is_perfect_matching(g)));
            Some(result)
        }
        _ => None,
    };
    (witness, search.nodes)
}

/// Both matchings of a 2-regular graph, if all its cycles are even. A loop
/// forms a one-vertex component and an odd cycle has no perfect matching, so
/// either kills the answer.
fn alternate_even_cycles(ix: &IndexedGraph) -> Option<Vec<EdgeSubset>> {
    let n = ix.vertex_count();
    let mut seen_edge = vec![false; ix.edge_count()];
    let mut visited = vec![false; n];
    let mut classes = [BTreeSet::new(), BTreeSet::new()];
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut cur = start;
        loop {
            visited[cur] = true;
            let &(next, e) = ix.adj[cur].iter().find(|(_, e)| !seen_edge[*e])?;
            seen_edge[e] = true;
            walk.push(e);
            cur = next;
            if cur == start {
                break;
            }
        }
        if walk.len() % 2 != 0 {
            return None;
        }
        for (i, &e) in walk.iter().enumerate() {
            classes[i % 2].insert(ix.edge_ids[e].clone());
        }
    }
    Some(
        classes
            .into_iter()
            .map(|edges| EdgeSubset { role: SubsetRole::Matching, edges })
            .collect(),
    )
}

enum Step {
    Found,
    Exhausted,
    Aborted,
}

struct Search<'a> {
    ix: &'a IndexedGraph,
    k: usize,
    /// `edge_at[h][v]`: edge matching `v` in matching `h`, or `NONE`.
    edge_at: Vec<Vec<usize>>,
    /// Which matching uses each edge, or `NONE`.
    edge_used: Vec<usize>,
    trail: Vec<(usize, usize)>,
    nodes: u64,
    max_nodes: Option<u64>,
}

impl<'a> Search<'a> {
    fn over_budget(&self) -> bool {
        self.max_nodes.is_some_and(|cap| self.nodes >= cap)
    }

    /// Edge-order bounds breaking the matching-index symmetry at vertex 0.
    fn first_vertex_bounds(&self, h: usize) -> (usize, usize) {
        let mut lo = 0;
        let mut hi = usize::MAX;
        for other in 0..self.k {
            let e = self.edge_at[other][0];
            if e == NONE {
                continue;
            }
            if other < h {
                lo = lo.max(e + 1);
            } else if other > h {
                hi = hi.min(e);
            }
        }
        (lo, hi)
    }

    fn available(&self, v: usize, h: usize) -> Vec<usize> {
        let (lo, hi) = if v == 0 { self.first_vertex_bounds(h) } else { (0, usize::MAX) };
        self.ix.adj[v]
            .iter()
            .filter(|&&(w, e)| {
                self.edge_used[e] == NONE
                    && self.edge_at[h][w] == NONE
                    && e >= lo
                    && e < hi
            })
            .map(|&(_, e)| e)
            .collect()
    }

    fn assign(&mut self, e: usize, h: usize) {
        let (u, w) = match self.ix.ends[e] {
            crate::indexed::Ends::Between(a, b) => (a, b),
            _ => unreachable!(),
        };
        self.edge_used[e] = h;
        self.edge_at[h][u] = e;
        self.edge_at[h][w] = e;
        self.trail.push((e, h));
        self.nodes += 1;
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (e, h) = self.trail.pop().unwrap();
            let (u, w) = match self.ix.ends[e] {
                crate::indexed::Ends::Between(a, b) => (a, b),
                _ => unreachable!(),
            };
            self.edge_used[e] = NONE;
            self.edge_at[h][u] = NONE;
            self.edge_at[h][w] = NONE;
        }
    }

    /// Assigns and then repeatedly fills slots left with a single candidate.
    /// Returns false when some unmatched slot has no candidate left.
    fn assign_and_propagate(&mut self, e: usize, h: usize) -> bool {
        self.assign(e, h);
        let mut work: Vec<(usize, usize)> = Vec::new();
        let seed = |work: &mut Vec<(usize, usize)>, e: usize, h: usize, s: &Search| {
            let (u, w) = match s.ix.ends[e] {
                crate::indexed::Ends::Between(a, b) => (a, b),
                _ => unreachable!(),
            };
            for x in [u, w] {
                for other in 0..s.k {
                    work.push((x, other));
                }
                for &(y, _) in &s.ix.adj[x] {
                    work.push((y, h));
                }
            }
        };
        seed(&mut work, e, h, self);
        while let Some((v, idx)) = work.pop() {
            if self.edge_at[idx][v] != NONE {
                continue;
            }
            let cands = self.available(v, idx);
            match cands.len() {
                0 => return false,
                1 => {
                    let forced = cands[0];
                    self.assign(forced, idx);
                    seed(&mut work, forced, idx, self);
                }
                _ => {}
            }
        }
        true
    }

    /// Every matching's available graph over its unmatched vertices must
    /// split into even components.
    fn parity_ok(&self) -> bool {
        let n = self.ix.vertex_count();
        let mut comp = vec![NONE; n];
        for h in 0..self.k {
            comp.fill(NONE);
            for start in 0..n {
                if self.edge_at[h][start] != NONE || comp[start] != NONE {
                    continue;
                }
                let mut stack = vec![start];
                comp[start] = start;
                let mut size = 0usize;
                while let Some(v) = stack.pop() {
                    size += 1;
                    for &(w, e) in &self.ix.adj[v] {
                        if self.edge_used[e] == NONE
                            && self.edge_at[h][w] == NONE
                            && comp[w] == NONE
                        {
                            comp[w] = start;
                            stack.push(w);
                        }
                    }
                }
                if !size.is_multiple_of(2) {
                    return false;
                }
            }
        }
        true
    }

    /// Next slot to branch on: the first vertex is completed first in index
    /// order, then the slot with the fewest candidates.
    fn pick_slot(&self) -> Option<(usize, usize)> {
        let n = self.ix.vertex_count();
        if n == 0 {
            return None;
        }
        for h in 0..self.k {
            if self.edge_at[h][0] == NONE {
                return Some((0, h));
            }
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 1..n {
            for h in 0..self.k {
                if self.edge_at[h][v] != NONE {
                    continue;
                }
                let count = self.available(v, h).len();
                if best.is_none_or(|(c, _, _)| count < c) {
                    if count <= 1 {
                        return Some((v, h));
                    }
                    best = Some((count, v, h));
                }
            }
        }
        best.map(|(_, v, h)| (v, h))
    }

    fn dfs(&mut self) -> Step {
        let Some((v, h)) = self.pick_slot() else {
            return Step::Found;
        };
        for e in self.available(v, h) {
            if self.over_budget() {
                return Step::Aborted;
            }
            let mark = self.trail.len();
            if self.assign_and_propagate(e, h) && self.parity_ok() {
                match self.dfs() {
                    Step::Exhausted => {}
                    done => return done,
                }
            }
            self.undo_to(mark);
        }
        Step::Exhausted
    }
}
