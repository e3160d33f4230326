//! Maximum matching in general graphs via blossom contraction.
//!
//! The alternating BFS grows a tree from each free vertex; odd cycles are
//! contracted by rebasing their vertices onto the cycle base. Runs in
//! O(V^3), which is far more than enough at the scales this crate handles.

use std::collections::VecDeque;

use crate::indexed::IndexedGraph;

const NONE: usize = usize::MAX;

struct Search {
    /// Simple adjacency, parallel edges collapsed, sorted.
    adj: Vec<Vec<usize>>,
    matched: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
}

impl Search {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut on_path = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.matched[a] == NONE {
                break;
            }
            a = self.parent[self.matched[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[self.matched[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, root: usize, mut child: usize, in_blossom: &mut [bool]) {
        while self.base[v] != root {
            in_blossom[self.base[v]] = true;
            in_blossom[self.base[self.matched[v]]] = true;
            self.parent[v] = child;
            child = self.matched[v];
            v = self.parent[self.matched[v]];
        }
    }

    /// One phase: look for an augmenting path from `root`, apply it.
    fn augment_from(&mut self, root: usize) -> bool {
        let n = self.adj.len();
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        let mut in_tree = vec![false; n];
        in_tree[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut finish = NONE;
        'bfs: while let Some(v) = queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.matched[v] == to {
                    continue;
                }
                if to == root || (self.matched[to] != NONE && self.parent[self.matched[to]] != NONE)
                {
                    // Odd cycle: contract the blossom.
                    let cur_base = self.lca(v, to);
                    let mut in_blossom = vec![false; n];
                    self.mark_path(v, cur_base, to, &mut in_blossom);
                    self.mark_path(to, cur_base, v, &mut in_blossom);
                    for i in 0..n {
                        if in_blossom[self.base[i]] {
                            self.base[i] = cur_base;
                            if !in_tree[i] {
                                in_tree[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.matched[to] == NONE {
                        finish = to;
                        break 'bfs;
                    }
                    in_tree[self.matched[to]] = true;
                    queue.push_back(self.matched[to]);
                }
            }
        }
        if finish == NONE {
            return false;
        }
        // Flip matched edges along the alternating path.
        let mut v = finish;
        while v != NONE {
            let pv = self.parent[v];
            let next = self.matched[pv];
            self.matched[v] = pv;
            self.matched[pv] = v;
            v = next;
        }
        true
    }
}

/// Partner of each vertex in a maximum matching, `None` for exposed vertices.
pub(crate) fn maximum_matching(ix: &IndexedGraph) -> Vec<Option<usize>> {
    let n = ix.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in 0..n {
        let mut nbrs: Vec<usize> = ix.adj[u].iter().map(|(v, _)| *v).collect();
        nbrs.dedup();
        adj[u] = nbrs;
    }
    let mut s = Search { adj, matched: vec![NONE; n], parent: vec![NONE; n], base: (0..n).collect() };
    // Greedy warm start.
    for v in 0..n {
        if s.matched[v] != NONE {
            continue;
        }
        for i in 0..s.adj[v].len() {
            let u = s.adj[v][i];
            if s.matched[u] == NONE {
                s.matched[v] = u;
                s.matched[u] = v;
                break;
            }
        }
    }
    for v in 0..n {
        if s.matched[v] == NONE {
            s.augment_from(v);
        }
    }
    s.matched.iter().map(|&m| if m == NONE { None } else { Some(m) }).collect()
}
