//! Backtracking engine for constrained red/blue colorings.
//!
//! Every vertex in the frame must end with exactly `b` same-color and `c`
//! other-color neighbors (multiplicities counted, loops adding two to the own
//! side). The search colors one vertex at a time and propagates forced
//! moves: once a framed vertex has `b` own-color neighbors placed, its
//! remaining neighbors must take the other color, and vice versa. Because a
//! framed vertex of weighted degree `b + c` always splits its neighborhood
//! exactly, only the running upper bounds need checking.

use std::collections::BTreeSet;
use std::time::Instant;

use crate::graph::{Graph, VertexId};
use crate::indexed::IndexedGraph;
use crate::oracle::SearchBudget;

use super::{ColorTag, TwoColoring};

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Stop at the first valid coloring, fixing the first branch to red
    /// since the constraint is symmetric under a global color swap.
    FindOne,
    /// Collect every valid coloring; no symmetry breaking.
    EnumerateAll,
}

pub(crate) enum Outcome {
    Complete(Vec<TwoColoring>),
    Unknown,
}

const RED: u8 = 0;
const BLUE: u8 = 1;
const UNSET: u8 = 2;

struct Engine {
    b: usize,
    c: usize,
    frame: Vec<bool>,
    /// Collapsed ordinary adjacency with multiplicities.
    nbrs: Vec<Vec<(usize, usize)>>,
    loops2: Vec<usize>,
    color: Vec<u8>,
    /// cnt[v][RED|BLUE]: weighted colored-neighbor counts.
    cnt: Vec<[usize; 2]>,
    trail: Vec<usize>,
    found: Vec<Vec<u8>>,
    mode: Mode,
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    aborted: bool,
}

impl Engine {
    /// Own/other upper bound check for a colored framed vertex.
    fn bounds_ok(&self, v: usize) -> bool {
        if !self.frame[v] {
            return true;
        }
        match self.color[v] {
            UNSET => {
                // At least one color option must stay open.
                self.can_take(v, RED) || self.can_take(v, BLUE)
            }
            col => {
                let own = self.cnt[v][col as usize] + self.loops2[v];
                let other = self.cnt[v][1 - col as usize];
                own <= self.b && other <= self.c
            }
        }
    }

    fn can_take(&self, v: usize, col: u8) -> bool {
        let own = self.cnt[v][col as usize] + self.loops2[v];
        let other = self.cnt[v][1 - col as usize];
        own <= self.b && other <= self.c
    }

    /// Colors `v`, updates neighbor counts and propagates forced moves.
    /// Returns false on a dead end; the trail records what to undo. Count
    /// updates are applied in full before any check so that undoing is
    /// always the exact reverse.
    fn assign(&mut self, v: usize, col: u8) -> bool {
        let mut queue = vec![(v, col)];
        while let Some((v, col)) = queue.pop() {
            if self.color[v] != UNSET {
                if self.color[v] == col {
                    continue;
                }
                return false;
            }
            self.color[v] = col;
            self.trail.push(v);
            self.nodes += 1;
            for i in 0..self.nbrs[v].len() {
                let (w, mult) = self.nbrs[v][i];
                self.cnt[w][col as usize] += mult;
            }
            if !self.bounds_ok(v) {
                return false;
            }
            for i in 0..self.nbrs[v].len() {
                let (w, _) = self.nbrs[v][i];
                match self.color[w] {
                    UNSET => {
                        if self.frame[w] {
                            let red_ok = self.can_take(w, RED);
                            let blue_ok = self.can_take(w, BLUE);
                            match (red_ok, blue_ok) {
                                (false, false) => return false,
                                (true, false) => queue.push((w, RED)),
                                (false, true) => queue.push((w, BLUE)),
                                (true, true) => {}
                            }
                        }
                    }
                    _ => {
                        if !self.bounds_ok(w) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            let col = self.color[v];
            self.color[v] = UNSET;
            for i in 0..self.nbrs[v].len() {
                let (w, mult) = self.nbrs[v][i];
                self.cnt[w][col as usize] -= mult;
            }
        }
    }

    fn over_budget(&mut self) -> bool {
        if self.nodes >= self.max_nodes {
            return true;
        }
        if let Some(deadline) = self.deadline {
            if self.nodes.is_multiple_of(256) && Instant::now() >= deadline {
                return true;
            }
        }
        false
    }

    /// Most-constrained uncolored vertex: framed vertices with the fewest
    /// open incidences first, ties by index.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..self.color.len() {
            if self.color[v] != UNSET {
                continue;
            }
            let open: usize = self.nbrs[v]
                .iter()
                .filter(|(w, _)| self.color[*w] == UNSET)
                .map(|(_, m)| m)
                .sum();
            let score = if self.frame[v] { open } else { open + 1000 };
            if best.is_none_or(|(s, _)| score < s) {
                best = Some((score, v));
            }
        }
        best.map(|(_, v)| v)
    }

    fn dfs(&mut self, first_branch: bool) -> bool {
        if self.over_budget() {
            self.aborted = true;
            return true;
        }
        let Some(v) = self.pick() else {
            self.found.push(self.color.clone());
            return self.mode == Mode::FindOne;
        };
        let options: &[u8] =
            if first_branch && self.mode == Mode::FindOne { &[RED] } else { &[RED, BLUE] };
        for &col in options {
            let mark = self.trail.len();
            if self.assign(v, col) && self.dfs(false) {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

pub(crate) fn search(
    g: &Graph,
    b: usize,
    c: usize,
    frame: &BTreeSet<VertexId>,
    mode: Mode,
    budget: &SearchBudget,
) -> Outcome {
    let ix = IndexedGraph::new(g);
    let n = ix.vertex_count();
    let mut nbrs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for v in 0..n {
        for &(w, _) in &ix.adj[v] {
            match nbrs[v].last_mut() {
                Some((prev, mult)) if *prev == w => *mult += 1,
                _ => nbrs[v].push((w, 1)),
            }
        }
    }
    let loops2: Vec<usize> = (0..n).map(|v| 2 * ix.loops_at[v].len()).collect();
    let frame_flags: Vec<bool> =
        ix.vertex_ids.iter().map(|v| frame.contains(v)).collect();

    // A framed vertex whose weighted degree differs from b + c can never meet
    // the exact constraint.
    for v in 0..n {
        if frame_flags[v] {
            let weighted: usize = nbrs[v].iter().map(|(_, m)| m).sum::<usize>() + loops2[v];
            if weighted != b + c {
                return Outcome::Complete(Vec::new());
            }
        }
    }

    let mut engine = Engine {
        b,
        c,
        frame: frame_flags,
        nbrs,
        loops2,
        color: vec![UNSET; n],
        cnt: vec![[0, 0]; n],
        trail: Vec::new(),
        found: Vec::new(),
        mode,
        nodes: 0,
        max_nodes: budget.max_nodes,
        deadline: budget.time_limit.map(|d| Instant::now() + d),
        aborted: false,
    };
    engine.dfs(true);
    if engine.aborted {
        return Outcome::Unknown;
    }
    let mut colorings: Vec<TwoColoring> = engine
        .found
        .iter()
        .map(|assignment| TwoColoring {
            colors: ix
                .vertex_ids
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    (v.clone(), if assignment[i] == RED { ColorTag::Red } else { ColorTag::Blue })
                })
                .collect(),
            own: b,
            other: c,
        })
        .collect();
    colorings.sort_by(|x, y| x.colors.cmp(&y.colors));
    Outcome::Complete(colorings)
}
