//! The complete cover search.
//!
//! Phase A assigns vertex images in BFS order (highest-degree root first) and
//! prunes with necessary conditions: degree equality, per-vertex semi-edge
//! and loop budgets, fibre-size caps for connected targets, and running
//! cross-edge counts that may never exceed the bar multiplicities or the
//! required fibre-internal degree. A completed assignment is accepted only if
//! it is exactly degree-obedient. Phase B then labels each source edge with a
//! target edge under per-vertex capacity counts (one incidence per bar and
//! semi-edge, two per loop), which encodes local bijectivity exactly.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::cover::{verify_cover, CoverMap};
use crate::graph::Graph;
use crate::indexed::{Ends, IndexedGraph};

use super::{CoverOutcome, SearchBudget};

const NONE: usize = usize::MAX;

pub(super) fn solve(g: &Graph, h: &Graph, budget: &SearchBudget) -> CoverOutcome {
    let mut clock = Clock::new(budget);
    if h.vertex_count() == 0 {
        return if g.vertex_count() == 0 {
            CoverOutcome::Yes(CoverMap::new())
        } else {
            CoverOutcome::No
        };
    }
    if g.vertex_count() == 0 {
        // Fibres must be nonempty.
        return CoverOutcome::No;
    }

    let components = g.connected_components();
    if h.is_connected() && components.len() > 1 {
        let mut merged = CoverMap::new();
        for comp in &components {
            match solve_connected(comp, h, &mut clock) {
                CoverOutcome::Yes(map) => {
                    merged.vertex_map.extend(map.vertex_map);
                    merged.edge_map.extend(map.edge_map);
                }
                other => return other,
            }
        }
        debug_assert!(verify_cover(g, h, &merged).map(|r| r.ok()).unwrap_or(false));
        return CoverOutcome::Yes(merged);
    }
    solve_connected(g, h, &mut clock)
}

struct Clock {
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
}

impl Clock {
    fn new(budget: &SearchBudget) -> Self {
        Clock {
            nodes: 0,
            max_nodes: budget.max_nodes,
            deadline: budget.time_limit.map(|d| Instant::now() + d),
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes >= self.max_nodes {
            return false;
        }
        if let Some(deadline) = self.deadline {
            if self.nodes.is_multiple_of(1024) && Instant::now() >= deadline {
                return false;
            }
        }
        true
    }
}

fn solve_connected(g: &Graph, h: &Graph, clock: &mut Clock) -> CoverOutcome {
    let gx = IndexedGraph::new(g);
    let hx = IndexedGraph::new(h);
    let mut search = match Search::prepare(&gx, &hx, clock) {
        Ok(s) => s,
        Err(outcome) => return outcome,
    };
    match search.assign_vertices(0) {
        Step::Found => {
            let map = search.extract(g);
            debug_assert!(verify_cover(g, h, &map).map(|r| r.ok()).unwrap_or(false));
            CoverOutcome::Yes(map)
        }
        Step::Exhausted => CoverOutcome::No,
        Step::Aborted => CoverOutcome::Unknown,
    }
}

enum Step {
    Found,
    Exhausted,
    Aborted,
}

fn hx_connected(hx: &IndexedGraph) -> bool {
    let n = hx.vertex_count();
    if n <= 1 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &(v, _) in &hx.adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == n
}

struct Search<'a> {
    gx: &'a IndexedGraph,
    hx: &'a IndexedGraph,
    clock: &'a mut Clock,
    // Target shape.
    h_semi: Vec<usize>,
    h_loop: Vec<usize>,
    /// Bar multiplicity between each pair of target vertices.
    bars: Vec<Vec<usize>>,
    /// Semi/loop/bar edge indices at each target vertex, in id order.
    h_semis_at: Vec<Vec<usize>>,
    h_loops_at: Vec<Vec<usize>>,
    h_bars_between: BTreeMap<(usize, usize), Vec<usize>>,
    // Source shape.
    g_semi: Vec<usize>,
    g_loop: Vec<usize>,
    /// Fibre-internal ordinary degree each vertex must reach per candidate.
    /// r_req[x][u] = semi(u) + 2 loop(u) - semi(x) - 2 loop(x), or NONE.
    candidates: Vec<Vec<usize>>,
    order: Vec<usize>,
    fibre_cap: usize,
    // State.
    image: Vec<usize>,
    fibre_size: Vec<usize>,
    empty_fibres: usize,
    assigned: usize,
    /// cross[x][v]: edges from x to already-assigned neighbors with image v.
    cross: Vec<Vec<usize>>,
    edge_order: Vec<usize>,
    edge_image: Vec<usize>,
    /// cap[x][he]: remaining incidences of target edge `he` at source vertex x.
    cap: Vec<Vec<u8>>,
}

impl<'a> Search<'a> {
    fn prepare(
        gx: &'a IndexedGraph,
        hx: &'a IndexedGraph,
        clock: &'a mut Clock,
    ) -> Result<Search<'a>, CoverOutcome> {
        let ng = gx.vertex_count();
        let nh = hx.vertex_count();
        let h_semi: Vec<usize> = (0..nh).map(|u| hx.semis_at[u].len()).collect();
        let h_loop: Vec<usize> = (0..nh).map(|u| hx.loops_at[u].len()).collect();
        let h_degree: Vec<usize> = (0..nh).map(|u| hx.degree(u)).collect();
        let mut bars = vec![vec![0usize; nh]; nh];
        let mut h_bars_between: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for e in 0..hx.edge_count() {
            if let Ends::Between(u, v) = hx.ends[e] {
                bars[u][v] += 1;
                bars[v][u] += 1;
                let key = (u.min(v), u.max(v));
                h_bars_between.entry(key).or_default().push(e);
            }
        }
        let g_semi: Vec<usize> = (0..ng).map(|x| gx.semis_at[x].len()).collect();
        let g_loop: Vec<usize> = (0..ng).map(|x| gx.loops_at[x].len()).collect();

        // Fibres of a connected target all have the same size. Disconnected
        // targets get no cap; the surjectivity and bar-multiplicity prunes
        // still force every fibre nonempty by the time the assignment
        // completes.
        let fibre_cap = if hx_connected(hx) {
            if !ng.is_multiple_of(nh) {
                return Err(CoverOutcome::No);
            }
            ng / nh
        } else {
            ng
        };

        let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(ng);
        for x in 0..ng {
            let list: Vec<usize> = (0..nh)
                .filter(|&u| {
                    h_degree[u] == gx.degree(x)
                        && g_semi[x] <= h_semi[u]
                        && g_loop[x] <= h_loop[u]
                })
                .collect();
            if list.is_empty() {
                return Err(CoverOutcome::No);
            }
            candidates.push(list);
        }

        // Index-symmetric two-vertex targets: fixing the first image removes
        // the swap symmetry.
        if nh == 2 && h_semi[0] == h_semi[1] && h_loop[0] == h_loop[1] {
            candidates[0].retain(|&u| u == 0);
        }

        // BFS order from the highest-degree vertex keeps assigned neighbors
        // close so the cross-count pruning bites early.
        let root = (0..ng).max_by_key(|&x| (gx.degree(x), usize::MAX - x)).unwrap();
        let mut order = Vec::with_capacity(ng);
        let mut seen = vec![false; ng];
        let mut queue = std::collections::VecDeque::from([root]);
        seen[root] = true;
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &(y, _) in &gx.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        for x in 0..ng {
            if !seen[x] {
                order.push(x);
            }
        }

        // Edges in first-touched order.
        let rank = {
            let mut rank = vec![0usize; ng];
            for (i, &x) in order.iter().enumerate() {
                rank[x] = i;
            }
            rank
        };
        let mut edge_order: Vec<usize> = (0..gx.edge_count()).collect();
        edge_order.sort_by_key(|&e| {
            let key = match gx.ends[e] {
                Ends::Semi(x) | Ends::Loop(x) => rank[x],
                Ends::Between(x, y) => rank[x].min(rank[y]),
            };
            (key, e)
        });

        Ok(Search {
            gx,
            hx,
            clock,
            h_semi,
            h_loop,
            bars,
            h_semis_at: hx.semis_at.clone(),
            h_loops_at: hx.loops_at.clone(),
            h_bars_between,
            g_semi,
            g_loop,
            candidates,
            order,
            fibre_cap,
            image: vec![NONE; ng],
            fibre_size: vec![0; nh],
            empty_fibres: nh,
            assigned: 0,
            cross: vec![vec![0; nh]; ng],
            edge_order,
            edge_image: vec![NONE; gx.edge_count()],
            cap: Vec::new(),
        })
    }

    fn r_req(&self, x: usize, u: usize) -> usize {
        self.h_semi[u] + 2 * self.h_loop[u] - self.g_semi[x] - 2 * self.g_loop[x]
    }

    /// Running cross-count limit from `x` (imaged at `u`) toward fibre `v`.
    fn limit(&self, x: usize, u: usize, v: usize) -> usize {
        if u == v {
            self.r_req(x, u)
        } else {
            self.bars[u][v]
        }
    }

    fn unassign(&mut self, x: usize) {
        let u = self.image[x];
        self.image[x] = NONE;
        for &(y, _) in &self.gx.adj[x] {
            let v = self.image[y];
            if v == NONE {
                continue;
            }
            self.cross[x][v] -= 1;
            self.cross[y][u] -= 1;
        }
        self.fibre_size[u] -= 1;
        if self.fibre_size[u] == 0 {
            self.empty_fibres += 1;
        }
        self.assigned -= 1;
    }

    /// Final exact degree-obedience of a completed vertex assignment.
    fn obedient(&self) -> bool {
        for x in 0..self.gx.vertex_count() {
            let u = self.image[x];
            for v in 0..self.hx.vertex_count() {
                if self.cross[x][v] != self.limit(x, u, v) {
                    return false;
                }
            }
        }
        true
    }

    fn assign_vertices(&mut self, depth: usize) -> Step {
        if depth == self.order.len() {
            if !self.obedient() {
                return Step::Exhausted;
            }
            return self.assign_edges();
        }
        let x = self.order[depth];
        for i in 0..self.candidates[x].len() {
            let u = self.candidates[x][i];
            if !self.clock.tick() {
                return Step::Aborted;
            }
            if self.try_assign(x, u) {
                match self.assign_vertices(depth + 1) {
                    Step::Exhausted => self.unassign(x),
                    done => return done,
                }
            }
        }
        Step::Exhausted
    }

    /// Claims fibre `u` for `x` if the running feasibility checks allow it,
    /// rolling back its partial cross-count updates when they do not.
    fn try_assign(&mut self, x: usize, u: usize) -> bool {
        if self.fibre_size[u] == self.fibre_cap {
            return false;
        }
        let empties_after = self.empty_fibres - usize::from(self.fibre_size[u] == 0);
        let unassigned_after = self.gx.vertex_count() - self.assigned - 1;
        if empties_after > unassigned_after {
            return false;
        }
        let mut done = 0;
        let adj_len = self.gx.adj[x].len();
        let mut ok = true;
        for i in 0..adj_len {
            let (y, _) = self.gx.adj[x][i];
            let v = self.image[y];
            if v == NONE {
                done += 1;
                continue;
            }
            if self.cross[x][v] + 1 > self.limit(x, u, v)
                || self.cross[y][u] + 1 > self.limit(y, v, u)
            {
                ok = false;
                break;
            }
            self.cross[x][v] += 1;
            self.cross[y][u] += 1;
            done += 1;
        }
        if !ok {
            for i in 0..done {
                let (y, _) = self.gx.adj[x][i];
                let v = self.image[y];
                if v == NONE {
                    continue;
                }
                self.cross[x][v] -= 1;
                self.cross[y][u] -= 1;
            }
            return false;
        }
        self.image[x] = u;
        self.fibre_size[u] += 1;
        if self.fibre_size[u] == 1 {
            self.empty_fibres -= 1;
        }
        self.assigned += 1;
        true
    }

    // Phase B: label edges under per-vertex capacities.

    fn init_caps(&mut self) {
        let ng = self.gx.vertex_count();
        let mh = self.hx.edge_count();
        self.cap = vec![vec![0u8; mh]; ng];
        for x in 0..ng {
            let u = self.image[x];
            for &he in &self.h_semis_at[u] {
                self.cap[x][he] = 1;
            }
            for &he in &self.h_loops_at[u] {
                self.cap[x][he] = 2;
            }
            for (&(a, b), list) in &self.h_bars_between {
                if a == u || b == u {
                    for &he in list {
                        self.cap[x][he] = 1;
                    }
                }
            }
        }
    }

    fn edge_candidates(&self, e: usize) -> Vec<usize> {
        match self.gx.ends[e] {
            Ends::Semi(x) => {
                let u = self.image[x];
                self.h_semis_at[u].iter().copied().filter(|&he| self.cap[x][he] >= 1).collect()
            }
            Ends::Loop(x) => {
                let u = self.image[x];
                self.h_loops_at[u].iter().copied().filter(|&he| self.cap[x][he] >= 2).collect()
            }
            Ends::Between(x, y) => {
                let (u, v) = (self.image[x], self.image[y]);
                if u == v {
                    let semis = self.h_semis_at[u].iter().copied();
                    let loops = self.h_loops_at[u].iter().copied();
                    semis
                        .chain(loops)
                        .filter(|&he| self.cap[x][he] >= 1 && self.cap[y][he] >= 1)
                        .collect()
                } else {
                    let key = (u.min(v), u.max(v));
                    match self.h_bars_between.get(&key) {
                        None => Vec::new(),
                        Some(list) => list
                            .iter()
                            .copied()
                            .filter(|&he| self.cap[x][he] >= 1 && self.cap[y][he] >= 1)
                            .collect(),
                    }
                }
            }
        }
    }

    fn consume(&mut self, e: usize, he: usize, sign: i8) {
        let delta = |cap: &mut u8, amount: u8| {
            if sign > 0 {
                *cap -= amount;
            } else {
                *cap += amount;
            }
        };
        match self.gx.ends[e] {
            Ends::Semi(x) => delta(&mut self.cap[x][he], 1),
            Ends::Loop(x) => delta(&mut self.cap[x][he], 2),
            Ends::Between(x, y) => {
                delta(&mut self.cap[x][he], 1);
                delta(&mut self.cap[y][he], 1);
            }
        }
    }

    fn assign_edges(&mut self) -> Step {
        self.init_caps();
        self.edge_image.fill(NONE);
        self.assign_edge_at(0)
    }

    fn assign_edge_at(&mut self, pos: usize) -> Step {
        if pos == self.edge_order.len() {
            return Step::Found;
        }
        let e = self.edge_order[pos];
        for he in self.edge_candidates(e) {
            if !self.clock.tick() {
                return Step::Aborted;
            }
            self.edge_image[e] = he;
            self.consume(e, he, 1);
            match self.assign_edge_at(pos + 1) {
                Step::Exhausted => {
                    self.consume(e, he, -1);
                    self.edge_image[e] = NONE;
                }
                done => return done,
            }
        }
        Step::Exhausted
    }

    fn extract(&self, g: &Graph) -> CoverMap {
        let mut map = CoverMap::new();
        for x in 0..self.gx.vertex_count() {
            map.map_vertex(
                self.gx.vertex_ids[x].clone(),
                self.hx.vertex_ids[self.image[x]].clone(),
            );
        }
        for e in 0..self.gx.edge_count() {
            map.map_edge(self.gx.edge_ids[e].clone(), self.hx.edge_ids[self.edge_image[e]].clone());
        }
        debug_assert_eq!(map.vertex_map.len(), g.vertex_count());
        map
    }
}
