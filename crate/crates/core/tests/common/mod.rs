//! Seeded random graph generators shared by the integration suites.

#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use semicover::graph::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected simple graph on `2..=n_max` vertices with maximum degree
/// `max_deg`: a random spanning tree plus extra edges under the cap.
pub fn connected_simple(rng: &mut ChaCha8Rng, n_max: usize, max_deg: usize) -> Graph {
    let n = rng.random_range(2..=n_max);
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    let mut degree = vec![0usize; n];
    let mut id = 0;
    let add = |g: &mut Graph, degree: &mut Vec<usize>, i: usize, j: usize, id: &mut usize| {
        g.add_edge(format!("e{id}"), format!("v{i}"), format!("v{j}")).unwrap();
        degree[i] += 1;
        degree[j] += 1;
        *id += 1;
    };
    for i in 1..n {
        // Attach to an earlier vertex with spare degree.
        let candidates: Vec<usize> = (0..i).filter(|&j| degree[j] < max_deg).collect();
        let j = candidates[rng.random_range(0..candidates.len())];
        add(&mut g, &mut degree, j, i, &mut id);
    }
    let extra = rng.random_range(0..=n);
    for _ in 0..extra {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i == j || degree[i] >= max_deg || degree[j] >= max_deg {
            continue;
        }
        let (a, b) = (i.min(j), i.max(j));
        if g.ordinary_edges().any(|(_, u, v)| {
            u.as_str() == format!("v{a}") && v.as_str() == format!("v{b}")
        }) {
            continue;
        }
        add(&mut g, &mut degree, a, b, &mut id);
    }
    g
}

/// Exactly `d`-regular multigraph on `n` vertices via stub pairing: each
/// vertex contributes `d` stubs, a shuffled pairing produces ordinary edges,
/// parallel edges and loops; with probability `semi_prob` a pair is split
/// into two semi-edges instead.
pub fn regular_multigraph(
    rng: &mut ChaCha8Rng,
    n: usize,
    d: usize,
    semi_prob: f64,
) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, d)).collect();
    stubs.shuffle(rng);
    let mut id = 0;
    while let (Some(a), Some(b)) = (stubs.pop(), stubs.pop()) {
        if rng.random_bool(semi_prob) {
            g.add_semi_edge(format!("s{id}"), format!("v{a}")).unwrap();
            id += 1;
            g.add_semi_edge(format!("s{id}"), format!("v{b}")).unwrap();
            id += 1;
        } else if a == b {
            g.add_loop(format!("l{id}"), format!("v{a}")).unwrap();
            id += 1;
        } else {
            g.add_edge(format!("e{id}"), format!("v{a}"), format!("v{b}")).unwrap();
            id += 1;
        }
    }
    if let Some(last) = stubs.pop() {
        // Odd stub count: close it with a semi-edge, keeping d-regularity.
        g.add_semi_edge(format!("s{id}"), format!("v{last}")).unwrap();
    }
    g
}

/// Random multigraph with every feature: vertices up to `n_max`, ordinary
/// edges, parallel duplicates, loops and semi-edges, degrees capped.
pub fn messy_multigraph(rng: &mut ChaCha8Rng, n_max: usize, max_deg: usize) -> Graph {
    let n = rng.random_range(1..=n_max);
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    let mut degree = vec![0usize; n];
    let mut id = 0;
    for _ in 0..(2 * n) {
        let i = rng.random_range(0..n);
        match rng.random_range(0..10) {
            0 if degree[i] + 2 <= max_deg => {
                g.add_loop(format!("l{id}"), format!("v{i}")).unwrap();
                degree[i] += 2;
            }
            1 | 2 if degree[i] < max_deg => {
                g.add_semi_edge(format!("s{id}"), format!("v{i}")).unwrap();
                degree[i] += 1;
            }
            _ => {
                let j = rng.random_range(0..n);
                if i != j && degree[i] < max_deg && degree[j] < max_deg {
                    g.add_edge(format!("e{id}"), format!("v{i}"), format!("v{j}")).unwrap();
                    degree[i] += 1;
                    degree[j] += 1;
                }
            }
        }
        id += 1;
    }
    g
}

/// Bipartite multigraph without semi-edges or loops; parallel edges allowed.
pub fn bipartite_multigraph(rng: &mut ChaCha8Rng, side_max: usize, max_deg: usize) -> Graph {
    let left = rng.random_range(1..=side_max);
    let right = rng.random_range(1..=side_max);
    let mut g = Graph::new();
    for i in 0..left {
        g.add_vertex(format!("a{i}")).unwrap();
    }
    for j in 0..right {
        g.add_vertex(format!("b{j}")).unwrap();
    }
    let mut ldeg = vec![0usize; left];
    let mut rdeg = vec![0usize; right];
    let attempts = rng.random_range(0..=(2 * (left + right)));
    for id in 0..attempts {
        let i = rng.random_range(0..left);
        let j = rng.random_range(0..right);
        if ldeg[i] < max_deg && rdeg[j] < max_deg {
            g.add_edge(format!("e{id}"), format!("a{i}"), format!("b{j}")).unwrap();
            ldeg[i] += 1;
            rdeg[j] += 1;
        }
    }
    g
}

/// `k`-regular bipartite multigraph on two sides of `n` vertices: the union
/// of `k` random perfect matchings, so parallel edges happen routinely.
pub fn regular_bipartite_multigraph(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(format!("a{i}")).unwrap();
        g.add_vertex(format!("b{i}")).unwrap();
    }
    let mut id = 0;
    for _ in 0..k {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        for (i, &j) in perm.iter().enumerate() {
            g.add_edge(format!("e{id}"), format!("a{i}"), format!("b{j}")).unwrap();
            id += 1;
        }
    }
    g
}

/// `2c`-regular multigraph (loops and parallel edges allowed, no
/// semi-edges) by pairing all stubs.
pub fn even_regular_multigraph(rng: &mut ChaCha8Rng, n: usize, c: usize) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, 2 * c)).collect();
    stubs.shuffle(rng);
    let mut id = 0;
    while let (Some(a), Some(b)) = (stubs.pop(), stubs.pop()) {
        if a == b {
            g.add_loop(format!("l{id}"), format!("v{a}")).unwrap();
        } else {
            g.add_edge(format!("e{id}"), format!("v{a}"), format!("v{b}")).unwrap();
        }
        id += 1;
    }
    g
}

/// Random 2-lift of `h`: every vertex doubles, every ordinary edge lifts
/// straight or crossed, every semi-edge lifts to two semi-edges or a rung
/// (always a rung when `semi_free` is set), every loop to two loops or a
/// parallel rung pair. The result covers `h` by construction.
pub fn random_two_lift(rng: &mut ChaCha8Rng, h: &Graph, semi_free: bool) -> Graph {
    let mut g = Graph::new();
    for v in h.vertices() {
        g.add_vertex(format!("{v}.0")).unwrap();
        g.add_vertex(format!("{v}.1")).unwrap();
    }
    for (e, inc) in h.edges() {
        match inc {
            semicover::graph::Incidence::Between(u, v) => {
                let crossed = rng.random_bool(0.5);
                for side in 0..2 {
                    let other = if crossed { 1 - side } else { side };
                    g.add_edge(format!("{e}.{side}"), format!("{u}.{side}"), format!("{v}.{other}"))
                        .unwrap();
                }
            }
            semicover::graph::Incidence::Semi(u) => {
                if !semi_free && rng.random_bool(0.5) {
                    g.add_semi_edge(format!("{e}.0"), format!("{u}.0")).unwrap();
                    g.add_semi_edge(format!("{e}.1"), format!("{u}.1")).unwrap();
                } else {
                    g.add_edge(format!("{e}.x"), format!("{u}.0"), format!("{u}.1")).unwrap();
                }
            }
            semicover::graph::Incidence::Loop(u) => {
                if rng.random_bool(0.5) {
                    g.add_loop(format!("{e}.0"), format!("{u}.0")).unwrap();
                    g.add_loop(format!("{e}.1"), format!("{u}.1")).unwrap();
                } else {
                    g.add_edge(format!("{e}.0"), format!("{u}.0"), format!("{u}.1")).unwrap();
                    g.add_edge(format!("{e}.1"), format!("{u}.0"), format!("{u}.1")).unwrap();
                }
            }
        }
    }
    g
}
