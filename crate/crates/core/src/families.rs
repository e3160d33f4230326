//! Constructors for the standard small graphs used throughout the tests and
//! the command line examples.

use crate::graph::Graph;

/// Cycle on `n` vertices `v0 .. v{n-1}`. `n = 1` yields a single loop and
/// `n = 2` a pair of parallel edges, keeping the graph 2-regular for all `n`.
pub fn cycle(n: usize) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    match n {
        0 => {}
        1 => g.add_loop("e0", "v0").unwrap(),
        _ => {
            for i in 0..n {
                g.add_edge(format!("e{i}"), format!("v{i}"), format!("v{}", (i + 1) % n))
                    .unwrap();
            }
        }
    }
    g
}

/// Path on `n` vertices `v0 .. v{n-1}`.
pub fn path(n: usize) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    for i in 0..n.saturating_sub(1) {
        g.add_edge(format!("e{i}"), format!("v{i}"), format!("v{}", i + 1)).unwrap();
    }
    g
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    for i in 0..n {
        for j in (i + 1)..n {
            g.add_edge(format!("e{i}_{j}"), format!("v{i}"), format!("v{j}")).unwrap();
        }
    }
    g
}

/// Complete bipartite graph with parts `a0 ..` and `b0 ..`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new();
    for i in 0..a {
        g.add_vertex(format!("a{i}")).unwrap();
    }
    for j in 0..b {
        g.add_vertex(format!("b{j}")).unwrap();
    }
    for i in 0..a {
        for j in 0..b {
            g.add_edge(format!("e{i}_{j}"), format!("a{i}"), format!("b{j}")).unwrap();
        }
    }
    g
}

/// The Petersen graph: outer 5-cycle, inner 5-star, spokes.
pub fn petersen() -> Graph {
    let mut g = Graph::new();
    for i in 0..5 {
        g.add_vertex(format!("o{i}")).unwrap();
        g.add_vertex(format!("i{i}")).unwrap();
    }
    for i in 0..5 {
        g.add_edge(format!("out{i}"), format!("o{i}"), format!("o{}", (i + 1) % 5)).unwrap();
        g.add_edge(format!("spoke{i}"), format!("o{i}"), format!("i{i}")).unwrap();
        g.add_edge(format!("in{i}"), format!("i{i}"), format!("i{}", (i + 2) % 5)).unwrap();
    }
    g
}

/// The 3-dimensional cube graph on vertices `000 .. 111`.
pub fn cube() -> Graph {
    let mut g = Graph::new();
    let name = |x: usize| format!("{:03b}", x);
    for x in 0..8 {
        g.add_vertex(name(x)).unwrap();
    }
    for x in 0..8usize {
        for bit in 0..3 {
            let y = x ^ (1 << bit);
            if x < y {
                g.add_edge(format!("e{}_{}", name(x), name(y)), name(x), name(y)).unwrap();
            }
        }
    }
    g
}
