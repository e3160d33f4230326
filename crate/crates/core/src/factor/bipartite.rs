//! Edge coloring of bipartite multigraphs with `delta` colors.
//!
//! Each edge is inserted in turn: if some color is free at both endpoints it
//! is used directly, otherwise the alternating two-color path starting at the
//! second endpoint is flipped to free one up. In a bipartite graph that path
//! can never reach the first endpoint, so the flip always succeeds. On a
//! `k`-regular bipartite multigraph with `delta = k` the color classes are
//! perfect matchings.

const NONE: usize = usize::MAX;

/// Colors the edges `(u, v)` of a bipartite multigraph with maximum degree at
/// most `delta` using colors `0..delta`. Returns one color per edge, in the
/// input order. Endpoints are vertex indices below `n`.
pub(crate) fn color_bipartite_edges(
    n: usize,
    edges: &[(usize, usize)],
    delta: usize,
) -> Vec<usize> {
    let mut color: Vec<usize> = vec![NONE; edges.len()];
    // slot[v][c]: edge currently colored c at v.
    let mut slot: Vec<Vec<usize>> = vec![vec![NONE; delta]; n];

    let free = |slot: &Vec<Vec<usize>>, v: usize| -> usize {
        (0..delta).find(|&c| slot[v][c] == NONE).expect("degree exceeds delta")
    };

    for (idx, &(u, v)) in edges.iter().enumerate() {
        let a = free(&slot, u);
        let b = free(&slot, v);
        if slot[v][a] == NONE {
            color[idx] = a;
            slot[u][a] = idx;
            slot[v][a] = idx;
            continue;
        }
        // Flip the a/b alternating path starting from v.
        let mut path = Vec::new();
        let mut cur = v;
        let mut want = a;
        while slot[cur][want] != NONE {
            let e = slot[cur][want];
            path.push(e);
            let (x, y) = edges[e];
            cur = if x == cur { y } else { x };
            want = if want == a { b } else { a };
        }
        for &e in &path {
            let old = color[e];
            let (x, y) = edges[e];
            if slot[x][old] == e {
                slot[x][old] = NONE;
            }
            if slot[y][old] == e {
                slot[y][old] = NONE;
            }
        }
        for &e in &path {
            let new = if color[e] == a { b } else { a };
            color[e] = new;
            let (x, y) = edges[e];
            slot[x][new] = e;
            slot[y][new] = e;
        }
        debug_assert_eq!(slot[v][a], NONE);
        color[idx] = a;
        slot[u][a] = idx;
        slot[v][a] = idx;
    }
    color
}
