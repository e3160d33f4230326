//! 2-factorization of even-regular multigraphs.
//!
//! Every component of a `2c`-regular multigraph without semi-edges carries an
//! Euler circuit. Orienting each edge along the circuit balances in- and
//! out-degrees at `c`, so the bipartite out/in split graph is `c`-regular and
//! its color classes, pulled back to the original edges, are spanning
//! 2-factors. A loop appears as the split edge `u+ u-` and lands inside a
//! factor as a single element of weight two.

use std::collections::BTreeSet;

use crate::graph::Graph;
use crate::indexed::{Ends, IndexedGraph};

use super::{color_bipartite_edges, EdgeSubset, FactorError, SubsetRole};

/// Orients every edge along Euler circuits, one per component. `ends` must
/// contain only loops and ordinary edges.
fn euler_orientation(ix: &IndexedGraph) -> Vec<(usize, usize)> {
    let n = ix.vertex_count();
    let m = ix.edge_count();
    // Incidence lists: loops appear once, ordinary edges at both endpoints.
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in 0..m {
        match ix.ends[e] {
            Ends::Loop(u) => incident[u].push(e),
            Ends::Between(u, v) => {
                incident[u].push(e);
                incident[v].push(e);
            }
            Ends::Semi(_) => unreachable!("semi-edges rejected before orientation"),
        }
    }
    let mut next = vec![0usize; n];
    let mut used = vec![false; m];
    let mut orientation = vec![(usize::MAX, usize::MAX); m];
    for start in 0..n {
        // Hierholzer from every yet-unexhausted vertex; each walk closes into
        // a circuit because all degrees are even.
        let mut stack = vec![start];
        while let Some(&v) = stack.last() {
            let mut advanced = false;
            while next[v] < incident[v].len() {
                let e = incident[v][next[v]];
                next[v] += 1;
                if used[e] {
                    continue;
                }
                used[e] = true;
                let w = match ix.ends[e] {
                    Ends::Loop(u) => u,
                    Ends::Between(a, b) => {
                        if a == v {
                            b
                        } else {
                            a
                        }
                    }
                    Ends::Semi(_) => unreachable!(),
                };
                orientation[e] = (v, w);
                stack.push(w);
                advanced = true;
                break;
            }
            if !advanced {
                stack.pop();
            }
        }
    }
    orientation
}

pub(super) fn two_factorization(g: &Graph) -> Result<Vec<EdgeSubset>, FactorError> {
    if g.semi_edges().next().is_some() {
        return Err(FactorError::SemiEdgesPresent);
    }
    let ix = IndexedGraph::new(g);
    let degrees: Vec<usize> = (0..ix.vertex_count()).map(|u| ix.degree(u)).collect();
    for (u, &d) in degrees.iter().enumerate() {
        if d % 2 != 0 {
            return Err(FactorError::OddDegree(ix.vertex_ids[u].clone()));
        }
    }
    let two_c = match degrees.first() {
        None => return Ok(Vec::new()),
        Some(&d) => d,
    };
    for (u, &d) in degrees.iter().enumerate() {
        if d != two_c {
            return Err(FactorError::NotRegular {
                vertex: ix.vertex_ids[u].clone(),
                got: d,
                want: two_c,
            });
        }
    }
    let c = two_c / 2;
    if c == 0 {
        return Ok(Vec::new());
    }

    let orientation = euler_orientation(&ix);
    let n = ix.vertex_count();
    // Split vertices: u as a tail lives at u, u as a head at n + u.
    let split: Vec<(usize, usize)> =
        orientation.iter().map(|&(u, v)| (u, n + v)).collect();
    let colors = color_bipartite_edges(2 * n, &split, c);
    let mut factors = vec![
        EdgeSubset { role: SubsetRole::TwoFactor, edges: BTreeSet::new() };
        c
    ];
    for (e, &color) in colors.iter().enumerate() {
        factors[color].edges.insert(ix.edge_ids[e].clone());
    }
    debug_assert!(factors.iter().all(|f| f.is_two_factor(g)));
    Ok(factors)
}
