//! Extending a degree-obedient vertex map on a bipartite source to a full
//! covering projection.
//!
//! For each pair of target vertices joined by `k` bars, the cross subgraph
//! between their fibres is `k`-regular and bipartite, so its edges split into
//! `k` perfect matchings, one per bar. For a target vertex with `b`
//! semi-edges and `c` loops, each fibre vertex `u` must send exactly
//! `b - s(u)` of its fibre-internal edges onto semi-edges (`s(u)` counting
//! `u`'s own semi-edges), which is a degree-constrained subgraph question.
//! If that factor exists it is `b`-edge-colorable, the leftover colors at
//! each vertex absorb its own semi-edges, and the remaining `2c`-regular
//! graph splits into `c` spanning 2-factors, one per loop. The factor is the
//! only thing that can fail, so on semi-edge-free bipartite sources the
//! extension always succeeds.

use std::collections::{BTreeMap, BTreeSet};

use crate::cover::{is_degree_obedient, verify_cover, CoverMap};
use crate::factor::{color_bipartite_edges, g_factor, two_factorization, DegreeDemand};
use crate::graph::{EdgeId, Graph, VertexId};

use super::DecideError;

pub fn extend_obedient(
    g: &Graph,
    h: &Graph,
    f_v: &BTreeMap<VertexId, VertexId>,
) -> Result<Option<CoverMap>, DecideError> {
    if !g.is_bipartite() {
        return Err(DecideError::NotBipartite);
    }
    if !is_degree_obedient(g, h, f_v)? {
        return Err(DecideError::NotObedient);
    }

    let mut edge_map: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    let fibres: BTreeMap<&VertexId, BTreeSet<VertexId>> = h
        .vertices()
        .map(|x| {
            let members =
                f_v.iter().filter(|(_, img)| *img == x).map(|(v, _)| v.clone()).collect();
            (x, members)
        })
        .collect();

    // Bars between each pair of target vertices.
    let mut bars: BTreeMap<(&VertexId, &VertexId), Vec<&EdgeId>> = BTreeMap::new();
    for (e, x, y) in h.ordinary_edges() {
        bars.entry((x, y)).or_default().push(e);
    }
    for ((x, y), bar_ids) in &bars {
        let k = bar_ids.len();
        // Cross edges between the two fibres; local vertex indices.
        let mut locals: Vec<&VertexId> = fibres[x].iter().chain(fibres[y].iter()).collect();
        locals.sort();
        let pos: BTreeMap<&VertexId, usize> =
            locals.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut cross: Vec<(usize, usize)> = Vec::new();
        let mut cross_ids: Vec<&EdgeId> = Vec::new();
        for (e, a, b) in g.ordinary_edges() {
            let (fa, fb) = (&f_v[a], &f_v[b]);
            let spans = (fa == *x && fb == *y) || (fa == *y && fb == *x);
            if spans {
                cross.push((pos[a], pos[b]));
                cross_ids.push(e);
            }
        }
        let colors = color_bipartite_edges(locals.len(), &cross, k);
        for (i, &e) in cross_ids.iter().enumerate() {
            edge_map.insert(e.clone(), bar_ids[colors[i]].clone());
        }
    }

    // Loops and semi-edges of each target vertex, lifted from its fibre.
    for x in h.vertices() {
        let semis: Vec<&EdgeId> =
            h.semi_edges().filter(|(_, u)| *u == x).map(|(e, _)| e).collect();
        let loops: Vec<&EdgeId> = h.loops().filter(|(_, u)| *u == x).map(|(e, _)| e).collect();
        let b = semis.len();
        let c = loops.len();
        if (b == 0 && c == 0) || fibres[&x].is_empty() {
            continue;
        }
        let inside = g.induced(&fibres[&x]);

        let residual = if b == 0 {
            inside.clone()
        } else {
            let demand = DegreeDemand(
                inside
                    .vertices()
                    .map(|u| (u.clone(), b - inside.degree(u).unwrap().semi))
                    .collect(),
            );
            let Some(factor) = g_factor(&inside, &demand)
                .expect("fibre subgraph is bipartite with demands within degrees")
            else {
                return Ok(None);
            };
            // Color the factor with b colors; every vertex's factor edges get
            // distinct colors, its own semi-edges take the leftover ones.
            let locals: Vec<&VertexId> = inside.vertices().collect();
            let pos: BTreeMap<&VertexId, usize> =
                locals.iter().enumerate().map(|(i, v)| (*v, i)).collect();
            let mut fedges: Vec<(usize, usize)> = Vec::new();
            let mut fids: Vec<&EdgeId> = Vec::new();
            for e in &factor.edges {
                if let Some(crate::graph::Incidence::Between(u, v)) = inside.incidence(e) {
                    fedges.push((pos[u], pos[v]));
                    fids.push(e);
                }
            }
            let colors = color_bipartite_edges(locals.len(), &fedges, b);
            let mut used_at: BTreeMap<&VertexId, BTreeSet<usize>> = BTreeMap::new();
            for (i, &e) in fids.iter().enumerate() {
                edge_map.insert(e.clone(), semis[colors[i]].clone());
                if let Some(crate::graph::Incidence::Between(u, v)) = inside.incidence(e) {
                    used_at.entry(u).or_default().insert(colors[i]);
                    used_at.entry(v).or_default().insert(colors[i]);
                }
            }
            for u in inside.vertices() {
                let used = used_at.get(u).cloned().unwrap_or_default();
                let mut free = (0..b).filter(|i| !used.contains(i));
                for (e, _) in inside.semi_edges().filter(|(_, w)| *w == u) {
                    let slot = free.next().expect("obedience guarantees a free semi-edge slot");
                    edge_map.insert(e.clone(), semis[slot].clone());
                }
            }
            // Strip the factor and the semi-edges; the rest covers the loops.
            let mut rest = Graph::new();
            for u in inside.vertices() {
                rest.add_vertex(u.clone()).unwrap();
            }
            for (e, u, v) in inside.ordinary_edges() {
                if !factor.contains(e) {
                    rest.add_edge(e.clone(), u.clone(), v.clone()).unwrap();
                }
            }
            rest
        };

        if c == 0 {
            debug_assert_eq!(residual.edge_count(), residual.loops().count());
            continue;
        }
        let factors = two_factorization(&residual)
            .expect("obedient residual is even-regular without semi-edges");
        debug_assert_eq!(factors.len(), c);
        for (i, factor) in factors.iter().enumerate() {
            for e in &factor.edges {
                edge_map.insert(e.clone(), loops[i].clone());
            }
        }
    }

    let cover = CoverMap { vertex_map: f_v.clone(), edge_map };
    debug_assert!(verify_cover(g, h, &cover).map(|r| r.ok()).unwrap_or(false));
    Ok(Some(cover))
}
