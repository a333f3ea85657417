//! Isomorph-free generation of small multigraphs.
//!
//! Graphs are grown one edge at a time and each level is reduced to one
//! representative per canonical certificate.

use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;

use crate::canon::certificate;
use crate::graph::MultiGraph;

fn dedup(children: Vec<MultiGraph>) -> Vec<MultiGraph> {
    let keyed: Vec<(Vec<u32>, MultiGraph)> = children.into_par_iter().map(|g| (certificate(&g), g)).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (c, g) in keyed {
        if seen.insert(c) {
            out.push(g);
        }
    }
    out
}

fn with_edge(g: &MultiGraph, u: usize, v: usize) -> MultiGraph {
    let mut h = g.clone();
    h.add_edge(u, v).expect("distinct ends");
    h
}

/// All multigraphs on exactly `n` vertices with `0..=max_m` edges, one per
/// isomorphism class, indexed by edge count.
pub fn multigraphs_on(n: usize, max_m: usize, simple: bool) -> Vec<Vec<MultiGraph>> {
    let mut levels = vec![vec![MultiGraph::new(n)]];
    for _ in 0..max_m {
        let last = levels.last().unwrap();
        let children: Vec<MultiGraph> = last
            .par_iter()
            .flat_map_iter(|g| {
                let mut out = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if !simple || g.multiplicity(u, v) == 0 {
                            out.push(with_edge(g, u, v));
                        }
                    }
                }
                out
            })
            .collect();
        let next = dedup(children);
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    levels
}

/// Every multigraph with at most `max_n` vertices and `max_m` edges, up to
/// isomorphism.
pub fn all_multigraphs(max_n: usize, max_m: usize) -> Vec<MultiGraph> {
    (0..=max_n).flat_map(|n| multigraphs_on(n, max_m, false).into_iter().flatten()).collect()
}

/// Every simple graph with at most `max_n` vertices and `max_m` edges.
pub fn all_simple_graphs(max_n: usize, max_m: usize) -> Vec<MultiGraph> {
    (0..=max_n).flat_map(|n| multigraphs_on(n, max_m, true).into_iter().flatten()).collect()
}

/// Limits for [`grow_connected`].
#[derive(Clone, Debug)]
pub struct GrowthLimits {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_degree: usize,
    pub max_candidates: usize,
    pub deadline: Option<Instant>,
}

#[derive(Clone, Debug)]
pub struct Growth {
    pub graphs: Vec<MultiGraph>,
    pub candidates: usize,
    /// False when a limit on candidates or time cut the search short.
    pub exhaustive: bool,
}

/// Connected multigraphs within the limits, grown from `K_1` one edge at a
/// time. `keep` must be monotone: if it rejects a graph it rejects every
/// connected supergraph, so rejected graphs are not extended.
pub fn grow_connected(limits: &GrowthLimits, keep: impl Fn(&MultiGraph) -> bool + Sync) -> Growth {
    let mut all = Vec::new();
    let mut level = vec![MultiGraph::new(1)];
    let mut candidates = 0;
    let mut exhaustive = true;
    if keep(&level[0]) {
        all.push(level[0].clone());
    } else {
        level.clear();
    }
    for _ in 0..limits.max_edges {
        if level.is_empty() {
            break;
        }
        if limits.deadline.is_some_and(|d| Instant::now() > d) || candidates > limits.max_candidates {
            exhaustive = false;
            break;
        }
        let children: Vec<MultiGraph> = level
            .par_iter()
            .flat_map_iter(|g| {
                let n = g.n();
                let mut out = Vec::new();
                for u in 0..n {
                    if g.degree(u) >= limits.max_degree {
                        continue;
                    }
                    for v in u + 1..n {
                        if g.degree(v) < limits.max_degree {
                            out.push(with_edge(g, u, v));
                        }
                    }
                    if n < limits.max_vertices {
                        let mut h = g.clone();
                        let w = h.add_vertex();
                        h.add_edge(u, w).unwrap();
                        out.push(h);
                    }
                }
                out
            })
            .filter(|h| keep(h))
            .collect();
        candidates += children.len();
        level = dedup(children);
        all.extend(level.iter().cloned());
    }
    Growth { graphs: all, candidates, exhaustive }
}
