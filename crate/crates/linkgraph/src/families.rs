//! Standard graph families and random graphs.

use rand::Rng;

use crate::graph::MultiGraph;

fn build(n: usize, edges: &[(usize, usize)]) -> MultiGraph {
    MultiGraph::from_edges(n, edges).expect("family graphs are loopless")
}

pub fn complete(n: usize) -> MultiGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    build(n, &edges)
}

/// `C_n` for `n ≥ 3`; `n = 2` gives the 2-cycle.
pub fn cycle(n: usize) -> MultiGraph {
    assert!(n >= 2);
    build(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

/// Path with `len` edges.
pub fn path(len: usize) -> MultiGraph {
    build(len + 1, &(0..len).map(|i| (i, i + 1)).collect::<Vec<_>>())
}

/// Two vertices joined by `t` parallel edges.
pub fn dipole(t: usize) -> MultiGraph {
    build(2, &vec![(0, 1); t])
}

pub fn star(leaves: usize) -> MultiGraph {
    build(leaves + 1, &(1..=leaves).map(|i| (0, i)).collect::<Vec<_>>())
}

pub fn complete_bipartite(a: usize, b: usize) -> MultiGraph {
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    build(a + b, &edges)
}

pub fn empty(n: usize) -> MultiGraph {
    MultiGraph::new(n)
}

pub fn petersen() -> MultiGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, &edges)
}

/// Every edge replaced by a path of length `k`.
pub fn subdivision(g: &MultiGraph, k: usize) -> MultiGraph {
    assert!(k >= 1);
    let mut out = MultiGraph::new(g.n());
    for &(a, b) in g.edges() {
        let mut prev = a;
        for _ in 1..k {
            let w = out.add_vertex();
            out.add_edge(prev, w).unwrap();
            prev = w;
        }
        out.add_edge(prev, b).unwrap();
    }
    out
}

/// Star whose legs are paths of the given lengths.
pub fn spider(legs: &[usize]) -> MultiGraph {
    let mut out = MultiGraph::new(1);
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            let w = out.add_vertex();
            out.add_edge(prev, w).unwrap();
            prev = w;
        }
    }
    out
}

/// Pastes one end of a new path of length `len` at vertex `v`.
pub fn paste_path(g: &MultiGraph, v: usize, len: usize) -> MultiGraph {
    let mut out = g.with_dense_ids();
    let mut prev = v;
    for _ in 0..len {
        let w = out.add_vertex();
        out.add_edge(prev, w).unwrap();
        prev = w;
    }
    out
}

/// `m` edges between uniformly chosen distinct vertex pairs.
pub fn random_multigraph<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> MultiGraph {
    let mut g = MultiGraph::new(n);
    if n < 2 {
        return g;
    }
    for _ in 0..m {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        g.add_edge(a, b).unwrap();
    }
    g
}

/// Simple graph where each pair is an edge with probability `p`.
pub fn random_simple<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> MultiGraph {
    let mut g = MultiGraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

/// Random recursive tree on `n ≥ 1` vertices.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> MultiGraph {
    let mut g = MultiGraph::new(n);
    for v in 1..n {
        let p = rng.gen_range(0..v);
        g.add_edge(p, v).unwrap();
    }
    g
}
