//! Canonical forms and isomorphism of multigraphs.
//!
//! Parallel classes are collapsed to a weighted simple graph. Each
//! component is labelled by individualisation and refinement; the leaf
//! with the smallest weighted adjacency encoding wins. Automorphisms found
//! on the way prune sibling branches. Components are then sorted by their
//! certificates.

use std::collections::HashMap;

use crate::graph::MultiGraph;

/// Certificate together with the labelling that produced it.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// Equal for two graphs exactly when they are isomorphic.
    pub certificate: Vec<u32>,
    /// `labelling[v]` is the canonical position of vertex `v`.
    pub labelling: Vec<usize>,
}

/// Vertex and edge bijection between two isomorphic graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

pub fn canonical_form(g: &MultiGraph) -> CanonicalForm {
    let directed = g.is_directed();
    let comps = g.components();
    let mut certs: Vec<(Vec<u32>, Vec<usize>)> = comps
        .iter()
        .map(|comp| {
            let w = weights(g, comp, directed);
            let (cert, order) = Labeller::new(&w, directed).run();
            let members = order.into_iter().map(|i| comp[i]).collect();
            (cert, members)
        })
        .collect();
    certs.sort();
    let mut certificate = vec![g.n() as u32, g.m() as u32, directed as u32];
    let mut labelling = vec![0; g.n()];
    let mut next = 0;
    for (cert, members) in certs {
        certificate.push(members.len() as u32);
        certificate.extend_from_slice(&cert);
        for v in members {
            labelling[v] = next;
            next += 1;
        }
    }
    CanonicalForm { certificate, labelling }
}

pub fn certificate(g: &MultiGraph) -> Vec<u32> {
    canonical_form(g).certificate
}

/// Returns an isomorphism from `g` to `h`, if any.
pub fn is_isomorphic(g: &MultiGraph, h: &MultiGraph) -> Option<Isomorphism> {
    if g.n() != h.n() || g.m() != h.m() || g.is_directed() != h.is_directed() {
        return None;
    }
    let cg = canonical_form(g);
    let ch = canonical_form(h);
    if cg.certificate != ch.certificate {
        return None;
    }
    let mut inv = vec![0; h.n()];
    for (v, &c) in ch.labelling.iter().enumerate() {
        inv[c] = v;
    }
    let vertex_map: Vec<usize> = cg.labelling.iter().map(|&c| inv[c]).collect();
    let mut pools: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (e, &(a, b)) in h.edges().iter().enumerate() {
        pools.entry(pair_key(a, b, h.is_directed())).or_default().push(e);
    }
    for pool in pools.values_mut() {
        pool.reverse();
    }
    let mut edge_map = Vec::with_capacity(g.m());
    for &(a, b) in g.edges() {
        let key = pair_key(vertex_map[a], vertex_map[b], g.is_directed());
        edge_map.push(pools.get_mut(&key)?.pop()?);
    }
    let iso = Isomorphism { vertex_map, edge_map };
    debug_assert!(check_isomorphism(g, h, &iso));
    Some(iso)
}

/// Checks that a claimed isomorphism is a bijection preserving incidence.
pub fn check_isomorphism(g: &MultiGraph, h: &MultiGraph, iso: &Isomorphism) -> bool {
    if g.n() != h.n() || g.m() != h.m() || iso.vertex_map.len() != g.n() || iso.edge_map.len() != g.m() {
        return false;
    }
    let mut seen_v = vec![false; h.n()];
    for &v in &iso.vertex_map {
        if v >= h.n() || std::mem::replace(&mut seen_v[v], true) {
            return false;
        }
    }
    let mut seen_e = vec![false; h.m()];
    for (e, &f) in iso.edge_map.iter().enumerate() {
        if f >= h.m() || std::mem::replace(&mut seen_e[f], true) {
            return false;
        }
        let (a, b) = g.ends(e);
        let (x, y) = h.ends(f);
        let (a, b) = (iso.vertex_map[a], iso.vertex_map[b]);
        let ok = if g.is_directed() { (a, b) == (x, y) } else { (a, b) == (x, y) || (a, b) == (y, x) };
        if !ok {
            return false;
        }
    }
    true
}

fn pair_key(a: usize, b: usize, directed: bool) -> (usize, usize) {
    if directed {
        (a, b)
    } else {
        (a.min(b), a.max(b))
    }
}

fn weights(g: &MultiGraph, comp: &[usize], directed: bool) -> Vec<Vec<u32>> {
    let mut local = HashMap::new();
    for (i, &v) in comp.iter().enumerate() {
        local.insert(v, i);
    }
    let k = comp.len();
    let mut w = vec![vec![0u32; k]; k];
    for &v in comp {
        for (e, x) in g.out_edges(v) {
            let (i, j) = (local[&v], local[&x]);
            if directed {
                w[i][j] += 1;
            } else if g.ends(e).0 == v {
                w[i][j] += 1;
                w[j][i] += 1;
            }
        }
    }
    w
}

struct Labeller<'a> {
    w: &'a [Vec<u32>],
    directed: bool,
    best: Option<(Vec<u32>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl<'a> Labeller<'a> {
    fn new(w: &'a [Vec<u32>], directed: bool) -> Self {
        Labeller { w, directed, best: None, automorphisms: Vec::new() }
    }

    /// Returns the certificate and the vertices in canonical order.
    fn run(mut self) -> (Vec<u32>, Vec<usize>) {
        let k = self.w.len();
        let cells = vec![(0..k).collect::<Vec<_>>()];
        self.search(cells, &mut Vec::new());
        self.best.expect("at least one leaf")
    }

    fn key(&self, v: usize, cell: &[usize]) -> Vec<u32> {
        let mut out: Vec<u32> = cell.iter().map(|&x| self.w[v][x]).filter(|&c| c > 0).collect();
        out.sort_unstable();
        if self.directed {
            let mut back: Vec<u32> = cell.iter().map(|&x| self.w[x][v]).filter(|&c| c > 0).collect();
            back.sort_unstable();
            out.push(u32::MAX);
            out.extend(back);
        }
        out
    }

    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        loop {
            let mut changed = false;
            let mut si = 0;
            while si < cells.len() {
                let splitter = cells[si].clone();
                let mut next = Vec::with_capacity(cells.len());
                for cell in cells {
                    if cell.len() == 1 {
                        next.push(cell);
                        continue;
                    }
                    let mut keyed: Vec<(Vec<u32>, usize)> = cell.iter().map(|&v| (self.key(v, &splitter), v)).collect();
                    keyed.sort();
                    let mut start = 0;
                    for i in 1..=keyed.len() {
                        if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                            next.push(keyed[start..i].iter().map(|x| x.1).collect());
                            start = i;
                        }
                    }
                    if next.last().map(Vec::len) != Some(cell.len()) {
                        changed = true;
                    }
                }
                cells = next;
                si += 1;
            }
            if !changed {
                return cells;
            }
        }
    }

    fn encode(&self, order: &[usize]) -> Vec<u32> {
        let k = order.len();
        let mut out = Vec::with_capacity(k * k);
        for i in 0..k {
            let from = if self.directed { 0 } else { i + 1 };
            for j in from..k {
                out.push(self.w[order[i]][order[j]]);
            }
        }
        out
    }

    fn search(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        let cells = self.refine(cells);
        if let Some(target) = cells.iter().position(|c| c.len() > 1) {
            let cell = cells[target].clone();
            let mut explored: Vec<usize> = Vec::new();
            for &v in &cell {
                if !explored.is_empty() && self.same_orbit(prefix, &explored, v) {
                    continue;
                }
                let mut next = Vec::with_capacity(cells.len() + 1);
                next.extend_from_slice(&cells[..target]);
                next.push(vec![v]);
                next.push(cell.iter().copied().filter(|&x| x != v).collect());
                next.extend_from_slice(&cells[target + 1..]);
                prefix.push(v);
                self.search(next, prefix);
                prefix.pop();
                explored.push(v);
            }
            return;
        }
        let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
        let cert = self.encode(&order);
        match &self.best {
            None => self.best = Some((cert, order)),
            Some((best, best_order)) => {
                if cert < *best {
                    self.best = Some((cert, order));
                } else if cert == *best {
                    let mut gamma = vec![0; order.len()];
                    for (i, &v) in order.iter().enumerate() {
                        gamma[v] = best_order[i];
                    }
                    self.automorphisms.push(gamma);
                }
            }
        }
    }

    /// Whether `v` lies in the orbit of an explored vertex under the known
    /// automorphisms that fix the prefix pointwise.
    fn same_orbit(&self, prefix: &[usize], explored: &[usize], v: usize) -> bool {
        let k = self.w.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gamma in &self.automorphisms {
            if prefix.iter().all(|&x| gamma[x] == x) {
                for x in 0..k {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, gamma[x]));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&x| find(&mut parent, x) == rv)
    }
}
