//! Finite loopless multigraphs and digraphs.
//!
//! Vertices and edges are addressed by their position (`0..n`, `0..m`).
//! Every position also carries a stable identifier, which subgraph
//! operations preserve. Positions are ordered by identifier, so iterating
//! by position is iterating by id.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Girth of a graph without cycles.
pub const INFINITE_GIRTH: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    directed: bool,
    vertex_ids: Vec<usize>,
    edge_ids: Vec<usize>,
    ends: Vec<(usize, usize)>,
    // (edge, other end) in increasing edge order
    adj: Vec<Vec<(usize, usize)>>,
}

/// Summary statistics of a graph.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    /// `None` when the graph is acyclic.
    pub girth: Option<usize>,
    pub components: usize,
    pub acyclic_components: usize,
    pub cyclic_components: usize,
    pub degeneracy: usize,
    pub max_multiplicity: usize,
    pub simple: bool,
}

impl MultiGraph {
    /// Graph on `n` isolated vertices.
    pub fn new(n: usize) -> Self {
        MultiGraph {
            directed: false,
            vertex_ids: (0..n).collect(),
            edge_ids: Vec::new(),
            ends: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn new_directed(n: usize) -> Self {
        let mut g = Self::new(n);
        g.directed = true;
        g
    }

    /// Builds a graph whose edge ids are list positions.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph with explicit ids. `edges` holds `(id, u, v)` with
    /// `u`, `v` given as vertex ids.
    pub fn with_ids(vertex_ids: Vec<usize>, edges: &[(usize, usize, usize)]) -> Result<Self> {
        if vertex_ids.windows(2).any(|w| w[0] >= w[1]) || edges.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::UnsortedIds);
        }
        let n = vertex_ids.len();
        let mut g = MultiGraph {
            directed: false,
            vertex_ids,
            edge_ids: Vec::new(),
            ends: Vec::new(),
            adj: vec![Vec::new(); n],
        };
        for &(id, u, v) in edges {
            let pu = g.vertex_by_id(u).ok_or(Error::UnknownVertex(u))?;
            let pv = g.vertex_by_id(v).ok_or(Error::UnknownVertex(v))?;
            g.push_edge(id, pu, pv)?;
        }
        Ok(g)
    }

    /// Adds an edge between vertex positions `u` and `v`; its id is one more
    /// than the largest edge id so far.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize> {
        let id = self.edge_ids.last().map_or(0, |&x| x + 1).max(self.edge_ids.len());
        self.push_edge(id, u, v)
    }

    fn push_edge(&mut self, id: usize, u: usize, v: usize) -> Result<usize> {
        let n = self.n();
        if u >= n {
            return Err(Error::UnknownVertex(u));
        }
        if v >= n {
            return Err(Error::UnknownVertex(v));
        }
        if u == v {
            return Err(Error::LoopRejected(self.vertex_ids[u]));
        }
        let e = self.ends.len();
        self.edge_ids.push(id);
        self.ends.push((u, v));
        self.adj[u].push((e, v));
        self.adj[v].push((e, u));
        Ok(e)
    }

    pub fn add_vertex(&mut self) -> usize {
        let id = self.vertex_ids.last().map_or(0, |&x| x + 1);
        self.vertex_ids.push(id);
        self.adj.push(Vec::new());
        self.n() - 1
    }

    /// Same vertices and edges, read as arcs from first to second end.
    pub fn into_directed(mut self) -> MultiGraph {
        self.directed = true;
        self
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.ends.len()
    }

    /// Ends of edge `e`; for digraphs this is `(tail, head)`.
    pub fn ends(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.ends
    }

    /// The end of `e` other than `v`.
    pub fn other(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Incident `(edge, other end)` pairs of `v` in increasing edge order.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    /// Out-going `(edge, head)` pairs; for undirected graphs every incident edge.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let directed = self.directed;
        self.adj[v]
            .iter()
            .copied()
            .filter(move |&(e, _)| !directed || self.ends[e].0 == v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn vertex_id(&self, v: usize) -> usize {
        self.vertex_ids[v]
    }

    pub fn edge_id(&self, e: usize) -> usize {
        self.edge_ids[e]
    }

    pub fn vertex_ids(&self) -> &[usize] {
        &self.vertex_ids
    }

    pub fn edge_ids(&self) -> &[usize] {
        &self.edge_ids
    }

    pub fn vertex_by_id(&self, id: usize) -> Option<usize> {
        self.vertex_ids.binary_search(&id).ok()
    }

    pub fn edge_by_id(&self, id: usize) -> Option<usize> {
        self.edge_ids.binary_search(&id).ok()
    }

    /// True when ids coincide with positions.
    pub fn has_dense_ids(&self) -> bool {
        self.vertex_ids.iter().enumerate().all(|(i, &x)| i == x)
            && self.edge_ids.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Edges joining `u` and `v` in increasing order.
    pub fn edges_between(&self, u: usize, v: usize) -> Vec<usize> {
        self.adj[u].iter().filter(|&&(_, w)| w == v).map(|&(e, _)| e).collect()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.adj[u].iter().filter(|&&(_, w)| w == v).count()
    }

    /// Largest number of edges joining one pair of vertices.
    pub fn max_multiplicity(&self) -> usize {
        let mut best = 0;
        for v in 0..self.n() {
            let mut others: Vec<usize> = self.adj[v].iter().map(|&(_, w)| w).collect();
            others.sort_unstable();
            let mut run = 0;
            for i in 0..others.len() {
                run = if i > 0 && others[i] == others[i - 1] { run + 1 } else { 1 };
                best = best.max(run);
            }
        }
        best
    }

    pub fn is_simple(&self) -> bool {
        self.max_multiplicity() <= 1
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Simple neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.adj[v].iter().map(|&(_, w)| w).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Component label of every vertex and the number of components.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &(_, w) in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Vertex sets of the components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let (label, count) = self.component_labels();
        let mut comps = vec![Vec::new(); count];
        for (v, &c) in label.iter().enumerate() {
            comps[c].push(v);
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().1
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Number of acyclic and cyclic components.
    pub fn acyclic_cyclic_counts(&self) -> (usize, usize) {
        let (label, count) = self.component_labels();
        let mut nv = vec![0usize; count];
        let mut ne = vec![0usize; count];
        for &c in &label {
            nv[c] += 1;
        }
        for &(u, _) in &self.ends {
            ne[label[u]] += 1;
        }
        let acyclic = (0..count).filter(|&c| ne[c] + 1 == nv[c]).count();
        (acyclic, count - acyclic)
    }

    pub fn is_forest(&self) -> bool {
        self.acyclic_cyclic_counts().1 == 0
    }

    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.is_connected() && self.m() + 1 == self.n()
    }

    /// Length of a shortest cycle, [`INFINITE_GIRTH`] for forests.
    /// Parallel edges give girth 2.
    pub fn girth(&self) -> usize {
        if self.max_multiplicity() >= 2 {
            return 2;
        }
        let n = self.n();
        let mut best = INFINITE_GIRTH;
        let mut dist = vec![usize::MAX; n];
        let mut via = vec![usize::MAX; n];
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            via.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(e, w) in &self.adj[v] {
                    if e == via[v] {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        via[w] = e;
                        queue.push_back(w);
                    } else {
                        best = best.min(dist[v] + dist[w] + 1);
                    }
                }
            }
        }
        best
    }

    /// Largest minimum degree over all subgraphs, counting parallel edges.
    pub fn degeneracy(&self) -> usize {
        let n = self.n();
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; n];
        let mut best = 0;
        for _ in 0..n {
            let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| deg[v]).unwrap();
            best = best.max(deg[v]);
            removed[v] = true;
            for &(_, w) in &self.adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                }
            }
        }
        best
    }

    /// BFS distances from `s`; `usize::MAX` marks unreachable vertices.
    pub fn distances(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &(_, w) in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Eccentricity of `v` within its component.
    pub fn eccentricity(&self, v: usize) -> usize {
        self.distances(v).into_iter().filter(|&d| d != usize::MAX).max().unwrap_or(0)
    }

    /// Largest eccentricity over all vertices (per component).
    pub fn diameter(&self) -> usize {
        (0..self.n()).map(|v| self.eccentricity(v)).max().unwrap_or(0)
    }

    /// Connected, at least two vertices, and no cut vertex.
    pub fn is_biconnected(&self) -> bool {
        let n = self.n();
        if n < 2 || !self.is_connected() {
            return false;
        }
        if n == 2 {
            return true;
        }
        (0..n).all(|v| {
            let keep: Vec<usize> = (0..n).filter(|&w| w != v).collect();
            self.induced_subgraph(&keep).is_connected()
        })
    }

    /// Subgraph with the given vertex and edge positions; ids are kept.
    /// Ends of the chosen edges are added to the vertex set.
    pub fn subgraph(&self, vertices: &[usize], edges: &[usize]) -> MultiGraph {
        let mut keep_v = vec![false; self.n()];
        for &v in vertices {
            keep_v[v] = true;
        }
        let mut keep_e = vec![false; self.m()];
        for &e in edges {
            keep_e[e] = true;
            let (a, b) = self.ends[e];
            keep_v[a] = true;
            keep_v[b] = true;
        }
        let mut pos = vec![usize::MAX; self.n()];
        let mut out = MultiGraph {
            directed: self.directed,
            vertex_ids: Vec::new(),
            edge_ids: Vec::new(),
            ends: Vec::new(),
            adj: Vec::new(),
        };
        for v in 0..self.n() {
            if keep_v[v] {
                pos[v] = out.vertex_ids.len();
                out.vertex_ids.push(self.vertex_ids[v]);
                out.adj.push(Vec::new());
            }
        }
        for e in 0..self.m() {
            if keep_e[e] {
                let (a, b) = self.ends[e];
                out.push_edge(self.edge_ids[e], pos[a], pos[b]).expect("subgraph of a loopless graph");
            }
        }
        out
    }

    /// Subgraph induced by a vertex set.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> MultiGraph {
        let mut keep = vec![false; self.n()];
        for &v in vertices {
            keep[v] = true;
        }
        let edges: Vec<usize> = (0..self.m())
            .filter(|&e| {
                let (a, b) = self.ends[e];
                keep[a] && keep[b]
            })
            .collect();
        self.subgraph(vertices, &edges)
    }

    /// Subgraph formed by some edges and their ends.
    pub fn edge_subgraph(&self, edges: &[usize]) -> MultiGraph {
        self.subgraph(&[], edges)
    }

    pub fn without_edge(&self, e: usize) -> MultiGraph {
        let edges: Vec<usize> = (0..self.m()).filter(|&f| f != e).collect();
        self.subgraph(&(0..self.n()).collect::<Vec<_>>(), &edges)
    }

    pub fn without_vertex(&self, v: usize) -> MultiGraph {
        let keep: Vec<usize> = (0..self.n()).filter(|&w| w != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Copy with ids reset to positions.
    pub fn with_dense_ids(&self) -> MultiGraph {
        let mut g = self.clone();
        g.vertex_ids = (0..g.n()).collect();
        g.edge_ids = (0..g.m()).collect();
        g
    }

    /// Underlying simple graph: one edge per adjacent pair, the first one.
    pub fn underlying_simple(&self) -> MultiGraph {
        let mut keep = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (e, &(a, b)) in self.ends.iter().enumerate() {
            let key = if self.directed { (a, b) } else { (a.min(b), a.max(b)) };
            if seen.insert(key) {
                keep.push(e);
            }
        }
        self.subgraph(&(0..self.n()).collect::<Vec<_>>(), &keep)
    }

    /// Disjoint union with fresh dense ids, vertices of earlier graphs first.
    pub fn disjoint_union(parts: &[&MultiGraph]) -> MultiGraph {
        let n: usize = parts.iter().map(|g| g.n()).sum();
        let mut out = MultiGraph::new(n);
        let mut offset = 0;
        for g in parts {
            for &(a, b) in &g.ends {
                out.add_edge(a + offset, b + offset).expect("loopless parts");
            }
            offset += g.n();
        }
        out
    }

    /// Graph obtained by renaming vertex `v` to `perm[v]`; edge order kept.
    pub fn permuted(&self, perm: &[usize]) -> MultiGraph {
        let mut out = MultiGraph::new(self.n());
        out.directed = self.directed;
        for &(a, b) in &self.ends {
            out.add_edge(perm[a], perm[b]).expect("loopless");
        }
        out
    }

    pub fn stats(&self) -> GraphStats {
        let (acyclic, cyclic) = self.acyclic_cyclic_counts();
        let girth = self.girth();
        let mult = self.max_multiplicity();
        GraphStats {
            n: self.n(),
            m: self.m(),
            min_degree: self.min_degree(),
            max_degree: self.max_degree(),
            girth: (girth != INFINITE_GIRTH).then_some(girth),
            components: acyclic + cyclic,
            acyclic_components: acyclic,
            cyclic_components: cyclic,
            degeneracy: self.degeneracy(),
            max_multiplicity: mult,
            simple: mult <= 1,
        }
    }
}
