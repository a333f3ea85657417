//! Link graphs, path graphs and arc digraphs.

use std::collections::HashMap;

use crate::graph::MultiGraph;
use crate::walks::{enumerate_arcs, enumerate_cycles, enumerate_links, enumerate_paths, Arc, Link};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DerivedKind {
    Link,
    Path,
    Arc,
}

/// A graph built from walks of a source graph, with provenance maps.
#[derive(Clone, Debug)]
pub struct DerivedGraph {
    pub kind: DerivedKind,
    pub ell: usize,
    pub graph: MultiGraph,
    /// Walk of the source graph behind each vertex. For arc digraphs these
    /// are arcs in their own orientation, otherwise canonical links.
    pub vertex_walks: Vec<Arc>,
    /// (ℓ+1)-walk of the source graph behind each edge.
    pub edge_walks: Vec<Arc>,
    index: HashMap<Arc, usize>,
}

impl DerivedGraph {
    /// Vertex of the derived graph carrying a given walk. Links may be
    /// given in either orientation.
    pub fn vertex_of(&self, walk: &Arc) -> Option<usize> {
        match self.kind {
            DerivedKind::Arc => self.index.get(walk).copied(),
            _ => self.index.get(Link::new(walk.clone()).arc()).copied(),
        }
    }

    pub fn vertex_link(&self, v: usize) -> Link {
        Link::new(self.vertex_walks[v].clone())
    }

    pub fn edge_link(&self, e: usize) -> Link {
        Link::new(self.edge_walks[e].clone())
    }

    fn from_vertices(kind: DerivedKind, ell: usize, vertex_walks: Vec<Arc>, directed: bool) -> DerivedGraph {
        let n = vertex_walks.len();
        let index = vertex_walks.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        let graph = if directed { MultiGraph::new_directed(n) } else { MultiGraph::new(n) };
        DerivedGraph { kind, ell, graph, vertex_walks, edge_walks: Vec::new(), index }
    }
}

/// `𝕃(G, 𝓛, 𝓛')`: one vertex per link of `links`, one edge per
/// (ℓ+1)-link of `bridges` whose two ℓ-sublinks both lie in `links`.
pub fn partial_link_graph(ell: usize, links: &[Link], bridges: &[Link]) -> DerivedGraph {
    let mut d = DerivedGraph::from_vertices(DerivedKind::Link, ell, links.iter().map(|l| l.arc().clone()).collect(), false);
    for q in bridges {
        let a = q.arc();
        debug_assert_eq!(a.len(), ell + 1);
        let x = d.vertex_of(&a.segment(0, ell).unwrap());
        let y = d.vertex_of(&a.segment(1, ell + 1).unwrap());
        if let (Some(x), Some(y)) = (x, y) {
            d.graph.add_edge(x, y).expect("link graphs are loopless");
            d.edge_walks.push(a.clone());
        }
    }
    d
}

/// The ℓ-link graph `𝕃_ℓ(G)`.
pub fn link_graph(g: &MultiGraph, ell: usize) -> DerivedGraph {
    partial_link_graph(ell, &enumerate_links(g, ell), &enumerate_links(g, ell + 1))
}

/// The ℓ-path graph `ℙ_ℓ(G)`, always simple.
pub fn path_graph(g: &MultiGraph, ell: usize) -> DerivedGraph {
    let full = if ell <= 1 {
        link_graph(g, ell)
    } else {
        let mut bridges = enumerate_paths(g, ell + 1);
        bridges.extend(enumerate_cycles(g, ell + 1));
        partial_link_graph(ell, &enumerate_paths(g, ell), &bridges)
    };
    let mut d = DerivedGraph::from_vertices(DerivedKind::Path, ell, full.vertex_walks.clone(), false);
    let mut seen = std::collections::HashSet::new();
    for (e, &(a, b)) in full.graph.edges().iter().enumerate() {
        if seen.insert((a.min(b), a.max(b))) {
            d.graph.add_edge(a, b).expect("loopless");
            d.edge_walks.push(full.edge_walks[e].clone());
        }
    }
    d
}

/// The ℓ-arc digraph `𝔸_ℓ(G)`: one vertex per ℓ-arc and one arc per
/// (ℓ+1)-arc `Q`, from `Q(0, ℓ)` to `Q(1, ℓ+1)`.
pub fn arc_graph(g: &MultiGraph, ell: usize) -> DerivedGraph {
    let mut d = DerivedGraph::from_vertices(DerivedKind::Arc, ell, enumerate_arcs(g, ell), true);
    for q in enumerate_arcs(g, ell + 1) {
        let x = d.index[&q.segment(0, ell).unwrap()];
        let y = d.index[&q.segment(1, ell + 1).unwrap()];
        d.graph.add_edge(x, y).expect("arc digraphs are loopless");
        d.edge_walks.push(q);
    }
    d
}

/// Checks that identifying every arc with its reverse maps `𝔸_ℓ(G)` onto
/// `𝕃_ℓ(G)`: two arcs per vertex class and per edge class (one per vertex
/// for ℓ = 0), with matching ends.
pub fn verify_homomorphism_quotient(g: &MultiGraph, ell: usize) -> std::result::Result<(), String> {
    let arcs = arc_graph(g, ell);
    let links = link_graph(g, ell);
    let per_vertex = if ell == 0 { 1 } else { 2 };
    let mut vcount = vec![0usize; links.graph.n()];
    for a in &arcs.vertex_walks {
        let v = links.vertex_of(a).ok_or_else(|| format!("arc {a:?} has no link"))?;
        vcount[v] += 1;
    }
    if let Some(v) = vcount.iter().position(|&c| c != per_vertex) {
        return Err(format!("link {:?} has {} arcs", links.vertex_walks[v], vcount[v]));
    }
    let edge_index: HashMap<Link, usize> =
        links.edge_walks.iter().enumerate().map(|(e, a)| (Link::new(a.clone()), e)).collect();
    let mut ecount = vec![0usize; links.graph.m()];
    for (f, q) in arcs.edge_walks.iter().enumerate() {
        let e = *edge_index.get(&Link::new(q.clone())).ok_or_else(|| format!("arc {q:?} has no link"))?;
        ecount[e] += 1;
        let (x, y) = arcs.graph.ends(f);
        let (x, y) = (links.vertex_of(&arcs.vertex_walks[x]).unwrap(), links.vertex_of(&arcs.vertex_walks[y]).unwrap());
        let (a, b) = links.graph.ends(e);
        if !((a, b) == (x, y) || (a, b) == (y, x)) {
            return Err(format!("arc {q:?} projects to the wrong ends"));
        }
    }
    if let Some(e) = ecount.iter().position(|&c| c != 2) {
        return Err(format!("edge {:?} has {} arcs", links.edge_walks[e], ecount[e]));
    }
    Ok(())
}
