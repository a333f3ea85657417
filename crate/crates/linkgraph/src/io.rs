//! JSON and DOT formats.
//!
//! A graph is `{"n": 3, "edges": [[0, 1], [1, 2]]}`; edge ids are list
//! positions and vertex ids are `0..n`. Graphs whose ids differ from their
//! positions also carry `vertex_ids` and `edge_ids`, and then `edges` lists
//! vertex ids. A partition is `{"vparts": [[..]], "eparts": [[..]]}` over
//! vertex and edge ids.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::derived::{DerivedGraph, DerivedKind};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::walks::Arc;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_ids: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_ids: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub directed: bool,
}

impl GraphJson {
    pub fn from_graph(g: &MultiGraph) -> GraphJson {
        let dense = g.has_dense_ids();
        GraphJson {
            n: g.n(),
            edges: g
                .edges()
                .iter()
                .map(|&(a, b)| if dense { [a, b] } else { [g.vertex_id(a), g.vertex_id(b)] })
                .collect(),
            vertex_ids: (!dense).then(|| g.vertex_ids().to_vec()),
            edge_ids: (!dense).then(|| g.edge_ids().to_vec()),
            directed: g.is_directed(),
        }
    }

    pub fn to_graph(&self) -> Result<MultiGraph> {
        let g = match (&self.vertex_ids, &self.edge_ids) {
            (None, None) => {
                let mut g = MultiGraph::new(self.n);
                for &[a, b] in &self.edges {
                    g.add_edge(a, b)?;
                }
                g
            }
            (vids, eids) => {
                let vids = vids.clone().unwrap_or_else(|| (0..self.n).collect());
                let eids = eids.clone().unwrap_or_else(|| (0..self.edges.len()).collect());
                if vids.len() != self.n || eids.len() != self.edges.len() {
                    return Err(Error::Invalid("id lists do not match n and edges".into()));
                }
                let triples: Vec<(usize, usize, usize)> =
                    eids.iter().zip(&self.edges).map(|(&id, &[a, b])| (id, a, b)).collect();
                MultiGraph::with_ids(vids, &triples)?
            }
        };
        Ok(if self.directed { g.into_directed() } else { g })
    }
}

pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    let j: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_graph()
}

pub fn graph_to_json(g: &MultiGraph) -> String {
    serde_json::to_string(&GraphJson::from_graph(g)).expect("serialisable")
}

pub fn graph_to_dot(g: &MultiGraph) -> String {
    let (kw, sep) = if g.is_directed() { ("digraph", "->") } else { ("graph", "--") };
    let mut out = format!("{kw} G {{\n");
    for v in 0..g.n() {
        let _ = writeln!(out, "  {};", g.vertex_id(v));
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let _ = writeln!(out, "  {} {sep} {} [label=\"{}\"];", g.vertex_id(a), g.vertex_id(b), g.edge_id(e));
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PartitionJson {
    pub vparts: Vec<Vec<usize>>,
    pub eparts: Vec<Vec<usize>>,
}

pub fn parse_partition(text: &str) -> Result<PartitionJson> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// A walk as the comma-joined id sequence `v0,e1,v1,…`.
pub fn walk_key(g: &MultiGraph, a: &Arc) -> String {
    a.to_ids(g).iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DerivedJson {
    pub kind: DerivedKind,
    pub ell: usize,
    #[serde(flatten)]
    pub graph: GraphJson,
    /// Serialized walk of the source graph to vertex position.
    pub vertex_provenance: BTreeMap<String, usize>,
    /// Serialized (ℓ+1)-walk of the source graph to edge position.
    pub edge_provenance: BTreeMap<String, usize>,
}

pub fn derived_to_json(source: &MultiGraph, d: &DerivedGraph) -> DerivedJson {
    DerivedJson {
        kind: d.kind,
        ell: d.ell,
        graph: GraphJson::from_graph(&d.graph),
        vertex_provenance: d.vertex_walks.iter().enumerate().map(|(i, a)| (walk_key(source, a), i)).collect(),
        edge_provenance: d.edge_walks.iter().enumerate().map(|(i, a)| (walk_key(source, a), i)).collect(),
    }
}
