//! Partitioned graphs, natural partitions of link graphs, quotients and
//! cyclic components.

use std::collections::{BTreeSet, HashMap};

use crate::derived::{link_graph, DerivedGraph};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::io::PartitionJson;
use crate::walks::{enumerate_links, Arc, Link};

#[derive(Clone, Debug)]
struct Provenance {
    source: MultiGraph,
    derived: DerivedGraph,
    edge_index: HashMap<Link, usize>,
}

/// A graph `H` with a partition of its vertices and one of its edges.
#[derive(Clone, Debug)]
pub struct PartitionedGraph {
    graph: MultiGraph,
    vparts: Vec<Vec<usize>>,
    eparts: Vec<Vec<usize>>,
    vpart_of: Vec<usize>,
    epart_of: Vec<usize>,
    provenance: Option<Box<Provenance>>,
}

/// All five axioms, in order.
pub const AXIOMS: [char; 5] = ['a', 'b', 'c', 'd', 'e'];

impl PartitionedGraph {
    /// Partition given by vertex and edge positions of `graph`.
    pub fn new(graph: MultiGraph, vparts: Vec<Vec<usize>>, eparts: Vec<Vec<usize>>) -> Result<PartitionedGraph> {
        let vpart_of = part_index(graph.n(), &vparts, "vertex")?;
        let epart_of = part_index(graph.m(), &eparts, "edge")?;
        let mut vparts = vparts;
        let mut eparts = eparts;
        vparts.iter_mut().chain(eparts.iter_mut()).for_each(|p| p.sort_unstable());
        Ok(PartitionedGraph { graph, vparts, eparts, vpart_of, epart_of, provenance: None })
    }

    /// Partition given by vertex and edge ids, as read from JSON.
    pub fn from_json(graph: MultiGraph, p: &PartitionJson) -> Result<PartitionedGraph> {
        let vparts = p
            .vparts
            .iter()
            .map(|part| part.iter().map(|&id| graph.vertex_by_id(id).ok_or(Error::UnknownVertex(id))).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        let eparts = p
            .eparts
            .iter()
            .map(|part| part.iter().map(|&id| graph.edge_by_id(id).ok_or(Error::UnknownEdge(id))).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        PartitionedGraph::new(graph, vparts, eparts)
    }

    pub fn to_json(&self) -> PartitionJson {
        let g = &self.graph;
        PartitionJson {
            vparts: self.vparts.iter().map(|p| p.iter().map(|&v| g.vertex_id(v)).collect()).collect(),
            eparts: self.eparts.iter().map(|p| p.iter().map(|&e| g.edge_id(e)).collect()).collect(),
        }
    }

    /// Every unit in a part of its own.
    pub fn singletons(graph: MultiGraph) -> PartitionedGraph {
        let vparts = (0..graph.n()).map(|v| vec![v]).collect();
        let eparts = (0..graph.m()).map(|e| vec![e]).collect();
        PartitionedGraph::new(graph, vparts, eparts).expect("singletons partition")
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn vparts(&self) -> &[Vec<usize>] {
        &self.vparts
    }

    pub fn eparts(&self) -> &[Vec<usize>] {
        &self.eparts
    }

    pub fn vpart_of(&self, v: usize) -> usize {
        self.vpart_of[v]
    }

    pub fn epart_of(&self, e: usize) -> usize {
        self.epart_of[e]
    }

    /// `ℓ` and the source graph when built by [`partitioned_link_graph`].
    pub fn source(&self) -> Option<(usize, &MultiGraph)> {
        self.provenance.as_ref().map(|p| (p.derived.ell, &p.source))
    }

    pub fn derived(&self) -> Option<&DerivedGraph> {
        self.provenance.as_ref().map(|p| &p.derived)
    }

    /// Edge parts incident to `u`, sorted.
    pub fn eparts_at(&self, u: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.graph.incident(u).iter().map(|&(e, _)| self.epart_of[e]).collect();
        set.into_iter().collect()
    }

    /// `r(ℰ)`: the most edge parts at one vertex.
    pub fn max_eparts_at_vertex(&self) -> usize {
        (0..self.graph.n()).map(|u| self.eparts_at(u).len()).max().unwrap_or(0)
    }

    /// The two vertex parts met by each edge part, if axiom (b) holds.
    fn epart_ends(&self, f: usize) -> BTreeSet<usize> {
        self.eparts[f]
            .iter()
            .flat_map(|&e| {
                let (a, b) = self.graph.ends(e);
                [self.vpart_of[a], self.vpart_of[b]]
            })
            .collect()
    }

    pub fn check_axiom(&self, axiom: char) -> Result<()> {
        let g = &self.graph;
        let fail = |witness: String| Err(Error::AxiomViolation { axiom, witness });
        match axiom {
            'a' => {
                for (e, &(x, y)) in g.edges().iter().enumerate() {
                    if self.vpart_of[x] == self.vpart_of[y] {
                        return fail(format!("edge {} lies inside a vertex part", g.edge_id(e)));
                    }
                }
            }
            'b' => {
                for f in 0..self.eparts.len() {
                    let ends = self.epart_ends(f);
                    if ends.len() != 2 {
                        return fail(format!("edge part {f} meets {} vertex parts", ends.len()));
                    }
                }
            }
            'c' => {
                for (f, part) in self.eparts.iter().enumerate() {
                    let ends: Vec<usize> = self.epart_ends(f).into_iter().collect();
                    if ends.len() != 2 {
                        return fail(format!("edge part {f} has no bipartition"));
                    }
                    let mut sides = [BTreeSet::new(), BTreeSet::new()];
                    for &e in part {
                        let (x, y) = g.ends(e);
                        for z in [x, y] {
                            sides[usize::from(self.vpart_of[z] == ends[1])].insert(z);
                        }
                    }
                    let mut pairs = BTreeSet::new();
                    for &e in part {
                        let (x, y) = g.ends(e);
                        if !pairs.insert((x.min(y), x.max(y))) {
                            return fail(format!("edge part {f} has parallel edges"));
                        }
                    }
                    if pairs.len() != sides[0].len() * sides[1].len() {
                        return fail(format!("edge part {f} is not complete bipartite"));
                    }
                }
            }
            'd' => {
                for u in 0..g.n() {
                    let k = self.eparts_at(u).len();
                    if k > 2 {
                        return fail(format!("vertex {} meets {k} edge parts", g.vertex_id(u)));
                    }
                }
            }
            'e' => {
                let mut seen: HashMap<(usize, usize, usize), usize> = HashMap::new();
                for u in 0..g.n() {
                    let at = self.eparts_at(u);
                    for i in 0..at.len() {
                        for j in i + 1..at.len() {
                            if let Some(&w) = seen.get(&(self.vpart_of[u], at[i], at[j])) {
                                return fail(format!(
                                    "vertices {} and {} both meet edge parts {} and {}",
                                    g.vertex_id(w),
                                    g.vertex_id(u),
                                    at[i],
                                    at[j]
                                ));
                            }
                            seen.insert((self.vpart_of[u], at[i], at[j]), u);
                        }
                    }
                }
            }
            _ => return Err(Error::Invalid(format!("unknown axiom {axiom}"))),
        }
        Ok(())
    }

    pub fn check_axioms(&self, axioms: &[char]) -> Result<()> {
        axioms.iter().try_for_each(|&a| self.check_axiom(a))
    }

    /// Per axiom, `None` if it holds and the violation otherwise.
    pub fn axiom_report(&self) -> Vec<(char, Option<String>)> {
        AXIOMS.iter().map(|&a| (a, self.check_axiom(a).err().map(|e| e.to_string()))).collect()
    }

    pub fn is_almost_standard(&self) -> bool {
        self.check_axioms(&AXIOMS).is_ok()
    }

    /// Middle (ℓ−2)-link shared by the links of a vertex part, for ℓ ≥ 2.
    pub fn part_middle(&self, vpart: usize) -> Option<Link> {
        let p = self.provenance.as_ref()?;
        let ell = p.derived.ell;
        if ell < 2 {
            return None;
        }
        let v = self.vparts[vpart][0];
        Some(Link::new(p.derived.vertex_walks[v].segment(1, ell - 1).ok()?))
    }

    /// `R^{[ℓ]}`: the walk of `H` formed by the ℓ-windows of an
    /// (ℓ+s)-arc `r` of the source graph.
    pub fn image(&self, r: &Arc) -> Result<Arc> {
        let p = self.provenance.as_ref().ok_or(Error::NotALinkPartition)?;
        let ell = p.derived.ell;
        if r.len() < ell {
            return Err(Error::InvalidSegment(0, ell, r.len()));
        }
        let s = r.len() - ell;
        let mut vs = Vec::with_capacity(s + 1);
        let mut es = Vec::with_capacity(s);
        for i in 0..=s {
            let w = r.segment(i, i + ell)?;
            vs.push(p.derived.vertex_of(&w).ok_or_else(|| Error::NotAnArc(format!("{w:?} is not an {ell}-link")))?);
            if i > 0 {
                let q = Link::new(r.segment(i - 1, i + ell)?);
                es.push(*p.edge_index.get(&q).ok_or_else(|| Error::NotAnArc(format!("{q:?} is not a link")))?);
            }
        }
        Arc::new(&self.graph, &vs, &es)
    }

    /// An (ℓ+s)-arc `R` of the source graph with `R^{[ℓ]} = l`, found by
    /// replaying the provenance of the edges of the s-arc `l` of `H`.
    pub fn lift(&self, l: &Arc) -> Result<Option<Arc>> {
        let p = self.provenance.as_ref().ok_or(Error::NotALinkPartition)?;
        if l.is_empty() {
            return Ok(Some(p.derived.vertex_walks[l.v(0)].clone()));
        }
        let first = &p.derived.edge_walks[l.e(1)];
        for q in [first.clone(), first.reversed()] {
            if self.window_link(&q, 0) == p.derived.vertex_link(l.v(0)) {
                if let Some(r) = self.extend_lift(l, 1, q) {
                    return Ok(Some(r));
                }
            }
        }
        Ok(None)
    }

    fn window_link(&self, a: &Arc, i: usize) -> Link {
        let ell = self.provenance.as_ref().unwrap().derived.ell;
        Link::new(a.segment(i, i + ell).unwrap())
    }

    fn extend_lift(&self, l: &Arc, i: usize, r: Arc) -> Option<Arc> {
        let p = self.provenance.as_ref().unwrap();
        let ell = p.derived.ell;
        if self.window_link(&r, i) != p.derived.vertex_link(l.v(i)) {
            return None;
        }
        if i == l.len() {
            return Some(r);
        }
        let tail = r.segment(i, i + ell).unwrap();
        let q = &p.derived.edge_walks[l.e(i + 1)];
        for q in [q.clone(), q.reversed()] {
            if q.segment(0, ell).unwrap() == tail {
                let k = q.len();
                let next = r.extended(q.e(k), q.v(k));
                if next.validate(&p.source).is_ok() {
                    if let Some(done) = self.extend_lift(l, i + 1, next) {
                        return Some(done);
                    }
                }
            }
        }
        None
    }

    /// Whether the closed arc `c` of `H` is a cycle of the partitioned
    /// graph (consecutive edges, cyclically, in different parts) that is
    /// plain: of length 2 or with all units in different parts.
    pub fn is_plain_cycle(&self, c: &Arc) -> bool {
        if !self.is_partition_cycle(c) {
            return false;
        }
        let t = c.len();
        if t == 2 {
            return true;
        }
        let vp: BTreeSet<usize> = (0..t).map(|i| self.vpart_of[c.v(i)]).collect();
        let ep: BTreeSet<usize> = (1..=t).map(|i| self.epart_of[c.e(i)]).collect();
        vp.len() == t && ep.len() == t
    }

    /// Whether the closed arc `c` is a cycle of `H` whose consecutive edges
    /// lie in different edge parts.
    pub fn is_partition_cycle(&self, c: &Arc) -> bool {
        let t = c.len();
        c.is_cycle() && (1..=t).all(|i| self.epart_of[c.e(i)] != self.epart_of[c.e(i % t + 1)])
    }
}

fn part_index(count: usize, parts: &[Vec<usize>], what: &str) -> Result<Vec<usize>> {
    let mut of = vec![usize::MAX; count];
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::Invalid(format!("{what} part {i} is empty")));
        }
        for &x in part {
            if x >= count {
                return Err(Error::Invalid(format!("{what} {x} out of range")));
            }
            if of[x] != usize::MAX {
                return Err(Error::Invalid(format!("{what} {x} lies in two parts")));
            }
            of[x] = i;
        }
    }
    if let Some(x) = of.iter().position(|&p| p == usize::MAX) {
        return Err(Error::Invalid(format!("{what} {x} lies in no part")));
    }
    Ok(of)
}

fn group_by<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> Vec<Vec<usize>> {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for (i, k) in keys.enumerate() {
        let next = parts.len();
        let p = *index.entry(k).or_insert(next);
        if p == next {
            parts.push(Vec::new());
        }
        parts[p].push(i);
    }
    parts
}

/// `𝕃̃_ℓ(G)`: the ℓ-link graph with its natural partition. Vertex parts
/// group ℓ-links by middle (ℓ−2)-link (by end pair for ℓ = 1); edge parts
/// group (ℓ+1)-links by middle (ℓ−1)-link. For ℓ = 0 all parts are
/// singletons.
pub fn partitioned_link_graph(g: &MultiGraph, ell: usize) -> PartitionedGraph {
    let derived = link_graph(g, ell);
    let (vparts, eparts) = match ell {
        0 => ((0..derived.graph.n()).map(|v| vec![v]).collect(), (0..derived.graph.m()).map(|e| vec![e]).collect()),
        _ => {
            let vparts = if ell == 1 {
                group_by(derived.vertex_walks.iter().map(|a| {
                    let (x, y) = (a.v(0), a.v(1));
                    (x.min(y), x.max(y))
                }))
            } else {
                group_by(derived.vertex_walks.iter().map(|a| Link::new(a.segment(1, ell - 1).unwrap())))
            };
            let eparts = group_by(derived.edge_walks.iter().map(|a| Link::new(a.segment(1, ell).unwrap())));
            (vparts, eparts)
        }
    };
    let edge_index = derived.edge_walks.iter().enumerate().map(|(i, a)| (Link::new(a.clone()), i)).collect();
    let mut h = PartitionedGraph::new(derived.graph.clone(), vparts, eparts).expect("natural partition");
    h.provenance = Some(Box::new(Provenance { source: g.clone(), derived, edge_index }));
    h
}

/// The natural partition `(𝒱_ℓ(G), ℰ_ℓ(G))` of `𝕃_ℓ(G)`.
pub fn natural_partition(g: &MultiGraph, ell: usize) -> PartitionedGraph {
    let h = partitioned_link_graph(g, ell);
    debug_assert!(ell < 2 || h.is_almost_standard());
    h
}

/// Quotient of a partitioned graph: one vertex per vertex part and, for
/// each edge part, one edge between the two vertex parts it meets.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub graph: MultiGraph,
    pub simple: MultiGraph,
}

pub fn quotient_graph(h: &PartitionedGraph) -> Result<Quotient> {
    h.check_axioms(&['a', 'b'])?;
    let mut q = MultiGraph::new(h.vparts.len());
    for f in 0..h.eparts.len() {
        let ends: Vec<usize> = h.epart_ends(f).into_iter().collect();
        q.add_edge(ends[0], ends[1])?;
    }
    let simple = q.underlying_simple();
    Ok(Quotient { graph: q, simple })
}

/// Checks that the quotient of `𝕃̃_ℓ(G)`, ℓ ≥ 2, embeds into
/// `𝕃_{ℓ−2}(G)` as an induced subgraph with equal multiplicities. Returns
/// the vertex map.
pub fn quotient_embedding(h: &PartitionedGraph) -> std::result::Result<Vec<usize>, String> {
    let (ell, g) = h.source().ok_or("no provenance")?;
    if ell < 2 {
        return Err("needs ell >= 2".into());
    }
    let q = quotient_graph(h).map_err(|e| e.to_string())?.graph;
    let small = link_graph(g, ell - 2);
    let map: Vec<usize> = (0..q.n())
        .map(|p| small.vertex_of(h.part_middle(p).unwrap().arc()).ok_or_else(|| format!("part {p} has no middle")))
        .collect::<std::result::Result<_, _>>()?;
    if map.iter().collect::<BTreeSet<_>>().len() != map.len() {
        return Err("two parts share a middle link".into());
    }
    for a in 0..q.n() {
        for b in a + 1..q.n() {
            let (x, y) = (q.multiplicity(a, b), small.graph.multiplicity(map[a], map[b]));
            if x != y {
                return Err(format!("parts {a}, {b}: multiplicity {x} against {y}"));
            }
        }
    }
    Ok(map)
}

/// The s-links of `H` whose consecutive edges are in different edge parts.
pub fn partition_links(h: &PartitionedGraph, s: usize) -> Vec<Link> {
    enumerate_links(&h.graph, s)
        .into_iter()
        .filter(|l| {
            let a = l.arc();
            (1..s).all(|i| h.epart_of[a.e(i)] != h.epart_of[a.e(i + 1)])
        })
        .collect()
}

/// Digraph on pairs `(u, E)` with `E` an edge part at `u`, with an arc
/// `(u, E) → (v, F)` when `E ≠ F` and some edge of `E` joins `u` and `v`.
#[derive(Clone, Debug)]
pub struct PartitionDigraph {
    pub graph: MultiGraph,
    /// `(vertex of H, edge part)` behind each digraph vertex.
    pub nodes: Vec<(usize, usize)>,
}

/// Only the edge partition matters here, so no axiom is required; the
/// natural partition for ℓ = 1 need not satisfy (a).
pub fn partition_digraph(h: &PartitionedGraph) -> PartitionDigraph {
    let g = &h.graph;
    let mut nodes = Vec::new();
    let mut node_of: HashMap<(usize, usize), usize> = HashMap::new();
    for u in 0..g.n() {
        for f in h.eparts_at(u) {
            node_of.insert((u, f), nodes.len());
            nodes.push((u, f));
        }
    }
    let mut d = MultiGraph::new_directed(nodes.len());
    let mut arcs = BTreeSet::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let part = h.epart_of[e];
        for (u, v) in [(a, b), (b, a)] {
            for f in h.eparts_at(v) {
                if f != part {
                    arcs.insert((node_of[&(u, part)], node_of[&(v, f)]));
                }
            }
        }
    }
    for (x, y) in arcs {
        d.add_edge(x, y).expect("distinct nodes");
    }
    PartitionDigraph { graph: d, nodes }
}

/// Strongly connected component label of each vertex of a digraph.
fn strong_components(d: &MultiGraph) -> Vec<usize> {
    let n = d.n();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut label = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut labels = 0;
    let succ: Vec<Vec<usize>> = (0..n).map(|v| d.out_edges(v).map(|(_, w)| w).collect()).collect();
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut work = vec![(root, 0usize)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(v, k)) = work.last() {
            if k < succ[v].len() {
                let w = succ[v][k];
                work.last_mut().unwrap().1 += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                work.pop();
                if let Some(&(p, _)) = work.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        label[w] = labels;
                        if w == v {
                            break;
                        }
                    }
                    labels += 1;
                }
            }
        }
    }
    label
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ComponentCensus {
    /// Vertex positions of the component of `H`.
    pub vertices: Vec<usize>,
    /// The partition digraph of the component has a dicycle.
    pub cyclic: bool,
    /// Whether the component has a plain cycle; `None` when the search was
    /// cut short.
    pub plain_cycle: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CyclicCensus {
    pub cyclic: usize,
    pub acyclic: usize,
    pub components: Vec<ComponentCensus>,
}

/// Steps allowed to the exhaustive plain-cycle search per component.
pub const PLAIN_SEARCH_STEPS: usize = 200_000;

/// `o(H̃)` and `a(H̃)`: a component is cyclic when its part of the
/// partition digraph has a dicycle. Each component also records whether an
/// exhaustive search found a plain cycle.
pub fn count_cyclic_components(h: &PartitionedGraph) -> CyclicCensus {
    let d = partition_digraph(h);
    let scc = strong_components(&d.graph);
    let mut size = vec![0usize; d.graph.n()];
    for &c in &scc {
        size[c] += 1;
    }
    let (labels, count) = h.graph.component_labels();
    let mut dicyclic = vec![false; count];
    for (x, &(u, _)) in d.nodes.iter().enumerate() {
        if size[scc[x]] >= 2 {
            dicyclic[labels[u]] = true;
        }
    }
    let components: Vec<ComponentCensus> = h
        .graph
        .components()
        .into_iter()
        .map(|vertices| {
            let cyclic = dicyclic[labels[vertices[0]]];
            let plain_cycle = search_plain_cycle(h, &vertices, PLAIN_SEARCH_STEPS).map(|c| c.is_some());
            ComponentCensus { vertices, cyclic, plain_cycle }
        })
        .collect();
    let cyclic = components.iter().filter(|c| c.cyclic).count();
    CyclicCensus { cyclic, acyclic: components.len() - cyclic, components }
}

/// Exhaustive search for a plain cycle among the given vertices. `None`
/// when more than `steps` extension steps would be needed.
pub fn search_plain_cycle(h: &PartitionedGraph, vertices: &[usize], steps: usize) -> Option<Option<Arc>> {
    let g = &h.graph;
    let mut budget = steps;
    for &s in vertices {
        for &(e, w) in g.incident(s) {
            if w < s {
                continue;
            }
            for &(f, x) in g.incident(w) {
                if x == s && f != e {
                    let c = Arc::from_raw(vec![s as u32, e as u32, w as u32, f as u32, s as u32]);
                    if h.is_plain_cycle(&c) {
                        return Some(Some(c));
                    }
                }
            }
        }
        let mut seq = vec![s as u32];
        let mut used = vec![false; g.n()];
        used[s] = true;
        match plain_dfs(h, s, &mut seq, &mut used, &mut budget) {
            Err(()) => return None,
            Ok(Some(c)) => return Some(Some(c)),
            Ok(None) => {}
        }
    }
    Some(None)
}

// Paths from `s` through vertices above `s`, keeping vertex and edge parts
// distinct; closes into cycles of length at least 3.
fn plain_dfs(h: &PartitionedGraph, s: usize, seq: &mut Vec<u32>, used: &mut [bool], budget: &mut usize) -> std::result::Result<Option<Arc>, ()> {
    if *budget == 0 {
        return Err(());
    }
    *budget -= 1;
    let g = &h.graph;
    let v = *seq.last().unwrap() as usize;
    let len = seq.len() / 2;
    for &(e, w) in g.incident(v) {
        if len >= 1 && e == seq[seq.len() - 2] as usize {
            continue;
        }
        if w == s && len >= 2 {
            seq.push(e as u32);
            seq.push(w as u32);
            let c = Arc::from_raw(seq.clone());
            seq.truncate(seq.len() - 2);
            if h.is_plain_cycle(&c) {
                return Ok(Some(c));
            }
            continue;
        }
        if w <= s || used[w] {
            continue;
        }
        let clash = (0..=len).any(|i| h.vpart_of[seq[2 * i] as usize] == h.vpart_of[w])
            || (1..=len).any(|i| h.epart_of[seq[2 * i - 1] as usize] == h.epart_of[e]);
        if clash {
            continue;
        }
        used[w] = true;
        seq.push(e as u32);
        seq.push(w as u32);
        let found = plain_dfs(h, s, seq, used, budget);
        seq.truncate(seq.len() - 2);
        used[w] = false;
        if let Ok(None) = found {
            continue;
        }
        return found;
    }
    Ok(None)
}

/// A cycle of the source graph in each cyclic component, as a closed arc.
pub fn source_cycles(g: &MultiGraph) -> Vec<Arc> {
    let mut out = Vec::new();
    let mut depth = vec![usize::MAX; g.n()];
    let mut parent = vec![(usize::MAX, usize::MAX); g.n()];
    for root in 0..g.n() {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        let mut found = None;
        while let Some(v) = queue.pop_front() {
            for &(e, w) in g.incident(v) {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = (v, e);
                    queue.push_back(w);
                } else if e != parent[v].1 && found.is_none() {
                    found = Some((v, e, w));
                }
            }
        }
        if let Some((u, e, w)) = found {
            // climb both ends to their meeting point
            let (mut a, mut b) = (u, w);
            let (mut left, mut right) = (vec![u], vec![w]);
            let (mut left_e, mut right_e) = (Vec::new(), Vec::new());
            while a != b {
                if depth[a] >= depth[b] {
                    left_e.push(parent[a].1);
                    a = parent[a].0;
                    left.push(a);
                } else {
                    right_e.push(parent[b].1);
                    b = parent[b].0;
                    right.push(b);
                }
            }
            // cycle: meet .. u, e, w .. meet
            let mut vs: Vec<usize> = left.iter().rev().copied().collect();
            let mut es: Vec<usize> = left_e.iter().rev().copied().collect();
            es.push(e);
            vs.extend(right.iter().copied());
            es.extend(right_e.iter().copied());
            out.push(Arc::new(g, &vs, &es).expect("tree cycle"));
        }
    }
    out
}

/// The closed ℓ-windows of a closed arc `c` of the source graph, traversed
/// once around: an arc of length `len(c) + ℓ`.
pub fn unrolled(c: &Arc, ell: usize) -> Arc {
    let t = c.len();
    let mut seq = vec![c.v(0) as u32];
    for i in 1..=t + ell {
        let k = (i - 1) % t + 1;
        seq.push(c.e(k) as u32);
        seq.push(c.v(k) as u32);
    }
    Arc::from_raw(seq)
}

/// A plain cycle in some cyclic component of a partitioned link graph: the
/// image of a cycle of the source graph.
pub fn find_plain_cycle(h: &PartitionedGraph) -> Result<Option<Arc>> {
    Ok(find_plain_cycles(h)?.into_iter().next())
}

/// One plain cycle per cyclic component of the source graph.
pub fn find_plain_cycles(h: &PartitionedGraph) -> Result<Vec<Arc>> {
    let (ell, g) = h.source().ok_or(Error::NotALinkPartition)?;
    source_cycles(g).iter().map(|c| h.image(&unrolled(c, ell))).collect()
}
