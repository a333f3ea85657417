//! Incidence subgraphs, ℓ-minimality, ℓ-equivalence and minimal roots.
//!
//! A unit is ℓ-incident when it lies on some ℓ-link. Components with a
//! cycle are wholly incident for ℓ ≥ 1; in a tree a vertex is incident
//! exactly when its two deepest branches reach a combined depth of ℓ, and
//! an edge when both of its ends are.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::canon::{certificate, check_isomorphism, is_isomorphic, Isomorphism};
use crate::derived::{link_graph, path_graph};
use crate::enumerate::{grow_connected, GrowthLimits};
use crate::error::{Error, Result};
use crate::families::{cycle, paste_path, spider};
use crate::graph::{MultiGraph, INFINITE_GIRTH};
use crate::walks::{enumerate_links, enumerate_paths, Link};

/// Branch depths of the vertices of one tree component, rooted at its
/// least vertex.
struct TreeTables {
    parent_edge: Vec<usize>,
    down: Vec<usize>,
    up: Vec<usize>,
}

impl TreeTables {
    fn new(g: &MultiGraph, root: usize) -> TreeTables {
        let n = g.n();
        let mut parent_edge = vec![usize::MAX; n];
        let mut order = vec![root];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &(e, w) in g.incident(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent_edge[w] = e;
                    order.push(w);
                }
            }
        }
        let mut down = vec![0; n];
        for &v in order.iter().rev() {
            if parent_edge[v] != usize::MAX {
                let p = g.other(parent_edge[v], v);
                down[p] = down[p].max(down[v] + 1);
            }
        }
        let mut up = vec![0; n];
        for &v in &order {
            // two deepest branches of v, keyed by the child they go through
            let mut best = [(up[v], usize::MAX), (0, usize::MAX)];
            for &(e, w) in g.incident(v) {
                if e == parent_edge[v] {
                    continue;
                }
                let d = down[w] + 1;
                if d > best[0].0 {
                    best[1] = best[0];
                    best[0] = (d, w);
                } else if d > best[1].0 {
                    best[1] = (d, w);
                }
            }
            for &(e, w) in g.incident(v) {
                if e != parent_edge[v] {
                    let other = if best[0].1 == w { best[1].0 } else { best[0].0 };
                    up[w] = other + 1;
                }
            }
        }
        TreeTables { parent_edge, down, up }
    }

    /// Depth of the branch at `v` that starts with edge `e`.
    fn branch(&self, g: &MultiGraph, v: usize, e: usize) -> usize {
        if e == self.parent_edge[v] {
            self.up[v]
        } else {
            self.down[g.other(e, v)] + 1
        }
    }

    fn top_two(&self, g: &MultiGraph, v: usize) -> (usize, usize) {
        let mut top = (0, 0);
        for &(e, _) in g.incident(v) {
            let d = self.branch(g, v, e);
            if d > top.0 {
                top = (d, top.0);
            } else if d > top.1 {
                top.1 = d;
            }
        }
        top
    }
}

/// Whether vertex `u` of the tree `t` lies on an ℓ-link.
pub fn vertex_incident(t: &MultiGraph, u: usize, ell: usize) -> Result<bool> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if u >= t.n() {
        return Err(Error::UnknownVertex(u));
    }
    let tables = TreeTables::new(t, 0);
    let (a, b) = tables.top_two(t, u);
    Ok(a + b >= ell)
}

#[derive(Clone, Debug)]
pub struct IncidenceReport {
    pub ell: usize,
    pub vertex_incident: Vec<bool>,
    pub edge_incident: Vec<bool>,
    /// `G[ℓ]`, with the ids of `G`.
    pub subgraph: MultiGraph,
    /// Eccentricity of each vertex lying in a tree component.
    pub eccentricity: Vec<Option<usize>>,
}

impl IncidenceReport {
    pub fn is_everything(&self) -> bool {
        self.vertex_incident.iter().all(|&b| b) && self.edge_incident.iter().all(|&b| b)
    }
}

/// The ℓ-incident units of `g` and the subgraph `G[ℓ]` they form.
pub fn incident_subgraph(g: &MultiGraph, ell: usize) -> IncidenceReport {
    let n = g.n();
    let mut vertex_incident = vec![ell == 0; n];
    let mut edge_incident = vec![ell == 0; g.m()];
    let mut eccentricity = vec![None; n];
    let (label, count) = g.component_labels();
    let mut sizes = vec![(0usize, 0usize); count];
    for &c in &label {
        sizes[c].0 += 1;
    }
    for &(a, _) in g.edges() {
        sizes[label[a]].1 += 1;
    }
    let mut tables = Vec::with_capacity(count);
    let mut done = vec![false; count];
    for v in 0..n {
        let c = label[v];
        if done[c] {
            continue;
        }
        done[c] = true;
        let (nv, ne) = sizes[c];
        tables.push((c, (ne + 1 == nv).then(|| TreeTables::new(g, v))));
    }
    let mut tree_of = vec![usize::MAX; count];
    for (i, (c, t)) in tables.iter().enumerate() {
        if t.is_some() {
            tree_of[*c] = i;
        }
    }
    for v in 0..n {
        let c = label[v];
        match tables.get(tree_of[c]).and_then(|(_, t)| t.as_ref()) {
            Some(t) => {
                let (a, b) = t.top_two(g, v);
                eccentricity[v] = Some(a);
                if ell > 0 {
                    vertex_incident[v] = a + b >= ell;
                }
            }
            None => {
                if ell > 0 {
                    vertex_incident[v] = true;
                }
            }
        }
    }
    if ell > 0 {
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            edge_incident[e] = vertex_incident[a] && vertex_incident[b];
        }
    }
    let vs: Vec<usize> = (0..n).filter(|&v| vertex_incident[v]).collect();
    let es: Vec<usize> = (0..g.m()).filter(|&e| edge_incident[e]).collect();
    let report = IncidenceReport { ell, vertex_incident, edge_incident, subgraph: g.subgraph(&vs, &es), eccentricity };
    debug_assert_eq!(check_tree_shape(g, &report), Ok(()));
    report
}

/// Checks the shape of `T[ℓ]` inside every tree component `T`: each vertex
/// `u` of `X := T[ℓ]` either has `ecc_X(u) ≥ ℓ − 1` and nothing hanging
/// off it, or has `⌈ℓ/2⌉ ≤ ecc_X(u) ≤ ℓ − 2` and a hanging tree `T^u` with
/// `ecc_X(u) + ecc_{T^u}(u) ≤ ℓ − 1`.
pub fn check_tree_shape(g: &MultiGraph, r: &IncidenceReport) -> std::result::Result<(), String> {
    let ell = r.ell;
    if ell == 0 {
        return Ok(());
    }
    for comp in g.components() {
        if r.eccentricity[comp[0]].is_none() {
            continue;
        }
        let tables = TreeTables::new(g, comp[0]);
        let inside: Vec<usize> = comp.iter().copied().filter(|&v| r.vertex_incident[v]).collect();
        if inside.is_empty() {
            continue;
        }
        let x = g.induced_subgraph(&inside);
        if !x.is_tree() {
            return Err(format!("T[{ell}] of the component at vertex {} is not a tree", comp[0]));
        }
        for (i, &u) in inside.iter().enumerate() {
            let ecc_x = x.eccentricity(i);
            let hanging = g
                .incident(u)
                .iter()
                .filter(|&&(e, _)| !r.edge_incident[e])
                .map(|&(e, _)| tables.branch(g, u, e))
                .max()
                .unwrap_or(0);
            let ok = if hanging == 0 {
                ecc_x + 1 >= ell || (ell.div_ceil(2) <= ecc_x && ecc_x + 2 <= ell)
            } else {
                ell.div_ceil(2) <= ecc_x && ecc_x + 2 <= ell && ecc_x + hanging < ell
            };
            if !ok {
                return Err(format!("vertex {} with ecc {ecc_x} in T[{ell}] and hanging depth {hanging}", g.vertex_id(u)));
            }
        }
    }
    Ok(())
}

/// `G = G[ℓ]`: every unit lies on an ℓ-link.
pub fn is_l_minimal(g: &MultiGraph, ell: usize) -> bool {
    incident_subgraph(g, ell).is_everything()
}

/// `X ∼_ℓ Y`, decided as `X[ℓ] ≅ Y[ℓ]`.
pub fn are_l_equivalent(x: &MultiGraph, y: &MultiGraph, ell: usize) -> bool {
    is_isomorphic(&incident_subgraph(x, ell).subgraph, &incident_subgraph(y, ell).subgraph).is_some()
}

/// Number of ℓ-links, saturating, by dynamic programming over directed
/// edges rather than by listing walks.
pub fn link_count(g: &MultiGraph, ell: usize) -> usize {
    if ell == 0 {
        return g.n();
    }
    let m = g.m();
    // cnt[2e] counts arcs ending with e traversed towards its second end
    let mut cnt = vec![1u128; 2 * m];
    for _ in 1..ell {
        let mut into = vec![0u128; g.n()];
        for e in 0..m {
            let (a, b) = g.ends(e);
            into[b] = into[b].saturating_add(cnt[2 * e]);
            into[a] = into[a].saturating_add(cnt[2 * e + 1]);
        }
        let mut next = vec![0u128; 2 * m];
        for e in 0..m {
            let (a, b) = g.ends(e);
            next[2 * e] = into[a] - cnt[2 * e + 1];
            next[2 * e + 1] = into[b] - cnt[2 * e];
        }
        cnt = next;
    }
    let arcs = cnt.iter().fold(0u128, |s, &c| s.saturating_add(c));
    usize::try_from(arcs / 2).unwrap_or(usize::MAX)
}

/// `i_G(ℓ, s)`: pairs `(L, R)` of an ℓ-link `L` and an s-link `R` lying on
/// it as a segment.
pub fn incidence_count(g: &MultiGraph, ell: usize, s: usize) -> usize {
    assert!(s <= ell, "incidence_count needs s ≤ ℓ");
    let links = enumerate_links(g, ell);
    let total: usize = links
        .iter()
        .map(|l| {
            let segs: HashSet<Link> = (0..=ell - s).map(|i| Link::new(l.arc().segment(i, i + s).unwrap())).collect();
            segs.len()
        })
        .sum();
    let width = ell - s + 1;
    let girth = g.girth();
    let low = if girth == INFINITE_GIRTH { width } else { girth.min(width) };
    assert!(low * links.len() <= total && total <= width * links.len(), "incidence count {total} outside its bounds");
    total
}

/// `T(v, ℓ)`: an end of a new ℓ-path pasted at `v`. Its ℓ-link graph is
/// `T` again once ℓ exceeds the threshold `t_v`.
pub fn copy_root(t: &MultiGraph, v: usize, ell: usize) -> Result<MultiGraph> {
    let tv = copy_threshold(t, v)?;
    if (ell as i64) < tv + 1 {
        return Err(Error::EllTooSmall(tv + 1));
    }
    let root = paste_path(t, v, ell);
    assert!(is_isomorphic(&link_graph(&root, ell).graph, t).is_some(), "copy root does not reproduce the tree");
    Ok(root)
}

/// The threshold `t_v` of [`copy_root`].
pub fn copy_threshold(t: &MultiGraph, v: usize) -> Result<i64> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if v >= t.n() {
        return Err(Error::UnknownVertex(v));
    }
    if t.degree(v) >= 2 {
        return Ok(t.diameter() as i64);
    }
    if t.max_degree() <= 2 {
        return Ok(-1);
    }
    // walk from the leaf v to the nearest vertex of degree at least 3
    let (mut prev_edge, mut u) = t.incident(v)[0];
    while t.degree(u) < 3 {
        let &(e, w) = t.incident(u).iter().find(|&&(e, _)| e != prev_edge).unwrap();
        prev_edge = e;
        u = w;
    }
    let rest = t.without_edge(prev_edge);
    let dist = rest.distances(u);
    let side: Vec<usize> = (0..rest.n()).filter(|&w| dist[w] != usize::MAX).collect();
    Ok(rest.induced_subgraph(&side).diameter() as i64)
}

/// Two `2s`-paths whose middle vertices are joined by an `(ℓ − s)`-path.
pub fn joined_paths(s: usize, ell: usize) -> MultiGraph {
    assert!(s >= 1 && ell > s);
    let mut g = MultiGraph::new(0);
    let mut mids = Vec::new();
    for _ in 0..2 {
        let first = g.add_vertex();
        let mut prev = first;
        for i in 1..=2 * s {
            let w = g.add_vertex();
            g.add_edge(prev, w).unwrap();
            prev = w;
            if i == s {
                mids.push(w);
            }
        }
    }
    let mut prev = mids[0];
    for _ in 1..ell - s {
        let w = g.add_vertex();
        g.add_edge(prev, w).unwrap();
        prev = w;
    }
    g.add_edge(prev, mids[1]).unwrap();
    g
}

/// `G(s, ℓ)`: two `(s + 1)`-cycles joined by an `(ℓ − s)`-path.
pub fn joined_cycles(s: usize, ell: usize) -> MultiGraph {
    assert!(s >= 1 && ell > s);
    let c = cycle(s + 1);
    let mut g = MultiGraph::disjoint_union(&[&c, &c]);
    let mut prev = 0;
    for _ in 1..ell - s {
        let w = g.add_vertex();
        g.add_edge(prev, w).unwrap();
        prev = w;
    }
    g.add_edge(prev, s + 1).unwrap();
    g
}

/// `C_t` together with the minimal acyclic ℓ-roots of `C_t`: the
/// subdivided claw when `t = 3ℓ`, and [`joined_paths`] when `t = 4s` and
/// `ℓ ≥ 2s + 1`. Every graph is checked to have ℓ-link graph `C_t`.
pub fn cycle_roots_closed_form(t: usize, ell: usize) -> Vec<MultiGraph> {
    assert!(t >= 3, "cycles have length at least 3");
    let mut out = vec![cycle(t)];
    if ell >= 1 && t == 3 * ell {
        out.push(spider(&[ell; 3]));
    }
    if t % 4 == 0 && ell > t / 2 {
        out.push(joined_paths(t / 4, ell));
    }
    let target = cycle(t);
    for g in &out {
        assert!(is_isomorphic(&link_graph(g, ell).graph, &target).is_some(), "closed-form root fails to reproduce C_{t}");
    }
    out
}

/// Members of the ℓ-equivalence class of the ℓ-minimal graph `g` with at
/// most `budget` vertices more than `g`, one per isomorphism class,
/// ordered by order.
pub fn expand_class(g: &MultiGraph, ell: usize, budget: usize) -> Result<Vec<MultiGraph>> {
    if !is_l_minimal(g, ell) {
        return Err(Error::NotMinimal(ell));
    }
    let base = g.with_dense_ids();
    let base_links = link_graph(&base, ell).graph;
    let mut roles = vec![Role::Core { limit: 0 }; base.n()];
    if ell >= 2 {
        for comp in base.components() {
            let sub = base.induced_subgraph(&comp);
            if !sub.is_tree() {
                continue;
            }
            let ecc: Vec<usize> = (0..sub.n()).map(|i| sub.eccentricity(i)).collect();
            if ecc.iter().max().copied().unwrap_or(0) + 2 > 2 * ell {
                continue;
            }
            for (i, &v) in comp.iter().enumerate() {
                if ecc[i] + 2 <= ell {
                    roles[v] = Role::Core { limit: ell - ecc[i] - 1 };
                }
            }
        }
    }
    let mut level = vec![Member { graph: base.clone(), roles, comps: 0 }];
    let mut out = vec![base.clone()];
    for _ in 0..budget {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for x in &level {
            for y in x.children(ell) {
                if seen.insert(certificate(&y.graph)) {
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        for y in &next {
            let core = incident_subgraph(&y.graph, ell).subgraph;
            assert!(is_isomorphic(&core, &base).is_some(), "expanded graph has a different minimal graph");
            assert!(is_isomorphic(&link_graph(&y.graph, ell).graph, &base_links).is_some(), "expanded graph changes the link graph");
            out.push(y.graph.clone());
        }
        level = next;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
enum Role {
    /// Vertex of the minimal graph; trees of height up to `limit` may be
    /// pasted at it.
    Core { limit: usize },
    Pasted { root: usize, depth: usize },
    Extra { comp: usize },
}

#[derive(Clone)]
struct Member {
    graph: MultiGraph,
    roles: Vec<Role>,
    comps: usize,
}

impl Member {
    fn with_leaf(&self, at: Option<usize>, role: Role) -> Member {
        let mut y = self.clone();
        let w = y.graph.add_vertex();
        if let Some(v) = at {
            y.graph.add_edge(v, w).unwrap();
        }
        y.roles.push(role);
        y
    }

    fn children(&self, ell: usize) -> Vec<Member> {
        let mut out = Vec::new();
        for v in 0..self.graph.n() {
            match self.roles[v] {
                Role::Core { limit } if limit >= 1 => out.push(self.with_leaf(Some(v), Role::Pasted { root: v, depth: 1 })),
                Role::Core { .. } => {}
                Role::Pasted { root, depth } => {
                    let Role::Core { limit } = self.roles[root] else { unreachable!() };
                    if depth < limit {
                        out.push(self.with_leaf(Some(v), Role::Pasted { root, depth: depth + 1 }));
                    }
                }
                Role::Extra { comp } => {
                    let y = self.with_leaf(Some(v), Role::Extra { comp });
                    if y.extra_diameter(comp) < ell {
                        out.push(y);
                    }
                }
            }
        }
        if ell >= 1 {
            let mut y = self.with_leaf(None, Role::Extra { comp: self.comps });
            y.comps += 1;
            out.push(y);
        }
        out
    }

    fn extra_diameter(&self, comp: usize) -> usize {
        let vs: Vec<usize> = (0..self.graph.n()).filter(|&v| matches!(self.roles[v], Role::Extra { comp: c } if c == comp)).collect();
        self.graph.induced_subgraph(&vs).diameter()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootMode {
    Link,
    Path,
}

/// Size limits for the minimal roots of `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_degree: usize,
    /// Upper bound used for `ã_ℓ(H)`, the number of acyclic components a
    /// root may have.
    pub acyclic_components: usize,
}

/// `n ≤ ℓ·n(H) + c(H)`, `m ≤ ℓ·n(H)`, and in link mode
/// `Δ ≤ max{c(H), Δ(H)} + 1`. Path mode has no separate degree bound, so
/// the edge bound is reported.
pub fn search_bounds(h: &MultiGraph, ell: usize, mode: RootMode) -> SearchBounds {
    let n = h.n();
    let c = h.component_count();
    let max_edges = ell * n;
    let max_degree = match mode {
        RootMode::Link => c.max(h.max_degree()) + 1,
        RootMode::Path => max_edges,
    };
    SearchBounds { max_vertices: ell * n + c, max_edges, max_degree, acyclic_components: c }
}

#[derive(Clone, Debug)]
pub struct RootBudget {
    pub max_candidates: usize,
    pub deadline: Option<Instant>,
}

impl Default for RootBudget {
    fn default() -> Self {
        RootBudget { max_candidates: 5_000_000, deadline: None }
    }
}

#[derive(Clone, Debug)]
pub struct Root {
    pub graph: MultiGraph,
    /// Isomorphism from the derived graph of `graph` to the target.
    pub witness: Isomorphism,
}

#[derive(Clone, Debug)]
pub struct RootReport {
    pub target: MultiGraph,
    pub ell: usize,
    pub mode: RootMode,
    pub bounds: SearchBounds,
    pub roots: Vec<Root>,
    /// Connected candidates generated.
    pub candidates: usize,
    /// False when the budget cut the search short; `roots` is then partial.
    pub exhaustive: bool,
}

/// The derived graph a root search inverts.
pub fn derive(g: &MultiGraph, ell: usize, mode: RootMode) -> MultiGraph {
    match mode {
        RootMode::Link => link_graph(g, ell).graph,
        RootMode::Path => path_graph(g, ell).graph,
    }
}

/// ℓ-path minimality by definition: deleting any vertex or edge shrinks
/// the ℓ-path graph. Single deletions suffice since ℙ_ℓ is monotone.
pub fn is_path_minimal(g: &MultiGraph, ell: usize) -> bool {
    let full = path_graph(g, ell).graph;
    let size = (full.n(), full.m());
    let smaller = |h: &MultiGraph| {
        let p = path_graph(h, ell).graph;
        (p.n(), p.m()) != size
    };
    (0..g.m()).all(|e| smaller(&g.without_edge(e))) && (0..g.n()).all(|v| smaller(&g.without_vertex(v)))
}

fn is_minimal(g: &MultiGraph, ell: usize, mode: RootMode) -> bool {
    match mode {
        RootMode::Link => is_l_minimal(g, ell),
        RootMode::Path => is_path_minimal(g, ell),
    }
}

/// All minimal ℓ-roots (or ℓ-path roots) of `h` within [`search_bounds`].
///
/// Connected candidates are grown edge by edge, one per isomorphism class,
/// and discarded as soon as they carry more ℓ-links than `h` has vertices
/// or more (ℓ+1)-links than `h` has edges (in path mode: ℓ-paths and edges
/// of the path graph). The ℓ-minimal survivors whose derived graphs are
/// unions of components of `h` are then combined so that the components
/// add up to `h` exactly.
pub fn minimal_roots(h: &MultiGraph, ell: usize, mode: RootMode, budget: &RootBudget) -> RootReport {
    let bounds = search_bounds(h, ell, mode);
    let mut report = RootReport {
        target: h.clone(),
        ell,
        mode,
        bounds,
        roots: Vec::new(),
        candidates: 0,
        exhaustive: true,
    };
    if ell == 0 || h.n() == 0 {
        // 𝕃_0 is the identity and the null graph is its own only root
        if mode == RootMode::Link || h.is_simple() {
            report.roots.extend(witnessed(h, ell, mode, h.clone()));
        }
        return report;
    }
    let (hn, hm) = (h.n(), h.m());
    let limits = GrowthLimits {
        max_vertices: bounds.max_vertices,
        max_edges: bounds.max_edges,
        max_degree: bounds.max_degree,
        max_candidates: budget.max_candidates,
        deadline: budget.deadline,
    };
    let growth = grow_connected(&limits, |g| match mode {
        RootMode::Link => link_count(g, ell) <= hn && link_count(g, ell + 1) <= hm,
        RootMode::Path => enumerate_paths(g, ell).len() <= hn && path_graph(g, ell).graph.m() <= hm,
    });
    report.candidates = growth.candidates;
    report.exhaustive = growth.exhaustive;

    // component types of the target
    let mut types: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut need = Vec::new();
    for comp in h.components() {
        let cert = certificate(&h.induced_subgraph(&comp));
        let next = types.len();
        let t = *types.entry(cert).or_insert(next);
        if t == need.len() {
            need.push(0);
        }
        need[t] += 1;
    }
    let mut pieces: Vec<(MultiGraph, Vec<usize>)> = Vec::new();
    'pieces: for g in growth.graphs {
        if g.m() == 0 || !is_minimal(&g, ell, mode) {
            continue;
        }
        let d = derive(&g, ell, mode);
        let mut have = vec![0; need.len()];
        for comp in d.components() {
            match types.get(&certificate(&d.induced_subgraph(&comp))) {
                Some(&t) if have[t] < need[t] => have[t] += 1,
                _ => continue 'pieces,
            }
        }
        pieces.push((g, have));
    }
    let mut chosen = Vec::new();
    let mut found = Vec::new();
    combine(&pieces, 0, &mut need.clone(), &mut chosen, &mut found);
    let mut seen = HashSet::new();
    for parts in found {
        let refs: Vec<&MultiGraph> = parts.iter().map(|&i| &pieces[i].0).collect();
        let g = MultiGraph::disjoint_union(&refs);
        if !seen.insert(certificate(&g)) {
            continue;
        }
        assert!(is_minimal(&g, ell, mode), "union of minimal components is not minimal");
        let root = witnessed(h, ell, mode, g).expect("component types add up to the target");
        report.roots.push(root);
    }
    report
}

fn witnessed(h: &MultiGraph, ell: usize, mode: RootMode, g: MultiGraph) -> Option<Root> {
    let d = derive(&g, ell, mode);
    let witness = is_isomorphic(&d, h)?;
    assert!(check_isomorphism(&d, h, &witness), "root witness fails to validate");
    Some(Root { graph: g, witness })
}

// Multisets of pieces (indices non-decreasing) whose component counts sum
// to `need`.
fn combine(pieces: &[(MultiGraph, Vec<usize>)], from: usize, need: &mut Vec<usize>, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if need.iter().all(|&k| k == 0) {
        out.push(chosen.clone());
        return;
    }
    for i in from..pieces.len() {
        let have = &pieces[i].1;
        if have.iter().zip(need.iter()).any(|(&a, &b)| a > b) {
            continue;
        }
        for (k, &a) in need.iter_mut().zip(have) {
            *k -= a;
        }
        chosen.push(i);
        combine(pieces, i, need, chosen, out);
        chosen.pop();
        for (k, &a) in need.iter_mut().zip(have) {
            *k += a;
        }
    }
}

/// `ℓ`-links of `g` through some unit, gathered by listing all links. Used
/// as an independent check of [`incident_subgraph`].
pub fn incident_by_listing(g: &MultiGraph, ell: usize) -> (Vec<bool>, Vec<bool>) {
    if ell == 0 {
        return (vec![true; g.n()], vec![true; g.m()]);
    }
    let mut vs = vec![false; g.n()];
    let mut es = vec![false; g.m()];
    for l in enumerate_links(g, ell) {
        for v in l.arc().vertices() {
            vs[v] = true;
        }
        for e in l.arc().edges() {
            es[e] = true;
        }
    }
    (vs, es)
}

/// A minimal subgraph with the same ℓ-link graph, found by deleting units
/// while the numbers of ℓ- and (ℓ+1)-links stay the same. Used as an
/// independent check of [`incident_subgraph`] and [`are_l_equivalent`].
pub fn reduce_by_link_counts(g: &MultiGraph, ell: usize) -> MultiGraph {
    let key = |h: &MultiGraph| (link_count(h, ell), link_count(h, ell + 1));
    let want = key(g);
    let mut g = g.clone();
    'outer: loop {
        for e in 0..g.m() {
            let h = g.without_edge(e);
            if key(&h) == want {
                g = h;
                continue 'outer;
            }
        }
        for v in 0..g.n() {
            let h = g.without_vertex(v);
            if key(&h) == want {
                g = h;
                continue 'outer;
            }
        }
        return g;
    }
}

/// Certificates of the graphs with exactly `extra` more vertices than `g`
/// whose listed incidence subgraph is isomorphic to `g`, found by adding
/// `extra` vertices and up to `extra` edges to `g` in every way. Used as
/// an independent check of [`expand_class`].
pub fn class_by_search(g: &MultiGraph, ell: usize, extra: usize) -> HashSet<Vec<u32>> {
    let mut base = g.with_dense_ids();
    for _ in 0..extra {
        base.add_vertex();
    }
    let n = base.n();
    let mut level = vec![base];
    let mut all = level.clone();
    for _ in 0..extra {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for x in &level {
            for a in 0..n {
                for b in a + 1..n {
                    let mut y = x.clone();
                    y.add_edge(a, b).unwrap();
                    if seen.insert(certificate(&y)) {
                        next.push(y);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    let target = certificate(g);
    all.into_iter()
        .filter(|x| {
            let (vs, es) = incident_by_listing(x, ell);
            let vi: Vec<usize> = (0..x.n()).filter(|&v| vs[v]).collect();
            let ei: Vec<usize> = (0..x.m()).filter(|&e| es[e]).collect();
            certificate(&x.subgraph(&vi, &ei)) == target
        })
        .map(|x| certificate(&x))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{dipole, empty, path, star};

    #[test]
    fn tree_incidence_examples() {
        let k13 = star(3);
        assert!(vertex_incident(&k13, 0, 2).unwrap());
        let p = path(3);
        assert!(!vertex_incident(&p, 0, 4).unwrap());
        let sp = spider(&[2, 2, 1]);
        assert!(vertex_incident(&sp, 0, 4).unwrap());
        let pendant = 5;
        assert_eq!(sp.degree(pendant), 1);
        assert!(!vertex_incident(&sp, pendant, 4).unwrap());
        assert_eq!(vertex_incident(&cycle(3), 0, 1), Err(Error::NotATree));
    }

    #[test]
    fn incidence_subgraph_examples() {
        let sp = spider(&[2, 2, 1]);
        let r = incident_subgraph(&sp, 4);
        assert!(is_isomorphic(&r.subgraph, &path(4)).is_some());
        assert!(!is_l_minimal(&sp, 4));
        let g = dipole(3);
        assert_eq!(incident_subgraph(&g, 0).subgraph, g);
        assert_eq!(incident_subgraph(&path(3), 4).subgraph.n(), 0);
        assert!(is_l_minimal(&path(5), 5));
        assert!(is_l_minimal(&cycle(4), 7));
    }

    #[test]
    fn listing_agrees_on_small_graphs() {
        for g in crate::enumerate::all_multigraphs(5, 5) {
            for ell in 0..5 {
                let r = incident_subgraph(&g, ell);
                let (vs, es) = incident_by_listing(&g, ell);
                assert_eq!(r.vertex_incident, vs, "{g:?} {ell}");
                assert_eq!(r.edge_incident, es, "{g:?} {ell}");
            }
        }
    }

    #[test]
    fn link_count_matches_listing() {
        for g in crate::enumerate::all_multigraphs(4, 5) {
            for ell in 0..5 {
                assert_eq!(link_count(&g, ell), enumerate_links(&g, ell).len());
            }
        }
    }

    #[test]
    fn equivalence_examples() {
        let p = path(4);
        assert!(are_l_equivalent(&p, &p, 4));
        assert!(!are_l_equivalent(&p, &path(5), 4));
        // a pasted star on the middle of a 4-path does not change its class
        let mut t = path(4);
        let w = t.add_vertex();
        t.add_edge(2, w).unwrap();
        assert!(are_l_equivalent(&t, &p, 4));
    }

    #[test]
    fn incidence_counts() {
        let c = cycle(3);
        let links = enumerate_links(&c, 5).len();
        assert_eq!(incidence_count(&c, 5, 5), links);
        assert_eq!(incidence_count(&c, 5, 1), 3 * links);
        let t = spider(&[3, 3, 2]);
        assert_eq!(incidence_count(&t, 4, 1), 4 * enumerate_links(&t, 4).len());
    }

    #[test]
    fn copy_roots() {
        let k1 = MultiGraph::new(1);
        let r = copy_root(&k1, 0, 3).unwrap();
        assert!(is_isomorphic(&r, &path(3)).is_some());
        let p3 = path(3);
        assert_eq!(copy_threshold(&p3, 0).unwrap(), -1);
        assert!(copy_root(&p3, 0, 1).is_ok());
        assert_eq!(copy_root(&p3, 1, 3), Err(Error::EllTooSmall(4)));
        assert!(copy_root(&p3, 1, 4).is_ok());
        // diameter 3, four orbits: two leaves on one side, one on the other
        let mut t = path(3);
        let w = t.add_vertex();
        t.add_edge(1, w).unwrap();
        let mut certs = HashSet::new();
        for v in 0..t.n() {
            certs.insert(certificate(&copy_root(&t, v, 4).unwrap()));
        }
        assert_eq!(certs.len(), 4);
    }

    #[test]
    fn closed_form_cycle_roots() {
        assert_eq!(cycle_roots_closed_form(6, 2).len(), 2);
        assert_eq!(cycle_roots_closed_form(5, 2).len(), 1);
        assert_eq!(cycle_roots_closed_form(4, 3).len(), 2);
        for t in 3..=12 {
            for ell in 0..=8 {
                cycle_roots_closed_form(t, ell);
            }
        }
    }

    #[test]
    fn bounds_examples() {
        let b = search_bounds(&empty(2), 4, RootMode::Link);
        assert_eq!((b.max_edges, b.max_vertices, b.max_degree), (8, 10, 3));
        let b = search_bounds(&cycle(6), 2, RootMode::Link);
        assert_eq!((b.max_edges, b.max_vertices, b.max_degree), (12, 13, 3));
    }

    #[test]
    fn whitney_pair() {
        let r = minimal_roots(&crate::families::complete(3), 1, RootMode::Link, &RootBudget::default());
        assert!(r.exhaustive);
        let mut got: Vec<Vec<u32>> = r.roots.iter().map(|x| certificate(&x.graph)).collect();
        got.sort();
        let mut want = vec![certificate(&cycle(3)), certificate(&star(3))];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn class_expansion_small() {
        assert_eq!(expand_class(&path(2), 2, 0).unwrap().len(), 1);
        let two = MultiGraph::disjoint_union(&[&path(2), &path(2)]);
        let out = expand_class(&two, 2, 1).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[1].n(), 7);
        assert_eq!(expand_class(&spider(&[2, 2, 1]), 4, 1), Err(Error::NotMinimal(4)));
    }
}
