//! Middle units, shunting and connectivity of link graphs.

use std::collections::{HashMap, VecDeque};

use crate::derived::link_graph;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::walks::{conjunction, enumerate_links, neighbour_arcs, Arc, Link, Unit};

/// The subgraph `G(ℓ)` induced by the middle units of all ℓ-links.
#[derive(Clone, Debug)]
pub struct MiddleIndex {
    pub ell: usize,
    /// Vertex positions of `G(ℓ)` in `G`.
    pub vertices: Vec<usize>,
    /// Edge positions of `G(ℓ)` in `G`.
    pub edges: Vec<usize>,
    /// `G(ℓ)` itself, ids kept from `G`.
    pub subgraph: MultiGraph,
    in_vertex: Vec<bool>,
}

impl MiddleIndex {
    pub fn contains_vertex(&self, v: usize) -> bool {
        self.in_vertex[v]
    }

    pub fn contains_edge(&self, g: &MultiGraph, e: usize) -> bool {
        let (a, b) = g.ends(e);
        self.in_vertex[a] && self.in_vertex[b]
    }

    /// Whether every unit of the link lies in `G(ℓ)`.
    pub fn contains_link(&self, l: &Link) -> bool {
        l.arc().vertices().iter().all(|&v| self.in_vertex[v])
    }
}

// ext[(e, dir)] for arcs of a given length starting with e; dir 0 leaves ends.0.
fn extension_table(g: &MultiGraph, k: usize) -> Vec<[bool; 2]> {
    let mut ext = vec![[true; 2]; g.m()];
    for _ in 1..k {
        let mut next = vec![[false; 2]; g.m()];
        for e in 0..g.m() {
            let (a, b) = g.ends(e);
            for (dir, head) in [(0, b), (1, a)] {
                next[e][dir] = g.incident(head).iter().any(|&(f, w)| {
                    f != e && {
                        let d = if g.ends(f).0 == head && g.ends(f).1 == w { 0 } else { 1 };
                        ext[f][d]
                    }
                });
            }
        }
        ext = next;
    }
    ext
}

fn leaves_with_arc(g: &MultiGraph, ext: &[[bool; 2]], v: usize, e: usize) -> bool {
    let d = if g.ends(e).0 == v { 0 } else { 1 };
    ext[e][d]
}

/// Computes `G(ℓ)`.
pub fn middle_subgraph(g: &MultiGraph, ell: usize) -> MiddleIndex {
    let k = ell / 2;
    let mut in_vertex = vec![false; g.n()];
    if ell == 0 {
        in_vertex.iter_mut().for_each(|x| *x = true);
    } else if ell % 2 == 0 {
        let ext = extension_table(g, k);
        for v in 0..g.n() {
            let good = g.incident(v).iter().filter(|&&(e, _)| leaves_with_arc(g, &ext, v, e)).count();
            in_vertex[v] = good >= 2;
        }
    } else {
        let ext = extension_table(g, k.max(1));
        for e in 0..g.m() {
            let (a, b) = g.ends(e);
            let side = |x: usize| k == 0 || g.incident(x).iter().any(|&(f, _)| f != e && leaves_with_arc(g, &ext, x, f));
            if side(a) && side(b) {
                in_vertex[a] = true;
                in_vertex[b] = true;
            }
        }
    }
    let vertices: Vec<usize> = (0..g.n()).filter(|&v| in_vertex[v]).collect();
    let subgraph = g.induced_subgraph(&vertices);
    let edges = (0..g.m())
        .filter(|&e| {
            let (a, b) = g.ends(e);
            in_vertex[a] && in_vertex[b]
        })
        .collect();
    MiddleIndex { ell, vertices, edges, subgraph, in_vertex }
}

/// Breadth-first search over the link graph without building it.
struct ShuntSearch<'a> {
    g: &'a MultiGraph,
    ell: usize,
    links: Vec<Link>,
    index: HashMap<Link, usize>,
}

impl<'a> ShuntSearch<'a> {
    fn new(g: &'a MultiGraph, ell: usize) -> Self {
        let links = enumerate_links(g, ell);
        let index = links.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        ShuntSearch { g, ell, links, index }
    }

    fn neighbours(&self, i: usize) -> Vec<(usize, Arc)> {
        neighbour_arcs(self.g, &self.links[i])
            .into_iter()
            .map(|q| {
                let next = Link::new(q.segment(1, self.ell + 1).unwrap());
                (self.index[&next], q)
            })
            .collect()
    }

    /// Parent pointers of a search from `sources` over links accepted by
    /// `allowed`. Sources point to themselves.
    fn run(&self, sources: &[usize], allowed: impl Fn(usize) -> bool, stop: Option<usize>) -> Vec<Option<(usize, Option<Arc>)>> {
        let mut parent: Vec<Option<(usize, Option<Arc>)>> = vec![None; self.links.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if parent[s].is_none() {
                parent[s] = Some((s, None));
                queue.push_back(s);
            }
        }
        while let Some(i) = queue.pop_front() {
            if Some(i) == stop {
                break;
            }
            for (j, q) in self.neighbours(i) {
                if parent[j].is_none() && allowed(j) {
                    parent[j] = Some((i, Some(q)));
                    queue.push_back(j);
                }
            }
        }
        parent
    }

    fn schedule_to(&self, parent: &[Option<(usize, Option<Arc>)>], target: usize) -> Option<Vec<Arc>> {
        let mut out = Vec::new();
        let mut cur = target;
        loop {
            let (p, q) = parent[cur].clone()?;
            match q {
                None => break,
                Some(q) => out.push(q),
            }
            cur = p;
        }
        out.reverse();
        Some(out)
    }
}

/// A shunting schedule from `L` to `R`: (ℓ+1)-arcs, each moving the current
/// image one step. `None` when `L` cannot be shunted to `R`.
pub fn can_shunt(g: &MultiGraph, ell: usize, l: &Link, r: &Link) -> Option<Vec<Arc>> {
    let search = ShuntSearch::new(g, ell);
    let (&a, &b) = (search.index.get(l)?, search.index.get(r)?);
    let parent = search.run(&[a], |_| true, Some(b));
    search.schedule_to(&parent, b)
}

/// Checks a schedule of shunting arcs from `L` to `R`, with every image's
/// middle unit accepted by `middle_ok`.
pub fn validate_schedule(
    g: &MultiGraph,
    ell: usize,
    l: &Link,
    r: &Link,
    schedule: &[Arc],
    middle_ok: impl Fn(Unit) -> bool,
) -> bool {
    let mut cur = l.clone();
    if !middle_ok(cur.middle_unit()) {
        return false;
    }
    for q in schedule {
        if q.len() < ell || q.validate(g).is_err() {
            return false;
        }
        if Link::new(q.segment(0, ell).unwrap()) != cur {
            return false;
        }
        let s = q.len() - ell;
        for i in 0..=s {
            if !middle_ok(q.segment(i, ell + i).unwrap().middle_unit()) {
                return false;
            }
        }
        cur = Link::new(q.segment(s, ell + s).unwrap());
    }
    cur == *r
}

#[derive(Clone, Debug)]
pub enum ConnectivityCertificate {
    /// Links that reach the hub links, each with its parent; the hub links
    /// of one component are mutually reachable.
    Hub { hubs: Vec<Link>, parents: Vec<(Link, Link)> },
    /// A breadth-first spanning tree of the link graph.
    Tree { parents: Vec<(Link, Link)> },
    /// Two links in different components.
    Unreachable(Link, Link),
    /// The link graph has no vertex.
    Empty,
}

#[derive(Clone, Debug)]
pub struct ConnectivityReport {
    pub connected: bool,
    pub components: usize,
    /// False when some component had to be decided by plain search.
    pub hub_used: bool,
    pub certificate: ConnectivityCertificate,
}

/// Decides whether `𝕃_ℓ(G)` is connected by shunting every link towards the
/// links of `G(ℓ)`, without building the link graph.
///
/// The hub links of a component are mutually reachable. A component of `G`
/// whose part of `G(ℓ)` carries no ℓ-link (for instance an ℓ-path) is
/// decided by plain search instead.
pub fn link_graph_connected(g: &MultiGraph, ell: usize) -> ConnectivityReport {
    let search = ShuntSearch::new(g, ell);
    if search.links.is_empty() {
        return ConnectivityReport { connected: false, components: 0, hub_used: true, certificate: ConnectivityCertificate::Empty };
    }
    let middle = middle_subgraph(g, ell);
    let (label, _) = g.component_labels();
    let mut by_comp: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, l) in search.links.iter().enumerate() {
        by_comp.entry(label[l.arc().tail()]).or_default().push(i);
    }
    let mut comps: Vec<usize> = by_comp.keys().copied().collect();
    comps.sort_unstable();

    let mut hub_used = true;
    let mut components = 0;
    let mut hubs_all = Vec::new();
    let mut parents = Vec::new();
    let mut representatives = Vec::new();
    for c in comps {
        let members = &by_comp[&c];
        let hubs: Vec<usize> = members.iter().copied().filter(|&i| middle.contains_link(&search.links[i])).collect();
        let mid_vertices: Vec<usize> = middle.vertices.iter().copied().filter(|&v| label[v] == c).collect();
        let mid_connected = g.induced_subgraph(&mid_vertices).is_connected();
        let sources = if hubs.is_empty() || !mid_connected {
            hub_used = false;
            vec![members[0]]
        } else {
            hubs.clone()
        };
        let parent = search.run(&sources, |_| true, None);
        components += 1;
        representatives.push(sources[0]);
        for &i in members {
            if let Some((p, Some(_))) = &parent[i] {
                parents.push((search.links[i].clone(), search.links[*p].clone()));
            }
        }
        hubs_all.extend(hubs.iter().map(|&i| search.links[i].clone()));
        let mut seen: Vec<bool> = parent.iter().map(Option::is_some).collect();
        for &i in members {
            if !seen[i] {
                let more = search.run(&[i], |_| true, None);
                for (j, p) in more.iter().enumerate() {
                    if p.is_some() {
                        seen[j] = true;
                    }
                }
                components += 1;
                representatives.push(i);
            }
        }
    }
    let connected = components == 1;
    let certificate = if !connected {
        ConnectivityCertificate::Unreachable(search.links[representatives[0]].clone(), search.links[representatives[1]].clone())
    } else if hub_used {
        ConnectivityCertificate::Hub { hubs: hubs_all, parents }
    } else {
        ConnectivityCertificate::Tree { parents }
    };
    ConnectivityReport { connected, components, hub_used, certificate }
}

/// Number of components of the explicitly built `𝕃_ℓ(G)`.
pub fn link_graph_components(g: &MultiGraph, ell: usize) -> usize {
    link_graph(g, ell).graph.component_count()
}

/// A shunting schedule from `L` to `R` keeping every image's middle unit
/// inside `X`, a connected subgraph of `G(ℓ)` containing both links.
#[derive(Clone, Debug)]
pub struct HubShunt {
    pub schedule: Vec<Arc>,
    /// True when the three-arc construction succeeded; false when the
    /// schedule came from a restricted search.
    pub constructive: bool,
}

pub fn hub_shunt(g: &MultiGraph, ell: usize, x_vertices: &[usize], x_edges: &[usize], l: &Link, r: &Link) -> Result<HubShunt> {
    let middle = middle_subgraph(g, ell);
    let mut in_v = vec![false; g.n()];
    let mut in_e = vec![false; g.m()];
    for &v in x_vertices {
        if v >= g.n() || !middle.contains_vertex(v) {
            return Err(Error::NotInHub(format!("vertex {v} is not in G(ell)")));
        }
        in_v[v] = true;
    }
    for &e in x_edges {
        if e >= g.m() || !middle.contains_edge(g, e) {
            return Err(Error::NotInHub(format!("edge {e} is not in G(ell)")));
        }
        let (a, b) = g.ends(e);
        in_v[a] = true;
        in_v[b] = true;
        in_e[e] = true;
    }
    let xv: Vec<usize> = (0..g.n()).filter(|&v| in_v[v]).collect();
    let xe: Vec<usize> = (0..g.m()).filter(|&e| in_e[e]).collect();
    if !g.subgraph(&xv, &xe).is_connected() {
        return Err(Error::NotInHub("X is not connected".into()));
    }
    let in_x = |u: Unit| match u {
        Unit::Vertex(v) => in_v[v],
        Unit::Edge(e) => in_e[e],
    };
    for link in [l, r] {
        if !link.arc().units().into_iter().all(in_x) {
            return Err(Error::NotInHub(format!("link {:?} is not in X", link.arc())));
        }
    }
    if let Some(schedule) = construct_hub_shunt(g, ell, &in_v, &in_e, l, r) {
        if validate_schedule(g, ell, l, r, &schedule, in_x) {
            return Ok(HubShunt { schedule, constructive: true });
        }
    }
    let search = ShuntSearch::new(g, ell);
    let (a, b) = (search.index[l], search.index[r]);
    let parent = search.run(&[a], |j| in_x(search.links[j].middle_unit()), Some(b));
    let schedule = search
        .schedule_to(&parent, b)
        .ok_or_else(|| Error::NotInHub("no restricted shunting schedule exists".into()))?;
    Ok(HubShunt { schedule, constructive: false })
}

/// Some arc of length `k` from `x` whose first edge is not `avoid`.
fn arc_avoiding(g: &MultiGraph, x: usize, k: usize, avoid: Option<usize>) -> Option<Arc> {
    fn go(g: &MultiGraph, cur: Arc, k: usize, avoid: Option<usize>) -> Option<Arc> {
        if cur.len() == k {
            return Some(cur);
        }
        let last = cur.head_edge().or(avoid);
        for &(e, w) in g.incident(cur.head()) {
            if Some(e) != last {
                if let Some(found) = go(g, cur.extended(e, w), k, avoid) {
                    return Some(found);
                }
            }
        }
        None
    }
    go(g, Arc::vertex(x), k, avoid)
}

fn chain(parts: &[&Arc]) -> Option<Arc> {
    let mut acc = parts[0].clone();
    for p in &parts[1..] {
        acc = conjunction(&acc, p).ok()?;
    }
    Some(acc)
}

/// The three shunting arcs `(L·L2)`, `-(R2·R1·M·L1·L2)`, `(R2·R)`, where
/// `M` is a shared segment through the middle of `L`, or a shortest
/// connecting arc inside `X`.
fn construct_hub_shunt(g: &MultiGraph, ell: usize, in_v: &[bool], in_e: &[bool], l: &Link, r: &Link) -> Option<Vec<Arc>> {
    if l == r {
        return Some(Vec::new());
    }
    let a = l.arc().clone();
    let b = r.arc().clone();
    let (lo, hi) = if ell % 2 == 0 { (ell / 2, ell / 2) } else { (ell / 2, ell / 2 + 1) };
    let shared = r.arc().units().contains(&l.middle_unit());
    // (L, L0 length, L1, R, R1, R0 length, connector)
    let (lv, l1, rv, r1, s0, connector) = if shared {
        let mut found = None;
        'outer: for len in (hi - lo..=ell).rev() {
            for i in (hi.saturating_sub(len))..=lo {
                let j = i + len;
                if j < hi || j > ell {
                    continue;
                }
                let q = a.segment(i, j).unwrap();
                for bb in [b.clone(), b.reversed()] {
                    for k in 0..=ell - len {
                        if bb.segment(k, k + len).unwrap() == q {
                            found = Some((i, j, bb, k));
                            break 'outer;
                        }
                    }
                }
            }
        }
        let (i, j, bb, k) = found?;
        let len = j - i;
        let (la, ra, i, j, k) = if k >= ell - k - len {
            (a.clone(), bb, i, j, k)
        } else {
            (a.reversed(), bb.reversed(), ell - j, ell - i, ell - k - len)
        };
        let q = la.segment(i, j).unwrap();
        let s0 = ell - k - len;
        (la.clone(), la.segment(j, ell).unwrap(), ra.clone(), ra.segment(0, k).unwrap(), s0, q)
    } else {
        let on_r: Vec<usize> = b.vertices();
        let on_l: Vec<usize> = a.vertices();
        let p = shortest_in_x(g, in_v, in_e, &on_r, &on_l)?;
        let (u, v) = (p.head(), p.tail());
        let pos_l = on_l.iter().position(|&x| x == u)?;
        let la = if pos_l <= ell / 2 { a.clone() } else { a.reversed() };
        let pl = la.vertices().iter().position(|&x| x == u).filter(|&q| q <= ell / 2)?;
        let pos_r = on_r.iter().position(|&x| x == v)?;
        let ra = if 2 * pos_r >= ell { b.clone() } else { b.reversed() };
        let pr = ra.vertices().iter().rposition(|&x| x == v).filter(|&q| 2 * q >= ell)?;
        (la.clone(), la.segment(pl, ell).unwrap(), ra.clone(), ra.segment(0, pr).unwrap(), ell - pr, p)
    };
    let l0 = ell - l1.len() - if shared { connector.len() } else { 0 };
    let l2 = arc_avoiding(g, lv.head(), l0, lv.head_edge())?;
    let r2 = arc_avoiding(g, rv.tail(), s0, rv.tail_edge())?.reversed();
    let first = chain(&[&lv, &l2])?;
    let second = chain(&[&r2, &r1, &connector, &l1, &l2])?.reversed();
    let third = chain(&[&r2, &rv])?;
    Some(vec![first, second, third])
}

/// Shortest arc inside `X` from a vertex of `from` to a vertex of `to`.
fn shortest_in_x(g: &MultiGraph, in_v: &[bool], in_e: &[bool], from: &[usize], to: &[usize]) -> Option<Arc> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    let mut queue = VecDeque::new();
    for &v in from {
        if !seen[v] {
            seen[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        if to.contains(&v) {
            let mut seq = vec![v as u32];
            let mut cur = v;
            while let Some((e, p)) = prev[cur] {
                seq.push(e as u32);
                seq.push(p as u32);
                cur = p;
            }
            seq.reverse();
            return Some(Arc::from_raw(seq));
        }
        for &(e, w) in g.incident(v) {
            if in_e[e] && in_v[w] && !seen[w] {
                seen[w] = true;
                prev[w] = Some((e, v));
                queue.push_back(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> MultiGraph {
        MultiGraph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn middle_subgraph_of_path() {
        let p = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let m = middle_subgraph(&p, 4);
        assert_eq!(m.vertices, vec![2]);
        let m = middle_subgraph(&p, 3);
        assert_eq!(m.vertices, vec![1, 2, 3]);
        let m = middle_subgraph(&p, 0);
        assert_eq!(m.vertices.len(), 5);
    }

    #[test]
    fn hub_agrees_on_small_graphs() {
        let gs = [
            graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]),
            graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]),
            graph(4, &[(0, 1), (0, 2), (0, 3)]),
            graph(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]),
            graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]),
            graph(2, &[(0, 1), (0, 1), (0, 1)]),
        ];
        for g in &gs {
            for ell in 0..5 {
                let rep = link_graph_connected(g, ell);
                let direct = link_graph_components(g, ell);
                assert_eq!(rep.components, direct, "{g:?} {ell}");
                assert_eq!(rep.connected, direct == 1);
            }
        }
    }

    #[test]
    fn path_needs_fallback() {
        let p = graph(3, &[(0, 1), (1, 2)]);
        let rep = link_graph_connected(&p, 2);
        assert!(rep.connected);
        assert!(!rep.hub_used);
    }

    #[test]
    fn shunting_on_a_cycle() {
        let c = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let links = enumerate_links(&c, 2);
        let s = can_shunt(&c, 2, &links[0], &links[3]).unwrap();
        assert!(validate_schedule(&c, 2, &links[0], &links[3], &s, |_| true));
    }

    #[test]
    fn hub_shunt_on_theta() {
        // two triangles sharing an edge plus a pendant path
        let g = graph(6, &[(0, 1), (1, 2), (2, 0), (1, 3), (3, 2), (0, 4), (4, 5)]);
        let mut built = 0;
        let mut total = 0;
        for ell in 1..4 {
            let m = middle_subgraph(&g, ell);
            let links: Vec<Link> = enumerate_links(&g, ell).into_iter().filter(|l| m.contains_link(l)).collect();
            for l in &links {
                for r in &links {
                    let hs = hub_shunt(&g, ell, &m.vertices, &m.edges, l, r).unwrap();
                    total += 1;
                    built += hs.constructive as usize;
                    assert!(validate_schedule(&g, ell, l, r, &hs.schedule, |u| match u {
                        Unit::Vertex(v) => m.contains_vertex(v),
                        Unit::Edge(e) => m.contains_edge(&g, e),
                    }));
                }
            }
        }
        assert!(built * 2 > total);
    }

    #[test]
    fn rejects_outside_hub() {
        let p = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let links = enumerate_links(&p, 4);
        assert!(matches!(hub_shunt(&p, 4, &[0], &[], &links[0], &links[0]), Err(Error::NotInHub(_))));
    }
}
