//! Arcs, links, paths and cycles.
//!
//! An ℓ-arc is stored as the interleaved sequence `v0, e1, v1, …, eℓ, vℓ`
//! of vertex and edge positions. A link is an arc identified with its
//! reverse; the stored orientation is the lexicographically smaller one.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc(Vec<u32>);

/// A vertex or an edge of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    Vertex(usize),
    Edge(usize),
}

impl Arc {
    /// The 0-arc at `v`.
    pub fn vertex(v: usize) -> Arc {
        Arc(vec![v as u32])
    }

    /// Builds an arc from vertices `v0..vℓ` and edges `e1..eℓ`, checking
    /// incidence and that consecutive edges differ.
    pub fn new(g: &MultiGraph, vertices: &[usize], edges: &[usize]) -> Result<Arc> {
        if vertices.len() != edges.len() + 1 {
            return Err(Error::NotAnArc("need one more vertex than edges".into()));
        }
        let mut seq = Vec::with_capacity(2 * edges.len() + 1);
        seq.push(vertices[0] as u32);
        for (i, &e) in edges.iter().enumerate() {
            seq.push(e as u32);
            seq.push(vertices[i + 1] as u32);
        }
        let arc = Arc(seq);
        arc.validate(g)?;
        Ok(arc)
    }

    /// Wraps an interleaved sequence without checks.
    pub fn from_raw(seq: Vec<u32>) -> Arc {
        debug_assert!(seq.len() % 2 == 1);
        Arc(seq)
    }

    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        for i in 0..=self.len() {
            if self.v(i) >= g.n() {
                return Err(Error::UnknownVertex(self.v(i)));
            }
        }
        for i in 1..=self.len() {
            let e = self.e(i);
            if e >= g.m() {
                return Err(Error::UnknownEdge(e));
            }
            let (a, b) = g.ends(e);
            let (x, y) = (self.v(i - 1), self.v(i));
            if !((a, b) == (x, y) || (a, b) == (y, x)) {
                return Err(Error::NotAnArc(format!("edge {e} does not join {x} and {y}")));
            }
            if i > 1 && self.e(i - 1) == e {
                return Err(Error::NotAnArc(format!("edge {e} repeated consecutively")));
            }
        }
        Ok(())
    }

    pub fn raw(&self) -> &[u32] {
        &self.0
    }

    /// Length ℓ.
    pub fn len(&self) -> usize {
        self.0.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Vertex `v_i`, `0 ≤ i ≤ ℓ`.
    pub fn v(&self, i: usize) -> usize {
        self.0[2 * i] as usize
    }

    /// Edge `e_i`, `1 ≤ i ≤ ℓ`.
    pub fn e(&self, i: usize) -> usize {
        self.0[2 * i - 1] as usize
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..=self.len()).map(|i| self.v(i)).collect()
    }

    pub fn edges(&self) -> Vec<usize> {
        (1..=self.len()).map(|i| self.e(i)).collect()
    }

    pub fn tail(&self) -> usize {
        self.v(0)
    }

    pub fn head(&self) -> usize {
        self.v(self.len())
    }

    pub fn tail_edge(&self) -> Option<usize> {
        (self.len() > 0).then(|| self.e(1))
    }

    pub fn head_edge(&self) -> Option<usize> {
        (self.len() > 0).then(|| self.e(self.len()))
    }

    pub fn reversed(&self) -> Arc {
        let mut seq = self.0.clone();
        seq.reverse();
        Arc(seq)
    }

    /// The segment `A(i, j)`; for `i > j` it is the reverse of `A(j, i)`.
    pub fn segment(&self, i: usize, j: usize) -> Result<Arc> {
        let l = self.len();
        if i > l || j > l {
            return Err(Error::InvalidSegment(i, j, l));
        }
        if i <= j {
            Ok(Arc(self.0[2 * i..=2 * j].to_vec()))
        } else {
            Ok(Arc(self.0[2 * j..=2 * i].iter().rev().copied().collect()))
        }
    }

    fn seg(&self, i: usize, j: usize) -> Arc {
        Arc(self.0[2 * i..=2 * j].to_vec())
    }

    /// Extends the arc at its head by `e` to `w`.
    pub fn extended(&self, e: usize, w: usize) -> Arc {
        let mut seq = self.0.clone();
        seq.push(e as u32);
        seq.push(w as u32);
        Arc(seq)
    }

    pub fn is_closed(&self) -> bool {
        self.tail() == self.head()
    }

    /// No vertex repeats.
    pub fn is_path(&self) -> bool {
        let mut vs = self.vertices();
        vs.sort_unstable();
        vs.windows(2).all(|w| w[0] != w[1])
    }

    /// Length at least 2, closed, and `A(0, ℓ-1)` is a path.
    pub fn is_cycle(&self) -> bool {
        let l = self.len();
        l >= 2 && self.is_closed() && self.seg(0, l - 1).is_path()
    }

    /// Middle unit: a vertex for even length, an edge for odd length.
    pub fn middle_unit(&self) -> Unit {
        let l = self.len();
        if l % 2 == 0 {
            Unit::Vertex(self.v(l / 2))
        } else {
            Unit::Edge(self.e(l.div_ceil(2)))
        }
    }

    pub fn units(&self) -> Vec<Unit> {
        let mut out: Vec<Unit> = self.vertices().into_iter().map(Unit::Vertex).collect();
        out.extend(self.edges().into_iter().map(Unit::Edge));
        out
    }

    /// Arc with positions replaced by ids of `g`, as a display sequence.
    pub fn to_ids(&self, g: &MultiGraph) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &x)| if k % 2 == 0 { g.vertex_id(x as usize) } else { g.edge_id(x as usize) })
            .collect()
    }
}

impl fmt::Debug for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if k % 2 == 0 {
                write!(f, "v{x}")?;
            } else {
                write!(f, "e{x}")?;
            }
        }
        write!(f, "]")
    }
}

/// An arc up to reversal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Link(Arc);

impl Link {
    pub fn new(arc: Arc) -> Link {
        let rev = arc.reversed();
        if rev < arc {
            Link(rev)
        } else {
            Link(arc)
        }
    }

    /// The canonical orientation.
    pub fn arc(&self) -> &Arc {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn middle_unit(&self) -> Unit {
        self.0.middle_unit()
    }

    pub fn is_path(&self) -> bool {
        self.0.is_path()
    }

    pub fn is_cycle(&self) -> bool {
        self.0.is_cycle() || self.0.reversed().is_cycle()
    }
}

impl From<Arc> for Link {
    fn from(arc: Arc) -> Link {
        Link::new(arc)
    }
}

/// All ℓ-arcs, by depth-first search in id order.
pub fn enumerate_arcs(g: &MultiGraph, ell: usize) -> Vec<Arc> {
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(2 * ell + 1);
    for v in 0..g.n() {
        seq.push(v as u32);
        extend_arcs(g, ell, &mut seq, &mut out);
        seq.pop();
    }
    out
}

fn extend_arcs(g: &MultiGraph, ell: usize, seq: &mut Vec<u32>, out: &mut Vec<Arc>) {
    if seq.len() == 2 * ell + 1 {
        out.push(Arc(seq.clone()));
        return;
    }
    let v = *seq.last().unwrap() as usize;
    let prev = (seq.len() > 1).then(|| seq[seq.len() - 2] as usize);
    for &(e, w) in g.incident(v) {
        if Some(e) == prev {
            continue;
        }
        seq.push(e as u32);
        seq.push(w as u32);
        extend_arcs(g, ell, seq, out);
        seq.pop();
        seq.pop();
    }
}

/// All ℓ-links, each in canonical orientation, in enumeration order.
pub fn enumerate_links(g: &MultiGraph, ell: usize) -> Vec<Link> {
    enumerate_arcs(g, ell)
        .into_iter()
        .filter(|a| {
            let r = a.reversed();
            *a <= r
        })
        .map(Link)
        .collect()
}

/// Number of ℓ-links.
pub fn count_links(g: &MultiGraph, ell: usize) -> usize {
    if ell == 0 {
        return g.n();
    }
    let arcs: usize = (0..g.m())
        .map(|e| {
            let (a, b) = g.ends(e);
            count_half(g, ell - 1, b, e) + count_half(g, ell - 1, a, e)
        })
        .sum();
    arcs / 2
}

// Number of arcs of length k starting at v whose first edge differs from `avoid`.
fn count_half(g: &MultiGraph, k: usize, v: usize, avoid: usize) -> usize {
    if k == 0 {
        return 1;
    }
    g.incident(v).iter().filter(|&&(e, _)| e != avoid).map(|&(e, w)| count_half(g, k - 1, w, e)).sum()
}

/// ℓ-paths: links without repeated vertices.
pub fn enumerate_paths(g: &MultiGraph, ell: usize) -> Vec<Link> {
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(2 * ell + 1);
    let mut used = vec![false; g.n()];
    for v in 0..g.n() {
        seq.push(v as u32);
        used[v] = true;
        extend_paths(g, ell, &mut seq, &mut used, &mut out);
        used[v] = false;
        seq.pop();
    }
    out
}

fn extend_paths(g: &MultiGraph, ell: usize, seq: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Link>) {
    if seq.len() == 2 * ell + 1 {
        let a = Arc(seq.clone());
        if a <= a.reversed() {
            out.push(Link(a));
        }
        return;
    }
    let v = *seq.last().unwrap() as usize;
    for &(e, w) in g.incident(v) {
        if used[w] {
            continue;
        }
        used[w] = true;
        seq.push(e as u32);
        seq.push(w as u32);
        extend_paths(g, ell, seq, used, out);
        seq.pop();
        seq.pop();
        used[w] = false;
    }
}

/// ℓ-cycles (ℓ ≥ 2) as links; each cyclic rotation and direction is a
/// separate arc, and arcs are identified with their reverses.
pub fn enumerate_cycles(g: &MultiGraph, ell: usize) -> Vec<Link> {
    if ell < 2 {
        return Vec::new();
    }
    enumerate_paths(g, ell - 1)
        .into_iter()
        .flat_map(|p| {
            let a = p.arc().clone();
            [a.clone(), a.reversed()]
        })
        .flat_map(|a| {
            let head = a.head();
            let tail = a.tail();
            let last = a.head_edge();
            g.incident(head)
                .iter()
                .filter(move |&&(e, w)| w == tail && Some(e) != last)
                .map(move |&(e, w)| a.extended(e, w))
                .collect::<Vec<_>>()
        })
        .filter(|a| *a <= a.reversed())
        .map(Link)
        .collect()
}

/// `A · B`: defined when the head of `A` is the tail of `B` and, if both
/// have edges, the head edge of `A` differs from the tail edge of `B`.
pub fn conjunction(a: &Arc, b: &Arc) -> Result<Arc> {
    if a.head() != b.tail() {
        return Err(Error::NotConjunctive);
    }
    if let (Some(x), Some(y)) = (a.head_edge(), b.tail_edge()) {
        if x == y {
            return Err(Error::NotConjunctive);
        }
    }
    let mut seq = a.0.clone();
    seq.extend_from_slice(&b.0[1..]);
    Ok(Arc(seq))
}

/// Images `L_i = Q(i, ℓ+i)` and bridges `Q_i = Q(i-1, ℓ+i)` of shunting
/// an ℓ-arc through the arc `Q` of length `ℓ+s`.
pub fn shunt_images(q: &Arc, ell: usize) -> Result<(Vec<Arc>, Vec<Arc>)> {
    if q.len() < ell {
        return Err(Error::InvalidSegment(0, ell, q.len()));
    }
    let s = q.len() - ell;
    let images = (0..=s).map(|i| q.seg(i, ell + i)).collect();
    let bridges = (1..=s).map(|i| q.seg(i - 1, ell + i)).collect();
    Ok((images, bridges))
}

/// When `L` and `R` are joined by two edges of the ℓ-link graph, returns
/// the 2-cycle `(u, e, v, f, u)` they alternate on.
pub fn multiplicity_witness(g: &MultiGraph, ell: usize, l: &Link, r: &Link) -> Option<Arc> {
    let joining: Vec<Arc> = neighbour_arcs(g, l).into_iter().filter(|q| Link::new(q.seg(1, ell + 1)) == *r).collect();
    if joining.len() < 2 || ell == 0 {
        return None;
    }
    let a = l.arc();
    let (e, f) = (a.e(1), if ell >= 2 { a.e(2) } else { r.arc().e(1) });
    let (u, v) = (a.v(0), a.v(1));
    let alternating_l = (1..=ell).all(|i| a.e(i) == if i % 2 == 1 { e } else { f });
    let alternating_r = r.arc().edges().iter().all(|&x| x == e || x == f);
    let parallel = g.edges_between(u, v).contains(&f) && e != f;
    (alternating_l && alternating_r && parallel).then(|| Arc(vec![u as u32, e as u32, v as u32, f as u32, u as u32]))
}

/// The (ℓ+1)-arcs that begin with some orientation of `L`; their final
/// ℓ-segments are the neighbours of `L` in the link graph.
pub fn neighbour_arcs(g: &MultiGraph, l: &Link) -> Vec<Arc> {
    let a = l.arc();
    let mut out = Vec::new();
    let mut push_from = |arc: &Arc| {
        let last = arc.head_edge();
        for &(e, w) in g.incident(arc.head()) {
            if Some(e) != last {
                out.push(arc.extended(e, w));
            }
        }
    };
    push_from(a);
    if !a.is_empty() {
        push_from(&a.reversed());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d2() -> MultiGraph {
        MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn dipole_links() {
        let g = d2();
        // two edges alternate, so there are two arcs per start and direction
        assert_eq!(enumerate_arcs(&g, 3).len(), 4);
        assert_eq!(enumerate_links(&g, 3).len(), 2);
        assert_eq!(count_links(&g, 3), 2);
        assert!(enumerate_paths(&g, 2).is_empty());
        assert_eq!(enumerate_cycles(&g, 2).len(), 2);
    }

    #[test]
    fn triangle_cycles() {
        let g = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        // three starting points, identified with reverses
        assert_eq!(enumerate_cycles(&g, 3).len(), 3);
        assert_eq!(enumerate_paths(&g, 2).len(), 3);
    }

    #[test]
    fn no_palindromes() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (0, 1)]).unwrap();
        for l in 1..5 {
            for a in enumerate_arcs(&g, l) {
                assert_ne!(a, a.reversed());
            }
            assert_eq!(enumerate_arcs(&g, l).len(), 2 * enumerate_links(&g, l).len());
            assert_eq!(count_links(&g, l), enumerate_links(&g, l).len());
        }
    }

    #[test]
    fn segments_and_conjunction() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let a = Arc::new(&g, &[0, 1, 2, 3], &[0, 1, 2]).unwrap();
        assert_eq!(a.segment(3, 1).unwrap(), a.segment(1, 3).unwrap().reversed());
        let left = a.segment(0, 2).unwrap();
        let right = a.segment(2, 3).unwrap();
        assert_eq!(conjunction(&left, &right).unwrap(), a);
        let back = a.segment(2, 1).unwrap();
        assert_eq!(conjunction(&left, &back), Err(Error::NotConjunctive));
        let (images, bridges) = shunt_images(&a, 1).unwrap();
        assert_eq!(images.len(), 3);
        assert_eq!(bridges.len(), 2);
        assert_eq!(bridges[0], a.segment(0, 2).unwrap());
    }

    #[test]
    fn parallel_witness() {
        let g = d2();
        let l = enumerate_links(&g, 1);
        let w = multiplicity_witness(&g, 1, &l[0], &l[1]).unwrap();
        assert!(w.is_cycle());
    }

    #[test]
    fn rejects_backtracking() {
        let g = MultiGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(Arc::new(&g, &[0, 1, 0], &[0, 0]).is_err());
    }
}
