//! Vertex and edge colourings: exact search, greedy baselines, the
//! recolouring reduction and colourings of link graphs.

use num_bigint::BigInt;
use serde::Serialize;

use crate::derived::link_graph;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::partition::{natural_partition, quotient_embedding, quotient_graph};

/// Default vertex limit for exact colouring.
pub const DEFAULT_EXACT_LIMIT: usize = 12;

/// A proper colouring with colours `0..palette`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub palette: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Coloring {
        let palette = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        Coloring { colors, palette }
    }

    /// Colours relabelled `0, 1, …` in order of first use.
    pub fn compacted(&self) -> Coloring {
        let mut map = vec![usize::MAX; self.palette];
        let mut next = 0;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if map[c] == usize::MAX {
                    map[c] = next;
                    next += 1;
                }
                map[c]
            })
            .collect();
        Coloring { colors, palette: next }
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.palette];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn check(&self, g: &MultiGraph) -> Result<()> {
        if self.colors.len() != g.n() {
            return Err(Error::Invalid(format!("{} colours for {} vertices", self.colors.len(), g.n())));
        }
        match g.edges().iter().position(|&(a, b)| self.colors[a] == self.colors[b]) {
            Some(e) => Err(Error::ImproperColoring(g.edge_id(e))),
            None => Ok(()),
        }
    }

    pub fn is_proper(&self, g: &MultiGraph) -> bool {
        self.check(g).is_ok()
    }
}

fn simple_adjacency(g: &MultiGraph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|v| g.neighbors(v)).collect()
}

/// Greedy colouring in the given vertex order.
pub fn greedy_coloring(g: &MultiGraph, order: &[usize]) -> Result<Coloring> {
    let n = g.n();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(Error::Invalid("order is not a permutation of the vertices".into()));
    }
    let mut colors = vec![usize::MAX; n];
    let mut used = Vec::new();
    for &v in order {
        used.clear();
        used.extend(g.incident(v).iter().map(|&(_, w)| colors[w]).filter(|&c| c != usize::MAX));
        used.sort_unstable();
        used.dedup();
        colors[v] = used.iter().enumerate().find(|&(i, &c)| i != c).map_or(used.len(), |(i, _)| i);
    }
    Ok(Coloring::new(colors))
}

/// Outcome of a colouring search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChromaticSearch {
    pub coloring: Coloring,
    /// The palette is known to be the chromatic number.
    pub optimal: bool,
    pub nodes: u64,
}

struct Dsatur {
    adj: Vec<Vec<usize>>,
    colors: Vec<usize>,
    sat: Vec<u32>,
    satdeg: Vec<usize>,
    stride: usize,
    best: Vec<usize>,
    best_k: usize,
    lower: usize,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Dsatur {
    fn new(adj: Vec<Vec<usize>>, budget: u64) -> Dsatur {
        let n = adj.len();
        let stride = n + 1;
        Dsatur {
            adj,
            colors: vec![usize::MAX; n],
            sat: vec![0; n * stride],
            satdeg: vec![0; n],
            stride,
            best: Vec::new(),
            best_k: usize::MAX,
            lower: 0,
            nodes: 0,
            budget,
            aborted: false,
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            let s = &mut self.sat[w * self.stride + c];
            if *s == 0 {
                self.satdeg[w] += 1;
            }
            *s += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colors[v];
        self.colors[v] = usize::MAX;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            let s = &mut self.sat[w * self.stride + c];
            *s -= 1;
            if *s == 0 {
                self.satdeg[w] -= 1;
            }
        }
    }

    fn pick(&self) -> usize {
        let mut best = usize::MAX;
        let mut key = (0, 0);
        for v in 0..self.adj.len() {
            if self.colors[v] == usize::MAX {
                let k = (self.satdeg[v], self.adj[v].len());
                if best == usize::MAX || k > key {
                    best = v;
                    key = k;
                }
            }
        }
        best
    }

    fn search(&mut self, colored: usize, k: usize) {
        if self.aborted || self.best_k <= self.lower || k >= self.best_k {
            return;
        }
        if colored == self.adj.len() {
            self.best = self.colors.clone();
            self.best_k = k;
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let v = self.pick();
        for c in 0..k {
            if self.sat[v * self.stride + c] == 0 {
                self.assign(v, c);
                self.search(colored + 1, k);
                self.unassign(v);
            }
        }
        if k + 1 < self.best_k {
            self.assign(v, k);
            self.search(colored + 1, k + 1);
            self.unassign(v);
        }
    }
}

/// A large clique found greedily from every starting vertex.
pub fn greedy_clique(g: &MultiGraph) -> Vec<usize> {
    let adj = simple_adjacency(g);
    let mut best = Vec::new();
    for s in 0..g.n() {
        let mut clique = vec![s];
        let mut cand: Vec<usize> = adj[s].clone();
        while !cand.is_empty() {
            let &v = cand.iter().max_by_key(|&&v| (adj[v].iter().filter(|w| cand.contains(w)).count(), std::cmp::Reverse(v))).unwrap();
            clique.push(v);
            cand.retain(|&w| w != v && adj[v].contains(&w));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

/// DSATUR branch and bound with a clique lower bound. Stops after
/// `budget` search nodes, keeping the best colouring found.
pub fn chromatic_search(g: &MultiGraph, budget: u64) -> ChromaticSearch {
    let n = g.n();
    if n == 0 {
        return ChromaticSearch { coloring: Coloring::new(Vec::new()), optimal: true, nodes: 0 };
    }
    let mut s = Dsatur::new(simple_adjacency(g), budget);
    s.lower = greedy_clique(g).len();
    // a first descent gives the DSATUR heuristic colouring
    let mut heuristic = Dsatur::new(s.adj.clone(), u64::MAX);
    for _ in 0..n {
        let v = heuristic.pick();
        let c = (0..).find(|&c| heuristic.sat[v * heuristic.stride + c] == 0).unwrap();
        heuristic.assign(v, c);
    }
    s.best = heuristic.colors;
    s.best_k = s.best.iter().max().unwrap() + 1;
    s.search(0, 0);
    let optimal = !s.aborted;
    ChromaticSearch { coloring: Coloring::new(s.best).compacted(), optimal, nodes: s.nodes }
}

/// DSATUR heuristic colouring.
pub fn dsatur_coloring(g: &MultiGraph) -> Coloring {
    chromatic_search(g, 0).coloring
}

/// `χ(G)` with an optimal colouring, for `n(G) ≤ DEFAULT_EXACT_LIMIT`.
/// Parallel edges count as one adjacency.
pub fn exact_chromatic(g: &MultiGraph) -> Result<(usize, Coloring)> {
    exact_chromatic_with_limit(g, DEFAULT_EXACT_LIMIT)
}

pub fn exact_chromatic_with_limit(g: &MultiGraph, limit: usize) -> Result<(usize, Coloring)> {
    if g.n() > limit {
        return Err(Error::TooLarge { n: g.n(), limit });
    }
    let s = chromatic_search(g, u64::MAX);
    Ok((s.coloring.palette, s.coloring))
}

/// Simple graph on the edges of `g`, two edges adjacent when they share an
/// end.
pub fn edge_adjacency_graph(g: &MultiGraph) -> MultiGraph {
    let mut h = MultiGraph::new(g.m());
    for e in 0..g.m() {
        let (a, b) = g.ends(e);
        for f in e + 1..g.m() {
            let (c, d) = g.ends(f);
            if a == c || a == d || b == c || b == d {
                h.add_edge(e, f).unwrap();
            }
        }
    }
    h
}

/// `χ'(G)` with an optimal edge colouring (indexed by edge position), for
/// `m(G) ≤ DEFAULT_EXACT_LIMIT`.
pub fn exact_edge_chromatic(g: &MultiGraph) -> Result<(usize, Coloring)> {
    exact_edge_chromatic_with_limit(g, DEFAULT_EXACT_LIMIT)
}

pub fn exact_edge_chromatic_with_limit(g: &MultiGraph, limit: usize) -> Result<(usize, Coloring)> {
    if g.m() > limit {
        return Err(Error::TooLarge { n: g.m(), limit });
    }
    let (k, c) = exact_chromatic_with_limit(&edge_adjacency_graph(g), limit)?;
    debug_assert!(2 * k <= 3 * g.max_degree(), "Shannon bound");
    Ok((k, c))
}

/// `⌊tr/(r+1)⌋ + 1`, or 0 for `t = 0`.
pub fn reduction_bound(t: usize, r: usize) -> usize {
    if t == 0 {
        0
    } else {
        t * r / (r + 1) + 1
    }
}

/// Recolours a proper `t`-colouring in which every vertex sees at most `r`
/// colours among its neighbours. Classes are visited from the last colour
/// down; each vertex takes the least colour absent from its neighbourhood
/// when that is smaller than its class. The result is compacted and uses at
/// most `⌊tr/(r+1)⌋ + 1` colours.
pub fn reduce_coloring(h: &MultiGraph, input: &Coloring, r: usize) -> Result<Coloring> {
    input.check(h)?;
    let t = input.palette;
    let mut seen = Vec::new();
    for v in 0..h.n() {
        seen.clear();
        seen.extend(h.incident(v).iter().map(|&(_, w)| input.colors[w]));
        seen.sort_unstable();
        seen.dedup();
        if seen.len() > r {
            return Err(Error::PremiseViolated { vertex: h.vertex_id(v), seen: seen.len(), r });
        }
    }
    if t <= r + 1 {
        return Ok(input.compacted());
    }
    let classes = input.classes();
    let mut colors = input.colors.clone();
    let mut used = vec![false; t];
    for j in 1..=t {
        let class = t - j;
        for &u in &classes[class] {
            used.iter_mut().for_each(|x| *x = false);
            for &(_, w) in h.incident(u) {
                used[colors[w]] = true;
            }
            let s = used.iter().position(|&x| !x).unwrap_or(t);
            if s < class {
                colors[u] = s;
            }
        }
    }
    Ok(Coloring::new(colors).compacted())
}

fn pow_big(base: u32, exp: usize) -> BigInt {
    let mut out = BigInt::from(1u32);
    for _ in 0..exp {
        out *= base;
    }
    out
}

/// `⌊(2/3)^k (x − 3)⌋ + 3`, computed exactly.
pub fn shrink_bound(x: usize, k: usize) -> i64 {
    let num = (BigInt::from(x) - 3) * pow_big(2, k);
    let den = pow_big(3, k);
    let mut q = &num / &den;
    if num < BigInt::from(0) && &q * &den != num {
        q -= 1;
    }
    i64::try_from(q).expect("bounded by x") + 3
}

/// Bound of the even case: `min{χ, ⌊(2/3)^{ℓ/2}(χ − 3)⌋ + 3}`.
pub fn even_bound(chi: usize, ell: usize) -> i64 {
    (chi as i64).min(shrink_bound(chi, ell / 2))
}

/// Bound of the odd case: `min{χ', ⌊(2/3)^{(ℓ−1)/2}(χ' − 3)⌋ + 3}`.
pub fn odd_bound(chi_prime: usize, ell: usize) -> i64 {
    (chi_prime as i64).min(shrink_bound(chi_prime, (ell - 1) / 2))
}

/// Smallest even and smallest odd `ℓ` at which the bounds above force a
/// 3-colourable link graph, given `χ(G)` and `χ'(G)`.
pub fn thresholds_from(chi: usize, chi_prime: usize) -> (usize, usize) {
    let even = (0..).step_by(2).find(|&l| even_bound(chi, l) <= 3).unwrap();
    let odd = (1..).step_by(2).find(|&l| odd_bound(chi_prime, l) <= 3).unwrap();
    (even, odd)
}

/// Thresholds of [`thresholds_from`] with exact `χ` and `χ'`.
pub fn three_colorable_threshold(g: &MultiGraph) -> Result<(usize, usize)> {
    let (chi, _) = exact_chromatic(g)?;
    let (chi_prime, _) = exact_edge_chromatic(g)?;
    Ok(thresholds_from(chi, chi_prime))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    /// Which bound: "1" to "4" in the order even, odd, degree, monotone.
    pub name: String,
    pub bound: i64,
    pub holds: bool,
    /// The bound rests on exactly computed quantities.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub chi: usize,
    pub chi_exact: bool,
    pub chi_prime: usize,
    pub chi_prime_exact: bool,
    pub max_degree: usize,
    pub checks: Vec<BoundCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkColoring {
    pub ell: usize,
    pub coloring: Coloring,
    /// Palette at each level of the recursion, ending with `ell`.
    pub stages: Vec<(usize, usize)>,
    /// Whether each lifted quotient colouring was optimal.
    pub exact_quotients: bool,
}

/// Tuning for [`link_coloring_with`].
#[derive(Clone, Debug)]
pub struct LinkColoringOptions {
    /// Search nodes for base colourings and quotient colourings.
    pub budget: u64,
}

impl Default for LinkColoringOptions {
    fn default() -> Self {
        LinkColoringOptions { budget: 2_000_000 }
    }
}

/// A proper colouring of `𝕃_ℓ(G)` built level by level: an exact colouring
/// of `G` (ℓ = 0) or of `𝕃_1(G)` (ℓ = 1), then for each step from ℓ−2 to
/// ℓ a colouring of the quotient of the natural partition, lifted to
/// `𝕃_ℓ(G)` and reduced with `r = 2`.
pub fn link_coloring(g: &MultiGraph, ell: usize) -> LinkColoring {
    link_coloring_with(g, ell, &LinkColoringOptions::default())
}

pub fn link_coloring_with(g: &MultiGraph, ell: usize, opts: &LinkColoringOptions) -> LinkColoring {
    if ell <= 1 {
        let h = link_graph(g, ell).graph;
        let s = chromatic_search(&h, opts.budget);
        return LinkColoring { ell, stages: vec![(ell, s.coloring.palette)], coloring: s.coloring, exact_quotients: s.optimal };
    }
    let prev = link_coloring_with(g, ell - 2, opts);
    let h = natural_partition(g, ell);
    let q = quotient_graph(&h).expect("natural partitions satisfy (a) and (b)").graph;
    let s = chromatic_search(&q, opts.budget);
    let lifted_prev = quotient_embedding(&h)
        .map(|map| Coloring::new(map.iter().map(|&x| prev.coloring.colors[x]).collect()).compacted())
        .expect("quotient embeds");
    let (qc, exact) = if s.optimal || s.coloring.palette <= lifted_prev.palette {
        (s.coloring, s.optimal)
    } else {
        (lifted_prev, false)
    };
    let lifted = Coloring::new((0..h.graph().n()).map(|v| qc.colors[h.vpart_of(v)]).collect());
    let reduced = reduce_coloring(h.graph(), &lifted, 2).expect("lifted colourings see at most two colours");
    let mut stages = prev.stages;
    stages.push((ell, reduced.palette));
    LinkColoring { ell, coloring: reduced, stages, exact_quotients: prev.exact_quotients && exact }
}

/// Checks a palette for `𝕃_ℓ(G)` against the four bounds, using exact `χ`,
/// `χ'` and `χ_{ℓ−2}` when the searches finish within `budget` nodes.
pub fn bound_report(g: &MultiGraph, ell: usize, palette: usize, budget: u64) -> BoundReport {
    let chi = chromatic_search(g, budget);
    let chi_prime = chromatic_search(&edge_adjacency_graph(g), budget);
    let delta = g.max_degree();
    let p = palette as i64;
    let mut checks = Vec::new();
    let check = |name: &str, bound: i64, certified: bool| BoundCheck { name: name.into(), bound, holds: p <= bound, certified };
    if ell % 2 == 0 {
        checks.push(check("1", even_bound(chi.coloring.palette, ell), chi.optimal));
    } else {
        checks.push(check("2", odd_bound(chi_prime.coloring.palette, ell), chi_prime.optimal));
    }
    if ell != 1 {
        checks.push(check("3", delta as i64 + 1, true));
    }
    if ell >= 2 {
        let before = chromatic_search(&link_graph(g, ell - 2).graph, budget);
        checks.push(check("4", before.coloring.palette as i64, before.optimal));
    }
    BoundReport {
        chi: chi.coloring.palette,
        chi_exact: chi.optimal,
        chi_prime: chi_prime.coloring.palette,
        chi_prime_exact: chi_prime.optimal,
        max_degree: delta,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite, cycle, dipole, empty, petersen, star};

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_coloring(&empty(4), &[0, 1, 2, 3]).unwrap().palette, 1);
        assert_eq!(greedy_coloring(&complete(4), &[2, 0, 3, 1]).unwrap().palette, 4);
        assert_eq!(greedy_coloring(&cycle(5), &[0, 1, 2, 3, 4]).unwrap().palette, 3);
        assert!(greedy_coloring(&cycle(5), &[0, 0, 2, 3, 4]).is_err());
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_chromatic(&cycle(6)).unwrap().0, 2);
        assert_eq!(exact_chromatic(&complete(4)).unwrap().0, 4);
        let (k, c) = exact_chromatic(&petersen()).unwrap();
        assert_eq!(k, 3);
        assert!(c.is_proper(&petersen()));
        assert!(matches!(exact_chromatic(&cycle(13)), Err(Error::TooLarge { .. })));
        assert_eq!(exact_edge_chromatic(&dipole(3)).unwrap().0, 3);
        assert_eq!(exact_edge_chromatic(&cycle(4)).unwrap().0, 2);
        assert_eq!(exact_edge_chromatic(&star(3)).unwrap().0, 3);
    }

    #[test]
    fn reduction() {
        let g = complete(3);
        let c = Coloring::new(vec![0, 1, 2]);
        assert_eq!(reduce_coloring(&g, &c, 2).unwrap().palette, 3);
        // a 6-coloured path sees at most two colours at each vertex
        let p = crate::families::path(5);
        let c = Coloring::new(vec![0, 1, 2, 3, 4, 5]);
        let out = reduce_coloring(&p, &c, 2).unwrap();
        assert!(out.palette <= reduction_bound(6, 2));
        assert!(out.is_proper(&p));
        let s = star(3);
        let c = Coloring::new(vec![0, 1, 2, 3]);
        assert_eq!(reduce_coloring(&s, &c, 2), Err(Error::PremiseViolated { vertex: 0, seen: 3, r: 2 }));
    }

    #[test]
    fn bound_arithmetic() {
        assert_eq!(shrink_bound(5, 3), 3);
        assert_eq!(even_bound(5, 6), 3);
        assert_eq!(even_bound(2, 2), 2);
        assert_eq!(shrink_bound(2, 1), 2);
        assert_eq!(thresholds_from(3, 3), (0, 1));
        assert_eq!(thresholds_from(6, 3).0, 6);
    }

    #[test]
    fn link_colourings() {
        let c = link_coloring(&complete(5), 6);
        assert!(c.coloring.palette <= 3);
        let g = complete_bipartite(2, 3);
        for ell in 0..5 {
            let c = link_coloring(&g, ell);
            assert!(c.coloring.is_proper(&link_graph(&g, ell).graph));
            let report = bound_report(&g, ell, c.coloring.palette, u64::MAX);
            assert!(report.checks.iter().all(|b| b.holds && b.certified), "{report:?}");
        }
        assert_eq!(link_coloring(&dipole(4), 1).coloring.palette, 4);
    }
}
