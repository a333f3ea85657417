//! Complete minors and Hadwiger numbers by exact search.

use std::collections::HashSet;

use num_bigint::BigInt;
use serde::Serialize;

use crate::canon::certificate;
use crate::coloring::chromatic_search;
use crate::derived::{link_graph, path_graph};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;

/// Default vertex limit for minor search.
pub const DEFAULT_MINOR_LIMIT: usize = 12;

/// Branch sets of a `K_t` minor, as vertex positions, and one connecting
/// edge per pair of sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorWitness {
    pub branch_sets: Vec<Vec<usize>>,
    /// `(i, j, e)`: edge `e` joins sets `i < j`.
    pub connecting_edges: Vec<(usize, usize, usize)>,
}

/// Checks a claimed model of `K_t` from scratch: disjoint nonempty sets,
/// each inducing a connected subgraph, every pair joined by the recorded
/// edge.
pub fn check_minor_model(g: &MultiGraph, w: &MinorWitness) -> std::result::Result<(), String> {
    let t = w.branch_sets.len();
    let mut owner = vec![usize::MAX; g.n()];
    for (i, set) in w.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return Err(format!("branch set {i} is empty"));
        }
        for &v in set {
            if v >= g.n() || owner[v] != usize::MAX {
                return Err(format!("vertex {v} reused or unknown"));
            }
            owner[v] = i;
        }
        if !g.induced_subgraph(set).is_connected() {
            return Err(format!("branch set {i} is not connected"));
        }
    }
    let mut joined = HashSet::new();
    for &(i, j, e) in &w.connecting_edges {
        if e >= g.m() {
            return Err(format!("edge {e} unknown"));
        }
        let (a, b) = g.ends(e);
        let pair = (owner[a].min(owner[b]), owner[a].max(owner[b]));
        if pair != (i, j) || i >= j {
            return Err(format!("edge {e} does not join sets {i} and {j}"));
        }
        joined.insert(pair);
    }
    if joined.len() != t * t.saturating_sub(1) / 2 {
        return Err("some pair of branch sets is not joined".into());
    }
    Ok(())
}

// Simple graph state under contraction; `sets[v]` are original vertices.
#[derive(Clone)]
struct State {
    adj: Vec<Vec<bool>>,
    sets: Vec<Vec<usize>>,
}

impl State {
    fn n(&self) -> usize {
        self.sets.len()
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&x| x).count()
    }

    fn m(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    fn remove(&mut self, v: usize) {
        self.adj.remove(v);
        for row in &mut self.adj {
            row.remove(v);
        }
        self.sets.remove(v);
    }

    /// Contracts `v` into `u`.
    fn contract(&self, u: usize, v: usize) -> State {
        let mut s = self.clone();
        for w in 0..s.n() {
            if s.adj[v][w] && w != u {
                s.adj[u][w] = true;
                s.adj[w][u] = true;
            }
        }
        let moved = std::mem::take(&mut s.sets[v]);
        s.sets[u].extend(moved);
        s.remove(v);
        s
    }

    fn key(&self) -> Vec<u32> {
        let mut g = MultiGraph::new(self.n());
        for a in 0..self.n() {
            for b in a + 1..self.n() {
                if self.adj[a][b] {
                    g.add_edge(a, b).unwrap();
                }
            }
        }
        certificate(&g)
    }

    fn clique(&self, t: usize) -> Option<Vec<usize>> {
        let mut cur = Vec::new();
        let cand: Vec<usize> = (0..self.n()).filter(|&v| self.degree(v) + 1 >= t).collect();
        self.extend_clique(t, &mut cur, &cand).then_some(cur)
    }

    fn extend_clique(&self, t: usize, cur: &mut Vec<usize>, cand: &[usize]) -> bool {
        if cur.len() == t {
            return true;
        }
        if cur.len() + cand.len() < t {
            return false;
        }
        for (i, &v) in cand.iter().enumerate() {
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| self.adj[v][w]).collect();
            cur.push(v);
            if self.extend_clique(t, cur, &next) {
                return true;
            }
            cur.pop();
        }
        false
    }
}

struct MinorSearch {
    t: usize,
    failed: HashSet<Vec<u32>>,
}

impl MinorSearch {
    fn search(&mut self, mut s: State) -> Option<Vec<Vec<usize>>> {
        let t = self.t;
        // isolated vertices never help; for t ≥ 3 neither do leaves
        loop {
            let drop = (0..s.n()).find(|&v| s.degree(v) == 0 || (t >= 3 && s.degree(v) == 1));
            match drop {
                Some(v) => s.remove(v),
                None => break,
            }
        }
        if s.n() < t || s.m() < t * (t - 1) / 2 {
            return None;
        }
        if let Some(c) = s.clique(t) {
            return Some(c.into_iter().map(|v| s.sets[v].clone()).collect());
        }
        let key = s.key();
        if self.failed.contains(&key) {
            return None;
        }
        let v = (0..s.n()).min_by_key(|&v| s.degree(v)).unwrap();
        let found = if s.degree(v) + 1 < t {
            // v cannot be a branch set alone: merge it into a neighbour
            (0..s.n()).filter(|&u| s.adj[v][u]).find_map(|u| self.search(s.contract(u, v)))
        } else {
            let mut edges = Vec::new();
            for a in 0..s.n() {
                for b in a + 1..s.n() {
                    if s.adj[a][b] {
                        edges.push((a, b));
                    }
                }
            }
            edges.into_iter().find_map(|(a, b)| self.search(s.contract(a, b)))
        };
        if found.is_none() {
            self.failed.insert(key);
        }
        found
    }
}

fn witness_from_sets(g: &MultiGraph, mut sets: Vec<Vec<usize>>) -> MinorWitness {
    for s in &mut sets {
        s.sort_unstable();
    }
    sets.sort();
    let mut owner = vec![usize::MAX; g.n()];
    for (i, s) in sets.iter().enumerate() {
        for &v in s {
            owner[v] = i;
        }
    }
    let mut connecting_edges = Vec::new();
    let mut seen = HashSet::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let (i, j) = (owner[a], owner[b]);
        if i != usize::MAX && j != usize::MAX && i != j && seen.insert((i.min(j), i.max(j))) {
            connecting_edges.push((i.min(j), i.max(j), e));
        }
    }
    connecting_edges.sort_unstable();
    MinorWitness { branch_sets: sets, connecting_edges }
}

/// A `K_t` minor of `g`, searched exactly, for `n(g) ≤ DEFAULT_MINOR_LIMIT`.
pub fn has_complete_minor(g: &MultiGraph, t: usize) -> Result<Option<MinorWitness>> {
    has_complete_minor_with_limit(g, t, DEFAULT_MINOR_LIMIT)
}

pub fn has_complete_minor_with_limit(g: &MultiGraph, t: usize, limit: usize) -> Result<Option<MinorWitness>> {
    if g.n() > limit {
        return Err(Error::TooLarge { n: g.n(), limit });
    }
    if t == 0 {
        return Ok(Some(MinorWitness { branch_sets: Vec::new(), connecting_edges: Vec::new() }));
    }
    for comp in g.components() {
        let adj = (0..comp.len()).map(|i| (0..comp.len()).map(|j| g.multiplicity(comp[i], comp[j]) > 0).collect()).collect();
        let state = State { adj, sets: comp.iter().map(|&v| vec![v]).collect() };
        let mut search = MinorSearch { t, failed: HashSet::new() };
        if let Some(sets) = search.search(state) {
            let w = witness_from_sets(g, sets);
            debug_assert_eq!(check_minor_model(g, &w), Ok(()));
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// `η(G)` with a witness for it.
pub fn hadwiger_number(g: &MultiGraph) -> Result<(usize, MinorWitness)> {
    hadwiger_number_with_limit(g, DEFAULT_MINOR_LIMIT)
}

pub fn hadwiger_number_with_limit(g: &MultiGraph, limit: usize) -> Result<(usize, MinorWitness)> {
    let mut best = has_complete_minor_with_limit(g, 0, limit)?.unwrap();
    for t in 1..=g.n() {
        match has_complete_minor_with_limit(g, t, limit)? {
            Some(w) => best = w,
            None => break,
        }
    }
    Ok((best.branch_sets.len(), best))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaReport {
    pub eta_derived: usize,
    pub eta_source: usize,
    pub degeneracy: usize,
    pub holds: bool,
    pub witness_derived: MinorWitness,
    pub witness_source: MinorWitness,
}

fn eta_report(g: &MultiGraph, h: &MultiGraph, limit: usize) -> Result<EtaReport> {
    if h.m() == 0 {
        return Err(Error::EmptyLinkGraph);
    }
    let (eta_derived, witness_derived) = hadwiger_number_with_limit(h, limit)?;
    let (eta_source, witness_source) = hadwiger_number_with_limit(g, limit)?;
    let degeneracy = g.degeneracy();
    Ok(EtaReport {
        eta_derived,
        eta_source,
        degeneracy,
        holds: eta_derived >= eta_source.max(degeneracy),
        witness_derived,
        witness_source,
    })
}

/// Computes `η(𝕃_ℓ(G))`, `η(G)` and `dege(G)` and compares them.
pub fn verify_eta_lower_bound(g: &MultiGraph, ell: usize) -> Result<EtaReport> {
    verify_eta_lower_bound_with_limit(g, ell, DEFAULT_MINOR_LIMIT)
}

pub fn verify_eta_lower_bound_with_limit(g: &MultiGraph, ell: usize, limit: usize) -> Result<EtaReport> {
    if ell == 0 {
        return Err(Error::EllTooSmall(1));
    }
    eta_report(g, &link_graph(g, ell).graph, limit)
}

/// The same comparison for `ℙ_ℓ(G)`.
pub fn verify_eta_lower_bound_paths(g: &MultiGraph, ell: usize, limit: usize) -> Result<EtaReport> {
    if ell == 0 {
        return Err(Error::EllTooSmall(1));
    }
    eta_report(g, &path_graph(g, ell).graph, limit)
}

fn pow_big(base: u32, exp: usize) -> BigInt {
    let mut out = BigInt::from(1u32);
    for _ in 0..exp {
        out *= base;
    }
    out
}

/// Which of the five sufficient conditions for Hadwiger's conjecture on
/// `𝕃_ℓ(G)` hold, numbered 1 to 5. Thresholds with logarithms are
/// compared exactly in integers.
pub fn hadwiger_cases(g: &MultiGraph, ell: usize) -> Vec<u8> {
    let delta = g.max_degree();
    let dege = g.degeneracy();
    let mut out = Vec::new();
    if ell >= 1 && g.is_biconnected() {
        out.push(1);
    }
    if ell >= 2 && ell % 2 == 0 {
        out.push(2);
    }
    // ℓ > 2 log_{1.5}((Δ−2)/(d−2)) + 3  ⇔  (Δ−2)²·2^{ℓ−3} < (d−2)²·3^{ℓ−3}
    if dege >= 3 && ell >= 3 {
        let a = BigInt::from((delta - 2) * (delta - 2)) * pow_big(2, ell - 3);
        let b = BigInt::from((dege - 2) * (dege - 2)) * pow_big(3, ell - 3);
        if a < b {
            out.push(3);
        }
    }
    // ℓ > 2 log_{1.5}(Δ−2) − 3.83  ⇔  (Δ−2)^200·2^{100ℓ+383} < 3^{100ℓ+383}
    if delta >= 3 {
        let k = 100 * ell + 383;
        if pow_big((delta - 2) as u32, 200) * pow_big(2, k) < pow_big(3, k) {
            out.push(4);
        }
    }
    if delta <= 5 {
        out.push(5);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub cases: Vec<u8>,
    pub chi: usize,
    pub eta: usize,
    /// `η ≥ χ` on the link graph; `None` when no case applies.
    pub holds: Option<bool>,
}

/// Determines the applicable cases and, if any applies, compares `η` and
/// `χ` of `𝕃_ℓ(G)` exactly.
pub fn verify_hadwiger_cases(g: &MultiGraph, ell: usize) -> Result<CaseReport> {
    verify_hadwiger_cases_with_limit(g, ell, DEFAULT_MINOR_LIMIT)
}

pub fn verify_hadwiger_cases_with_limit(g: &MultiGraph, ell: usize, limit: usize) -> Result<CaseReport> {
    let h = link_graph(g, ell).graph;
    if h.n() > limit {
        return Err(Error::TooLarge { n: h.n(), limit });
    }
    let cases = hadwiger_cases(g, ell);
    let (eta, _) = hadwiger_number_with_limit(&h, limit)?;
    let chi = chromatic_search(&h, u64::MAX).coloring.palette;
    let holds = (!cases.is_empty()).then_some(eta >= chi);
    Ok(CaseReport { cases, chi, eta, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite, cycle, dipole, path, petersen, random_tree};
    use rand::SeedableRng;

    fn octahedron() -> MultiGraph {
        let mut edges = Vec::new();
        for a in 0..6 {
            for b in a + 1..6 {
                if b != a + 3 {
                    edges.push((a, b));
                }
            }
        }
        MultiGraph::from_edges(6, &edges).unwrap()
    }

    #[test]
    fn minor_examples() {
        let w = has_complete_minor(&path(1), 2).unwrap().unwrap();
        assert_eq!(check_minor_model(&path(1), &w), Ok(()));
        let o = octahedron();
        let w = has_complete_minor(&o, 4).unwrap().unwrap();
        assert_eq!(check_minor_model(&o, &w), Ok(()));
        assert_eq!(has_complete_minor(&o, 5).unwrap(), None);
        assert_eq!(hadwiger_number(&complete(5)).unwrap().0, 5);
        assert_eq!(hadwiger_number(&cycle(7)).unwrap().0, 3);
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        assert_eq!(hadwiger_number(&random_tree(&mut rng, 9)).unwrap().0, 2);
        let (eta, w) = hadwiger_number(&petersen()).unwrap();
        assert_eq!(eta, 5);
        assert_eq!(check_minor_model(&petersen(), &w), Ok(()));
        assert_eq!(hadwiger_number(&complete_bipartite(3, 3)).unwrap().0, 4);
    }

    #[test]
    fn bad_models_rejected() {
        let g = path(3);
        let w = MinorWitness { branch_sets: vec![vec![0, 2], vec![1]], connecting_edges: vec![(0, 1, 0)] };
        assert!(check_minor_model(&g, &w).is_err());
    }

    #[test]
    fn eta_bound_examples() {
        let r = verify_eta_lower_bound(&complete(4), 1).unwrap();
        assert_eq!((r.eta_derived, r.eta_source, r.degeneracy), (4, 4, 3));
        let r = verify_eta_lower_bound(&cycle(5), 3).unwrap();
        assert_eq!((r.eta_derived, r.eta_source), (3, 3));
        assert!(verify_eta_lower_bound(&dipole(3), 2).unwrap().holds);
        assert_eq!(verify_eta_lower_bound(&path(1), 1), Err(Error::EmptyLinkGraph));
    }

    #[test]
    fn case_examples() {
        // the link graph is a 4-cycle: η = 3, χ = 2
        let r = verify_hadwiger_cases(&cycle(4), 2).unwrap();
        assert!(r.cases.contains(&2));
        assert_eq!((r.eta, r.chi, r.holds), (3, 2, Some(true)));
        let r = verify_hadwiger_cases(&complete(4), 2).unwrap();
        assert_eq!(r.holds, Some(true));
        let r = verify_hadwiger_cases(&dipole(3), 1).unwrap();
        assert!(r.cases.contains(&1));
        assert_eq!((r.eta, r.chi), (3, 3));
        // Δ = 3 meets case 4 for every ℓ ≥ 0
        assert!(hadwiger_cases(&petersen(), 0).contains(&4));
        assert!(!hadwiger_cases(&crate::families::star(40), 0).contains(&4));
    }
}
