//! Randomised check batteries behind `linkgraph verify`.
//!
//! Every trial draws from its own ChaCha stream, keyed by the seed, the
//! suite and the trial number, so a run is reproducible whatever the
//! thread count. Failures keep the smallest counterexample seen.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use linkgraph::canon::{certificate, check_isomorphism};
use linkgraph::coloring::{bound_report, link_coloring, reduce_coloring, reduction_bound, Coloring};
use linkgraph::families::{complete, complete_bipartite, cycle, dipole, empty, paste_path, path, random_multigraph, random_tree, spider};
use linkgraph::io::GraphJson;
use linkgraph::minors::{check_minor_model, verify_eta_lower_bound, verify_hadwiger_cases, DEFAULT_MINOR_LIMIT};
use linkgraph::partition::{count_cyclic_components, find_plain_cycles, natural_partition, quotient_embedding, quotient_graph};
use linkgraph::roots::{
    are_l_equivalent, check_tree_shape, class_by_search, copy_root, copy_threshold, cycle_roots_closed_form, expand_class,
    incidence_count, incident_by_listing, incident_subgraph, is_l_minimal, joined_cycles, link_count, minimal_roots,
    reduce_by_link_counts, vertex_incident, RootBudget, RootMode, RootReport,
};
use linkgraph::structure::link_graph_connected;
use linkgraph::walks::{count_links, enumerate_arcs, enumerate_links, multiplicity_witness, Link};
use linkgraph::{is_isomorphic, link_graph, path_graph, MultiGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Suite, Target};

#[derive(Clone, Debug)]
pub struct Params {
    pub seed: u64,
    pub trials: usize,
    pub n: (usize, usize),
    pub m: (usize, usize),
    pub ell: (usize, usize),
    pub target: Option<Target>,
    /// Candidate cap for root searches inside trials.
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub graph: GraphJson,
    pub ell: usize,
    pub detail: String,
}

impl Counterexample {
    fn size(&self) -> (usize, usize, usize) {
        (self.graph.n, self.graph.edges.len(), self.ell)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub trials: usize,
    /// Trials whose root search ran out of budget and were not checked.
    pub skipped: usize,
    pub checks: BTreeMap<&'static str, Tally>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub n: [usize; 2],
    pub m: [usize; 2],
    pub ell: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<Target>,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

#[derive(Default)]
struct Log {
    results: Vec<(&'static str, Option<Counterexample>)>,
    skipped: bool,
}

impl Log {
    fn check(&mut self, name: &'static str, ok: bool, g: &MultiGraph, ell: usize, detail: impl FnOnce() -> String) {
        let failure = (!ok).then(|| Counterexample { graph: GraphJson::from_graph(g), ell, detail: detail() });
        self.results.push((name, failure));
    }
}

const SUITES: [(Suite, &str); 7] = [
    (Suite::Counts, "counts"),
    (Suite::Connectivity, "connectivity"),
    (Suite::Partitions, "partitions"),
    (Suite::Coloring, "coloring"),
    (Suite::Minors, "minors"),
    (Suite::Incidence, "incidence"),
    (Suite::Roots, "roots"),
];

pub fn run(suite: Suite, p: &Params) -> VerifyReport {
    let suites = SUITES
        .iter()
        .enumerate()
        .filter(|(_, (s, _))| suite == Suite::All || suite == *s)
        .map(|(i, &(s, name))| run_suite(i as u64, s, name, p))
        .collect::<Vec<_>>();
    VerifyReport {
        seed: p.seed,
        trials: p.trials,
        n: [p.n.0, p.n.1],
        m: [p.m.0, p.m.1],
        ell: [p.ell.0, p.ell.1],
        target: p.target,
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}

fn run_suite(index: u64, suite: Suite, name: &'static str, p: &Params) -> SuiteReport {
    let mut logs: Vec<Log> = Vec::new();
    if suite == Suite::Roots && (p.target.is_some() || p.trials > 0) {
        let targets = match p.target {
            Some(t) => vec![t],
            None => vec![Target::Whitney, Target::K2bar, Target::C6, Target::Cycles, Target::Paths],
        };
        for t in targets {
            let mut log = Log::default();
            run_target(t, &mut log);
            logs.push(log);
        }
    }
    let trials = if suite == Suite::Roots && p.target.is_some() { 0 } else { p.trials };
    let random: Vec<Log> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
            rng.set_stream(index << 32 | t as u64);
            let mut log = Log::default();
            match suite {
                Suite::Counts => counts(&mut rng, p, &mut log),
                Suite::Connectivity => connectivity(&mut rng, p, &mut log),
                Suite::Partitions => partitions(&mut rng, p, &mut log),
                Suite::Coloring => coloring(&mut rng, p, &mut log),
                Suite::Minors => minors(&mut rng, p, &mut log),
                Suite::Incidence => incidence(&mut rng, p, &mut log),
                Suite::Roots => roots(&mut rng, p, &mut log),
                Suite::All => unreachable!("expanded by run"),
            }
            log
        })
        .collect();
    logs.extend(random);

    let mut checks: BTreeMap<&'static str, Tally> = BTreeMap::new();
    let mut skipped = 0;
    for log in logs {
        skipped += log.skipped as usize;
        for (name, failure) in log.results {
            let tally = checks.entry(name).or_default();
            match failure {
                None => tally.passed += 1,
                Some(c) => {
                    tally.failed += 1;
                    if tally.counterexample.as_ref().is_none_or(|old| c.size() < old.size()) {
                        tally.counterexample = Some(c);
                    }
                }
            }
        }
    }
    let passed = checks.values().all(|t| t.failed == 0);
    SuiteReport { suite: name, trials, skipped, checks, passed }
}

fn draw(rng: &mut ChaCha8Rng, p: &Params) -> (MultiGraph, usize) {
    let n = rng.gen_range(p.n.0..=p.n.1);
    let m = rng.gen_range(p.m.0..=p.m.1);
    let ell = rng.gen_range(p.ell.0..=p.ell.1);
    (random_multigraph(rng, n, m), ell)
}

fn sorted_links(walks: &[linkgraph::Arc]) -> Vec<Link> {
    let mut v: Vec<Link> = walks.iter().map(|a| Link::new(a.clone())).collect();
    v.sort();
    v
}

/// A loopless `r`-regular multigraph on `n` vertices by random pairing of
/// half-edges, or `None` if every attempt produced a loop.
fn random_regular(rng: &mut ChaCha8Rng, n: usize, r: usize) -> Option<MultiGraph> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, r)).collect();
    for _ in 0..100 {
        stubs.shuffle(rng);
        if stubs.chunks(2).all(|c| c[0] != c[1]) {
            let edges: Vec<(usize, usize)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
            return MultiGraph::from_edges(n, &edges).ok();
        }
    }
    None
}

fn counts(rng: &mut ChaCha8Rng, p: &Params, log: &mut Log) {
    let (g, ell) = draw(rng, p);
    let d = link_graph(&g, ell);
    let h = &d.graph;
    log.check("vertex_count", h.n() == count_links(&g, ell), &g, ell, || format!("{} vertices", h.n()));
    log.check("edge_count", h.m() == count_links(&g, ell + 1), &g, ell, || format!("{} edges", h.m()));
    let dp = link_count(&g, ell);
    log.check("link_count_dp", dp == h.n(), &g, ell, || format!("dp {dp} vs {}", h.n()));
    if ell == 0 {
        log.check("identity", is_isomorphic(h, &g).is_some(), &g, ell, || "L_0 not isomorphic to G".into());
    } else {
        let looped = h.edges().iter().any(|&(a, b)| a == b);
        log.check("loopless", !looped, &g, ell, || "link graph has a loop".into());
        log.check("simple_iff_simple", h.is_simple() == g.is_simple(), &g, ell, || "simplicity differs".into());
        let mut witnessed = h.max_multiplicity() <= 2;
        for &(a, b) in h.edges() {
            if h.multiplicity(a, b) == 2 {
                let w = multiplicity_witness(&g, ell, &d.vertex_link(a), &d.vertex_link(b));
                witnessed &= w.is_some_and(|c| c.validate(&g).is_ok() && c.len() == 2 && c.is_closed());
            }
        }
        log.check("multiplicity", witnessed, &g, ell, || format!("max multiplicity {}", h.max_multiplicity()));
    }
    if g.girth() > ell.max(2) {
        let q = path_graph(&g, ell);
        let same = sorted_links(&d.vertex_walks) == sorted_links(&q.vertex_walks) && sorted_links(&d.edge_walks) == sorted_links(&q.edge_walks);
        log.check("path_coincidence", same, &g, ell, || "path graph differs from link graph".into());
    }

    let r = rng.gen_range(2..=3usize);
    let n = if r == 2 { rng.gen_range(2..=8) } else { 2 * rng.gen_range(1..=2) };
    if let Some(g) = random_regular(rng, n, r) {
        let ell = rng.gen_range(0..=4usize);
        let want = g.m() * (r - 1).pow(ell as u32);
        let h = link_graph(&g, ell).graph;
        log.check("regular_counts", count_links(&g, ell + 1) == want && h.m() == want, &g, ell, || format!("expected {want}"));
        if ell >= 1 {
            let regular = (0..h.n()).all(|v| h.degree(v) == 2 * (r - 1));
            log.check("regular_degree", regular, &g, ell, || format!("not {}-regular", 2 * (r - 1)));
        }
    }

    let (a, b) = (rng.gen_range(2..=3usize), rng.gen_range(2..=3usize));
    let ell = rng.gen_range(1..=4usize);
    let g = complete_bipartite(a, b);
    let h = link_graph(&g, ell).graph;
    let k = (a - 1) * (b - 1);
    let ok = if ell % 2 == 1 {
        h.n() == a * b * k.pow((ell as u32 - 1) / 2) && (0..h.n()).all(|v| h.degree(v) == a + b - 2)
    } else {
        h.n() == a * b * (a + b - 2) * k.pow(ell as u32 / 2 - 1) / 2 && 2 * h.m() * (a + b - 2) == 4 * k * h.n()
    };
    log.check("bipartite_counts", ok, &g, ell, || format!("K_{a},{b}: order {} size {}", h.n(), h.m()));
}

fn connectivity(rng: &mut ChaCha8Rng, p: &Params, log: &mut Log) {
    let (g, ell) = draw(rng, p);
    let r = link_graph_connected(&g, ell);
    let direct = link_graph(&g, ell).graph.component_count();
    let ok = r.components == direct && r.connected == (direct == 1);
    log.check("hub_decision", ok, &g, ell, || format!("{} components reported, {direct} present", r.components));
}

fn partitions(rng: &mut ChaCha8Rng, p: &Params, log: &mut Log) {
    let (g, ell) = draw(rng, p);
    let h = natural_partition(&g, ell);
    if ell >= 2 {
        let axioms = h.check_axioms(&['a', 'b', 'c', 'd', 'e']);
        log.check("axioms", axioms.is_ok(), &g, ell, || format!("{axioms:?}"));
        let embed = quotient_embedding(&h);
        log.check("quotient_embedding", embed.is_ok(), &g, ell, || format!("{embed:?}"));
    }
    let census = count_cyclic_components(&h);
    let (_, cyclic) = g.acyclic_cyclic_counts();
    log.check("cyclic_components", census.cyclic == cyclic, &g, ell, || format!("o = {} vs {cyclic}", census.cyclic));
    if ell >= 1 {
        let agree = census.components.iter().all(|c| c.plain_cycle.is_none_or(|found| found == c.cyclic));
        log.check("plain_cycle_search", agree, &g, ell, || "plain cycle search disagrees with the census".into());
    }
    match find_plain_cycles(&h) {
        Ok(cs) => {
            let ok = cs.len() == cyclic && cs.iter().all(|c| h.is_plain_cycle(c));
            log.check("plain_cycles", ok, &g, ell, || format!("{} cycles found", cs.len()));
        }
        Err(e) => log.check("plain_cycles", false, &g, ell, || e.to_string()),
    }
    let s = rng.gen_range(0..=2usize);
    let arcs = enumerate_arcs(&g, ell + s);
    if let Some(r) = arcs.choose(rng) {
        let ok = h.image(r).ok().and_then(|img| {
            let back = h.lift(&img).ok()??;
            Some(h.image(&back).ok()? == img)
        });
        log.check("lift_image", ok == Some(true), &g, ell, || format!("arc {:?}", r.raw()));
    }
    if ell >= 1 && g.is_connected() && g.acyclic_cyclic_counts().1 == 1 && g.max_degree() >= 2 {
        let source: BTreeSet<usize> = (0..g.n()).map(|v| g.degree(v)).filter(|&d| d >= 2).map(|d| d - 1).collect();
        let mut derived = BTreeSet::new();
        for part in h.eparts() {
            let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
            for &e in part {
                let (a, b) = h.graph().ends(e);
                *deg.entry(a).or_default() += 1;
                *deg.entry(b).or_default() += 1;
            }
            derived.extend(deg.into_values());
        }
        log.check("degree_sets", source == derived, &g, ell, || format!("D(G) = {source:?}, D(E) = {derived:?}"));
    }
}

// A proper colouring of a graph of maximum degree ≤ r, or a quotient
// colouring lifted to a partitioned link graph (r = 2).
fn compliant(rng: &mut ChaCha8Rng) -> (MultiGraph, Coloring, usize) {
    fn random_proper(g: &MultiGraph, t: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let mut colors = vec![usize::MAX; g.n()];
        for v in 0..g.n() {
            let used: HashSet<usize> = g.neighbors(v).into_iter().map(|w| colors[w]).collect();
            let free: Vec<usize> = (0..t).filter(|c| !used.contains(c)).collect();
            colors[v] = *free.choose(rng).unwrap();
        }
        colors
    }
    if rng.gen_bool(0.5) {
        let r = rng.gen_range(1..=3);
        let n = rng.gen_range(2..=14);
        let mut g = MultiGraph::new(n);
        for _ in 0..3 * n {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b && g.degree(a) < r && g.degree(b) < r {
                g.add_edge(a, b).unwrap();
            }
        }
        let t = rng.gen_range(r + 1..=2 * r + 4);
        let colors = random_proper(&g, t, rng);
        (g, Coloring::new(colors), r)
    } else {
        let n = rng.gen_range(3..=5);
        let m = rng.gen_range(n..=n + 2);
        let g = random_multigraph(rng, n, m);
        let h = natural_partition(&g, rng.gen_range(2..=3));
        let q = quotient_graph(&h).expect("natural partitions have quotients").graph;
        let t = q.max_degree() + 1 + rng.gen_range(0..4);
        let qc = random_proper(&q, t, rng);
        let colors = (0..h.graph().n()).map(|v| qc[h.vpart_of(v)]).collect();
        (h.graph().clone(), Coloring::new(colors), 2)
    }
}

fn coloring(rng: &mut ChaCha8Rng, p: &Params, log: &mut Log) {
    let (g, ell) = draw(rng, p);
    let h = link_graph(&g, ell).graph;
    if h.n() <= 300 {
        let c = link_coloring(&g, ell);
        log.check("proper", c.coloring.is_proper(&h), &g, ell, || "improper link colouring".into());
        let report = bound_report(&g, ell, c.coloring.palette, 1_000_000);
        let failed: Vec<&str> = report.checks.iter().filter(|b| !b.holds).map(|b| b.name.as_str()).collect();
        log.check("bounds", failed.is_empty(), &g, ell, || format!("palette {} breaks bounds {failed:?}", c.coloring.palette));
    }
    let (x, input, r) = compliant(rng);
    let ok = reduce_coloring(&x, &input, r).is_ok_and(|out| out.is_proper(&x) && out.palette <= reduction_bound(input.palette, r));
    log.check("reduction", ok, &x, r, || format!("{} colours, r = {r}", input.palette));
}

fn minors(rng: &mut ChaCha8Rng, p: &Params, log: &mut Log) {
    let (g, ell) = draw(rng, p);
    let ell = ell.max(1);
    let h = link_graph(&g, ell).graph;
    if h.n() > DEFAULT_MINOR_LIMIT || h.m() == 0 {
        return;
    }
    match verify_eta_lower_bound(&g, ell) {
        Ok(r) => {
            log.check("eta_lower_bound", r.holds, &g, ell, || format!("η = {} < max({}, {})", r.eta_derived, r.eta_source, r.degeneracy));
            let model = check_minor_model(&h, &r.witness_derived);
            log.check("minor_witness", model.is_ok(), &g, ell, || format!("{model:?}"));
        }
        Err(e) => log.check("eta_lower_bound", false, &g, ell, || e.to_string()),
    }
    match verify_hadwiger_cases(&g, ell) {
        Ok(r) => {
            if let Some(holds) = r.holds {
                log.check("hadwiger_cases", holds, &g, ell, || format!("cases {:?}: η {} < χ {}", r.cases, r.eta, r.chi));
            }
        }
        Err(e) => log.check("hadwiger_cases", false, &g, ell, || e.to_string()),
    }
}

// (ℓ, s)-incidences counted pair by pair.
fn incidences_by_listing(g: &MultiGraph, ell: usize, s: usize) -> usize {
    let shorter = enumerate_links(g, s);
    enumerate_links(g, ell)
        .iter()
        .map(|l| {
            shorter
                .iter()
                .filter(|r| (0..=ell - s).any(|i| Link::new(l.arc().segment(i, i + s).unwrap()) == **r))
                .count()
        })
        .sum()
}

fn incidence(rng: &mut ChaCha8Rng, p: &Params, log: &mut Log) {
    let (g, ell) = draw(rng, p);
    let order = rng.gen_range(1..=10);
    let t = random_tree(rng, order);
    for (x, name) in [(&t, "tree_incidence"), (&g, "graph_incidence")] {
        let r = incident_subgraph(x, ell);
        let (vs, es) = incident_by_listing(x, ell);
        log.check(name, r.vertex_incident == vs && r.edge_incident == es, x, ell, || "differs from listing".into());
    }
    let (vs, _) = incident_by_listing(&t, ell);
    let single = (0..t.n()).all(|u| vertex_incident(&t, u, ell).is_ok_and(|b| b == vs[u]));
    log.check("vertex_test", single, &t, ell, || "single-vertex test differs from listing".into());
    let shape = check_tree_shape(&t, &incident_subgraph(&t, ell));
    log.check("tree_shape", shape.is_ok(), &t, ell, || format!("{shape:?}"));

    let r = incident_subgraph(&g, ell);
    let covered = (ell..=ell + 2).all(|s| {
        enumerate_links(&g, s).iter().all(|l| l.arc().vertices().iter().all(|&v| r.vertex_incident[v]) && l.arc().edges().iter().all(|&e| r.edge_incident[e]))
    });
    log.check("longer_links_covered", covered, &g, ell, || "an s-link leaves G[ℓ]".into());

    let reduced = reduce_by_link_counts(&g, ell);
    let minimal = reduced.n() == g.n() && reduced.m() == g.m();
    log.check("minimality", is_l_minimal(&g, ell) == minimal, &g, ell, || format!("oracle says minimal = {minimal}"));

    let mut y = g.clone();
    for _ in 0..rng.gen_range(0..=2) {
        if y.n() == 0 {
            break;
        }
        let a = rng.gen_range(0..y.n());
        let b = y.add_vertex();
        y.add_edge(a, b).unwrap();
    }
    let want = certificate(&reduced) == certificate(&reduce_by_link_counts(&y, ell));
    log.check("equivalence", are_l_equivalent(&g, &y, ell) == want, &y, ell, || format!("oracle says equivalent = {want}"));
    if want {
        let same = is_isomorphic(&link_graph(&g, ell).graph, &link_graph(&y, ell).graph).is_some();
        log.check("equivalent_link_graphs", same, &y, ell, || "equivalent graphs with different link graphs".into());
    }

    let s = rng.gen_range(0..=ell);
    let counted = catch_unwind(AssertUnwindSafe(|| incidence_count(&g, ell, s)));
    let listed = incidences_by_listing(&g, ell, s);
    log.check("incidence_count", counted.as_ref().is_ok_and(|&c| c == listed), &g, ell, || format!("s = {s}: {counted:?} vs {listed}"));

    let v = rng.gen_range(0..t.n());
    if let Ok(tv) = copy_threshold(&t, v) {
        let at = (tv + 1).max(0) as usize + rng.gen_range(0..=1);
        let ok = catch_unwind(AssertUnwindSafe(|| copy_root(&t, v, at)))
            .is_ok_and(|c| c.is_ok_and(|c| is_isomorphic(&link_graph(&c, at).graph, &t).is_some()));
        log.check("copy_root", ok, &t, at, || format!("vertex {v}"));
    }
}

fn certs<'a>(graphs: impl IntoIterator<Item = &'a MultiGraph>) -> BTreeSet<Vec<u32>> {
    graphs.into_iter().map(certificate).collect()
}

fn root_set(r: &RootReport) -> BTreeSet<Vec<u32>> {
    certs(r.roots.iter().map(|x| &x.graph))
}

fn search(h: &MultiGraph, ell: usize, mode: RootMode) -> RootReport {
    minimal_roots(h, ell, mode, &RootBudget::default())
}

fn run_target(target: Target, log: &mut Log) {
    match target {
        Target::Whitney => {
            let h = complete(3);
            let r = search(&h, 1, RootMode::Link);
            let ok = r.exhaustive && root_set(&r) == certs([&cycle(3), &spider(&[1, 1, 1])]);
            log.check("whitney", ok, &h, 1, || format!("{} roots", r.roots.len()));
        }
        Target::K2bar => {
            let h = empty(2);
            for ell in 1..=5usize {
                let r = search(&h, ell, RootMode::Link);
                let mut want = vec![MultiGraph::disjoint_union(&[&path(ell), &path(ell)])];
                want.extend((1..=(ell - 1) / 2).map(|i| paste_path(&path(ell), i, i)));
                let ok = r.exhaustive && r.roots.len() == ell.div_ceil(2) && root_set(&r) == certs(&want);
                log.check("k2bar", ok, &h, ell, || format!("{} roots", r.roots.len()));
            }
        }
        Target::C6 => {
            let h = cycle(6);
            let r = search(&h, 2, RootMode::Link);
            let ok = r.exhaustive && root_set(&r) == certs([&cycle(6), &spider(&[2, 2, 2])]);
            log.check("c6", ok, &h, 2, || format!("{} roots", r.roots.len()));
        }
        Target::Cycles => {
            for t in 3..=12 {
                for ell in 0..=8 {
                    let c = cycle(t);
                    let out = catch_unwind(|| cycle_roots_closed_form(t, ell));
                    let ok = out.is_ok_and(|roots| {
                        roots.iter().all(|g| is_l_minimal(g, ell) && is_isomorphic(&link_graph(g, ell).graph, &c).is_some())
                    });
                    log.check("closed_form_cycles", ok, &c, ell, || format!("C_{t}"));
                }
            }
        }
        Target::Paths => {
            let check = |h: &MultiGraph, ell: usize, want: Vec<MultiGraph>, exact: bool, log: &mut Log| {
                let r = search(h, ell, RootMode::Path);
                let got = root_set(&r);
                let ok = r.exhaustive && if exact { got == certs(&want) } else { certs(&want).is_subset(&got) };
                log.check("path_roots", ok, h, ell, || format!("{} roots", r.roots.len()));
                let (n, c) = (h.n(), h.component_count());
                for root in &r.roots {
                    let g = &root.graph;
                    log.check("path_root_bounds", g.n() <= ell * n + c && g.m() <= ell * n, g, ell, || "root exceeds the size bounds".into());
                }
            };
            for ell in 0..=4 {
                check(&complete(1), ell, vec![path(ell)], true, log);
            }
            check(&complete(2), 1, vec![path(2), dipole(2)], true, log);
            for ell in 2..=4 {
                check(&complete(2), ell, vec![path(ell + 1)], true, log);
            }
            for ell in 2..=3 {
                check(&cycle(4), ell, vec![joined_cycles(1, ell)], false, log);
            }
        }
    }
}

fn roots(rng: &mut ChaCha8Rng, p: &Params, log: &mut Log) {
    let n = rng.gen_range(p.n.0.min(4)..=p.n.1.min(4));
    let m = rng.gen_range(p.m.0.min(4)..=p.m.1.min(4));
    let g = random_multigraph(rng, n, m);
    let ell = rng.gen_range(p.ell.0.clamp(1, 2)..=p.ell.1.clamp(1, 2));
    let h = link_graph(&g, ell).graph;
    if h.n() == 0 || h.n() > 6 {
        return;
    }
    let budget = RootBudget {
        max_candidates: p.budget.map_or(200_000, |b| b as usize),
        deadline: Some(Instant::now() + Duration::from_secs(20)),
    };
    let r = minimal_roots(&h, ell, RootMode::Link, &budget);
    if !r.exhaustive {
        log.skipped = true;
        return;
    }
    let core = incident_subgraph(&g, ell).subgraph;
    let found = root_set(&r);
    log.check("contains_source_core", found.contains(&certificate(&core)), &g, ell, || "G[ℓ] missing from the roots".into());
    log.check("roots_distinct", found.len() == r.roots.len(), &h, ell, || "repeated root".into());
    for root in &r.roots {
        let x = &root.graph;
        log.check("roots_minimal", is_l_minimal(x, ell), x, ell, || "root is not minimal".into());
        let d = link_graph(x, ell).graph;
        log.check("root_witness", check_isomorphism(&d, &h, &root.witness), x, ell, || "witness does not validate".into());
        let b = r.bounds;
        let inside = x.n() <= b.max_vertices && x.m() <= b.max_edges && x.max_degree() <= b.max_degree;
        log.check("root_bounds", inside, x, ell, || format!("{b:?}"));
        if x.is_tree() {
            let c = d.component_count();
            let ok = (0..x.n()).filter(|&v| x.eccentricity(v) < ell).all(|v| x.degree(v) <= c + 1);
            log.check("tree_root_degree", ok, x, ell, || format!("{c} link graph components"));
        }
    }

    let core_ell = rng.gen_range(1..=3usize);
    let core = incident_subgraph(&g, core_ell).subgraph.with_dense_ids();
    if core.n() <= 6 {
        let got: BTreeSet<Vec<u32>> = match expand_class(&core, core_ell, 1) {
            Ok(members) => members.iter().filter(|x| x.n() == core.n() + 1).map(certificate).collect(),
            Err(_) => BTreeSet::new(),
        };
        let want: BTreeSet<Vec<u32>> = class_by_search(&core, core_ell, 1).into_iter().collect();
        log.check("class_expansion", got == want, &core, core_ell, || format!("{} members vs {}", got.len(), want.len()));
    }
}
