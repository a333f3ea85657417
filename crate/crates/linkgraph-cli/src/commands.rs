use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use linkgraph::coloring::{bound_report, link_coloring_with, BoundReport, LinkColoring, LinkColoringOptions};
use linkgraph::io::{derived_to_json, graph_to_dot, parse_graph, parse_partition, walk_key, GraphJson};
use linkgraph::minors::{verify_eta_lower_bound_with_limit, verify_hadwiger_cases_with_limit, CaseReport, EtaReport, DEFAULT_MINOR_LIMIT};
use linkgraph::partition::{count_cyclic_components, natural_partition, quotient_embedding, quotient_graph, CyclicCensus, PartitionedGraph};
use linkgraph::roots::{expand_class, minimal_roots, RootBudget, RootMode, SearchBounds};
use linkgraph::structure::link_graph_connected;
use linkgraph::{arc_graph, link_graph, path_graph, DerivedGraph, Error, GraphStats, MultiGraph};
use serde::Serialize;

use crate::args::{Cli, Command, Format, Kind, Mode};
use crate::{read_input, to_json, verify, CliError, Output, EXIT_BUDGET, EXIT_CHECK_FAILED, EXIT_INVALID};

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let graph_output = matches!(cli.command, Command::Build { .. } | Command::Expand { .. });
    if cli.format == Format::Dot && !graph_output {
        return Err(CliError::new(EXIT_INVALID, "dot output is only available for build and expand"));
    }
    match &cli.command {
        Command::Build { input, kind, ell } => build(&load(input)?, *kind, *ell, cli.format),
        Command::Analyze { input, ell, partition, hadwiger } => {
            let limit = cli.budget.map_or(DEFAULT_MINOR_LIMIT, |b| b as usize);
            analyze(&load(input)?, *ell, partition, hadwiger.then_some(limit))
        }
        Command::Color { input, ell, report_bounds } => {
            let budget = cli.budget.unwrap_or(LinkColoringOptions::default().budget);
            color(&load(input)?, *ell, *report_bounds, budget)
        }
        Command::Roots { input, ell, mode, timeout } => {
            let mut budget = RootBudget::default();
            if let Some(b) = cli.budget {
                budget.max_candidates = b as usize;
            }
            budget.deadline = timeout.map(|s| Instant::now() + Duration::from_secs_f64(s));
            roots(&load(input)?, *ell, *mode, &budget)
        }
        Command::Expand { input, ell } => expand(&load(input)?, *ell, cli.budget.unwrap_or(2) as usize, cli.format),
        Command::Verify { suite, trials, target, n, m, ell } => {
            let params = verify::Params { seed: cli.seed, trials: *trials, n: *n, m: *m, ell: *ell, target: *target, budget: cli.budget };
            let report = verify::run(*suite, &params);
            let code = if report.passed { 0 } else { EXIT_CHECK_FAILED };
            Ok(Output { text: to_json(&report), code })
        }
    }
}

pub fn load(path: &Path) -> Result<MultiGraph, CliError> {
    parse_graph(&read_input(path)?).map_err(|e| {
        let e = CliError::from(e);
        CliError::new(e.code, format!("{}: {}", path.display(), e.message))
    })
}

fn derived(g: &MultiGraph, kind: Kind, ell: usize) -> DerivedGraph {
    match kind {
        Kind::Link => link_graph(g, ell),
        Kind::Path => path_graph(g, ell),
        Kind::Arc => arc_graph(g, ell),
    }
}

pub fn build(g: &MultiGraph, kind: Kind, ell: usize, format: Format) -> Result<Output, CliError> {
    let d = derived(g, kind, ell);
    Ok(Output::ok(match format {
        Format::Json => to_json(&derived_to_json(g, &d)),
        Format::Dot => graph_to_dot(&d.graph),
    }))
}

#[derive(Serialize)]
struct Connectivity {
    connected: bool,
    components: usize,
    hub_used: bool,
}

#[derive(Serialize)]
struct QuotientSummary {
    n: usize,
    m: usize,
    simple_m: usize,
    /// Whether the quotient embeds in the (ℓ−2)-link graph; natural
    /// partitions with ℓ ≥ 2 only.
    embeds: Option<bool>,
}

#[derive(Serialize)]
struct PartitionSummary {
    source: String,
    vertex_parts: usize,
    edge_parts: usize,
    /// Each axiom maps to `null` when it holds and to a witness otherwise.
    axioms: BTreeMap<String, Option<String>>,
    almost_standard: bool,
    max_edge_parts_at_vertex: usize,
    census: CyclicCensus,
    quotient: Option<QuotientSummary>,
}

#[derive(Serialize)]
struct Hadwiger {
    eta: Option<EtaReport>,
    cases: Option<CaseReport>,
    notes: Vec<String>,
}

// Search results that may be missing for a reason worth reporting rather
// than failing on; only an exhausted size limit is an error.
fn keep<T>(r: Result<T, Error>, what: &str, notes: &mut Vec<String>) -> Result<Option<T>, CliError> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(e @ Error::TooLarge { .. }) => Err(CliError::from(e)),
        Err(e) => {
            notes.push(format!("{what}: {e}"));
            Ok(None)
        }
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    ell: usize,
    graph: GraphStats,
    link_graph: GraphStats,
    connectivity: Connectivity,
    partition: PartitionSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    hadwiger: Option<Hadwiger>,
}

pub fn analyze(g: &MultiGraph, ell: usize, partition: &str, minor_limit: Option<usize>) -> Result<Output, CliError> {
    let c = link_graph_connected(g, ell);
    let h = if partition == "natural" {
        natural_partition(g, ell)
    } else {
        let p = parse_partition(&read_input(Path::new(partition))?)?;
        PartitionedGraph::from_json(link_graph(g, ell).graph, &p)?
    };
    let quotient = match quotient_graph(&h) {
        Ok(q) => {
            let embeds = (h.source().is_some() && ell >= 2).then(|| quotient_embedding(&h).is_ok());
            Some(QuotientSummary { n: q.graph.n(), m: q.graph.m(), simple_m: q.simple.m(), embeds })
        }
        Err(_) => None,
    };
    let summary = PartitionSummary {
        source: partition.to_string(),
        vertex_parts: h.vparts().len(),
        edge_parts: h.eparts().len(),
        axioms: h.axiom_report().into_iter().map(|(a, w)| (a.to_string(), w)).collect(),
        almost_standard: h.is_almost_standard(),
        max_edge_parts_at_vertex: h.max_eparts_at_vertex(),
        census: count_cyclic_components(&h),
        quotient,
    };
    let hadwiger = match minor_limit {
        None => None,
        Some(limit) => {
            let mut notes = Vec::new();
            let eta = keep(verify_eta_lower_bound_with_limit(g, ell, limit), "eta", &mut notes)?;
            let cases = keep(verify_hadwiger_cases_with_limit(g, ell, limit), "cases", &mut notes)?;
            Some(Hadwiger { eta, cases, notes })
        }
    };
    let report = AnalyzeReport {
        ell,
        graph: g.stats(),
        link_graph: h.graph().stats(),
        connectivity: Connectivity { connected: c.connected, components: c.components, hub_used: c.hub_used },
        partition: summary,
        hadwiger,
    };
    Ok(Output::ok(to_json(&report)))
}

#[derive(Serialize)]
struct ColorReport {
    /// The ℓ-link behind each vertex of the link graph.
    links: Vec<String>,
    #[serde(flatten)]
    coloring: LinkColoring,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<BoundReport>,
}

pub fn color(g: &MultiGraph, ell: usize, report_bounds: bool, budget: u64) -> Result<Output, CliError> {
    let d = link_graph(g, ell);
    let c = link_coloring_with(g, ell, &LinkColoringOptions { budget });
    let mut ok = c.coloring.is_proper(&d.graph);
    let bounds = report_bounds.then(|| bound_report(g, ell, c.coloring.palette, budget));
    if let Some(b) = &bounds {
        ok &= b.checks.iter().all(|x| x.holds);
    }
    let report = ColorReport { links: d.vertex_walks.iter().map(|a| walk_key(g, a)).collect(), coloring: c, bounds };
    Ok(Output { text: to_json(&report), code: if ok { 0 } else { EXIT_CHECK_FAILED } })
}

#[derive(Serialize)]
struct Witness {
    /// Walk of the root behind each vertex of its derived graph, mapped to
    /// a vertex id of the target.
    vertices: BTreeMap<String, usize>,
    edges: BTreeMap<String, usize>,
}

#[derive(Serialize)]
struct RootJson {
    graph: GraphJson,
    witness: Witness,
}

#[derive(Serialize)]
struct RootsReport {
    target: GraphJson,
    ell: usize,
    mode: RootMode,
    bounds: SearchBounds,
    candidates: usize,
    exhaustive: bool,
    roots: Vec<RootJson>,
}

pub fn roots(h: &MultiGraph, ell: usize, mode: Mode, budget: &RootBudget) -> Result<Output, CliError> {
    let mode = match mode {
        Mode::Link => RootMode::Link,
        Mode::Path => RootMode::Path,
    };
    let r = minimal_roots(h, ell, mode, budget);
    let roots = r
        .roots
        .iter()
        .map(|root| {
            let g = &root.graph;
            let d = derived(g, if mode == RootMode::Link { Kind::Link } else { Kind::Path }, ell);
            let w = &root.witness;
            let vertices = d.vertex_walks.iter().enumerate().map(|(i, a)| (walk_key(g, a), h.vertex_id(w.vertex_map[i]))).collect();
            let edges = d.edge_walks.iter().enumerate().map(|(i, a)| (walk_key(g, a), h.edge_id(w.edge_map[i]))).collect();
            RootJson { graph: GraphJson::from_graph(g), witness: Witness { vertices, edges } }
        })
        .collect();
    let report = RootsReport {
        target: GraphJson::from_graph(h),
        ell,
        mode,
        bounds: r.bounds,
        candidates: r.candidates,
        exhaustive: r.exhaustive,
        roots,
    };
    Ok(Output { text: to_json(&report), code: if r.exhaustive { 0 } else { EXIT_BUDGET } })
}

#[derive(Serialize)]
struct ExpandReport {
    ell: usize,
    extra_vertices: usize,
    members: Vec<GraphJson>,
}

pub fn expand(g: &MultiGraph, ell: usize, extra: usize, format: Format) -> Result<Output, CliError> {
    let members = expand_class(g, ell, extra)?;
    Ok(Output::ok(match format {
        Format::Json => to_json(&ExpandReport { ell, extra_vertices: extra, members: members.iter().map(GraphJson::from_graph).collect() }),
        Format::Dot => members.iter().map(graph_to_dot).collect(),
    }))
}
