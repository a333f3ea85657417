use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "linkgraph", version, about = "Link graphs, path graphs and arc graphs of multigraphs")]
pub struct Cli {
    /// Seed for randomised checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Search budget; its unit depends on the command (see --help of each).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Link,
    Path,
    Arc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Link,
    Path,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Counts,
    Connectivity,
    Partitions,
    Coloring,
    Minors,
    Incidence,
    Roots,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    /// The minimal 1-roots of K_3.
    Whitney,
    /// The minimal ℓ-roots of two isolated vertices, ℓ ≤ 5.
    K2bar,
    /// The minimal 2-roots of the 6-cycle.
    C6,
    /// Closed-form cycle roots, t ≤ 12.
    Cycles,
    /// Minimal path roots of K_1, K_2 and C_4.
    Paths,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the link, path or arc graph of a graph.
    Build {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Link)]
        kind: Kind,
        #[arg(long)]
        ell: usize,
    },
    /// Report statistics, connectivity and partition structure of a link
    /// graph. A partition file refers to the ids of the link graph as
    /// written by `build`. --budget caps the order of graphs searched for
    /// complete minors.
    Analyze {
        input: PathBuf,
        #[arg(long)]
        ell: usize,
        /// `natural` or a partition JSON file.
        #[arg(long, default_value = "natural")]
        partition: String,
        /// Also compute Hadwiger numbers of the graph and its link graph.
        #[arg(long)]
        hadwiger: bool,
    },
    /// Colour a link graph level by level. --budget caps search nodes.
    Color {
        input: PathBuf,
        #[arg(long)]
        ell: usize,
        /// Check the palette against the known upper bounds.
        #[arg(long)]
        report_bounds: bool,
    },
    /// Find the minimal roots of a graph. --budget caps candidate graphs.
    Roots {
        input: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long, value_enum, default_value_t = Mode::Link)]
        mode: Mode,
        /// Give up after this many seconds.
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// List the ℓ-equivalence class of an ℓ-minimal graph. --budget caps
    /// the number of added vertices (default 2).
    Expand {
        input: PathBuf,
        #[arg(long)]
        ell: usize,
    },
    /// Run a battery of randomised checks.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 30)]
        trials: usize,
        /// Run one fixed root computation instead of random trials.
        #[arg(long, value_enum)]
        target: Option<Target>,
        /// Vertex range, `lo-hi` or a single number.
        #[arg(long, value_parser = parse_range, default_value = "1-5")]
        n: (usize, usize),
        /// Edge range.
        #[arg(long, value_parser = parse_range, default_value = "0-7")]
        m: (usize, usize),
        /// Range of ℓ.
        #[arg(long, value_parser = parse_range, default_value = "0-3")]
        ell: (usize, usize),
    },
}

pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = match s.split_once('-') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), s.trim()),
    };
    let lo: usize = lo.parse().map_err(|_| format!("bad range {s:?}"))?;
    let hi: usize = hi.parse().map_err(|_| format!("bad range {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}
