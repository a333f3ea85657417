//! Link graphs of multigraphs.
//!
//! An ℓ-link is a walk of length ℓ that never immediately reuses an edge,
//! taken up to reversal. The ℓ-link graph `𝕃_ℓ(G)` has the ℓ-links of `G`
//! as vertices and one edge per (ℓ+1)-link, joining its two ℓ-sublinks.
//! This crate builds link, path and arc graphs and studies their
//! connectivity, natural partitions, colourings, complete minors and roots.

pub mod canon;
pub mod coloring;
pub mod derived;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod minors;
pub mod partition;
pub mod roots;
pub mod structure;
pub mod walks;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm, Isomorphism};
pub use derived::{arc_graph, link_graph, partial_link_graph, path_graph, DerivedGraph, DerivedKind};
pub use error::{Error, Result};
pub use graph::{GraphStats, MultiGraph, INFINITE_GIRTH};
pub use walks::{Arc, Link, Unit};
