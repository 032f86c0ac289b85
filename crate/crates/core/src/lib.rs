//! Spectral Nordhaus-Gaddum toolkit: adjacency spectra of a graph and its
//! complement, the extremal constructions for `|mu_k(G)| + |mu_k(complement G)|`,
//! quotient-matrix spectra of block graphs, inequality checks, and exact
//! small-order search.
//!
//! Sweeps over many graphs run on rayon when the default `parallel` feature is
//! enabled; with it disabled everything runs sequentially and produces the
//! same output.

pub mod bounds;
pub mod exec;
pub mod families;
pub mod graph;
pub mod numfmt;
pub mod quotient;
pub mod search;
pub mod spectra;

pub use bounds::{full_report, BoundReport, CheckId, CheckRecord, SpectralPair, Verdict};
pub use families::FamilySpec;
pub use graph::{DegreeProfile, Graph, Graph6Error, GraphError};
pub use quotient::{BlockPattern, ClassKind, QuotientMatrix};
pub use search::{f_k_exact, probe_random, SearchOptions, SearchResult};
pub use spectra::{adjacency_spectrum, Spectrum, SpectrumError};
