//! Evaluate the quality of attributed-graph datasets.
//!
//! The crate revolves around *mode perturbations*: controlled replacements of
//! one mode of an attributed graph (its edge set or its node features) that
//! leave the other mode untouched. Comparing measurements taken on the
//! original and the perturbed data quantifies how much non-redundant
//! information each mode carries.
//!
//! Modules:
//!
//! - [`data`] — domain types (graphs, datasets, distance matrices) and basic
//!   per-graph statistics.
//! - [`ingest`] — parsers for the TU benchmark format and a JSON-lines
//!   canonical format, plus synthetic fixture generators.
//! - [`perturb`] — the nine mode perturbations with reproducible seeding.
//! - [`lift`] — metric-space lifts of both modes: diffusion, heat-kernel,
//!   resistance, and shortest-path distances for the structure; Euclidean and
//!   cosine distances for the features.
//! - [`complement`] — metric-space comparison, mode complementarity, and mode
//!   diversity, with dataset-level aggregation.
//! - [`separability`] — the performance-separability statistics pipeline over
//!   externally produced model-performance records.
//! - [`report`] — diversity binning, dataset taxonomy, correlation analysis,
//!   and machine-readable report emission.

pub mod complement;
pub mod data;
pub mod ingest;
pub mod lift;
pub mod perturb;
pub mod report;
pub mod separability;

pub use data::{AttributedGraph, DistanceMatrix, GraphDataset, GraphStats, Target, Task};
pub use perturb::PerturbationKind;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid distance matrix: {0}")]
    InvalidDistanceMatrix(String),

    #[error("empty dataset")]
    EmptyDataset,

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("missing file: {0}")]
    MissingFile(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("matrix is not symmetric within tolerance {0:e}")]
    NotSymmetric(f64),

    #[error("eigendecomposition of {n}x{n} matrix did not converge after {sweeps} sweeps")]
    NoConvergence { n: usize, sweeps: usize },

    #[error("graph is disconnected; structural lifts require connected input")]
    Disconnected,

    #[error("empty sample")]
    EmptySample,

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
