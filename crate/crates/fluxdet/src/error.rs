//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the simulation library.
#[derive(Debug, Error)]
pub enum FluxdetError {
    /// A caller-supplied parameter is outside its physically meaningful
    /// domain (e.g. a non-positive mass or an empty grid).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An LAPACK eigensolver returned a nonzero status code.
    #[error("eigensolver failure: {routine} returned info={info}")]
    Eigensolver { routine: &'static str, info: i32 },

    /// A requested eigenfunction does not decay below tolerance at the grid
    /// boundary: the box is too small for that state.
    #[error("grid too small: {0}")]
    GridTooSmall(String),

    /// A result failed one of its internal convergence certificates
    /// (grid-refinement agreement, step-halving agreement).
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// A parameter sweep failed at one step; carries the step index and the
    /// swept parameter value alongside the underlying failure.
    #[error("sweep step {step} (parameter value {value}): {source}")]
    SweepStep {
        step: usize,
        value: f64,
        #[source]
        source: Box<FluxdetError>,
    },

    /// A gap minimization found no interior minimum for a level pair.
    #[error("no avoided crossing found for level pair ({lower}, {upper}) in the swept interval")]
    CrossingNotFound { lower: usize, upper: usize },

    /// Eigenstate tracking through a parameter ramp lost its footing: the
    /// overlap between consecutive eigenbases was too ambiguous to assign
    /// continuations even at the smallest allowed step.
    #[error("state tracking failure: {0}")]
    Tracking(String),

    /// A density matrix stopped being a density matrix (trace, Hermiticity
    /// or positivity drifted beyond tolerance).
    #[error("density-matrix integrity failure: {0}")]
    DensityMatrix(String),

    /// A quantity could not be estimated from the available data (e.g. too
    /// few oscillation extrema to measure a frequency).
    #[error("estimate unavailable: {0}")]
    Estimate(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, FluxdetError>;
