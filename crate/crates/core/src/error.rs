use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("expected {expected} quantum numbers, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("the rank-one energy convention requires rank 1, got rank {rank}")]
    ConventionRank { rank: usize },

    #[error("partition {parts:?} has more than {max} parts")]
    PartitionTooLong { parts: Vec<u32>, max: usize },

    #[error("pole in {what} at kappa = {kappa}: vanishing factor(s) {}", factors.join(", "))]
    Pole {
        what: String,
        kappa: String,
        factors: Vec<String>,
    },

    #[error("expansion of {what} produced the unexpected term {partition:?}")]
    ExpansionResidual { what: String, partition: Vec<u32> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("z = {0} is a pole of the Weierstrass function")]
    AtPole(f64),

    #[error("tail bound is not representable for g = {g}, P_max = {p_max}")]
    TailBound { g: f64, p_max: usize },

    #[error("lattice sum did not converge within cutoff {cutoff}: error estimate {estimate:e} exceeds {tol:e}")]
    LatticeNotConverged { cutoff: usize, estimate: f64, tol: f64 },

    #[error("recurrence coefficient c_{m} = {value} is negative")]
    NegativeRecurrence { m: usize, value: String },

    #[error("operator bandwidth {bandwidth} does not fit truncation {dim}")]
    BandwidthExceeded { bandwidth: usize, dim: usize },

    #[error("eigensolver failed: {0}")]
    EigenFailure(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("truncation monitor failed: {0}")]
    Truncation(String),

    #[error("perturbative order {0} is unavailable: second order needs rank 1 and higher orders are not implemented")]
    OrderUnsupported(usize),
}

impl Error {
    /// True for failures of an iterative numerical procedure, as opposed to bad input.
    pub fn is_convergence(&self) -> bool {
        matches!(
            self,
            Error::LatticeNotConverged { .. }
                | Error::EigenFailure(_)
                | Error::Quadrature(_)
                | Error::Truncation(_)
        )
    }
}
