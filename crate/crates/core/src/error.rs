use thiserror::Error;

/// Errors raised by the root-finding and certification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two components of a vector that must have distinct components coincide.
    #[error("components {i} and {j} are not distinct")]
    NotDistinct { i: usize, j: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// The derivative vanishes at the point where Smale's gamma is requested.
    #[error("f' vanishes at {0}")]
    CriticalPoint(String),

    /// A mixed difference in the two-point step vanished.
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    /// A bound denominator is not positive, so the bound does not exist.
    #[error("bound undefined: {0}")]
    BoundUndefined(String),

    /// The semilocal function phi(E) is not strictly below one.
    #[error("not certifiable: phi(E) = {0} is not below 1")]
    NotCertifiable(f64),

    /// Two inclusion disks overlap although the theory says they cannot.
    #[error("inclusion disks {i} and {j} overlap")]
    DisksOverlap { i: usize, j: usize },

    /// A theorem precondition that the caller is responsible for does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
