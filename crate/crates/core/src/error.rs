//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A state left the admissible set (negative density, internal energy
    /// below the stiffened-gas floor, ...). The payload names the first
    /// violated condition and, where available, the offending location.
    #[error("inadmissible state: {0}")]
    Admissibility(String),

    /// Invalid user input (case name, polynomial degree, saturation, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Geometry failure (non-positive Jacobian, folded element, bad file).
    #[error("mesh error: {0}")]
    Mesh(String),

    /// HLLC contact speed escaped (s_L, s_R); indicates a wave-speed bug.
    #[error("wave interlacing failure: {0}")]
    Interlacing(String),

    /// Riemann data generates vacuum; no solution with positive density.
    #[error("vacuum generated in Riemann problem: {0}")]
    Vacuum(String),

    /// A time step produced an invalid update (CFL violation upstream).
    #[error("time step failure: {0}")]
    Step(String),

    /// A cell average violates a limiter bound; the flux or CFL is broken.
    #[error("limiter failure: {0}")]
    Limiter(String),

    /// File I/O wrapper.
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
