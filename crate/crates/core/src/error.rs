use thiserror::Error;

use crate::system_model::PotentialKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("eigensolver did not converge for matrix {matrix} after {sweeps} sweeps")]
    NoConvergence { matrix: &'static str, sweeps: usize },

    #[error("operation requires a {expected} potential, system has {found:?}")]
    WrongBranch {
        expected: &'static str,
        found: PotentialKind,
    },

    #[error("resonant harmonics {0:?}: periodic response is undefined")]
    Resonant(Vec<u32>),

    #[error("forcing excites no response; no escape amplitude exists")]
    NoEscapeAmplitude,

    #[error("gap function has no sign change below amplitude {cap:e}")]
    NoRoot { cap: f64 },

    #[error("mass matrix is singular; the equation of motion cannot be integrated")]
    SingularMass,

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
