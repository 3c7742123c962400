use thiserror::Error;

/// Every failure the kernel can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdegError {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable '{name}' at position {pos} (only x and y are allowed)")]
    UnknownVariable { name: char, pos: usize },

    #[error("not a germ: {0}")]
    NotAGerm(String),

    #[error("element has zero constant term and is not a unit")]
    NotAUnit,

    #[error("characteristic {p} is too small for order {m}")]
    SmallCharacteristic { p: u64, m: usize },

    #[error("{0} is not a supported prime modulus")]
    BadModulus(u64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("colength did not stabilize up to truncation {max_n}")]
    ColengthDiverged { max_n: u32 },

    #[error("singularity is not isolated (Jacobian colength diverged)")]
    NotIsolated,

    #[error("every random draw was degenerate ({trials} trials)")]
    DegenerateDraws { trials: usize },

    #[error("value depends on the unit: {values:?}")]
    UnitDependence { values: Vec<u64> },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("unavailable: {0}")]
    Unavailable(String),
}

impl AdegError {
    /// Usage and input errors map to 2, computation errors to 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            AdegError::Usage(_)
            | AdegError::Syntax { .. }
            | AdegError::UnknownVariable { .. }
            | AdegError::NotAGerm(_)
            | AdegError::BadModulus(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, AdegError>;
