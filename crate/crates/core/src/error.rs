use thiserror::Error;

/// Errors raised while building or checking algebraic objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a lattice: {0}")]
    NotALattice(String),

    #[error("axiom violation: {law} fails at {witness}")]
    Axiom { law: String, witness: String },

    #[error("malformed document at {position}: expected {expected}")]
    Malformed { position: String, expected: String },

    #[error("size guard exceeded: {what} needs {needed} but the bound is {bound}; raise the bound to proceed")]
    SizeGuard {
        what: String,
        needed: usize,
        bound: usize,
    },

    #[error("operands belong to different algebras")]
    MixedParents,

    #[error("congruence is unital: it contains (1,0)")]
    UnitalCongruence,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("generator pool too small: {0}; increase the sample bound")]
    PoolTooSmall(String),

    #[error("no such element: {0}")]
    UnknownElement(String),

    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl Error {
    pub(crate) fn axiom(law: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Axiom {
            law: law.into(),
            witness: witness.into(),
        }
    }

    pub(crate) fn guard(what: impl Into<String>, needed: usize, bound: usize) -> Self {
        Error::SizeGuard {
            what: what.into(),
            needed,
            bound,
        }
    }

    /// True for errors caused by exceeding a configured size bound.
    pub fn is_size_guard(&self) -> bool {
        matches!(self, Error::SizeGuard { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
