use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("unsupported quiver type {0}")]
    UnsupportedType(String),

    #[error("vertex {vertex} out of range for a quiver with {len} vertices")]
    BadVertex { vertex: usize, len: usize },

    #[error("invalid Weyl word letter: {0}")]
    BadLetter(String),

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("prime {0} is too small for this lattice basis")]
    PrimeTooSmall(u64),

    #[error("no module: {0}")]
    NoSuchModule(String),

    /// Reflection at a vertex with zero parameter; the functor is the identity.
    #[error("reflection functor at vertex {0} is the identity (parameter entry is zero)")]
    IdentityFunctor(usize),

    #[error("module does not satisfy the preprojective relations: {0}")]
    InvalidModule(String),

    #[error("cannot reduce modulo {p}: {reason}")]
    Reduction { p: u64, reason: String },

    #[error("no witness prime: {0}")]
    NoWitness(String),

    #[error("internal iteration cap exceeded in {0}")]
    IterationCap(&'static str),
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
        if expected == got {
            Ok(())
        } else {
            Err(Error::Dimension { expected, got })
        }
    }
}
