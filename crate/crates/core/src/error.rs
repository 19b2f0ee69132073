use thiserror::Error;

/// Errors raised by the geometry, separation and verification routines.
///
/// Variants fall into two families: invalid input (bad files, degenerate
/// configurations, exceeded budgets) and invariant breaches that indicate
/// either a broken guarantee or an implementation bug.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("points not in general position: affinely dependent subset {{{}}}", .subset.join(","))]
    Degenerate { subset: Vec<String> },

    #[error("diagram vectors do not span: subset {{{}}} is rank deficient", .subset.join(","))]
    NotSpanning { subset: Vec<String> },

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("simplices share vertex `{0}`; only vertex-disjoint pairs can cross")]
    SharedVertex(String),

    #[error("invalid sizes: {0}")]
    Sizes(String),

    #[error("not a proper linear separation: {0}")]
    InvalidSeparation(String),

    #[error("no general-position configuration after {attempts} attempts (n={n}, d={d}, range={range})")]
    RetryLimit {
        n: usize,
        d: usize,
        range: u32,
        attempts: usize,
    },

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("THEOREM_VIOLATION: {0}")]
    TheoremViolation(String),

    #[error("SEARCH_INCOMPLETE: {0}")]
    SearchIncomplete(String),

    #[error("invariant breach: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that mean a guaranteed property failed to hold, as
    /// opposed to the caller handing in bad input.
    pub fn is_invariant_breach(&self) -> bool {
        matches!(
            self,
            Error::TheoremViolation(_) | Error::SearchIncomplete(_) | Error::Invariant(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
