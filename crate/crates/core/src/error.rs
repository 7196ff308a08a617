use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed instance document: {0}")]
    Parse(String),

    #[error("invalid criteria: {0}")]
    InvalidCriteria(String),

    #[error("unknown criterion `{0}`")]
    UnknownCriterion(String),

    #[error("unknown alternative `{0}`")]
    UnknownAlternative(String),

    #[error("value `{value}` is outside the domain of criterion `{criterion}`")]
    OutOfDomain { criterion: String, value: String },

    #[error("expected {expected} values, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("wildcard mismatch in statement `{0}`")]
    WildcardMismatch(String),

    #[error("wildcard not allowed here")]
    UnexpectedWildcard,

    #[error("query is unbounded by the preference statements on criterion {criterion}")]
    Unbounded { criterion: usize },

    #[error("value {value} of criterion {criterion} is not on its reference scale")]
    NotOnScale { criterion: usize, value: String },

    #[error("covectors are defined over different index sets")]
    IndexMismatch,

    #[error("criterion {criterion} has a non-binary reference scale ({size} levels)")]
    NonBinaryScale { criterion: usize, size: usize },

    #[error("matching does not cover negative argument {0}")]
    UncoveredArgument(usize),

    #[error("search budget of {0} expansions exceeded")]
    BudgetExceeded(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
