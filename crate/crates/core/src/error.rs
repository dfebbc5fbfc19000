use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("Ramsey arrow not allowed in plain formula (offset {0})")]
    RamseyInPlainFormula(usize),
    #[error("nested conditional (offset {0})")]
    NestedConditional(usize),
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("world `{world}` has no value for atom `{atom}`")]
    IncompleteValuation { world: String, atom: String },
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("too many worlds: {0} (at most {max})", max = crate::worlds::MAX_WORLDS)]
    TooManyWorlds(usize),

    #[error("overlapping cells")]
    OverlappingCells,
    #[error("empty cell")]
    EmptyCell,
    #[error("missing world(s) {0:?} in ordered partition")]
    MissingWorlds(Vec<usize>),
    #[error("relation is not a total preorder: {0}")]
    NotATotalPreorder(String),
    #[error("TPOs range over different world sets")]
    DomainMismatch,
    #[error("empty world set given to {0}")]
    EmptySet(&'static str),

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("definitional failure in {operator}: {reason}")]
    DefinitionalFailure { operator: &'static str, reason: String },

    #[error("enumeration bound exceeded: {worlds} worlds (bound {bound})")]
    BoundExceeded { worlds: usize, bound: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0} has no unique maximum (flattest TPO is not unique)")]
    NonUniqueMaximum(&'static str),
    #[error("trace lacks field required by {postulate}: {field}")]
    MissingTraceField {
        postulate: &'static str,
        field: &'static str,
    },

    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error("unknown postulate `{0}`")]
    UnknownPostulate(String),
    #[error("scenario: {0}")]
    Scenario(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
