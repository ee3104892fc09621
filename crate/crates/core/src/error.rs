use thiserror::Error;

/// Errors raised while building, loading, or querying models.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("{0} must be nonempty")]
    Empty(&'static str),
    #[error("{0} is not a subcoalition of the joint action's coalition")]
    NotASubcoalition(String),
    #[error("coalitions overlap on {0}")]
    OverlappingCoalitions(String),
    #[error("joint actions belong to different coalitions")]
    CoalitionMismatch,
    #[error("schema expects {expected}, got {got}")]
    ArityMismatch { expected: String, got: String },
    #[error("side condition violated: {0}")]
    SideConditionViolated(String),
    #[error("models do not share states, agents and labeling")]
    CarrierMismatch,
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("family contains the empty set")]
    EmptySetMember,
    #[error("not a general cover of the successor set at state {state} for agent {agent}")]
    NotAGeneralCover { agent: String, state: String },
    #[error("not a cover of the successor set at state {state} for agent {agent}")]
    NotACover { agent: String, state: String },
    #[error("model is not single-coalition-first at state {0}")]
    NotSingleFirst(String),
    #[error("model is not clear")]
    NotClear,
    #[error("bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid model file: {0}")]
    InvalidModel(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
