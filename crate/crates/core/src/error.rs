use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(String, String),
    #[error("edge joins `{0}` to itself; use a loop instead")]
    SelfLoopAsEdge(String),
    #[error("duplicate loop id `{0}`")]
    DuplicateLoop(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("element set plus the new element is independent")]
    NotDependent,
    #[error("element set is not independent")]
    NotIndependent,
    #[error("the ground set E ∪ L is empty")]
    EmptyGroundSet,
    #[error("the rigidity matroid of the graph is not connected")]
    NotConnectedMatroid,
    #[error("the graph has no loop")]
    NoLoop,
    #[error("the graph is not M_lc-connected")]
    NotMlcConnected,
    #[error("the graph has no unbalanced 2-separation with a non-adjacent hinge")]
    NoUnbalancedSeparation,
    #[error("missing edge `{0}`-`{1}`")]
    MissingEdge(String, String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("invalid move at index {index}: {reason}")]
    InvalidMoveAt { index: usize, reason: String },
    #[error("vertex `{0}` is not a node")]
    NotANode(String),
    #[error("illegal reduction choice: {0}")]
    IllegalChoice(String),
    #[error("exhaustive scan found no reduction: {0}")]
    ExhaustionBug(String),
    #[error("element or vertex {0} has no assignment in the realization")]
    UnboundElement(String),
    #[error("loop normal for `{0}` must be nonzero")]
    NonzeroRequired(String),
    #[error("points of `{0}` and `{1}` coincide; resample the realization")]
    DegenerateLine(String, String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicateVertex(_) => "DuplicateVertex",
            Error::DuplicateEdge(..) => "DuplicateEdge",
            Error::SelfLoopAsEdge(_) => "SelfLoopAsEdge",
            Error::DuplicateLoop(_) => "DuplicateLoop",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::UnknownElement(_) => "UnknownElement",
            Error::NotDependent => "NotDependent",
            Error::NotIndependent => "NotIndependent",
            Error::EmptyGroundSet => "EmptyGroundSet",
            Error::NotConnectedMatroid => "NotConnectedMatroid",
            Error::NoLoop => "NoLoop",
            Error::NotMlcConnected => "NotMlcConnected",
            Error::NoUnbalancedSeparation => "NoUnbalancedSeparation",
            Error::MissingEdge(..) => "MissingEdge",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::InvalidMove(_) => "InvalidMove",
            Error::InvalidMoveAt { .. } => "InvalidMove",
            Error::NotANode(_) => "NotANode",
            Error::IllegalChoice(_) => "IllegalChoice",
            Error::ExhaustionBug(_) => "ExhaustionBug",
            Error::UnboundElement(_) => "UnboundElement",
            Error::NonzeroRequired(_) => "NonzeroRequired",
            Error::DegenerateLine(..) => "DegenerateLine",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Parse(_) => "ParseError",
        }
    }
}
