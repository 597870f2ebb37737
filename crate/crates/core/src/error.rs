use thiserror::Error;

use crate::lattice::Ambient;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("foreign class: expected a class on {expected}, got one on {found}")]
    ForeignClass { expected: Ambient, found: Ambient },

    #[error("class has {found} coordinates but the lattice has rank {rank}")]
    RankMismatch { rank: usize, found: usize },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("non-integral genus: C^2 + K.C = {0} is odd")]
    NonIntegralGenus(i64),

    #[error("not contractible: {0}")]
    NotContractible(String),

    #[error("ruling choice required: an elementary transformation off the minimal section of the quadric needs an explicit ruling")]
    RulingChoiceRequired,

    #[error("invalid elementary transformation: {0}")]
    InvalidTransform(String),

    #[error("index {index} is out of range for {ambient}")]
    IndexOutOfRange { index: usize, ambient: Ambient },

    #[error("repeated exceptional index {0}")]
    RepeatedIndex(usize),

    #[error("wrong ambient: {0}")]
    WrongAmbient(String),

    #[error("budget exceeded: enumeration visited more than {limit} nodes")]
    BudgetExceeded { limit: u64 },

    #[error("identity inapplicable: F differs from pencil - {shift}K by {residual}")]
    IdentityInapplicable { shift: i64, residual: String },

    #[error("rejected curve {name}: {reason}")]
    RejectedCurve { name: String, reason: String },

    #[error("input is not reduced: {0} meets the pencil class once")]
    NotReduced(String),

    #[error("incomplete geometry: no supplied (-1)-curve is available at rank {rank}")]
    IncompleteGeometry { rank: usize },

    #[error("{condition} fails; repair: {repair}")]
    SharpCondition { condition: String, repair: String },

    #[error("not a plane-adjacent model: d = {0}")]
    NotPlaneAdjacent(i64),

    #[error("fibre model invariant violated: {0}")]
    FibrationInvariant(String),

    #[error("decomposition does not sum to F: residual {residual}")]
    DecompositionSum { residual: String },

    #[error("fibre {fibre}: {reason}")]
    InvalidFibre { fibre: String, reason: String },

    #[error("inconsistent fibre data: Shioda rank would be {0}")]
    InconsistentFibreData(i64),

    #[error("not a basis: index {0}")]
    NotABasis(String),

    #[error("blocks are not orthogonal: {left}.{right} = {value}")]
    CrossBlockPairing {
        left: String,
        right: String,
        value: i64,
    },

    #[error("linearly dependent input")]
    DependentInput,

    #[error("verification failed at {check}: {detail}")]
    VerificationFailed { check: String, detail: String },

    #[error("unknown tag {0:?}")]
    UnknownTag(String),

    #[error("unknown class {0:?}")]
    UnknownClass(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
