use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("group table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("group element {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("{p} is not prime: {p} = {factor}*{cofactor}")]
    CompositeCharacteristic { p: u64, factor: u64, cofactor: u64 },
    #[error("modulus is reducible over GF({p}): divisible by {factor}")]
    ReducibleModulus { p: u64, factor: String },
    #[error("invalid field description: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,

    #[error("not a simple difference ring: the action on factors is not transitive")]
    NotTransitive,
    #[error("factor action is not a group homomorphism at ({sigma}, {tau})")]
    NotHomomorphism { sigma: String, tau: String },
    #[error("operation needs a Fun(K) pseudofield; normalise with taylor_normalize first")]
    NotFun,
    #[error("invalid pseudofield: {0}")]
    InvalidPseudofield(String),

    #[error("{op} needs a zero-dimensional ideal (dimension is {dim}); use radical_membership instead")]
    PositiveDimension { op: &'static str, dim: i64 },
    #[error("quotient ring has {size} elements, above the enumeration cap {cap}")]
    QuotientTooLarge { size: String, cap: u64 },
    #[error("enumeration bound exceeded: {candidates} candidate points (cap {cap}); try a smaller instance")]
    EnumerationBound { candidates: String, cap: u64 },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("cannot saturate by the zero polynomial")]
    ZeroSaturator,

    #[error("patches do not cover X")]
    NotCovering,
    #[error("patches {0} and {1} are incompatible on X")]
    IncompatiblePatches(usize, usize),
    #[error("denominator vanishes at the base point")]
    ZeroDenominator,

    #[error("invalid finite ring: {0}")]
    InvalidFiniteRing(String),
    #[error("action is not a ring automorphism: witness ({0}, {1})")]
    NotAutomorphism(String, String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
