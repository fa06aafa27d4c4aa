use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoravaError {
    #[error("precision mismatch: 2^{0} vs 2^{1}")]
    PrecisionMismatch(u32, u32),
    #[error("formal group law mismatch")]
    TagMismatch,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("no square root: argument is not 1 mod 8")]
    NoSquareRoot,
    #[error("branch does not square to the argument mod 8")]
    BadBranch,
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("insufficient precision: need 2^{needed}, have 2^{have}")]
    InsufficientPrecision { needed: u32, have: u32 },
    #[error("element does not have odd xi-valuation")]
    NotOddValuation,
    #[error("wrong formal group law for this operation")]
    WrongTag,
    #[error("closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("depth {0} outside the supported range")]
    DepthOutOfRange(u32),
    #[error("quotient variant mismatch: {0}")]
    VariantMismatch(String),
    #[error("element is not in the quotient ground set")]
    NotInGroundSet,
    #[error("dimension {0} exceeds the cap")]
    DimensionCap(usize),
    #[error("quotient validation failed: {0}")]
    Validation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, MoravaError>;
