use thiserror::Error;

use crate::set::ElementSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {0} is out of range (elements are 1..=63)")]
    ElementOutOfRange(u64),

    #[error("a family needs at least one member")]
    EmptyFamily,

    #[error("a family needs at least one nonempty member")]
    OnlyEmptySet,

    #[error("duplicate member {0}")]
    DuplicateMember(ElementSet),

    #[error("element {element} is not in the universe {universe}")]
    NotInUniverse { element: u32, universe: ElementSet },

    #[error("family is not union-closed: {a} ∪ {b} is missing")]
    NotUnionClosed { a: ElementSet, b: ElementSet },

    #[error("universe size {n} is outside the supported range 1..={max}")]
    UniverseTooLarge { n: u32, max: u32 },

    #[error("length {ell} exceeds universe size {n}")]
    LengthExceedsUniverse { n: u32, ell: u32 },

    #[error("k = {k} must satisfy 1 <= k <= n = {n}")]
    InvalidK { n: u32, k: u32 },

    #[error("identity needs k <= n and m <= n, got n = {n}, k = {k}, m = {m}")]
    IdentityRange { n: u32, k: u32, m: u32 },

    #[error("p_max = {p_max} must be at least p_hat + 2 = {need}")]
    ScanTooShort { p_max: u32, need: u32 },

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("exhaustive enumeration supports n <= {max}, got n = {n}; use sampling instead")]
    ExhaustiveTooLarge { n: u32, max: u32 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
