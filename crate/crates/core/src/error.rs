use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),
    #[error("field of size {p}^{k} does not fit the 32-bit element representation")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("field of size {q} exceeds the discrete-log table cap {cap}")]
    TableCapExceeded { q: u64, cap: u64 },
    #[error("invalid field element {0:?}")]
    InvalidElement(Vec<u32>),
    #[error("element does not belong to this field")]
    ForeignElement,
    #[error("operands belong to different fields (q = {0} and q = {1})")]
    MixedFields(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{d} does not divide q - 1 = {q_minus_one}")]
    NotDivisor { d: u64, q_minus_one: u64 },
    #[error("x^{exponent} = target has no solution in this field")]
    NoSolution { exponent: u64 },
    #[error("cannot embed F_{{{p_src}^{k_src}}} into F_{{{p_dst}^{k_dst}}}")]
    IncompatibleFields { p_src: u32, k_src: u32, p_dst: u32, k_dst: u32 },
    #[error("element is not in the image of the subfield embedding")]
    NotInSubfield,
    #[error("enumeration of {points} points exceeds the cap of {cap}")]
    CapExceeded { points: u128, cap: u64 },
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("characteristic {p} divides n + 1 = {degree}")]
    CharacteristicDividesDegree { p: u32, degree: u32 },
    #[error("the Dwork family needs n >= 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("root of unity does not have order {0}")]
    NotPrimitiveRoot(u32),
    #[error("invalid group element {0:?}")]
    InvalidGroupElement(Vec<u32>),
    #[error("non-split case: n + 1 = {degree} does not divide q^m - 1 = {q_minus_one}")]
    NonSplit { degree: u32, q_minus_one: u64 },
    #[error("Burnside sum {sum} is not divisible by |G| = {order}")]
    NonIntegralBurnside { sum: u128, order: u64 },
    #[error("character sum did not reduce to a rational integer")]
    NonIntegralCharacterSum,
    #[error("Hasse bound violated: a = {a}, q = {q}")]
    HasseBound { a: i64, q: u64 },
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("polynomial has zero leading coefficient")]
    ZeroLeadingCoefficient,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("count series mismatch: {0}")]
    SeriesMismatch(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("count series must contain at least one count")]
    EmptySeries,
    #[error("internal error: {0}")]
    Internal(String),
}
