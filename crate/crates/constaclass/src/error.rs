use thiserror::Error;

/// Errors produced by field construction, polynomial arithmetic and the
/// classification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("size {0} exceeds the supported cap")]
    FieldTooLarge(u128),
    #[error("discrete logarithm of zero is undefined")]
    LogOfZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("scaling substitution requires a nonzero scale")]
    ZeroScale,
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("modulus {0} is not coprime to the field characteristic {1}")]
    NotCoprimeToCharacteristic(u64, u64),
    #[error("minimal polynomial has a coefficient outside the base field")]
    CoefficientNotInBaseField,
    #[error("the two constants are not isometric for this length")]
    NotIsometric,
    #[error("the auxiliary prime must differ from the field characteristic {0}")]
    EllEqualsCharacteristic(u64),
    #[error("{0} is not prime")]
    EllNotPrime(u64),
    #[error("field order must be 3 mod 4, got {0}")]
    FieldNotThreeModFour(u64),
    #[error("polynomial degree {0} must be below the code length {1}")]
    DegreeTooLarge(u64, u64),
    #[error("enumeration of {0} codes exceeds the cap of {1}")]
    TooManyCodes(u128, u128),
    #[error("code with {0} words exceeds the enumeration cap of {1}")]
    CodeTooLarge(u128, u128),
    #[error("code constant does not match the isometry witness")]
    WitnessMismatch,
    #[error("modulus is not irreducible over GF({0})")]
    InvalidModulus(u64),
    #[error("designated generator does not have order {0}")]
    InvalidGenerator(u64),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
