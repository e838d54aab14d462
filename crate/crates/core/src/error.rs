use thiserror::Error;

/// Failures of basic ring arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("element is not a unit{}", witness.as_ref().map(|w| format!(" (common factor {w})")).unwrap_or_default())]
    NonUnit { witness: Option<String> },
    #[error("operation not supported: {0}")]
    Unsupported(String),
    #[error("prime {0} divides a denominator")]
    BadPrime(u64),
    #[error("sampling set of size {requested} exceeds the field cardinality")]
    FieldTooSmall { requested: u128 },
    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),
}

impl ArithError {
    pub fn non_unit() -> Self {
        ArithError::NonUnit { witness: None }
    }
}
