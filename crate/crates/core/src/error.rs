use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownIdentifier(String),
    NegativeExponent,
    NonIntegerExponent,
    DivisionByZero,
    NonConstantDivisor,
}

/// Expression parse failure, located by byte offset into the input text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {}", describe(.kind))]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::Syntax(msg) => msg.clone(),
        ParseErrorKind::UnknownIdentifier(name) => format!("unknown identifier `{name}`"),
        ParseErrorKind::NegativeExponent => "negative exponent".into(),
        ParseErrorKind::NonIntegerExponent => "non-integer exponent".into(),
        ParseErrorKind::DivisionByZero => "division by zero".into(),
        ParseErrorKind::NonConstantDivisor => "division is only allowed by a nonzero constant".into(),
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid variable context: {0}")]
    VarCtx(String),
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("degenerate pivot: determinant of the pivot matrix is identically zero")]
    DegeneratePivot,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
