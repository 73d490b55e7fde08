use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside the domain where the formulas are defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular pivot in row {row} (|pivot| = {pivot:e}, row scale = {scale:e})")]
    SingularPivot { row: usize, pivot: f64, scale: f64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("degenerate value-stencil symbol at beta*h = {beta_h}")]
    DegenerateSymbol { beta_h: f64 },

    #[error("unknown built-in example {0} (expected 1, 2 or 3)")]
    UnknownExample(u32),

    #[error("time exponent {0} has no closed-form Caputo derivative here (need p in {{0, 1}} or p >= 2)")]
    UnsupportedExponent(f64),

    #[error("expression parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("inconsistent problem data: {0}")]
    InvalidProblem(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}
