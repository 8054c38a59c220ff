use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("degenerate discriminant: P^2 - 4Q = 0, the roots p and q coincide")]
    DegenerateDiscriminant,

    #[error("discriminant mismatch: {left} vs {right}")]
    DiscriminantMismatch { left: String, right: String },

    #[error("value {0} is not rational")]
    NotRational(String),

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("degenerate sequence: term {index} vanishes")]
    DegenerateSequence { index: usize },

    #[error("singular coefficient at site (r={r}, s={s})")]
    SingularCoefficient { r: usize, s: usize },

    #[error("coefficient pair at site (r={r}, s={s}) violates L_r+s = g1*L_r + g2*L_s")]
    ContractViolation { r: usize, s: usize },

    #[error("coefficient rule `{rule}` does not apply to a {kind} sequence")]
    IncompatibleRule { rule: String, kind: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Errors that can only come from a bug in the engine rather than from the
    /// caller's input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NotRational(_)
                | Error::ContractViolation { .. }
                | Error::DiscriminantMismatch { .. }
        )
    }

    /// Errors that mark a legitimately singular input (a vanishing term or a
    /// vanishing coefficient denominator).
    pub fn is_singular(&self) -> bool {
        matches!(
            self,
            Error::DegenerateSequence { .. }
                | Error::SingularCoefficient { .. }
                | Error::DegenerateDiscriminant
                | Error::DivisionByZero
        )
    }
}
