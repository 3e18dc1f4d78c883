use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("divisor is not monic")]
    NonMonicDivisor,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("every coefficient below precision {precision} lies in the maximal ideal")]
    AllCoefficientsNilpotent { precision: usize },
    #[error("no Jacobian minor has finite order below precision {precision}")]
    NoFiniteMinor { precision: usize },
    #[error("{subsets} candidate minors exceed the search cap {cap}; pass an explicit minor")]
    SearchCapExceeded { subsets: u128, cap: u128 },
    #[error("complete-intersection reduction failed after {trials} trials (best d: {best_d:?})")]
    ReductionFailed {
        trials: usize,
        best_d: Option<usize>,
    },
    #[error("precision {available} is insufficient, need at least {required}")]
    PrecisionInsufficient { required: usize, available: usize },
    #[error("division is not exact: {0}")]
    DivisionNotExact(String),
    #[error("lifting did not converge after {iterations} corrections")]
    NoConvergence { iterations: usize },
    #[error("not a solution: {0}")]
    NotASolution(String),
    #[error("enumeration needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("bijection mismatch: {0}")]
    MismatchFound(String),
}

impl Error {
    /// Whether the error stems from malformed input rather than mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::UnknownVariable(_)
                | Error::InvalidInput(_)
                | Error::DimensionMismatch(_)
                | Error::SearchCapExceeded { .. }
                | Error::PrecisionInsufficient { .. }
        )
    }
}
