use rampw_core::ag::AgError;
use rampw_core::asymptotic::AsymptoticError;
use rampw_core::counting::CountError;
use rampw_core::field::FieldError;
use rampw_core::scheme::SchemeError;
use rampw_core::semigroup::SemigroupError;
use rampw_core::weights::WeightError;
use rampw_core::TooLarge;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    BadFile { path: String, message: String },
    #[error(transparent)]
    TooLarge(TooLarge),
    #[error("{0}")]
    Hypothesis(String),
    #[error("{0}")]
    Rejected(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Rejected(_) => 1,
            CliError::Usage(_) => 2,
            CliError::BadFile { .. } => 3,
            CliError::TooLarge(_) => 4,
            CliError::Hypothesis(_) => 5,
        }
    }

    pub fn bad_file(path: &str, message: impl ToString) -> Self {
        CliError::BadFile {
            path: path.to_string(),
            message: message.to_string(),
        }
    }
}

impl From<WeightError> for CliError {
    fn from(e: WeightError) -> Self {
        match e {
            WeightError::TooLarge(t) => CliError::TooLarge(t),
            WeightError::OutOfRange { .. } => CliError::Hypothesis(e.to_string()),
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Rejected(e.to_string())
    }
}

impl From<SchemeError> for CliError {
    fn from(e: SchemeError) -> Self {
        match e {
            SchemeError::TooLarge(t) => CliError::TooLarge(t),
            SchemeError::Weight(w) => w.into(),
            SchemeError::OutOfRange(_) => CliError::Hypothesis(e.to_string()),
            _ => CliError::Rejected(e.to_string()),
        }
    }
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        match e {
            SemigroupError::TooLarge(t) => CliError::TooLarge(t),
            SemigroupError::Precondition(_) => CliError::Hypothesis(e.to_string()),
            SemigroupError::InfiniteGaps(_) => CliError::Rejected(e.to_string()),
        }
    }
}

impl From<AgError> for CliError {
    fn from(e: AgError) -> Self {
        match e {
            AgError::Weight(w) => w.into(),
            AgError::Field(f) => f.into(),
            AgError::OutOfRange(_) | AgError::NotSquare(_) => CliError::Hypothesis(e.to_string()),
            _ => CliError::Rejected(e.to_string()),
        }
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::Weight(w) => w.into(),
            CountError::OutOfRange(_) | CountError::InvalidQuery(_) => {
                CliError::Hypothesis(e.to_string())
            }
            CountError::NonIntegral(_) => CliError::Rejected(e.to_string()),
        }
    }
}

impl From<AsymptoticError> for CliError {
    fn from(e: AsymptoticError) -> Self {
        match e {
            AsymptoticError::BadGrid(_) | AsymptoticError::BadNumber(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Hypothesis(e.to_string()),
        }
    }
}
