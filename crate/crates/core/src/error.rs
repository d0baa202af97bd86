use thiserror::Error;

/// Errors raised by the library. Variants map onto the CLI exit codes:
/// `Domain`/`Parse` are usage errors, `Infeasible`/`Budget` are infeasible
/// configurations, the rest are internal.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("unknown distribution `{0}`")]
    UnknownDistribution(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("empty sample")]
    EmptySample,

    #[error("optimum search did not converge; best bracket [{lo}, {hi}] with revenue {best}")]
    NoConvergence { lo: f64, hi: f64, best: f64 },

    #[error("optimal revenue is infinite; track expected revenue growth instead of the gap")]
    InfiniteOptimum,

    #[error("probe budget exceeded at level {level}: {detail}")]
    ProbeBudget { level: usize, detail: String },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("learner `{name}` failed: {reason}")]
    Learner { name: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(input: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
