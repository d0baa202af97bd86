use std::fmt;

use revcurve::Error;

/// A command failure and the exit code it maps to.
#[derive(Debug)]
pub enum Failure {
    /// Exit 2: bad flags, config or parameters.
    Usage(String),
    /// Exit 3: infeasible distribution/learner combination or exhausted budget.
    Infeasible(String),
    /// Exit 4: anything else.
    Internal(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Infeasible(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Failure::Usage(msg.into())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Infeasible(m) | Failure::Internal(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Domain(_)
            | Error::Parse { .. }
            | Error::UnknownDistribution(_)
            | Error::InvalidDistribution(_)
            | Error::EmptySample
            | Error::Json(_) => Failure::Usage(msg),
            Error::Infeasible(_)
            | Error::InfiniteOptimum
            | Error::NoConvergence { .. }
            | Error::ProbeBudget { .. }
            | Error::InsufficientData(_) => Failure::Infeasible(msg),
            Error::Learner { .. } | Error::Io(_) => Failure::Internal(msg),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

pub type CmdResult = Result<(), Failure>;
