use thiserror::Error;

use crate::filter::ScheduleGuard;
use crate::ledger::LedgerError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("schedule infeasible: {0}")]
    ScheduleInfeasible(ScheduleGuard),

    #[error("infeasible scale: {0}")]
    InfeasibleScale(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Ledger(#[from] LedgerError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that signal a parameter point outside the range an
    /// algorithm can handle, as opposed to malformed input.
    pub fn is_infeasible(&self) -> bool {
        matches!(self, Error::ScheduleInfeasible(_) | Error::InfeasibleScale(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
