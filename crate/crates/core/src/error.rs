use thiserror::Error;

use crate::graph::GraphJson;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),

    /// A proof step failed to find an object the underlying theorem says must
    /// exist. Carries the offending graph so the run can be replayed.
    #[error("anomaly in {}: {}", .0.step, .0.detail)]
    Anomaly(Box<Anomaly>),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct Anomaly {
    pub step: String,
    pub detail: String,
    pub witness: GraphJson,
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn anomaly(step: &str, detail: impl Into<String>, g: &crate::ColouredGraph) -> Self {
        Error::Anomaly(Box::new(Anomaly {
            step: step.to_string(),
            detail: detail.into(),
            witness: GraphJson::from(g),
        }))
    }

    pub fn is_anomaly(&self) -> bool {
        matches!(self, Error::Anomaly(_))
    }
}
