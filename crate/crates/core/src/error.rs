use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid subgraph: {0}")]
    InvalidSubgraph(String),
    #[error("orientation mismatch: {0}")]
    Orientation(&'static str),
    #[error("not connected")]
    NotConnected,
    #[error("not Eulerian")]
    NotEulerian,
    #[error("infeasible")]
    Infeasible,
    #[error("parity infeasible: n = {n}, d = {d}")]
    ParityInfeasible { n: usize, d: usize },
    #[error("degree too large: d = {d}, n = {n}")]
    DegreeTooLarge { n: usize, d: usize },
    #[error("metric required")]
    MetricRequired,
    #[error("oracle size limit: n = {n} exceeds {max}")]
    OracleSizeLimit { n: usize, max: usize },
    #[error("not cubic 2EC")]
    NotCubic2ec,
    #[error("use approx3 for odd d on undirected instances")]
    UseApprox3,
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("unsupported degree: {0}")]
    UnsupportedDegree(String),
    #[error("trivial case unsupported")]
    TrivialCase,
    #[error("even d only")]
    EvenDegreeOnly,
    #[error("odd d only")]
    OddDegreeOnly,
    #[error("cancelled")]
    Cancelled,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    /// Errors that mean "no solution exists" rather than misuse or a bug.
    pub fn is_infeasible(&self) -> bool {
        matches!(self, Error::Infeasible | Error::ParityInfeasible { .. })
    }
}

macro_rules! ensure_internal {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err($crate::error::Error::Internal(format!($($arg)*)));
        }
    };
}
pub(crate) use ensure_internal;
