use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The rotating frame has no radius where `g_tt < 0`.
    #[error(
        "no admissible radial region: zeta*omega = {product} >= 1 (zeta = {zeta}, omega = {omega})"
    )]
    NoAdmissibleRegion { zeta: f64, omega: f64, product: f64 },

    #[error("domain error: {what} = {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("evaluation failed: {0}")]
    Evaluation(String),

    #[error("resolution too coarse: {0}")]
    Resolution(String),

    #[error("observed convergence order {order:.4} outside [{min}, {max}]")]
    ConvergenceOrder { order: f64, min: f64, max: f64 },

    #[error("inconsistent energy level: {0}")]
    InconsistentLevel(String),

    #[error("not implemented: {0}")]
    NotImplemented(&'static str),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }
}
