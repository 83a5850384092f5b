use thiserror::Error;

/// Errors raised by the special-function kernel, channel models and
/// capacity engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {value} outside the supported domain ({expected})")]
    Domain {
        function: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid parameter `{field}` = {value}: {reason}")]
    InvalidParameter {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{what} did not converge (estimated relative error {achieved:e}, target {target:e})")]
    Convergence {
        what: &'static str,
        achieved: f64,
        target: f64,
    },

    #[error("log-space result {log_value} exceeds the representable range")]
    Overflow { log_value: f64 },

    #[error(
        "expansion exponents {first} and {second} coincide; perturb alpha by ~1e-4 to separate the poles"
    )]
    Pole { first: f64, second: f64 },

    #[error("engine precondition violated: {0}")]
    Precondition(String),

    #[error("sample variance overflowed for moment order {order}")]
    VarianceOverflow { order: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(function: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        function,
        value,
        expected,
    }
}
