use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The two points of a Green tensor coincide.
    #[error("singular evaluation: {0}")]
    Singular(String),

    /// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
    #[error(
        "quadrature over {axis} did not converge: best estimate {best:e}, \
         error estimate {abs_error:e} after {evaluations} evaluations"
    )]
    Convergence {
        axis: &'static str,
        best: f64,
        abs_error: f64,
        evaluations: usize,
    },

    /// A closed-form asymptotic was requested outside its regime of validity.
    #[error("regime violation: {0}")]
    Regime(String),

    /// A root search was started on an interval without a sign change.
    #[error("root not bracketed on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    NotBracketed {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Labels a convergence failure of the generic integrator with the axis
    /// it happened on; failures already labelled by an inner axis keep it.
    pub(crate) fn on_axis(self, axis: &'static str) -> Self {
        match self {
            Error::Convergence {
                axis: "x",
                best,
                abs_error,
                evaluations,
                ..
            } => Error::Convergence {
                axis,
                best,
                abs_error,
                evaluations,
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
