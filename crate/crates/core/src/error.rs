use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("evaluation at a pole, z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("not factorable: {0}")]
    NotFactorable(String),

    #[error("{what} did not converge after {iterations} iterations (best residual {residual:e})")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn pole<T: crate::Real>(z: num_complex::Complex<T>) -> Self {
        Error::Pole {
            re: z.re.to_f64_lossy(),
            im: z.im.to_f64_lossy(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
