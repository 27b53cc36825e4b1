use thiserror::Error;

/// Errors reported by the library.
///
/// Numeric payloads are stored as `f64` regardless of the scalar type used
/// for the computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("quadrature did not converge: best estimate {estimate_re}{estimate_im:+}i, error estimate {error:e}")]
    NonConvergence {
        estimate_re: f64,
        estimate_im: f64,
        error: f64,
    },

    #[error("tail bound cannot reach the tolerance (required truncation radius {required_radius:e})")]
    TailUnbounded { required_radius: f64 },

    #[error("not integrable: {0}")]
    NotIntegrable(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("growth condition violated near x = {witness:e}: {detail}")]
    Growth { witness: f64, detail: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for failures caused by the numerics rather than by the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. } | Error::TailUnbounded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

/// Records the first error raised inside a quadrature integrand, which can
/// only return values.
#[derive(Default)]
pub(crate) struct Trap(std::cell::RefCell<Option<Error>>);

impl Trap {
    pub(crate) fn new() -> Self {
        Trap::default()
    }

    pub(crate) fn catch<V>(&self, r: Result<V>, fallback: V) -> V {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.0.borrow_mut().get_or_insert(e);
                fallback
            }
        }
    }

    /// Prefers the trapped error over whatever the outer routine reported.
    pub(crate) fn finish<V>(self, r: Result<V>) -> Result<V> {
        match self.0.into_inner() {
            Some(e) => Err(e),
            None => r,
        }
    }
}
