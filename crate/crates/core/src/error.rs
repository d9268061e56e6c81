use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The element has zero complex part in its nilpotent decomposition.
    #[error("element is a zero divisor and has no inverse")]
    ZeroDivisor,

    /// A point (or a finite-difference stencil around it) lies outside the closed unit disk.
    #[error("point ({x}, {y}) lies outside the admissible region of the unit disk")]
    Domain { x: f64, y: f64 },

    /// An intermediate boundary trace needs more Fourier modes than the solver allows.
    #[error("degree {degree} exceeds the solver capacity of {cap} modes")]
    DegreeOverflow { degree: usize, cap: usize },

    /// A parameter is outside its admissible range; `field` names the offending input.
    #[error("invalid {field}: {reason}")]
    InvalidParameter { field: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

/// Tolerance on |z| when checking membership of the closed unit disk.
pub(crate) const DISK_SLACK: f64 = 1e-12;

pub(crate) fn check_in_disk(x: f64, y: f64) -> Result<()> {
    if x.hypot(y) > 1.0 + DISK_SLACK || !x.is_finite() || !y.is_finite() {
        Err(Error::Domain { x, y })
    } else {
        Ok(())
    }
}
