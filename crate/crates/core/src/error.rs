use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid `{field}`: {reason}")]
    Validation { field: &'static str, reason: String },

    #[error("problem size exceeds cap: {what} = {value} > {cap}")]
    DimensionCap { what: &'static str, value: usize, cap: usize },

    #[error("quadratic form is not positive definite (omega_minus_sq = {omega_minus_sq:e}); no normal-phase displacement exists")]
    SingularForm { omega_minus_sq: f64 },

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("no sign change of omega_minus_sq found below {omega_hi:e} although kappa*gamma = {kappa_gamma} < 1")]
    BracketFailure { kappa_gamma: f64, omega_hi: f64 },

    #[error("operator `{name}` is not Hermitian (defect {defect:e})")]
    NonHermitian { name: &'static str, defect: f64 },

    #[error("state is not normalized: {detail}")]
    Unnormalized { detail: String },

    #[error("identity `{identity}` violated (defect {defect:e})")]
    InvariantViolation { identity: String, defect: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Validation { field, reason: reason.into() }
    }
}

/// Checks `value > 0` and finiteness, naming the field on failure.
pub(crate) fn require_positive(field: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::validation(field, format!("must be positive and finite, got {value}")));
    }
    Ok(())
}

pub(crate) fn require_non_negative(field: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::validation(field, format!("must be non-negative and finite, got {value}")));
    }
    Ok(())
}

pub(crate) fn require_finite(field: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::validation(field, format!("must be finite, got {value}")));
    }
    Ok(())
}
