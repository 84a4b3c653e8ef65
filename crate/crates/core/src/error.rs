use thiserror::Error;

/// Errors raised by the kinetic, carrier, observable and pulse routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain where the formula is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested quantity diverges (stationary limit above threshold,
    /// drifted Planck past its pole, Doppler at the collinear pole, ...).
    #[error("divergence: {0}")]
    Divergence(String),

    /// The magnetized mobility was evaluated too close to cyclotron resonance.
    #[error("resonance: |Omega^2 - omega_H^2| = {detuning:e} is below the guard tolerance")]
    Resonance { detuning: f64 },

    /// A numerical procedure did not reach its tolerance.
    #[error("numeric error: {what} (achieved {achieved:e})")]
    Numeric { what: String, achieved: f64 },

    /// A result violated an invariant that valid inputs cannot break.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn divergence(msg: impl Into<String>) -> Error {
    Error::Divergence(msg.into())
}

/// Fails with a domain error unless `value` is finite and strictly positive.
pub(crate) fn require_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite and > 0, got {value}")))
    }
}

/// Fails with a domain error unless `value` is finite and non-negative.
pub(crate) fn require_non_negative(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite and >= 0, got {value}")))
    }
}
