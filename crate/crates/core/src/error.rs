use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Direct evaluation of the polarizability at the oscillator frequency.
    #[error("oscillator resonance at omega = {omega}: polarizability is unbounded")]
    Resonance { omega: f64 },

    #[error("division by zero frequency")]
    ZeroFrequency,

    /// The matching denominator vanished (bound-state / surface-mode condition).
    #[error("scattering pole: matching denominator vanishes (bound-state condition)")]
    BoundStatePole,

    #[error("degenerate interface: {0} vanishes")]
    DegenerateInterface(&'static str),

    #[error("Fabry-Perot pole at L = {length}, interior momentum q = {q_re}{q_im:+}i")]
    FabryPerotPole { length: f64, q_re: f64, q_im: f64 },

    #[error("insufficient data: need at least {needed} points, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("evanescent kinematics (k > omega/c): {0}")]
    Evanescent(&'static str),

    #[error("lattice sum diverges for s = {s} (requires s > 2)")]
    Divergent { s: f64 },

    #[error("small-k expansion invalid for s = {s}: Gamma((2-s)/2) is singular")]
    ExpansionInvalid { s: f64 },

    #[error("kernel evaluated at a dipole site (zero separation)")]
    Singularity,

    #[error("renormalized coupling has a pole: 1 - alpha * self_term = 0")]
    RenormalizationPole,

    /// Negative squared frequency; the value is carried so callers can report it.
    #[error("unstable mode: omega^2 = {omega_squared} < 0")]
    Instability { omega_squared: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for poles, divergences and instabilities, as opposed to bad input.
    pub fn is_numeric_failure(&self) -> bool {
        matches!(
            self,
            Error::Resonance { .. }
                | Error::ZeroFrequency
                | Error::BoundStatePole
                | Error::DegenerateInterface(_)
                | Error::FabryPerotPole { .. }
                | Error::Divergent { .. }
                | Error::ExpansionInvalid { .. }
                | Error::Singularity
                | Error::RenormalizationPole
                | Error::Instability { .. }
        )
    }
}

pub(crate) fn require_finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be finite, got {v}")))
    }
}

pub(crate) fn require_positive(name: &'static str, v: f64) -> Result<()> {
    require_finite(name, v)?;
    if v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be > 0, got {v}")))
    }
}

pub(crate) fn require_non_negative(name: &'static str, v: f64) -> Result<()> {
    require_finite(name, v)?;
    if v >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be >= 0, got {v}")))
    }
}
