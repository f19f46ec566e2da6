//! Error type shared by all core modules.

use crate::spacetime::Event;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("velocity magnitude {speed:.6e} is not below c = {c:.6e}")]
    Superluminal { speed: f64, c: f64 },

    #[error("gravitational potential must be positive, got {mu:.6e} at {at}")]
    NonPositiveMu { mu: f64, at: Event },

    #[error("field singularity at {at}")]
    Singularity { at: Event },

    #[error("singular projector: mu + U·V vanished (|denominator| = {denom:.3e})")]
    SingularProjector { denom: f64 },

    #[error("degenerate four-vector: {context}")]
    Degenerate { context: &'static str },

    #[error("imaginary residue {residue:.3e} exceeds tolerance {tol:.3e}; not a valid unified potential")]
    RealityViolation { residue: f64, tol: f64 },

    #[error("singular superposition: V1*V2 = 1")]
    SingularSuperposition,

    #[error("product field supports at most one moving constituent")]
    MultipleMovers,

    #[error("kinematics extraction requires a comoving point, but |u|/c = {speed_ratio:.3e} there")]
    FrameError { speed_ratio: f64 },

    #[error("four-velocity is not unit-normalized: |V·V - 1| = {defect:.3e}")]
    UnnormalizedVelocity { defect: f64 },

    #[error("non-finite value produced in {context}")]
    NonFinite { context: &'static str },

    #[error("norm drift {drift:.3e} exceeded bound {bound:.3e} at step {step}")]
    NormDrift { drift: f64, bound: f64, step: usize },

    #[error("invalid parameter {name}: {reason}")]
    Param { name: &'static str, reason: String },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Param {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
