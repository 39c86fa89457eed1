use thiserror::Error;

use crate::scattering::Regime;

/// Which asymptotic channel a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    Transmission,
    Reflection,
}

impl std::fmt::Display for Channel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Channel::Transmission => f.write_str("transmission"),
            Channel::Reflection => f.write_str("reflection"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("incident wave number must be positive, got {0}")]
    NonPositiveWaveNumber(f64),

    #[error("invalid scattering context: {0}")]
    InvalidContext(String),

    #[error("invalid barrier: {0}")]
    InvalidBarrier(String),

    #[error("invalid wave packet: {0}")]
    InvalidPacket(String),

    #[error("invalid quadrature settings: {0}")]
    InvalidQuadrature(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matching system is singular")]
    DegenerateMatch,

    #[error("operation requires the {expected:?} regime, found {found:?}")]
    RegimeMismatch { expected: Regime, found: Regime },

    #[error("transmission time undefined: E = {energy} does not exceed the right level V1 = {v1}")]
    TransmissionUndefined { energy: f64, v1: f64 },

    #[error("finite-difference step {eps} exceeds V0/10 = {limit}")]
    StepTooLarge { eps: f64, limit: f64 },

    #[error("closed-form resonance time is singular for a symmetric barrier (V1 = 0)")]
    SymmetricBarrier,

    #[error("{0} channel has vanishing total weight")]
    VanishingChannel(Channel),

    #[error("adaptive quadrature did not converge in {subdivisions} subdivisions (error estimate {error_estimate:e})")]
    QuadratureFailure {
        subdivisions: usize,
        error_estimate: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
