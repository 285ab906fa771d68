use thiserror::Error;

/// Error taxonomy for the whole crate.
///
/// Precondition violations carry enough context to state what bound was
/// broken; numerical failures carry the achieved accuracy so callers can
/// decide whether to retry at higher resolution.
#[derive(Debug, Error)]
pub enum OscillentError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("coupling too strong: C^2 = {c_sq:.6e} must stay below omega^2 Omega^2 = {bound:.6e} for a stable spectrum")]
    CouplingTooStrong { c_sq: f64, bound: f64 },

    #[error("entropy undefined (-inf): {0}")]
    UndefinedEntropy(String),

    #[error("classically forbidden region: |x| = {x:.6} exceeds the turning point {x_turn:.6}")]
    ClassicallyForbidden { x: f64, x_turn: f64 },

    #[error("turning-point proximity: |x| = {x:.6} is within a factor {margin:.0e} of the turning point {x_turn:.6}, where the semiclassical amplitude diverges")]
    TurningPointProximity { x: f64, x_turn: f64, margin: f64 },

    #[error("schmidt offset out of range: dn = {dn} must lie strictly inside (0, n) with n = {n}")]
    SchmidtOffsetOutOfRange { dn: f64, n: u32 },

    #[error("degenerate sample set: {0}")]
    DegenerateSamples(String),

    #[error("too few samples: got {got}, need at least {min}")]
    TooFewSamples { got: usize, min: usize },

    #[error("grid insufficient: kernel trace deviates from 1 by {trace_dev:.3e} (tolerance {tol:.0e}); enlarge the half-range to about {suggested_half_range:.3}")]
    GridInsufficient {
        trace_dev: f64,
        tol: f64,
        suggested_half_range: f64,
    },

    #[error("quantum number too large: {name} = {value} exceeds the supported ceiling {max} of the stable recurrence at desk-scale runtimes")]
    QuantumNumberTooLarge {
        name: &'static str,
        value: u32,
        max: u32,
    },

    #[error("spectrum negative beyond discretization tolerance: min eigenvalue {min:.3e} < -1e-8")]
    SpectrumNegative { min: f64 },

    #[error("out of regime: {0}")]
    OutOfRegime(String),

    #[error("quadrature did not converge: error estimate {achieved:.3e} above target {target:.3e}")]
    QuadratureNotConverged { achieved: f64, target: f64 },

    #[error("cache: {0}")]
    Cache(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, OscillentError>;
