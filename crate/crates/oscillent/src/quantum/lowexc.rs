//! Two-level entropy estimate for states where the slow mode holds only a
//! moderate number of quanta while the fast mode is highly excited.

use crate::error::{OscillentError, Result};
use crate::model::{ModelParams, StateSpec};
use crate::quantum::ground::binary_entropy;
use serde::{Deserialize, Serialize};

/// Two-level estimate of the entanglement entropy, with the perturbative
/// coefficients that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowExcitationResult {
    pub entropy: f64,
    /// Weight `F` of the displaced component; the estimate is the binary
    /// entropy of `F`.
    pub mixing_weight: f64,
    /// Off-diagonal pumping coefficient `A`.
    pub a_coefficient: f64,
    /// Level-shift coefficient `B = 2 A`.
    pub b_coefficient: f64,
    /// Squared frequency ratio `zeta^2` that converts `B` into `F`.
    pub zeta_sq: f64,
}

/// Entropy of a low/high product state from the two-level mixing weight
///
/// ```text
/// F = B / zeta^2 = C^2 E1 E2 / (hbar^2 omega^2 Omega^4).
/// ```
///
/// Errors when `F >= 0.5`: past equal mixing the two-level picture has no
/// meaning.
pub fn low_excitation_entropy(
    state: &StateSpec,
    params: &ModelParams,
) -> Result<LowExcitationResult> {
    if state.e1 <= 0.0 || state.e2 <= 0.0 {
        return Err(OscillentError::InvalidParams(
            "mode energies must be positive".into(),
        ));
    }
    let big_sq = params.big_omega * params.big_omega;
    let scale = params.coupling / (params.hbar * big_sq);
    let a = 0.5 * scale * scale * state.e2 / 2.0f64.sqrt();
    let b = 2.0 * a;
    let zeta_sq = params.omega * params.omega / (2.0f64.sqrt() * state.e1);
    let f = b / zeta_sq;
    if f >= 0.5 {
        return Err(OscillentError::OutOfRegime(format!(
            "two-level mixing weight F = {f:.3} is not small; the estimate is meaningless at or past equal mixing"
        )));
    }
    Ok(LowExcitationResult {
        entropy: binary_entropy(f),
        mixing_weight: f,
        a_coefficient: a,
        b_coefficient: b,
        zeta_sq,
    })
}
