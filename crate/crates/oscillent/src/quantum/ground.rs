//! Ground-state entanglement: the perturbative small-coupling formula and
//! the exact Gaussian-state result.

use crate::error::Result;
use crate::model::{normal_modes, ModelParams};
use serde::{Deserialize, Serialize};

/// Small-coupling ground-state entropy and its mixing fraction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundStateEntropy {
    pub value: f64,
    /// Perturbative weight `f = C^2 / (4 omega Omega^3)` of the doubly
    /// excited admixture.
    pub mixing_fraction: f64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

/// Exact ground-state entanglement data for the Gaussian ground state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundStateExact {
    /// Symplectic eigenvalue of the reduced covariance matrix; one for a
    /// pure reduced state.
    pub nu: f64,
    /// Geometric ratio of consecutive Schmidt probabilities,
    /// `(nu - 1) / (nu + 1)`.
    pub pair_weight: f64,
    pub entropy: f64,
}

/// Perturbative ground-state entropy: the two-level entropy of the mixing
/// fraction `f = C^2 / (4 omega Omega^3)`. Outside its regime (`f > 0.1`)
/// the value is still returned, with a warning attached.
pub fn ground_state_entropy_small_c(params: &ModelParams) -> Result<GroundStateEntropy> {
    let f = params.coupling * params.coupling
        / (4.0 * params.omega * params.big_omega.powi(3));
    let mut warnings = Vec::new();
    if f > 0.1 {
        warnings.push(format!(
            "mixing fraction f = {f:.4} exceeds 0.1; the perturbative formula is outside its regime"
        ));
    }
    Ok(GroundStateEntropy {
        value: binary_entropy(f),
        mixing_fraction: f,
        warnings,
    })
}

/// Exact entanglement entropy of the Gaussian ground state, from the
/// symplectic eigenvalue of the reduced covariance matrix.
pub fn ground_state_exact(params: &ModelParams) -> Result<GroundStateExact> {
    let nm = normal_modes(params)?;
    let (w1, w2) = (nm.omega1, nm.omega2);
    let ab = nm.alpha * nm.beta;
    let nu = (1.0 + ab * ab * (w2 - w1) * (w2 - w1) / (w1 * w2)).sqrt();
    let plus = 0.5 * (nu + 1.0);
    let minus = 0.5 * (nu - 1.0);
    let entropy = if minus > 0.0 {
        plus * plus.ln() - minus * minus.ln()
    } else {
        0.0
    };
    Ok(GroundStateExact {
        nu,
        pair_weight: if nu > 1.0 { minus / plus } else { 0.0 },
        entropy,
    })
}

/// `-f ln f - (1 - f) ln(1 - f)`, with the `f = 0` limit taken.
pub fn binary_entropy(f: f64) -> f64 {
    let mut s = 0.0;
    if f > 0.0 {
        s -= f * f.ln();
    }
    if f < 1.0 {
        s -= (1.0 - f) * (1.0 - f).ln();
    }
    s
}
