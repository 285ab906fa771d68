//! The semiclassical Schmidt spectrum: an arcsine density of width
//! `dn_max` in the level-offset variable, and its closed-form entropy.

use crate::classical::classical_entropy_closed_form;
use crate::error::{OscillentError, Result};
use crate::model::{validate_regime, ModelParams, StateSpec};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Number of Chebyshev nodes in the entropy quadrature; the plain sum
/// converges like `ln 2 / m`, so this count lands below `1e-6`.
const QUADRATURE_NODES: usize = 1 << 20;

/// Arcsine density of Schmidt weight over the level offset, supported on
/// `(-dn_max, dn_max)` with each offset carrying a two-fold branch
/// degeneracy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaSpectrum {
    /// Half-width `2 C sqrt(E1 E2) / (hbar omega Omega^2)` of the band
    /// of level offsets carrying Schmidt weight.
    pub dn_max: f64,
    pub warnings: Vec<String>,
}

impl LambdaSpectrum {
    /// `lambda(dn) = 1 / (pi sqrt(dn_max^2 - dn^2))`, zero outside the
    /// band. Together with the branch degeneracy this integrates to one.
    pub fn density(&self, dn: f64) -> f64 {
        if dn.abs() >= self.dn_max {
            return 0.0;
        }
        1.0 / (PI * (self.dn_max * self.dn_max - dn * dn).sqrt())
    }

    /// Samples `(dn, lambda)` pairs on a uniform grid over the open
    /// band, for export.
    pub fn sampled(&self, count: usize) -> Vec<(f64, f64)> {
        (0..count)
            .map(|i| {
                let dn = self.dn_max * (i as f64 + 0.5) / count as f64;
                (dn, self.density(dn))
            })
            .collect()
    }
}

/// Closed-form and quadrature views of the semiclassical entanglement
/// entropy `ln(pi dn_max / 2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WkbEntropy {
    /// Closed form `ln(pi dn_max / 2)`.
    pub value: f64,
    /// The same quantity by Chebyshev quadrature of `-2 int lambda ln
    /// lambda`; agrees with `value` to about `1e-6`.
    pub quadrature: f64,
    pub dn_max: f64,
    pub warnings: Vec<String>,
}

fn bandwidth(state: &StateSpec, params: &ModelParams) -> Result<f64> {
    if params.coupling <= 0.0 {
        return Err(OscillentError::UndefinedEntropy(format!(
            "the Schmidt band has zero width for C = {}; entanglement entropy diverges to -inf",
            params.coupling
        )));
    }
    Ok(2.0 * params.coupling * (state.e1 * state.e2).sqrt()
        / (params.hbar * params.omega * params.big_omega * params.big_omega))
}

fn regime_warnings(state: &StateSpec, params: &ModelParams, dn_max: f64) -> Vec<String> {
    let mut warnings: Vec<String> = validate_regime(params, state)
        .violations()
        .into_iter()
        .map(|v| format!("outside the semiclassical regime: {v}"))
        .collect();
    if dn_max < 1.0 {
        warnings.push(format!(
            "fewer than one Schmidt mode in the band (dn_max = {dn_max:.3}); \
             the semiclassical spectrum is meaningless here"
        ));
    }
    warnings
}

/// Builds the arcsine Schmidt density for the given eigenstate. Warns
/// rather than fails when the band holds less than one mode or the
/// regime checks trip.
pub fn lambda_spectrum(state: &StateSpec, params: &ModelParams) -> Result<LambdaSpectrum> {
    let dn_max = bandwidth(state, params)?;
    Ok(LambdaSpectrum {
        dn_max,
        warnings: regime_warnings(state, params, dn_max),
    })
}

/// Entanglement entropy of the arcsine Schmidt spectrum, in closed form
/// and by quadrature.
pub fn wkb_entropy(state: &StateSpec, params: &ModelParams) -> Result<WkbEntropy> {
    let dn_max = bandwidth(state, params)?;
    let closed = (PI * dn_max / 2.0).ln();

    let m = QUADRATURE_NODES;
    let mut log_sum = 0.0;
    for j in 1..=m {
        let y = ((2 * j - 1) as f64 * PI / (2.0 * m as f64)).cos();
        log_sum += (-y * y).ln_1p();
    }
    let quadrature = (PI * dn_max).ln() + log_sum / (2.0 * m as f64);

    Ok(WkbEntropy {
        value: closed,
        quadrature,
        dn_max,
        warnings: regime_warnings(state, params, dn_max),
    })
}

/// The semiclassical entropy restated as the classical coarse-grained
/// entropy at cell size `pi hbar`; the two expressions are identical.
pub fn wkb_entropy_matches_classical(state: &StateSpec, params: &ModelParams) -> Result<f64> {
    let wkb = wkb_entropy(state, params)?;
    let half_cell = params.clone().with_delta_cell(PI * params.hbar)?;
    let classical = classical_entropy_closed_form(state, &half_cell)?;
    Ok((wkb.value - classical.value).abs())
}
