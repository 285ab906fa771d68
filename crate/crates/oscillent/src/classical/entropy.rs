//! Boltzmann entropy `S = -int W ln(W Delta) dx dpx` of the reduced
//! distribution: closed form and deterministic quadrature.

use crate::error::{OscillentError, Result};
use crate::model::{ModelParams, StateSpec};
use crate::quad::{chebyshev_gauss_nodes, tanh_sinh};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Which route produced an entropy estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyMethod {
    ClosedForm,
    Quadrature,
    TorusMc,
    Trajectory,
}

impl EntropyMethod {
    pub fn label(&self) -> &'static str {
        match self {
            EntropyMethod::ClosedForm => "closed_form",
            EntropyMethod::Quadrature => "quadrature",
            EntropyMethod::TorusMc => "torus_mc",
            EntropyMethod::Trajectory => "trajectory",
        }
    }
}

/// Bookkeeping attached to an entropy estimate.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EntropyMetadata {
    /// Sample count for stochastic estimators.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    /// Neighbor order of the nearest-neighbor estimator.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_neighbors: Option<usize>,
    /// RNG seed for stochastic estimators.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Radial node count for quadrature.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radial_nodes: Option<usize>,
    /// Tanh-sinh refinement level for quadrature.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angular_level: Option<u32>,
    /// Non-fatal diagnostics (negative entropy, regime warnings, ...).
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

/// An entropy value in nats, with provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyResult {
    pub value: f64,
    pub method: EntropyMethod,
    /// Standard error (stochastic) or achieved error estimate (quadrature).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncertainty: Option<f64>,
    pub metadata: EntropyMetadata,
}

/// Closed-form entropy of the order-C band distribution,
///
/// ```text
/// S(Delta) = ln[ pi^2 C sqrt(E1 E2) / (Delta omega Omega^2) ],
/// ```
///
/// which at the default cell `Delta = pi hbar` reduces to
/// `ln[ pi C sqrt(E1 E2) / (hbar omega Omega^2) ]`. A negative result is
/// reported with a warning rather than an error.
pub fn classical_entropy_closed_form(
    state: &StateSpec,
    params: &ModelParams,
) -> Result<EntropyResult> {
    if params.coupling <= 0.0 {
        return Err(OscillentError::UndefinedEntropy(format!(
            "closed form needs C > 0, got C = {}",
            params.coupling
        )));
    }
    if state.e1 <= 0.0 || state.e2 <= 0.0 {
        return Err(OscillentError::UndefinedEntropy(format!(
            "closed form needs positive mode energies, got E1 = {}, E2 = {}",
            state.e1, state.e2
        )));
    }
    let value = closed_form_value(state, params);
    let mut metadata = EntropyMetadata::default();
    if value < 0.0 {
        metadata.warnings.push(format!(
            "entropy is negative ({value:.4}); the occupied band is smaller than one phase cell"
        ));
    }
    Ok(EntropyResult {
        value,
        method: EntropyMethod::ClosedForm,
        uncertainty: None,
        metadata,
    })
}

pub(crate) fn closed_form_value(state: &StateSpec, params: &ModelParams) -> f64 {
    (PI * PI * params.coupling * (state.e1 * state.e2).sqrt()
        / (params.delta_cell * params.omega * params.big_omega * params.big_omega))
        .ln()
}

/// Entropy of the band distribution by quadrature in the band coordinates
/// `(theta, y)`: a Chebyshev-Gauss rule absorbs the `1/sqrt(1 - y^2)`
/// edge profile (the residual `-ln sqrt(1 - y^2)` factor is subtracted at
/// the nodes and restored with its known arcsine average `pi ln 2`), and a
/// tanh-sinh rule in the angle handles the `ln|cos theta|` endpoint.
///
/// The error estimate is the change under dropping to half the radial
/// nodes and one refinement level; if it exceeds `target_error` the result
/// is rejected as non-convergent.
pub fn classical_entropy_quadrature(
    state: &StateSpec,
    params: &ModelParams,
) -> Result<EntropyResult> {
    classical_entropy_quadrature_with(state, params, 64, 7, 1e-3)
}

/// Quadrature entropy with explicit resolution controls.
pub fn classical_entropy_quadrature_with(
    state: &StateSpec,
    params: &ModelParams,
    radial_nodes: usize,
    level: u32,
    target_error: f64,
) -> Result<EntropyResult> {
    if params.coupling <= 0.0 || state.e1 <= 0.0 || state.e2 <= 0.0 {
        return Err(OscillentError::UndefinedEntropy(
            "band quadrature needs C > 0 and positive mode energies".into(),
        ));
    }
    let fine = band_entropy_pass(state, params, radial_nodes, level);
    let coarse = band_entropy_pass(state, params, (radial_nodes / 2).max(4), level.saturating_sub(1));
    let achieved = (fine - coarse).abs();
    if achieved > target_error {
        return Err(OscillentError::QuadratureNotConverged {
            achieved,
            target: target_error,
        });
    }
    Ok(EntropyResult {
        value: fine,
        method: EntropyMethod::Quadrature,
        uncertainty: Some(achieved),
        metadata: EntropyMetadata {
            radial_nodes: Some(radial_nodes),
            angular_level: Some(level),
            ..Default::default()
        },
    })
}

fn band_entropy_pass(state: &StateSpec, params: &ModelParams, m: usize, level: u32) -> f64 {
    let w = params.omega;
    let big2 = params.big_omega * params.big_omega;
    let delta = params.delta_cell;
    let a0 = 4.0 * params.coupling * (state.e1 * state.e2).sqrt() / big2;
    let nodes = chebyshev_gauss_nodes(m);
    let inner = |theta: f64| {
        let a = a0 * theta.cos().abs();
        let mut acc = 0.0;
        for &y in &nodes {
            // ln(W Delta) at the node, with W = omega / (pi^2 A sqrt(1 - y^2));
            // the singular -0.5 ln(1 - y^2) part is subtracted here and its
            // arcsine average pi ln 2 is restored below.
            let singular = -0.5 * (1.0 - y * y).ln();
            let ln_w_delta = (w * delta / (PI * PI * a)).ln() + singular;
            acc += ln_w_delta - singular;
        }
        (PI / m as f64) * acc + PI * 2.0f64.ln()
    };
    -(2.0 / (PI * PI)) * tanh_sinh(inner, 0.0, PI / 2.0, level)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> (ModelParams, StateSpec) {
        let params = ModelParams::new(1.0, 10.0f64.sqrt(), 0.3).unwrap();
        let state = StateSpec::from_energies(20.0, 200.0, &params).unwrap();
        (params, state)
    }

    #[test]
    fn closed_form_reference_value() {
        let (params, state) = reference();
        let s = classical_entropy_closed_form(&state, &params).unwrap();
        assert!((s.value - 1.7851968085804322).abs() < 1e-14);
        assert!(s.metadata.warnings.is_empty());
    }

    #[test]
    fn closed_form_zero_at_unit_argument() {
        // C tuned so the entropy argument is exactly one
        let e1: f64 = 20.0;
        let e2: f64 = 200.0;
        let big2: f64 = 10.0;
        let c = big2 / (PI * (e1 * e2).sqrt());
        let params = ModelParams::new(1.0, big2.sqrt(), c).unwrap();
        let state = StateSpec::from_energies(e1, e2, &params).unwrap();
        let s = classical_entropy_closed_form(&state, &params).unwrap();
        assert!(s.value.abs() < 1e-12);
    }

    #[test]
    fn closed_form_negative_warns() {
        let params = ModelParams::new(1.0, 10.0f64.sqrt(), 0.01).unwrap();
        let state = StateSpec::from_energies(2.0, 20.0, &params).unwrap();
        let s = classical_entropy_closed_form(&state, &params).unwrap();
        assert!(s.value < 0.0);
        assert!(!s.metadata.warnings.is_empty());
    }

    #[test]
    fn closed_form_rejects_nonpositive_coupling() {
        let params = ModelParams::new(1.0, 10.0f64.sqrt(), 0.0).unwrap();
        let state = StateSpec::from_energies(20.0, 200.0, &params).unwrap();
        assert!(matches!(
            classical_entropy_closed_form(&state, &params),
            Err(OscillentError::UndefinedEntropy(_))
        ));
    }

    #[test]
    fn doubling_coupling_adds_ln_two() {
        let (params, state) = reference();
        let doubled = ModelParams::new(1.0, 10.0f64.sqrt(), 0.6).unwrap();
        let s1 = classical_entropy_closed_form(&state, &params).unwrap();
        let s2 = classical_entropy_closed_form(&state, &doubled).unwrap();
        assert!((s2.value - s1.value - 2.0f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn cell_rescaling_shifts_exactly() {
        let (params, state) = reference();
        let rescaled = params.with_delta_cell(params.delta_cell * 3.7).unwrap();
        let s1 = classical_entropy_closed_form(&state, &params).unwrap();
        let s2 = classical_entropy_closed_form(&state, &rescaled).unwrap();
        assert!((s1.value - s2.value - 3.7f64.ln()).abs() < 1e-14);
        let q1 = classical_entropy_quadrature(&state, &params).unwrap();
        let q2 = classical_entropy_quadrature(&state, &rescaled).unwrap();
        assert!((q1.value - q2.value - 3.7f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let (params, state) = reference();
        let s = classical_entropy_closed_form(&state, &params).unwrap();
        let q = classical_entropy_quadrature(&state, &params).unwrap();
        assert!(
            (q.value - s.value).abs() < 1e-9,
            "quadrature {} vs closed {}",
            q.value,
            s.value
        );
        assert!(q.uncertainty.unwrap() < 1e-9);
    }

    #[test]
    fn quadrature_energy_scaling_adds_ln_lambda() {
        let (params, state) = reference();
        for lambda in [2.0, 10.0] {
            let scaled =
                StateSpec::from_energies(state.e1 * lambda, state.e2 * lambda, &params).unwrap();
            let s1 = classical_entropy_quadrature(&state, &params).unwrap();
            let s2 = classical_entropy_quadrature(&scaled, &params).unwrap();
            assert!((s2.value - s1.value - lambda.ln()).abs() < 1e-9);
        }
    }
}
