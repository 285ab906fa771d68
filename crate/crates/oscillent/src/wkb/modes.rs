//! Paired semiclassical Schmidt modes: combinations of the level
//! wavefunctions at quantum numbers `n - dn` and `n + dn` whose
//! trigonometric structure follows the parity of `n`.

use crate::error::{OscillentError, Result};
use crate::wkb::action::{Parity, WkbState};
use serde::{Deserialize, Serialize};

/// Which of the two degenerate combinations at a given offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// The same-phase sum; survives as the offset goes to zero.
    First,
    /// The opposed-phase difference; vanishes as the offset goes to
    /// zero.
    Second,
}

/// One Schmidt mode of the reduced state, evaluatable on the slow
/// coordinate. Zero outside the turning points of its components.
#[derive(Debug, Clone)]
pub struct SchmidtMode {
    pub ws: WkbState,
    pub dn: f64,
    pub branch: Branch,
}

const AMP_FLOOR: f64 = 1e-300;

/// Builds the Schmidt mode at level offset `dn` on the given slow-mode
/// level. The offset must lie strictly inside `(0, n)` so both shifted
/// levels exist.
pub fn schmidt_modes(ws: &WkbState, dn: f64, branch: Branch) -> Result<SchmidtMode> {
    if !(dn.is_finite() && dn > 0.0 && dn < ws.n as f64) {
        return Err(OscillentError::SchmidtOffsetOutOfRange { dn, n: ws.n });
    }
    Ok(SchmidtMode {
        ws: ws.clone(),
        dn,
        branch,
    })
}

/// Phase and amplitude of one shifted-level component at `x`: the
/// abbreviated action over `hbar` and the dwell envelope
/// `1 / sqrt(T p)`, hard zero beyond the component's turning point.
fn component(nu: f64, x: f64, omega: f64, hbar: f64, period: f64) -> (f64, f64) {
    let energy = nu * hbar * omega;
    let x_turn = (2.0 * energy).sqrt() / omega;
    let theta = (x / x_turn).clamp(-1.0, 1.0).asin();
    let phase = energy / omega * (theta + 0.5 * (2.0 * theta).sin()) / hbar;
    if x.abs() >= x_turn {
        return (phase, 0.0);
    }
    let p = (2.0 * energy - omega * omega * x * x).max(0.0).sqrt();
    (phase, 1.0 / (period * p).max(AMP_FLOOR).sqrt())
}

impl SchmidtMode {
    pub fn evaluate(&self, x: f64) -> f64 {
        let (omega, hbar, period) = (self.ws.omega, self.ws.hbar, self.ws.period);
        let n = self.ws.n as f64;
        let (s1, a1) = component(n + self.dn, x, omega, hbar, period);
        let (s2, a2) = component(n - self.dn, x, omega, hbar, period);
        match (self.ws.parity, self.branch) {
            (Parity::Odd, Branch::First) => a1 * s1.sin() + a2 * s2.sin(),
            (Parity::Odd, Branch::Second) => a1 * s1.cos() - a2 * s2.cos(),
            (Parity::Even, Branch::First) => a1 * s1.cos() + a2 * s2.cos(),
            (Parity::Even, Branch::Second) => a1 * s1.sin() - a2 * s2.sin(),
        }
    }

    /// Turning point of the outer (higher) component; the mode is zero
    /// beyond it.
    pub fn outer_turn(&self) -> f64 {
        (2.0 * (self.ws.n as f64 + self.dn) * self.ws.hbar * self.ws.omega).sqrt() / self.ws.omega
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sampled(mode: &SchmidtMode, xs: &[f64]) -> Vec<f64> {
        xs.iter().map(|&x| mode.evaluate(x)).collect()
    }

    fn trapezoid_dot(w: &[f64], a: &[f64], b: &[f64]) -> f64 {
        w.iter()
            .zip(a.iter().zip(b))
            .map(|(w, (a, b))| w * a * b)
            .sum()
    }

    fn gram_fixture() -> (Vec<f64>, Vec<Vec<f64>>) {
        let ws = WkbState::new(20, 1.0, 1.0).unwrap();
        let x_turn = (2.0 * 20.0f64).sqrt();
        let m = 2001usize;
        let dx = 1.8 * x_turn / (m - 1) as f64;
        let xs: Vec<f64> = (0..m).map(|i| -0.9 * x_turn + i as f64 * dx).collect();
        let mut weights = vec![dx; m];
        weights[0] *= 0.5;
        weights[m - 1] *= 0.5;
        let mut modes = Vec::new();
        for dn in [0.5, 1.5, 2.5] {
            for branch in [Branch::First, Branch::Second] {
                modes.push(sampled(&schmidt_modes(&ws, dn, branch).unwrap(), &xs));
            }
        }
        (weights, modes)
    }

    #[test]
    fn window_norms_frozen() {
        let (w, modes) = gram_fixture();
        let frozen = [
            0.6207763046629292,
            0.06049544259715893,
            0.3354277581130791,
            0.3528813895844367,
            0.2959713703365494,
            0.4092181786932519,
        ];
        for (mode, expected) in modes.iter().zip(frozen) {
            assert_relative_eq!(trapezoid_dot(&w, mode, mode), expected, epsilon = 1e-9);
        }
    }

    #[test]
    fn gram_overlaps_frozen_and_branches_orthogonal() {
        let (w, modes) = gram_fixture();
        let entry = |i: usize, j: usize| {
            trapezoid_dot(&w, &modes[i], &modes[j])
                / (trapezoid_dot(&w, &modes[i], &modes[i])
                    * trapezoid_dot(&w, &modes[j], &modes[j]))
                    .sqrt()
        };
        let first = [(0, 2, 0.9123602142275736), (2, 4, 0.6443054966185553), (0, 4, 0.2848928738955054)];
        let second = [(1, 3, 0.9923559075246705), (3, 5, 0.9519463309967343), (1, 5, 0.9083863187126795)];
        for (i, j, expected) in first.into_iter().chain(second) {
            assert_relative_eq!(entry(i, j), expected, epsilon = 1e-9);
        }
        for i in [0, 2, 4] {
            for j in [1, 3, 5] {
                assert!(entry(i, j).abs() < 1e-12, "cross-branch ({i},{j})");
            }
        }
    }

    #[test]
    fn second_branch_vanishes_with_offset() {
        let ws = WkbState::new(20, 1.0, 1.0).unwrap();
        let b1 = schmidt_modes(&ws, 1e-6, Branch::First).unwrap();
        let b2 = schmidt_modes(&ws, 1e-6, Branch::Second).unwrap();
        let xs: Vec<f64> = (0..801).map(|i| -4.0 + i as f64 * 0.01).collect();
        let norm = |m: &SchmidtMode| -> f64 { xs.iter().map(|&x| m.evaluate(x).powi(2)).sum() };
        assert!(norm(&b2) < 1e-8 * norm(&b1));
    }

    #[test]
    fn parity_structure_follows_n() {
        let even = WkbState::new(20, 1.0, 1.0).unwrap();
        let odd = WkbState::new(21, 1.0, 1.0).unwrap();
        let x = 2.7;
        for (ws, b1_sign, b2_sign) in [(even, 1.0, -1.0), (odd, -1.0, 1.0)] {
            let b1 = schmidt_modes(&ws, 1.5, Branch::First).unwrap();
            let b2 = schmidt_modes(&ws, 1.5, Branch::Second).unwrap();
            assert_relative_eq!(b1.evaluate(-x), b1_sign * b1.evaluate(x), epsilon = 1e-13);
            assert_relative_eq!(b2.evaluate(-x), b2_sign * b2.evaluate(x), epsilon = 1e-13);
        }
    }

    #[test]
    fn zero_beyond_outer_turning_point_and_offset_validated() {
        let ws = WkbState::new(20, 1.0, 1.0).unwrap();
        let mode = schmidt_modes(&ws, 2.5, Branch::First).unwrap();
        assert_eq!(mode.evaluate(1.001 * mode.outer_turn()), 0.0);
        for dn in [0.0, -1.0, 20.0, 25.0, f64::NAN] {
            assert!(matches!(
                schmidt_modes(&ws, dn, Branch::First),
                Err(OscillentError::SchmidtOffsetOutOfRange { .. })
            ));
        }
    }
}
