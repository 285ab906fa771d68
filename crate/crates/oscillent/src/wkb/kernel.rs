//! Semiclassical assembly of the reduced density matrix: Chebyshev-
//! sampled level offsets, each contributing its pair of Schmidt modes
//! at the half-quantum-corrected energies.

use crate::error::{OscillentError, Result};
use crate::model::{ModelParams, StateSpec};
use crate::quantum::{Grid, ReducedDensityMatrix};
use nalgebra::DMatrix;
use std::f64::consts::PI;

/// Default number of Chebyshev offset nodes in the band.
pub const DEFAULT_OFFSETS: usize = 800;

/// Fractional pullback from each component's turning point beyond which
/// its amplitude is zeroed; keeps the envelope finite on nodes that sit
/// on a turning point.
const TURN_CLIP: f64 = 0.999999;

const AMP_FLOOR: f64 = 1e-300;

/// Trace deviation beyond which the grid clearly cannot hold the band.
const TRACE_GUARD: f64 = 0.25;

/// Assembles the semiclassical reduced density matrix on `grid` with
/// the default offset count.
pub fn wkb_reduced_density(
    state: &StateSpec,
    params: &ModelParams,
    grid: &Grid,
) -> Result<ReducedDensityMatrix> {
    wkb_reduced_density_with(state, params, grid, DEFAULT_OFFSETS)
}

/// Assembles the semiclassical reduced density matrix on `grid`,
/// integrating the arcsine offset density with `offsets` Chebyshev
/// nodes. Component levels carry the half-quantum correction, matching
/// the node pattern of the exact kernel.
pub fn wkb_reduced_density_with(
    state: &StateSpec,
    params: &ModelParams,
    grid: &Grid,
    offsets: usize,
) -> Result<ReducedDensityMatrix> {
    if offsets < 8 {
        return Err(OscillentError::InvalidParams(format!(
            "offset quadrature needs at least 8 nodes, got {offsets}"
        )));
    }
    let omega = params.omega;
    let hbar = params.hbar;
    let dn_max = 2.0 * params.coupling * (state.e1 * state.e2).sqrt()
        / (hbar * omega * params.big_omega * params.big_omega);
    let n = state.n as f64;
    if dn_max.abs() >= n {
        return Err(OscillentError::OutOfRegime(format!(
            "Schmidt band half-width {dn_max:.3} reaches below the bottom of the slow-mode \
             ladder at n = {n}; the semiclassical assembly needs dn_max < n"
        )));
    }
    let period = 2.0 * PI / omega;
    let odd = state.n % 2 == 1;
    let nx = grid.len();

    let mut kernel = DMatrix::zeros(nx, nx);
    let mut f1 = vec![0.0f64; nx];
    let mut f2 = vec![0.0f64; nx];
    let inv_m = 1.0 / offsets as f64;
    for j in 0..offsets {
        let angle = (j as f64 + 0.5) * PI / offsets as f64;
        let d = (dn_max * angle.cos()).abs();
        let mut parts = [[0.0f64; 2]; 2];
        for (i, &x) in grid.nodes.iter().enumerate() {
            for (c, sign) in [1.0f64, -1.0].into_iter().enumerate() {
                let nu = n + sign * d;
                let energy = (nu + 0.5) * hbar * omega;
                let x_turn = (2.0 * energy).sqrt() / omega;
                let theta = (x / x_turn).clamp(-1.0, 1.0).asin();
                let phase = energy / omega * (theta + 0.5 * (2.0 * theta).sin()) / hbar;
                let amp = if x.abs() < x_turn * TURN_CLIP {
                    let p = (2.0 * energy - omega * omega * x * x).max(0.0).sqrt();
                    1.0 / (period * p).max(AMP_FLOOR).sqrt()
                } else {
                    0.0
                };
                parts[c] = [phase, amp];
            }
            let [[s1, a1], [s2, a2]] = parts;
            if odd {
                f1[i] = a1 * s1.sin() + a2 * s2.sin();
                f2[i] = a1 * s1.cos() - a2 * s2.cos();
            } else {
                f1[i] = a1 * s1.cos() + a2 * s2.cos();
                f2[i] = a1 * s1.sin() - a2 * s2.sin();
            }
        }
        for row in 0..nx {
            for col in 0..nx {
                kernel[(row, col)] += inv_m * (f1[row] * f1[col] + f2[row] * f2[col]);
            }
        }
    }

    let rdm = ReducedDensityMatrix {
        kernel,
        grid: grid.clone(),
        state: state.clone(),
    };
    let dev = (rdm.trace() - 1.0).abs();
    if dev > TRACE_GUARD {
        return Err(OscillentError::GridInsufficient {
            trace_dev: dev,
            tol: TRACE_GUARD,
            suggested_half_range: 1.3 * grid.half_range,
        });
    }
    Ok(rdm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::normal_modes;
    use crate::quantum::reduced_density_kernel;
    use crate::wkb::spectrum::wkb_entropy;
    use approx::assert_relative_eq;

    fn reference() -> (StateSpec, ModelParams, Grid) {
        let params = ModelParams::new(1.0, 10.0f64.sqrt(), 0.3).unwrap();
        let state = StateSpec::from_quanta(20, 63, &params).unwrap();
        let nm = normal_modes(&params).unwrap();
        let grid = Grid::for_mode(20, nm.omega1, params.hbar).unwrap();
        (state, params, grid)
    }

    #[test]
    fn reference_assembly_frozen() {
        let (state, params, grid) = reference();
        let rdm = wkb_reduced_density(&state, &params, &grid).unwrap();
        let spectrum = rdm.schmidt_spectrum().unwrap();

        assert_relative_eq!(rdm.trace(), 1.023934923854497, epsilon = 1e-7);
        assert_relative_eq!(spectrum.entropy, 1.863057708624243, epsilon = 1e-7);
        let top = [
            2.822774103209788e-1,
            2.554837958057687e-1,
            1.809234273567891e-1,
            1.499039313342262e-1,
            8.213024039610053e-2,
            2.298655082958834e-2,
            1.002915168274402e-2,
            8.742812969935903e-3,
        ];
        for (got, expected) in spectrum.probabilities.iter().zip(top) {
            assert_relative_eq!(*got, expected, epsilon = 1e-7);
        }

        let closed = wkb_entropy(&state, &params).unwrap();
        assert_relative_eq!(closed.dn_max, 3.840904041431044, epsilon = 1e-10);
        assert!((spectrum.entropy - closed.value).abs() <= 0.1);
    }

    #[test]
    fn interior_agreement_with_exact_kernel() {
        let (state, params, grid) = reference();
        let wkb = wkb_reduced_density(&state, &params, &grid).unwrap();
        let exact = reduced_density_kernel(&state, &params, &grid).unwrap();

        let nm = normal_modes(&params).unwrap();
        let x_turn = (2.0 * state.e1).sqrt() / nm.omega1;
        let window: Vec<usize> = (0..grid.len())
            .filter(|&i| grid.nodes[i].abs() <= 0.9 * x_turn)
            .collect();
        let peak = exact
            .kernel
            .iter()
            .fold(0.0f64, |acc, v| acc.max(v.abs()));
        let mut worst = 0.0f64;
        for &i in &window {
            for &j in &window {
                worst = worst.max((wkb.kernel[(i, j)] - exact.kernel[(i, j)]).abs());
            }
        }
        let rel = worst / peak;
        assert_relative_eq!(rel, 0.2635165195755962, epsilon = 1e-6);
        assert!(
            (0.15..=0.40).contains(&rel),
            "interior agreement drifted out of its known band: {rel}"
        );
    }

    #[test]
    fn collapses_to_rank_one_without_coupling() {
        let params = ModelParams::new(1.0, 10.0f64.sqrt(), 0.0).unwrap();
        let state = StateSpec::from_quanta(20, 63, &params).unwrap();
        let grid = Grid::for_mode(20, 1.0, 1.0).unwrap();
        let spectrum = wkb_reduced_density(&state, &params, &grid)
            .unwrap()
            .schmidt_spectrum()
            .unwrap();
        assert_relative_eq!(spectrum.probabilities[0], 1.009342612236654, epsilon = 1e-7);
        assert!(spectrum.probabilities.get(1).copied().unwrap_or(0.0) < 1e-12);
        assert_eq!(spectrum.occupied, 1);
    }

    #[test]
    fn offset_refinement_stays_in_band() {
        let (state, params, grid) = reference();
        let coarse = wkb_reduced_density_with(&state, &params, &grid, 800)
            .unwrap()
            .schmidt_spectrum()
            .unwrap()
            .entropy;
        let fine = wkb_reduced_density_with(&state, &params, &grid, 1600)
            .unwrap()
            .schmidt_spectrum()
            .unwrap()
            .entropy;
        assert!((fine - coarse).abs() < 0.05);
        let closed = wkb_entropy(&state, &params).unwrap().value;
        assert!((fine - closed).abs() <= 0.1);
    }

    #[test]
    fn vanishes_beyond_the_band_and_validates_inputs() {
        let (state, params, grid) = reference();
        let rdm = wkb_reduced_density(&state, &params, &grid).unwrap();
        let outer = (2.0 * (state.n as f64 + 3.840904041431044 + 0.5)).sqrt();
        for (i, &x) in grid.nodes.iter().enumerate() {
            if x.abs() > outer {
                for j in 0..grid.len() {
                    assert_eq!(rdm.kernel[(i, j)], 0.0);
                }
            }
        }
        assert!(wkb_reduced_density_with(&state, &params, &grid, 4).is_err());

        let narrow = Grid::uniform(2.0, 61);
        assert!(matches!(
            wkb_reduced_density(&state, &params, &narrow),
            Err(OscillentError::GridInsufficient { .. })
        ));
    }
}
