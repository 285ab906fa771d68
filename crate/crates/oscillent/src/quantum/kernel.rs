//! The reduced density kernel `rho(x, x') = int psi(x, y) psi(x', y) dy`
//! and its Schmidt spectrum.

use crate::error::{OscillentError, Result};
use crate::model::{normal_modes, ModelParams, StateSpec};
use crate::quantum::grid::Grid;
use crate::quantum::wavefunction::EigenstateWavefunction;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

const TRACE_TOL: f64 = 1e-4;
const NEGATIVE_FLOOR: f64 = -1e-8;
const ENTROPY_CUTOFF: f64 = 1e-14;

/// The reduced density kernel sampled on a grid, together with the grid
/// that carries its quadrature weights.
#[derive(Debug, Clone)]
pub struct ReducedDensityMatrix {
    pub kernel: DMatrix<f64>,
    pub grid: Grid,
    pub state: StateSpec,
}

/// Eigenvalues of the reduced density operator, sorted descending, with
/// the quantities derived from them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchmidtSpectrum {
    pub probabilities: Vec<f64>,
    pub entropy: f64,
    /// Number of eigenvalues within a factor of ten of the largest.
    pub occupied: usize,
    /// Largest eigenvalue over the median of those above 5% of it; near
    /// one for a flat-topped spectrum.
    pub flatness: f64,
}

/// Builds the reduced kernel of the eigenstate on `grid_x` by integrating
/// out the fast coordinate on a grid sized from the fast mode. Fails with
/// a grid-insufficiency report when the trace is off by more than
/// `1e-4`.
pub fn reduced_density_kernel(
    state: &StateSpec,
    params: &ModelParams,
    grid_x: &Grid,
) -> Result<ReducedDensityMatrix> {
    let psi = EigenstateWavefunction::new(state, params)?;
    let nm = normal_modes(params)?;
    let grid_y = Grid::for_mode(state.m, nm.omega2, params.hbar)?;

    let nx = grid_x.len();
    let ny = grid_y.len();
    let mut psi_mat = DMatrix::zeros(nx, ny);
    for i in 0..nx {
        for j in 0..ny {
            psi_mat[(i, j)] = psi.evaluate(grid_x.nodes[i], grid_y.nodes[j]);
        }
    }
    let mut psi_weighted = psi_mat.clone();
    for j in 0..ny {
        psi_weighted.column_mut(j).scale_mut(grid_y.weights[j]);
    }
    let kernel = psi_weighted * psi_mat.transpose();

    let rdm = ReducedDensityMatrix {
        kernel,
        grid: grid_x.clone(),
        state: state.clone(),
    };
    let dev = (rdm.trace() - 1.0).abs();
    if dev > TRACE_TOL {
        return Err(OscillentError::GridInsufficient {
            trace_dev: dev,
            tol: TRACE_TOL,
            suggested_half_range: 1.3 * grid_x.half_range,
        });
    }
    Ok(rdm)
}

impl ReducedDensityMatrix {
    /// `int rho(x, x) dx` by the grid weights.
    pub fn trace(&self) -> f64 {
        (0..self.grid.len())
            .map(|i| self.grid.weights[i] * self.kernel[(i, i)])
            .sum()
    }

    /// Largest elementwise asymmetry of the kernel.
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.kernel.nrows() {
            for j in (i + 1)..self.kernel.ncols() {
                worst = worst.max((self.kernel[(i, j)] - self.kernel[(j, i)]).abs());
            }
        }
        worst
    }

    /// Diagonalizes the weighted kernel `sqrt(w) rho sqrt(w)`, whose
    /// eigenvalues are the Schmidt probabilities. Eigenvalues below
    /// `-1e-8` are rejected; small negative noise is clipped to zero.
    pub fn schmidt_spectrum(&self) -> Result<SchmidtSpectrum> {
        let n = self.grid.len();
        let sqrt_w: Vec<f64> = self.grid.weights.iter().map(|w| w.sqrt()).collect();
        let mut d = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                d[(i, j)] = sqrt_w[i] * self.kernel[(i, j)] * sqrt_w[j];
            }
        }
        let d = 0.5 * (&d + d.transpose());
        let eigen = d.symmetric_eigen();
        let mut probabilities: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
        probabilities.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));

        if let Some(&min) = probabilities.last() {
            if min < NEGATIVE_FLOOR {
                return Err(OscillentError::SpectrumNegative { min });
            }
        }
        for p in probabilities.iter_mut() {
            if *p < 0.0 {
                *p = 0.0;
            }
        }

        let entropy: f64 = probabilities
            .iter()
            .filter(|&&p| p > ENTROPY_CUTOFF)
            .map(|&p| -p * p.ln())
            .sum();
        let p_max = probabilities.first().copied().unwrap_or(0.0);
        let occupied = probabilities.iter().filter(|&&p| p >= 0.1 * p_max).count();
        let top: Vec<f64> = probabilities
            .iter()
            .copied()
            .filter(|&p| p >= 0.05 * p_max)
            .collect();
        let flatness = if top.is_empty() {
            f64::NAN
        } else {
            p_max / median(&top)
        };

        Ok(SchmidtSpectrum {
            probabilities,
            entropy,
            occupied,
            flatness,
        })
    }
}

/// Von Neumann entropy of the reduced kernel, in nats.
pub fn von_neumann_entropy(rdm: &ReducedDensityMatrix) -> Result<f64> {
    Ok(rdm.schmidt_spectrum()?.entropy)
}

fn median(sorted_desc: &[f64]) -> f64 {
    let n = sorted_desc.len();
    if n % 2 == 1 {
        sorted_desc[n / 2]
    } else {
        0.5 * (sorted_desc[n / 2 - 1] + sorted_desc[n / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> ModelParams {
        ModelParams::new(1.0, 10.0f64.sqrt(), 0.3).unwrap()
    }

    fn kernel_for(state: &StateSpec, params: &ModelParams) -> ReducedDensityMatrix {
        let nm = normal_modes(params).unwrap();
        let grid = Grid::for_mode(state.n, nm.omega1, params.hbar).unwrap();
        reduced_density_kernel(state, params, &grid).unwrap()
    }

    #[test]
    fn moderate_state_kernel_is_clean() {
        let params = reference();
        let state = StateSpec::from_quanta(4, 12, &params).unwrap();
        let rdm = kernel_for(&state, &params);
        assert!((rdm.trace() - 1.0).abs() < 1e-6);
        assert!(rdm.symmetry_defect() < 1e-10);
        let spec = rdm.schmidt_spectrum().unwrap();
        let total: f64 = spec.probabilities.iter().sum();
        assert!((total - 1.0).abs() < 1e-6);
        assert!(spec.entropy > 0.0);
    }

    #[test]
    fn decoupled_state_has_rank_one() {
        let params = ModelParams::new(1.0, 10.0f64.sqrt(), 0.0).unwrap();
        let state = StateSpec::from_quanta(6, 9, &params).unwrap();
        let rdm = kernel_for(&state, &params);
        let spec = rdm.schmidt_spectrum().unwrap();
        assert!((spec.probabilities[0] - 1.0).abs() < 1e-8);
        assert!(spec.entropy.abs() < 1e-7);
        assert_eq!(spec.occupied, 1);
    }

    #[test]
    fn kernel_is_even_under_simultaneous_reflection() {
        let params = reference();
        let state = StateSpec::from_quanta(3, 8, &params).unwrap();
        let rdm = kernel_for(&state, &params);
        let n = rdm.grid.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst =
                    worst.max((rdm.kernel[(i, j)] - rdm.kernel[(n - 1 - i, n - 1 - j)]).abs());
            }
        }
        let peak = rdm
            .kernel
            .iter()
            .fold(0.0f64, |acc, &v| acc.max(v.abs()));
        assert!(worst < 1e-9 * peak, "reflection defect {worst} vs peak {peak}");
    }

    #[test]
    fn entropy_is_invariant_under_grid_refinement() {
        let params = reference();
        let state = StateSpec::from_quanta(4, 12, &params).unwrap();
        let nm = normal_modes(&params).unwrap();
        let coarse = Grid::for_mode(state.n, nm.omega1, params.hbar).unwrap();
        let fine = Grid::for_mode_with_density(state.n, nm.omega1, params.hbar, 16.0).unwrap();
        let s1 = von_neumann_entropy(&reduced_density_kernel(&state, &params, &coarse).unwrap())
            .unwrap();
        let s2 =
            von_neumann_entropy(&reduced_density_kernel(&state, &params, &fine).unwrap()).unwrap();
        assert!((s1 - s2).abs() < 1e-8, "coarse {s1} vs fine {s2}");
    }

    #[test]
    fn reference_state_frozen_spectrum() {
        let params = reference();
        let state = StateSpec::from_quanta(20, 63, &params).unwrap();
        let rdm = kernel_for(&state, &params);
        assert!((rdm.trace() - 1.0).abs() < 1e-10);
        let spec = rdm.schmidt_spectrum().unwrap();
        assert!(
            (spec.entropy - 1.86980840498701).abs() < 1e-9,
            "entropy {}",
            spec.entropy
        );
        let top = [
            0.320485, 0.171220, 0.143112, 0.134340, 0.114980, 0.0524532, 0.0274584, 0.0224567,
            0.0105305, 0.00188310,
        ];
        for (i, &want) in top.iter().enumerate() {
            assert!(
                (spec.probabilities[i] - want).abs() < 1e-6,
                "p[{i}] = {} vs {want}",
                spec.probabilities[i]
            );
        }
        assert_eq!(spec.occupied, 6);
        assert!(
            (spec.flatness - 2.5708724765364646).abs() < 1e-9,
            "flatness {}",
            spec.flatness
        );
    }

    #[test]
    fn truncated_grid_is_rejected_with_a_suggestion() {
        let params = reference();
        let state = StateSpec::from_quanta(6, 9, &params).unwrap();
        let grid = Grid::uniform(2.0, 101);
        match reduced_density_kernel(&state, &params, &grid) {
            Err(OscillentError::GridInsufficient {
                trace_dev,
                suggested_half_range,
                ..
            }) => {
                assert!(trace_dev > 1e-4);
                assert!(suggested_half_range > 2.0);
            }
            other => panic!("expected grid insufficiency, got {other:?}"),
        }
    }
}
