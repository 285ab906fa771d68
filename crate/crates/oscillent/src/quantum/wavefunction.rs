//! Exact two-mode product eigenstates of the coupled pair, evaluated in
//! the physical coordinates.

use crate::error::{OscillentError, Result};
use crate::model::{normal_modes, ModelParams, NormalModes, StateSpec};
use crate::quantum::grid::Grid;
use crate::quantum::hermite::hermite_function;

/// Largest slow-mode quantum number accepted.
pub const MAX_N: u32 = 200;
/// Largest fast-mode quantum number accepted.
pub const MAX_M: u32 = 2000;

/// The eigenstate `psi_{n,m}(x, y)`: a product of oscillator
/// eigenfunctions in the exact normal coordinates, rotated back to the
/// physical plane.
#[derive(Debug, Clone)]
pub struct EigenstateWavefunction {
    pub state: StateSpec,
    pub params: ModelParams,
    nm: NormalModes,
    norm: f64,
}

impl EigenstateWavefunction {
    pub fn new(state: &StateSpec, params: &ModelParams) -> Result<Self> {
        if state.n > MAX_N {
            return Err(OscillentError::QuantumNumberTooLarge {
                name: "n",
                value: state.n,
                max: MAX_N,
            });
        }
        if state.m > MAX_M {
            return Err(OscillentError::QuantumNumberTooLarge {
                name: "m",
                value: state.m,
                max: MAX_M,
            });
        }
        let nm = normal_modes(params)?;
        let norm = (nm.omega1 * nm.omega2 / (params.hbar * params.hbar)).powf(0.25);
        Ok(EigenstateWavefunction {
            state: state.clone(),
            params: params.clone(),
            nm,
            norm,
        })
    }

    pub fn modes(&self) -> &NormalModes {
        &self.nm
    }

    /// `psi_{n,m}(x, y)`.
    pub fn evaluate(&self, x: f64, y: f64) -> f64 {
        let x1 = self.nm.alpha * x - self.nm.beta * y;
        let x2 = self.nm.beta * x + self.nm.alpha * y;
        let xi1 = x1 * (self.nm.omega1 / self.params.hbar).sqrt();
        let xi2 = x2 * (self.nm.omega2 / self.params.hbar).sqrt();
        self.norm * hermite_function(self.state.n, xi1) * hermite_function(self.state.m, xi2)
    }

    /// The exact eigenenergy `(n + 1/2) hbar omega1 + (m + 1/2) hbar
    /// omega2`.
    pub fn energy(&self) -> f64 {
        self.params.hbar
            * ((self.state.n as f64 + 0.5) * self.nm.omega1
                + (self.state.m as f64 + 0.5) * self.nm.omega2)
    }
}

/// `iint |psi|^2 dx dy` on the product grid.
pub fn norm_squared(psi: &EigenstateWavefunction, grid_x: &Grid, grid_y: &Grid) -> f64 {
    let mut total = 0.0;
    for (i, &x) in grid_x.nodes.iter().enumerate() {
        let mut row = 0.0;
        for (j, &y) in grid_y.nodes.iter().enumerate() {
            let v = psi.evaluate(x, y);
            row += grid_y.weights[j] * v * v;
        }
        total += grid_x.weights[i] * row;
    }
    total
}

/// `<psi| H |psi>` evaluated numerically: the Laplacian by an
/// eighth-order central stencil with a step tied to the shortest de
/// Broglie wavelength, the potential exactly, the integral by the grid
/// weights. Independent of the eigenenergy bookkeeping, so it checks the
/// construction end to end.
pub fn hamiltonian_expectation(
    psi: &EigenstateWavefunction,
    grid_x: &Grid,
    grid_y: &Grid,
) -> f64 {
    const STENCIL: [f64; 9] = [
        -1.0 / 560.0,
        8.0 / 315.0,
        -1.0 / 5.0,
        8.0 / 5.0,
        -205.0 / 72.0,
        8.0 / 5.0,
        -1.0 / 5.0,
        8.0 / 315.0,
        -1.0 / 560.0,
    ];
    let p = &psi.params;
    let e_total = psi.energy().max(p.hbar * p.big_omega);
    let h_fd = 0.2 * p.hbar / (2.0 * e_total).sqrt();
    let inv_h2 = 1.0 / (h_fd * h_fd);

    let mut total = 0.0;
    for (i, &x) in grid_x.nodes.iter().enumerate() {
        let mut row = 0.0;
        for (j, &y) in grid_y.nodes.iter().enumerate() {
            let v = psi.evaluate(x, y);
            if v == 0.0 {
                continue;
            }
            let mut lap = 0.0;
            for (s, &c) in STENCIL.iter().enumerate() {
                let off = (s as f64 - 4.0) * h_fd;
                lap += c * (psi.evaluate(x + off, y) + psi.evaluate(x, y + off));
            }
            lap *= inv_h2;
            let potential = 0.5 * p.omega * p.omega * x * x
                + 0.5 * p.big_omega * p.big_omega * y * y
                + p.coupling * x * y;
            row += grid_y.weights[j] * v * (-0.5 * p.hbar * p.hbar * lap + potential * v);
        }
        total += grid_x.weights[i] * row;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> ModelParams {
        ModelParams::new(1.0, 10.0f64.sqrt(), 0.3).unwrap()
    }

    fn grids(state: &StateSpec, params: &ModelParams) -> (Grid, Grid) {
        let nm = normal_modes(params).unwrap();
        (
            Grid::for_mode(state.n, nm.omega1, params.hbar).unwrap(),
            Grid::for_mode(state.m, nm.omega2, params.hbar).unwrap(),
        )
    }

    #[test]
    fn eigenstate_is_normalized() {
        let params = reference();
        let state = StateSpec::from_quanta(3, 5, &params).unwrap();
        let psi = EigenstateWavefunction::new(&state, &params).unwrap();
        let (gx, gy) = grids(&state, &params);
        let norm = norm_squared(&psi, &gx, &gy);
        assert!((norm - 1.0).abs() < 1e-6, "norm {norm}");
    }

    #[test]
    fn energy_expectation_matches_the_spectrum() {
        let params = reference();
        let state = StateSpec::from_quanta(3, 5, &params).unwrap();
        let psi = EigenstateWavefunction::new(&state, &params).unwrap();
        let (gx, gy) = grids(&state, &params);
        let want = psi.energy();
        let got = hamiltonian_expectation(&psi, &gx, &gy);
        assert!(
            ((got - want) / want).abs() < 1e-6,
            "<H> = {got}, spectrum says {want}"
        );
    }

    #[test]
    fn decoupled_eigenstate_factorizes() {
        let params = ModelParams::new(1.0, 2.0, 0.0).unwrap();
        let state = StateSpec::from_quanta(2, 3, &params).unwrap();
        let psi = EigenstateWavefunction::new(&state, &params).unwrap();
        let direct = |x: f64, y: f64| {
            (1.0 * 2.0f64).powf(0.25)
                * hermite_function(2, x)
                * hermite_function(3, y * 2.0f64.sqrt())
        };
        for (x, y) in [(0.3, -0.4), (1.1, 0.2), (-2.0, 1.5)] {
            assert!((psi.evaluate(x, y) - direct(x, y)).abs() < 1e-12);
        }
    }

    #[test]
    fn parity_follows_the_quantum_numbers() {
        let params = reference();
        let state = StateSpec::from_quanta(3, 6, &params).unwrap();
        let psi = EigenstateWavefunction::new(&state, &params).unwrap();
        for (x, y) in [(0.7, 0.8), (1.4, -0.3)] {
            let sign = if (state.n + state.m) % 2 == 0 { 1.0 } else { -1.0 };
            assert!((psi.evaluate(-x, -y) - sign * psi.evaluate(x, y)).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_quantum_numbers_beyond_the_ceiling() {
        let params = reference();
        let state = StateSpec::from_quanta(201, 5, &params).unwrap();
        assert!(matches!(
            EigenstateWavefunction::new(&state, &params),
            Err(OscillentError::QuantumNumberTooLarge { name: "n", .. })
        ));
        let state = StateSpec::from_quanta(5, 2001, &params).unwrap();
        assert!(matches!(
            EigenstateWavefunction::new(&state, &params),
            Err(OscillentError::QuantumNumberTooLarge { name: "m", .. })
        ));
    }
}
