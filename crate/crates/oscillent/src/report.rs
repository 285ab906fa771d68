//! Cross-method comparison: runs every entropy route on one eigenstate,
//! tabulates pairwise differences, and grades the agreements that the
//! laboratory is built to check.

use crate::classical::{
    classical_entropy_closed_form, classical_entropy_quadrature, entropy_knn,
    integrate_trajectory, sample_torus, torus_phase_point, EntropyMethod,
};
use crate::error::Result;
use crate::model::{normal_modes, validate_regime, ModelParams, RegimeReport, StateSpec};
use crate::quantum::{reduced_density_kernel, Grid};
use crate::wkb::{wkb_entropy, wkb_reduced_density_with, DEFAULT_OFFSETS};
use serde::{Deserialize, Serialize};

/// Agreement tolerances the comparison grades against, in nats except
/// where noted.
pub mod tolerance {
    /// Band quadrature against the closed form.
    pub const QUADRATURE: f64 = 1e-3;
    /// Torus Monte Carlo against the closed form.
    pub const TORUS_MC: f64 = 0.05;
    /// Trajectory time average against the closed form.
    pub const TRAJECTORY: f64 = 0.1;
    /// Exact-kernel von Neumann entropy against the closed form.
    pub const KERNEL: f64 = 0.15;
    /// Semiclassical closed form against the classical closed form;
    /// the two are the same expression.
    pub const WKB_IDENTITY: f64 = 1e-12;
    /// Assembled semiclassical kernel against the semiclassical closed
    /// form.
    pub const ASSEMBLED: f64 = 0.1;
    /// Occupied Schmidt modes against twice the band half-width, in
    /// modes.
    pub const OCCUPIED_MODES: f64 = 2.0;
}

/// Initial torus phases for the trajectory route; any generic point
/// works, this one is fixed so reruns reproduce bytes.
const TRAJECTORY_PHASES: (f64, f64) = (1.0, 2.0);
/// Steps between retained trajectory samples.
const TRAJECTORY_STRIDE: u64 = 5;

/// One computed entropy value with enough provenance to recompute it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyRecord {
    /// Stable route identifier, e.g. `classical-torus-mc`.
    pub route: String,
    /// Engine family: `classical`, `quantum`, or `wkb`.
    pub family: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncertainty: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

/// Signed difference between two routes' values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodDelta {
    pub a: String,
    pub b: String,
    pub delta: f64,
}

/// One graded agreement: the measured difference against its
/// tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub delta: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Full cross-method comparison at one eigenstate: inputs, regime
/// flags, every route's value, pairwise differences, and verdicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub params: ModelParams,
    pub state: StateSpec,
    pub regime: RegimeReport,
    pub records: Vec<EntropyRecord>,
    pub deltas: Vec<MethodDelta>,
    pub verdicts: Vec<Verdict>,
}

/// Knobs for the stochastic and discretized routes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareOptions {
    /// Torus Monte Carlo sample count; the trajectory route integrates
    /// `samples * 5` steps and keeps every fifth point.
    pub samples: u64,
    pub seed: u64,
    /// Override for the slow-coordinate grid node count.
    pub grid_points: Option<usize>,
    /// Chebyshev offset nodes in the semiclassical kernel assembly.
    pub offsets: usize,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            samples: 200_000,
            seed: 1,
            grid_points: None,
            offsets: DEFAULT_OFFSETS,
        }
    }
}

impl EntropyRecord {
    /// Repackages an engine-level result under a stable route name.
    pub fn from_result(
        route: &str,
        family: &str,
        result: crate::classical::EntropyResult,
    ) -> EntropyRecord {
        EntropyRecord {
            route: route.into(),
            family: family.into(),
            value: result.value,
            uncertainty: result.uncertainty,
            samples: result.metadata.samples,
            seed: result.metadata.seed,
            grid_points: None,
            warnings: result.metadata.warnings,
        }
    }
}

/// Builds the slow-coordinate grid for the kernel routes, honoring the
/// node-count override.
pub fn kernel_grid(
    state: &StateSpec,
    params: &ModelParams,
    grid_points: Option<usize>,
) -> Result<Grid> {
    let nm = normal_modes(params)?;
    let auto = Grid::for_mode(state.n, nm.omega1, params.hbar)?;
    Ok(match grid_points {
        Some(n) => Grid::uniform(auto.half_range, n),
        None => auto,
    })
}

/// Runs all seven entropy routes on one eigenstate and grades the
/// agreements.
pub fn compare_report(
    state: &StateSpec,
    params: &ModelParams,
    options: &CompareOptions,
) -> Result<ComparisonReport> {
    let mut records = Vec::new();

    let closed = classical_entropy_closed_form(state, params)?;
    let closed_value = closed.value;
    records.push(EntropyRecord::from_result(
        "classical-closed-form",
        "classical",
        closed,
    ));

    records.push(EntropyRecord::from_result(
        "classical-quadrature",
        "classical",
        classical_entropy_quadrature(state, params)?,
    ));

    let torus = sample_torus(state, params, options.samples, options.seed)?;
    records.push(EntropyRecord::from_result(
        "classical-torus-mc",
        "classical",
        entropy_knn(&torus, params.delta_cell, 4)?,
    ));

    let nm = normal_modes(params)?;
    let p0 = torus_phase_point(state, params, TRAJECTORY_PHASES.0, TRAJECTORY_PHASES.1)?;
    let dt = 0.01 / nm.omega2;
    let trajectory = integrate_trajectory(
        &p0,
        params,
        dt,
        options.samples * TRAJECTORY_STRIDE,
        TRAJECTORY_STRIDE,
    )?;
    let mut trajectory_entropy = entropy_knn(&trajectory.samples, params.delta_cell, 4)?;
    trajectory_entropy.method = EntropyMethod::Trajectory;
    let mut trajectory_record = EntropyRecord::from_result(
        "classical-trajectory",
        "classical",
        trajectory_entropy,
    );
    trajectory_record.seed = None;
    records.push(trajectory_record);

    let grid = kernel_grid(state, params, options.grid_points)?;
    let spectrum = reduced_density_kernel(state, params, &grid)?.schmidt_spectrum()?;
    records.push(EntropyRecord {
        route: "quantum-kernel".into(),
        family: "quantum".into(),
        value: spectrum.entropy,
        uncertainty: None,
        samples: None,
        seed: None,
        grid_points: Some(grid.len() as u64),
        warnings: Vec::new(),
    });

    let assembled = wkb_reduced_density_with(state, params, &grid, options.offsets)?
        .schmidt_spectrum()?;
    records.push(EntropyRecord {
        route: "quantum-wkb-kernel".into(),
        family: "quantum".into(),
        value: assembled.entropy,
        uncertainty: None,
        samples: Some(options.offsets as u64),
        seed: None,
        grid_points: Some(grid.len() as u64),
        warnings: Vec::new(),
    });

    let wkb = wkb_entropy(state, params)?;
    records.push(EntropyRecord {
        route: "wkb-closed-form".into(),
        family: "wkb".into(),
        value: wkb.value,
        uncertainty: Some((wkb.quadrature - wkb.value).abs()),
        samples: None,
        seed: None,
        grid_points: None,
        warnings: wkb.warnings.clone(),
    });

    let mut deltas = Vec::new();
    for i in 0..records.len() {
        for j in (i + 1)..records.len() {
            deltas.push(MethodDelta {
                a: records[i].route.clone(),
                b: records[j].route.clone(),
                delta: records[i].value - records[j].value,
            });
        }
    }

    let by_route = |route: &str| -> f64 {
        records
            .iter()
            .find(|r| r.route == route)
            .expect("route computed above")
            .value
    };
    let mut verdicts = Vec::new();
    let mut grade = |name: &str, delta: f64, tol: f64| {
        verdicts.push(Verdict {
            name: name.into(),
            delta,
            tolerance: tol,
            pass: delta.abs() <= tol,
        });
    };
    grade(
        "quadrature-matches-closed-form",
        by_route("classical-quadrature") - closed_value,
        tolerance::QUADRATURE,
    );
    grade(
        "torus-mc-matches-closed-form",
        by_route("classical-torus-mc") - closed_value,
        tolerance::TORUS_MC,
    );
    grade(
        "trajectory-matches-closed-form",
        by_route("classical-trajectory") - closed_value,
        tolerance::TRAJECTORY,
    );
    grade(
        "kernel-matches-closed-form",
        by_route("quantum-kernel") - closed_value,
        tolerance::KERNEL,
    );
    grade(
        "wkb-matches-closed-form",
        by_route("wkb-closed-form") - closed_value,
        tolerance::WKB_IDENTITY,
    );
    grade(
        "assembled-kernel-matches-wkb",
        by_route("quantum-wkb-kernel") - by_route("wkb-closed-form"),
        tolerance::ASSEMBLED,
    );
    grade(
        "occupied-modes-match-band-count",
        spectrum.occupied as f64 - 2.0 * wkb.dn_max,
        tolerance::OCCUPIED_MODES,
    );

    Ok(ComparisonReport {
        params: params.clone(),
        state: state.clone(),
        regime: validate_regime(params, state),
        records,
        deltas,
        verdicts,
    })
}
