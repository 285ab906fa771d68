//! Symplectic integration of the coupled-oscillator equations of motion,
//! with conservation diagnostics and strobed sampling of the reduced
//! `(x, px)` plane.

use crate::classical::sampling::SampleSet;
use crate::error::{OscillentError, Result};
use crate::model::{mode_energies, normal_modes, ModelParams, PhasePoint};
use serde::{Deserialize, Serialize};

/// Conservation diagnostics over an integrated trajectory. `secular`
/// compares window means at the start and the end of the run, so it sees
/// through the bounded oscillatory error of the integrator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriftReport {
    pub e_plus_max_rel: f64,
    pub e_plus_secular_rel: f64,
    pub e_plus_final_rel: f64,
    pub e_minus_max_rel: f64,
    pub e_minus_secular_rel: f64,
    /// Number of records averaged in each secular window.
    pub window: u64,
}

/// Output of [`integrate_trajectory`].
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryResult {
    /// `(x, px)` recorded every `stride` steps, starting at `t = 0`.
    pub samples: SampleSet,
    pub drift: DriftReport,
    pub dt: f64,
    pub n_steps: u64,
    pub stride: u64,
}

/// Integrates the full two-oscillator system with velocity Verlet and
/// strobes the reduced plane. Requires `dt * max(omega1, omega2) <= 0.1`
/// so the fast mode stays resolved.
pub fn integrate_trajectory(
    p0: &PhasePoint,
    params: &ModelParams,
    dt: f64,
    n_steps: u64,
    stride: u64,
) -> Result<TrajectoryResult> {
    let nm = normal_modes(params)?;
    if !(dt > 0.0) || dt * nm.omega2.max(nm.omega1) > 0.1 {
        return Err(OscillentError::InvalidParams(format!(
            "dt = {dt} is too coarse for the fast mode; need dt * max mode frequency <= 0.1"
        )));
    }
    if n_steps == 0 || stride == 0 {
        return Err(OscillentError::InvalidParams(
            "n_steps and stride must be positive".into(),
        ));
    }

    let w_sq = params.omega * params.omega;
    let big_sq = params.big_omega * params.big_omega;
    let c = params.coupling;

    let energies = |p: &PhasePoint| {
        let (e1, e2) = mode_energies(p, &nm);
        (e1 + e2, e2 - e1)
    };

    let (ep0, em0) = energies(p0);
    if ep0 <= 0.0 {
        return Err(OscillentError::InvalidParams(
            "initial point carries no energy".into(),
        ));
    }
    let em_scale = if em0.abs() > 1e-12 * ep0 { em0.abs() } else { ep0 };

    let window = (n_steps / 10).clamp(1, 10_000);
    let mut ring_p = vec![0.0f64; window as usize];
    let mut ring_m = vec![0.0f64; window as usize];
    let mut first_p = 0.0;
    let mut first_m = 0.0;
    let mut max_p = 0.0f64;
    let mut max_m = 0.0f64;

    let mut record = |i: u64, ep: f64, em: f64| {
        if i < window {
            first_p += ep;
            first_m += em;
        }
        ring_p[(i % window) as usize] = ep;
        ring_m[(i % window) as usize] = em;
        max_p = max_p.max((ep - ep0).abs());
        max_m = max_m.max((em - em0).abs());
    };

    let mut samples_x = Vec::with_capacity((n_steps / stride + 1) as usize);
    let mut samples_px = Vec::with_capacity((n_steps / stride + 1) as usize);

    let mut p = *p0;
    record(0, ep0, em0);
    samples_x.push(p.x);
    samples_px.push(p.px);

    let mut ax = -w_sq * p.x - c * p.y;
    let mut ay = -big_sq * p.y - c * p.x;
    for step in 1..=n_steps {
        p.px += 0.5 * dt * ax;
        p.py += 0.5 * dt * ay;
        p.x += dt * p.px;
        p.y += dt * p.py;
        ax = -w_sq * p.x - c * p.y;
        ay = -big_sq * p.y - c * p.x;
        p.px += 0.5 * dt * ax;
        p.py += 0.5 * dt * ay;

        let (ep, em) = energies(&p);
        record(step, ep, em);
        if step % stride == 0 {
            samples_x.push(p.x);
            samples_px.push(p.px);
        }
    }

    let (ep_final, _) = energies(&p);
    let mean_first_p = first_p / window as f64;
    let mean_first_m = first_m / window as f64;
    let mean_last_p = ring_p.iter().sum::<f64>() / window as f64;
    let mean_last_m = ring_m.iter().sum::<f64>() / window as f64;

    let drift = DriftReport {
        e_plus_max_rel: max_p / ep0,
        e_plus_secular_rel: (mean_last_p - mean_first_p).abs() / ep0,
        e_plus_final_rel: (ep_final - ep0).abs() / ep0,
        e_minus_max_rel: max_m / em_scale,
        e_minus_secular_rel: (mean_last_m - mean_first_m).abs() / em_scale,
        window,
    };

    Ok(TrajectoryResult {
        samples: SampleSet {
            x: samples_x,
            px: samples_px,
            seed: None,
        },
        drift,
        dt,
        n_steps,
        stride,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::sampling::torus_phase_point;
    use crate::model::StateSpec;

    fn reference() -> (ModelParams, StateSpec) {
        let params = ModelParams::new(1.0, 10.0f64.sqrt(), 0.3).unwrap();
        let state = StateSpec::from_energies(20.0, 200.0, &params).unwrap();
        (params, state)
    }

    #[test]
    fn short_run_conserves_both_invariants() {
        let (params, state) = reference();
        let nm = normal_modes(&params).unwrap();
        let p0 = torus_phase_point(&state, &params, 0.7, 2.1).unwrap();
        let dt = 0.01 / nm.omega2;
        let run = integrate_trajectory(&p0, &params, dt, 50_000, 25).unwrap();
        assert!(run.drift.e_plus_max_rel < 1e-4);
        assert!(run.drift.e_plus_secular_rel < 1e-6);
        assert!(run.drift.e_minus_max_rel < 1e-3);
        assert!(run.drift.e_minus_secular_rel < 1e-5);
        assert_eq!(run.samples.len(), 50_000 / 25 + 1);
    }

    #[test]
    fn oscillatory_error_scales_as_dt_squared() {
        let (params, state) = reference();
        let nm = normal_modes(&params).unwrap();
        let p0 = torus_phase_point(&state, &params, 0.7, 2.1).unwrap();
        let dt = 0.01 / nm.omega2;
        let coarse = integrate_trajectory(&p0, &params, dt, 20_000, 20_000).unwrap();
        let fine = integrate_trajectory(&p0, &params, dt / 2.0, 40_000, 40_000).unwrap();
        let ratio = coarse.drift.e_plus_max_rel / fine.drift.e_plus_max_rel;
        assert!(
            (ratio - 4.0).abs() < 0.5,
            "halving dt should quarter the bounded error, got ratio {ratio}"
        );
    }

    #[test]
    fn rejects_coarse_timestep() {
        let (params, state) = reference();
        let p0 = torus_phase_point(&state, &params, 0.0, 0.0).unwrap();
        assert!(integrate_trajectory(&p0, &params, 0.2, 10, 1).is_err());
    }
}
