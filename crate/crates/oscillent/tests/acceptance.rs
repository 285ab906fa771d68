//! Exit gate for the laboratory: seven criteria, one test and one printed
//! verdict line each, with every tolerance pinned as a named constant.
//!
//! Three assertions pin idealized weak-coupling formulas whose residuals
//! at the reference point are structural rather than statistical, and they
//! fail honestly at their stated tolerances:
//!
//! * criterion 2: the k-NN estimate over torus samples carries a +0.4 nat
//!   offset against the order-C closed form (the exact marginal is wider
//!   than the band form, and the estimator itself has an edge bias);
//! * criterion 4: the ground-state kernel entropy sits 27% below the
//!   two-level binary-entropy formula, because the leading-order mixing
//!   fraction overstates the exact Gaussian pair weight, and the deficit
//!   does not shrink when the coupling is halved;
//! * criterion 5: the total-variation distance between the kernel
//!   spectrum and integer-binned arcsine masses is 0.20, dominated by the
//!   smoothing of the band-edge divergence into one leading eigenvalue.
//!
//! Companion tests bound each of those residuals in a band, so a true
//! regression still turns something red in both directions.

use std::f64::consts::{LN_2, PI};
use std::time::Instant;

use oscillent::classical::{
    classical_entropy_closed_form, classical_entropy_quadrature, entropy_knn, marginal_density,
    sample_band, sample_torus, support_band, torus_phase_point, DensityValue, MarginalMode,
};
use oscillent::model::normal_modes;
use oscillent::quad::chebyshev_gauss_nodes;
use oscillent::quantum::{
    binary_entropy, ground_state_entropy_small_c, ground_state_exact, hermite_function,
    reduced_density_kernel, Grid,
};
use oscillent::wkb::{lambda_spectrum, wkb_entropy, wkb_wavefunction, WkbState};
use oscillent::{ModelParams, StateSpec};

/// Agreement tolerances, in nats unless noted. A difference of two route
/// values is allowed twice the per-route tolerance.
mod tol {
    pub const QUADRATURE_NATS: f64 = 1e-3;
    pub const TORUS_MC_NATS: f64 = 0.05;
    pub const TRAJECTORY_NATS: f64 = 0.1;
    pub const KERNEL_NATS: f64 = 0.15;
    pub const GROUND_REL: f64 = 0.10;
    pub const GROUND_HALVING_GAIN: f64 = 3.0;
    pub const TV_DISTANCE: f64 = 0.1;
    pub const OCCUPIED_CENTER: f64 = 7.6;
    pub const OCCUPIED_SLACK: f64 = 2.0;
    pub const SECULAR_DRIFT_REL: f64 = 1e-6;
    pub const MARGINAL_MASS_DEV: f64 = 1e-6;
    pub const TRACE_DEV: f64 = 1e-6;
    pub const SPECTRUM_FLOOR: f64 = -1e-8;
    pub const LAMBDA_MASS_DEV: f64 = 1e-10;
    pub const EXACT_IDENTITY: f64 = 1e-12;
    pub const OVERLAP_MIN: f64 = 0.99;
}

const TORUS_SAMPLES: u64 = 10_000_000;
const TRAJECTORY_STEPS: u64 = 1_000_000;
const TRAJECTORY_STRIDE: u64 = 5;
const KNN_K: usize = 4;
const SEED: u64 = 1;
const BAND_SEED: u64 = 20_240_817;

fn reference_params() -> ModelParams {
    ModelParams::new(1.0, 10.0f64.sqrt(), 0.3).unwrap()
}

fn reference_state(params: &ModelParams) -> StateSpec {
    StateSpec::from_energies(20.0, 200.0, params).unwrap()
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

#[test]
fn acceptance_1_quadrature_matches_the_closed_form() {
    let params = reference_params();
    let state = reference_state(&params);
    let start = Instant::now();
    let closed = classical_entropy_closed_form(&state, &params).unwrap().value;
    let quadrature = classical_entropy_quadrature(&state, &params).unwrap().value;
    let elapsed = start.elapsed().as_secs_f64();
    let diff = (quadrature - closed).abs();
    let pass = diff <= tol::QUADRATURE_NATS && elapsed < 1.0;
    println!(
        "criterion 1: {}  closed = {closed:.12}, quadrature - closed = {diff:.3e} \
         (tolerance {:.0e}), {elapsed:.2} s",
        verdict(pass),
        tol::QUADRATURE_NATS,
    );
    assert!((closed - 1.785196808580432).abs() < 1e-12);
    assert!(diff <= tol::QUADRATURE_NATS);
    assert!(elapsed < 1.0, "quadrature took {elapsed:.2} s, budget 1 s");
}

#[test]
fn acceptance_2_monte_carlo_routes_match_the_closed_form() {
    let params = reference_params();
    let state = reference_state(&params);
    let closed = classical_entropy_closed_form(&state, &params).unwrap().value;
    let nm = normal_modes(&params).unwrap();

    let start = Instant::now();
    let samples = sample_torus(&state, &params, TORUS_SAMPLES, SEED).unwrap();
    let torus = entropy_knn(&samples, params.delta_cell, KNN_K).unwrap();
    let torus_elapsed = start.elapsed().as_secs_f64();
    let torus_gap = torus.value - closed;

    let start = Instant::now();
    let p0 = torus_phase_point(&state, &params, 1.0, 2.0).unwrap();
    let dt = 0.01 / nm.omega2;
    let run = oscillent::classical::integrate_trajectory(
        &p0,
        &params,
        dt,
        TRAJECTORY_STEPS,
        TRAJECTORY_STRIDE,
    )
    .unwrap();
    let trajectory = entropy_knn(&run.samples, params.delta_cell, KNN_K).unwrap();
    let trajectory_elapsed = start.elapsed().as_secs_f64();
    let trajectory_gap = trajectory.value - closed;

    let pass = torus_gap.abs() <= tol::TORUS_MC_NATS
        && trajectory_gap.abs() <= tol::TRAJECTORY_NATS
        && torus_elapsed < 120.0
        && trajectory_elapsed < 120.0;
    println!(
        "criterion 2: {}  torus-MC gap = {torus_gap:+.6} (tolerance {:.2}, {:.0e} samples, \
         {torus_elapsed:.1} s), trajectory gap = {trajectory_gap:+.6} (tolerance {:.2}, \
         {:.0e} steps, {trajectory_elapsed:.1} s)",
        verdict(pass),
        tol::TORUS_MC_NATS,
        TORUS_SAMPLES as f64,
        tol::TRAJECTORY_NATS,
        TRAJECTORY_STEPS as f64,
    );
    assert!(torus_elapsed < 120.0, "torus-MC took {torus_elapsed:.1} s");
    assert!(
        trajectory_elapsed < 120.0,
        "trajectory took {trajectory_elapsed:.1} s"
    );
    assert!(
        torus_gap.abs() <= tol::TORUS_MC_NATS,
        "torus-MC k-NN entropy {:.6} differs from the closed form {closed:.6} by \
         {torus_gap:+.6} nats; the offset is structural (see the companion tests)",
        torus.value,
    );
    assert!(
        trajectory_gap.abs() <= tol::TRAJECTORY_NATS,
        "trajectory k-NN entropy {:.6} differs from the closed form {closed:.6} by \
         {trajectory_gap:+.6} nats",
        trajectory.value,
    );
}

#[test]
fn acceptance_3_kernel_entropy_matches_the_classical_value() {
    let start = Instant::now();
    let params = reference_params();
    let state = reference_state(&params);
    assert_eq!((state.n, state.m), (20, 63));
    let nm = normal_modes(&params).unwrap();
    let grid = Grid::for_mode(state.n, nm.omega1, params.hbar).unwrap();
    let rdm = reduced_density_kernel(&state, &params, &grid).unwrap();
    let spectrum = rdm.schmidt_spectrum().unwrap();
    let closed = classical_entropy_closed_form(&state, &params).unwrap().value;
    let gap = spectrum.entropy - closed;

    let deep_params = ModelParams::new(1.0, 10.0f64.sqrt(), 0.15).unwrap();
    let deep_state = StateSpec::from_energies(40.0, 400.0, &deep_params).unwrap();
    assert_eq!((deep_state.n, deep_state.m), (40, 126));
    let deep_nm = normal_modes(&deep_params).unwrap();
    let deep_grid = Grid::for_mode(deep_state.n, deep_nm.omega1, deep_params.hbar).unwrap();
    let deep_rdm = reduced_density_kernel(&deep_state, &deep_params, &deep_grid).unwrap();
    let deep_spectrum = deep_rdm.schmidt_spectrum().unwrap();
    let deep_closed = classical_entropy_closed_form(&deep_state, &deep_params)
        .unwrap()
        .value;
    let deep_gap = deep_spectrum.entropy - deep_closed;
    let elapsed = start.elapsed().as_secs_f64();

    let pass =
        gap.abs() <= tol::KERNEL_NATS && deep_gap.abs() < gap.abs() && elapsed < 600.0;
    println!(
        "criterion 3: {}  kernel S = {:.9}, gap = {gap:+.6} (tolerance {:.2}); doubled \
         quanta at fixed bandwidth: S = {:.9}, gap = {deep_gap:+.6}; {elapsed:.1} s",
        verdict(pass),
        spectrum.entropy,
        tol::KERNEL_NATS,
        deep_spectrum.entropy,
    );
    assert!((spectrum.entropy - 1.86980840498701).abs() < 1e-9);
    assert!((deep_spectrum.entropy - 1.865361138483967).abs() < 1e-9);
    let bandwidth = lambda_spectrum(&state, &params).unwrap().dn_max;
    let deep_bandwidth = lambda_spectrum(&deep_state, &deep_params).unwrap().dn_max;
    assert!((bandwidth - deep_bandwidth).abs() < 1e-12);
    assert!(gap.abs() <= tol::KERNEL_NATS);
    assert!(
        deep_gap.abs() < gap.abs(),
        "doubling (n, m) at fixed bandwidth should shrink the gap: {gap:+.6} -> {deep_gap:+.6}"
    );
    assert!(elapsed < 600.0, "kernels took {elapsed:.1} s, budget 600 s");
}

fn ground_kernel_entropy(params: &ModelParams) -> f64 {
    let state = StateSpec::from_quanta(0, 0, params).unwrap();
    let nm = normal_modes(params).unwrap();
    let grid = Grid::for_mode(0, nm.omega1, params.hbar).unwrap();
    let rdm = reduced_density_kernel(&state, params, &grid).unwrap();
    rdm.schmidt_spectrum().unwrap().entropy
}

#[test]
fn acceptance_4_ground_state_kernel_matches_the_binary_entropy() {
    let start = Instant::now();
    let params = ModelParams::new(1.0, 5.0, 0.5).unwrap();
    let small_c = ground_state_entropy_small_c(&params).unwrap();
    let kernel = ground_kernel_entropy(&params);
    let deviation = kernel / small_c.value - 1.0;

    let halved_params = ModelParams::new(1.0, 5.0, 0.25).unwrap();
    let halved_small_c = ground_state_entropy_small_c(&halved_params).unwrap();
    let halved_kernel = ground_kernel_entropy(&halved_params);
    let halved_deviation = halved_kernel / halved_small_c.value - 1.0;
    let gain = deviation.abs() / halved_deviation.abs();
    let elapsed = start.elapsed().as_secs_f64();

    let pass = deviation.abs() <= tol::GROUND_REL && gain >= tol::GROUND_HALVING_GAIN;
    println!(
        "criterion 4: {}  f = {:.4e}, binary S = {:.6e}, kernel S = {kernel:.6e}, relative \
         deviation = {deviation:+.4} (tolerance {:.2}); halving C changes it to \
         {halved_deviation:+.4} (gain {gain:.2}, wanted >= {}); {elapsed:.1} s",
        verdict(pass),
        small_c.mixing_fraction,
        small_c.value,
        tol::GROUND_REL,
        tol::GROUND_HALVING_GAIN,
    );
    assert!((small_c.mixing_fraction - 5.0e-4).abs() < 1e-7);
    assert!((small_c.value - 4.300326e-3).abs() < 1e-8);
    assert!(elapsed < 30.0, "ground kernels took {elapsed:.1} s");
    assert!(
        deviation.abs() <= tol::GROUND_REL,
        "kernel entropy {kernel:.6e} deviates from the binary-entropy formula \
         {:.6e} by {deviation:+.4} relative; the kernel instead matches the exact \
         Gaussian reduced entropy (see the companion tests)",
        small_c.value,
    );
    assert!(
        gain >= tol::GROUND_HALVING_GAIN,
        "halving C left the relative deviation nearly unchanged ({deviation:+.4} -> \
         {halved_deviation:+.4}); both formulas scale the same way with C"
    );
}

/// Half-L1 distance between the kernel probabilities and the arcsine
/// masses of unit bins in the mode-offset variable, each bin split into a
/// +/- offset pair, both lists sorted descending and zero-padded.
fn arcsine_total_variation(probabilities: &[f64], dn_max: f64) -> f64 {
    let mut model = Vec::new();
    let mut lo = 0.0;
    while lo < dn_max {
        let hi = (lo + 1.0).min(dn_max);
        let mass = ((hi / dn_max).asin() - (lo / dn_max).asin()) * 2.0 / PI;
        model.push(0.5 * mass);
        model.push(0.5 * mass);
        lo = hi;
    }
    let len = model.len().max(probabilities.len());
    let mut p = probabilities.to_vec();
    p.resize(len, 0.0);
    model.resize(len, 0.0);
    p.sort_by(|a, b| b.partial_cmp(a).unwrap());
    model.sort_by(|a, b| b.partial_cmp(a).unwrap());
    0.5 * p
        .iter()
        .zip(&model)
        .map(|(a, b)| (a - b).abs())
        .sum::<f64>()
}

#[test]
fn acceptance_5_schmidt_spectrum_has_the_arcsine_shape() {
    let params = reference_params();
    let state = StateSpec::from_quanta(20, 63, &params).unwrap();
    let nm = normal_modes(&params).unwrap();
    let grid = Grid::for_mode(state.n, nm.omega1, params.hbar).unwrap();
    let rdm = reduced_density_kernel(&state, &params, &grid).unwrap();
    let spectrum = rdm.schmidt_spectrum().unwrap();
    let band = lambda_spectrum(&state, &params).unwrap();
    let tv = arcsine_total_variation(&spectrum.probabilities, band.dn_max);
    let occupied = spectrum.occupied as f64;
    let occupied_ok = (occupied - tol::OCCUPIED_CENTER).abs() <= tol::OCCUPIED_SLACK;

    let pass = occupied_ok && tv <= tol::TV_DISTANCE;
    println!(
        "criterion 5: {}  occupied modes = {} (wanted {} +- {}), total variation vs the \
         arcsine bins = {tv:.4} (tolerance {:.1})",
        verdict(pass),
        spectrum.occupied,
        tol::OCCUPIED_CENTER,
        tol::OCCUPIED_SLACK,
        tol::TV_DISTANCE,
    );
    assert!((2.0 * band.dn_max - 7.681808082862088).abs() < 1e-9);
    assert!(
        occupied_ok,
        "occupied-mode count {} outside {} +- {}",
        spectrum.occupied,
        tol::OCCUPIED_CENTER,
        tol::OCCUPIED_SLACK,
    );
    assert!(
        tv <= tol::TV_DISTANCE,
        "total-variation distance {tv:.4} exceeds {:.1}; the discrete spectrum smooths \
         the band-edge divergence into one dominant eigenvalue (see the companion test)",
        tol::TV_DISTANCE,
    );
}

/// Mass of the order-C marginal by polar quadrature: midpoint rule over
/// the angle, Gauss-Chebyshev in the squared radius across the band.
fn marginal_band_mass(state: &StateSpec, params: &ModelParams) -> f64 {
    let n_theta = 256;
    let nodes = chebyshev_gauss_nodes(512);
    let omega = params.omega;
    let mut mass = 0.0;
    for i in 0..n_theta {
        let theta = (i as f64 + 0.5) * 2.0 * PI / n_theta as f64;
        let band = support_band(theta, state, params).unwrap();
        let half = band.half_width();
        let mid = band.midpoint();
        let mut inner = 0.0;
        for &u in &nodes {
            let r_sq = mid + half * u;
            let r = r_sq.sqrt();
            let x = r * theta.sin() / omega;
            let px = r * theta.cos();
            let w = match marginal_density(x, px, state, params, MarginalMode::SmallCoupling) {
                DensityValue::Interior(w) => w,
                other => panic!("expected an interior point, got {other:?}"),
            };
            inner += w * (1.0 - u * u).sqrt();
        }
        inner *= PI * half / nodes.len() as f64;
        mass += inner / (2.0 * omega) * 2.0 * PI / n_theta as f64;
    }
    mass
}

#[test]
fn acceptance_6_structural_invariants_hold() {
    let start = Instant::now();
    let params = reference_params();
    let state = reference_state(&params);
    let nm = normal_modes(&params).unwrap();

    let orthogonality = (nm.alpha * nm.alpha + nm.beta * nm.beta - 1.0).abs();

    let p0 = torus_phase_point(&state, &params, 1.0, 2.0).unwrap();
    let dt = 0.01 / nm.omega2;
    let run = oscillent::classical::integrate_trajectory(
        &p0,
        &params,
        dt,
        TRAJECTORY_STEPS,
        TRAJECTORY_STRIDE,
    )
    .unwrap();
    let drift = run
        .drift
        .e_plus_secular_rel
        .abs()
        .max(run.drift.e_minus_secular_rel.abs());

    let mass_dev = (marginal_band_mass(&state, &params) - 1.0).abs();

    let quantum_state = StateSpec::from_quanta(20, 63, &params).unwrap();
    let grid = Grid::for_mode(quantum_state.n, nm.omega1, params.hbar).unwrap();
    let rdm = reduced_density_kernel(&quantum_state, &params, &grid).unwrap();
    let trace_dev = (rdm.trace() - 1.0).abs();
    let spectrum = rdm.schmidt_spectrum().unwrap();
    let min_probability = spectrum.probabilities.last().copied().unwrap();

    let band = lambda_spectrum(&quantum_state, &params).unwrap();
    let cg = chebyshev_gauss_nodes(32_768);
    let lambda_mass: f64 = cg
        .iter()
        .map(|&u| band.density(band.dn_max * u) * (1.0 - u * u).sqrt())
        .sum::<f64>()
        * PI
        * band.dn_max
        / cg.len() as f64;
    let lambda_mass_dev = (lambda_mass - 1.0).abs();

    let cell_factor = 2.7;
    let shifted_params = params
        .clone()
        .with_delta_cell(params.delta_cell * cell_factor)
        .unwrap();
    let closed = classical_entropy_closed_form(&state, &params).unwrap().value;
    let closed_shifted = classical_entropy_closed_form(&state, &shifted_params)
        .unwrap()
        .value;
    let cell_closed_dev = (closed - closed_shifted - cell_factor.ln()).abs();
    let quad = classical_entropy_quadrature(&state, &params).unwrap().value;
    let quad_shifted = classical_entropy_quadrature(&state, &shifted_params)
        .unwrap()
        .value;
    let cell_quad_dev = (quad - quad_shifted - cell_factor.ln()).abs();

    let doubled_params = ModelParams::new(1.0, 10.0f64.sqrt(), 0.6).unwrap();
    let doubled_state = reference_state(&doubled_params);
    let closed_doubled = classical_entropy_closed_form(&doubled_state, &doubled_params)
        .unwrap()
        .value;
    let closed_ln2_dev = (closed_doubled - closed - LN_2).abs();
    let quad_doubled = classical_entropy_quadrature(&doubled_state, &doubled_params)
        .unwrap()
        .value;
    let quad_ln2_dev = (quad_doubled - quad - LN_2).abs();
    let wkb = wkb_entropy(&state, &params).unwrap().value;
    let wkb_doubled = wkb_entropy(&doubled_state, &doubled_params).unwrap().value;
    let wkb_ln2_dev = (wkb_doubled - wkb - LN_2).abs();

    let torus = entropy_knn(
        &sample_torus(&state, &params, 400_000, BAND_SEED).unwrap(),
        params.delta_cell,
        KNN_K,
    )
    .unwrap()
    .value;
    let torus_doubled = entropy_knn(
        &sample_torus(&doubled_state, &doubled_params, 400_000, BAND_SEED).unwrap(),
        doubled_params.delta_cell,
        KNN_K,
    )
    .unwrap()
    .value;
    let torus_ln2_dev = (torus_doubled - torus - LN_2).abs();

    let doubled_quantum = StateSpec::from_quanta(20, 63, &doubled_params).unwrap();
    let doubled_rdm = reduced_density_kernel(&doubled_quantum, &doubled_params, &grid).unwrap();
    let kernel = spectrum.entropy;
    let kernel_doubled = doubled_rdm.schmidt_spectrum().unwrap().entropy;
    let kernel_gap = (kernel - closed).abs();
    let kernel_doubled_gap = (kernel_doubled - closed_doubled).abs();
    let kernel_ln2_dev = (kernel_doubled - kernel - LN_2).abs();

    let elapsed = start.elapsed().as_secs_f64();
    let pass = orthogonality < 1e-15
        && drift <= tol::SECULAR_DRIFT_REL
        && mass_dev <= tol::MARGINAL_MASS_DEV
        && trace_dev <= tol::TRACE_DEV
        && min_probability >= tol::SPECTRUM_FLOOR
        && lambda_mass_dev <= tol::LAMBDA_MASS_DEV
        && cell_closed_dev <= tol::EXACT_IDENTITY
        && closed_ln2_dev <= tol::EXACT_IDENTITY
        && wkb_ln2_dev <= tol::EXACT_IDENTITY
        && torus_ln2_dev <= 2.0 * tol::TORUS_MC_NATS
        && kernel_ln2_dev <= 2.0 * tol::KERNEL_NATS
        && elapsed < 60.0;
    println!(
        "criterion 6: {}  |alpha^2 + beta^2 - 1| = {orthogonality:.1e}; secular drift = \
         {drift:.2e}; marginal mass dev = {mass_dev:.2e}; trace dev = {trace_dev:.2e}; min \
         eigenvalue = {min_probability:.1e}; band mass dev = {lambda_mass_dev:.2e}; cell-shift \
         dev = {cell_closed_dev:.1e} (quadrature {cell_quad_dev:.1e}); ln 2 shift devs: closed \
         {closed_ln2_dev:.1e}, quadrature {quad_ln2_dev:.1e}, wkb {wkb_ln2_dev:.1e}, torus \
         {torus_ln2_dev:.3}, kernel {kernel_ln2_dev:.3}; {elapsed:.1} s",
        verdict(pass),
    );
    assert!(orthogonality < 1e-15);
    assert!(drift <= tol::SECULAR_DRIFT_REL);
    assert!(mass_dev <= tol::MARGINAL_MASS_DEV);
    assert!(trace_dev <= tol::TRACE_DEV);
    assert!(min_probability >= tol::SPECTRUM_FLOOR);
    assert!(lambda_mass_dev <= tol::LAMBDA_MASS_DEV);
    assert!(cell_closed_dev <= tol::EXACT_IDENTITY);
    assert!(cell_quad_dev <= 2.0 * tol::QUADRATURE_NATS);
    assert!(closed_ln2_dev <= tol::EXACT_IDENTITY);
    assert!(quad_ln2_dev <= 2.0 * tol::QUADRATURE_NATS);
    assert!(wkb_ln2_dev <= tol::EXACT_IDENTITY);
    assert!(torus_ln2_dev <= 2.0 * tol::TORUS_MC_NATS);
    assert!(kernel_gap <= tol::KERNEL_NATS);
    assert!(kernel_doubled_gap <= tol::KERNEL_NATS);
    assert!(kernel_ln2_dev <= 2.0 * tol::KERNEL_NATS);
    assert!(elapsed < 60.0, "invariants suite took {elapsed:.1} s");
}

#[test]
fn acceptance_7_wkb_wavefunction_and_entropy_are_faithful() {
    let wkb_state = WkbState::new(50, 1.0, 1.0).unwrap();
    let wave = wkb_wavefunction(&wkb_state);
    let x_max = 0.9 * wkb_state.x_turn();
    let points = 20_001;
    let dx = 2.0 * x_max / (points - 1) as f64;
    let mut overlap = 0.0;
    let mut norm_wkb = 0.0;
    let mut norm_exact = 0.0;
    for i in 0..points {
        let x = -x_max + i as f64 * dx;
        let w = wave.evaluate(x).unwrap();
        let h = hermite_function(50, x);
        overlap += w * h * dx;
        norm_wkb += w * w * dx;
        norm_exact += h * h * dx;
    }
    let fidelity = overlap.abs() / (norm_wkb * norm_exact).sqrt();

    let params = reference_params();
    let state = reference_state(&params);
    let identity_dev = (wkb_entropy(&state, &params).unwrap().value
        - classical_entropy_closed_form(&state, &params).unwrap().value)
        .abs();

    let pass = fidelity >= tol::OVERLAP_MIN && identity_dev <= tol::EXACT_IDENTITY;
    println!(
        "criterion 7: {}  interior overlap at n = 50 is {fidelity:.9} (wanted >= {}), \
         wkb vs closed-form entropy differs by {identity_dev:.1e} (tolerance {:.0e})",
        verdict(pass),
        tol::OVERLAP_MIN,
        tol::EXACT_IDENTITY,
    );
    assert!(fidelity >= tol::OVERLAP_MIN);
    assert!(identity_dev <= tol::EXACT_IDENTITY);
}

#[test]
fn torus_gap_is_structural_not_statistical() {
    let params = reference_params();
    let state = reference_state(&params);
    let closed = classical_entropy_closed_form(&state, &params).unwrap().value;
    let mut gaps = Vec::new();
    for samples in [100_000u64, 400_000] {
        let set = sample_torus(&state, &params, samples, BAND_SEED).unwrap();
        let knn = entropy_knn(&set, params.delta_cell, KNN_K).unwrap();
        assert!(knn.uncertainty.unwrap() < 0.01);
        gaps.push(knn.value - closed);
    }
    println!(
        "torus gap vs closed form: {:+.4} at 1e5 samples, {:+.4} at 4e5 samples",
        gaps[0], gaps[1],
    );
    for gap in &gaps {
        assert!(
            (0.35..=0.60).contains(gap),
            "torus gap {gap:+.4} left the structural band [0.35, 0.60]"
        );
    }
    assert!(
        (gaps[0] - gaps[1]).abs() <= 0.08,
        "a statistical artifact would halve between 1e5 and 4e5 samples; the measured \
         drift {:+.4} -> {:+.4} is slow",
        gaps[0],
        gaps[1],
    );
}

#[test]
fn band_sampled_control_validates_the_estimator() {
    let params = reference_params();
    let state = reference_state(&params);
    let closed = classical_entropy_closed_form(&state, &params).unwrap().value;
    let control = entropy_knn(
        &sample_band(&state, &params, 200_000, BAND_SEED).unwrap(),
        params.delta_cell,
        KNN_K,
    )
    .unwrap()
    .value;
    let torus = entropy_knn(
        &sample_torus(&state, &params, 200_000, BAND_SEED).unwrap(),
        params.delta_cell,
        KNN_K,
    )
    .unwrap()
    .value;
    let control_gap = control - closed;
    let torus_gap = torus - closed;
    println!(
        "estimator control: band-sampled gap = {control_gap:+.4}, torus-sampled gap = \
         {torus_gap:+.4}"
    );
    assert!(
        control_gap.abs() <= 0.15,
        "the k-NN estimator on band-distributed samples should sit near the closed form, \
         got {control_gap:+.4}"
    );
    assert!(
        torus_gap - control_gap >= 0.2,
        "most of the torus gap should come from the distribution, not the estimator"
    );
}

#[test]
fn trajectory_gap_sits_in_a_stable_band() {
    let params = reference_params();
    let state = reference_state(&params);
    let nm = normal_modes(&params).unwrap();
    let closed = classical_entropy_closed_form(&state, &params).unwrap().value;
    let p0 = torus_phase_point(&state, &params, 1.0, 2.0).unwrap();
    let run = oscillent::classical::integrate_trajectory(
        &p0,
        &params,
        0.01 / nm.omega2,
        TRAJECTORY_STEPS,
        TRAJECTORY_STRIDE,
    )
    .unwrap();
    assert_eq!(
        run.samples.x.len(),
        (TRAJECTORY_STEPS / TRAJECTORY_STRIDE + 1) as usize
    );
    let gap = entropy_knn(&run.samples, params.delta_cell, KNN_K)
        .unwrap()
        .value
        - closed;
    println!("trajectory gap vs closed form: {gap:+.4} at 1e6 steps");
    assert!(
        (0.5..=0.8).contains(&gap),
        "trajectory gap {gap:+.4} left its structural band [0.5, 0.8]"
    );
}

#[test]
fn ground_kernel_matches_the_exact_gaussian_entropy() {
    let params = ModelParams::new(1.0, 5.0, 0.5).unwrap();
    let exact = ground_state_exact(&params).unwrap();
    let kernel = ground_kernel_entropy(&params);
    let rel_dev = (kernel / exact.entropy - 1.0).abs();

    let state = StateSpec::from_quanta(0, 0, &params).unwrap();
    let nm = normal_modes(&params).unwrap();
    let grid = Grid::for_mode(0, nm.omega1, params.hbar).unwrap();
    let rdm = reduced_density_kernel(&state, &params, &grid).unwrap();
    let spectrum = rdm.schmidt_spectrum().unwrap();
    let lambda2 = spectrum.probabilities[1];
    let predicted = exact.pair_weight * (1.0 - exact.pair_weight);
    let pair_dev = (lambda2 / predicted - 1.0).abs();

    println!(
        "ground state: kernel S = {kernel:.6e}, exact Gaussian S = {:.6e} (rel dev \
         {rel_dev:.1e}); second eigenvalue {lambda2:.4e} vs q(1 - q) = {predicted:.4e} \
         (rel dev {pair_dev:.1e})",
        exact.entropy,
    );
    assert!(
        rel_dev <= 1e-3,
        "kernel should reproduce the exact Gaussian reduced entropy, deviation {rel_dev:.2e}"
    );
    assert!(
        (binary_entropy(exact.pair_weight) / exact.entropy - 1.0).abs() <= 1e-3,
        "to leading order the exact entropy is the binary entropy of the pair weight"
    );
    assert!(
        pair_dev <= 5e-3,
        "the second kernel eigenvalue should match the exact Gaussian pair probability, \
         got relative deviation {pair_dev:.2e}"
    );
}

#[test]
fn ground_deviation_is_coupling_independent() {
    let mut deviations = Vec::new();
    for coupling in [0.5, 0.25] {
        let params = ModelParams::new(1.0, 5.0, coupling).unwrap();
        let small_c = ground_state_entropy_small_c(&params).unwrap();
        let kernel = ground_kernel_entropy(&params);
        deviations.push(kernel / small_c.value - 1.0);
    }
    println!(
        "ground-state deviation from the binary formula: {:+.4} at C = 0.5, {:+.4} at \
         C = 0.25",
        deviations[0], deviations[1],
    );
    for dev in &deviations {
        assert!(
            (-0.35..=-0.20).contains(dev),
            "deviation {dev:+.4} left the band [-0.35, -0.20]"
        );
    }
    let ratio = deviations[0] / deviations[1];
    assert!(
        (0.8..=1.25).contains(&ratio),
        "the deviation should be nearly independent of C, got ratio {ratio:.3}"
    );
}

#[test]
fn schmidt_total_variation_sits_in_a_stable_band() {
    for (n, m, coupling) in [(20u32, 63u32, 0.3), (40, 126, 0.15)] {
        let params = ModelParams::new(1.0, 10.0f64.sqrt(), coupling).unwrap();
        let state = StateSpec::from_quanta(n, m, &params).unwrap();
        let nm = normal_modes(&params).unwrap();
        let grid = Grid::for_mode(state.n, nm.omega1, params.hbar).unwrap();
        let rdm = reduced_density_kernel(&state, &params, &grid).unwrap();
        let spectrum = rdm.schmidt_spectrum().unwrap();
        let band = lambda_spectrum(&state, &params).unwrap();
        let tv = arcsine_total_variation(&spectrum.probabilities, band.dn_max);
        println!("total variation vs arcsine bins at ({n}, {m}, C = {coupling}): {tv:.4}");
        assert!(
            (0.17..=0.23).contains(&tv),
            "total variation {tv:.4} left its stable band [0.17, 0.23]"
        );
    }
}
