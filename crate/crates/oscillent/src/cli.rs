//! Command-line front end. Every subcommand resolves its settings from
//! built-in defaults, then an optional `key = value` config file, then
//! flags, in that order of increasing precedence; runs one engine (or
//! all of them for `compare`); and prints either aligned text or JSON.
//!
//! Exit codes: 0 on success, 1 on any parse or computation error, 2
//! when `--strict` is set and the parameters sit outside the validated
//! regime.

use crate::cache::CacheDir;
use crate::classical::{
    classical_entropy_closed_form, classical_entropy_quadrature, entropy_knn,
    integrate_trajectory, sample_torus, torus_phase_point, DriftReport, EntropyMethod,
};
use crate::config::ConfigFile;
use crate::error::{OscillentError, Result};
use crate::model::{
    normal_modes, validate_regime, ModelParams, NormalModes, RegimeReport, StateSpec,
};
use crate::quantum::{ground_state_entropy_small_c, ground_state_exact, reduced_density_kernel};
use crate::report::{compare_report, kernel_grid, CompareOptions, EntropyRecord};
use crate::svg;
use crate::wkb::{lambda_spectrum, wkb_entropy, wkb_reduced_density_with, DEFAULT_OFFSETS};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

const DEFAULT_OMEGA: f64 = 1.0;
const DEFAULT_BIG_OMEGA_SQ: f64 = 10.0;
const DEFAULT_COUPLING: f64 = 0.3;
const DEFAULT_HBAR: f64 = 1.0;
const DEFAULT_E1: f64 = 20.0;
const DEFAULT_E2: f64 = 200.0;
const DEFAULT_SAMPLES: u64 = 200_000;
const DEFAULT_SEED: u64 = 1;
const DEFAULT_SWEEP_POINTS: usize = 10;
const TRAJECTORY_STRIDE: u64 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "oscillent",
    version,
    about = "Entanglement entropy laboratory for two weakly coupled oscillators"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normal-mode rotation and frequencies.
    Modes(CommonArgs),
    /// Classical marginal-distribution entropy, one route or all.
    Classical(CommonArgs),
    /// Exact reduced-density-kernel entropy and Schmidt spectrum.
    Quantum(CommonArgs),
    /// Semiclassical band entropy; `--method assembled` adds the kernel.
    Wkb(CommonArgs),
    /// Ground-state entanglement entropy, closed forms and kernel.
    Ground(CommonArgs),
    /// Every entropy route side by side with pairwise deltas and verdicts.
    Compare(CommonArgs),
    /// Vary one parameter and tabulate entropies as CSV.
    Sweep(SweepArgs),
    /// Integrate one trajectory and report conservation drift.
    Trajectory(CommonArgs),
}

#[derive(Args, Debug, Default, Clone)]
struct CommonArgs {
    /// Slow oscillator frequency omega.
    #[arg(long)]
    omega: Option<f64>,
    /// Fast oscillator frequency Omega (must be >= omega).
    #[arg(long = "Omega")]
    big_omega: Option<f64>,
    /// Bilinear coupling strength C.
    #[arg(long = "C")]
    coupling: Option<f64>,
    /// Reduced Planck constant.
    #[arg(long)]
    hbar: Option<f64>,
    /// Minimal phase-space cell; defaults to pi * hbar.
    #[arg(long = "delta-cell")]
    delta_cell: Option<f64>,
    /// Slow-mode quantum number (alternative to --E1/--E2).
    #[arg(long)]
    n: Option<u32>,
    /// Fast-mode quantum number (alternative to --E1/--E2).
    #[arg(long)]
    m: Option<u32>,
    /// Slow-mode energy.
    #[arg(long = "E1")]
    e1: Option<f64>,
    /// Fast-mode energy.
    #[arg(long = "E2")]
    e2: Option<f64>,
    /// Route selector where a command offers several.
    #[arg(long)]
    method: Option<String>,
    /// Monte Carlo sample count (and trajectory retention count).
    #[arg(long)]
    samples: Option<u64>,
    /// RNG seed for the stochastic routes.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the kernel grid node count.
    #[arg(long = "grid-points")]
    grid_points: Option<usize>,
    /// Concurrent sweep points.
    #[arg(long)]
    jobs: Option<usize>,
    /// Treat regime violations as failures (exit code 2).
    #[arg(long)]
    strict: bool,
    /// Emit machine-readable JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Output path; an extensionless path or directory gets a file set.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat `key = value` file supplying any of the above settings.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Parameter to vary: C, omega, Omega, hbar, delta-cell, E1, or E2.
    #[arg(long)]
    vary: Option<String>,
    /// First value of the varied parameter.
    #[arg(long)]
    from: Option<f64>,
    /// Last value of the varied parameter.
    #[arg(long)]
    to: Option<f64>,
    /// Number of sweep points (at least 2).
    #[arg(long)]
    points: Option<usize>,
}

/// How the eigenstate was specified, kept so sweeps can rebuild it
/// against the varied parameters.
#[derive(Debug, Clone, Copy)]
enum StateInput {
    Quanta(u32, u32),
    Energies(f64, f64),
}

impl StateInput {
    fn build(&self, params: &ModelParams) -> Result<StateSpec> {
        match *self {
            StateInput::Quanta(n, m) => StateSpec::from_quanta(n, m, params),
            StateInput::Energies(e1, e2) => StateSpec::from_energies(e1, e2, params),
        }
    }
}

/// Fully resolved settings for one invocation.
#[derive(Debug)]
struct Resolved {
    params: ModelParams,
    state: StateSpec,
    state_input: StateInput,
    method: Option<String>,
    samples: u64,
    seed: u64,
    grid_points: Option<usize>,
    jobs: usize,
    strict: bool,
    json: bool,
    out: Option<PathBuf>,
}

fn pick<T: Copy>(flag: Option<T>, file: Result<Option<T>>, default: T) -> Result<T> {
    Ok(flag.or(file?).unwrap_or(default))
}

fn resolve(common: &CommonArgs) -> Result<Resolved> {
    let file = match &common.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };

    let omega = pick(common.omega, file.get_parsed("omega"), DEFAULT_OMEGA)?;
    let big_omega = pick(
        common.big_omega,
        file.get_parsed("Omega"),
        DEFAULT_BIG_OMEGA_SQ.sqrt(),
    )?;
    let coupling = pick(common.coupling, file.get_parsed("C"), DEFAULT_COUPLING)?;
    let hbar = pick(common.hbar, file.get_parsed("hbar"), DEFAULT_HBAR)?;
    let delta_cell = match common.delta_cell {
        Some(v) => Some(v),
        None => file.get_parsed("delta-cell")?,
    };
    let params = ModelParams::with_hbar_and_cell(omega, big_omega, coupling, hbar, delta_cell)?;

    let flag_quanta = common.n.is_some() || common.m.is_some();
    let flag_energy = common.e1.is_some() || common.e2.is_some();
    if flag_quanta && flag_energy {
        return Err(OscillentError::Config(
            "give the state as quantum numbers (--n/--m) or as energies (--E1/--E2), not both"
                .into(),
        ));
    }
    let file_n: Option<u32> = file.get_parsed("n")?;
    let file_m: Option<u32> = file.get_parsed("m")?;
    let file_e1: Option<f64> = file.get_parsed("E1")?;
    let file_e2: Option<f64> = file.get_parsed("E2")?;
    let state_input = if flag_quanta {
        StateInput::Quanta(
            common.n.or(file_n).unwrap_or(0),
            common.m.or(file_m).unwrap_or(0),
        )
    } else if flag_energy {
        StateInput::Energies(
            common.e1.or(file_e1).unwrap_or(DEFAULT_E1),
            common.e2.or(file_e2).unwrap_or(DEFAULT_E2),
        )
    } else if file_n.is_some() || file_m.is_some() {
        if file_e1.is_some() || file_e2.is_some() {
            return Err(OscillentError::Config(
                "config file sets both quantum numbers (n/m) and energies (E1/E2); keep one"
                    .into(),
            ));
        }
        StateInput::Quanta(file_n.unwrap_or(0), file_m.unwrap_or(0))
    } else if file_e1.is_some() || file_e2.is_some() {
        StateInput::Energies(
            file_e1.unwrap_or(DEFAULT_E1),
            file_e2.unwrap_or(DEFAULT_E2),
        )
    } else {
        StateInput::Energies(DEFAULT_E1, DEFAULT_E2)
    };
    let state = state_input.build(&params)?;

    let default_jobs = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    Ok(Resolved {
        params,
        state,
        state_input,
        method: common.method.clone().or(file.get("method").map(String::from)),
        samples: pick(common.samples, file.get_parsed("samples"), DEFAULT_SAMPLES)?,
        seed: pick(common.seed, file.get_parsed("seed"), DEFAULT_SEED)?,
        grid_points: match common.grid_points {
            Some(v) => Some(v),
            None => file.get_parsed("grid-points")?,
        },
        jobs: pick(common.jobs, file.get_parsed("jobs"), default_jobs)?.max(1),
        strict: common.strict || file.get_parsed("strict")?.unwrap_or(false),
        json: common.json || file.get_parsed("json")?.unwrap_or(false),
        out: common
            .out
            .clone()
            .or_else(|| file.get("out").map(PathBuf::from)),
    })
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let (common, sweep_args) = match &cli.command {
        Command::Sweep(args) => (&args.common, Some(args)),
        Command::Modes(c)
        | Command::Classical(c)
        | Command::Quantum(c)
        | Command::Wkb(c)
        | Command::Ground(c)
        | Command::Compare(c)
        | Command::Trajectory(c) => (c, None),
    };
    let resolved = resolve(common)?;

    let regime = validate_regime(&resolved.params, &resolved.state);
    if resolved.strict && !regime.all_ok() {
        eprintln!("regime violations at these parameters:");
        for (flag, ok) in [
            ("weak coupling", regime.weak_coupling_ok),
            ("classicality", regime.classicality_ok),
            ("energy hierarchy", regime.hierarchy_ok),
            ("positive entropy argument", regime.entropy_positive),
        ] {
            if !ok {
                eprintln!("  - {flag} fails");
            }
        }
        return Ok(2);
    }

    match &cli.command {
        Command::Modes(_) => cmd_modes(&resolved, &regime)?,
        Command::Classical(_) => cmd_classical(&resolved, &regime)?,
        Command::Quantum(_) => cmd_quantum(&resolved, &regime)?,
        Command::Wkb(_) => cmd_wkb(&resolved, &regime)?,
        Command::Ground(_) => cmd_ground(&resolved)?,
        Command::Compare(_) => cmd_compare(&resolved)?,
        Command::Sweep(_) => cmd_sweep(&resolved, sweep_args.expect("matched above"))?,
        Command::Trajectory(_) => cmd_trajectory(&resolved, &regime)?,
    }
    Ok(0)
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    command: &'static str,
    params: ModelParams,
    state: StateSpec,
    regime: RegimeReport,
    result: T,
}

fn deliver(resolved: &Resolved, text: String, json: String) -> Result<()> {
    let payload = if resolved.json { json } else { text };
    match &resolved.out {
        None => print!("{payload}"),
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(path, payload)?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn cmd_modes(resolved: &Resolved, regime: &RegimeReport) -> Result<()> {
    let modes = normal_modes(&resolved.params)?;
    let mut text = String::new();
    let _ = writeln!(text, "alpha      = {:.9}", modes.alpha);
    let _ = writeln!(text, "beta       = {:.9}", modes.beta);
    let _ = writeln!(text, "omega1     = {:.9}  (slow mode)", modes.omega1);
    let _ = writeln!(text, "omega2     = {:.9}  (fast mode)", modes.omega2);
    let _ = writeln!(text, "delta_freq = {:.9}", modes.delta_freq);
    let json = to_json(&Envelope::<NormalModes> {
        command: "modes",
        params: resolved.params.clone(),
        state: resolved.state.clone(),
        regime: regime.clone(),
        result: modes,
    });
    deliver(resolved, text, json)
}

fn format_record(text: &mut String, record: &EntropyRecord) {
    let _ = write!(text, "{:<24} S = {:.9} nats", record.route, record.value);
    if let Some(u) = record.uncertainty {
        let _ = write!(text, " +- {u:.2e}");
    }
    if let Some(s) = record.samples {
        let _ = write!(text, "  (samples = {s}");
        if let Some(seed) = record.seed {
            let _ = write!(text, ", seed = {seed}");
        }
        let _ = write!(text, ")");
    }
    let _ = writeln!(text);
    for w in &record.warnings {
        let _ = writeln!(text, "    warning: {w}");
    }
}

fn torus_samples_cached(resolved: &Resolved) -> Result<crate::classical::SampleSet> {
    let cache = CacheDir::resolve(None);
    let p = &resolved.params;
    let s = &resolved.state;
    let key = format!(
        "torus omega={:?} Omega={:?} C={:?} hbar={:?} delta={:?} e1={:?} e2={:?} samples={} seed={} v1",
        p.omega, p.big_omega, p.coupling, p.hbar, p.delta_cell, s.e1, s.e2,
        resolved.samples, resolved.seed
    );
    if let Some(set) = cache.load_samples(&key)? {
        return Ok(set);
    }
    let set = sample_torus(s, p, resolved.samples, resolved.seed)?;
    cache.store_samples(&key, &set)?;
    Ok(set)
}

fn trajectory_result(resolved: &Resolved) -> Result<crate::classical::TrajectoryResult> {
    let nm = normal_modes(&resolved.params)?;
    let p0 = torus_phase_point(&resolved.state, &resolved.params, 1.0, 2.0)?;
    integrate_trajectory(
        &p0,
        &resolved.params,
        0.01 / nm.omega2,
        resolved.samples * TRAJECTORY_STRIDE,
        TRAJECTORY_STRIDE,
    )
}

fn cmd_classical(resolved: &Resolved, regime: &RegimeReport) -> Result<()> {
    let method = resolved.method.as_deref().unwrap_or("all");
    let mut records = Vec::new();
    if matches!(method, "closed-form" | "all") {
        records.push(EntropyRecord::from_result(
            "classical-closed-form",
            "classical",
            classical_entropy_closed_form(&resolved.state, &resolved.params)?,
        ));
    }
    if matches!(method, "quadrature" | "all") {
        records.push(EntropyRecord::from_result(
            "classical-quadrature",
            "classical",
            classical_entropy_quadrature(&resolved.state, &resolved.params)?,
        ));
    }
    if matches!(method, "torus-mc" | "all") {
        let samples = torus_samples_cached(resolved)?;
        records.push(EntropyRecord::from_result(
            "classical-torus-mc",
            "classical",
            entropy_knn(&samples, resolved.params.delta_cell, 4)?,
        ));
    }
    if matches!(method, "trajectory" | "all") {
        let trajectory = trajectory_result(resolved)?;
        let mut result = entropy_knn(&trajectory.samples, resolved.params.delta_cell, 4)?;
        result.method = EntropyMethod::Trajectory;
        let mut record = EntropyRecord::from_result("classical-trajectory", "classical", result);
        record.seed = None;
        records.push(record);
    }
    if records.is_empty() {
        return Err(OscillentError::Config(format!(
            "unknown classical method {method:?}; expected closed-form, quadrature, torus-mc, trajectory, or all"
        )));
    }

    let mut text = String::new();
    for record in &records {
        format_record(&mut text, record);
    }
    let json = to_json(&Envelope {
        command: "classical",
        params: resolved.params.clone(),
        state: resolved.state.clone(),
        regime: regime.clone(),
        result: records,
    });
    deliver(resolved, text, json)
}

#[derive(Serialize)]
struct QuantumSummary {
    entropy: f64,
    trace: f64,
    occupied: usize,
    flatness: f64,
    grid_points: usize,
    top_eigenvalues: Vec<f64>,
}

fn kernel_cached(resolved: &Resolved) -> Result<crate::quantum::ReducedDensityMatrix> {
    let grid = kernel_grid(&resolved.state, &resolved.params, resolved.grid_points)?;
    let cache = CacheDir::resolve(None);
    let p = &resolved.params;
    let s = &resolved.state;
    let key = format!(
        "kernel omega={:?} Omega={:?} C={:?} hbar={:?} n={} m={} e1={:?} e2={:?} grid={}x{:?} v1",
        p.omega, p.big_omega, p.coupling, p.hbar, s.n, s.m, s.e1, s.e2,
        grid.len(), grid.half_range
    );
    if let Some(rdm) = cache.load_kernel(&key, s)? {
        return Ok(rdm);
    }
    let rdm = reduced_density_kernel(s, p, &grid)?;
    cache.store_kernel(&key, &rdm)?;
    Ok(rdm)
}

fn cmd_quantum(resolved: &Resolved, regime: &RegimeReport) -> Result<()> {
    let rdm = kernel_cached(resolved)?;
    let spectrum = rdm.schmidt_spectrum()?;
    let summary = QuantumSummary {
        entropy: spectrum.entropy,
        trace: rdm.trace(),
        occupied: spectrum.occupied,
        flatness: spectrum.flatness,
        grid_points: rdm.grid.len(),
        top_eigenvalues: spectrum.probabilities.iter().copied().take(10).collect(),
    };

    let mut text = String::new();
    let _ = writeln!(text, "S           = {:.9} nats", summary.entropy);
    let _ = writeln!(text, "trace       = {:.9}", summary.trace);
    let _ = writeln!(text, "occupied    = {}", summary.occupied);
    let _ = writeln!(text, "flatness    = {:.6}", summary.flatness);
    let _ = writeln!(text, "grid points = {}", summary.grid_points);
    let _ = writeln!(text, "top eigenvalues:");
    for (i, lam) in summary.top_eigenvalues.iter().enumerate() {
        let _ = writeln!(text, "  lambda[{i}] = {lam:.9}");
    }
    let json = to_json(&Envelope {
        command: "quantum",
        params: resolved.params.clone(),
        state: resolved.state.clone(),
        regime: regime.clone(),
        result: summary,
    });
    deliver(resolved, text, json)
}

#[derive(Serialize)]
struct WkbSummary {
    closed_form: f64,
    quadrature: f64,
    band_half_width: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    assembled_kernel: Option<f64>,
    warnings: Vec<String>,
}

fn cmd_wkb(resolved: &Resolved, regime: &RegimeReport) -> Result<()> {
    let entropy = wkb_entropy(&resolved.state, &resolved.params)?;
    let assembled_kernel = match resolved.method.as_deref() {
        Some("assembled") => {
            let grid = kernel_grid(&resolved.state, &resolved.params, resolved.grid_points)?;
            let rdm = wkb_reduced_density_with(
                &resolved.state,
                &resolved.params,
                &grid,
                DEFAULT_OFFSETS,
            )?;
            Some(rdm.schmidt_spectrum()?.entropy)
        }
        Some("closed-form") | None => None,
        Some(other) => {
            return Err(OscillentError::Config(format!(
                "unknown wkb method {other:?}; expected closed-form or assembled"
            )))
        }
    };
    let summary = WkbSummary {
        closed_form: entropy.value,
        quadrature: entropy.quadrature,
        band_half_width: entropy.dn_max,
        assembled_kernel,
        warnings: entropy.warnings.clone(),
    };

    let mut text = String::new();
    let _ = writeln!(text, "S (closed form) = {:.9} nats", summary.closed_form);
    let _ = writeln!(text, "S (quadrature)  = {:.9} nats", summary.quadrature);
    let _ = writeln!(text, "dn_max          = {:.9}", summary.band_half_width);
    if let Some(s) = summary.assembled_kernel {
        let _ = writeln!(text, "S (assembled)   = {:.9} nats", s);
    }
    for w in &summary.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    let json = to_json(&Envelope {
        command: "wkb",
        params: resolved.params.clone(),
        state: resolved.state.clone(),
        regime: regime.clone(),
        result: summary,
    });
    deliver(resolved, text, json)
}

#[derive(Serialize)]
struct GroundSummary {
    mixing_fraction: f64,
    small_coupling_entropy: f64,
    exact_nu: f64,
    exact_pair_weight: f64,
    exact_entropy: f64,
    kernel_entropy: f64,
    kernel_grid_points: usize,
    warnings: Vec<String>,
}

fn cmd_ground(resolved: &Resolved) -> Result<()> {
    let params = &resolved.params;
    let small = ground_state_entropy_small_c(params)?;
    let exact = ground_state_exact(params)?;
    let state = StateSpec::from_quanta(0, 0, params)?;
    let grid = kernel_grid(&state, params, resolved.grid_points)?;
    let spectrum = reduced_density_kernel(&state, params, &grid)?.schmidt_spectrum()?;
    let summary = GroundSummary {
        mixing_fraction: small.mixing_fraction,
        small_coupling_entropy: small.value,
        exact_nu: exact.nu,
        exact_pair_weight: exact.pair_weight,
        exact_entropy: exact.entropy,
        kernel_entropy: spectrum.entropy,
        kernel_grid_points: grid.len(),
        warnings: small.warnings.clone(),
    };

    let mut text = String::new();
    let _ = writeln!(text, "mixing fraction f       = {:.9e}", summary.mixing_fraction);
    let _ = writeln!(text, "S (binary entropy of f) = {:.9e} nats", summary.small_coupling_entropy);
    let _ = writeln!(text, "S (exact Gaussian)      = {:.9e} nats", summary.exact_entropy);
    let _ = writeln!(text, "S (kernel)              = {:.9e} nats", summary.kernel_entropy);
    for w in &summary.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    let json = to_json(&Envelope {
        command: "ground",
        params: params.clone(),
        state: state.clone(),
        regime: validate_regime(params, &state),
        result: summary,
    });
    deliver(resolved, text, json)
}

fn dir_target(path: &Path) -> bool {
    path.is_dir() || path.extension().is_none()
}

fn cmd_compare(resolved: &Resolved) -> Result<()> {
    let options = CompareOptions {
        samples: resolved.samples,
        seed: resolved.seed,
        grid_points: resolved.grid_points,
        offsets: DEFAULT_OFFSETS,
    };
    let report = compare_report(&resolved.state, &resolved.params, &options)?;

    let mut text = String::new();
    let _ = writeln!(text, "entropy routes:");
    for record in &report.records {
        let mut line = String::new();
        format_record(&mut line, record);
        let _ = write!(text, "  {line}");
    }
    let _ = writeln!(text, "verdicts:");
    for v in &report.verdicts {
        let _ = writeln!(
            text,
            "  [{}] {:<34} delta = {:+.6} (tolerance {:.0e})",
            if v.pass { "pass" } else { "FAIL" },
            v.name,
            v.delta,
            v.tolerance
        );
    }
    let json = to_json(&report);

    match &resolved.out {
        Some(path) if dir_target(path) => {
            std::fs::create_dir_all(path)?;
            std::fs::write(path.join("report.json"), &json)?;
            let heatmap = svg::marginal_heatmap(&resolved.state, &resolved.params)?;
            std::fs::write(path.join("wx_heatmap.svg"), heatmap)?;
            let grid = kernel_grid(&resolved.state, &resolved.params, resolved.grid_points)?;
            let spectrum =
                reduced_density_kernel(&resolved.state, &resolved.params, &grid)?
                    .schmidt_spectrum()?;
            let band = lambda_spectrum(&resolved.state, &resolved.params)?;
            match svg::schmidt_spectrum_figure(&spectrum.probabilities, &band) {
                Some(figure) => std::fs::write(path.join("schmidt_spectrum.svg"), figure)?,
                None => eprintln!("warning: empty Schmidt spectrum, figure skipped"),
            }
            eprintln!("wrote {}", path.display());
            if !resolved.json {
                print!("{text}");
            }
            Ok(())
        }
        _ => deliver(resolved, text, json),
    }
}

#[derive(Serialize, Clone, Copy)]
struct SweepRow {
    value: f64,
    s_closed: f64,
    s_wkb: f64,
    s_kernel: f64,
}

#[derive(Serialize)]
struct SweepSummary {
    command: &'static str,
    vary: String,
    rows: Vec<SweepRow>,
}

fn sweep_point(resolved: &Resolved, vary: &str, value: f64) -> Result<SweepRow> {
    let base = &resolved.params;
    let params = match vary {
        "C" => ModelParams::with_hbar_and_cell(
            base.omega,
            base.big_omega,
            value,
            base.hbar,
            Some(base.delta_cell),
        )?,
        "omega" => ModelParams::with_hbar_and_cell(
            value,
            base.big_omega,
            base.coupling,
            base.hbar,
            Some(base.delta_cell),
        )?,
        "Omega" => ModelParams::with_hbar_and_cell(
            base.omega,
            value,
            base.coupling,
            base.hbar,
            Some(base.delta_cell),
        )?,
        "hbar" => {
            ModelParams::with_hbar_and_cell(base.omega, base.big_omega, base.coupling, value, None)?
        }
        "delta-cell" => base.clone().with_delta_cell(value)?,
        "E1" | "E2" => base.clone(),
        other => {
            return Err(OscillentError::Config(format!(
                "cannot vary {other:?}; expected C, omega, Omega, hbar, delta-cell, E1, or E2"
            )))
        }
    };
    let state = match (vary, resolved.state_input) {
        ("E1", StateInput::Energies(_, e2)) => StateSpec::from_energies(value, e2, &params)?,
        ("E2", StateInput::Energies(e1, _)) => StateSpec::from_energies(e1, value, &params)?,
        ("E1" | "E2", StateInput::Quanta(..)) => {
            return Err(OscillentError::Config(
                "cannot vary E1/E2 when the state is given as quantum numbers".into(),
            ))
        }
        (_, input) => input.build(&params)?,
    };

    let s_closed = classical_entropy_closed_form(&state, &params)?.value;
    let s_wkb = wkb_entropy(&state, &params)?.value;
    let grid = kernel_grid(&state, &params, resolved.grid_points)?;
    let s_kernel = reduced_density_kernel(&state, &params, &grid)?
        .schmidt_spectrum()?
        .entropy;
    Ok(SweepRow {
        value,
        s_closed,
        s_wkb,
        s_kernel,
    })
}

fn cmd_sweep(resolved: &Resolved, args: &SweepArgs) -> Result<()> {
    let file = match &args.common.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let vary = args
        .vary
        .clone()
        .or_else(|| file.get("vary").map(String::from))
        .ok_or_else(|| OscillentError::Config("sweep needs --vary".into()))?;
    let from = pick(args.from, file.get_parsed("from"), f64::NAN)?;
    let to = pick(args.to, file.get_parsed("to"), f64::NAN)?;
    if !from.is_finite() || !to.is_finite() {
        return Err(OscillentError::Config(
            "sweep needs finite --from and --to".into(),
        ));
    }
    let points = pick(args.points, file.get_parsed("points"), DEFAULT_SWEEP_POINTS)?;
    if points < 2 {
        return Err(OscillentError::Config(format!(
            "sweep needs at least 2 points, got {points}"
        )));
    }

    let values: Vec<f64> = (0..points)
        .map(|i| from + (to - from) * i as f64 / (points - 1) as f64)
        .collect();

    let jobs = resolved.jobs.min(points);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<Result<SweepRow>>>> =
        (0..points).map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= points {
                    break;
                }
                let row = sweep_point(resolved, &vary, values[i]);
                *slots[i].lock().expect("no panics while held") = Some(row);
            });
        }
    });
    let mut rows = Vec::with_capacity(points);
    for slot in slots {
        rows.push(slot.into_inner().expect("scope joined").expect("slot filled")?);
    }

    let mut csv = format!("{vary},s_closed,s_wkb,s_kernel\n");
    for row in &rows {
        let _ = writeln!(
            csv,
            "{:?},{:?},{:?},{:?}",
            row.value, row.s_closed, row.s_wkb, row.s_kernel
        );
    }
    let summary = SweepSummary {
        command: "sweep",
        vary: vary.clone(),
        rows: rows.clone(),
    };
    let json = to_json(&summary);

    match &resolved.out {
        Some(path) if dir_target(path) => {
            std::fs::create_dir_all(path)?;
            std::fs::write(path.join("sweep.csv"), &csv)?;
            if vary == "C" {
                let points: Vec<svg::CouplingPoint> = rows
                    .iter()
                    .map(|r| svg::CouplingPoint {
                        coupling: r.value,
                        s_closed: r.s_closed,
                        s_wkb: r.s_wkb,
                        s_kernel: r.s_kernel,
                    })
                    .collect();
                match svg::entropy_vs_log_coupling(&points) {
                    Some(figure) => {
                        std::fs::write(path.join("entropy_vs_coupling.svg"), figure)?
                    }
                    None => eprintln!("warning: empty sweep, figure skipped"),
                }
            }
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        _ => deliver(resolved, csv, json),
    }
}

#[derive(Serialize)]
struct TrajectorySummary {
    dt: f64,
    n_steps: u64,
    stride: u64,
    drift: DriftReport,
    entropy: EntropyRecord,
}

fn cmd_trajectory(resolved: &Resolved, regime: &RegimeReport) -> Result<()> {
    let trajectory = trajectory_result(resolved)?;
    let mut result = entropy_knn(&trajectory.samples, resolved.params.delta_cell, 4)?;
    result.method = EntropyMethod::Trajectory;
    let mut record = EntropyRecord::from_result("classical-trajectory", "classical", result);
    record.seed = None;
    let summary = TrajectorySummary {
        dt: trajectory.dt,
        n_steps: trajectory.n_steps,
        stride: trajectory.stride,
        drift: trajectory.drift,
        entropy: record,
    };

    let mut text = String::new();
    let _ = writeln!(text, "dt                  = {:.6e}", summary.dt);
    let _ = writeln!(text, "steps               = {}", summary.n_steps);
    let _ = writeln!(text, "stride              = {}", summary.stride);
    let _ = writeln!(
        text,
        "E+ drift (max rel)  = {:.3e}",
        summary.drift.e_plus_max_rel
    );
    let _ = writeln!(
        text,
        "E+ drift (secular)  = {:.3e}",
        summary.drift.e_plus_secular_rel
    );
    let _ = writeln!(
        text,
        "E- drift (max rel)  = {:.3e}",
        summary.drift.e_minus_max_rel
    );
    let _ = writeln!(
        text,
        "E- drift (secular)  = {:.3e}",
        summary.drift.e_minus_secular_rel
    );
    format_record(&mut text, &summary.entropy);
    let json = to_json(&Envelope {
        command: "trajectory",
        params: resolved.params.clone(),
        state: resolved.state.clone(),
        regime: regime.clone(),
        result: summary,
    });
    deliver(resolved, text, json)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(args).unwrap()
    }

    fn common(cli: &Cli) -> &CommonArgs {
        match &cli.command {
            Command::Modes(c)
            | Command::Classical(c)
            | Command::Quantum(c)
            | Command::Wkb(c)
            | Command::Ground(c)
            | Command::Compare(c)
            | Command::Trajectory(c) => c,
            Command::Sweep(s) => &s.common,
        }
    }

    #[test]
    fn defaults_resolve_to_the_reference_point() {
        let cli = parse(&["oscillent", "compare"]);
        let resolved = resolve(common(&cli)).unwrap();
        assert_eq!(resolved.params.omega, 1.0);
        assert!((resolved.params.big_omega.powi(2) - 10.0).abs() < 1e-12);
        assert_eq!(resolved.params.coupling, 0.3);
        assert_eq!(resolved.state.n, 20);
        assert_eq!(resolved.state.m, 63);
        assert_eq!(resolved.samples, DEFAULT_SAMPLES);
        assert_eq!(resolved.seed, DEFAULT_SEED);
        assert!(!resolved.strict);
    }

    #[test]
    fn flags_override_config_file_which_overrides_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "C = 0.15\nsamples = 1000\nseed = 9\n").unwrap();
        let cli = parse(&[
            "oscillent",
            "classical",
            "--config",
            path.to_str().unwrap(),
            "--C",
            "0.25",
        ]);
        let resolved = resolve(common(&cli)).unwrap();
        assert_eq!(resolved.params.coupling, 0.25);
        assert_eq!(resolved.samples, 1000);
        assert_eq!(resolved.seed, 9);
    }

    #[test]
    fn quanta_flags_suppress_config_energies() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "E1 = 50\nE2 = 500\n").unwrap();
        let cli = parse(&[
            "oscillent",
            "quantum",
            "--config",
            path.to_str().unwrap(),
            "--n",
            "12",
            "--m",
            "40",
        ]);
        let resolved = resolve(common(&cli)).unwrap();
        assert_eq!(resolved.state.n, 12);
        assert_eq!(resolved.state.m, 40);
    }

    #[test]
    fn mixing_quanta_and_energy_flags_is_rejected() {
        let cli = parse(&["oscillent", "quantum", "--n", "5", "--E2", "100"]);
        let err = resolve(common(&cli)).unwrap_err();
        assert!(err.to_string().contains("not both"));
    }

    #[test]
    fn sweep_rows_vary_the_requested_parameter() {
        let cli = parse(&["oscillent", "sweep"]);
        let resolved = resolve(common(&cli)).unwrap();
        let row_lo = sweep_point(&resolved, "C", 0.1).unwrap();
        let row_hi = sweep_point(&resolved, "C", 0.2).unwrap();
        let expected = (0.2f64 / 0.1).ln();
        assert!((row_hi.s_closed - row_lo.s_closed - expected).abs() < 1e-12);
        assert!((row_hi.s_wkb - row_lo.s_wkb - expected).abs() < 1e-12);
    }
}
