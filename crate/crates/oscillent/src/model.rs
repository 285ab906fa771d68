//! Core model: two unit-mass harmonic oscillators with a bilinear coupling,
//!
//! ```text
//! H = (px^2 + py^2)/2 + (omega^2 x^2 + Omega^2 y^2)/2 + C x y,
//! ```
//!
//! their exact normal-mode decomposition, conserved mode energies, and the
//! regime diagnostics that the entropy formulas rely on.

use crate::error::{OscillentError, Result};
use serde::{Deserialize, Serialize};

/// Physical parameters of the coupled pair. Mass is fixed to 1 for both
/// oscillators; `delta_cell` is the reference phase-space cell that makes
/// the classical entropy dimensionless.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Slow (x) oscillator frequency.
    pub omega: f64,
    /// Fast (y) oscillator frequency; must satisfy `Omega >= omega`.
    #[serde(rename = "Omega")]
    pub big_omega: f64,
    /// Bilinear coupling strength C.
    #[serde(rename = "C")]
    pub coupling: f64,
    /// Reduced Planck constant.
    pub hbar: f64,
    /// Minimal phase-space cell Delta; defaults to `pi * hbar` (= h/2).
    pub delta_cell: f64,
}

impl ModelParams {
    /// Builds a parameter set with `hbar = 1` and the default cell
    /// `delta_cell = pi * hbar`, validating positivity, the frequency
    /// ordering `Omega >= omega`, and the stability bound
    /// `C^2 < omega^2 Omega^2`.
    pub fn new(omega: f64, big_omega: f64, coupling: f64) -> Result<Self> {
        Self::with_hbar_and_cell(omega, big_omega, coupling, 1.0, None)
    }

    /// Full constructor. `delta_cell = None` selects the default
    /// `pi * hbar`.
    pub fn with_hbar_and_cell(
        omega: f64,
        big_omega: f64,
        coupling: f64,
        hbar: f64,
        delta_cell: Option<f64>,
    ) -> Result<Self> {
        for (name, v) in [("omega", omega), ("Omega", big_omega), ("hbar", hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(OscillentError::InvalidParams(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        if !coupling.is_finite() {
            return Err(OscillentError::InvalidParams(format!(
                "C must be finite, got {coupling}"
            )));
        }
        if big_omega < omega {
            return Err(OscillentError::InvalidParams(format!(
                "Omega = {big_omega} must be at least omega = {omega}; label the faster oscillator y"
            )));
        }
        let bound = omega * omega * big_omega * big_omega;
        if coupling * coupling >= bound {
            return Err(OscillentError::CouplingTooStrong {
                c_sq: coupling * coupling,
                bound,
            });
        }
        let delta_cell = delta_cell.unwrap_or(std::f64::consts::PI * hbar);
        if !(delta_cell.is_finite() && delta_cell > 0.0) {
            return Err(OscillentError::InvalidParams(format!(
                "delta_cell must be finite and positive, got {delta_cell}"
            )));
        }
        Ok(Self {
            omega,
            big_omega,
            coupling,
            hbar,
            delta_cell,
        })
    }

    /// Same parameters with a different phase cell.
    pub fn with_delta_cell(mut self, delta_cell: f64) -> Result<Self> {
        if !(delta_cell.is_finite() && delta_cell > 0.0) {
            return Err(OscillentError::InvalidParams(format!(
                "delta_cell must be finite and positive, got {delta_cell}"
            )));
        }
        self.delta_cell = delta_cell;
        Ok(self)
    }

    /// Total energy of a phase point under this Hamiltonian.
    pub fn hamiltonian(&self, p: &PhasePoint) -> f64 {
        0.5 * (p.px * p.px + p.py * p.py)
            + 0.5 * (self.omega * self.omega * p.x * p.x
                + self.big_omega * self.big_omega * p.y * p.y)
            + self.coupling * p.x * p.y
    }
}

/// Exact normal-mode rotation diagonalizing the coupled Hamiltonian:
/// `x1 = alpha x - beta y`, `x2 = beta x + alpha y` (same for momenta).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalModes {
    pub alpha: f64,
    pub beta: f64,
    /// Slow mode frequency, `omega1 <= omega`.
    pub omega1: f64,
    /// Fast mode frequency, `omega2 >= Omega`.
    pub omega2: f64,
    /// Frequency-squared splitting `sqrt((Omega^2 - omega^2)^2 + 4 C^2)`.
    pub delta_freq: f64,
}

/// Diagonalizes the quadratic form exactly. `beta` carries the sign of the
/// coupling (`beta >= 0` for `C > 0`), so `alpha * beta = C / delta_freq`
/// holds as an identity.
pub fn normal_modes(params: &ModelParams) -> Result<NormalModes> {
    let w2 = params.omega * params.omega;
    let big2 = params.big_omega * params.big_omega;
    let c = params.coupling;
    if c * c >= w2 * big2 {
        return Err(OscillentError::CouplingTooStrong {
            c_sq: c * c,
            bound: w2 * big2,
        });
    }
    let d = big2 - w2;
    let s = (d * d + 4.0 * c * c).sqrt();
    if s == 0.0 {
        // omega == Omega and C == 0: degenerate but trivially diagonal.
        return Ok(NormalModes {
            alpha: 1.0,
            beta: 0.0,
            omega1: params.omega,
            omega2: params.big_omega,
            delta_freq: 0.0,
        });
    }
    let omega1 = ((w2 + big2 - s) / 2.0).sqrt();
    let omega2 = ((w2 + big2 + s) / 2.0).sqrt();
    let alpha = ((1.0 + d / s) / 2.0).sqrt();
    let beta_mag = ((1.0 - d / s) / 2.0).sqrt();
    let beta = if c >= 0.0 { beta_mag } else { -beta_mag };
    Ok(NormalModes {
        alpha,
        beta,
        omega1,
        omega2,
        delta_freq: s,
    })
}

/// A point of the 4-dimensional phase space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: f64,
    pub y: f64,
    pub px: f64,
    pub py: f64,
}

impl PhasePoint {
    pub fn new(x: f64, y: f64, px: f64, py: f64) -> Result<Self> {
        for (name, v) in [("x", x), ("y", y), ("px", px), ("py", py)] {
            if !v.is_finite() {
                return Err(OscillentError::InvalidParams(format!(
                    "phase point component {name} must be finite, got {v}"
                )));
            }
        }
        Ok(Self { x, y, px, py })
    }
}

/// The same point expressed in normal-mode coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalPoint {
    pub x1: f64,
    pub p1: f64,
    pub x2: f64,
    pub p2: f64,
}

/// Rotates a phase point into normal-mode coordinates.
pub fn to_normal_coords(p: &PhasePoint, nm: &NormalModes) -> NormalPoint {
    NormalPoint {
        x1: nm.alpha * p.x - nm.beta * p.y,
        p1: nm.alpha * p.px - nm.beta * p.py,
        x2: nm.beta * p.x + nm.alpha * p.y,
        p2: nm.beta * p.px + nm.alpha * p.py,
    }
}

/// Inverse rotation, `x = alpha x1 + beta x2`, `y = -beta x1 + alpha x2`.
pub fn from_normal_coords(np: &NormalPoint, nm: &NormalModes) -> PhasePoint {
    PhasePoint {
        x: nm.alpha * np.x1 + nm.beta * np.x2,
        y: -nm.beta * np.x1 + nm.alpha * np.x2,
        px: nm.alpha * np.p1 + nm.beta * np.p2,
        py: -nm.beta * np.p1 + nm.alpha * np.p2,
    }
}

/// Energies of the two normal modes at a phase point.
pub fn mode_energies(p: &PhasePoint, nm: &NormalModes) -> (f64, f64) {
    let np = to_normal_coords(p, nm);
    let e1 = 0.5 * (np.p1 * np.p1 + nm.omega1 * nm.omega1 * np.x1 * np.x1);
    let e2 = 0.5 * (np.p2 * np.p2 + nm.omega2 * nm.omega2 * np.x2 * np.x2);
    (e1, e2)
}

/// The two conserved quantities `(E_plus, E_minus) = (E1 + E2, E2 - E1)`
/// of the integrable flow, evaluated exactly through the normal-mode
/// rotation. `E_plus` equals the Hamiltonian.
pub fn conserved_quantities(p: &PhasePoint, nm: &NormalModes) -> (f64, f64) {
    let (e1, e2) = mode_energies(p, nm);
    (e1 + e2, e2 - e1)
}

/// `E_minus` written directly as a quadratic form in the laboratory
/// coordinates; identical to `E2 - E1` and useful as a cross-check that the
/// rotation is consistent.
pub fn e_minus_quadratic(p: &PhasePoint, nm: &NormalModes) -> f64 {
    let (a, b) = (nm.alpha, nm.beta);
    let (w1sq, w2sq) = (nm.omega1 * nm.omega1, nm.omega2 * nm.omega2);
    2.0 * a * b * p.px * p.py
        + 0.5 * ((b * b * w2sq - a * a * w1sq) * p.x * p.x
            + (a * a * w2sq - b * b * w1sq) * p.y * p.y)
        + a * b * (w1sq + w2sq) * p.x * p.y
        + 0.5 * (a * a - b * b) * (p.py * p.py - p.px * p.px)
}

/// Time derivative of a phase point under the equations of motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseDeriv {
    pub dx: f64,
    pub dy: f64,
    pub dpx: f64,
    pub dpy: f64,
}

/// Right-hand side of Hamilton's equations:
/// `x' = px`, `y' = py`, `px' = -omega^2 x - C y`, `py' = -Omega^2 y - C x`.
pub fn eom_rhs(p: &PhasePoint, params: &ModelParams) -> PhaseDeriv {
    PhaseDeriv {
        dx: p.px,
        dy: p.py,
        dpx: -(params.omega * params.omega * p.x + params.coupling * p.y),
        dpy: -(params.big_omega * params.big_omega * p.y + params.coupling * p.x),
    }
}

/// Quantum numbers and mode energies of the eigenstate under study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateSpec {
    /// Slow-mode quantum number.
    pub n: u32,
    /// Fast-mode quantum number.
    pub m: u32,
    /// Slow-mode energy.
    pub e1: f64,
    /// Fast-mode energy.
    pub e2: f64,
    /// `e1 + e2`.
    pub e_plus: f64,
    /// `e2 - e1`.
    pub e_minus: f64,
}

impl StateSpec {
    /// Builds a state from the mode energies, assigning quantum numbers by
    /// the large-quantum-number bookkeeping `n = round(E1 / hbar omega)`,
    /// `m = round(E2 / hbar Omega)` with the bare frequencies.
    pub fn from_energies(e1: f64, e2: f64, params: &ModelParams) -> Result<Self> {
        for (name, v) in [("E1", e1), ("E2", e2)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(OscillentError::InvalidParams(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        let n = (e1 / (params.hbar * params.omega)).round();
        let m = (e2 / (params.hbar * params.big_omega)).round();
        if n > u32::MAX as f64 || m > u32::MAX as f64 {
            return Err(OscillentError::InvalidParams(
                "energies imply quantum numbers beyond u32".into(),
            ));
        }
        Ok(Self {
            n: n as u32,
            m: m as u32,
            e1,
            e2,
            e_plus: e1 + e2,
            e_minus: e2 - e1,
        })
    }

    /// Builds a state from the quantum numbers, assigning the exact
    /// eigenstate energies `E_i = (q_i + 1/2) hbar omega_i` with the
    /// normal-mode frequencies.
    pub fn from_quanta(n: u32, m: u32, params: &ModelParams) -> Result<Self> {
        let nm = normal_modes(params)?;
        let e1 = (n as f64 + 0.5) * params.hbar * nm.omega1;
        let e2 = (m as f64 + 0.5) * params.hbar * nm.omega2;
        Ok(Self {
            n,
            m,
            e1,
            e2,
            e_plus: e1 + e2,
            e_minus: e2 - e1,
        })
    }
}

/// Thresholds used by the regime diagnostics. `small` bounds ratios that
/// must be far below one, `large` bounds ratios that must be far above one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeThresholds {
    pub small: f64,
    pub large: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self {
            small: 0.2,
            large: 5.0,
        }
    }
}

/// The dimensionless ratios behind the regime flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeRatios {
    /// `C / (Omega^2 - omega^2)`: mode-mixing angle; weak coupling needs it small.
    pub coupling_to_frequency_gap: f64,
    /// `omega^2 / Omega^2`: frequency hierarchy; the marginal-density
    /// truncation needs it small.
    pub frequency_ratio_sq: f64,
    /// `E1 / (hbar Omega)`: slow-mode excitation above the fast quantum.
    pub excitation_slow: f64,
    /// `E2 / (hbar Omega)`: fast-mode excitation above the fast quantum.
    pub excitation_fast: f64,
    /// `C sqrt(E1 E2) / (hbar omega^2 Omega)`: number of strongly occupied
    /// Schmidt modes (up to a constant); classicality needs it large.
    pub schmidt_occupancy: f64,
    /// `2 C sqrt(E1 E2) / Omega^2 / min(E1, E2)`: energy spread of the
    /// Schmidt band relative to the smaller mode energy.
    pub band_spread_to_energy: f64,
    /// `pi^2 C sqrt(E1 E2) / (delta_cell omega Omega^2)`: argument of the
    /// closed-form entropy; positive entropy needs it above one.
    pub entropy_argument: f64,
}

/// Go/no-go summary of the asymptotic assumptions behind the closed forms.
/// Never fails; out-of-range inputs simply produce `false` flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub weak_coupling_ok: bool,
    pub classicality_ok: bool,
    pub hierarchy_ok: bool,
    pub entropy_positive: bool,
    pub ratios: RegimeRatios,
}

impl RegimeReport {
    pub fn all_ok(&self) -> bool {
        self.weak_coupling_ok && self.classicality_ok && self.hierarchy_ok && self.entropy_positive
    }

    /// Human-readable list of the violated conditions, empty when all pass.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if !self.weak_coupling_ok {
            v.push("weak coupling (C small against Omega^2 - omega^2, omega^2 small against Omega^2)");
        }
        if !self.classicality_ok {
            v.push("classicality (mode energies and Schmidt occupancy large against hbar scales)");
        }
        if !self.hierarchy_ok {
            v.push("hierarchy (Schmidt band energy spread small against the slow mode energy)");
        }
        if !self.entropy_positive {
            v.push("entropy argument above one (closed-form entropy would be negative)");
        }
        v
    }
}

/// Evaluates the regime diagnostics with the default thresholds.
pub fn validate_regime(params: &ModelParams, state: &StateSpec) -> RegimeReport {
    validate_regime_with(params, state, &RegimeThresholds::default())
}

/// Evaluates the regime diagnostics with caller-supplied thresholds.
pub fn validate_regime_with(
    params: &ModelParams,
    state: &StateSpec,
    th: &RegimeThresholds,
) -> RegimeReport {
    let w = params.omega;
    let big = params.big_omega;
    let big2 = big * big;
    let c = params.coupling.abs();
    let gap = big2 - w * w;
    let root = (state.e1 * state.e2).max(0.0).sqrt();
    let e_min = state.e1.min(state.e2);
    let ratios = RegimeRatios {
        coupling_to_frequency_gap: if gap > 0.0 { c / gap } else { f64::INFINITY },
        frequency_ratio_sq: (w * w) / big2,
        excitation_slow: state.e1 / (params.hbar * big),
        excitation_fast: state.e2 / (params.hbar * big),
        schmidt_occupancy: c * root / (params.hbar * w * w * big),
        band_spread_to_energy: if e_min > 0.0 {
            2.0 * c * root / big2 / e_min
        } else {
            f64::INFINITY
        },
        entropy_argument: std::f64::consts::PI * std::f64::consts::PI * params.coupling * root
            / (params.delta_cell * w * big2),
    };
    RegimeReport {
        weak_coupling_ok: ratios.coupling_to_frequency_gap <= th.small
            && ratios.frequency_ratio_sq <= th.small,
        classicality_ok: ratios.excitation_slow >= th.large
            && ratios.excitation_fast >= th.large
            && ratios.schmidt_occupancy >= th.large,
        hierarchy_ok: ratios.band_spread_to_energy <= th.small,
        entropy_positive: ratios.entropy_argument > 1.0,
        ratios,
    }
}
