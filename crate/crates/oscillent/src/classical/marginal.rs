//! Reduced phase-space distribution `W(x, px)` of the slow oscillator on
//! the invariant torus, in two evaluation modes: the order-C band form and
//! the unexpanded expression obtained by integrating the two energy delta
//! functions exactly.

use crate::classical::band::{band_half_width, support_band};
use crate::error::Result;
use crate::model::{ModelParams, StateSpec};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Which expression for `W(x, px)` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MarginalMode {
    /// Band form valid to order C: `W = omega / (pi^2 sqrt((R^2 - X1)(X2 - R^2)))`.
    SmallCoupling,
    /// Unexpanded density with the full quartic denominator in `R^2`.
    Exact,
}

/// Pointwise value of the density. The band edges carry an integrable
/// inverse-square-root divergence, so exact boundary hits are tagged
/// instead of returning a raw infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityValue {
    /// Outside the support; the density is zero.
    Outside,
    /// Exactly on a band edge, where the density diverges integrably.
    Boundary,
    /// Strictly inside the support.
    Interior(f64),
}

impl DensityValue {
    /// Collapses the tag to a number (`0`, `+inf`, or the interior value).
    pub fn value(&self) -> f64 {
        match self {
            DensityValue::Outside => 0.0,
            DensityValue::Boundary => f64::INFINITY,
            DensityValue::Interior(w) => *w,
        }
    }

    pub fn is_interior(&self) -> bool {
        matches!(self, DensityValue::Interior(_))
    }
}

/// The reduced distribution of one oscillator at fixed mode energies.
#[derive(Debug, Clone, Copy)]
pub struct MarginalDensity {
    pub params: ModelParams,
    pub state: StateSpec,
    pub mode: MarginalMode,
}

impl MarginalDensity {
    pub fn new(state: &StateSpec, params: &ModelParams, mode: MarginalMode) -> Self {
        Self {
            params: *params,
            state: *state,
            mode,
        }
    }

    /// Evaluates `W(x, px)`.
    pub fn evaluate(&self, x: f64, px: f64) -> DensityValue {
        let w = self.params.omega;
        let r_sq = px * px + w * w * x * x;
        let theta = (w * x).atan2(px);
        match self.mode {
            MarginalMode::SmallCoupling => {
                let a = band_half_width(theta, &self.state, &self.params);
                let mid = self.state.e_plus - self.state.e_minus;
                let q = (r_sq - (mid - a)) * ((mid + a) - r_sq);
                if q < 0.0 {
                    DensityValue::Outside
                } else if q == 0.0 {
                    DensityValue::Boundary
                } else {
                    DensityValue::Interior(w / (PI * PI * q.sqrt()))
                }
            }
            MarginalMode::Exact => {
                let (a, b, c) = self.quartic_coefficients(theta);
                let q = (a * r_sq + b) * r_sq + c;
                if q < 0.0 {
                    DensityValue::Outside
                } else if q == 0.0 {
                    DensityValue::Boundary
                } else {
                    DensityValue::Interior(2.0 * self.prefactor() / q.sqrt())
                }
            }
        }
    }

    /// Overall normalization constant `N = omega Omega / (2 pi^2)` of the
    /// unexpanded density.
    fn prefactor(&self) -> f64 {
        self.params.omega * self.params.big_omega / (2.0 * PI * PI)
    }

    /// Coefficients of the quartic `Q(R) = a R^4 + b R^2 + c` under the
    /// square root of the unexpanded density, at polar angle `theta`.
    fn quartic_coefficients(&self, theta: f64) -> (f64, f64, f64) {
        let w2 = self.params.omega * self.params.omega;
        let big2 = self.params.big_omega * self.params.big_omega;
        let c2 = self.params.coupling * self.params.coupling;
        let (ep, em) = (self.state.e_plus, self.state.e_minus);
        let ct2 = theta.cos().powi(2);
        let st2 = theta.sin().powi(2);
        let a = -big2 + (4.0 * c2 / big2) * ((c2 / (big2 * w2)) * st2 - 1.0) * ct2;
        let b = (8.0 * c2 * ep / big2) * ct2 + 2.0 * big2 * (ep - em);
        let c = -big2 * (ep - em) * (ep - em);
        (a, b, c)
    }

    /// Integral of `W` over the plane, by quadrature. For the band form the
    /// radial integral is done with an `n`-free Chebyshev-Gauss rule that is
    /// exact for the inverse-square-root profile; for the unexpanded form
    /// the radial integral is `pi / sqrt(-a(theta))` between the quartic
    /// roots. `n_theta` midpoint nodes cover the angle.
    pub fn normalization(&self, n_theta: usize) -> f64 {
        let w = self.params.omega;
        let dth = 2.0 * PI / n_theta as f64;
        let mut total = 0.0;
        for i in 0..n_theta {
            let theta = (i as f64 + 0.5) * dth;
            let radial = match self.mode {
                // A * int dy W / sqrt jacobian = omega / pi (angle-independent)
                MarginalMode::SmallCoupling => w / PI,
                MarginalMode::Exact => {
                    let (a, _, _) = self.quartic_coefficients(theta);
                    2.0 * self.prefactor() * PI / (-a).sqrt()
                }
            };
            total += dth * radial / (2.0 * w);
        }
        total
    }

    /// Boltzmann entropy `-int W ln(W Delta)` of the unexpanded density,
    /// integrating over the exact band between the quartic roots with the
    /// substitution `R^2 = mid - h cos(v)` that absorbs both edge
    /// divergences. Only meaningful in `Exact` mode; in band mode it
    /// reproduces the closed form and the dedicated quadrature operation
    /// should be used instead.
    pub fn entropy_quadrature(&self, n_theta: usize, n_radial: usize) -> Result<f64> {
        let w = self.params.omega;
        let delta = self.params.delta_cell;
        let dth = 2.0 * PI / n_theta as f64;
        let dv = PI / n_radial as f64;
        let mut total = 0.0;
        for i in 0..n_theta {
            let theta = (i as f64 + 0.5) * dth;
            match self.mode {
                MarginalMode::Exact => {
                    let (a, b, c) = self.quartic_coefficients(theta);
                    let disc = (b * b - 4.0 * a * c).max(0.0).sqrt();
                    let r1 = (-b + disc) / (2.0 * a);
                    let r2 = (-b - disc) / (2.0 * a);
                    let h = 0.5 * (r1 - r2).abs();
                    let n = 2.0 * self.prefactor();
                    let root_neg_a = (-a).sqrt();
                    let mut inner = 0.0;
                    for j in 0..n_radial {
                        let v = (j as f64 + 0.5) * dv;
                        let sv = v.sin();
                        let wv = n / (root_neg_a * h * sv);
                        inner += h * sv * dv * wv * (wv * delta).ln();
                    }
                    total += -(dth / (2.0 * w)) * inner;
                }
                MarginalMode::SmallCoupling => {
                    let a_band = band_half_width(theta, &self.state, &self.params);
                    let mut inner = 0.0;
                    for j in 0..n_radial {
                        let v = (j as f64 + 0.5) * dv;
                        let sv = v.sin();
                        let wv = w / (PI * PI * a_band * sv);
                        inner += a_band * sv * dv * wv * (wv * delta).ln();
                    }
                    total += -(dth / (2.0 * w)) * inner;
                }
            }
        }
        Ok(total)
    }
}

/// Pointwise density, free-function form.
pub fn marginal_density(
    x: f64,
    px: f64,
    state: &StateSpec,
    params: &ModelParams,
    mode: MarginalMode,
) -> DensityValue {
    MarginalDensity::new(state, params, mode).evaluate(x, px)
}

/// Maps band coordinates `(theta, y)` with `y` in `(-1, 1)` to the phase
/// plane point on the order-C band: `R^2 = mid + A(theta) y`,
/// `x = R sin(theta) / omega`, `px = R cos(theta)`.
pub fn band_point(theta: f64, y: f64, state: &StateSpec, params: &ModelParams) -> (f64, f64) {
    let band = support_band(theta, state, params).expect("valid band");
    let r = (band.midpoint() + band.half_width() * y).max(0.0).sqrt();
    (r * theta.sin() / params.omega, r * theta.cos())
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
    fn outside_support_is_zero() {
        let (params, state) = reference();
        let d = MarginalDensity::new(&state, &params, MarginalMode::SmallCoupling);
        assert_eq!(d.evaluate(100.0, 100.0).value(), 0.0);
        assert_eq!(d.evaluate(0.0, 0.0).value(), 0.0);
    }

    #[test]
    fn boundary_is_tagged_not_infinite_panic() {
        let (params, state) = reference();
        let d = MarginalDensity::new(&state, &params, MarginalMode::SmallCoupling);
        // theta = 0: px = R, x = 0; outer edge at R^2 = X2
        let b = support_band(0.0, &state, &params).unwrap();
        let px = b.x2.sqrt();
        // construct a point whose R^2 reproduces X2 exactly in floating point
        if px * px == b.x2 {
            assert_eq!(d.evaluate(0.0, px), DensityValue::Boundary);
        }
    }

    #[test]
    fn depends_only_on_r_and_cos_magnitude() {
        let (params, state) = reference();
        for mode in [MarginalMode::SmallCoupling, MarginalMode::Exact] {
            let d = MarginalDensity::new(&state, &params, mode);
            let (x, px) = (4.1, 3.3);
            let w0 = d.evaluate(x, px).value();
            // theta -> -theta and theta -> pi - theta
            assert!((d.evaluate(-x, px).value() - w0).abs() <= 1e-12 * w0.abs());
            assert!((d.evaluate(x, -px).value() - w0).abs() <= 1e-12 * w0.abs());
            assert!((d.evaluate(-x, -px).value() - w0).abs() <= 1e-12 * w0.abs());
        }
    }

    #[test]
    fn band_normalization_is_unity() {
        let (params, state) = reference();
        let d = MarginalDensity::new(&state, &params, MarginalMode::SmallCoupling);
        assert!((d.normalization(400) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_normalization_reference_value() {
        let (params, state) = reference();
        let d = MarginalDensity::new(&state, &params, MarginalMode::Exact);
        // the unexpanded density integrates to 1 - O(C^2 / Omega^4)
        assert!((d.normalization(2000) - 0.9991038375).abs() < 1e-6);
    }

    #[test]
    fn exact_normalization_deficit_shrinks_with_coupling() {
        let params = ModelParams::new(1.0, 10.0f64.sqrt(), 0.15).unwrap();
        let state = StateSpec::from_energies(20.0, 200.0, &params).unwrap();
        let d = MarginalDensity::new(&state, &params, MarginalMode::Exact);
        assert!((d.normalization(2000) - 0.9997752403).abs() < 1e-6);
    }

    #[test]
    fn exact_mode_agrees_with_band_mode_at_small_coupling() {
        let params = ModelParams::new(1.0, 10.0f64.sqrt(), 0.02).unwrap();
        let state = StateSpec::from_energies(20.0, 200.0, &params).unwrap();
        let band = MarginalDensity::new(&state, &params, MarginalMode::SmallCoupling);
        let exact = MarginalDensity::new(&state, &params, MarginalMode::Exact);
        let (x, px) = band_point(0.4, 0.3, &state, &params);
        let wb = band.evaluate(x, px).value();
        let we = exact.evaluate(x, px).value();
        assert!(
            ((we - wb) / wb).abs() < 0.02,
            "band {wb} vs unexpanded {we}"
        );
    }

    #[test]
    fn band_point_lands_inside_support() {
        let (params, state) = reference();
        let d = MarginalDensity::new(&state, &params, MarginalMode::SmallCoupling);
        let (x, px) = band_point(1.1, -0.7, &state, &params);
        assert!(d.evaluate(x, px).is_interior());
    }
}
