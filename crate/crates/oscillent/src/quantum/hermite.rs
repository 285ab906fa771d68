//! Harmonic-oscillator eigenfunctions `h_n` in the dimensionless
//! coordinate, stable to very high quantum numbers.

/// The normalized oscillator eigenfunction
///
/// ```text
/// h_n(xi) = H_n(xi) exp(-xi^2 / 2) / sqrt(2^n n! sqrt(pi)),
/// ```
///
/// evaluated by the three-term recurrence on the scaled functions
/// themselves, so neither the Hermite polynomial nor the factorial is ever
/// formed. The Gaussian is folded into a log ledger together with any
/// rescalings, which keeps the iteration overflow-free for `n` well beyond
/// ten thousand.
pub fn hermite_function(n: u32, xi: f64) -> f64 {
    const RESCALE: f64 = 1e120;
    let mut a = 1.0f64;
    let mut b = 0.0f64;
    let mut ledger = -0.25 * std::f64::consts::PI.ln() - 0.5 * xi * xi;
    for k in 1..=n as u64 {
        let kf = k as f64;
        let c = (2.0 / kf).sqrt() * xi * a - ((kf - 1.0) / kf).sqrt() * b;
        b = a;
        a = c;
        if a.abs() > RESCALE {
            a /= RESCALE;
            b /= RESCALE;
            ledger += RESCALE.ln();
        }
    }
    a * ledger.exp()
}
