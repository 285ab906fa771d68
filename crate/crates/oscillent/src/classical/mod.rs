//! Classical side of the laboratory: the occupied band of the reduced
//! phase plane, its marginal density, and four independent entropy routes
//! (closed form, quadrature, torus Monte Carlo, trajectory strobing).

mod band;
mod entropy;
mod knn;
mod marginal;
mod sampling;
mod trajectory;

pub use band::{support_band, SupportBand};
pub use entropy::{
    classical_entropy_closed_form, classical_entropy_quadrature, classical_entropy_quadrature_with,
    EntropyMetadata, EntropyMethod, EntropyResult,
};
pub use knn::entropy_knn;
pub use marginal::{band_point, marginal_density, DensityValue, MarginalDensity, MarginalMode};
pub use sampling::{sample_band, sample_torus, torus_phase_point, SampleSet};
pub use trajectory::{integrate_trajectory, DriftReport, TrajectoryResult};
