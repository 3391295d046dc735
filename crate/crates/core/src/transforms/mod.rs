//! Summation formulae, the delta expansion and oscillatory integrals.

pub mod bessel;
pub mod delta;
pub mod poisson;
pub mod quadrature;
pub mod report;
pub mod stationary;
pub mod voronoi;
pub mod window;

pub use bessel::bessel_j;
pub use delta::{delta_expand, DeltaConfig};
pub use poisson::{poisson_verify, PoissonFunction};
pub use quadrature::oscillatory_quadrature;
pub use report::VerificationReport;
pub use stationary::{
    nonstationary_bound_check, stationary_phase_main_term, stationary_phase_verify, voronoi_j_bound_check, Phase,
    PhaseScales, StationaryPhase,
};
pub use voronoi::{bessel_transform_h, voronoi_verify, voronoi_window, VoronoiKernel};
pub use window::SmoothWindow;
