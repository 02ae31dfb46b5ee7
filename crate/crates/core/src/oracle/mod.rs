//! Independent numerical ground truth for tests and cross-checks.

mod fd;
mod scan;
mod shooting;

pub use fd::{fd_laplacian_lambda1, GridEigenResult};
pub use scan::bessel_zero_scan;
pub use shooting::radial_shoot_ball_lambda1;
