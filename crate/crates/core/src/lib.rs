//! Certified lower and upper bounds for the principal Dirichlet eigenvalue of
//! fully nonlinear elliptic operators, built from radial Bessel barriers and
//! the inradius of the domain.

pub mod bounds;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod radial;
pub mod specfun;

pub use error::{Error, Result};
