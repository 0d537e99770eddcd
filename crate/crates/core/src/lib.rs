//! Two flat potential channels coupled by a point interaction at the origin:
//! stationary scattering, exact time-domain propagation of a Gaussian packet,
//! asymptotic series for the widely- and narrowly-separated channel limits,
//! and an independent Crank-Nicolson grid solver for cross-validation.
//!
//! The crate is organized around the propagation pipeline:
//!
//! * [`phys`] - parameters, grids, the initial packet and its Fourier transform
//! * [`stationary`] - junction amplitudes, flux balance, the pole quartic
//! * [`kernel`] - closed-form free evolution plus the scattered-wave contour
//!   machinery (residue sum, damped line integral, branch-cut corrections)
//! * [`series`] - truncated asymptotic series for both energy regimes
//! * [`oracle`] - two-channel Crank-Nicolson solver on a uniform grid
//! * [`analysis`] - norms, distances, and stationary-flux averages
//! * [`run`] - batch driver behind the command-line front end

pub mod analysis;
pub mod config;
pub mod error;
pub mod kernel;
pub mod oracle;
pub mod output;
pub mod phys;
pub mod quadrature;
pub mod run;
pub mod series;
pub mod stationary;

pub use error::{Error, Result};
pub use phys::{PacketParams, PhysParams, SpatialGrid, WaveField};
pub use quadrature::QuadratureSpec;

/// Complex double-precision scalar used throughout.
pub type C64 = num_complex::Complex64;
