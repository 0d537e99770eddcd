//! Physical parameters, spatial grids, and the initial Gaussian packet.
//!
//! Units are carried symbolically: every quantity is expressed through the
//! mass `m`, the action quantum `hbar`, the coupling strength `k0`
//! (energy x length) and the channel offset `v0` (energy). The default
//! configurations use `hbar = m = 1`.

use crate::error::{Error, Result};
use crate::C64;
use serde::{Deserialize, Serialize};

/// Global physical parameters of the two-channel system.
///
/// Channel 2 sits `v0 >= 0` above channel 1; the channels are coupled at
/// the origin with strength `k0`. The derived constant
/// `beta = (m k0 / hbar^2)^2` has units of 1/length^2 and controls every
/// scattering amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysParams {
    pub mass: f64,
    pub hbar: f64,
    pub k0: f64,
    pub v0: f64,
}

impl PhysParams {
    pub fn new(mass: f64, hbar: f64, k0: f64, v0: f64) -> Result<Self> {
        let p = Self { mass, hbar, k0, v0 };
        p.validate()?;
        Ok(p)
    }

    /// `hbar = m = 1` convention used by all example configurations.
    pub fn natural(k0: f64, v0: f64) -> Result<Self> {
        Self::new(1.0, 1.0, k0, v0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0) || !self.mass.is_finite() {
            return Err(Error::InvalidParameter(format!("mass must be > 0, got {}", self.mass)));
        }
        if !(self.hbar > 0.0) || !self.hbar.is_finite() {
            return Err(Error::InvalidParameter(format!("hbar must be > 0, got {}", self.hbar)));
        }
        if !self.k0.is_finite() {
            return Err(Error::InvalidParameter("k0 must be finite".into()));
        }
        if self.v0 < 0.0 || !self.v0.is_finite() {
            return Err(Error::InvalidParameter(format!("v0 must be >= 0, got {}", self.v0)));
        }
        Ok(())
    }

    /// `beta = m^2 k0^2 / hbar^4`, units 1/length^2.
    pub fn beta(&self) -> f64 {
        let g = self.mass * self.k0 / (self.hbar * self.hbar);
        g * g
    }

    /// `2 m v0 / hbar^2`: the shift between the squared channel momenta,
    /// `k'^2 = k^2 - two_m_v0()`.
    pub fn two_m_v0(&self) -> f64 {
        2.0 * self.mass * self.v0 / (self.hbar * self.hbar)
    }
}

/// Initial Gaussian packet in channel 1, centered at `x = -x0` and moving
/// with carrier wavenumber `k1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PacketParams {
    pub x0: f64,
    pub sigma: f64,
    pub k1: f64,
}

impl PacketParams {
    pub fn new(x0: f64, sigma: f64, k1: f64) -> Result<Self> {
        let p = Self { x0, sigma, k1 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(Error::InvalidParameter(format!("sigma must be > 0, got {}", self.sigma)));
        }
        if !self.x0.is_finite() || !self.k1.is_finite() {
            return Err(Error::InvalidParameter("x0 and k1 must be finite".into()));
        }
        // Keeps the initial packet effectively on one side of the coupling.
        if self.x0 < 5.0 * self.sigma {
            return Err(Error::InvalidParameter(format!(
                "x0 = {} must be >= 5 sigma = {}",
                self.x0,
                5.0 * self.sigma
            )));
        }
        Ok(())
    }
}

/// Mean energy of the packet, `E = hbar^2 (k1^2 + 1/(4 sigma^2)) / (2 m)`.
pub fn packet_energy(p: &PhysParams, q: &PacketParams) -> f64 {
    let k2 = q.k1 * q.k1 + 1.0 / (4.0 * q.sigma * q.sigma);
    p.hbar * p.hbar * k2 / (2.0 * p.mass)
}

/// Uniform spatial grid on `[x_min, x_max]` with `n_points` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpatialGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl SpatialGrid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        let g = Self { x_min, x_max, n_points };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_min < 0.0 && 0.0 < self.x_max) {
            return Err(Error::InvalidParameter(format!(
                "grid must straddle the origin, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        if self.n_points < 3 {
            return Err(Error::InvalidParameter(format!(
                "n_points must be >= 3, got {}",
                self.n_points
            )));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }
}

/// Two complex channel amplitudes sampled on a grid at one time stamp.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    pub grid: SpatialGrid,
    pub t: f64,
    pub psi1: Vec<C64>,
    pub psi2: Vec<C64>,
}

impl WaveField {
    pub fn zeros(grid: SpatialGrid, t: f64) -> Self {
        Self {
            grid,
            t,
            psi1: vec![C64::new(0.0, 0.0); grid.n_points],
            psi2: vec![C64::new(0.0, 0.0); grid.n_points],
        }
    }
}

/// Initial-packet amplitude at a point:
/// `(2 pi sigma^2)^(-1/4) exp(-(x+x0)^2/(4 sigma^2) + i k1 (x+x0))`.
pub fn initial_packet_amplitude(q: &PacketParams, x: f64) -> C64 {
    let norm = (2.0 * std::f64::consts::PI * q.sigma * q.sigma).powf(-0.25);
    let y = x + q.x0;
    let arg = C64::new(-y * y / (4.0 * q.sigma * q.sigma), q.k1 * y);
    norm * arg.exp()
}

/// The initial packet sampled on a grid (channel 2 empty, `t = 0`).
///
/// Fails if the grid does not cover `+-5 sigma` around the packet center.
pub fn initial_packet(q: &PacketParams, grid: &SpatialGrid) -> Result<WaveField> {
    q.validate()?;
    grid.validate()?;
    let center = -q.x0;
    if grid.x_min > center - 5.0 * q.sigma || grid.x_max < center + 5.0 * q.sigma {
        return Err(Error::DomainCoverage(format!(
            "grid [{}, {}] must cover [{}, {}]",
            grid.x_min,
            grid.x_max,
            center - 5.0 * q.sigma,
            center + 5.0 * q.sigma
        )));
    }
    let mut field = WaveField::zeros(*grid, 0.0);
    for (i, x) in grid.points().into_iter().enumerate() {
        field.psi1[i] = initial_packet_amplitude(q, x);
    }
    Ok(field)
}

/// Closed-form Fourier transform of the initial packet:
/// `(2 sigma^2 / pi)^(1/4) exp(-sigma^2 (k-k1)^2 + i k x0)`.
pub fn packet_fourier(q: &PacketParams, k: f64) -> C64 {
    let norm = (2.0 * q.sigma * q.sigma / std::f64::consts::PI).powf(0.25);
    let d = k - q.k1;
    let arg = C64::new(-q.sigma * q.sigma * d * d, k * q.x0);
    norm * arg.exp()
}
