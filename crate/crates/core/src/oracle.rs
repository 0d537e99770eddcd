//! Independent grid solver for the coupled two-channel equations.
//!
//! One Crank-Nicolson step solves `(I + i dt H / 2 hbar) psi' = (I - i dt H / 2 hbar) psi`
//! where `H` couples the channels through a grid-resolvable Gaussian spike of
//! unit weight standing in for the point interaction. The linear system is
//! block tridiagonal with 2x2 site blocks and scalar kinetic off-diagonals;
//! the forward-elimination tables are precomputed once per configuration, so
//! a step costs O(n) small matrix applications.

use crate::error::{Error, Result};
use crate::phys::{PhysParams, SpatialGrid, WaveField};
use crate::C64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Boundary {
    Reflecting,
    /// Polynomial imaginary-potential ramp over `width` at both grid edges.
    Absorbing { strength: f64, width: f64 },
}

impl Default for Boundary {
    fn default() -> Self {
        Boundary::Reflecting
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub grid: SpatialGrid,
    pub dt: f64,
    pub n_steps: usize,
    /// Width of the Gaussian standing in for the point coupling.
    pub delta_width: f64,
    #[serde(default)]
    pub boundary: Boundary,
}

impl OracleConfig {
    pub fn validate(&self, p: &PhysParams) -> Result<()> {
        self.grid.validate()?;
        let dx = self.grid.dx();
        if !(self.dt > 0.0) {
            return Err(Error::InvalidParameter(format!("dt must be > 0, got {}", self.dt)));
        }
        // phase-accuracy heuristic; the scheme itself is unconditionally stable
        let dt_max = 0.5 * p.mass * dx * dx / p.hbar;
        if self.dt > dt_max * (1.0 + 1e-12) {
            return Err(Error::InvalidParameter(format!(
                "dt = {} exceeds the accuracy bound 0.5 m dx^2/hbar = {dt_max}",
                self.dt
            )));
        }
        if self.delta_width < 2.0 * dx {
            return Err(Error::InvalidParameter(format!(
                "delta_width = {} must be >= 2 dx = {}",
                self.delta_width,
                2.0 * dx
            )));
        }
        if let Boundary::Absorbing { strength, width } = self.boundary {
            if !(strength > 0.0) || width < 10.0 * dx {
                return Err(Error::InvalidParameter(format!(
                    "absorbing boundary needs strength > 0 and width >= 10 dx, got ({strength}, {width})"
                )));
            }
        }
        Ok(())
    }
}

/// Unit-weight Gaussian spike, `exp(-x^2 / 2 w^2) / (w sqrt(2 pi))`.
pub fn regularized_delta(x: f64, width: f64) -> f64 {
    let z = x / width;
    (-0.5 * z * z).exp() / (width * (2.0 * std::f64::consts::PI).sqrt())
}

#[derive(Clone, Copy)]
struct Block {
    a: C64,
    b: C64,
    c: C64,
    d: C64,
}

impl Block {
    fn inv(&self) -> Result<Block> {
        let det = self.a * self.d - self.b * self.c;
        if det.norm() < 1e-300 {
            return Err(Error::LinearSolve("singular 2x2 block".into()));
        }
        Ok(Block { a: self.d / det, b: -self.b / det, c: -self.c / det, d: self.a / det })
    }

    fn mul_vec(&self, x: (C64, C64)) -> (C64, C64) {
        (self.a * x.0 + self.b * x.1, self.c * x.0 + self.d * x.1)
    }
}

/// Precomputed Crank-Nicolson engine for one configuration.
pub struct CrankNicolson {
    pub cfg: OracleConfig,
    off_a: C64,
    off_b: C64,
    bdiag: Vec<Block>,
    dtilde_inv: Vec<Block>,
}

impl CrankNicolson {
    pub fn new(cfg: OracleConfig, p: &PhysParams) -> Result<Self> {
        cfg.validate(p)?;
        p.validate()?;
        let n = cfg.grid.n_points;
        let dx = cfg.grid.dx();
        let s = C64::i() * cfg.dt / (2.0 * p.hbar);
        let kin_diag = p.hbar * p.hbar / (p.mass * dx * dx);
        let kin_off = -p.hbar * p.hbar / (2.0 * p.mass * dx * dx);
        let off_a = s * kin_off;
        let off_b = -off_a;

        let ramp = |x: f64| -> f64 {
            if let Boundary::Absorbing { strength, width } = cfg.boundary {
                let dl = (x - cfg.grid.x_min) / width;
                let dr = (cfg.grid.x_max - x) / width;
                let d = dl.min(dr);
                if d < 1.0 {
                    return strength * (1.0 - d) * (1.0 - d);
                }
            }
            0.0
        };

        let mut adiag = Vec::with_capacity(n);
        let mut bdiag = Vec::with_capacity(n);
        for i in 0..n {
            let x = cfg.grid.x(i);
            let cup = s * p.k0 * regularized_delta(x, cfg.delta_width);
            let vabs = C64::new(0.0, -ramp(x));
            let h11 = C64::new(kin_diag, 0.0) + vabs;
            let h22 = C64::new(kin_diag + p.v0, 0.0) + vabs;
            adiag.push(Block {
                a: 1.0 + s * h11,
                b: cup,
                c: cup,
                d: 1.0 + s * h22,
            });
            bdiag.push(Block {
                a: 1.0 - s * h11,
                b: -cup,
                c: -cup,
                d: 1.0 - s * h22,
            });
        }

        // forward elimination of the block-tridiagonal A with constant scalar
        // off-diagonal: Dt_j = D_j - off^2 * Dt_{j-1}^{-1}
        let off2 = off_a * off_a;
        let mut dtilde_inv: Vec<Block> = Vec::with_capacity(n);
        dtilde_inv.push(adiag[0].inv()?);
        for j in 1..n {
            let prev = dtilde_inv[j - 1];
            let dt_j = Block {
                a: adiag[j].a - off2 * prev.a,
                b: adiag[j].b - off2 * prev.b,
                c: adiag[j].c - off2 * prev.c,
                d: adiag[j].d - off2 * prev.d,
            };
            dtilde_inv.push(dt_j.inv()?);
        }
        Ok(Self { cfg, off_a, off_b, bdiag, dtilde_inv })
    }

    /// Advance the field by one step in place.
    pub fn step_in_place(&self, psi1: &mut [C64], psi2: &mut [C64]) {
        let n = self.cfg.grid.n_points;
        debug_assert_eq!(psi1.len(), n);
        debug_assert_eq!(psi2.len(), n);

        // rhs = B psi with reflecting (Dirichlet) ends
        let mut rhs: Vec<(C64, C64)> = Vec::with_capacity(n);
        for j in 0..n {
            let here = self.bdiag[j].mul_vec((psi1[j], psi2[j]));
            let mut v = here;
            if j > 0 {
                v.0 += self.off_b * psi1[j - 1];
                v.1 += self.off_b * psi2[j - 1];
            }
            if j + 1 < n {
                v.0 += self.off_b * psi1[j + 1];
                v.1 += self.off_b * psi2[j + 1];
            }
            rhs.push(v);
        }
        // forward sweep: r~_j = r_j - off * Dt_{j-1}^{-1} r~_{j-1}
        for j in 1..n {
            let prev = self.dtilde_inv[j - 1].mul_vec(rhs[j - 1]);
            rhs[j].0 -= self.off_a * prev.0;
            rhs[j].1 -= self.off_a * prev.1;
        }
        // back substitution
        let last = self.dtilde_inv[n - 1].mul_vec(rhs[n - 1]);
        psi1[n - 1] = last.0;
        psi2[n - 1] = last.1;
        for j in (0..n - 1).rev() {
            let r = (rhs[j].0 - self.off_a * psi1[j + 1], rhs[j].1 - self.off_a * psi2[j + 1]);
            let x = self.dtilde_inv[j].mul_vec(r);
            psi1[j] = x.0;
            psi2[j] = x.1;
        }
    }
}

/// One Crank-Nicolson step of the coupled system.
pub fn step(state: &WaveField, cfg: &OracleConfig, p: &PhysParams) -> Result<WaveField> {
    if state.grid != cfg.grid {
        return Err(Error::GridMismatch("state grid differs from oracle grid".into()));
    }
    let engine = CrankNicolson::new(*cfg, p)?;
    let mut out = state.clone();
    engine.step_in_place(&mut out.psi1, &mut out.psi2);
    out.t = state.t + cfg.dt;
    Ok(out)
}

/// Repeated stepping with periodic snapshots (`record_every = 0` records the
/// initial and final states only). Snapshot time stamps are monotone.
pub fn evolve(
    state: &WaveField,
    cfg: &OracleConfig,
    p: &PhysParams,
    record_every: usize,
) -> Result<Vec<WaveField>> {
    let mut steps: Vec<usize> = if record_every == 0 {
        vec![cfg.n_steps]
    } else {
        (1..=cfg.n_steps / record_every).map(|k| k * record_every).collect()
    };
    if steps.last() != Some(&cfg.n_steps) {
        steps.push(cfg.n_steps);
    }
    evolve_snapshots(state, cfg, p, &steps)
}

/// Evolve and record exactly at the listed step indices (sorted, deduped);
/// the initial state is always returned first.
pub fn evolve_snapshots(
    state: &WaveField,
    cfg: &OracleConfig,
    p: &PhysParams,
    record_steps: &[usize],
) -> Result<Vec<WaveField>> {
    if state.grid != cfg.grid {
        return Err(Error::GridMismatch("state grid differs from oracle grid".into()));
    }
    let mut wanted: Vec<usize> =
        record_steps.iter().cloned().filter(|&s| s <= cfg.n_steps).collect();
    wanted.sort_unstable();
    wanted.dedup();

    let engine = CrankNicolson::new(*cfg, p)?;
    let mut snapshots = Vec::with_capacity(wanted.len() + 1);
    snapshots.push(state.clone());
    if cfg.n_steps == 0 {
        return Ok(snapshots);
    }
    let mut psi1 = state.psi1.clone();
    let mut psi2 = state.psi2.clone();
    let mut next = wanted.iter().peekable();
    for s in 1..=cfg.n_steps {
        engine.step_in_place(&mut psi1, &mut psi2);
        if next.peek() == Some(&&s) {
            snapshots.push(WaveField {
                grid: cfg.grid,
                t: state.t + s as f64 * cfg.dt,
                psi1: psi1.clone(),
                psi2: psi2.clone(),
            });
            next.next();
        }
    }
    Ok(snapshots)
}
