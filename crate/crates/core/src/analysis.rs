//! Observables and comparison metrics.

use crate::error::{Error, Result};
use crate::phys::{PacketParams, PhysParams, WaveField};
use crate::stationary::{flux_balance, ChannelMomenta};
use serde::Serialize;

/// Composite trapezoid rule on uniformly sampled values.
pub fn trapezoid(values: &[f64], dx: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let inner: f64 = values[1..values.len() - 1].iter().sum();
    dx * (0.5 * (values[0] + values[values.len() - 1]) + inner)
}

/// Per-channel norms `(int |psi1|^2 dx, int |psi2|^2 dx)`.
pub fn channel_norms(field: &WaveField) -> (f64, f64) {
    let dx = field.grid.dx();
    let d1: Vec<f64> = field.psi1.iter().map(|c| c.norm_sqr()).collect();
    let d2: Vec<f64> = field.psi2.iter().map(|c| c.norm_sqr()).collect();
    (trapezoid(&d1, dx), trapezoid(&d2, dx))
}

/// Per-channel L2 distances `sqrt(int |psi_a - psi_b|^2 dx)`.
///
/// Fails unless the two fields share a grid and a time stamp.
pub fn l2_distance(a: &WaveField, b: &WaveField) -> Result<(f64, f64)> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch(format!("{:?} vs {:?}", a.grid, b.grid)));
    }
    if (a.t - b.t).abs() > 1e-12 * a.t.abs().max(1.0) {
        return Err(Error::GridMismatch(format!("time stamps {} vs {}", a.t, b.t)));
    }
    let dx = a.grid.dx();
    let d1: Vec<f64> =
        a.psi1.iter().zip(&b.psi1).map(|(x, y)| (x - y).norm_sqr()).collect();
    let d2: Vec<f64> =
        a.psi2.iter().zip(&b.psi2).map(|(x, y)| (x - y).norm_sqr()).collect();
    Ok((trapezoid(&d1, dx).sqrt(), trapezoid(&d2, dx).sqrt()))
}

/// L2 distance between densities restricted to points where the reference
/// density exceeds `floor * max(reference)`, relative to the reference norm
/// over the same region. Used for analytic-vs-grid comparisons where only
/// the populated region is meaningful.
pub fn density_region_distance(candidate: &[f64], reference: &[f64], floor: f64) -> f64 {
    let peak = reference.iter().cloned().fold(0.0, f64::max);
    let cut = floor * peak;
    let mut num = 0.0;
    let mut den = 0.0;
    for (c, r) in candidate.iter().zip(reference) {
        if *r > cut {
            num += (c - r) * (c - r);
            den += r * r;
        }
    }
    if den == 0.0 {
        0.0
    } else {
        (num / den).sqrt()
    }
}

/// Gaussian-weighted stationary flux triple
/// `(int |F(k)|^2 R(k) dk, ..., T2)`, with `|F|^2` the momentum density of
/// the initial packet. The weight is renormalized over the integration
/// window so the triple sums to one exactly.
pub fn stationary_average(
    p: &PhysParams,
    q: &PacketParams,
    n_points: usize,
) -> Result<(f64, f64, f64)> {
    let lo = (q.k1 - 10.0 / q.sigma).max(1e-9);
    let hi = q.k1 + 10.0 / q.sigma;
    let n = n_points.max(200);
    let dk = (hi - lo) / (n - 1) as f64;
    let mut wsum = 0.0;
    let mut acc = [0.0; 3];
    for i in 0..n {
        let k = lo + i as f64 * dk;
        let weight = (2.0 * q.sigma * q.sigma / std::f64::consts::PI).sqrt()
            * (-2.0 * q.sigma * q.sigma * (k - q.k1) * (k - q.k1)).exp();
        let trap = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        let cm = ChannelMomenta::from_k(p, k)?;
        let (r, t1, t2) = flux_balance(p, &cm)?;
        wsum += trap * weight;
        acc[0] += trap * weight * r;
        acc[1] += trap * weight * t1;
        acc[2] += trap * weight * t2;
    }
    Ok((acc[0] / wsum, acc[1] / wsum, acc[2] / wsum))
}

/// Flux triple extracted from a late-time grid field: reflected and
/// transmitted channel-1 weight by half-line, plus the channel-2 weight.
pub fn extract_flux_split(field: &WaveField) -> (f64, f64, f64) {
    let dx = field.grid.dx();
    let mut refl = Vec::with_capacity(field.grid.n_points);
    let mut trans = Vec::with_capacity(field.grid.n_points);
    for (i, x) in field.grid.points().into_iter().enumerate() {
        let d = field.psi1[i].norm_sqr();
        if x < 0.0 {
            refl.push(d);
            trans.push(0.0);
        } else {
            refl.push(0.0);
            trans.push(d);
        }
    }
    let d2: Vec<f64> = field.psi2.iter().map(|c| c.norm_sqr()).collect();
    (trapezoid(&refl, dx), trapezoid(&trans, dx), trapezoid(&d2, dx))
}

/// Junction density relative to the initial peak; the packet has cleared the
/// coupling once this drops below `1e-8`.
pub fn junction_occupancy(field: &WaveField, initial_peak: f64) -> f64 {
    let grid = &field.grid;
    let j = ((0.0 - grid.x_min) / grid.dx()).round() as usize;
    let j = j.min(grid.n_points - 1);
    (field.psi1[j].norm_sqr() + field.psi2[j].norm_sqr()) / initial_peak
}

/// Per-time comparison metrics between an analytic and a grid evolution.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub times: Vec<f64>,
    pub l2_channel1: Vec<f64>,
    pub l2_channel2: Vec<f64>,
    pub norm1_analytic: Vec<f64>,
    pub norm2_analytic: Vec<f64>,
    pub norm1_oracle: Vec<f64>,
    pub norm2_oracle: Vec<f64>,
    pub flux_analytic: (f64, f64, f64),
    pub flux_oracle: Option<(f64, f64, f64)>,
    pub energy_ratio_e_over_v0: Option<f64>,
    /// Deterministic work counters (grid points x times, oracle steps).
    pub work_analytic_points: usize,
    pub work_oracle_steps: usize,
}
