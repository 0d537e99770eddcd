//! Analytic time-domain propagation.
//!
//! Channel 1 splits into a closed-form free part and a scattered part
//! `psi1_scattered = B(x,t) * I(x,t)`, where `B` is a Gaussian envelope and
//! `I` is the contour integral evaluated in [`contour`]. Channel 2 is a
//! single Gaussian-windowed momentum integral over the transfer amplitude.

pub mod contour;

pub use contour::{
    cut_corrections_shifted, line_integral_u, residue_sum, RealPoleRule, ResidueSelection,
};

use crate::error::Result;
use crate::phys::{PacketParams, PhysParams};
use crate::quadrature::{self, PoleTerm, QuadratureSpec};
use crate::stationary::{compute_poles, k_prime_of};
use crate::C64;

/// Complex width of the spreading packet, `w(t) = sigma^2 + i hbar t / (2m)`.
pub fn complex_width(p: &PhysParams, q: &PacketParams, t: f64) -> C64 {
    C64::new(q.sigma * q.sigma, p.hbar * t / (2.0 * p.mass))
}

/// The complex shift that completes the square in the scattered kernel:
/// `kappa(x,t) = i (|x| + x0 - 2 i sigma^2 k1) / (2 w(t))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaShift {
    pub value: C64,
}

pub fn kappa(p: &PhysParams, q: &PacketParams, x: f64, t: f64) -> KappaShift {
    let w = complex_width(p, q, t);
    let num = C64::i() * C64::new(x.abs() + q.x0, -2.0 * q.sigma * q.sigma * q.k1);
    KappaShift { value: num / (2.0 * w) }
}

/// Free spreading of the initial packet:
/// `A exp(-(x+x0)^2/(4w) + i (sigma^2/w)(k1 (x+x0) - hbar k1^2 t/(2m)))`
/// with `A = (2 pi)^(-1/4) sqrt(sigma / w)`. At `t = 0` this is the initial
/// packet; the density peak drifts as `-x0 + hbar k1 t / m`.
pub fn free_evolution(p: &PhysParams, q: &PacketParams, x: f64, t: f64) -> C64 {
    let w = complex_width(p, q, t);
    let a = (2.0 * std::f64::consts::PI).powf(-0.25) * (q.sigma / w).sqrt();
    let y = x + q.x0;
    let phase = (q.sigma * q.sigma / w)
        * C64::i()
        * (q.k1 * y - p.hbar * q.k1 * q.k1 * t / (2.0 * p.mass));
    a * (-(y * y) / (4.0 * w) + phase).exp()
}

/// Envelope of the scattered wave, split into a prefactor and the complex
/// exponent so callers can fold the exponent into downstream quadrature:
/// `B = (sigma^2/(2 pi^3))^(1/4) (-beta) exp(L)`,
/// `L = -sigma^2 k1^2 - (|x| + x0 - 2 i sigma^2 k1)^2 / (4 w)`.
pub fn envelope_b_split(p: &PhysParams, q: &PacketParams, x: f64, t: f64) -> (f64, C64) {
    let w = complex_width(p, q, t);
    let pref = (q.sigma * q.sigma / (2.0 * std::f64::consts::PI.powi(3))).powf(0.25) * (-p.beta());
    let z = C64::new(x.abs() + q.x0, -2.0 * q.sigma * q.sigma * q.k1);
    let l = C64::new(-q.sigma * q.sigma * q.k1 * q.k1, 0.0) - z * z / (4.0 * w);
    (pref, l)
}

/// The envelope itself. Identically zero at zero coupling.
pub fn envelope_b(p: &PhysParams, q: &PacketParams, x: f64, t: f64) -> C64 {
    let (pref, l) = envelope_b_split(p, q, x, t);
    pref * l.exp()
}

/// Scattered part of channel 1 via the deformed-contour evaluation, with the
/// stated rule for genuine real-axis poles.
pub fn psi1_scattered_with(
    p: &PhysParams,
    q: &PacketParams,
    x: f64,
    t: f64,
    quad: &QuadratureSpec,
    rule: RealPoleRule,
) -> Result<C64> {
    if p.k0 == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let poles = compute_poles(p)?;
    let w = complex_width(p, q, t);
    let kap = kappa(p, q, x, t);
    let (pref, shift) = envelope_b_split(p, q, x, t);
    let integral =
        contour::scattered_kernel_integral_shifted(kap, &poles, p, w, quad, rule, shift)?;
    Ok(pref * integral)
}

/// Scattered part of channel 1, `B(x,t) * I(x,t)`. Even in `x`.
pub fn psi1_scattered(
    p: &PhysParams,
    q: &PacketParams,
    x: f64,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<C64> {
    psi1_scattered_with(p, q, x, t, quad, RealPoleRule::default())
}

/// Reference evaluation of the scattered part through the undeformed
/// principal-value integral; slower, used for cross-validation.
pub fn psi1_scattered_direct(
    p: &PhysParams,
    q: &PacketParams,
    x: f64,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<C64> {
    if p.k0 == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let w = complex_width(p, q, t);
    let kap = kappa(p, q, x, t);
    let (pref, shift) = envelope_b_split(p, q, x, t);
    let integral = contour::direct_kernel_integral_shifted(kap, p, w, quad, shift)?;
    Ok(pref * integral)
}

/// Total channel-1 amplitude.
pub fn psi1_total(
    p: &PhysParams,
    q: &PacketParams,
    x: f64,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<C64> {
    Ok(free_evolution(p, q, x, t) + psi1_scattered(p, q, x, t, quad)?)
}

/// Channel-2 amplitude: Gaussian-windowed momentum integral of the transfer
/// amplitude with the shared time phase `exp(-i hbar k^2 t / 2m)` (the
/// channel offset cancels against the channel-2 dispersion) and the outgoing
/// factor `exp(i k' |x|)`, evanescent below threshold. Even in `x`.
pub fn psi2(
    p: &PhysParams,
    q: &PacketParams,
    x: f64,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<C64> {
    if p.k0 == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    quad.validate()?;
    let beta = p.beta();
    let two_a = p.two_m_v0();
    let pref = (q.sigma * q.sigma / (2.0 * std::f64::consts::PI.powi(3))).powf(0.25);
    let coupling = p.mass * p.k0 / (p.hbar * p.hbar);
    let xa = x.abs();
    let gauss_phase = move |k: f64| -> C64 {
        C64::new(
            -q.sigma * q.sigma * (k - q.k1) * (k - q.k1),
            k * q.x0 - p.hbar * k * k * t / (2.0 * p.mass),
        )
        .exp()
    };
    let f = move |k: f64| -> C64 {
        let kp = k_prime_of(p, k);
        let denom = contour::m_axis(k, two_a) + beta;
        gauss_phase(k) * (-C64::i() * k * coupling) / denom * (C64::i() * kp * xa).exp()
    };
    let win = quad.u_max.max(8.0) / q.sigma;
    let lo = q.k1 - win;
    let hi = q.k1 + win;
    let scale = 1.0 / q.sigma;
    let abs_tol = scale * 1e-13;

    let mut seeds = Vec::new();
    let mut pole_terms: Vec<PoleTerm> = Vec::new();
    if two_a > 0.0 {
        let s2a = two_a.sqrt();
        seeds.push(-s2a);
        seeds.push(s2a);
    }
    if beta > 0.0 {
        let poles = compute_poles(p)?;
        let p1 = poles.poles[0].re;
        if p1 > lo && p1 < hi {
            let c1 = (p1 * p1 - two_a).sqrt();
            let mprime = (2.0 * p1 * p1 - two_a) / c1;
            let residue = gauss_phase(p1) * (-C64::i() * p1 * coupling) / mprime
                * (C64::i() * c1 * xa).exp();
            pole_terms.push(PoleTerm { location: C64::new(p1, 0.0), residue });
        }
    }
    let v = quadrature::integrate_with_poles(&f, lo, hi, &pole_terms, abs_tol, 1e-12, 400_000, &seeds)?;
    Ok(pref * v)
}
