//! Stationary two-channel scattering at the point junction.
//!
//! For a unit wave incident from the left in channel 1 at energy `E`, the
//! junction conditions at `x = 0` fix a reflection amplitude `r` in channel 1
//! and a transfer amplitude `t2` into channel 2:
//!
//! ```text
//! r  = -beta / (k k' + beta)
//! t2 = -i k (m k0 / hbar^2) / (k k' + beta)
//! ```
//!
//! with `beta = m^2 k0^2 / hbar^4` and `k' = sqrt(k^2 - 2 m v0 / hbar^2)` on
//! the branch with `Im k' >= 0`, so closed-channel solutions decay away from
//! the junction.

use crate::error::{Error, Result};
use crate::phys::PhysParams;
use crate::C64;

/// Wavenumbers of the two channels at a shared energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelMomenta {
    /// Channel-1 wavenumber, real and non-negative.
    pub k: f64,
    /// Channel-2 wavenumber; real for `E > v0`, positive imaginary below.
    pub k_prime: C64,
}

/// Square root of `z` on the branch with non-negative imaginary part.
/// For real non-negative `z` this is the ordinary positive root.
pub fn sqrt_im_nonneg(z: C64) -> C64 {
    let r = z.sqrt();
    if r.im < 0.0 || (r.im == 0.0 && r.re < 0.0) {
        -r
    } else {
        r
    }
}

/// `k' = sqrt(k^2 - 2 m v0 / hbar^2)` for real `k`, `Im k' >= 0` branch.
pub fn k_prime_of(p: &PhysParams, k: f64) -> C64 {
    let z = k * k - p.two_m_v0();
    if z >= 0.0 {
        C64::new(z.sqrt(), 0.0)
    } else {
        C64::new(0.0, (-z).sqrt())
    }
}

/// Channel momenta at energy `E >= 0`: `k = sqrt(2 m E) / hbar`.
pub fn channel_momenta(p: &PhysParams, energy: f64) -> Result<ChannelMomenta> {
    if energy < 0.0 {
        return Err(Error::NegativeEnergy(energy));
    }
    let k = (2.0 * p.mass * energy).sqrt() / p.hbar;
    Ok(ChannelMomenta { k, k_prime: k_prime_of(p, k) })
}

impl ChannelMomenta {
    /// Build directly from a channel-1 wavenumber `k >= 0`.
    pub fn from_k(p: &PhysParams, k: f64) -> Result<Self> {
        if k < 0.0 {
            return Err(Error::InvalidParameter(format!("k must be >= 0, got {k}")));
        }
        Ok(Self { k, k_prime: k_prime_of(p, k) })
    }
}

/// Reflection and channel-transfer amplitudes at one wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringAmplitudes {
    pub k: f64,
    pub r: C64,
    pub t2: C64,
}

pub fn scattering_amplitudes(p: &PhysParams, cm: &ChannelMomenta) -> Result<ScatteringAmplitudes> {
    let beta = p.beta();
    if cm.k == 0.0 && beta == 0.0 {
        return Err(Error::Threshold);
    }
    let denom = cm.k * cm.k_prime + beta;
    let r = -beta / denom;
    let t2 = -C64::i() * cm.k * (p.mass * p.k0 / (p.hbar * p.hbar)) / denom;
    Ok(ScatteringAmplitudes { k: cm.k, r, t2 })
}

/// Stationary wave at position `x`: `(phi1, phi2)`.
///
/// `phi1 = e^{ikx} + r e^{-ikx}` left of the junction and `(1+r) e^{ikx}`
/// right of it; `phi2 = t2 e^{i k' |x|}` on both sides.
pub fn stationary_state(p: &PhysParams, cm: &ChannelMomenta, x: f64) -> Result<(C64, C64)> {
    let amp = scattering_amplitudes(p, cm)?;
    let k = C64::new(cm.k, 0.0);
    let phi1 = if x < 0.0 {
        (C64::i() * k * x).exp() + amp.r * (-C64::i() * k * x).exp()
    } else {
        (1.0 + amp.r) * (C64::i() * k * x).exp()
    };
    let phi2 = amp.t2 * (C64::i() * cm.k_prime * x.abs()).exp();
    Ok((phi1, phi2))
}

/// Probability-flux split `(R, T1, T2)`.
///
/// Open channel 2: `R + T1 + T2 = 1` with `T2 = 2 (k'/k) |t2|^2` (channel 2
/// radiates symmetrically to both sides). Closed channel 2: `T2 = 0` and
/// `R + T1 = 1`.
pub fn flux_balance(p: &PhysParams, cm: &ChannelMomenta) -> Result<(f64, f64, f64)> {
    let amp = scattering_amplitudes(p, cm)?;
    let r_flux = amp.r.norm_sqr();
    let t1_flux = (1.0 + amp.r).norm_sqr();
    let t2_flux = if cm.k_prime.im > 0.0 || cm.k == 0.0 {
        0.0
    } else {
        2.0 * (cm.k_prime.re / cm.k) * amp.t2.norm_sqr()
    };
    Ok((r_flux, t1_flux, t2_flux))
}

/// The four roots of `k^4 - (2 m v0/hbar^2) k^2 - beta^2 = 0`, ordered by the
/// sign convention (outer, inner) = (-,+), (+,+), (-,-), (+,-):
/// `k = +-sqrt(m v0/hbar^2 +- sqrt((m v0/hbar^2)^2 + beta^2))`.
///
/// A root is genuine when the unrationalized junction denominator vanishes
/// there, `k k' = -beta` on the `Im k' >= 0` branch; the other two roots are
/// artifacts of squaring and carry a vanishing numerator instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleSet {
    pub poles: [C64; 4],
    pub genuine: [bool; 4],
}

impl PoleSet {
    /// Residual of the quartic at `k`, relative to the largest monomial.
    pub fn quartic_residual(p: &PhysParams, k: C64) -> f64 {
        let two_a = p.two_m_v0();
        let beta = p.beta();
        let val = k.powi(4) - two_a * k.powi(2) - beta * beta;
        let scale = k.norm().powi(4).max(two_a * k.norm_sqr()).max(beta * beta).max(f64::MIN_POSITIVE);
        val.norm() / scale
    }

    /// Minimum pairwise distance between poles.
    pub fn min_separation(&self) -> f64 {
        let mut d = f64::INFINITY;
        for i in 0..4 {
            for j in (i + 1)..4 {
                d = d.min((self.poles[i] - self.poles[j]).norm());
            }
        }
        d
    }
}

/// `k k'` on the `Im k' >= 0` branch, continued to complex `k` through the
/// principal square root of `k^2 - 2mv0/hbar^2` (sign-adjusted).
pub fn kkprime_branch(p: &PhysParams, k: C64) -> C64 {
    k * sqrt_im_nonneg(k * k - p.two_m_v0())
}

pub fn compute_poles(p: &PhysParams) -> Result<PoleSet> {
    let beta = p.beta();
    let a = 0.5 * p.two_m_v0(); // m v0 / hbar^2
    if beta == 0.0 && a == 0.0 {
        return Err(Error::DegeneratePoles(
            "v0 = 0 and k0 = 0 collapse all four roots to zero".into(),
        ));
    }
    let s = (a * a + beta * beta).sqrt();
    let outer = (a + s).sqrt();
    // s - a rationalized to beta^2/(s + a): the direct difference cancels
    // catastrophically when beta << a
    let inner = beta / (a + s).sqrt();
    let poles = [
        C64::new(-outer, 0.0),
        C64::new(outer, 0.0),
        C64::new(0.0, -inner),
        C64::new(0.0, inner),
    ];
    let mut genuine = [false; 4];
    let scale = beta.max(s);
    for (i, &kl) in poles.iter().enumerate() {
        let prod = kkprime_branch(p, kl);
        let hits_genuine = (prod + beta).norm() <= 1e-8 * scale;
        let hits_spurious = (prod - beta).norm() <= 1e-8 * scale;
        // beta = 0 makes the two conditions coincide; such roots carry a
        // vanishing residue numerator and are filed as non-genuine.
        genuine[i] = hits_genuine && !hits_spurious;
    }
    Ok(PoleSet { poles, genuine })
}
