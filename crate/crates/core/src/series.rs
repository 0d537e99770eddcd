//! Truncated asymptotic series for the two channel-separation regimes.
//!
//! High energy (`E >> v0`): the channel momenta coincide and the scattered
//! kernel collapses to a Gaussian over a quadratic pole pair; the series is
//! in inverse powers of the coupling. Low energy (`E << v0`): the channel-2
//! momentum is expanded about the threshold shift `sqrt(2 m v0)/hbar` and
//! channel 2 rides the evanescent envelope `exp(-sqrt(2 m v0)/hbar |x|)`.
//!
//! Terms are summed to the smallest-magnitude term (classic optimal
//! truncation), capped at the caller's order.

use crate::error::{Error, Result};
use crate::kernel::{complex_width, envelope_b, free_evolution};
use crate::phys::{packet_energy, PacketParams, PhysParams};
use crate::C64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    HighEnergy,
    LowEnergy,
}

/// Which carrier-drift term the channel-2 series prefactor uses. The
/// displayed form carries `sigma^2 k1`; the completed square behind the
/// kernel carries `2 sigma^2 k1`. The completed-square form tracks the full
/// kernel better and is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KappaVariant {
    #[default]
    CompletedSquare,
    Displayed,
}

/// Reading of the closed-channel envelope exponent. A growing solution is
/// unphysical for a closed channel, so the decaying reading is the default;
/// the literal complex root of the displayed exponent is kept as a switch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnvelopeReading {
    #[default]
    Decaying,
    LiteralComplex,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesParams {
    pub regime: Regime,
    pub n_terms: usize,
    #[serde(default)]
    pub kappa_variant: KappaVariant,
    #[serde(default)]
    pub envelope: EnvelopeReading,
}

impl SeriesParams {
    pub fn new(regime: Regime, n_terms: usize) -> Result<Self> {
        if n_terms < 1 {
            return Err(Error::InvalidParameter("n_terms must be >= 1".into()));
        }
        Ok(Self { regime, n_terms, kappa_variant: Default::default(), envelope: Default::default() })
    }

    /// Regime constant: `beta` for high energy,
    /// `-beta sqrt(2 m v0)/hbar` for low energy.
    pub fn eps0(&self, p: &PhysParams) -> f64 {
        match self.regime {
            Regime::HighEnergy => p.beta(),
            Regime::LowEnergy => -p.beta() * p.two_m_v0().sqrt(),
        }
    }

    /// Ratio `E/v0` checked against the regime; out-of-range configurations
    /// produce a warning string, not an error.
    pub fn regime_warning(&self, p: &PhysParams, q: &PacketParams) -> Option<String> {
        if p.v0 == 0.0 {
            return match self.regime {
                Regime::HighEnergy => None,
                Regime::LowEnergy => Some("low-energy regime undefined at v0 = 0".into()),
            };
        }
        let ratio = packet_energy(p, q) / p.v0;
        match self.regime {
            Regime::HighEnergy if ratio < 10.0 => {
                Some(format!("E/v0 = {ratio:.3} below the high-energy validity ratio 10"))
            }
            Regime::LowEnergy if ratio > 0.1 => {
                Some(format!("E/v0 = {ratio:.3} above the low-energy validity ratio 0.1"))
            }
            _ => None,
        }
    }
}

/// A truncated series evaluation: `value = base + sum of terms[0..=truncation_index]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    pub value: C64,
    /// Non-series part (the free evolution for channel 1, zero for channel 2).
    pub base: C64,
    /// Individual summands with every prefactor folded in.
    pub terms: Vec<C64>,
    /// Index of the smallest-magnitude term; summation stops there.
    pub truncation_index: usize,
    pub warning: Option<String>,
}

impl SeriesResult {
    fn assemble(base: C64, terms: Vec<C64>, warning: Option<String>) -> Self {
        let truncation_index = terms
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
            .map(|(i, _)| i)
            .unwrap_or(0);
        let value = base + terms[..=truncation_index.min(terms.len().saturating_sub(1))]
            .iter()
            .sum::<C64>();
        Self { value, base, terms, truncation_index, warning }
    }
}

fn double_factorial(n: i64) -> f64 {
    if n <= 0 {
        return 1.0; // covers (-1)!! = 0!! = 1
    }
    let mut acc = 1.0;
    let mut k = n;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    acc
}

const SQRT_PI: f64 = 1.772453850905516027298167;

/// High-energy channel-1 summand divided by the envelope:
/// `(-1)^n (2n-1)!! hbar^{4(2n+2)} sqrt(pi) / ((m^2 k0^2)^{2n+2} 2^n w^{n+1/2})`.
fn high_e_summand(p: &PhysParams, w: C64, n: usize) -> C64 {
    let beta = p.beta();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let coeff = sign * double_factorial(2 * n as i64 - 1) * SQRT_PI
        / (beta.powi(2 * n as i32 + 2) * 2f64.powi(n as i32));
    coeff / (w.powi(n as i32) * w.sqrt())
}

/// Channel-1 high-energy series: free part plus `B * sum`.
pub fn psi1_series_high_e(
    p: &PhysParams,
    q: &PacketParams,
    x: f64,
    t: f64,
    n_terms: usize,
) -> Result<SeriesResult> {
    psi1_series_high_e_with(p, q, x, t, &SeriesParams::new(Regime::HighEnergy, n_terms)?)
}

pub fn psi1_series_high_e_with(
    p: &PhysParams,
    q: &PacketParams,
    x: f64,
    t: f64,
    sp: &SeriesParams,
) -> Result<SeriesResult> {
    if p.beta() == 0.0 {
        return Ok(SeriesResult {
            value: free_evolution(p, q, x, t),
            base: free_evolution(p, q, x, t),
            terms: vec![C64::new(0.0, 0.0)],
            truncation_index: 0,
            warning: None,
        });
    }
    let w = complex_width(p, q, t);
    let b = envelope_b(p, q, x, t);
    let terms: Vec<C64> = (0..sp.n_terms).map(|n| b * high_e_summand(p, w, n)).collect();
    Ok(SeriesResult::assemble(free_evolution(p, q, x, t), terms, sp.regime_warning(p, q)))
}

fn series_kappa_prefactor(q: &PacketParams, w: C64, x: f64, variant: KappaVariant) -> C64 {
    let drift = match variant {
        KappaVariant::CompletedSquare => 2.0 * q.sigma * q.sigma * q.k1,
        KappaVariant::Displayed => q.sigma * q.sigma * q.k1,
    };
    C64::i() * C64::new(x.abs() + q.x0, -drift) / (2.0 * w)
}

/// Channel-2 high-energy series: `B * prefactor * sum` with the same
/// summand family as channel 1.
pub fn psi2_series_high_e(
    p: &PhysParams,
    q: &PacketParams,
    x: f64,
    t: f64,
    n_terms: usize,
) -> Result<SeriesResult> {
    psi2_series_high_e_with(p, q, x, t, &SeriesParams::new(Regime::HighEnergy, n_terms)?)
}

pub fn psi2_series_high_e_with(
    p: &PhysParams,
    q: &PacketParams,
    x: f64,
    t: f64,
    sp: &SeriesParams,
) -> Result<SeriesResult> {
    if p.beta() == 0.0 {
        return Ok(SeriesResult {
            value: C64::new(0.0, 0.0),
            base: C64::new(0.0, 0.0),
            terms: vec![C64::new(0.0, 0.0)],
            truncation_index: 0,
            warning: None,
        });
    }
    let w = complex_width(p, q, t);
    let pref = envelope_b(p, q, x, t) * series_kappa_prefactor(q, w, x, sp.kappa_variant);
    let terms: Vec<C64> = (0..sp.n_terms).map(|n| pref * high_e_summand(p, w, n)).collect();
    Ok(SeriesResult::assemble(C64::new(0.0, 0.0), terms, sp.regime_warning(p, q)))
}

/// Low-energy expansion constant `hbar^5 / (m^2 k0^2 sqrt(2 m v0))`.
fn low_e_unit(p: &PhysParams) -> f64 {
    p.hbar.powi(5) / (p.mass * p.mass * p.k0 * p.k0 * p.two_m_v0().sqrt() * p.hbar)
}

fn require_low_e(p: &PhysParams) -> Result<()> {
    if p.v0 == 0.0 {
        return Err(Error::Regime(
            "the low-energy series needs a positive channel offset v0".into(),
        ));
    }
    Ok(())
}

/// Channel-1 low-energy series: free part plus the even-order sum
/// `B sum_{n even} (n-1)!! u^{n+1} (-i)^{n+1} sqrt(pi) / (2^{n/2} w^{n+1/2})`,
/// `u` the expansion constant above; each summand scales as
/// `(k0^2)^{-(n+1)}`.
pub fn psi1_series_low_e(
    p: &PhysParams,
    q: &PacketParams,
    x: f64,
    t: f64,
    n_terms: usize,
) -> Result<SeriesResult> {
    require_low_e(p)?;
    let sp = SeriesParams::new(Regime::LowEnergy, n_terms)?;
    if p.beta() == 0.0 {
        let base = free_evolution(p, q, x, t);
        return Ok(SeriesResult {
            value: base,
            base,
            terms: vec![C64::new(0.0, 0.0)],
            truncation_index: 0,
            warning: None,
        });
    }
    let w = complex_width(p, q, t);
    let b = envelope_b(p, q, x, t);
    let unit = low_e_unit(p);
    let mut terms = Vec::new();
    let mut n = 0usize;
    while n <= sp.n_terms {
        // denominator carries (-i u)^{n+1}, so the summand gains (i u)^{n+1}
        let num = (C64::i() * unit).powi(n as i32 + 1);
        let coeff = double_factorial(n as i64 - 1) * SQRT_PI / 2f64.powi(n as i32 / 2);
        let summand = coeff * num / (w.powi(n as i32) * w.sqrt());
        terms.push(b * summand);
        n += 2;
    }
    Ok(SeriesResult::assemble(free_evolution(p, q, x, t), terms, sp.regime_warning(p, q)))
}

fn low_e_envelope(p: &PhysParams, x: f64, reading: EnvelopeReading) -> C64 {
    let shift = p.two_m_v0().sqrt();
    match reading {
        EnvelopeReading::Decaying => C64::new((-shift * x.abs()).exp(), 0.0),
        EnvelopeReading::LiteralComplex => {
            // literal root of the displayed exponent, sqrt(-2 m v0 |x|)/hbar
            let arg = (p.two_m_v0() * x.abs()).sqrt();
            C64::new(0.0, arg).exp()
        }
    }
}

/// Channel-2 low-energy series: evanescent envelope times two sub-series
/// (even orders behind the drift prefactor, odd orders bare).
pub fn psi2_series_low_e(
    p: &PhysParams,
    q: &PacketParams,
    x: f64,
    t: f64,
    n_terms: usize,
) -> Result<SeriesResult> {
    psi2_series_low_e_with(p, q, x, t, &SeriesParams::new(Regime::LowEnergy, n_terms)?)
}

pub fn psi2_series_low_e_with(
    p: &PhysParams,
    q: &PacketParams,
    x: f64,
    t: f64,
    sp: &SeriesParams,
) -> Result<SeriesResult> {
    require_low_e(p)?;
    if p.beta() == 0.0 {
        return Ok(SeriesResult {
            value: C64::new(0.0, 0.0),
            base: C64::new(0.0, 0.0),
            terms: vec![C64::new(0.0, 0.0)],
            truncation_index: 0,
            warning: None,
        });
    }
    let w = complex_width(p, q, t);
    let env = envelope_b(p, q, x, t) * low_e_envelope(p, x, sp.envelope);
    let pref_even = series_kappa_prefactor(q, w, x, sp.kappa_variant);
    let unit = low_e_unit(p);
    let mut terms = Vec::new();
    for n in 0..=sp.n_terms {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let un1 = unit.powi(n as i32 + 1);
        let term = if n % 2 == 0 {
            let coeff = sign * double_factorial(n as i64 - 1) * SQRT_PI * un1
                / 2f64.powi(n as i32 / 2);
            // w^{(n+1)/2} with even n: integer half powers via sqrt
            let wpow = w.powf(0.5 * (n as f64 + 1.0));
            env * pref_even * coeff / wpow
        } else {
            let coeff = sign * double_factorial(n as i64) * SQRT_PI * un1
                / 2f64.powi((n as i32 + 1) / 2);
            let wpow = w.powf(0.5 * (n as f64 + 2.0));
            env * coeff / wpow
        };
        terms.push(term);
    }
    Ok(SeriesResult::assemble(C64::new(0.0, 0.0), terms, sp.regime_warning(p, q)))
}
