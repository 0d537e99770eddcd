//! Contour evaluation of the scattered-wave integral
//!
//! ```text
//! I = PV int_R exp(-w (k - kappa)^2) / (beta + k k'(k)) dk
//! ```
//!
//! where `k'` is the `Im >= 0` branch on the real axis. Rationalizing the
//! denominator turns this into a four-pole integrand; shifting the contour to
//! the damped line through `kappa` splits `I` into residue contributions, a
//! Gaussian-damped line integral, and two small branch-cut compensation
//! integrals.
//!
//! The function `k k'` is two-sheeted with branch points at
//! `k = +-sqrt(2 m v0)/hbar`. The sheet that continues analytically across
//! the deformation strip is `m_ext(k) = k^2 sqrt(1 - 2mv0/(hbar k)^2)`
//! (principal root): it is analytic off the segment between the branch
//! points, has no real poles, and its only poles are the imaginary pair
//! where `m_ext = -beta`, each with numerator `-2 beta`. On the real axis
//! `m_ext` agrees with the physical branch except left of `-sqrt(2mv0)/hbar`,
//! where the two differ by a sign; the difference integral (`C_left`) and,
//! when the line lies below the axis, the cut-jump integral across the
//! middle segment (`C_mid`) restore exact equality with the direct integral.
//! Both compensations are exponentially small for fast packets but are
//! evaluated unconditionally.

use crate::error::{Error, Result};
use crate::phys::PhysParams;
use crate::quadrature::{self, PoleTerm, QuadratureSpec, Scheme};
use crate::stationary::PoleSet;
use crate::C64;

use super::KappaShift;

/// `k k'(k)` on the real axis, `Im k' >= 0` branch. Odd in `k`.
pub(crate) fn m_axis(k: f64, two_a: f64) -> C64 {
    let z = k * k - two_a;
    if z >= 0.0 {
        C64::new(k * z.sqrt(), 0.0)
    } else {
        C64::new(0.0, k * (-z).sqrt())
    }
}

/// Derivative of `m_axis` on the outer real segments, `(2k^2 - 2a)/k'`.
fn m_axis_deriv(k: f64, two_a: f64) -> f64 {
    let c = (k * k - two_a).sqrt();
    (2.0 * k * k - two_a) / c
}

/// The sheet of `k k'` analytic off the middle segment:
/// `m_ext(k) = k^2 sqrt(1 - two_a / k^2)` (principal root).
///
/// On the middle segment itself the value is the limit from the upper half
/// plane, which coincides with `m_axis` there. In the upper half plane
/// `m_ext` equals the continued `Im >= 0` branch; in the lower half plane it
/// is its second sheet.
pub(crate) fn m_ext(k: C64, two_a: f64) -> C64 {
    if two_a == 0.0 {
        return k * k;
    }
    if k.norm_sqr() == 0.0 {
        return C64::new(0.0, 0.0);
    }
    if k.im == 0.0 {
        let kr = k.re;
        let z = kr * kr - two_a;
        if z >= 0.0 {
            return C64::new(kr.abs() * z.sqrt(), 0.0);
        }
        return C64::new(0.0, kr * (-z).sqrt());
    }
    k * k * (C64::new(1.0, 0.0) - two_a / (k * k)).sqrt()
}

/// Derivative of `m_ext` away from the branch points:
/// `m' = (2k^2 - two_a) k / m_ext`.
fn m_ext_deriv(k: C64, two_a: f64) -> C64 {
    (2.0 * k * k - two_a) * k / m_ext(k, two_a)
}

/// How a genuine pole sitting exactly on the real axis is weighted in the
/// residue sum. The corrected split keeps its full principal-value content
/// inside the compensation integrals, so the zero-weight rule is exact; the
/// half-weight alternative is retained as a comparison switch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RealPoleRule {
    #[default]
    ZeroWeight,
    HalfWeight,
}

/// Per-pole residue weights for the deformed contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueSelection {
    pub weights: [f64; 4],
}

impl ResidueSelection {
    /// Geometric crossing rule: a pole is swept iff it lies strictly between
    /// the real axis and the horizontal line `Im k = Im kappa`; the sign is
    /// `+1` for counterclockwise closure (`Im kappa > 0`), `-1` otherwise.
    /// Real-axis poles are weighted per `rule`.
    pub fn for_shift(poles: &PoleSet, kappa: KappaShift, rule: RealPoleRule) -> Self {
        let ki = kappa.value.im;
        let mut weights = [0.0; 4];
        for (i, &kl) in poles.poles.iter().enumerate() {
            if kl.im == 0.0 {
                if poles.genuine[i] && rule == RealPoleRule::HalfWeight {
                    weights[i] = if ki > 0.0 { 0.5 } else { -0.5 };
                }
            } else if 0.0 < kl.im && kl.im < ki {
                weights[i] = 1.0;
            } else if ki < kl.im && kl.im < 0.0 {
                weights[i] = -1.0;
            }
        }
        Self { weights }
    }

    pub fn all_zero(&self) -> bool {
        self.weights.iter().all(|&w| w == 0.0)
    }
}

/// Residue numerator `k k' - beta` at a pole, on the branch swept by the
/// deformation: the continued sheet `m_ext` off the axis (`-2 beta` at both
/// imaginary poles), the physical branch on it.
fn residue_numerator(p: &PhysParams, kl: C64) -> C64 {
    let beta = p.beta();
    if kl.im == 0.0 {
        m_axis(kl.re, p.two_m_v0()) - beta
    } else {
        m_ext(kl, p.two_m_v0()) - beta
    }
}

/// Gaussian center of the damped envelope on the real axis. For the packet
/// kernel this is the carrier wavenumber.
pub(crate) fn envelope_center(w: C64, kappa: KappaShift) -> f64 {
    kappa.value.re - (w.im / w.re) * kappa.value.im
}

/// Natural magnitude scale of the shifted integrand,
/// `exp(Re shift - min_k Re[w (k - kappa)^2])`.
fn envelope_scale(w: C64, kappa: KappaShift, shift: C64) -> f64 {
    let kstar = envelope_center(w, kappa);
    let d = C64::new(kstar, 0.0) - kappa.value;
    (shift.re - (w * d * d).re).exp()
}

fn gauss_term(w: C64, kappa: KappaShift, shift: C64, k: C64) -> C64 {
    let d = k - kappa.value;
    (shift - w * d * d).exp()
}

/// `2 pi i sum_l mu_l N(k_l) exp(shift - w (k_l - kappa)^2) / prod_{i != l} (k_l - k_i)`.
pub fn residue_sum_shifted(
    poles: &PoleSet,
    sel: &ResidueSelection,
    kappa: KappaShift,
    p: &PhysParams,
    w: C64,
    shift: C64,
) -> Result<C64> {
    if sel.all_zero() {
        return Ok(C64::new(0.0, 0.0));
    }
    let scale = poles.poles.iter().map(|q| q.norm()).fold(0.0, f64::max);
    if poles.min_separation() < 1e-12 * scale.max(1.0) {
        return Err(Error::DegeneratePoles(format!(
            "poles too close for the residue sum (min separation {:.3e})",
            poles.min_separation()
        )));
    }
    let mut acc = C64::new(0.0, 0.0);
    for (l, &kl) in poles.poles.iter().enumerate() {
        if sel.weights[l] == 0.0 {
            continue;
        }
        let mut denom = C64::new(1.0, 0.0);
        for (i, &ki) in poles.poles.iter().enumerate() {
            if i != l {
                denom *= kl - ki;
            }
        }
        let num = residue_numerator(p, kl);
        acc += sel.weights[l] * num * gauss_term(w, kappa, shift, kl) / denom;
    }
    Ok(2.0 * std::f64::consts::PI * C64::i() * acc)
}

/// Spec-level wrapper without an exponent shift.
pub fn residue_sum(
    poles: &PoleSet,
    sel: &ResidueSelection,
    kappa: KappaShift,
    p: &PhysParams,
    w: C64,
) -> Result<C64> {
    residue_sum_shifted(poles, sel, kappa, p, w, C64::new(0.0, 0.0))
}

const LINE_BUDGET: usize = 300_000;
const CORR_BUDGET: usize = 200_000;
const DIRECT_BUDGET: usize = 600_000;

fn dispatch_with_poles<F: Fn(f64) -> C64>(
    f: &F,
    a: f64,
    b: f64,
    poles: &[PoleTerm],
    abs_tol: f64,
    budget: usize,
    seeds: &[f64],
    scheme: Scheme,
) -> Result<C64> {
    match scheme {
        Scheme::GaussHermiteLike => {
            quadrature::integrate_with_poles(f, a, b, poles, abs_tol, 1e-12, budget, seeds)
        }
        Scheme::AdaptiveTrapezoid => {
            // subtract the poles, integrate the smooth remainder by panel
            // doubling, then add the closed-form parts back
            let reg = |x: f64| -> C64 {
                let mut v = f(x);
                for p in poles {
                    v -= p.residue / (C64::new(x, 0.0) - p.location);
                }
                v
            };
            let mut total = quadrature::integrate_trapezoid(&reg, a, b, abs_tol, 1e-11, 256)?;
            for p in poles {
                if p.location.im == 0.0 {
                    let xp = p.location.re;
                    total += p.residue * ((b - xp).abs() / (xp - a).abs()).ln();
                } else {
                    total += p.residue
                        * ((C64::new(b, 0.0) - p.location).ln() - (C64::new(a, 0.0) - p.location).ln());
                }
            }
            Ok(total)
        }
    }
}

/// The damped line integral along `k = u + kappa`, `u` real:
/// `int exp(shift - w u^2) / (beta + m_ext(u + kappa)) du`.
///
/// The integrand equals the rationalized form
/// `(m - beta) exp(...) / prod (u + kappa - k_i)` with `m` on the continued
/// sheet; the unrationalized form is used because it is smooth at the two
/// removable roots. Poles approaching the line are subtracted analytically.
pub fn line_integral_u_shifted(
    kappa: KappaShift,
    poles: &PoleSet,
    p: &PhysParams,
    w: C64,
    quad: &QuadratureSpec,
    shift: C64,
) -> Result<C64> {
    quad.validate()?;
    let beta = p.beta();
    let two_a = p.two_m_v0();
    let rw = w.re.sqrt();
    let half_width = quad.u_max / rw;
    let scale = envelope_scale(w, kappa, shift);
    let abs_tol = scale * (half_width / quad.u_max) * 1e-12;

    let g = move |u: f64| -> C64 {
        let k = C64::new(u, 0.0) + kappa.value;
        (shift - w * u * u).exp() / (beta + m_ext(k, two_a))
    };

    // poles of 1/(beta + m_ext): the imaginary pair
    let mut subtracted: Vec<PoleTerm> = Vec::new();
    for &kl in &poles.poles {
        if kl.im == 0.0 {
            continue;
        }
        let up = kl - kappa.value;
        if up.im.abs() < 1.5 && up.re.abs() < half_width + 2.0 {
            if up.im.abs() < 1e-9 {
                return Err(Error::Quadrature(format!(
                    "pole at {kl} sits on the shifted line (distance {:.3e})",
                    up.im.abs()
                )));
            }
            let residue = gauss_term(w, kappa, shift, kl) / m_ext_deriv(kl, two_a);
            subtracted.push(PoleTerm { location: up, residue });
        }
    }
    // seed panel edges at the branch-point projections: the integrand has a
    // square-root kink arbitrarily close to the line when Im kappa is small
    let mut seeds = Vec::new();
    if two_a > 0.0 {
        let s2a = two_a.sqrt();
        seeds.push(-s2a - kappa.value.re);
        seeds.push(s2a - kappa.value.re);
    }
    dispatch_with_poles(
        &g,
        -half_width,
        half_width,
        &subtracted,
        abs_tol,
        LINE_BUDGET,
        &seeds,
        quad.scheme,
    )
}

/// Spec-level wrapper without an exponent shift.
pub fn line_integral_u(
    kappa: KappaShift,
    poles: &PoleSet,
    p: &PhysParams,
    w: C64,
    quad: &QuadratureSpec,
) -> Result<C64> {
    line_integral_u_shifted(kappa, poles, p, w, quad, C64::new(0.0, 0.0))
}

/// Branch-cut compensation integrals.
///
/// `C_left`: on `(-inf, -sqrt(two_a)]` the physical branch and the continued
/// sheet differ by the sign of `k k'`; the difference integral carries the
/// principal-value content of the genuine real pole.
/// `C_mid`: when the line lies below the axis the deformation uses the
/// lower boundary values across the middle cut; the jump
/// `1/(beta + m) - 1/(beta - m)` over the segment restores the upper values
/// the direct integral uses.
pub fn cut_corrections_shifted(
    kappa: KappaShift,
    poles: &PoleSet,
    p: &PhysParams,
    w: C64,
    quad: &QuadratureSpec,
    shift: C64,
) -> Result<C64> {
    quad.validate()?;
    let beta = p.beta();
    let two_a = p.two_m_v0();
    let rw = w.re.sqrt();
    let scale = envelope_scale(w, kappa, shift);
    let abs_tol = scale * (1.0 / rw) * 1e-12;
    let mut total = C64::new(0.0, 0.0);

    if two_a > 0.0 && kappa.value.im < 0.0 {
        let s2a = two_a.sqrt();
        let mid = |k: f64| -> C64 {
            let m = m_axis(k, two_a); // i k sqrt(two_a - k^2) on the segment
            gauss_term(w, kappa, shift, C64::new(k, 0.0)) * (1.0 / (beta + m) - 1.0 / (beta - m))
        };
        total += quadrature::integrate(&mid, -s2a, s2a, abs_tol, 1e-12, CORR_BUDGET, &[0.0])?;
    }

    if beta > 0.0 {
        // genuine real pole of the physical branch
        let p1 = poles.poles[0].re;
        let s2a = two_a.sqrt();
        let hi = -s2a;
        let kstar = envelope_center(w, kappa);
        let lo = (p1.min(kstar.min(0.0)) - quad.u_max / rw).min(hi - 1.0);
        let jump = move |k: f64| -> C64 {
            let m = m_axis(k, two_a);
            gauss_term(w, kappa, shift, C64::new(k, 0.0)) * (1.0 / (beta + m) - 1.0 / (beta - m))
        };
        let residue = gauss_term(w, kappa, shift, C64::new(p1, 0.0)) / m_axis_deriv(p1, two_a);
        let poles_on = [PoleTerm { location: C64::new(p1, 0.0), residue }];
        total += dispatch_with_poles(
            &jump,
            lo,
            hi,
            &poles_on,
            abs_tol,
            CORR_BUDGET,
            &[],
            quad.scheme,
        )?;
    }
    Ok(total)
}

/// Full deformed-contour evaluation of the kernel integral, with exponent
/// offset `shift` folded into every exponential.
pub fn scattered_kernel_integral_shifted(
    kappa: KappaShift,
    poles: &PoleSet,
    p: &PhysParams,
    w: C64,
    quad: &QuadratureSpec,
    rule: RealPoleRule,
    shift: C64,
) -> Result<C64> {
    let sel = ResidueSelection::for_shift(poles, kappa, rule);
    let res = residue_sum_shifted(poles, &sel, kappa, p, w, shift)?;
    let line = line_integral_u_shifted(kappa, poles, p, w, quad, shift)?;
    let corr = cut_corrections_shifted(kappa, poles, p, w, quad, shift)?;
    Ok(res + line + corr)
}

/// Principal-value quadrature of the kernel integrand along the real axis.
///
/// This is the reference path the deformed-contour split is validated
/// against; it never deforms and needs no residue bookkeeping.
pub fn direct_kernel_integral_shifted(
    kappa: KappaShift,
    p: &PhysParams,
    w: C64,
    quad: &QuadratureSpec,
    shift: C64,
) -> Result<C64> {
    quad.validate()?;
    let beta = p.beta();
    if beta == 0.0 {
        return Err(Error::InvalidParameter(
            "direct kernel integral needs a nonzero coupling".into(),
        ));
    }
    let two_a = p.two_m_v0();
    let rw = w.re.sqrt();
    let kstar = envelope_center(w, kappa);
    let poles = crate::stationary::compute_poles(p)?;
    let p1 = poles.poles[0].re;
    let s2a = two_a.sqrt();
    let lo = (kstar - (quad.u_max + 2.0) / rw).min(p1 - 2.0);
    let hi = (kstar + (quad.u_max + 2.0) / rw).max(s2a + 2.0);
    let scale = envelope_scale(w, kappa, shift);
    let abs_tol = scale * (1.0 / rw) * 1e-12;

    let f = move |k: f64| -> C64 {
        gauss_term(w, kappa, shift, C64::new(k, 0.0)) / (beta + m_axis(k, two_a))
    };
    let residue = gauss_term(w, kappa, shift, C64::new(p1, 0.0)) / m_axis_deriv(p1, two_a);
    let on_axis = [PoleTerm { location: C64::new(p1, 0.0), residue }];
    quadrature::integrate_with_poles(&f, lo, hi, &on_axis, abs_tol, 1e-12, DIRECT_BUDGET, &[-s2a, s2a])
}
