//! Adaptive quadrature for complex-valued integrands on the real line.
//!
//! The core rule is a 7-15 Gauss-Kronrod pair with recursive bisection.
//! Simple poles on or near the integration path are handled by subtracting
//! the singular term analytically and adding back its closed-form integral
//! (a principal value when the pole sits on the path).

use crate::error::{Error, Result};
use crate::C64;
use serde::{Deserialize, Serialize};

/// Controls for the damped line integrals of the scattered-wave kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Base node count per panel family; bisection refines from here.
    pub n_nodes: usize,
    /// Half-width of the scaled integration window: the Gaussian factor
    /// `exp(-Re(w) u^2)` is below `exp(-u_max^2)` at the window edge.
    pub u_max: f64,
    pub scheme: Scheme,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Gauss-Kronrod panels scaled to the Gaussian damping width.
    GaussHermiteLike,
    /// Doubling trapezoid panels; slower, kept as a cross-check scheme.
    AdaptiveTrapezoid,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { n_nodes: 128, u_max: 8.0, scheme: Scheme::GaussHermiteLike }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_nodes < 16 {
            return Err(Error::InvalidParameter(format!(
                "quadrature n_nodes must be >= 16, got {}",
                self.n_nodes
            )));
        }
        if self.u_max < 6.0 {
            return Err(Error::InvalidParameter(format!(
                "quadrature u_max must be >= 6, got {}",
                self.u_max
            )));
        }
        Ok(())
    }
}

// 15-point Kronrod abscissae on [-1, 1] (positive half) and weights, with the
// embedded 7-point Gauss weights on the odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss-Kronrod 7-15 panel: returns (K15 estimate, error estimate).
fn gk15<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> (C64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    kronrod *= half;
    gauss *= half;
    ((kronrod), (kronrod - gauss).norm())
}

struct Panel {
    a: f64,
    b: f64,
    value: C64,
    err: f64,
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]`.
///
/// `seeds` forces initial panel boundaries (kinks, near-singular projections).
/// Refinement stops when the summed error estimate drops below
/// `max(abs_tol, rel_tol * |integral|)` or the evaluation budget runs out;
/// exceeding the budget with a large residual error is an error.
pub fn integrate<F: Fn(f64) -> C64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_evals: usize,
    seeds: &[f64],
) -> Result<C64> {
    if !(b > a) {
        return Ok(C64::new(0.0, 0.0));
    }
    let mut edges: Vec<f64> = vec![a, b];
    for &s in seeds {
        if s > a && s < b {
            edges.push(s);
        }
    }
    edges.sort_by(|x, y| x.partial_cmp(y).unwrap());
    edges.dedup();

    let mut panels: Vec<Panel> = Vec::with_capacity(64);
    let mut evals = 0usize;
    for win in edges.windows(2) {
        let (v, e) = gk15(f, win[0], win[1]);
        evals += 15;
        panels.push(Panel { a: win[0], b: win[1], value: v, err: e });
    }

    loop {
        let total_err: f64 = panels.iter().map(|p| p.err).sum();
        let total: C64 = panels.iter().map(|p| p.value).sum();
        let tol = abs_tol.max(rel_tol * total.norm());
        if total_err <= tol {
            return Ok(total);
        }
        if evals >= max_evals {
            if total_err > 1e3 * tol.max(f64::MIN_POSITIVE) {
                return Err(Error::Quadrature(format!(
                    "budget {max_evals} exhausted with error {total_err:.3e} > tol {tol:.3e}"
                )));
            }
            return Ok(total);
        }
        // bisect the worst panel
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let Panel { a: pa, b: pb, .. } = panels[worst];
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            // interval at floating-point resolution; freeze its error
            panels[worst].err = 0.0;
            continue;
        }
        let (v1, e1) = gk15(f, pa, mid);
        let (v2, e2) = gk15(f, mid, pb);
        evals += 30;
        panels[worst] = Panel { a: pa, b: mid, value: v1, err: e1 };
        panels.push(Panel { a: mid, b: pb, value: v2, err: e2 });
    }
}

/// Adaptive trapezoid fallback: panel doubling until successive refinements
/// agree to tolerance.
pub fn integrate_trapezoid<F: Fn(f64) -> C64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    n0: usize,
) -> Result<C64> {
    if !(b > a) {
        return Ok(C64::new(0.0, 0.0));
    }
    let mut n = n0.max(16);
    let eval = |n: usize| -> C64 {
        let h = (b - a) / n as f64;
        let mut acc = 0.5 * (f(a) + f(b));
        for i in 1..n {
            acc += f(a + i as f64 * h);
        }
        acc * h
    };
    let mut prev = eval(n);
    for _ in 0..18 {
        n *= 2;
        let cur = eval(n);
        if (cur - prev).norm() <= abs_tol.max(rel_tol * cur.norm()) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Quadrature(format!(
        "trapezoid failed to converge after {n} panels"
    )))
}

/// A simple pole of an integrand, with its residue.
#[derive(Debug, Clone, Copy)]
pub struct PoleTerm {
    pub location: C64,
    pub residue: C64,
}

/// Integrate `f` over `[a, b]` where `f` has the listed simple poles, each
/// either strictly off the path or exactly on it (real location inside the
/// interval; taken as a principal value).
///
/// The singular parts `residue/(x - location)` are subtracted pointwise and
/// integrated in closed form: `log` terms off the path, a real log ratio for
/// the principal value on it.
pub fn integrate_with_poles<F: Fn(f64) -> C64>(
    f: &F,
    a: f64,
    b: f64,
    poles: &[PoleTerm],
    abs_tol: f64,
    rel_tol: f64,
    max_evals: usize,
    seeds: &[f64],
) -> Result<C64> {
    if !(b > a) {
        return Ok(C64::new(0.0, 0.0));
    }
    let on_axis: Vec<&PoleTerm> = poles
        .iter()
        .filter(|p| p.location.im == 0.0 && p.location.re > a && p.location.re < b)
        .collect();
    let reg = |x: f64| -> C64 {
        // near an on-path pole the difference f - R/(x-p) is evaluated via
        // the derivative of (x - p) f to avoid 0/0 noise
        for p in &on_axis {
            let d = x - p.location.re;
            if d.abs() < 1e-7 {
                let h = 1e-4;
                let xp = p.location.re;
                let up = (xp + h - xp) * f(xp + h);
                let dn = (xp - h - xp) * f(xp - h);
                let slope = (up - dn) / (2.0 * h);
                let mut v = slope;
                for q in poles {
                    if (q.location - p.location).norm() > 1e-12 {
                        v -= q.residue / (C64::new(x, 0.0) - q.location);
                    }
                }
                return v;
            }
        }
        let mut v = f(x);
        for p in poles {
            v -= p.residue / (C64::new(x, 0.0) - p.location);
        }
        v
    };
    let mut all_seeds: Vec<f64> = seeds.to_vec();
    for p in poles {
        all_seeds.push(p.location.re);
        all_seeds.push(p.location.re - 0.5);
        all_seeds.push(p.location.re + 0.5);
    }
    let mut total = integrate(&reg, a, b, abs_tol, rel_tol, max_evals, &all_seeds)?;
    for p in poles {
        if p.location.im == 0.0 {
            let xp = p.location.re;
            if xp > a && xp < b {
                total += p.residue * ((b - xp) / (xp - a)).ln();
            } else {
                total += p.residue * ((b - xp).abs() / (a - xp).abs()).ln();
            }
        } else {
            let num = C64::new(b, 0.0) - p.location;
            let den = C64::new(a, 0.0) - p.location;
            total += p.residue * (num.ln() - den.ln());
        }
    }
    Ok(total)
}
