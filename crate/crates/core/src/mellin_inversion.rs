//! Numerical inversion of the Mellin transform along a vertical line,
//!
//! p(t) = (1/2π) ∫ h(c + iu) t^{−(c+iu)} du,
//!
//! and the survival function P(T₀ > t).

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::density_series::{large_t_coefficient, pole_term_family1, small_t_coefficients, DensityResult, Method};
use crate::error::{Error, Result};
use crate::mellin_law::{decay_rate, h_continued, nearest_pole, strip, C0};
use crate::params::{StableParams, StartSign};
use crate::quad::{gk15, integrate, integrate_complex};

type C = Complex64;

/// Largest half-width of the truncated contour.
pub const U_MAX: f64 = 1e4;
/// Minimum distance between the contour and any pole.
pub const POLE_CLEARANCE: f64 = 1e-3;
/// Below this t the default abscissa moves from 1 to 0.
pub const T_SMALL: f64 = 0.01;
/// Lower end of the quadrature range in the survival function.
pub const T_MIN: f64 = 1e-6;

/// The contour actually used: abscissa, truncation half-width and the
/// number of integrand evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub c: f64,
    pub half_width: f64,
    pub nodes: usize,
}

impl ContourSpec {
    /// Default abscissa: 1 (centre of the pole-free band [0, 1]), or
    /// −3/(4α) for t < 0.01, close to the leading small-time pole at −1/α,
    /// so that t^{−c} stays comparable to p(t) ~ t^{1/α}.
    pub fn default_abscissa(alpha: f64, t: f64) -> f64 {
        if t < T_SMALL {
            -0.75 / alpha
        } else {
            1.0
        }
    }
}

struct LineResult {
    value: C,
    err: f64,
    half_width: f64,
    nodes: usize,
}

/// (1/2π)∫ g(c+iu) t^{−(c+iu)} du for a g decaying like |u|^p e^{−κ|u|}
/// with κ = `kappa` and a modest power p.
///
/// The line is cut at the first panel edge U ≥ C0 where the tail estimate
/// 2(|g(c+iU)| + |g(c−iU)|)·t^{−c}/(2πκ) falls below a tenth of the target;
/// the factor 2 covers the polynomial prefactor.
fn line_integral<G: Fn(C) -> Result<C>>(g: G, c: f64, t: f64, tol: f64, kappa: f64) -> Result<LineResult> {
    let lt = t.ln();
    let width = if lt.abs() > 0.0 { (2.0 * PI / lt.abs()).clamp(0.05, 4.0) } else { 4.0 };
    let first_err: RefCell<Option<Error>> = RefCell::new(None);
    let mut integrand = |u: f64| -> C {
        let s = C::new(c, u);
        match g(s) {
            Ok(v) => v * (-s * lt).exp() / (2.0 * PI),
            Err(e) => {
                first_err.borrow_mut().get_or_insert(e);
                C::new(0.0, 0.0)
            }
        }
    };
    // coarse pass for the scale of the result
    let u0 = (C0.max(36.0 / kappa) / width).ceil() * width;
    let mut coarse = C::new(0.0, 0.0);
    let mut u = -u0;
    while u < u0 - 0.5 * width {
        coarse += gk15(&mut integrand, u, u + width).0;
        u += width;
    }
    if let Some(e) = first_err.take() {
        return Err(e);
    }
    let scale = coarse.norm().max(f64::MIN_POSITIVE);
    let tc = (-c * lt).exp();
    let tail = |u: f64| -> Result<f64> {
        let m = g(C::new(c, u))?.norm() + g(C::new(c, -u))?.norm();
        Ok(2.0 * m * tc / (2.0 * PI * kappa))
    };
    let mut half = (C0 / width).ceil() * width;
    let mut tail_est = tail(half)?;
    while tail_est > 0.1 * tol * scale {
        half += width;
        if half > U_MAX {
            return Err(Error::ToleranceUnreachable {
                tol,
                reason: "contour truncation beyond the overflow guard",
            });
        }
        tail_est = tail(half)?;
    }
    let n_panels = (2.0 * half / width).round() as usize;
    let panel_tol = 0.5 * tol * scale / n_panels as f64;
    let mut value = C::new(0.0, 0.0);
    let mut err = 0.0;
    let mut nodes = 0;
    for i in 0..n_panels {
        let a = -half + i as f64 * width;
        let r = integrate_complex(&mut integrand, a, a + width, panel_tol, 0.0);
        value += r.value;
        err += r.error;
        nodes += r.evaluations;
    }
    if let Some(e) = first_err.take() {
        return Err(e);
    }
    Ok(LineResult {
        value,
        err: err + tail_est,
        half_width: half,
        nodes,
    })
}



fn check_t(t: f64, tol: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain { what: "inversion t", value: t });
    }
    if !(tol > 0.0) {
        return Err(Error::Domain { what: "inversion tol", value: tol });
    }
    Ok(())
}

/// Inverts on Re s = c for any c at least [`POLE_CLEARANCE`] from the poles,
/// using the meromorphic continuation of h outside the strip.
pub fn invert_on_line(params: &StableParams, sign: StartSign, t: f64, c: f64, tol: f64) -> Result<(DensityResult, ContourSpec)> {
    check_t(t, tol)?;
    let (pole, dist) = nearest_pole(params.alpha, C::new(c, 0.0));
    if dist < POLE_CLEARANCE {
        return Err(Error::NearPole {
            s: C::new(c, 0.0),
            pole,
            distance: dist,
        });
    }
    let r = params.rho_for(sign);
    let a = params.alpha;
    let line = line_integral(|s| h_continued(a, r, s), c, t, tol, decay_rate(params, sign))?;
    let imag = line.value.im.abs();
    Ok((
        DensityResult {
            value: line.value.re,
            method: Method::Inversion,
            err_estimate: line.err + imag,
        },
        ContourSpec {
            c,
            half_width: line.half_width,
            nodes: line.nodes,
        },
    ))
}

/// Inversion on Re s = c inside the strip of validity.
pub fn invert_density_on(
    params: &StableParams,
    sign: StartSign,
    t: f64,
    tol: f64,
    c: f64,
) -> Result<(DensityResult, ContourSpec)> {
    let (lo, hi) = strip(params.alpha);
    if !(c > lo && c < hi) {
        return Err(Error::StripViolation {
            what: "contour abscissa",
            re: c,
            lo,
            hi,
        });
    }
    invert_on_line(params, sign, t, c, tol)
}

/// Density of T₀ by contour inversion at the default abscissa, to relative
/// tolerance `tol`.
pub fn invert_density(params: &StableParams, sign: StartSign, t: f64, tol: f64) -> Result<DensityResult> {
    invert_density_on(params, sign, t, tol, ContourSpec::default_abscissa(params.alpha, t)).map(|r| r.0)
}

/// P(T₀ > t) by inverting h(s+1)/s, the Mellin transform of the survival
/// function, on Re s = (1 − 1/α)/2.
pub fn survival_mellin(params: &StableParams, sign: StartSign, t: f64, tol: f64) -> Result<f64> {
    if t == 0.0 {
        return Ok(1.0);
    }
    check_t(t, tol)?;
    let a = params.alpha;
    let r = params.rho_for(sign);
    let c = 0.5 * (1.0 - 1.0 / a);
    let line = line_integral(|s| Ok(h_continued(a, r, s + 1.0)? / s), c, t, tol, decay_rate(params, sign))?;
    Ok(line.value.re)
}

fn survival_horizon(alpha: f64, tol: f64) -> f64 {
    let q = (2.0 / alpha).min(2.0 - 1.0 / alpha);
    50f64.max((10.0 / tol).powf(1.0 / q))
}

// ∫_T^∞ p ≈ P T^{1/α−1}/(1−1/α) + αb₁T^{−1/α}
fn survival_tail(params: &StableParams, sign: StartSign, t: f64) -> Result<f64> {
    let a = params.alpha;
    let p = large_t_coefficient(params, sign);
    let b1 = pole_term_family1(a, params.rho_for(sign), 1, 1.0)?;
    Ok(p * t.powf(1.0 / a - 1.0) / (1.0 - 1.0 / a) + a * b1 * t.powf(-1.0 / a))
}

// ∫_0^t p from the small-time expansion
fn survival_head(params: &StableParams, sign: StartSign, t: f64) -> f64 {
    let a = params.alpha;
    small_t_coefficients(a, a * params.rho_for(sign), 2.0)
        .iter()
        .map(|(e, k)| k * t.powf(e + 1.0) / (e + 1.0))
        .sum()
}

/// P(T₀ > t) for every t in `ts` (t ≥ 0), to absolute tolerance `tol`.
///
/// Quadrature of the density in ln t over a log-grid shared by all t, from
/// max(t, 10⁻⁶) to a horizon T*, plus the two leading terms of the power-law
/// tail beyond T* and the small-time expansion below 10⁻⁶. Because the panels
/// are common, the result is nonincreasing in t.
pub fn survival_curve(params: &StableParams, sign: StartSign, ts: &[f64], tol: f64) -> Result<Vec<f64>> {
    if !(tol > 0.0) {
        return Err(Error::Domain { what: "survival tol", value: tol });
    }
    for &t in ts {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::Domain { what: "survival t", value: t });
        }
    }
    if ts.is_empty() {
        return Ok(Vec::new());
    }
    let t_star = survival_horizon(params.alpha, tol);
    let tail = survival_tail(params, sign, t_star)?;
    let inner_tol = (1e-2 * tol).min(1e-10);
    let step = 0.5;
    let v_lo = T_MIN.ln();
    let v_hi = t_star.ln();
    let n_edges = ((v_hi - v_lo) / step).ceil() as usize;
    let edges: Vec<f64> = (0..=n_edges).map(|i| (v_lo + i as f64 * step).min(v_hi)).collect();
    let n_panels = edges.len() - 1;
    let panel_tol = 0.1 * tol / n_panels as f64;

    let mut first_err: Option<Error> = None;
    let mut integrand = |v: f64| -> f64 {
        let t = v.exp();
        match invert_density(params, sign, t, inner_tol) {
            Ok(d) => d.value * t,
            Err(e) => {
                if first_err.is_none() {
                    first_err = Some(e);
                }
                0.0
            }
        }
    };

    let t_lowest = ts.iter().cloned().fold(f64::INFINITY, f64::min);
    let first_needed = edges
        .iter()
        .position(|&e| e > t_lowest.max(T_MIN).ln())
        .unwrap_or(edges.len())
        .saturating_sub(1);
    // cumulative integrals from each edge to T*
    let mut from_edge = vec![0.0; edges.len()];
    for i in (first_needed..n_panels).rev() {
        let r = integrate(&mut integrand, edges[i], edges[i + 1], panel_tol, 0.0);
        from_edge[i] = from_edge[i + 1] + r.value;
    }
    let mut out = Vec::with_capacity(ts.len());
    for &t in ts {
        if t >= t_star {
            out.push(survival_tail(params, sign, t)?);
            continue;
        }
        let v = t.max(T_MIN).ln();
        let i = edges.iter().position(|&e| e > v).unwrap_or(edges.len()) - 1;
        let partial = if v < edges[i + 1] {
            integrate(&mut integrand, v, edges[i + 1], panel_tol, 0.0).value
        } else {
            0.0
        };
        let head = if t < T_MIN {
            survival_head(params, sign, T_MIN) - survival_head(params, sign, t)
        } else {
            0.0
        };
        out.push(head + partial + from_edge[i + 1] + tail);
    }
    if let Some(e) = first_err {
        return Err(e);
    }
    Ok(out)
}

/// P(T₀ > t) under P₁ (`Plus`) or P₋₁ (`Minus`).
pub fn survival(params: &StableParams, sign: StartSign, t: f64, tol: f64) -> Result<f64> {
    Ok(survival_curve(params, sign, &[t], tol)?[0])
}
