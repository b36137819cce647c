//! Density p(t) of T₀ from the residue expansions of its Mellin transform.
//!
//! For irrational α the poles 1 + k/α and k + 1 − 1/α are simple and
//!
//! p(t) = Σ_{k < α(N−½)−1} a_k t^{−1−k/α} − Σ_{k < N} b_k t^{−k−1+1/α} + I_N(t),
//!
//! where I_N is the inverse transform on Re s = N + ½ − 1/α. I_N(t) → 0 as
//! N → ∞ through the set 𝒦(α) of indices with ‖(N−½)α‖ large enough. For
//! α = m/n the two families collide and contribute double-pole terms with a
//! ln t dependence. Near t = 0 a (divergent) small-time expansion is used.

use std::f64::consts::PI;

use log::warn;

use crate::error::{Error, Result};
use crate::gammaspec::{digamma, gamma_ratio, log_gamma_real, sin_pi};
use crate::mellin_inversion::invert_density;
use crate::params::{AlphaClass, StableParams, StartSign};
use crate::quad::integrate;
use num_complex::Complex64;

/// Below this t the dispatcher tries the small-time expansion.
pub const T_ASYMPTOTIC: f64 = 0.05;
/// Largest truncation index tried by the dispatcher.
pub const N_CAP: usize = 400;
/// Magnitude below which a series denominator counts as resonant.
pub const RESONANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    SeriesIrrational,
    SeriesRational,
    Asymptotic,
    Inversion,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::SeriesIrrational => "series-irrational",
            Method::SeriesRational => "series-rational",
            Method::Asymptotic => "asymptotic",
            Method::Inversion => "inversion",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityResult {
    pub value: f64,
    pub method: Method,
    pub err_estimate: f64,
}

/// Whether the irrational series may be used at an index outside 𝒦(α).
///
/// `Unfiltered` sums the series at any N. This converges for α outside a
/// Lebesgue-null class of Liouville numbers, which cannot be recognised from
/// a float; for such α the partial sums may fail to converge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesMode {
    Filtered,
    Unfiltered,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPlan {
    pub n: usize,
    pub in_k: bool,
    /// Bound on |I_N(t)| at `t`.
    pub tail_bound: f64,
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RkTerm {
    pub k: usize,
    pub value: f64,
}

/// Distance from x to the nearest integer.
pub fn norm_dist(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// N ∈ 𝒦(α): ‖(N−½)α‖ > exp(−((α−1)/2)(N−2)ln(N−2)), N ≥ 3.
#[allow(non_snake_case)]
pub fn in_K(alpha: f64, n: usize) -> bool {
    if n < 3 {
        return false;
    }
    let m = (n - 2) as f64;
    let threshold = (-((alpha - 1.0) / 2.0) * m * m.ln()).exp();
    norm_dist((n as f64 - 0.5) * alpha) > threshold
}

/// Coefficient P of t^{1/α−2} in p(t) as t → ∞:
/// −sin²(π/α) sin(παr) Γ(1−1/α)/(π sin(πr) sin(πα) Γ(α−1)).
pub fn large_t_coefficient(params: &StableParams, sign: StartSign) -> f64 {
    let a = params.alpha;
    let r = params.rho_for(sign);
    let g = |x| {
        let (l, s) = log_gamma_real(x).unwrap_or((f64::NAN, 1.0));
        s * l.exp()
    };
    -sin_pi(1.0 / a).powi(2) * sin_pi(a * r) * g(1.0 - 1.0 / a)
        / (PI * sin_pi(r) * sin_pi(a) * g(a - 1.0))
}

fn signed_exp(log_abs: f64, sign: f64) -> f64 {
    sign * log_abs.exp()
}

/// Term of the series at the simple pole 1 + k/α (k ≥ 1), equal to minus
/// the residue of h(s)t^{−s} there.
pub fn pole_term_family1(alpha: f64, r: f64, k: usize, t: f64) -> Result<f64> {
    let kf = k as f64;
    let den = sin_pi((kf + 1.0) / alpha);
    if den.abs() < RESONANCE {
        return Err(Error::Resonance { k, value: den.abs() });
    }
    let trig = sin_pi(1.0 / alpha) / (PI * sin_pi(r)) * sin_pi(r * (kf + 1.0)) * sin_pi(kf / alpha)
        / den;
    let (lg, sg) = log_gamma_real(kf / alpha + 1.0)?;
    let (lf, _) = log_gamma_real(kf + 1.0)?;
    let parity = if k % 2 == 1 { 1.0 } else { -1.0 };
    let l = lg - lf - (1.0 + kf / alpha) * t.ln() + trig.abs().ln();
    Ok(signed_exp(l, sg * parity * trig.signum()))
}

/// Term at the simple pole k + 1 − 1/α (k ≥ 1), equal to minus the residue.
pub fn pole_term_family2(alpha: f64, r: f64, k: usize, t: f64) -> Result<f64> {
    let kf = k as f64;
    let den = sin_pi(alpha * kf);
    if den.abs() < RESONANCE {
        return Err(Error::Resonance { k, value: den.abs() });
    }
    let trig = sin_pi(1.0 / alpha).powi(2) / (PI * sin_pi(r)) * sin_pi(alpha * r * kf) / den;
    let (l1, s1) = log_gamma_real(kf - 1.0 / alpha)?;
    let (l2, s2) = log_gamma_real(alpha * kf - 1.0)?;
    let l = l1 - l2 + (-kf - 1.0 + 1.0 / alpha) * t.ln() + trig.abs().ln();
    Ok(-signed_exp(l, s1 * s2 * trig.signum()))
}

// Constants of the remainder majorant on Re s = N + ½ − 1/α.
struct TailConstants {
    c1: f64,
    c2: f64,
    j: f64,
}

impl TailConstants {
    fn new(alpha: f64, r: f64) -> Result<Self> {
        let c1 = sin_pi(1.0 / alpha) / sin_pi(r);
        // |Γ(z)/Γ(αz)| ≤ C2 exp(−(α−1)x ln x + (α−1)|y|π/2), sampled
        let mut c2: f64 = 0.0;
        for i in 0..=40 {
            let x = 1.0 + 199.0 * (i as f64 / 40.0).powi(2);
            for jy in 0..=40 {
                let y = 100.0 * jy as f64 / 40.0;
                let g = gamma_ratio(Complex64::new(x, y), alpha)?.norm();
                let env = (-(alpha - 1.0) * x * x.ln() + (alpha - 1.0) * y * PI / 2.0).exp();
                c2 = c2.max(g / env);
            }
        }
        let c2 = 2.0 * c2;
        // J = ∫ cosh(παr u)/cosh(παu) e^{(α−1)|u|π/2} du
        let a = PI * alpha * r;
        let b = PI * alpha;
        let g = (alpha - 1.0) * PI / 2.0;
        let f = |u: f64| ((a - b + g) * u).exp() * (1.0 + (-2.0 * a * u).exp()) / (1.0 + (-2.0 * b * u).exp());
        let rate = b - a - g;
        let upper = 40.0 / rate;
        let head = integrate(f, 0.0, upper, 1e-14, 1e-12).value;
        let j = 2.0 * (head + 2.0 * (-rate * upper).exp() / rate);
        Ok(TailConstants { c1, c2, j })
    }

    fn bound(&self, alpha: f64, n: usize, t: f64) -> f64 {
        let c = n as f64 + 0.5 - 1.0 / alpha;
        let x = c - 1.0;
        let den = sin_pi(alpha * x).abs();
        let l = -c * t.ln() - (alpha - 1.0) * x * x.ln() + (self.c1 * self.c2 * self.j / (2.0 * PI)).ln()
            - den.ln();
        l.exp()
    }
}

/// Truncation index `n` with its 𝒦(α) certificate and a bound on the
/// remainder |I_N(t)|.
pub fn plan_truncation(params: &StableParams, sign: StartSign, t: f64, n: usize) -> Result<TruncationPlan> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain { what: "plan_truncation t", value: t });
    }
    let tc = TailConstants::new(params.alpha, params.rho_for(sign))?;
    Ok(TruncationPlan {
        n,
        in_k: in_K(params.alpha, n),
        tail_bound: if n >= 3 { tc.bound(params.alpha, n, t) } else { f64::INFINITY },
        t,
    })
}

// (value, Σ|terms|)
fn irrational_partial_sum(alpha: f64, r: f64, t: f64, n: usize) -> Result<(f64, f64)> {
    let mut sum = 0.0;
    let mut abs = 0.0;
    let k1_end = alpha * (n as f64 - 0.5) - 1.0;
    let mut k = 1usize;
    while (k as f64) < k1_end {
        let v = pole_term_family1(alpha, r, k, t)?;
        sum += v;
        abs += v.abs();
        k += 1;
    }
    for k in 1..n {
        let v = pole_term_family2(alpha, r, k, t)?;
        sum += v;
        abs += v.abs();
    }
    Ok((sum, abs))
}

/// Series for irrational α truncated at `plan.n`.
pub fn density_irrational(
    params: &StableParams,
    sign: StartSign,
    t: f64,
    plan: &TruncationPlan,
    mode: SeriesMode,
) -> Result<DensityResult> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain { what: "density t", value: t });
    }
    if let AlphaClass::Rational { .. } = params.class() {
        return Err(Error::ClassificationMismatch { expected: "irrational" });
    }
    if mode == SeriesMode::Filtered && !plan.in_k {
        return Err(Error::NotInK { n: plan.n });
    }
    let (value, abs) = irrational_partial_sum(params.alpha, params.rho_for(sign), t, plan.n)?;
    let tail = if plan.t == t {
        plan.tail_bound
    } else {
        plan_truncation(params, sign, t, plan.n)?.tail_bound
    };
    Ok(DensityResult {
        value,
        method: Method::SeriesIrrational,
        err_estimate: tail + 4.0 * f64::EPSILON * abs,
    })
}

/// R_k(t) = παr cos(πr km) − sin(πr km)(π cot(π/α) − ψ(kn−1/α) + αψ(km−1) + ln t).
pub fn rk_term(params: &StableParams, sign: StartSign, k: usize, t: f64) -> Result<RkTerm> {
    let (m, n) = match params.class() {
        AlphaClass::Rational { m, n } => (m as f64, n as f64),
        _ => return Err(Error::ClassificationMismatch { expected: "rational" }),
    };
    let a = params.alpha;
    let r = params.rho_for(sign);
    let kf = k as f64;
    let sn = sin_pi(r * kf * m);
    let cs = sin_pi(r * kf * m + 0.5);
    let mut value = PI * a * r * cs;
    if sn != 0.0 {
        let cot = sin_pi(1.0 / a + 0.5) / sin_pi(1.0 / a);
        value -= sn * (PI * cot - digamma(kf * n - 1.0 / a)? + a * digamma(kf * m - 1.0)? + t.ln());
    }
    Ok(RkTerm { k, value })
}

/// Term of the double-pole sum at s = kn + 1 − 1/α.
fn double_pole_term(params: &StableParams, sign: StartSign, k: usize, t: f64) -> Result<f64> {
    let (m, n) = match params.class() {
        AlphaClass::Rational { m, n } => (m as f64, n as f64),
        _ => return Err(Error::ClassificationMismatch { expected: "rational" }),
    };
    let a = params.alpha;
    let r = params.rho_for(sign);
    let kf = k as f64;
    let rk = rk_term(params, sign, k, t)?.value;
    let pre = sin_pi(1.0 / a).powi(2) / (PI * PI * a * sin_pi(r));
    let (l1, s1) = log_gamma_real(kf * n - 1.0 / a)?;
    let (l2, _) = log_gamma_real(kf * m - 1.0)?;
    let parity = if (k * m as usize) % 2 == 0 { 1.0 } else { -1.0 };
    let l = l1 - l2 + (-kf * n - 1.0 + 1.0 / a) * t.ln();
    Ok(-pre * parity * rk * signed_exp(l, s1))
}

// |T_K| q/(1−q) from the last two terms of one sum.
fn geometric_tail(terms: &[f64]) -> f64 {
    // compare the largest magnitudes of the last two windows; individual
    // ratios are useless when the trigonometric factors pass near zero
    let w = (terms.len() / 8).max(2);
    if terms.len() < 2 * w {
        return terms.iter().map(|v| v.abs()).fold(0.0, f64::max);
    }
    let max_abs = |s: &[f64]| s.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let m1 = max_abs(&terms[terms.len() - w..]);
    let m0 = max_abs(&terms[terms.len() - 2 * w..terms.len() - w]);
    if m1 == 0.0 {
        return 0.0;
    }
    let q = (m1 / m0).powf(1.0 / w as f64);
    if q < 0.9 {
        m1 * q / (1.0 - q)
    } else {
        f64::INFINITY
    }
}

/// Series for α = m/n declared as a fraction, each of its three sums
/// truncated at k ≤ `k_max`.
pub fn density_rational(
    params: &StableParams,
    sign: StartSign,
    t: f64,
    k_max: usize,
) -> Result<DensityResult> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain { what: "density t", value: t });
    }
    let (m, n) = match params.class() {
        AlphaClass::Rational { m, n } => (m as usize, n as usize),
        _ => return Err(Error::ClassificationMismatch { expected: "rational" }),
    };
    let a = params.alpha;
    let r = params.rho_for(sign);
    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    let mut s3 = Vec::new();
    for k in 1..=k_max {
        if (k + 1) % m != 0 {
            s1.push(pole_term_family1(a, r, k, t)?);
        }
        if k % n != 0 {
            s2.push(pole_term_family2(a, r, k, t)?);
        }
        s3.push(double_pole_term(params, sign, k, t)?);
    }
    let all = s1.iter().chain(&s2).chain(&s3);
    let value: f64 = s1.iter().sum::<f64>() + s2.iter().sum::<f64>() + s3.iter().sum::<f64>();
    let abs: f64 = all.map(|v| v.abs()).sum();
    let tail = geometric_tail(&s1) + geometric_tail(&s2) + geometric_tail(&s3);
    Ok(DensityResult {
        value,
        method: Method::SeriesRational,
        err_estimate: tail + 4.0 * f64::EPSILON * abs,
    })
}

/// (exponent, coefficient) pairs of the small-time expansion
/// Σ_{1 ≤ n < 1+c} a_n t^{n−1+1/α}; `alpha_r` is αρ̂ (P₁) or αρ (P₋₁).
/// At αr = 1 every coefficient is exactly zero.
pub fn small_t_coefficients(alpha: f64, alpha_r: f64, c: f64) -> Vec<(f64, f64)> {
    let r = alpha_r / alpha;
    let pre = alpha * sin_pi(1.0 / alpha) / (PI * sin_pi(r));
    let mut out = Vec::new();
    let mut n = 1usize;
    while (n as f64) < 1.0 + c {
        let nf = n as f64;
        let (l1, _) = log_gamma_real(alpha * nf + 1.0).unwrap_or((f64::NAN, 1.0));
        let (l2, _) = log_gamma_real(nf + 1.0 / alpha).unwrap_or((f64::NAN, 1.0));
        let parity = if n % 2 == 1 { 1.0 } else { -1.0 };
        out.push((nf - 1.0 + 1.0 / alpha, pre * sin_pi(alpha_r * nf) * parity * (l1 - l2).exp()));
        n += 1;
    }
    out
}

/// Small-time expansion truncated at n < 1 + c.
pub fn density_asymptotic_small_t(
    params: &StableParams,
    sign: StartSign,
    t: f64,
    c: f64,
) -> Result<DensityResult> {
    if !(t > 0.0 && c > 0.0) {
        return Err(Error::Domain { what: "density_asymptotic_small_t", value: t.min(c) });
    }
    let a = params.alpha;
    let r = params.rho_for(sign);
    let coeffs = small_t_coefficients(a, a * r, c);
    let value = coeffs.iter().map(|(e, k)| k * t.powf(*e)).sum();
    let n_next = coeffs.len() as f64 + 1.0;
    let (l1, _) = log_gamma_real(a * n_next + 1.0)?;
    let (l2, _) = log_gamma_real(n_next + 1.0 / a)?;
    let bound = (a * sin_pi(1.0 / a) / (PI * sin_pi(r))).abs() * (l1 - l2).exp() * t.powf(n_next - 1.0 + 1.0 / a);
    Ok(DensityResult {
        value,
        method: Method::Asymptotic,
        err_estimate: bound,
    })
}

/// Density of T₀ at t to relative tolerance `tol`, choosing the method from
/// the classification of α and the size of t.
///
/// The irrational series uses the smallest N ∈ 𝒦(α), N ≤ [`N_CAP`], whose
/// remainder bound and rounding error both meet the tolerance; this is a
/// heuristic and falls back to contour inversion when no such N exists.
pub fn density(params: &StableParams, sign: StartSign, t: f64, tol: f64) -> Result<DensityResult> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain { what: "density t", value: t });
    }
    if !(tol > 0.0) {
        return Err(Error::Domain { what: "density tol", value: tol });
    }
    if t < T_ASYMPTOTIC {
        let asym = density_asymptotic_small_t(params, sign, t, 2.0)?;
        let inv = invert_density(params, sign, t, tol)?;
        if asym.err_estimate <= tol * asym.value.abs() && (asym.value - inv.value).abs() <= tol * inv.value.abs() {
            return Ok(asym);
        }
        return Ok(inv);
    }
    match params.class() {
        AlphaClass::Rational { .. } => {
            let mut k_max = 32;
            while k_max <= 1024 {
                let d = density_rational(params, sign, t, k_max)?;
                if d.err_estimate <= tol * d.value.abs() {
                    return Ok(d);
                }
                k_max *= 2;
            }
            warn!("rational series did not reach tol {tol:e} at t = {t}; using inversion");
            invert_density(params, sign, t, tol)
        }
        AlphaClass::Irrational => {
            let r = params.rho_for(sign);
            let tc = TailConstants::new(params.alpha, r)?;
            for n in 3..=N_CAP {
                if !in_K(params.alpha, n) {
                    continue;
                }
                let (value, abs) = match irrational_partial_sum(params.alpha, r, t, n) {
                    Ok(v) => v,
                    Err(Error::Resonance { .. }) => break,
                    Err(e) => return Err(e),
                };
                let tail = tc.bound(params.alpha, n, t);
                let round = 4.0 * f64::EPSILON * abs;
                if round > 0.5 * tol * value.abs() {
                    break;
                }
                if tail <= 0.5 * tol * value.abs() {
                    return Ok(DensityResult {
                        value,
                        method: Method::SeriesIrrational,
                        err_estimate: tail + round,
                    });
                }
            }
            invert_density(params, sign, t, tol)
        }
        AlphaClass::NearRational { m, n, distance } => {
            warn!("alpha = {} is within {distance:e} of {m}/{n}; using contour inversion", params.alpha);
            invert_density(params, sign, t, tol)
        }
    }
}
