//! Consequences of the law of T₀ for excursion theory: the invariant function
//! for conditioning to avoid zero, the excursion length density, the ratio
//! Y(s, x) and the entrance law of the excursion measure.
//!
//! The excursion measure n is normalized by n(1 − e^{−qζ}) = 1/u^q(0).

use std::f64::consts::PI;

use crate::density_series::density;
use crate::error::{Error, Result};
use crate::gammaspec::{cos_pi, gamma_real, sin_pi};
use crate::mellin_inversion::survival_mellin;
use crate::params::{StableParams, StartSign};
use crate::quad::integrate;

/// Relative tolerance for the densities used inside this module.
const DENSITY_TOL: f64 = 1e-10;

/// h(x) = −Γ(1−α) sin(παρ̂)/π · |x|^{α−1} for x > 0, ρ̂ ↦ ρ for x < 0.
pub fn h_function(params: &StableParams, x: f64) -> Result<f64> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Domain { what: "h_function", value: x });
    }
    let a = params.alpha;
    let r = params.rho_for(StartSign::of(x));
    Ok(-gamma_real(1.0 - a)? * sin_pi(a * r) / PI * x.abs().powf(a - 1.0))
}

/// W, the coefficient in n(ζ ∈ dt) = W t^{1/α−2} dt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcursionCoefficient {
    pub w: f64,
}

pub fn excursion_coefficient(params: &StableParams) -> Result<ExcursionCoefficient> {
    let a = params.alpha;
    let w = (a - 1.0) / gamma_real(1.0 / a)? * sin_pi(1.0 / a) / cos_pi(params.rho - 0.5);
    Ok(ExcursionCoefficient { w })
}

pub fn excursion_length_density(params: &StableParams, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain { what: "excursion_length_density", value: t });
    }
    Ok(excursion_coefficient(params)?.w * t.powf(1.0 / params.alpha - 2.0))
}

/// n(ζ > t) = W t^{1/α−1}/(1 − 1/α).
pub fn excursion_length_tail(params: &StableParams, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain { what: "excursion_length_tail", value: t });
    }
    let a = params.alpha;
    Ok(excursion_coefficient(params)?.w * t.powf(1.0 / a - 1.0) / (1.0 - 1.0 / a))
}

/// P_x(T₀ > t), reduced by scaling to P_{±1}(T₀ > |x|^{−α} t).
pub fn survival_from(params: &StableParams, x: f64, t: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::Domain { what: "survival_from x", value: x });
    }
    survival_mellin(params, StartSign::of(x), x.abs().powf(-params.alpha) * t, 1e-12)
}

/// Y(s, x) = P_x(T₀ > s)/(h(x) n(ζ > s)).
#[allow(non_snake_case)]
pub fn ratio_Y(params: &StableParams, x: f64, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::Domain { what: "ratio_Y s", value: s });
    }
    Ok(survival_from(params, x, s)? / (h_function(params, x)? * excursion_length_tail(params, s)?))
}

/// n(X_t ∈ dx)/dx = |x|^{−α} p(sgn(−x), |x|^{−α} t); the start is on the
/// side opposite to x (the dual process).
pub fn entrance_law_density(params: &StableParams, t: f64, x: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain { what: "entrance_law_density t", value: t });
    }
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Domain { what: "entrance_law_density x", value: x });
    }
    let a = params.alpha;
    let scale = x.abs().powf(-a);
    let sign = StartSign::of(x).flip();
    Ok(scale * density(params, sign, scale * t, DENSITY_TOL)?.value)
}

/// A bounded continuous test function with an optional radius R such that
/// f(x) is negligible for |x| > R.
pub struct TestFunction<'a> {
    pub f: Box<dyn Fn(f64) -> f64 + Sync + 'a>,
    pub support_radius: Option<f64>,
}

impl<'a> TestFunction<'a> {
    pub fn new(f: impl Fn(f64) -> f64 + Sync + 'a) -> Self {
        TestFunction {
            f: Box::new(f),
            support_radius: None,
        }
    }

    pub fn with_support(mut self, radius: f64) -> Self {
        self.support_radius = Some(radius);
        self
    }
}

// E_{sign}[I^{-1} g((t/I)^{1/α})], I distributed as T₀ under the sign,
// integrated in v = ln u over [ln u_lo, ln u_hi] with power-law ends.
fn expectation_inverse(
    params: &StableParams,
    sign: StartSign,
    t: f64,
    g: &dyn Fn(f64) -> f64,
    u_lo: f64,
) -> Result<f64> {
    let a = params.alpha;
    let u_hi = 1e10f64.max(1e4 * t);
    let mut first_err = None;
    let mut integrand = |v: f64| {
        let u = v.exp();
        match density(params, sign, u, DENSITY_TOL) {
            Ok(d) => d.value * g((t / u).powf(1.0 / a)),
            Err(e) => {
                first_err.get_or_insert(e);
                0.0
            }
        }
    };
    let (lo, hi) = (u_lo.ln(), u_hi.ln());
    let n = ((hi - lo) / 0.5).ceil().max(1.0) as usize;
    let w = (hi - lo) / n as f64;
    let mut body = 0.0;
    for i in 0..n {
        let a0 = lo + i as f64 * w;
        body += integrate(&mut integrand, a0, a0 + w, 1e-12, 1e-10).value;
    }
    if let Some(e) = first_err {
        return Err(e);
    }
    // p(u)/u ≈ P u^{1/α−3} beyond u_hi
    let p_inf = crate::density_series::large_t_coefficient(params, sign);
    let tail = p_inf * u_hi.powf(1.0 / a - 2.0) / (2.0 - 1.0 / a) * g((t / u_hi).powf(1.0 / a));
    // p(u)/u ≈ a₁ u^{1/α−1} below u_lo
    let head = if u_lo > 1e-12 {
        let a1 = crate::density_series::small_t_coefficients(a, a * params.rho_for(sign), 1.0)[0].1;
        a1 * u_lo.powf(1.0 / a) * a * g((t / u_lo).powf(1.0 / a))
    } else {
        0.0
    };
    Ok(body + tail + head)
}

/// Γ(−α)(sin παρ/π)·E₁[I⁻¹ f(−(t/I)^{1/α})] + Γ(−α)(sin παρ̂/π)·E₂[I⁻¹ f((t/I)^{1/α})],
/// the expectation of f under the entrance law of the process conditioned
/// to avoid zero.
pub fn conditioned_entrance(params: &StableParams, t: f64, f: &TestFunction) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain { what: "conditioned_entrance t", value: t });
    }
    let a = params.alpha;
    let g = gamma_real(-a)?;
    // |x| ≤ R ⇔ u ≥ t/R^α
    let u_lo = match f.support_radius {
        Some(r) => t / r.powf(a),
        None => 1e-8f64.min(1e-4 * t),
    };
    let neg = |y: f64| (f.f)(-y);
    let pos = |y: f64| (f.f)(y);
    let e1 = expectation_inverse(params, StartSign::Plus, t, &neg, u_lo)?;
    let e2 = expectation_inverse(params, StartSign::Minus, t, &pos, u_lo)?;
    Ok(g * sin_pi(a * params.rho) / PI * e1 + g * sin_pi(a * params.rho_hat) / PI * e2)
}
