//! The Mellin transform h(s) = E[T₀^{s−1}] under P₁ and P₋₁:
//!
//! h₁(s) = sin(π/α)/sin(πρ̂) · sin(πρ̂w)/sin(πw/α) · Γ(1+α−αs)/Γ(2−s),
//! w = 1 − α + αs, valid for −1/α < Re s < 2 − 1/α; h₂ swaps ρ̂ for ρ.
//!
//! Sines of complex arguments go through [`log_sin`], so the transform can be
//! evaluated far up the strip without overflow.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gammaspec::{log_gamma, log_sin, log_sin_ratio, sin_pi};
use crate::map_exponent::B_and_A;
use crate::params::{AlphaClass, StableParams, StartSign};

type C = Complex64;

/// Threshold on |Im s| above which envelope assertions are made.
pub const C0: f64 = 10.0;
/// Evaluations closer than this to a pole are refused.
pub const POLE_GUARD: f64 = 1e-6;
/// Beyond this |Im s| the transform is reported as out of range.
pub const MAX_IM: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinValue {
    pub value: C,
    pub s: C,
    pub strip: (f64, f64),
}

pub fn strip(alpha: f64) -> (f64, f64) {
    (-1.0 / alpha, 2.0 - 1.0 / alpha)
}

fn check_strip(alpha: f64, s: C, what: &'static str) -> Result<(f64, f64)> {
    let (lo, hi) = strip(alpha);
    if !(s.re > lo && s.re < hi) {
        return Err(Error::StripViolation {
            what,
            re: s.re,
            lo,
            hi,
        });
    }
    if !s.im.is_finite() {
        return Err(Error::NonFinite("Mellin argument"));
    }
    if s.im.abs() > MAX_IM {
        return Err(Error::Overflow { im: s.im });
    }
    Ok((lo, hi))
}

/// Nearest pole of the meromorphic continuation and its distance from s.
pub(crate) fn nearest_pole(alpha: f64, s: C) -> (f64, f64) {
    let mut best = (f64::NAN, f64::INFINITY);
    let mut consider = |p: f64| {
        let d = (s - p).norm();
        if d < best.1 {
            best = (p, d);
        }
    };
    // 1 + j/α, j ≥ 1
    let j = (alpha * (s.re - 1.0)).round().max(1.0);
    for jj in [j - 1.0, j, j + 1.0] {
        if jj >= 1.0 {
            consider(1.0 + jj / alpha);
        }
    }
    // k − 1/α, k ≠ 1
    let k = (s.re + 1.0 / alpha).round();
    for kk in [k - 1.0, k, k + 1.0] {
        if kk != 1.0 {
            consider(kk - 1.0 / alpha);
        }
    }
    best
}

/// The continuation of h with parameter `r` (ρ̂ for P₁, ρ for P₋₁) to all s
/// away from its poles. No strip check.
pub(crate) fn h_continued(alpha: f64, r: f64, s: C) -> Result<C> {
    let (pole, dist) = nearest_pole(alpha, s);
    if dist < POLE_GUARD {
        return Err(Error::NearPole {
            s,
            pole,
            distance: dist,
        });
    }
    let two_minus_s = 2.0 - s;
    if two_minus_s.im == 0.0 && two_minus_s.re <= 0.0 && two_minus_s.re == two_minus_s.re.round() {
        return Ok(C::new(0.0, 0.0));
    }
    let w = 1.0 - alpha + alpha * s;
    let lpre = (sin_pi(1.0 / alpha) / sin_pi(r)).ln();
    let l = lpre + log_sin_ratio(PI * r, PI / alpha, w) + log_gamma(1.0 + alpha - alpha * s)?
        - log_gamma(two_minus_s)?;
    let v = l.exp();
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::Overflow { im: s.im });
    }
    Ok(if s.im == 0.0 { C::new(v.re, 0.0) } else { v })
}

/// h₁(s) for `Plus`, h₂(s) for `Minus`, on the strip −1/α < Re s < 2 − 1/α.
#[allow(non_snake_case)]
pub fn mellin_T0(params: &StableParams, sign: StartSign, s: C) -> Result<MellinValue> {
    let strip = check_strip(params.alpha, s, "mellin_T0")?;
    let value = h_continued(params.alpha, params.rho_for(sign), s)?;
    Ok(MellinValue { value, s, strip })
}

/// Meromorphic continuation of [`mellin_T0`] to the whole plane; fails
/// within 10⁻⁶ of a pole.
pub fn mellin_continued(params: &StableParams, sign: StartSign, s: C) -> Result<C> {
    h_continued(params.alpha, params.rho_for(sign), s)
}

/// Γ(1+α−αs)/Γ(2−s), the Mellin transform of a positive 1/α-stable law.
pub fn mellin_positive_stable(alpha: f64, s: C) -> Result<C> {
    Ok((log_gamma(1.0 + alpha - alpha * s)? - log_gamma(2.0 - s)?).exp())
}

/// The symmetric (ρ = 1/2) transform
/// sin(π/α)·cos(πα(s−1)/2)/sin(π(s−1+1/α))·Γ(1+α−αs)/Γ(2−s).
pub fn mellin_symmetric(alpha: f64, s: C) -> Result<MellinValue> {
    let strip = check_strip(alpha, s, "mellin_symmetric")?;
    let d = s - 1.0 + 1.0 / alpha;
    // cos(πα(s−1)/2) = sin(παd/2); the ratio is removable at d = 0
    let trig = if d.norm() < 1e-4 {
        log_sin_ratio(PI * alpha / 2.0, PI, d)
    } else {
        log_sin(PI * alpha * (s - 1.0) / 2.0 + PI / 2.0) - log_sin(PI * d)
    };
    let l = sin_pi(1.0 / alpha).ln() + trig + log_gamma(1.0 + alpha - alpha * s)?
        - log_gamma(2.0 - s)?;
    let v = l.exp();
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::Overflow { im: s.im });
    }
    let value = if s.im == 0.0 { C::new(v.re, 0.0) } else { v };
    Ok(MellinValue { value, s, strip })
}

/// A(s)·h(s) − h(s+1) for supplied vectors h(s) and h(s+1).
pub(crate) fn functional_equation_defect(
    params: &StableParams,
    s: f64,
    h: [C; 2],
    h_next: [C; 2],
) -> Result<[C; 2]> {
    let (_, a) = B_and_A(params, C::new(s, 0.0))?;
    let ah = a.apply(h);
    Ok([ah[0] - h_next[0], ah[1] - h_next[1]])
}

/// max-norm of A(s)·[h₁(s); h₂(s)] − [h₁(s+1); h₂(s+1)] for 0 < s < 1 − 1/α.
pub fn functional_equation_residual(params: &StableParams, s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0 - 1.0 / params.alpha) {
        return Err(Error::Domain {
            what: "functional_equation_residual",
            value: s,
        });
    }
    let z = C::new(s, 0.0);
    let h = |sign, x| mellin_T0(params, sign, x).map(|m| m.value);
    let hs = [h(StartSign::Plus, z)?, h(StartSign::Minus, z)?];
    let hn = [h(StartSign::Plus, z + 1.0)?, h(StartSign::Minus, z + 1.0)?];
    let d = functional_equation_defect(params, s, hs, hn)?;
    Ok(d[0].norm().max(d[1].norm()))
}

/// Poles of the continued transform. `family1[i]` is 1 + (i+1)/α,
/// `family2[i]` is (i+2) − 1/α and `family3[i]` is −i − 1/α.
/// `double_poles` lists the coincidences of families 1 and 2 when α is a
/// declared fraction.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleCatalog {
    pub family1: Vec<f64>,
    pub family2: Vec<f64>,
    pub family3: Vec<f64>,
    pub double_poles: Vec<f64>,
}

impl PoleCatalog {
    pub fn all(&self) -> impl Iterator<Item = f64> + '_ {
        self.family1
            .iter()
            .chain(&self.family2)
            .chain(&self.family3)
            .chain(&self.double_poles)
            .copied()
    }
}

pub fn pole_catalog(params: &StableParams, n_max: usize) -> PoleCatalog {
    let a = params.alpha;
    let n_max = n_max.max(2);
    let family1 = (1..=n_max).map(|n| 1.0 + n as f64 / a).collect();
    let family2 = (2..=n_max).map(|n| n as f64 - 1.0 / a).collect();
    let family3 = (0..=n_max).map(|n| -(n as f64) - 1.0 / a).collect();
    let mut double_poles = Vec::new();
    if let AlphaClass::Rational { m, n } = params.class() {
        // 1 + (lm−1)/α = (ln+1) − 1/α
        let mut l = 1usize;
        while l * m as usize - 1 <= n_max && l * n as usize + 1 <= n_max {
            double_poles.push((l * n as usize + 1) as f64 - 1.0 / a);
            l += 1;
        }
    }
    PoleCatalog {
        family1,
        family2,
        family3,
        double_poles,
    }
}

/// Bounds e^{−π|Im s|} < |h₁(s)| < e^{−(π/2)(α−1)|Im s|}, asserted only for
/// |Im s| > [`C0`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub lower: f64,
    pub upper: f64,
    pub conclusive: bool,
}

impl Envelope {
    /// `None` below the threshold, otherwise whether `modulus` lies inside.
    pub fn check(&self, modulus: f64) -> Option<bool> {
        self.conclusive
            .then(|| self.lower < modulus && modulus < self.upper)
    }
}

pub fn decay_envelope(params: &StableParams, s: C) -> Envelope {
    let y = s.im.abs();
    Envelope {
        lower: (-PI * y).exp(),
        upper: (-(PI / 2.0) * (params.alpha - 1.0) * y).exp(),
        conclusive: y > C0,
    }
}

/// Exponential decay rate (π/2)(1 + α − 2αr) of |h(c + iu)| in u.
pub fn decay_rate(params: &StableParams, sign: StartSign) -> f64 {
    let r = params.rho_for(sign);
    (PI / 2.0) * (1.0 + params.alpha - 2.0 * params.alpha * r)
}
