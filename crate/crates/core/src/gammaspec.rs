//! Complex log-gamma, digamma and the gamma ratios used by every closed form
//! in the crate.
//!
//! `log_gamma` is the analytic branch of log Γ on ℂ \ (−∞, 0]: real on the
//! positive axis, continuous off the cut, and `exp(log_gamma(z)) == Γ(z)`.
//! It uses the g = 607/128, 15-term Lanczos approximation on Re z ≥ 1/2 and
//! the reflection formula elsewhere. Gamma values themselves are never formed
//! for large arguments; callers combine logs and exponentiate once.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex argument or value. Library entry points reject non-finite
/// components instead of propagating them.
pub type ComplexValue = Complex64;

const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn check_finite(z: Complex64, what: &'static str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

// Re z >= 1/2.
fn lanczos_log_gamma(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let tmp = z + LANCZOS_G + 0.5;
    (z + 0.5) * tmp.ln() - tmp + HALF_LN_2PI + sum.ln() - z.ln()
}

/// Principal-branch log Γ(z).
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("log_gamma argument"));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::PoleOfGamma { z });
    }
    if z.re >= 0.5 {
        return check_finite(lanczos_log_gamma(z), "log_gamma");
    }
    // Reflection. For Im z >= 0 write sin(πz) = (i/2)·e^{-iπz}·(1 - e^{2πiz});
    // with |e^{2πiz}| <= 1 the principal logs below stay on the analytic branch.
    if z.im < 0.0 {
        return log_gamma(z.conj()).map(|v| v.conj());
    }
    let i = Complex64::i();
    let w = (2.0 * PI * i * z).exp();
    let log_sin = -i * PI * z + (Complex64::new(1.0, 0.0) - w).ln() - LN_2 + i * (PI / 2.0);
    let reflected = lanczos_log_gamma(Complex64::new(1.0, 0.0) - z);
    check_finite(LN_PI - log_sin - reflected, "log_gamma")
}

/// 1/Γ(z), entire: exactly zero at the poles of Γ.
pub fn recip_gamma(z: ComplexValue) -> ComplexValue {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    match log_gamma(z) {
        Ok(lg) => (-lg).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

fn lanczos_log_gamma_real(x: f64) -> f64 {
    let mut sum = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (x + i as f64);
    }
    let tmp = x + LANCZOS_G + 0.5;
    (x + 0.5) * tmp.ln() - tmp + HALF_LN_2PI + (sum / x).ln()
}

/// ln|Γ(x)| together with the sign of Γ(x), for real x off the poles.
pub fn log_gamma_real(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::NonFinite("log_gamma_real argument"));
    }
    if x <= 0.0 && x == x.round() {
        return Err(Error::PoleOfGamma {
            z: Complex64::new(x, 0.0),
        });
    }
    if x >= 0.5 {
        return Ok((lanczos_log_gamma_real(x), 1.0));
    }
    let s = sin_pi(x);
    let lg = LN_PI - s.abs().ln() - lanczos_log_gamma_real(1.0 - x);
    Ok((lg, s.signum()))
}

/// Γ(x) for real x; overflows to ±∞ for x beyond ~171.
pub fn gamma_real(x: f64) -> Result<f64> {
    let (lg, sign) = log_gamma_real(x)?;
    Ok(sign * lg.exp())
}

/// sin(πx), exact zero at integers and exact ±1 at half-integers.
pub fn sin_pi(x: f64) -> f64 {
    // reduce to r in [-1, 1]
    let r = x - 2.0 * (0.5 * x).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r.abs() == 0.5 {
        return r.signum();
    }
    if r.abs() > 0.5 {
        r.signum() * (PI * (1.0 - r.abs())).sin()
    } else {
        (PI * r).sin()
    }
}

/// cos(πx) with exact zeros at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// A logarithm of sin(w), stable for large |Im w|.
///
/// Only `exp` of the result is meaningful (the imaginary part is defined
/// modulo 2π). Returns -∞ real part at the zeros of sin.
pub fn log_sin(w: ComplexValue) -> ComplexValue {
    let i = Complex64::i();
    if w.im.abs() < 1.0 {
        return w.sin().ln();
    }
    let one = Complex64::new(1.0, 0.0);
    if w.im > 0.0 {
        // sin w = e^{-iw}(1 - e^{2iw})·(i/2)
        -i * w + (one - (2.0 * i * w).exp()).ln() - LN_2 + i * (PI / 2.0)
    } else {
        // sin w = e^{iw}(1 - e^{-2iw})·(-i/2)
        i * w + (one - (-2.0 * i * w).exp()).ln() - LN_2 - i * (PI / 2.0)
    }
}

fn sinc(x: Complex64) -> Complex64 {
    let x2 = x * x;
    Complex64::new(1.0, 0.0) - x2 / 6.0 * (Complex64::new(1.0, 0.0) - x2 / 20.0 * (Complex64::new(1.0, 0.0) - x2 / 42.0))
}

/// log(sin(a·w) / sin(b·w)) for real a, b; continuous through w = 0 where the
/// ratio tends to a/b.
pub fn log_sin_ratio(a: f64, b: f64, w: ComplexValue) -> ComplexValue {
    if w.norm() < 1e-4 {
        let ratio = (a / b) * sinc(a * w) / sinc(b * w);
        return ratio.ln();
    }
    log_sin(a * w) - log_sin(b * w)
}

/// Digamma ψ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "digamma",
            value: x,
        });
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < 10.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    // Bernoulli tail: -Σ B_{2k} / (2k y^{2k}), k = 1..7
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0
                                    - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
    Ok(acc + y.ln() - 0.5 * inv - tail)
}

/// Euler–Mascheroni constant, −ψ(1).
pub const fn euler_gamma() -> f64 {
    EULER_GAMMA
}

/// Γ(s)/Γ(αs) computed in log space.
pub fn gamma_ratio(s: ComplexValue, alpha: f64) -> Result<ComplexValue> {
    let v = (log_gamma(s)? - log_gamma(alpha * s)?).exp();
    check_finite(v, "gamma_ratio")
}

/// Large-|s| form √α·exp(−s((α−1)ln s + A)), A = 1 − α + α ln α.
pub fn gamma_ratio_asymptotic(s: ComplexValue, alpha: f64) -> ComplexValue {
    let a = 1.0 - alpha + alpha * alpha.ln();
    alpha.sqrt() * (-s * ((alpha - 1.0) * s.ln() + a)).exp()
}

/// Envelope √(2π)·|y|^{x−1/2}·e^{−π|y|/2} of |Γ(x+iy)| as |y| → ∞.
pub fn stirling_envelope(x: f64, y: f64) -> f64 {
    let ay = y.abs();
    (2.0 * PI).sqrt() * ay.powf(x - 0.5) * (-PI * ay / 2.0).exp()
}
