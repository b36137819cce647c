//! Admissible (α, ρ) pairs, rationality classification of α and the derived
//! constants of the characteristic exponent
//! Ψ(θ) = c|θ|^α (1 − iβ tan(πα/2) sgn θ).

use std::f64::consts::PI;

use crate::error::{Error, ParamViolation, Result};
use crate::gammaspec::{gamma_real, sin_pi};

/// Largest denominator considered by [`classify_alpha`].
pub const N_MAX: u64 = 64;
/// Resonance threshold per unit of series index.
pub const DELTA_RES: f64 = 1e-9;
/// Series index up to which resonances are guarded against.
pub const K_RES: f64 = 1e4;

/// Exact rational value m/n of α, declared by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub m: u32,
    pub n: u32,
}

impl Fraction {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        let bad = Error::InvalidParams {
            alpha: m as f64 / n.max(1) as f64,
            rho: f64::NAN,
            violation: ParamViolation::BadFraction { m, n },
        };
        if n == 0 || gcd(m as u64, n as u64) != 1 || m <= n || m >= 2 * n {
            return Err(bad);
        }
        Ok(Fraction { m, n })
    }

    pub fn value(&self) -> f64 {
        self.m as f64 / self.n as f64
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.m, self.n)
    }
}

impl std::str::FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (m, n) = s.split_once('/').ok_or(Error::Domain {
            what: "fraction literal",
            value: f64::NAN,
        })?;
        let parse = |x: &str| {
            x.trim().parse::<u32>().map_err(|_| Error::Domain {
                what: "fraction literal",
                value: f64::NAN,
            })
        };
        Fraction::new(parse(m)?, parse(n)?)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaClass {
    Rational { m: u32, n: u32 },
    Irrational,
    /// A float within resonance distance of m/n.
    NearRational { m: u32, n: u32, distance: f64 },
}

/// Starting side of the process: X₀ > 0 (state 1) or X₀ < 0 (state 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StartSign {
    Plus,
    Minus,
}

impl StartSign {
    pub fn from_int(v: i32) -> Option<Self> {
        match v {
            1 => Some(StartSign::Plus),
            -1 => Some(StartSign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            StartSign::Plus => StartSign::Minus,
            StartSign::Minus => StartSign::Plus,
        }
    }

    pub fn as_int(self) -> i32 {
        match self {
            StartSign::Plus => 1,
            StartSign::Minus => -1,
        }
    }

    /// The sign of x, for x ≠ 0.
    pub fn of(x: f64) -> Self {
        if x > 0.0 {
            StartSign::Plus
        } else {
            StartSign::Minus
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableParams {
    pub alpha: f64,
    pub rho: f64,
    pub rho_hat: f64,
    fraction: Option<Fraction>,
}

/// Validates an admissible pair: 1 < α < 2 and 1 − 1/α < ρ < 1/α.
pub fn make_params(alpha: f64, rho: f64) -> Result<StableParams> {
    let fail = |violation| Err(Error::InvalidParams { alpha, rho, violation });
    if !alpha.is_finite() || !rho.is_finite() {
        return fail(ParamViolation::NotFinite);
    }
    if alpha <= 1.0 {
        return fail(ParamViolation::AlphaAtOrBelowOne);
    }
    if alpha >= 2.0 {
        return fail(ParamViolation::AlphaAtOrAboveTwo);
    }
    let lo = 1.0 - 1.0 / alpha;
    let hi = 1.0 / alpha;
    if rho <= lo {
        return fail(ParamViolation::RhoBelowLowerBound { bound: lo });
    }
    if rho >= hi {
        return fail(ParamViolation::RhoAboveUpperBound { bound: hi });
    }
    Ok(StableParams {
        alpha,
        rho,
        rho_hat: 1.0 - rho,
        fraction: None,
    })
}

impl StableParams {
    /// Parameters with α declared exactly as m/n.
    pub fn with_fraction(fraction: Fraction, rho: f64) -> Result<Self> {
        let mut p = make_params(fraction.value(), rho)?;
        p.fraction = Some(fraction);
        Ok(p)
    }

    pub fn fraction(&self) -> Option<Fraction> {
        self.fraction
    }

    pub fn class(&self) -> AlphaClass {
        classify_alpha(self.alpha, self.fraction)
    }

    /// ρ̂ for `Plus`, ρ for `Minus`: the parameter that enters the transform
    /// of T₀ under the given start.
    pub fn rho_for(&self, sign: StartSign) -> f64 {
        match sign {
            StartSign::Plus => self.rho_hat,
            StartSign::Minus => self.rho,
        }
    }

    /// The pair with ρ and ρ̂ exchanged (the dual process).
    pub fn dual(&self) -> Self {
        StableParams {
            alpha: self.alpha,
            rho: self.rho_hat,
            rho_hat: self.rho,
            fraction: self.fraction,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rho == self.rho_hat
    }

    /// c₊ = Γ(α+1) sin(παρ)/π.
    pub fn c_plus(&self) -> f64 {
        gamma_real(self.alpha + 1.0).unwrap_or(f64::NAN) * sin_pi(self.alpha * self.rho) / PI
    }

    /// c₋ = Γ(α+1) sin(παρ̂)/π.
    pub fn c_minus(&self) -> f64 {
        gamma_real(self.alpha + 1.0).unwrap_or(f64::NAN) * sin_pi(self.alpha * self.rho_hat) / PI
    }

    /// Skewness β = (c₊ − c₋)/(c₊ + c₋).
    pub fn beta(&self) -> f64 {
        let (p, m) = (self.c_plus(), self.c_minus());
        (p - m) / (p + m)
    }

    /// Scale c = cos(πα(ρ − 1/2)).
    pub fn scale_c(&self) -> f64 {
        (PI * self.alpha * (self.rho - 0.5)).cos()
    }
}

/// Classifies α for method dispatch.
///
/// A declared fraction is always `Rational`. A bare float is `NearRational`
/// when a continued-fraction convergent m/n with 1 < m/n < 2 and n ≤ 64 lies
/// within `DELTA_RES * K_RES` of it, and `Irrational` otherwise. Floats are
/// never promoted to `Rational`.
pub fn classify_alpha(alpha: f64, declared: Option<Fraction>) -> AlphaClass {
    if let Some(f) = declared {
        return AlphaClass::Rational { m: f.m, n: f.n };
    }
    let window = DELTA_RES * K_RES;
    let (mut p0, mut q0, mut p1, mut q1) = (0u64, 1u64, 1u64, 0u64);
    let mut x = alpha;
    let mut best: Option<AlphaClass> = None;
    for _ in 0..64 {
        let a = x.floor();
        if a > 1e12 {
            break;
        }
        let a = a as u64;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > N_MAX {
            break;
        }
        let dist = (alpha - p2 as f64 / q2 as f64).abs();
        if q2 >= 2 && dist < window && best.is_none() {
            best = Some(AlphaClass::NearRational {
                m: p2 as u32,
                n: q2 as u32,
                distance: dist,
            });
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = x - x.floor();
        if frac < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    best.unwrap_or(AlphaClass::Irrational)
}
