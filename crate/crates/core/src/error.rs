use num_complex::Complex64;
use thiserror::Error;

/// Which admissibility inequality a parameter pair violates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamViolation {
    NotFinite,
    /// alpha must satisfy 1 < alpha.
    AlphaAtOrBelowOne,
    /// alpha must satisfy alpha < 2.
    AlphaAtOrAboveTwo,
    /// rho must exceed 1 - 1/alpha.
    RhoBelowLowerBound { bound: f64 },
    /// rho must be below 1/alpha.
    RhoAboveUpperBound { bound: f64 },
    /// A declared fraction m/n is not reduced or not in (1, 2).
    BadFraction { m: u32, n: u32 },
}

impl std::fmt::Display for ParamViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamViolation::NotFinite => write!(f, "parameters must be finite"),
            ParamViolation::AlphaAtOrBelowOne => write!(f, "alpha must be > 1"),
            ParamViolation::AlphaAtOrAboveTwo => write!(f, "alpha must be < 2"),
            ParamViolation::RhoBelowLowerBound { bound } => {
                write!(f, "rho must be > 1 - 1/alpha = {bound}")
            }
            ParamViolation::RhoAboveUpperBound { bound } => {
                write!(f, "rho must be < 1/alpha = {bound}")
            }
            ParamViolation::BadFraction { m, n } => {
                write!(f, "fraction {m}/{n} must be reduced and lie in (1, 2)")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("gamma function has a pole at {z}")]
    PoleOfGamma { z: Complex64 },

    #[error("{what}: argument {value} outside the domain")]
    Domain { what: &'static str, value: f64 },

    #[error("inadmissible stable parameters (alpha = {alpha}, rho = {rho}): {violation}")]
    InvalidParams {
        alpha: f64,
        rho: f64,
        violation: ParamViolation,
    },

    #[error("{what}: Re s = {re} outside the strip ({lo}, {hi})")]
    StripViolation {
        what: &'static str,
        re: f64,
        lo: f64,
        hi: f64,
    },

    #[error("argument {s} is within {distance:e} of the pole at {pole}")]
    NearPole {
        s: Complex64,
        pole: f64,
        distance: f64,
    },

    #[error("|Im s| = {im} exceeds the representable evaluation range")]
    Overflow { im: f64 },

    #[error("transform undefined at z = {z}")]
    UndefinedTransform { z: Complex64 },

    #[error("generator is not a proper unkilled 2-state generator: {0}")]
    BadGenerator(&'static str),

    #[error("leading eigenvalue is degenerate (both eigenvalues equal {value})")]
    DegenerateEigenvalue { value: f64 },

    #[error("matrix exponent has non-real entries at a real argument")]
    NonRealEntries,

    #[error("truncation index N = {n} is not in K(alpha)")]
    NotInK { n: usize },

    #[error("resonant denominator |sin(pi x)| = {value:e} at k = {k}; alpha is too close to a rational")]
    Resonance { k: usize, value: f64 },

    #[error("method requires {expected} alpha")]
    ClassificationMismatch { expected: &'static str },

    #[error("tolerance {tol:e} unreachable: {reason}")]
    ToleranceUnreachable { tol: f64, reason: &'static str },

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("invalid simulation setup: {0}")]
    InvalidSimulation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
