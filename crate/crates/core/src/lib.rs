//! Law of the first hitting time of zero, T₀, for a strictly α-stable Lévy
//! process with two-sided jumps and 1 < α < 2.
//!
//! The crate provides:
//! * the Mellin transform s ↦ E[T₀^{s−1}] under P₁ and P₋₁ ([`mellin_law`]),
//! * the density of T₀ from its residue series, small-time expansion or
//!   numerical contour inversion ([`density_series`], [`mellin_inversion`]),
//! * the Markov additive process behind the Lamperti–Kiu representation
//!   ([`map_exponent`]),
//! * a Monte Carlo oracle ([`montecarlo`]) and the excursion-theory
//!   applications ([`applications`]).
//!
//! ```
//! use stablehit::{make_params, mellin_T0, StartSign};
//! use num_complex::Complex64;
//!
//! let p = make_params(1.5, 0.55).unwrap();
//! let m = mellin_T0(&p, StartSign::Plus, Complex64::new(1.0, 0.0)).unwrap();
//! assert!((m.value.re - 1.0).abs() < 1e-12);
//! ```

pub mod applications;
pub mod density_series;
pub mod error;
pub mod gammaspec;
pub mod map_exponent;
pub mod mellin_inversion;
pub mod mellin_law;
pub mod montecarlo;
pub mod params;
pub mod quad;

pub use applications::{
    conditioned_entrance, entrance_law_density, excursion_coefficient, excursion_length_density,
    excursion_length_tail, h_function, ratio_Y, ExcursionCoefficient, TestFunction,
};
pub use density_series::{
    density, density_asymptotic_small_t, density_irrational, density_rational, in_K,
    large_t_coefficient, norm_dist, plan_truncation, DensityResult, Method, SeriesMode,
    TruncationPlan,
};
pub use error::{Error, ParamViolation, Result};
pub use gammaspec::{digamma, gamma_ratio, log_gamma, stirling_envelope, ComplexValue};
pub use map_exponent::{
    build_map_exponent, det_B, leading_eigenvalue, stable_F, stable_generator, stable_kappa,
    sym_char_exponent, sym_cpp_density, sym_laplace_exponent, B_and_A, Generator2,
    MapCharacteristics, MatrixExponent2, PerronData, StableCharacteristics,
};
pub use mellin_inversion::{invert_density, invert_density_on, survival, survival_mellin, ContourSpec};
pub use mellin_law::{
    decay_envelope, functional_equation_residual, mellin_T0, mellin_continued, mellin_positive_stable,
    mellin_symmetric, pole_catalog,
    Envelope, MellinValue, PoleCatalog,
};
pub use montecarlo::{
    estimate_hitting_law, sample_stable_increment, PathEstimate, SimulationConfig, StableSampler,
    StepScheme,
};
pub use params::{classify_alpha, make_params, AlphaClass, Fraction, StableParams, StartSign};
