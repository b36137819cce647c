//! Two-state Markov additive processes: matrix exponents, the stable
//! process's MAP (−αξ, J), the functional-equation matrices B(s), A(s), the
//! Perron eigenvalue, and the Lévy exponents of the symmetric case.
//!
//! Only unkilled MAPs are supported: generators have zero row sums.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gammaspec::{gamma_real, log_gamma, recip_gamma, sin_pi};
use crate::params::StableParams;

type C = Complex64;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

/// A 2×2 complex matrix together with the argument it was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixExponent2 {
    pub entries: [[C; 2]; 2],
    pub argument: C,
}

impl MatrixExponent2 {
    pub fn new(entries: [[C; 2]; 2], argument: C) -> Self {
        MatrixExponent2 { entries, argument }
    }

    pub fn det(&self) -> C {
        let e = &self.entries;
        e[0][0] * e[1][1] - e[0][1] * e[1][0]
    }

    pub fn trace(&self) -> C {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn row_sums(&self) -> [C; 2] {
        let e = &self.entries;
        [e[0][0] + e[0][1], e[1][0] + e[1][1]]
    }

    pub fn mul(&self, other: &MatrixExponent2) -> [[C; 2]; 2] {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = [[c(0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    }

    pub fn apply(&self, v: [C; 2]) -> [C; 2] {
        let e = &self.entries;
        [e[0][0] * v[0] + e[0][1] * v[1], e[1][0] * v[0] + e[1][1] * v[1]]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Generator of an unkilled two-state chain, given by its jump rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Generator2 {
    pub q12: f64,
    pub q21: f64,
}

impl Generator2 {
    pub fn new(q12: f64, q21: f64) -> Result<Self> {
        if !(q12.is_finite() && q21.is_finite()) {
            return Err(Error::BadGenerator("rates must be finite"));
        }
        if q12 < 0.0 || q21 < 0.0 {
            return Err(Error::BadGenerator("off-diagonal rates must be nonnegative"));
        }
        Ok(Generator2 { q12, q21 })
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        match (i, j) {
            (0, 0) => -self.q12,
            (0, 1) => self.q12,
            (1, 0) => self.q21,
            _ => -self.q21,
        }
    }

    /// π = (q₂₁, q₁₂)/(q₁₂ + q₂₁), the solution of πQ = 0.
    pub fn stationary(&self) -> Result<[f64; 2]> {
        let s = self.q12 + self.q21;
        if s <= 0.0 {
            return Err(Error::BadGenerator("chain is not irreducible"));
        }
        Ok([self.q21 / s, self.q12 / s])
    }
}

/// Ingredients of F(z) = diag(ψ₁(z), ψ₂(z)) + Q ∘ G(z).
pub trait MapCharacteristics {
    fn generator(&self) -> Generator2;
    /// Laplace exponent of the Lévy component in `state` (0 or 1).
    fn psi(&self, state: usize, z: C) -> Result<C>;
    /// E[e^{z U_ij}] for the jump U_ij on leaving i for j; must be 1 for i = j.
    fn jump_transform(&self, i: usize, j: usize, z: C) -> Result<C>;
}

fn finite(z: C) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub fn build_map_exponent<M: MapCharacteristics + ?Sized>(
    chars: &M,
    z: C,
) -> Result<MatrixExponent2> {
    let q = chars.generator();
    let mut entries = [[c(0.0); 2]; 2];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let g = if i == j { c(1.0) } else { chars.jump_transform(i, j, z)? };
            *v = q.entry(i, j) * g;
            if i == j {
                *v += chars.psi(i, z)?;
            }
            if !finite(*v) {
                return Err(Error::UndefinedTransform { z });
            }
        }
    }
    Ok(MatrixExponent2::new(entries, z))
}

fn check_f_strip(params: &StableParams, z: C) -> Result<()> {
    let hi = 1.0 / params.alpha;
    if !(z.re > -1.0 && z.re < hi) {
        return Err(Error::StripViolation {
            what: "stable_F",
            re: z.re,
            lo: -1.0,
            hi,
        });
    }
    Ok(())
}

// Γ(α(1+z))Γ(1−αz)
fn stable_prefactor(alpha: f64, z: C) -> Result<C> {
    Ok((log_gamma(alpha * (z + 1.0))? + log_gamma(1.0 - alpha * z)?).exp())
}

/// Characteristics of the MAP (−αξ, J) underlying the stable process, in
/// sine form: ψ₁(z) = q₁₂ − Γ(α(1+z))Γ(1−αz) sin(πα(ρ̂+z))/π,
/// G₁₂(z) = Γ(α(1+z))Γ(1−αz)/Γ(α), and ρ̂ ↔ ρ for state 2.
#[derive(Debug, Clone, Copy)]
pub struct StableCharacteristics {
    pub params: StableParams,
}

impl MapCharacteristics for StableCharacteristics {
    fn generator(&self) -> Generator2 {
        stable_generator(&self.params)
    }

    fn psi(&self, state: usize, z: C) -> Result<C> {
        check_f_strip(&self.params, z).map_err(|_| Error::UndefinedTransform { z })?;
        let p = &self.params;
        let (r, q) = if state == 0 {
            (p.rho_hat, self.generator().q12)
        } else {
            (p.rho, self.generator().q21)
        };
        let g = stable_prefactor(p.alpha, z)?;
        Ok(q - g * (PI * p.alpha * (z + r)).sin() / PI)
    }

    fn jump_transform(&self, i: usize, j: usize, z: C) -> Result<C> {
        if i == j {
            return Ok(c(1.0));
        }
        check_f_strip(&self.params, z).map_err(|_| Error::UndefinedTransform { z })?;
        let a = self.params.alpha;
        Ok(stable_prefactor(a, z)? / gamma_real(a)?)
    }
}

/// Q of the stable MAP: q₁₂ = Γ(α)/(Γ(αρ̂)Γ(1−αρ̂)), q₂₁ = Γ(α)/(Γ(αρ)Γ(1−αρ)).
pub fn stable_generator(params: &StableParams) -> Generator2 {
    let ga = gamma_real(params.alpha).unwrap_or(f64::NAN);
    Generator2 {
        q12: ga * sin_pi(params.alpha * params.rho_hat) / PI,
        q21: ga * sin_pi(params.alpha * params.rho) / PI,
    }
}

/// The matrix exponent of (−αξ, J) in its gamma form, −1 < Re z < 1/α.
#[allow(non_snake_case)]
pub fn stable_F(params: &StableParams, z: C) -> Result<MatrixExponent2> {
    check_f_strip(params, z)?;
    let a = params.alpha;
    let g = stable_prefactor(a, z)?;
    let diag = |r: f64| -g * recip_gamma(a * r + a * z) * recip_gamma(1.0 - a * r - a * z);
    let off = |r: f64| g * recip_gamma(c(a * r)) * recip_gamma(c(1.0 - a * r));
    Ok(MatrixExponent2::new(
        [
            [diag(params.rho_hat), off(params.rho_hat)],
            [off(params.rho), diag(params.rho)],
        ],
        z,
    ))
}

/// B(s) = −F(−s)/s and its inverse A(s), both from their closed forms.
///
/// B needs −1/α < Re s < 1, s ≠ 0; A needs 1 − 2/α < Re s < 1 − 1/α.
#[allow(non_snake_case)]
pub fn B_and_A(params: &StableParams, s: C) -> Result<(MatrixExponent2, MatrixExponent2)> {
    let a = params.alpha;
    if !(s.re > -1.0 / a && s.re < 1.0) {
        return Err(Error::StripViolation {
            what: "B(s)",
            re: s.re,
            lo: -1.0 / a,
            hi: 1.0,
        });
    }
    let (lo_a, hi_a) = (1.0 - 2.0 / a, 1.0 - 1.0 / a);
    if !(s.re > lo_a && s.re < hi_a) {
        return Err(Error::StripViolation {
            what: "A(s)",
            re: s.re,
            lo: lo_a,
            hi: hi_a,
        });
    }
    if s == c(0.0) {
        return Err(Error::PoleOfGamma { z: s });
    }
    let (r, rh) = (params.rho, params.rho_hat);
    let sin = |x: C| (PI * x).sin();
    let gb = (log_gamma(a - a * s)? + log_gamma(a * s)?).exp() * (a / PI);
    let b = MatrixExponent2::new(
        [
            [gb * sin(a * (rh - s)), -gb * sin_pi(a * rh)],
            [-gb * sin_pi(a * r), gb * sin(a * (r - s))],
        ],
        s,
    );
    let ga = -(log_gamma(1.0 - a + a * s)? + log_gamma(1.0 - a * s)?).exp() / (PI * a);
    let am = MatrixExponent2::new(
        [
            [ga * sin(a * (r - s)), ga * sin_pi(a * rh)],
            [ga * sin_pi(a * r), ga * sin(a * (rh - s))],
        ],
        s,
    );
    Ok((b, am))
}

/// det B(s) = −α²Γ(α−αs)Γ(αs)/(Γ(1−α+αs)Γ(1−αs)).
#[allow(non_snake_case)]
pub fn det_B(params: &StableParams, s: C) -> Result<C> {
    let a = params.alpha;
    let num = log_gamma(a - a * s)? + log_gamma(a * s)?;
    Ok(-a * a * num.exp() * recip_gamma(1.0 - a + a * s) * recip_gamma(1.0 - a * s))
}

/// Perron data of F at a real argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerronData {
    pub kappa: f64,
    /// The other eigenvalue.
    pub lambda2: f64,
    /// Right eigenvector for κ, normalized by π·v = 1.
    pub v: [f64; 2],
    pub pi: [f64; 2],
}

/// κ(z), the larger eigenvalue of a real 2×2 F(z) with positive off-diagonal
/// entries, with eigenvector normalized against the stationary law of
/// `generator`.
pub fn leading_eigenvalue(f: &MatrixExponent2, generator: &Generator2) -> Result<PerronData> {
    let e = &f.entries;
    for z in e.iter().flatten() {
        if z.im.abs() > 1e-12 * (1.0 + z.re.abs()) {
            return Err(Error::NonRealEntries);
        }
    }
    let (a, b, cc, d) = (e[0][0].re, e[0][1].re, e[1][0].re, e[1][1].re);
    let half_tr = 0.5 * (a + d);
    let half_diff = 0.5 * (d - a);
    let r = (half_diff * half_diff + b * cc).sqrt();
    if !(r > 0.0) {
        return Err(Error::DegenerateEigenvalue { value: half_tr });
    }
    let det = a * d - b * cc;
    let (kappa, lambda2) = if half_tr >= 0.0 {
        let k = half_tr + r;
        (k, det / k)
    } else {
        let l = half_tr - r;
        (det / l, l)
    };
    // κ − a = (d−a)/2 + r, written without cancellation
    let k_minus_a = if half_diff >= 0.0 {
        half_diff + r
    } else {
        b * cc / (r - half_diff)
    };
    let pi = generator.stationary()?;
    let mut v = [b, k_minus_a];
    let norm = pi[0] * v[0] + pi[1] * v[1];
    v[0] /= norm;
    v[1] /= norm;
    Ok(PerronData {
        kappa,
        lambda2,
        v,
        pi,
    })
}

/// κ(z) for the stable MAP at real z ∈ (−1, 1/α).
pub fn stable_kappa(params: &StableParams, z: f64) -> Result<f64> {
    let f = stable_F(params, c(z))?;
    Ok(leading_eigenvalue(&f, &stable_generator(params))?.kappa)
}

/// Characteristic exponent Ψ(θ) of ξ in the symmetric case:
/// 2^α Γ(α/2 − iθ/2)Γ(1/2 + iθ/2)/(Γ(−iθ/2)Γ((1−α)/2 + iθ/2)). Ψ(0) = 0.
pub fn sym_char_exponent(alpha: f64, theta: f64) -> C {
    if theta == 0.0 {
        return c(0.0);
    }
    let i = C::i();
    let num = log_gamma(alpha / 2.0 - i * theta / 2.0).and_then(|x| {
        log_gamma(0.5 + i * theta / 2.0).map(|y| x + y)
    });
    match num {
        Ok(n) => {
            2f64.powf(alpha)
                * n.exp()
                * recip_gamma(-i * theta / 2.0)
                * recip_gamma((1.0 - alpha) / 2.0 + i * theta / 2.0)
        }
        Err(_) => C::new(f64::NAN, f64::NAN),
    }
}

/// The two summands Ψ^L (Lamperti-stable part) and Ψ^C (compound Poisson
/// part) of the decomposition Ψ = Ψ^L + Ψ^C.
pub fn sym_char_exponent_parts(alpha: f64, theta: f64) -> Result<(C, C)> {
    let i = C::i();
    let a = alpha;
    let mix = (log_gamma(a - i * theta)? + log_gamma(1.0 + i * theta)?).exp();
    let k0 = 1.0 / (gamma_real(a / 2.0)? * gamma_real(1.0 - a / 2.0)?);
    let lamperti = mix * recip_gamma(a / 2.0 - i * theta) * recip_gamma(1.0 - a / 2.0 + i * theta)
        - gamma_real(a)? * k0;
    let k = gamma_real(a + 1.0)? * k0;
    let cpp = k * (1.0 / a - mix / gamma_real(a + 1.0)?);
    Ok((lamperti, cpp))
}

/// Laplace exponent ψ(z) of −αξ in the symmetric case, −1 < Re z < 1/α:
/// −2^α Γ(1/2 − αz/2)Γ(α(1+z)/2)/(Γ(1/2 − α(1+z)/2)Γ(αz/2)).
pub fn sym_laplace_exponent(alpha: f64, z: C) -> Result<C> {
    if !(z.re > -1.0 && z.re < 1.0 / alpha) {
        return Err(Error::StripViolation {
            what: "sym_laplace_exponent",
            re: z.re,
            lo: -1.0,
            hi: 1.0 / alpha,
        });
    }
    if z == c(0.0) {
        return Ok(c(0.0));
    }
    let a = alpha;
    let num = log_gamma(0.5 - a * z / 2.0)? + log_gamma(a * (z + 1.0) / 2.0)?;
    Ok(-(2f64.powf(a))
        * num.exp()
        * recip_gamma(0.5 - a * (z + 1.0) / 2.0)
        * recip_gamma(a * z / 2.0))
}

/// Lévy density k·e^y/(1+e^y)^{α+1} of the compound Poisson part,
/// k = Γ(α+1)/(Γ(α/2)Γ(1−α/2)).
pub fn sym_cpp_density(alpha: f64, y: f64) -> f64 {
    let lk = gamma_real(alpha + 1.0).unwrap_or(f64::NAN).ln()
        - gamma_real(alpha / 2.0).unwrap_or(f64::NAN).ln()
        - gamma_real(1.0 - alpha / 2.0).unwrap_or(f64::NAN).ln();
    // ln(1 + e^y) without overflow
    let softplus = if y > 0.0 { y + (-y).exp().ln_1p() } else { y.exp().ln_1p() };
    (lk + y - (alpha + 1.0) * softplus).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::make_params;
    use crate::quad::integrate;
    use proptest::prelude::*;

    fn p(a: f64, r: f64) -> StableParams {
        make_params(a, r).unwrap()
    }

    fn close(a: C, b: C, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    struct Diag;
    impl MapCharacteristics for Diag {
        fn generator(&self) -> Generator2 {
            Generator2::new(0.0, 0.0).unwrap()
        }
        fn psi(&self, state: usize, z: C) -> Result<C> {
            Ok(z * z * (state as f64 + 1.0))
        }
        fn jump_transform(&self, _: usize, _: usize, _: C) -> Result<C> {
            Ok(c(7.0))
        }
    }

    struct UnitJumps;
    impl MapCharacteristics for UnitJumps {
        fn generator(&self) -> Generator2 {
            Generator2::new(0.3, 1.1).unwrap()
        }
        fn psi(&self, _: usize, z: C) -> Result<C> {
            Ok(z)
        }
        fn jump_transform(&self, _: usize, _: usize, _: C) -> Result<C> {
            Ok(c(1.0))
        }
    }

    #[test]
    fn build_trivial_cases() {
        let z = C::new(0.4, 0.2);
        let f = build_map_exponent(&Diag, z).unwrap();
        assert_eq!(f.entries[0][1], c(0.0));
        assert_eq!(f.entries[0][0], z * z);
        assert_eq!(f.entries[1][1], 2.0 * z * z);
        let f = build_map_exponent(&UnitJumps, z).unwrap();
        assert_eq!(f.entries[0][0], z - 0.3);
        assert_eq!(f.entries[0][1], c(0.3));
        assert_eq!(f.entries[1][0], c(1.1));
    }

    #[test]
    fn build_matches_stable_closed_form() {
        for &(a, r) in &[(1.5, 0.55), (1.3, 0.5), (1.8, 0.5)] {
            let prm = p(a, r);
            let chars = StableCharacteristics { params: prm };
            for z in [c(0.1), c(-0.4), C::new(0.2, 0.7)] {
                let built = build_map_exponent(&chars, z).unwrap();
                let closed = stable_F(&prm, z).unwrap();
                for i in 0..2 {
                    for j in 0..2 {
                        assert!(close(built.entries[i][j], closed.entries[i][j], 1e-12));
                    }
                }
            }
        }
        let chars = StableCharacteristics { params: p(1.5, 0.55) };
        assert!(matches!(
            build_map_exponent(&chars, c(0.9)),
            Err(Error::UndefinedTransform { .. })
        ));
    }

    #[test]
    fn stable_f_structure() {
        let prm = p(1.5, 0.55);
        let f0 = stable_F(&prm, c(0.0)).unwrap();
        for s in f0.row_sums() {
            assert!(s.norm() < 1e-15);
        }
        let q = stable_generator(&prm);
        assert!((f0.entries[0][1].re - q.q12).abs() < 1e-14);
        assert!((f0.entries[1][0].re - q.q21).abs() < 1e-14);
        let pi = q.stationary().unwrap();
        assert!((pi[0] * q.entry(0, 0) + pi[1] * q.entry(1, 0)).abs() < 1e-15);
        let root = stable_F(&prm, c(1.0 / 1.5 - 1.0)).unwrap();
        assert!(root.det().norm() < 1e-13);
        let sym = stable_F(&p(1.5, 0.5), C::new(0.2, 0.1)).unwrap();
        assert_eq!(sym.entries[0][0], sym.entries[1][1]);
        assert_eq!(sym.entries[0][1], sym.entries[1][0]);
        assert!(stable_F(&prm, c(0.7)).is_err());
        assert!(stable_F(&prm, c(-1.0)).is_err());
    }

    #[test]
    fn b_and_a_inverse_pair() {
        let prm = p(1.5, 0.55);
        let s = c(0.15);
        let (b, a) = B_and_A(&prm, s).unwrap();
        let prod = a.mul(&b);
        assert!((prod[0][0] - 1.0).norm() < 1e-12);
        assert!((prod[1][1] - 1.0).norm() < 1e-12);
        assert!(prod[0][1].norm() < 1e-12 && prod[1][0].norm() < 1e-12);
        // B(s) = −F(−s)/s
        let f = stable_F(&prm, -s).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(b.entries[i][j], -f.entries[i][j] / s, 1e-12));
            }
        }
        assert!(B_and_A(&prm, c(0.0)).is_err());
        assert!(B_and_A(&prm, c(0.5)).is_err());
    }

    #[test]
    fn det_b_closed_form_on_grid() {
        for &(a, r) in &[(1.5, 0.55), (1.2, 0.3), (1.9, 0.5)] {
            let prm = p(a, r);
            for k in 1..10 {
                let s = C::new((1.0 - 1.0 / a) * k as f64 / 10.0, 0.3 * (k as f64 - 5.0));
                let (b, am) = B_and_A(&prm, s).unwrap();
                let d = det_B(&prm, s).unwrap();
                assert!(close(b.det(), d, 1e-12), "a={a} s={s}");
                assert!((b.det() * am.det() - 1.0).norm() < 1e-11);
            }
        }
        let (b, _) = B_and_A(&p(1.5, 0.5), c(0.2)).unwrap();
        assert_eq!(b.entries[0][0], b.entries[1][1]);
        assert_eq!(b.entries[0][1], b.entries[1][0]);
    }

    #[test]
    fn perron_examples() {
        let prm = p(1.5, 0.55);
        let q = stable_generator(&prm);
        let d0 = leading_eigenvalue(&stable_F(&prm, c(0.0)).unwrap(), &q).unwrap();
        assert!(d0.kappa.abs() < 1e-15);
        assert!((d0.v[0] - 1.0).abs() < 1e-12 && (d0.v[1] - 1.0).abs() < 1e-12);
        assert!(d0.kappa > d0.lambda2);
        assert!(stable_kappa(&prm, 1.0 / 1.5 - 1.0).unwrap().abs() < 1e-10);
        // κ < 0 strictly between the root and 0
        for k in 1..10 {
            let z = (1.0 / 1.5 - 1.0) * k as f64 / 10.0;
            assert!(stable_kappa(&prm, z).unwrap() < 0.0);
        }
        assert!(stable_kappa(&prm, 0.1).unwrap() > 0.0);
        assert!(stable_kappa(&prm, -0.5).unwrap() > 0.0);
        let complex = stable_F(&prm, C::new(0.1, 0.5)).unwrap();
        assert!(matches!(leading_eigenvalue(&complex, &q), Err(Error::NonRealEntries)));
    }

    #[test]
    fn symmetric_exponents() {
        assert_eq!(sym_char_exponent(1.5, 0.0), c(0.0));
        let th = 1.3;
        let psi = sym_char_exponent(1.5, th);
        let (l, cp) = sym_char_exponent_parts(1.5, th).unwrap();
        assert!(close(psi, l + cp, 1e-10));
        for k in 1..20 {
            let t = 0.37 * k as f64;
            assert!(close(sym_char_exponent(1.4, -t), sym_char_exponent(1.4, t).conj(), 1e-13));
        }
        assert_eq!(sym_laplace_exponent(1.5, c(0.0)).unwrap(), c(0.0));
        for k in 1..20 {
            let a = 1.0 + 0.05 * k as f64;
            assert!(sym_laplace_exponent(a, c(1.0 / a - 1.0)).unwrap().norm() < 1e-10);
        }
        assert!(sym_laplace_exponent(1.5, c(0.7)).is_err());
    }

    // Γ(3.5)/(Γ(0.75)Γ(0.25)) · 2^{−2.5}, from mpmath.
    #[test]
    fn cpp_density_values() {
        let a = 1.5;
        let k = gamma_real(a + 1.0).unwrap() / (gamma_real(a / 2.0).unwrap() * gamma_real(1.0 - a / 2.0).unwrap());
        assert!((sym_cpp_density(a, 0.0) - k * 2f64.powf(-(a + 1.0))).abs() < 1e-15);
        let total = integrate(|y| sym_cpp_density(a, y), -60.0, 60.0, 1e-12, 0.0).value
            + k * (-60.0f64).exp()
            + k * (-a * 60.0f64).exp() / a;
        assert!((total - k / a).abs() < 1e-8);
        let y = 40.0;
        assert!((sym_cpp_density(a, y) / (k * (-a * y).exp()) - 1.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn kappa_midpoint_convex(alpha in 1.05f64..1.95, u in 0.05f64..0.95, a in -0.95f64..0.6, b in -0.95f64..0.6) {
            let lo = 1.0 - 1.0 / alpha;
            let prm = p(alpha, lo + u * (1.0 / alpha - lo));
            let hi = 1.0 / alpha - 0.01;
            let (a, b) = (a.min(hi), b.min(hi));
            let m = stable_kappa(&prm, 0.5 * (a + b)).unwrap();
            let avg = 0.5 * (stable_kappa(&prm, a).unwrap() + stable_kappa(&prm, b).unwrap());
            prop_assert!(m <= avg + 1e-12 * (1.0 + avg.abs()));
        }

        #[test]
        fn perron_vector_positive(alpha in 1.05f64..1.95, u in 0.05f64..0.95, z in -0.9f64..0.5) {
            let lo = 1.0 - 1.0 / alpha;
            let prm = p(alpha, lo + u * (1.0 / alpha - lo));
            let z = z.min(1.0 / alpha - 0.01);
            let d = leading_eigenvalue(&stable_F(&prm, c(z)).unwrap(), &stable_generator(&prm)).unwrap();
            prop_assert!(d.v[0] > 0.0 && d.v[1] > 0.0);
            prop_assert!((d.pi[0] * d.v[0] + d.pi[1] * d.v[1] - 1.0).abs() < 1e-12);
            prop_assert!((d.pi[0] + d.pi[1] - 1.0).abs() < 1e-15);
            prop_assert!(d.kappa > d.lambda2);
        }
    }
}
