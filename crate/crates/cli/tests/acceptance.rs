//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stablehit::density_series::{density_rational, pole_term_family1, pole_term_family2, small_t_coefficients};
use stablehit::mellin_inversion::survival_curve;
use stablehit::quad::integrate;
use stablehit::{
    conditioned_entrance, density_asymptotic_small_t, density_irrational, entrance_law_density,
    estimate_hitting_law, excursion_length_tail, functional_equation_residual, in_K, invert_density,
    make_params, mellin_T0, mellin_continued, mellin_positive_stable, mellin_symmetric, plan_truncation,
    ratio_Y, stable_kappa, sym_laplace_exponent, ComplexValue as C, Fraction, SeriesMode,
    SimulationConfig, StableParams, StartSign, StepScheme, TestFunction,
};

const SIGNS: [StartSign; 2] = [StartSign::Plus, StartSign::Minus];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn admissible(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let a = rng.gen_range(1.02..1.98);
    let (lo, hi) = (1.0 - 1.0 / a, 1.0 / a);
    (a, lo + (hi - lo) * rng.gen_range(0.02..0.98))
}

fn within(limit: Duration, elapsed: Duration) -> bool {
    elapsed < limit
}

fn normalization() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let (a, r) = admissible(&mut rng);
        let p = make_params(a, r).unwrap();
        for sign in SIGNS {
            let v = mellin_T0(&p, sign, C::new(1.0, 0.0)).unwrap().value;
            worst = worst.max((v - 1.0).norm());
        }
    }
    let el = start.elapsed();
    outcome(
        worst < 1e-12 && within(Duration::from_secs(1), el),
        format!("max |h(1) - 1| = {worst:.3e}, {el:.2?}"),
    )
}

fn functional_equation() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let a = 1.025 + 0.95 * i as f64 / 19.0;
        for j in 0..20 {
            let (lo, hi) = (1.0 - 1.0 / a, 1.0 / a);
            let r = lo + (hi - lo) * (0.025 + 0.95 * j as f64 / 19.0);
            let p = make_params(a, r).unwrap();
            let top = 1.0 - 1.0 / a;
            for k in 0..10 {
                let s = top * (k as f64 + 0.5) / 10.0;
                worst = worst.max(functional_equation_residual(&p, s).unwrap());
            }
        }
    }
    let el = start.elapsed();
    outcome(
        worst < 1e-10 && within(Duration::from_secs(5), el),
        format!("max residual = {worst:.3e} over 400 pairs x 10 s, {el:.2?}"),
    )
}

fn symmetric_reduction() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut scalar: f64 = 0.0;
    for a in [1.2, 1.5, 1.8] {
        let p = make_params(a, 0.5).unwrap();
        let (lo, hi) = (-1.0 / a, 2.0 - 1.0 / a);
        for k in 0..50 {
            let s = C::new(lo + (hi - lo) * (k as f64 + 0.5) / 50.0, 0.3 * (k % 5) as f64);
            let v = mellin_T0(&p, StartSign::Plus, s).unwrap().value;
            let w = mellin_symmetric(a, s).unwrap().value;
            worst = worst.max((v - w).norm() / w.norm());
        }
        // h(s+1) = −s/ψ(−s)·h(s) for 0 < s < 1 − 1/α
        for k in 0..10 {
            let s = (1.0 - 1.0 / a) * (k as f64 + 0.5) / 10.0;
            let psi = sym_laplace_exponent(a, C::new(-s, 0.0)).unwrap();
            let lhs = mellin_symmetric(a, C::new(s + 1.0, 0.0)).unwrap().value;
            let rhs = -s / psi * mellin_symmetric(a, C::new(s, 0.0)).unwrap().value;
            scalar = scalar.max((lhs - rhs).norm());
        }
    }
    outcome(
        worst < 1e-12 && scalar < 1e-10,
        format!("max rel gap = {worst:.3e}, scalar equation residual = {scalar:.3e}"),
    )
}

fn cramer_roots() -> Outcome {
    let mut map: f64 = 0.0;
    let mut sym: f64 = 0.0;
    for i in 0..20 {
        let a = 1.03 + 0.94 * i as f64 / 19.0;
        let r = 1.0 - 1.0 / a + (2.0 / a - 1.0) * 0.37;
        let p = make_params(a, r).unwrap();
        map = map.max(stable_kappa(&p, 1.0 / a - 1.0).unwrap().abs());
        sym = sym.max(sym_laplace_exponent(a, C::new(1.0 / a - 1.0, 0.0)).unwrap().norm());
    }
    outcome(map < 1e-10 && sym < 1e-10, format!("max |kappa| = {map:.3e}, max |psi| = {sym:.3e}"))
}

fn smallest_certified_n(p: &StableParams, sign: StartSign, t: f64) -> usize {
    (3..400)
        .filter(|&n| in_K(p.alpha, n))
        .find(|&n| {
            let plan = plan_truncation(p, sign, t, n).unwrap();
            let v = density_irrational(p, sign, t, &plan, SeriesMode::Filtered).unwrap().value;
            plan.tail_bound < 1e-9 * v.abs()
        })
        .expect("no certified truncation index below 400")
}

fn dual_method() -> Outcome {
    let start = Instant::now();
    let rational = StableParams::with_fraction(Fraction::new(3, 2).unwrap(), 0.6).unwrap();
    let irrational = make_params(2f64.sqrt(), 0.55).unwrap();
    let mut worst: f64 = 0.0;
    let mut ns = Vec::new();
    for sign in SIGNS {
        for t in [0.5, 1.0, 2.0, 5.0, 10.0] {
            let inv = invert_density(&rational, sign, t, 1e-12).unwrap().value;
            let ser = density_rational(&rational, sign, t, 64).unwrap().value;
            worst = worst.max(((ser - inv) / inv).abs());

            let n = smallest_certified_n(&irrational, sign, t);
            ns.push(n);
            let plan = plan_truncation(&irrational, sign, t, n).unwrap();
            let ser = density_irrational(&irrational, sign, t, &plan, SeriesMode::Filtered).unwrap().value;
            let inv = invert_density(&irrational, sign, t, 1e-12).unwrap().value;
            worst = worst.max(((ser - inv) / inv).abs());
        }
    }
    let el = start.elapsed();
    outcome(
        worst < 1e-6 && within(Duration::from_secs(30), el),
        format!("max rel gap = {worst:.3e}, N in K used: {ns:?}, {el:.2?}"),
    )
}

// (1/2πi)∮ h(s) t^{−s} ds on a circle of radius `rad`, trapezoid rule.
fn residue(p: &StableParams, sign: StartSign, pole: f64, t: f64, rad: f64) -> f64 {
    let m = 256;
    let mut acc = C::new(0.0, 0.0);
    for j in 0..m {
        let th = 2.0 * PI * j as f64 / m as f64;
        let e = C::new(0.0, th).exp();
        let s = pole + rad * e;
        acc += mellin_continued(p, sign, s).unwrap() * (-s * t.ln()).exp() * rad * e;
    }
    (acc / m as f64).re
}

fn residue_identity() -> Outcome {
    let p = make_params(2f64.sqrt(), 0.55).unwrap();
    let a = p.alpha;
    let t = 1.3;
    // the ten poles nearest the strip on the right, with their series terms
    let mut poles: Vec<(f64, usize, usize)> = Vec::new();
    for k in 1..12 {
        poles.push((1.0 + k as f64 / a, 1, k));
        poles.push((k as f64 + 1.0 - 1.0 / a, 2, k));
    }
    poles.sort_by(|x, y| x.0.total_cmp(&y.0));
    let all: Vec<f64> = poles.iter().map(|p| p.0).collect();
    let mut worst: f64 = 0.0;
    for sign in SIGNS {
        let r = p.rho_for(sign);
        for &(s0, fam, k) in poles.iter().take(10) {
            let gap = all
                .iter()
                .filter(|&&q| q != s0)
                .map(|q| (q - s0).abs())
                .fold(f64::INFINITY, f64::min);
            let res = residue(&p, sign, s0, t, 0.3 * gap.min(0.5));
            let term = if fam == 1 {
                pole_term_family1(a, r, k, t).unwrap()
            } else {
                pole_term_family2(a, r, k, t).unwrap()
            };
            worst = worst.max(((term + res) / term).abs());
        }
    }
    outcome(worst < 1e-9, format!("max rel |term + residue| = {worst:.3e}"))
}

fn total_mass() -> Outcome {
    let mut worst: f64 = 0.0;
    for (a, r) in [(1.5, 0.55), (2f64.sqrt(), 0.5), (1.1, 0.45), (1.9, 0.5), (1.7, 0.42)] {
        let p = make_params(a, r).unwrap();
        for sign in SIGNS {
            // head expansion + quadrature + power-law tail
            let m = survival_curve(&p, sign, &[0.0], 1e-8).unwrap()[0];
            worst = worst.max((m - 1.0).abs());
        }
    }
    outcome(worst < 1e-6, format!("max |mass - 1| = {worst:.3e}"))
}

fn small_time() -> Outcome {
    let p = make_params(1.5, 0.55).unwrap();
    let a = p.alpha;
    let c = 1.5;
    let mut bounded = true;
    let mut worst_ratio: f64 = 0.0;
    let mut scaled = Vec::new();
    for sign in SIGNS {
        let r = p.rho_for(sign);
        // leading neglected term a₃ t^{2+1/α}, so the scaled remainder ~ a₃ t^{1/2}
        let a3 = small_t_coefficients(a, a * r, 2.5)[2].1;
        let mut coarsest = None;
        for k in 4..=10 {
            let t = 2f64.powi(-k);
            let inv = invert_density(&p, sign, t, 1e-13).unwrap().value;
            let exp = density_asymptotic_small_t(&p, sign, t, c).unwrap().value;
            let rem = (inv - exp) / t.powf(c + 1.0 / a);
            scaled.push(rem);
            worst_ratio = worst_ratio.max(rem.abs() / (a3.abs() * t.sqrt()));
            // bounded: finite and never above its value at the coarsest point
            let first = *coarsest.get_or_insert(rem.abs());
            bounded &= rem.is_finite() && rem.abs() <= first;
        }
    }
    let zero = small_t_coefficients(a, 1.0, 3.0).iter().all(|(_, k)| *k == 0.0);
    let max_scaled = scaled.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    outcome(
        bounded && zero,
        format!(
            "max |scaled remainder| = {max_scaled:.3e}, nonincreasing as t decreases: {bounded}, max ratio to next term = {worst_ratio:.3}, zero expansion at rho_hat = 1/alpha: {zero}"
        ),
    )
}

fn spectrally_positive() -> Outcome {
    let a = 1.5;
    let rho_hat = 1.0 / a - 1e-8;
    let p = make_params(a, 1.0 - rho_hat).unwrap();
    let (lo, hi) = (-1.0 / a, 2.0 - 1.0 / a);
    let mut worst: f64 = 0.0;
    for k in 0..40 {
        let s = C::new(lo + (hi - lo) * (k as f64 + 0.5) / 40.0, 0.0);
        let v = mellin_T0(&p, StartSign::Plus, s).unwrap().value;
        let w = mellin_positive_stable(a, s).unwrap();
        worst = worst.max((v - w).norm() / w.norm());
    }
    outcome(worst < 1e-6, format!("max rel gap = {worst:.3e}"))
}

fn k_census() -> Outcome {
    let start = Instant::now();
    let a = 2f64.sqrt();
    let hits = (1..=10_000usize).filter(|&n| in_K(a, n)).count();
    let frac = hits as f64 / 10_000.0;
    let el = start.elapsed();
    outcome(
        frac >= 0.95 && within(Duration::from_secs(1), el),
        format!("|K(sqrt 2) in [1, 1e4]| / 1e4 = {frac:.4}, {el:.2?}"),
    )
}

fn monte_carlo() -> Outcome {
    let start = Instant::now();
    let p = make_params(1.5, 0.55).unwrap();
    let ts = vec![0.25, 0.5, 1.0, 2.0];
    let cfg = SimulationConfig {
        x0: 1.0,
        eps: 1e-4,
        dt: 0.01,
        n_paths: 100_000,
        t_grid: ts.clone(),
        scheme: StepScheme::ScaleAdaptive { resolution: 30.0 },
        seed: 20_240_601,
        half_eps: false,
    };
    let est = estimate_hitting_law(&p, &cfg).unwrap();
    let exact = survival_curve(&p, StartSign::Plus, &ts, 1e-9).unwrap();
    let mut zs = Vec::new();
    for (i, (_, mc)) in est.grid.iter().enumerate() {
        zs.push((mc - exact[i]) / est.stderr[i]);
    }
    let el = start.elapsed();
    let ok = zs.iter().all(|z| z.abs() < 4.0) && within(Duration::from_secs(300), el);
    let zs: Vec<String> = zs.iter().map(|z| format!("{z:+.2}")).collect();
    outcome(ok, format!("z-scores at t = {ts:?}: [{}], {el:.2?}", zs.join(", ")))
}

fn applications() -> Outcome {
    let p = make_params(1.5, 0.55).unwrap();
    let y = ratio_Y(&p, 1.0, 1e3).unwrap();
    let t = 1.3;
    let mut mass = 0.0;
    for side in [-1.0, 1.0] {
        let mut f = |v: f64| {
            let x = side * v.exp();
            entrance_law_density(&p, t, x).unwrap() * x.abs()
        };
        let (lo, hi) = ((1e-7f64).ln(), (1e5f64).ln());
        let n = 60;
        let w = (hi - lo) / n as f64;
        for i in 0..n {
            let a = lo + i as f64 * w;
            mass += integrate(&mut f, a, a + w, 1e-13, 1e-10).value;
        }
    }
    let tail = excursion_length_tail(&p, t).unwrap();
    let mass_gap = ((mass - tail) / tail).abs();
    let one = conditioned_entrance(&p, 1.0, &TestFunction::new(|_| 1.0)).unwrap();
    outcome(
        (y - 1.0).abs() < 0.05 && mass_gap < 1e-4 && (one - 1.0).abs() < 1e-4,
        format!(
            "Y(1e3, 1) = {y:.5}, entrance mass rel gap = {mass_gap:.3e}, conditioned mass of 1 = {one:.8}"
        ),
    )
}

fn run_bin(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_stablehit"))
        .args(args)
        .output()
        .expect("binary runs");
    let mut bytes = out.stdout;
    bytes.extend_from_slice(format!("exit={:?}", out.status.code()).as_bytes());
    bytes
}

fn determinism() -> Outcome {
    let validate = ["validate", "--alpha", "1.5", "--rho", "0.55"];
    let simulate = [
        "simulate", "--alpha", "1.5", "--rho", "0.55", "--t-min", "0.25", "--t-max", "2", "--t-steps", "4",
        "--paths", "2000", "--seed", "11",
    ];
    let v1 = run_bin(&validate);
    let v2 = run_bin(&validate);
    let s1 = run_bin(&simulate);
    let s2 = run_bin(&simulate);
    let ok = v1 == v2 && s1 == s2 && v1.ends_with(b"exit=Some(0)") && s1.ends_with(b"exit=Some(0)");
    outcome(
        ok,
        format!("validate identical: {}, simulate identical: {} ({} bytes)", v1 == v2, s1 == s2, s1.len()),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("normalization", normalization),
        ("functional equation", functional_equation),
        ("symmetric reduction", symmetric_reduction),
        ("Cramer roots", cramer_roots),
        ("dual-method density", dual_method),
        ("residue identity", residue_identity),
        ("total mass", total_mass),
        ("small-time expansion", small_time),
        ("spectrally positive boundary", spectrally_positive),
        ("K(alpha) census", k_census),
        ("Monte Carlo concordance", monte_carlo),
        ("applications round-trip", applications),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!("{} {:>2}. {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
