//! Monte Carlo oracle for the law of T₀: Chambers–Mallows–Stuck sampling of
//! stable increments and an ε-barrier approximation of the hitting time.
//!
//! Every path draws from its own ChaCha stream (seed, path index), so results
//! do not depend on the number of worker threads.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::StableParams;

/// Sampler for X₁ with characteristic exponent c|θ|^α(1 − iβ tan(πα/2) sgn θ).
#[derive(Debug, Clone, Copy)]
pub struct StableSampler {
    alpha: f64,
    inv_alpha: f64,
    sigma: f64,
    b: f64,
    s: f64,
}

impl StableSampler {
    pub fn new(params: &StableParams) -> Self {
        let a = params.alpha;
        let beta = params.beta();
        let tan = (PI * a / 2.0).tan();
        StableSampler {
            alpha: a,
            inv_alpha: 1.0 / a,
            sigma: params.scale_c().powf(1.0 / a),
            b: (beta * tan).atan() / a,
            s: (1.0 + beta * beta * tan * tan).powf(1.0 / (2.0 * a)),
        }
    }

    /// One draw of X₁ under P₀.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let a = self.alpha;
        let v = PI * (rng.gen::<f64>() - 0.5);
        let w = -(1.0 - rng.gen::<f64>()).ln();
        let vb = a * (v + self.b);
        self.sigma * self.s * vb.sin() / v.cos().powf(self.inv_alpha)
            * ((v - vb).cos() / w).powf((1.0 - a) / a)
    }

    /// One draw of X_dt = dt^{1/α} X₁.
    pub fn increment<R: Rng + ?Sized>(&self, dt: f64, rng: &mut R) -> f64 {
        dt.powf(self.inv_alpha) * self.sample(rng)
    }
}

pub fn sample_stable_increment<R: Rng + ?Sized>(params: &StableParams, dt: f64, rng: &mut R) -> f64 {
    StableSampler::new(params).increment(dt, rng)
}

/// How the time step is chosen along a path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepScheme {
    /// Constant step `dt`.
    Fixed,
    /// Step min(dt, (|X|/resolution)^α): the barrier is approached with
    /// steps whose typical jump is a fixed fraction of the distance to zero.
    ScaleAdaptive { resolution: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub x0: f64,
    pub eps: f64,
    /// Step size (`Fixed`) or largest step (`ScaleAdaptive`).
    pub dt: f64,
    pub n_paths: usize,
    pub t_grid: Vec<f64>,
    pub scheme: StepScheme,
    pub seed: u64,
    /// Continue each path to the barrier ε/2 as well.
    pub half_eps: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathEstimate {
    /// (t, empirical P(T_ε > t)).
    pub grid: Vec<(f64, f64)>,
    pub n_paths: usize,
    pub eps_barrier: f64,
    pub dt: f64,
    pub stderr: Vec<f64>,
    /// Same estimate for the barrier ε/2, from the same paths.
    pub half_eps_grid: Option<Vec<(f64, f64)>>,
    pub half_eps_stderr: Option<Vec<f64>>,
    /// Per-path barrier times; infinite when the path survives the horizon.
    pub hitting_times: Vec<f64>,
    pub hitting_times_half: Option<Vec<f64>>,
    /// X at the horizon for paths that did not reach the ε-barrier.
    pub terminal: Vec<Option<f64>>,
}

struct PathOutcome {
    t_eps: f64,
    t_half: f64,
    terminal: Option<f64>,
}

fn validate(params: &StableParams, cfg: &SimulationConfig) -> Result<f64> {
    let bad = |m: String| Err(Error::InvalidSimulation(m));
    if !(cfg.x0.is_finite() && cfg.x0 != 0.0) {
        return bad(format!("x0 must be finite and nonzero, got {}", cfg.x0));
    }
    if !(cfg.eps > 0.0 && cfg.eps < cfg.x0.abs() / 10.0) {
        return bad(format!("eps must lie in (0, |x0|/10), got {}", cfg.eps));
    }
    if !(cfg.dt > 0.0 && cfg.dt.is_finite()) {
        return bad(format!("dt must be positive, got {}", cfg.dt));
    }
    if cfg.n_paths == 0 {
        return bad("n_paths must be positive".into());
    }
    if cfg.t_grid.is_empty() || cfg.t_grid.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return bad("t_grid must be a nonempty list of positive times".into());
    }
    match cfg.scheme {
        StepScheme::Fixed => {
            if cfg.dt.powf(1.0 / params.alpha) >= cfg.eps / 4.0 {
                return bad(format!(
                    "fixed step needs dt^(1/alpha) < eps/4 (dt = {}, eps = {})",
                    cfg.dt, cfg.eps
                ));
            }
        }
        StepScheme::ScaleAdaptive { resolution } => {
            if !(resolution > 0.0) {
                return bad(format!("resolution must be positive, got {resolution}"));
            }
        }
    }
    Ok(cfg.t_grid.iter().cloned().fold(0.0, f64::max))
}

fn run_path(sampler: &StableSampler, cfg: &SimulationConfig, horizon: f64, index: u64) -> PathOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let alpha = sampler.alpha;
    let mut x = cfg.x0;
    let mut t = 0.0;
    let mut out = PathOutcome {
        t_eps: f64::INFINITY,
        t_half: f64::INFINITY,
        terminal: None,
    };
    let mut barrier = cfg.eps;
    while t < horizon {
        let mut step = match cfg.scheme {
            StepScheme::Fixed => cfg.dt,
            StepScheme::ScaleAdaptive { resolution } => cfg.dt.min((x.abs() / resolution).powf(alpha)),
        };
        step = step.min(horizon - t);
        x += sampler.increment(step, &mut rng);
        t += step;
        if x.abs() < barrier {
            if out.t_eps.is_infinite() {
                out.t_eps = t;
                if !cfg.half_eps {
                    return out;
                }
                barrier = 0.5 * cfg.eps;
                if x.abs() >= barrier {
                    continue;
                }
            }
            out.t_half = t;
            return out;
        }
    }
    if out.t_eps.is_infinite() {
        out.terminal = Some(x);
    }
    out
}

fn empirical(times: &[f64], grid: &[f64]) -> (Vec<(f64, f64)>, Vec<f64>) {
    let n = times.len() as f64;
    let mut sorted: Vec<f64> = times.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let mut pts = Vec::with_capacity(grid.len());
    let mut se = Vec::with_capacity(grid.len());
    for &g in grid {
        let alive = sorted.len() - sorted.partition_point(|&x| x <= g);
        let p = alive as f64 / n;
        pts.push((g, p));
        se.push((p * (1.0 - p) / n).sqrt());
    }
    (pts, se)
}

/// Empirical law of the ε-barrier time from x0, on `cfg.t_grid`.
pub fn estimate_hitting_law(params: &StableParams, cfg: &SimulationConfig) -> Result<PathEstimate> {
    let horizon = validate(params, cfg)?;
    let sampler = StableSampler::new(params);
    let outcomes: Vec<PathOutcome> = (0..cfg.n_paths as u64)
        .into_par_iter()
        .map(|i| run_path(&sampler, cfg, horizon, i))
        .collect();
    let times: Vec<f64> = outcomes.iter().map(|o| o.t_eps).collect();
    let (grid, stderr) = empirical(&times, &cfg.t_grid);
    for w in grid.windows(2) {
        if w[1].0 >= w[0].0 {
            debug_assert!(w[1].1 <= w[0].1);
        }
    }
    let (half_eps_grid, half_eps_stderr, hitting_times_half) = if cfg.half_eps {
        let half: Vec<f64> = outcomes.iter().map(|o| o.t_half).collect();
        let (g, s) = empirical(&half, &cfg.t_grid);
        (Some(g), Some(s), Some(half))
    } else {
        (None, None, None)
    };
    Ok(PathEstimate {
        grid,
        n_paths: cfg.n_paths,
        eps_barrier: cfg.eps,
        dt: cfg.dt,
        stderr,
        half_eps_grid,
        half_eps_stderr,
        hitting_times: times,
        hitting_times_half,
        terminal: outcomes.iter().map(|o| o.terminal).collect(),
    })
}

/// Two-sample Kolmogorov–Smirnov statistic sup |F_a − F_b|.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.total_cmp(y));
    b.sort_by(|x, y| x.total_cmp(y));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic KS critical value at level 0.01.
pub fn ks_critical_01(na: usize, nb: usize) -> f64 {
    let (n, m) = (na as f64, nb as f64);
    1.628 * ((n + m) / (n * m)).sqrt()
}
