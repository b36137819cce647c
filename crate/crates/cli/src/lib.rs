//! Command-line front end: argument parsing, dispatch to the library and
//! tabular output.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stablehit::density_series::density_rational;
use stablehit::mellin_inversion::survival_curve;
use stablehit::{
    density, density_irrational, entrance_law_density, estimate_hitting_law, excursion_length_density,
    excursion_length_tail, h_function, make_params, mellin_T0, plan_truncation, ratio_Y, AlphaClass,
    ComplexValue, Fraction, SeriesMode, SimulationConfig, StableParams, StartSign, StepScheme,
};
use thiserror::Error;

pub mod output;
pub mod validate;

use output::{Format, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Library(stablehit::Error),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<stablehit::Error> for CliError {
    fn from(e: stablehit::Error) -> Self {
        use stablehit::Error as E;
        match e {
            E::InvalidParams { .. }
            | E::Domain { .. }
            | E::StripViolation { .. }
            | E::NearPole { .. }
            | E::NotInK { .. }
            | E::ClassificationMismatch { .. }
            | E::InvalidSimulation(_) => CliError::Config(e.to_string()),
            other => CliError::Library(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Library(stablehit::Error::ToleranceUnreachable { .. }) => 3,
            CliError::Validation(_) => 4,
            CliError::Library(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "stablehit", version, about = "Law of the first hitting time of zero for stable processes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct ModelArgs {
    /// Index α in (1, 2), as a decimal or as an exact fraction m/n.
    #[arg(long)]
    pub alpha: String,
    /// Positivity parameter ρ.
    #[arg(long)]
    pub rho: f64,
    /// Starting side: +1 or -1.
    #[arg(long, default_value = "+1", allow_hyphen_values = true)]
    pub sign: String,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args, Clone, Default)]
pub struct GridArgs {
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub t_min: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Number of log-spaced points between --t-min and --t-max.
    #[arg(long)]
    pub t_steps: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Fixed,
    Adaptive,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// E[T₀^{s−1}] at a complex point s.
    Mellin {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        s_im: f64,
    },
    /// Density of T₀.
    Density {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Relative tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Fixed truncation index instead of automatic dispatch.
        #[arg(long)]
        terms: Option<usize>,
        /// With --terms, allow an index outside the certified set; the series
        /// may fail to converge for Liouville-type α.
        #[arg(long)]
        liouville_unsafe: bool,
    },
    /// P(T₀ > t).
    Survival {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Absolute tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Densities and survival functions from both sides.
    Table {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Self-checks with measured residuals; exit code 4 on failure.
    Validate {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Monte Carlo estimate of the ε-barrier survival function.
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Start point; defaults to the value of --sign.
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<f64>,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long, default_value_t = 1e-2)]
        dt: f64,
        #[arg(long, default_value_t = 10_000)]
        paths: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "adaptive")]
        scheme: SchemeArg,
        /// Steps per unit of |X|/scale under the adaptive scheme.
        #[arg(long, default_value_t = 30.0)]
        resolution: f64,
        /// Write per-path barrier times to this CSV file.
        #[arg(long)]
        raw_times: Option<PathBuf>,
    },
    /// Excursion quantities at a point x.
    Applications {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        x: f64,
    },
}

/// Parses α as a fraction m/n (exact rational) or a decimal.
pub fn parse_params(alpha: &str, rho: f64) -> Result<StableParams, CliError> {
    if alpha.contains('/') {
        let f: Fraction = alpha
            .parse()
            .map_err(|_| CliError::Config(format!("bad fraction '{alpha}', expected m/n in (1, 2)")))?;
        Ok(StableParams::with_fraction(f, rho)?)
    } else {
        let a: f64 = alpha
            .parse()
            .map_err(|_| CliError::Config(format!("bad alpha '{alpha}'")))?;
        Ok(make_params(a, rho)?)
    }
}

pub fn parse_sign(s: &str) -> Result<StartSign, CliError> {
    s.trim()
        .parse::<i32>()
        .ok()
        .and_then(StartSign::from_int)
        .ok_or_else(|| CliError::Config(format!("sign must be +1 or -1, got '{s}'")))
}

impl GridArgs {
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        let bad = |m: &str| Err(CliError::Config(m.to_string()));
        match (self.t, self.t_min, self.t_max, self.t_steps) {
            (Some(t), None, None, None) => Ok(vec![t]),
            (None, Some(lo), Some(hi), Some(n)) => {
                if !(lo > 0.0 && hi >= lo && n >= 1) {
                    return bad("need 0 < --t-min <= --t-max and --t-steps >= 1");
                }
                if n == 1 {
                    return Ok(vec![lo]);
                }
                let (a, b) = (lo.ln(), hi.ln());
                Ok((0..n)
                    .map(|i| match i {
                        0 => lo,
                        i if i == n - 1 => hi,
                        i => (a + (b - a) * i as f64 / (n - 1) as f64).exp(),
                    })
                    .collect())
            }
            (None, None, None, None) => bad("give --t or --t-min, --t-max and --t-steps"),
            _ => bad("--t cannot be combined with a range; a range needs --t-min, --t-max and --t-steps"),
        }
    }
}

fn model(m: &ModelArgs) -> Result<(StableParams, StartSign), CliError> {
    Ok((parse_params(&m.alpha, m.rho)?, parse_sign(&m.sign)?))
}

fn density_with_terms(
    p: &StableParams,
    sign: StartSign,
    t: f64,
    terms: usize,
    unsafe_series: bool,
) -> Result<stablehit::DensityResult, CliError> {
    match p.class() {
        AlphaClass::Rational { .. } => Ok(density_rational(p, sign, t, terms)?),
        AlphaClass::Irrational => {
            let plan = plan_truncation(p, sign, t, terms)?;
            let mode = if unsafe_series {
                if !plan.in_k {
                    log::warn!("N = {terms} is outside K(alpha); convergence is not guaranteed");
                }
                SeriesMode::Unfiltered
            } else {
                SeriesMode::Filtered
            };
            Ok(density_irrational(p, sign, t, &plan, mode)?)
        }
        AlphaClass::NearRational { m, n, .. } => Err(CliError::Config(format!(
            "alpha is numerically {m}/{n}; pass --alpha {m}/{n} for the rational series or drop --terms"
        ))),
    }
}

fn write_raw_times(path: &PathBuf, times: &[f64], half: Option<&Vec<f64>>) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Io(e.into()))?;
    let mut header = vec!["path", "t_eps"];
    if half.is_some() {
        header.push("t_half_eps");
    }
    w.write_record(&header).map_err(|e| CliError::Io(e.into()))?;
    for (i, t) in times.iter().enumerate() {
        let mut rec = vec![i.to_string(), format!("{t:.16e}")];
        if let Some(h) = half {
            rec.push(format!("{:.16e}", h[i]));
        }
        w.write_record(&rec).map_err(|e| CliError::Io(e.into()))?;
    }
    w.flush()?;
    Ok(())
}

/// Executes one command, writing its table to `out`.
pub fn run(command: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Mellin { model: m, s, s_im } => {
            let (p, sign) = model(m)?;
            let z = ComplexValue::new(*s, *s_im);
            let v = mellin_T0(&p, sign, z)?.value;
            let mut t = Table::new(vec!["s_re", "s_im", "sign", "value_re", "value_im"]);
            t.push(vec![z.re.into(), z.im.into(), (sign.as_int() as i64).into(), v.re.into(), v.im.into()]);
            t.write(m.format, out)?;
        }
        Command::Density { model: m, grid, tol, terms, liouville_unsafe } => {
            let (p, sign) = model(m)?;
            if *liouville_unsafe && terms.is_none() {
                return Err(CliError::Config("--liouville-unsafe needs --terms".into()));
            }
            let mut t = Table::new(vec!["t", "value", "method", "err"]);
            for x in grid.points()? {
                let d = match terms {
                    Some(n) => density_with_terms(&p, sign, x, *n, *liouville_unsafe)?,
                    None => density(&p, sign, x, *tol)?,
                };
                t.push(vec![x.into(), d.value.into(), d.method.name().into(), d.err_estimate.into()]);
            }
            t.write(m.format, out)?;
        }
        Command::Survival { model: m, grid, tol } => {
            let (p, sign) = model(m)?;
            let ts = grid.points()?;
            let s = survival_curve(&p, sign, &ts, *tol)?;
            let mut t = Table::new(vec!["t", "survival"]);
            for (x, v) in ts.iter().zip(s) {
                t.push(vec![(*x).into(), v.into()]);
            }
            t.write(m.format, out)?;
        }
        Command::Table { model: m, grid, tol } => {
            let p = parse_params(&m.alpha, m.rho)?;
            let ts = grid.points()?;
            let sp = survival_curve(&p, StartSign::Plus, &ts, *tol)?;
            let sm = survival_curve(&p, StartSign::Minus, &ts, *tol)?;
            let mut t = Table::new(vec!["t", "density_plus", "density_minus", "survival_plus", "survival_minus"]);
            for (i, &x) in ts.iter().enumerate() {
                let dp = density(&p, StartSign::Plus, x, *tol)?.value;
                let dm = density(&p, StartSign::Minus, x, *tol)?.value;
                t.push(vec![x.into(), dp.into(), dm.into(), sp[i].into(), sm[i].into()]);
            }
            t.write(m.format, out)?;
        }
        Command::Validate { model: m } => {
            let p = parse_params(&m.alpha, m.rho)?;
            let report = validate::run_checks(&p)?;
            report.table().write(m.format, out)?;
            if let Some(name) = report.first_failure() {
                return Err(CliError::Validation(format!("check '{name}' failed")));
            }
        }
        Command::Simulate {
            model: m,
            grid,
            x0,
            eps,
            dt,
            paths,
            seed,
            scheme,
            resolution,
            raw_times,
        } => {
            let (p, sign) = model(m)?;
            let x0 = x0.unwrap_or(sign.as_int() as f64);
            let ts = grid.points()?;
            let cfg = SimulationConfig {
                x0,
                eps: *eps,
                dt: *dt,
                n_paths: *paths,
                t_grid: ts.clone(),
                scheme: match scheme {
                    SchemeArg::Fixed => StepScheme::Fixed,
                    SchemeArg::Adaptive => StepScheme::ScaleAdaptive { resolution: *resolution },
                },
                seed: *seed,
                half_eps: false,
            };
            let est = estimate_hitting_law(&p, &cfg)?;
            // P_x(T₀ > t) = P_{sgn x}(T₀ > |x|^{−α} t)
            let scale = x0.abs().powf(-p.alpha);
            let scaled: Vec<f64> = ts.iter().map(|t| scale * t).collect();
            let exact = survival_curve(&p, StartSign::of(x0), &scaled, 1e-8)?;
            let mut t = Table::new(vec!["t", "survival_mc", "stderr", "survival_exact"]);
            for (i, (x, v)) in est.grid.iter().enumerate() {
                t.push(vec![(*x).into(), (*v).into(), est.stderr[i].into(), exact[i].into()]);
            }
            t.write(m.format, out)?;
            if let Some(path) = raw_times {
                write_raw_times(path, &est.hitting_times, est.hitting_times_half.as_ref())?;
            }
        }
        Command::Applications { model: m, grid, x } => {
            let p = parse_params(&m.alpha, m.rho)?;
            let hx = h_function(&p, *x)?;
            let mut t = Table::new(vec![
                "t",
                "x",
                "h_x",
                "excursion_density",
                "excursion_tail",
                "ratio_y",
                "entrance_density",
            ]);
            for s in grid.points()? {
                t.push(vec![
                    s.into(),
                    (*x).into(),
                    hx.into(),
                    excursion_length_density(&p, s)?.into(),
                    excursion_length_tail(&p, s)?.into(),
                    ratio_Y(&p, *x, s)?.into(),
                    entrance_law_density(&p, s, *x)?.into(),
                ]);
            }
            t.write(m.format, out)?;
        }
    }
    Ok(())
}
