//! Self-checks run by the `validate` command.

use stablehit::density_series::density_rational;
use stablehit::mellin_inversion::invert_on_line;
use stablehit::{
    density, functional_equation_residual, invert_density, mellin_T0, stable_kappa, survival,
    sym_laplace_exponent, AlphaClass, ComplexValue, Method, StableParams, StartSign,
};

use crate::output::{Cell, Table};
use crate::CliError;

const SIGNS: [StartSign; 2] = [StartSign::Plus, StartSign::Minus];
const AGREEMENT_TIMES: [f64; 5] = [0.5, 1.0, 2.0, 5.0, 10.0];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub threshold: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.measured < self.threshold
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn first_failure(&self) -> Option<&'static str> {
        self.checks.iter().find(|c| !c.passed()).map(|c| c.name)
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(vec!["check", "measured", "threshold", "status"]);
        for c in &self.checks {
            t.push(vec![
                Cell::Text(c.name.to_string()),
                c.measured.into(),
                c.threshold.into(),
                Cell::Text(if c.passed() { "PASS" } else { "FAIL" }.to_string()),
            ]);
        }
        t
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

// Relative gap between an independent series evaluation (or a second
// contour when no series applies) and contour inversion.
fn dual_method_gap(p: &StableParams, sign: StartSign, t: f64) -> Result<f64, CliError> {
    let inv = invert_density(p, sign, t, 1e-12)?.value;
    let other = match p.class() {
        AlphaClass::Rational { .. } => density_rational(p, sign, t, 64)?.value,
        AlphaClass::Irrational => {
            let d = density(p, sign, t, 1e-10)?;
            if d.method == Method::SeriesIrrational {
                d.value
            } else {
                invert_on_line(p, sign, t, 0.3, 1e-12)?.0.value
            }
        }
        AlphaClass::NearRational { .. } => invert_on_line(p, sign, t, 0.3, 1e-12)?.0.value,
    };
    Ok(rel(other, inv))
}

pub fn run_checks(p: &StableParams) -> Result<Report, CliError> {
    let mut checks = Vec::new();
    let a = p.alpha;

    let mut norm: f64 = 0.0;
    for sign in SIGNS {
        let v = mellin_T0(p, sign, ComplexValue::new(1.0, 0.0))?.value;
        norm = norm.max((v - 1.0).norm());
    }
    checks.push(Check { name: "normalization", measured: norm, threshold: 1e-12 });

    let top = 1.0 - 1.0 / a;
    let mut fe: f64 = 0.0;
    for k in 0..10 {
        let s = top * (k as f64 + 0.5) / 10.0;
        fe = fe.max(functional_equation_residual(p, s)?);
    }
    checks.push(Check { name: "functional_equation", measured: fe, threshold: 1e-10 });

    let mut gap: f64 = 0.0;
    for sign in SIGNS {
        for t in AGREEMENT_TIMES {
            gap = gap.max(dual_method_gap(p, sign, t)?);
        }
    }
    checks.push(Check { name: "dual_method_density", measured: gap, threshold: 1e-6 });

    let mut mass: f64 = 0.0;
    for sign in SIGNS {
        // P(T₀ > 0) = ∫ p
        mass = mass.max((survival(p, sign, 0.0, 1e-8)? - 1.0).abs());
    }
    checks.push(Check { name: "total_mass", measured: mass, threshold: 1e-6 });

    let root = 1.0 / a - 1.0;
    checks.push(Check {
        name: "cramer_root_map",
        measured: stable_kappa(p, root)?.abs(),
        threshold: 1e-10,
    });
    if p.is_symmetric() {
        let psi = sym_laplace_exponent(a, ComplexValue::new(root, 0.0))?;
        checks.push(Check { name: "cramer_root_symmetric", measured: psi.norm(), threshold: 1e-10 });
    }
    Ok(Report { checks })
}
