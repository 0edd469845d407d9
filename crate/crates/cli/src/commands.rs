//! One function per subcommand; each builds the full table before anything
//! is written.

use quatpert::models::{self, ModelKind};
use quatpert::oracle::{self, Grid1D};
use quatpert::relativistic::{self, HydrogenScale};
use quatpert::series::{self, PerturbationSpec};
use quatpert::Error;

use crate::output::{Cell, Table};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) | CliError::Io(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::NoConvergence(_) => CliError::Numerical(err.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Result of a command that ran to completion.
#[derive(Debug)]
pub struct Outcome {
    pub table: Table,
    pub warnings: Vec<String>,
    /// Set when the numbers were produced but miss a declared tolerance.
    pub tolerance_failure: Option<String>,
}

impl Outcome {
    fn new(table: Table) -> Self {
        Outcome { table, warnings: Vec::new(), tolerance_failure: None }
    }
}

fn scale(codata: bool) -> HydrogenScale {
    if codata {
        HydrogenScale::codata()
    } else {
        HydrogenScale::default()
    }
}

pub fn sigma(model: ModelKind, n: u32, alphas: &[f64], max_order: usize) -> Result<Outcome, CliError> {
    if alphas.is_empty() {
        return Err(CliError::Usage("at least one --alpha is required".into()));
    }
    let curve = models::sigma_curve(model, n, alphas, max_order)?;
    let mut outcome = Outcome::new(Table::new(["alpha", "order", "sigma"]));
    for (alpha, err) in &curve.rejected {
        outcome.warnings.push(format!("skipping alpha = {alpha}: {err}"));
    }
    for alpha in &curve.boundary {
        outcome.warnings.push(format!(
            "alpha = {alpha} lies on the convergence radius; partial sums converge slowly"
        ));
    }
    if curve.rows.is_empty() {
        let bound = models::gap_alpha_max(model, n)?;
        return Err(CliError::Usage(format!(
            "every alpha is outside the convergence radius |alpha| <= {bound} for {model} n = {n}"
        )));
    }
    for p in &curve.rows {
        outcome.table.push(vec![Cell::Fixed(p.alpha), Cell::Int(p.order as i64), Cell::Fixed(p.sigma)]);
    }
    Ok(outcome)
}

pub fn hydrogen_table(alpha_w_ev: f64, n_max: u32, codata: bool) -> Result<Outcome, CliError> {
    let table = relativistic::comparison_table(alpha_w_ev, n_max, &scale(codata))?;
    let mut outcome = Outcome::new(Table::new([
        "n",
        "e_complex_ev",
        "e_relativistic_ev",
        "e_quaternionic_ev",
        "alphaw_ev",
    ]));
    for n in &table.omitted {
        outcome.warnings.push(format!(
            "omitting n = {n}: alpha|W| = {alpha_w_ev} eV exceeds R_y/n^2 = {} eV",
            scale(codata).max_coupling(*n)
        ));
    }
    for r in &table.rows {
        outcome.table.push(vec![
            Cell::Int(i64::from(r.n)),
            Cell::Fixed(r.e_complex),
            Cell::Fixed(r.e_relativistic),
            Cell::Fixed(r.e_quaternionic),
            Cell::Fixed(r.alpha_w_ev),
        ]);
    }
    Ok(outcome)
}

pub fn levels(n_list: &[u32], samples: usize, codata: bool) -> Result<Outcome, CliError> {
    let points = relativistic::hydrogen_levels_vs_potential(n_list, samples, &scale(codata))?;
    let mut outcome = Outcome::new(Table::new(["n", "alphaw_ev", "energy_ev"]));
    for p in &points {
        outcome.table.push(vec![Cell::Int(i64::from(p.n)), Cell::Fixed(p.alpha_w_ev), Cell::Fixed(p.energy_ev)]);
    }
    Ok(outcome)
}

pub fn oracle(
    model: ModelKind,
    n: u32,
    alpha: f64,
    grid_points: usize,
    order: usize,
    tolerance: f64,
) -> Result<Outcome, CliError> {
    if model == ModelKind::Hydrogen {
        return Err(CliError::Usage("the oracle discretizes only the well and the oscillator".into()));
    }
    let grid = Grid1D::for_model(model, grid_points)?;
    let report = oracle::oracle_compare(model, n, alpha, &grid, order)?;
    let unit = match model {
        ModelKind::Well => "el",
        _ => "ew",
    };
    let energy = |name: &str| format!("{name}_{unit}");
    let mut table = Table::new([
        "model".to_string(),
        "n".into(),
        "alpha".into(),
        "grid".into(),
        "order".into(),
        energy("e0_analytic"),
        energy("e0_discrete"),
        energy("series"),
        energy("closed_form"),
        energy("oracle"),
        "dev_oracle_closed".into(),
        "dev_oracle_series".into(),
        "dev_series_closed".into(),
        "status".into(),
    ]);
    let passed = report.passes(tolerance);
    table.push(vec![
        Cell::Text(model.name().into()),
        Cell::Int(i64::from(n)),
        Cell::Fixed(alpha),
        Cell::Int(grid_points as i64),
        Cell::Int(order as i64),
        Cell::Fixed(report.e0_analytic),
        Cell::Fixed(report.e0_discrete),
        Cell::Fixed(report.series),
        Cell::Fixed(report.closed_form),
        Cell::Fixed(report.oracle),
        Cell::Sci(report.dev_oracle_closed),
        Cell::Sci(report.dev_oracle_series),
        Cell::Sci(report.dev_series_closed),
        Cell::Text(if passed { "PASS" } else { "FAIL" }.into()),
    ]);
    let mut outcome = Outcome::new(table);
    if report.grid_warning {
        outcome.warnings.push(format!(
            "grid too coarse: discrete E0 = {} deviates from {} by more than {}%",
            report.e0_discrete,
            report.e0_analytic,
            oracle::GRID_WARNING_THRESHOLD * 100.0
        ));
    }
    if report.at_boundary {
        outcome.warnings.push(format!(
            "alpha = {alpha} is on the convergence radius; the order-{order} series is reported but not held to the tolerance"
        ));
    }
    if !passed {
        outcome.tolerance_failure = Some(format!(
            "oracle deviates from closed form by {:.3e} and from the series by {:.3e} (tolerance {tolerance:e})",
            report.dev_oracle_closed, report.dev_oracle_series
        ));
    }
    Ok(outcome)
}

pub fn series_table(e0: f64, w: f64, alpha: f64, max_order: usize) -> Result<Outcome, CliError> {
    if w < 0.0 {
        return Err(CliError::Usage("--w is a modulus and must be non-negative".into()));
    }
    let spec = PerturbationSpec::with_modulus(e0, w, alpha)?;
    let eval = series::perturbed_energy(&spec, max_order)?;
    let closed = eval.limit_estimate;
    let mut outcome = Outcome::new(Table::new([
        "s",
        "E_s",
        "term",
        "partial_sum",
        "closed_form",
        "in_radius",
        "normalized",
    ]));
    if !eval.in_radius {
        outcome.warnings.push(format!(
            "|alpha W| = {} exceeds |E0| = {}; the series diverges",
            spec.coupling(),
            e0.abs()
        ));
    } else if eval.at_boundary {
        outcome.warnings.push("|alpha W| = |E0|: on the convergence radius".into());
    }
    for s in 1..=max_order {
        let coefficient = series::correction_coefficient_closed(&spec, s)?;
        let normalized = if s % 2 == 0 && w > 0.0 {
            let t = (s / 2) as i32;
            f64::from(t) * coefficient * (2.0 * e0 / w).powi(2 * t - 1) / w
        } else {
            0.0
        };
        outcome.table.push(vec![
            Cell::Int(s as i64),
            Cell::Sci(coefficient),
            Cell::Sci(eval.terms[s - 1]),
            Cell::Fixed(eval.partial_sums[s - 1]),
            closed.map_or(Cell::Empty, Cell::Fixed),
            Cell::Bool(eval.in_radius),
            Cell::Fixed(normalized),
        ]);
    }
    Ok(outcome)
}
