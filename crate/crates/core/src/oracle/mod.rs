//! Non-perturbative check of the series.
//!
//! The 1D Hamiltonian `H = -d^2/dx^2 + V(x)` (units `hbar^2/2m = 1`) is
//! discretized with the three-point stencil and Dirichlet walls. The
//! quaternionic operator `i H + j alpha W` acting on `phi + j psi` is carried
//! by the complex Hermitian matrix
//!
//! ```text
//! B = [ H              i alpha conj(W) ]
//!     [ -i alpha W     -H              ]
//! ```
//!
//! whose eigenvalues come in pairs `+-sqrt(E0^2 + alpha^2 |W|^2)`, one pair per
//! level of `H`. The eigenvalues are computed by a general Hermitian solver,
//! not from that formula.

pub mod eigen;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::models::{model_w, unperturbed_energy, LevelSpec, ModelKind};
use crate::series::{self, PerturbationSpec};

pub use eigen::{ComplexMatrix, HermitianBand, HermitianEigen};

/// Largest embedded dimension `2N` the oracle accepts.
pub const MAX_DENSE_DIM: usize = 4096;

/// Relative agreement required between oracle, series and closed form.
pub const ORACLE_TOLERANCE: f64 = 1e-4;

/// Discrete `E0` deviating from the analytic level by more than this
/// (relative) triggers a resolution warning.
pub const GRID_WARNING_THRESHOLD: f64 = 5e-3;

/// Half-width of the oscillator box. Levels up to `n = 6` move by less than
/// `1e-8` when it is doubled.
pub const OSCILLATOR_HALF_WIDTH: f64 = 10.0;

/// Uniform grid of `points` interior nodes strictly between the walls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    points: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(Error::InvalidGrid(format!("bounds [{x_min}, {x_max}]")));
        }
        if points < 3 {
            return Err(Error::InvalidGrid(format!("{points} interior points (need >= 3)")));
        }
        Ok(Grid1D { x_min, x_max, points })
    }

    /// Unit-width well `[0, 1]` or the symmetric oscillator box.
    pub fn for_model(model: ModelKind, points: usize) -> Result<Self> {
        match model {
            ModelKind::Well => Self::new(0.0, 1.0, points),
            ModelKind::Oscillator => Self::new(-OSCILLATOR_HALF_WIDTH, OSCILLATOR_HALF_WIDTH, points),
            ModelKind::Hydrogen => Err(Error::UnsupportedModel(model)),
        }
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.points + 1) as f64
    }

    /// Position of interior node `i` (0-based).
    pub fn node(&self, i: usize) -> f64 {
        self.x_min + (i + 1) as f64 * self.spacing()
    }

    /// Same box with the spacing halved.
    pub fn refined(&self) -> Self {
        Grid1D { points: 2 * self.points + 1, ..*self }
    }
}

/// Real symmetric tridiagonal Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteHamiltonian {
    diagonal: Vec<f64>,
    off_diagonal: Vec<f64>,
    grid: Option<Grid1D>,
}

impl DiscreteHamiltonian {
    /// Arbitrary tridiagonal matrix, e.g. a one-level toy `[E0]`.
    pub fn from_tridiagonal(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() || off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::InvalidGrid(format!(
                "tridiagonal shape {} / {}",
                diagonal.len(),
                off_diagonal.len()
            )));
        }
        if diagonal.iter().chain(&off_diagonal).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("hamiltonian entry"));
        }
        Ok(DiscreteHamiltonian { diagonal, off_diagonal, grid: None })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> &[f64] {
        &self.off_diagonal
    }

    pub fn grid(&self) -> Option<&Grid1D> {
        self.grid.as_ref()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        match i.abs_diff(j) {
            0 => self.diagonal[i],
            1 => self.off_diagonal[i.min(j)],
            _ => 0.0,
        }
    }

    pub fn is_diagonally_dominant(&self) -> bool {
        (0..self.dim()).all(|i| {
            let left = if i > 0 { self.off_diagonal[i - 1].abs() } else { 0.0 };
            let right = self.off_diagonal.get(i).map_or(0.0, |v| v.abs());
            self.diagonal[i] >= left + right
        })
    }

    /// Ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eigen::symmetric_tridiagonal_eigenvalues(&self.diagonal, &self.off_diagonal)
    }
}

/// Energy unit of the discretized model: `E_L = pi^2 / L^2` for the well,
/// `E_w = 1` for the oscillator `V = x^2 / 4`.
pub fn model_unit(model: ModelKind, grid: &Grid1D) -> Result<f64> {
    match model {
        ModelKind::Well => {
            let width = grid.x_max - grid.x_min;
            Ok(PI * PI / (width * width))
        }
        ModelKind::Oscillator => Ok(1.0),
        ModelKind::Hydrogen => Err(Error::UnsupportedModel(model)),
    }
}

/// Three-point finite-difference `H` for the well (`V = 0`) or the
/// oscillator (`V = x^2 / 4`, so that `hbar omega = 1`).
pub fn discretize(model: ModelKind, grid: &Grid1D) -> Result<DiscreteHamiltonian> {
    let potential: fn(f64) -> f64 = match model {
        ModelKind::Well => |_| 0.0,
        ModelKind::Oscillator => |x| 0.25 * x * x,
        ModelKind::Hydrogen => return Err(Error::UnsupportedModel(model)),
    };
    let h = grid.spacing();
    let kinetic = 1.0 / (h * h);
    let diagonal = (0..grid.points).map(|i| 2.0 * kinetic + potential(grid.node(i))).collect();
    let off_diagonal = vec![-kinetic; grid.points - 1];
    Ok(DiscreteHamiltonian { diagonal, off_diagonal, grid: Some(*grid) })
}

/// `B = [[H, i alpha conj(W) I], [-i alpha W I, -H]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedOperator {
    hamiltonian: DiscreteHamiltonian,
    // alpha W
    coupling: Complex64,
}

pub fn embed(hamiltonian: &DiscreteHamiltonian, alpha: f64, w: Complex64) -> EmbeddedOperator {
    EmbeddedOperator { hamiltonian: hamiltonian.clone(), coupling: alpha * w }
}

impl EmbeddedOperator {
    pub fn dim(&self) -> usize {
        2 * self.hamiltonian.dim()
    }

    pub fn hamiltonian(&self) -> &DiscreteHamiltonian {
        &self.hamiltonian
    }

    /// `alpha W`.
    pub fn coupling(&self) -> Complex64 {
        self.coupling
    }

    /// Entry of `B` in block ordering (`phi` components first).
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        let n = self.hamiltonian.dim();
        let (bi, ri) = (i / n, i % n);
        let (bj, rj) = (j / n, j % n);
        match (bi, bj) {
            (0, 0) => Complex64::new(self.hamiltonian.entry(ri, rj), 0.0),
            (1, 1) => Complex64::new(-self.hamiltonian.entry(ri, rj), 0.0),
            (0, 1) if ri == rj => Complex64::i() * self.coupling.conj(),
            (1, 0) if ri == rj => -Complex64::i() * self.coupling,
            _ => Complex64::new(0.0, 0.0),
        }
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim(), |i, j| self.entry(i, j))
    }

    /// `B` permuted to the interleaved ordering `(phi_0, psi_0, phi_1, ...)`,
    /// which has half-bandwidth 2.
    pub fn to_band(&self) -> HermitianBand {
        let n = self.hamiltonian.dim();
        let mut band = HermitianBand::zeros(2 * n, 2);
        let cross = -Complex64::i() * self.coupling;
        for i in 0..n {
            let d = self.hamiltonian.diagonal[i];
            band.set(2 * i, 2 * i, Complex64::new(d, 0.0));
            band.set(2 * i + 1, 2 * i + 1, Complex64::new(-d, 0.0));
            band.set(2 * i + 1, 2 * i, cross);
            if i + 1 < n {
                let o = self.hamiltonian.off_diagonal[i];
                band.set(2 * i + 2, 2 * i, Complex64::new(o, 0.0));
                band.set(2 * i + 3, 2 * i + 1, Complex64::new(-o, 0.0));
            }
        }
        band
    }

    fn check_size(&self) -> Result<()> {
        if self.dim() > MAX_DENSE_DIM {
            Err(Error::TooLarge { dim: self.dim(), limit: MAX_DENSE_DIM })
        } else {
            Ok(())
        }
    }

    /// All eigenvalues of `B`, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        self.check_size()?;
        self.to_band().eigenvalues()
    }

    /// Eigenvalues and eigenvectors from the dense solver (block ordering).
    pub fn eigen(&self) -> Result<HermitianEigen> {
        self.check_size()?;
        eigen::hermitian_eigen(&self.to_dense())
    }
}

/// The eigenvalue of `B` continuing level `level_index` of `H`, given both
/// spectra sorted ascending.
///
/// Along `alpha` each pair `+-mu_k` of the unperturbed spectrum moves to
/// `+-sqrt(mu_k^2 + |alpha W|^2)` without crossing others, so the level with
/// the `r`-th smallest `|mu|` maps to the `r`-th eigenvalue of `B` counted
/// outwards from zero, on the side of `sgn(mu)`.
pub fn matched_branch(unperturbed: &[f64], embedded: &[f64], level_index: usize) -> Option<f64> {
    let n = unperturbed.len();
    if embedded.len() != 2 * n || level_index >= n {
        return None;
    }
    let mu = unperturbed[level_index];
    let rank = unperturbed
        .iter()
        .enumerate()
        .filter(|&(k, v)| v.abs() < mu.abs() || (v.abs() == mu.abs() && k < level_index))
        .count();
    Some(if mu >= 0.0 { embedded[n + rank] } else { embedded[n - 1 - rank] })
}

/// `k` eigenvalues of `B`, ascending.
///
/// With a `reference`, the `k` eigenvalues nearest to it. Without one, the
/// branches continuing the `k` lowest levels of `H`.
pub fn spectrum(op: &EmbeddedOperator, k: usize, reference: Option<f64>) -> Result<Vec<f64>> {
    let dim = op.dim();
    if k > dim {
        return Err(Error::TooManyEigenvalues { requested: k, dim });
    }
    let all = op.eigenvalues()?;
    let mut picked = match reference {
        Some(r) => {
            let mut by_distance = all.clone();
            by_distance.sort_by(|a, b| (a - r).abs().total_cmp(&(b - r).abs()));
            by_distance.truncate(k);
            by_distance
        }
        None => {
            if k > dim / 2 {
                return Err(Error::TooManyEigenvalues { requested: k, dim: dim / 2 });
            }
            let levels = op.hamiltonian.eigenvalues()?;
            (0..k)
                .map(|i| matched_branch(&levels, &all, i).expect("shapes agree"))
                .collect()
        }
    };
    picked.sort_by(f64::total_cmp);
    Ok(picked)
}

/// Comparison of oracle, truncated series and closed form for one level.
/// Energies in the model unit.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub model: ModelKind,
    pub n: u32,
    pub alpha: f64,
    pub grid_points: usize,
    /// Series order (through `alpha^(2 order)`).
    pub order: usize,
    pub e0_analytic: f64,
    pub e0_discrete: f64,
    pub series: f64,
    pub closed_form: f64,
    pub oracle: f64,
    pub dev_oracle_closed: f64,
    pub dev_oracle_series: f64,
    pub dev_series_closed: f64,
    /// `|oracle - sgn(E0) sqrt(E0_discrete^2 + (alpha W)^2)|` relative; only
    /// eigensolver error remains in it.
    pub dev_oracle_discrete: f64,
    pub grid_warning: bool,
    /// `|alpha W| = |E0|`: the series converges like `order^(-3/2)` there.
    pub at_boundary: bool,
}

impl OracleReport {
    /// Oracle within `tolerance` of the closed form and, strictly inside the
    /// radius, of the truncated series.
    pub fn passes(&self, tolerance: f64) -> bool {
        self.dev_oracle_closed <= tolerance && (self.at_boundary || self.dev_oracle_series <= tolerance)
    }
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

pub fn oracle_compare(
    model: ModelKind,
    n: u32,
    alpha: f64,
    grid: &Grid1D,
    order: usize,
) -> Result<OracleReport> {
    if model == ModelKind::Hydrogen {
        return Err(Error::UnsupportedModel(model));
    }
    if order == 0 {
        return Err(Error::InvalidOrder { order, min: 1 });
    }
    let level = LevelSpec::new(model, n)?;
    let spec: PerturbationSpec = level.perturbation(alpha)?;
    if !series::is_convergent(&spec) {
        return Err(Error::LevelOutsideRadius {
            level: n,
            alpha,
            bound: crate::models::alpha_max(model, n)?,
        });
    }
    let index = (n - model.min_n()) as usize;
    if index >= grid.points() {
        return Err(Error::InvalidGrid(format!("level {n} needs more than {} points", grid.points())));
    }

    let unit = model_unit(model, grid)?;
    let hamiltonian = discretize(model, grid)?;
    let w = Complex64::new(model_w(model) * unit, 0.0);
    let op = embed(&hamiltonian, alpha, w);
    let embedded = op.eigenvalues()?;
    let levels = hamiltonian.eigenvalues()?;
    let oracle = matched_branch(&levels, &embedded, index).expect("shapes agree") / unit;

    let e0_analytic = unperturbed_energy(&level);
    let e0_discrete = levels[index] / unit;
    let closed_form = series::closed_form_limit(&spec)?;
    let series_value = series::perturbed_energy(&spec, 2 * order)?.value();
    let discrete_closed = series::resummed_energy(e0_discrete, spec.coupling());

    Ok(OracleReport {
        model,
        n,
        alpha,
        grid_points: grid.points(),
        order,
        e0_analytic,
        e0_discrete,
        series: series_value,
        closed_form,
        oracle,
        dev_oracle_closed: relative(oracle, closed_form),
        dev_oracle_series: relative(oracle, series_value),
        dev_series_closed: relative(series_value, closed_form),
        dev_oracle_discrete: relative(oracle, discrete_closed),
        grid_warning: relative(e0_discrete, e0_analytic) > GRID_WARNING_THRESHOLD,
        at_boundary: series::is_on_boundary(&spec),
    })
}
