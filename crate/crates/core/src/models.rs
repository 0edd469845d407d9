//! Hydrogen, infinite well and harmonic oscillator in their natural units.
//!
//! | model      | unit | `E0(n)`    | `|W|` | level bound `alpha_max` |
//! |------------|------|------------|-------|-------------------------|
//! | hydrogen   | R_y  | `-1/n^2`   | 2     | `1/(2 n^2)`             |
//! | well       | E_L  | `n^2`      | 2     | `n^2 / 2`               |
//! | oscillator | E_w  | `n + 1/2`  | 1     | `n + 1/2`               |
//!
//! The unperturbed gap `lambda(n) = E0(n+1) - E0(n)`, the perturbed gap
//! `Lambda(n, alpha)` is the same difference of truncated series, and
//! `sigma = Lambda / lambda`.
//!
//! "Order `s`" in this module means the series is kept through
//! `alpha^(2s)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::{self, binomial_f64, PerturbationSpec, SeriesEvaluation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Hydrogen,
    Well,
    Oscillator,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::Hydrogen, ModelKind::Well, ModelKind::Oscillator];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Hydrogen => "hydrogen",
            ModelKind::Well => "well",
            ModelKind::Oscillator => "oscillator",
        }
    }

    /// Symbol of the energy scale results are expressed in.
    pub fn unit(self) -> &'static str {
        match self {
            ModelKind::Hydrogen => "R_y",
            ModelKind::Well => "E_L",
            ModelKind::Oscillator => "E_w",
        }
    }

    /// Lowest admissible quantum number.
    pub fn min_n(self) -> u32 {
        match self {
            ModelKind::Hydrogen | ModelKind::Well => 1,
            ModelKind::Oscillator => 0,
        }
    }

    /// `|W|` in the model unit.
    pub fn w_modulus(self) -> f64 {
        match self {
            ModelKind::Hydrogen | ModelKind::Well => 2.0,
            ModelKind::Oscillator => 1.0,
        }
    }

    fn check_n(self, n: u32) -> Result<()> {
        if n < self.min_n() {
            Err(Error::InvalidQuantumNumber { model: self, n })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hydrogen" => Ok(ModelKind::Hydrogen),
            "well" => Ok(ModelKind::Well),
            "oscillator" => Ok(ModelKind::Oscillator),
            other => Err(format!("unknown model '{other}'")),
        }
    }
}

/// A single bound level of one of the models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelSpec {
    model: ModelKind,
    n: u32,
}

impl LevelSpec {
    pub fn new(model: ModelKind, n: u32) -> Result<Self> {
        model.check_n(n)?;
        Ok(LevelSpec { model, n })
    }

    pub fn model(&self) -> ModelKind {
        self.model
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn energy_unit(&self) -> &'static str {
        self.model.unit()
    }

    pub fn next(&self) -> LevelSpec {
        LevelSpec { model: self.model, n: self.n + 1 }
    }

    /// Perturbation spec with this level as `E` and the model's `|W|`.
    pub fn perturbation(&self, alpha: f64) -> Result<PerturbationSpec> {
        PerturbationSpec::with_modulus(unperturbed_energy(self), model_w(self.model), alpha)
    }

    fn check_radius(&self, alpha: f64) -> Result<PerturbationSpec> {
        let spec = self.perturbation(alpha)?;
        if series::is_convergent(&spec) {
            Ok(spec)
        } else {
            Err(Error::LevelOutsideRadius {
                level: self.n,
                alpha,
                bound: level_bound(self.model, self.n),
            })
        }
    }
}

/// `E0(n)` in the model unit.
pub fn unperturbed_energy(level: &LevelSpec) -> f64 {
    let n = f64::from(level.n);
    match level.model {
        ModelKind::Hydrogen => -1.0 / (n * n),
        ModelKind::Well => n * n,
        ModelKind::Oscillator => n + 0.5,
    }
}

/// `|W|` in the model unit: `2 R_y`, `2 E_L`, `E_w`.
pub fn model_w(model: ModelKind) -> f64 {
    model.w_modulus()
}

/// `lambda(n)`: `(2n+1)/(n^2 (n+1)^2)`, `2n + 1` or `1`.
pub fn gap_lambda(model: ModelKind, n: u32) -> Result<f64> {
    model.check_n(n)?;
    let nf = f64::from(n);
    Ok(match model {
        ModelKind::Hydrogen => (2.0 * nf + 1.0) / (nf * nf * (nf + 1.0) * (nf + 1.0)),
        ModelKind::Well => 2.0 * nf + 1.0,
        ModelKind::Oscillator => 1.0,
    })
}

fn level_bound(model: ModelKind, n: u32) -> f64 {
    let nf = f64::from(n);
    match model {
        ModelKind::Hydrogen => 1.0 / (2.0 * nf * nf),
        ModelKind::Well => nf * nf / 2.0,
        ModelKind::Oscillator => nf + 0.5,
    }
}

/// Largest `|alpha|` for which the series of level `n` converges.
pub fn alpha_max(model: ModelKind, n: u32) -> Result<f64> {
    model.check_n(n)?;
    Ok(level_bound(model, n))
}

/// Largest `|alpha|` for which both levels `n` and `n + 1` converge:
/// `1/(2 (n+1)^2)` for hydrogen, the level-`n` bound otherwise.
pub fn gap_alpha_max(model: ModelKind, n: u32) -> Result<f64> {
    model.check_n(n)?;
    Ok(level_bound(model, n).min(level_bound(model, n + 1)))
}

/// Partial sum of the level's series through `alpha^(2 order)`.
pub fn perturbed_level(level: &LevelSpec, alpha: f64, order: usize) -> Result<f64> {
    Ok(level_series(level, alpha, order)?.value())
}

fn level_series(level: &LevelSpec, alpha: f64, order: usize) -> Result<SeriesEvaluation> {
    if order == 0 {
        return Err(Error::InvalidOrder { order, min: 1 });
    }
    let spec = level.check_radius(alpha)?;
    series::perturbed_energy(&spec, 2 * order)
}

/// Checks both levels of the gap, binding (smaller-bound) level first.
fn check_gap_radius(model: ModelKind, n: u32, alpha: f64) -> Result<(LevelSpec, LevelSpec)> {
    let lower = LevelSpec::new(model, n)?;
    let upper = lower.next();
    let (first, second) = if level_bound(model, n + 1) < level_bound(model, n) {
        (upper, lower)
    } else {
        (lower, upper)
    };
    first.check_radius(alpha)?;
    second.check_radius(alpha)?;
    Ok((lower, upper))
}

/// `Lambda(n, alpha)` truncated at `order`.
pub fn perturbed_gap(model: ModelKind, n: u32, alpha: f64, order: usize) -> Result<f64> {
    let (lower, upper) = check_gap_radius(model, n, alpha)?;
    Ok(perturbed_level(&upper, alpha, order)? - perturbed_level(&lower, alpha, order)?)
}

/// `Lambda / lambda` from two truncated level series, as
/// `1 + (shift(n+1) - shift(n)) / lambda` so that `alpha = 0` gives exactly 1.
pub fn sigma_ratio(model: ModelKind, n: u32, alpha: f64, order: usize) -> Result<f64> {
    let (lower, upper) = check_gap_radius(model, n, alpha)?;
    let lo = level_series(&lower, alpha, order)?;
    let hi = level_series(&upper, alpha, order)?;
    Ok(sigma_from_shifts(&lo, &hi, 2 * order, gap_lambda(model, n)?))
}

fn sigma_from_shifts(lo: &SeriesEvaluation, hi: &SeriesEvaluation, max_order: usize, lambda: f64) -> f64 {
    let shift = |e: &SeriesEvaluation| e.partial_sum(max_order).expect("order evaluated") - e.energy;
    1.0 + (shift(hi) - shift(lo)) / lambda
}

/// `sum_{s=1}^{order} (-1)^(s+1) (2/s) binom(2s-2, s-1) z^(2s)`
fn catalan_sum(z: f64, order: usize) -> f64 {
    (1..=order as u32)
        .map(|s| {
            let sign = if s % 2 == 1 { 1.0 } else { -1.0 };
            sign * 2.0 * binomial_f64(2 * s - 2, s - 1) / f64::from(s) * z.powi(2 * s as i32)
        })
        .sum()
}

/// The per-model sigma series written directly in `alpha`, independent of
/// [`perturbed_level`]:
///
/// ```text
/// hydrogen   1 + n^2 (n+1)^2/(2n+1) sum (-1)^s     c_s [(n+1)^(4s-2) - n^(4s-2)] alpha^(2s)
/// well       1 + 1/(2n+1)           sum (-1)^(s+1) c_s [(n+1)^(2-4s) - n^(2-4s)] alpha^(2s)
/// oscillator 1 +                    sum (-1)^(s+1) c_s/2 [(2n+3)^(1-2s) - (2n+1)^(1-2s)] alpha^(2s)
/// ```
///
/// with `c_s = (2/s) binom(2s-2, s-1)`. No radius check is applied.
pub fn sigma_ratio_explicit(model: ModelKind, n: u32, alpha: f64, order: usize) -> Result<f64> {
    if order == 0 {
        return Err(Error::InvalidOrder { order, min: 1 });
    }
    let lambda = gap_lambda(model, n)?;
    let a = f64::from(n);
    let b = a + 1.0;
    Ok(match model {
        ModelKind::Hydrogen => {
            // (n+1)^(4s-2) alpha^(2s) = ((n+1)^2 alpha)^(2s) / (n+1)^2
            let upper = catalan_sum(b * b * alpha, order) / (b * b);
            let lower = catalan_sum(a * a * alpha, order) / (a * a);
            1.0 - (upper - lower) / lambda
        }
        ModelKind::Well => {
            let upper = b * b * catalan_sum(alpha / (b * b), order);
            let lower = a * a * catalan_sum(alpha / (a * a), order);
            1.0 + (upper - lower) / (2.0 * a + 1.0)
        }
        ModelKind::Oscillator => {
            let (p, q) = (2.0 * a + 3.0, 2.0 * a + 1.0);
            1.0 + 0.5 * (p * catalan_sum(alpha / p, order) - q * catalan_sum(alpha / q, order))
        }
    })
}

/// `sigma` in the limit of infinite order, from the resummed levels.
pub fn sigma_limit(model: ModelKind, n: u32, alpha: f64) -> Result<f64> {
    let (lower, upper) = check_gap_radius(model, n, alpha)?;
    let hi = series::closed_form_limit(&upper.perturbation(alpha)?)?;
    let lo = series::closed_form_limit(&lower.perturbation(alpha)?)?;
    Ok((hi - lo) / gap_lambda(model, n)?)
}

/// Gap data for one `(model, n, alpha, order)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapResult {
    pub model: ModelKind,
    pub n: u32,
    pub alpha: f64,
    pub order: usize,
    /// Unperturbed gap.
    pub lambda: f64,
    /// Perturbed gap.
    pub lambda_perturbed: f64,
    pub sigma: f64,
}

pub fn spectral_gap(model: ModelKind, n: u32, alpha: f64, order: usize) -> Result<GapResult> {
    let lambda = gap_lambda(model, n)?;
    Ok(GapResult {
        model,
        n,
        alpha,
        order,
        lambda,
        lambda_perturbed: perturbed_gap(model, n, alpha, order)?,
        sigma: sigma_ratio(model, n, alpha, order)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaPoint {
    pub alpha: f64,
    pub order: usize,
    pub sigma: f64,
}

/// Sigma as a function of truncation order for several alphas.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SigmaCurve {
    /// One row per accepted `(alpha, order)`, alphas in input order.
    pub rows: Vec<SigmaPoint>,
    /// Alphas outside the gap radius, with the reason.
    pub rejected: Vec<(f64, Error)>,
    /// Accepted alphas lying on the gap radius.
    pub boundary: Vec<f64>,
}

pub fn sigma_curve(
    model: ModelKind,
    n: u32,
    alphas: &[f64],
    max_order: usize,
) -> Result<SigmaCurve> {
    if max_order == 0 {
        return Err(Error::InvalidOrder { order: max_order, min: 1 });
    }
    let lambda = gap_lambda(model, n)?;
    let mut curve = SigmaCurve::default();
    for &alpha in alphas {
        let (lower, upper) = match check_gap_radius(model, n, alpha) {
            Ok(levels) => levels,
            Err(err @ Error::LevelOutsideRadius { .. }) => {
                curve.rejected.push((alpha, err));
                continue;
            }
            Err(err) => return Err(err),
        };
        let lo = level_series(&lower, alpha, max_order)?;
        let hi = level_series(&upper, alpha, max_order)?;
        if lo.at_boundary || hi.at_boundary {
            curve.boundary.push(alpha);
        }
        for order in 1..=max_order {
            let sigma = sigma_from_shifts(&lo, &hi, 2 * order, lambda);
            curve.rows.push(SigmaPoint { alpha, order, sigma });
        }
    }
    Ok(curve)
}
