//! Energy corrections for a constant pure-quaternionic perturbation `j alpha W`.
//!
//! For an unperturbed level `E` the perturbed right eigenvalue expands as
//! `E + sum_s alpha^s E_s`. Odd orders vanish identically and the even
//! orders obey the convolution recurrence
//!
//! ```text
//! E_2          = |W|^2 / 2E
//! 2E * E_{2s}  = -sum_{t=1}^{s-1} E_{2t} E_{2(s-t)}
//! ```
//!
//! whose solution is `E_{2t} = (-1)^{t+1} binom(2t-2, t-1) / t * |W|^{2t} / (2E)^{2t-1}`.
//! The coefficients `(2/t) binom(2t-2, t-1)` are twice the Catalan numbers, so
//! inside the radius `|alpha W| <= |E|` the series sums to
//! `sgn(E) sqrt(E^2 + (alpha |W|)^2)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default number of alpha powers kept by [`perturbed_energy`].
pub const DEFAULT_MAX_ORDER: usize = 100;

/// Relative slack used when classifying `|alpha W| = |E|`.
pub const BOUNDARY_RTOL: f64 = 1e-12;

/// Unperturbed level `E`, quaternionic amplitude `W` and strength `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationSpec {
    energy: f64,
    amplitude: Complex64,
    alpha: f64,
}

impl PerturbationSpec {
    pub fn new(energy: f64, amplitude: Complex64, alpha: f64) -> Result<Self> {
        if !energy.is_finite() {
            return Err(Error::NonFinite("energy"));
        }
        if !(amplitude.re.is_finite() && amplitude.im.is_finite()) {
            return Err(Error::NonFinite("amplitude"));
        }
        if !alpha.is_finite() {
            return Err(Error::NonFinite("alpha"));
        }
        if energy == 0.0 {
            return Err(Error::ZeroEnergy);
        }
        Ok(PerturbationSpec { energy, amplitude, alpha })
    }

    /// Spec with a real, non-negative amplitude `|W|`.
    pub fn with_modulus(energy: f64, w_modulus: f64, alpha: f64) -> Result<Self> {
        Self::new(energy, Complex64::new(w_modulus.abs(), 0.0), alpha)
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn amplitude(&self) -> Complex64 {
        self.amplitude
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn w_modulus(&self) -> f64 {
        self.amplitude.norm()
    }

    /// `|alpha W|`.
    pub fn coupling(&self) -> f64 {
        self.alpha.abs() * self.w_modulus()
    }

    pub fn with_alpha(self, alpha: f64) -> Result<Self> {
        Self::new(self.energy, self.amplitude, alpha)
    }

    /// `(alpha |W| / 2E)^2`, the variable the even-order series is a power
    /// series in.
    fn expansion_variable(&self) -> f64 {
        let x = self.coupling() / (2.0 * self.energy);
        x * x
    }
}

/// Exact binomial coefficient, or `None` once `u128` overflows.
pub fn binomial(n: u32, k: u32) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

pub(crate) fn binomial_f64(n: u32, k: u32) -> f64 {
    match binomial(n, k) {
        Some(b) => b as f64,
        None => {
            let k = k.min(n - k);
            (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
        }
    }
}

/// `t (2E)^{2t-1} E_{2t} / |W|^{2t}` from the closed formula:
/// `(-1)^{t+1} binom(2t-2, t-1)`.
///
/// Panics for `t == 0` or when the value does not fit in `i128`.
pub fn normalized_coefficient(t: u32) -> i128 {
    assert!(t >= 1, "normalized coefficients start at t = 1");
    let magnitude = binomial(2 * t - 2, t - 1)
        .and_then(|b| i128::try_from(b).ok())
        .expect("binomial overflows i128");
    if t % 2 == 1 {
        magnitude
    } else {
        -magnitude
    }
}

/// The same normalized coefficients derived from the convolution recurrence
/// in integer arithmetic only.
///
/// With `b_t = a_t / t` the recurrence becomes `b_1 = 1`,
/// `b_s = -sum_{t=1}^{s-1} b_t b_{s-t}`, which never leaves the integers.
pub fn normalized_coefficients_by_recurrence(count: usize) -> Vec<i128> {
    let mut b: Vec<i128> = Vec::with_capacity(count);
    for s in 1..=count {
        let next = if s == 1 {
            1
        } else {
            let conv = (1..s)
                .map(|t| b[t - 1].checked_mul(b[s - t - 1]).expect("overflow"))
                .try_fold(0i128, |acc, v| acc.checked_add(v))
                .expect("overflow");
            -conv
        };
        b.push(next);
    }
    b.iter()
        .enumerate()
        .map(|(i, v)| v * (i as i128 + 1))
        .collect()
}

fn check_order(s: usize) -> Result<()> {
    if s == 0 {
        Err(Error::InvalidOrder { order: s, min: 1 })
    } else {
        Ok(())
    }
}

/// `E_s`, the coefficient of `alpha^s`, from the closed formula.
pub fn correction_coefficient_closed(spec: &PerturbationSpec, s: usize) -> Result<f64> {
    check_order(s)?;
    if s % 2 == 1 {
        return Ok(0.0);
    }
    let t = (s / 2) as u32;
    let e = spec.energy;
    let ratio = spec.w_modulus() / (2.0 * e);
    let magnitude = binomial_f64(2 * t - 2, t - 1) / f64::from(t);
    let sign = if t % 2 == 1 { 1.0 } else { -1.0 };
    // |W|^{2t} / (2E)^{2t-1} = 2E (|W| / 2E)^{2t}
    Ok(sign * magnitude * 2.0 * e * ratio.powi(2 * t as i32))
}

/// Order-by-order evaluation of the convolution recurrence, memoizing the
/// even coefficients already computed. One instance per spec; not shared.
#[derive(Debug, Clone)]
pub struct CorrectionRecurrence {
    energy: f64,
    // even[t - 1] = E_{2t}
    even: Vec<f64>,
}

impl CorrectionRecurrence {
    pub fn new(spec: &PerturbationSpec) -> Self {
        let w2 = spec.w_modulus() * spec.w_modulus();
        CorrectionRecurrence {
            energy: spec.energy,
            even: vec![w2 / (2.0 * spec.energy)],
        }
    }

    pub fn coefficient(&mut self, s: usize) -> Result<f64> {
        check_order(s)?;
        if s % 2 == 1 {
            return Ok(0.0);
        }
        let t = s / 2;
        while self.even.len() < t {
            let next = self.even.len() + 1;
            let conv: f64 = (1..next)
                .map(|u| self.even[u - 1] * self.even[next - u - 1])
                .sum();
            self.even.push(-conv / (2.0 * self.energy));
        }
        Ok(self.even[t - 1])
    }
}

/// `E_s` from the recurrence `2E E_{2s} = -sum E_{2t} E_{2(s-t)}`.
pub fn correction_coefficient_recurrence(spec: &PerturbationSpec, s: usize) -> Result<f64> {
    CorrectionRecurrence::new(spec).coefficient(s)
}

/// `|alpha W| <= |E|`, boundary inclusive.
pub fn is_convergent(spec: &PerturbationSpec) -> bool {
    spec.coupling() <= spec.energy.abs() * (1.0 + BOUNDARY_RTOL)
}

/// True when `|alpha W|` sits on the radius, where the alternating terms no
/// longer decay strictly.
pub fn is_on_boundary(spec: &PerturbationSpec) -> bool {
    let e = spec.energy.abs();
    (spec.coupling() - e).abs() <= e * BOUNDARY_RTOL
}

/// `sgn(E) sqrt(E^2 + (alpha |W|)^2)`, the resummed series.
pub fn closed_form_limit(spec: &PerturbationSpec) -> Result<f64> {
    if !is_convergent(spec) {
        return Err(Error::OutsideRadius {
            coupling: spec.coupling(),
            energy: spec.energy.abs(),
        });
    }
    Ok(resummed_energy(spec.energy, spec.coupling()))
}

pub(crate) fn resummed_energy(energy: f64, coupling: f64) -> f64 {
    energy.signum() * energy.hypot(coupling)
}

/// Truncated series with its convergence verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesEvaluation {
    /// Unperturbed level.
    pub energy: f64,
    /// `terms[k] = alpha^(k+1) E_(k+1)`.
    pub terms: Vec<f64>,
    /// `partial_sums[k] = E + terms[0] + ... + terms[k]`.
    pub partial_sums: Vec<f64>,
    pub in_radius: bool,
    /// Set when `|alpha W| = |E|`; the series still converges there, slowly.
    pub at_boundary: bool,
    /// Closed-form limit when the series converges.
    pub limit_estimate: Option<f64>,
}

impl SeriesEvaluation {
    pub fn max_order(&self) -> usize {
        self.terms.len()
    }

    /// Partial sum through the highest requested order.
    pub fn value(&self) -> f64 {
        *self.partial_sums.last().expect("max_order >= 2")
    }

    /// Partial sum through `alpha^order`; `order = 0` gives `E`.
    pub fn partial_sum(&self, order: usize) -> Option<f64> {
        match order {
            0 => Some(self.energy),
            k => self.partial_sums.get(k - 1).copied(),
        }
    }

    /// Order `s` from which the magnitudes of the non-zero (even) terms grow
    /// monotonically up to the end of the evaluation, if they do.
    pub fn divergence_witness(&self) -> Option<usize> {
        let even: Vec<(usize, f64)> = self
            .terms
            .iter()
            .enumerate()
            .skip(1)
            .step_by(2)
            .map(|(k, t)| (k + 1, t.abs()))
            .collect();
        if even.len() < 2 {
            return None;
        }
        let mut start = None;
        for pair in even.windows(2).rev() {
            if pair[1].1 > pair[0].1 {
                start = Some(pair[0].0);
            } else {
                break;
            }
        }
        start
    }
}

/// Partial sums of `E [1 + sum_s (-1)^(s+1) (2/s) binom(2s-2, s-1) (alpha|W|/2E)^(2s)]`
/// through `alpha^max_order`.
///
/// Divergent specs are evaluated anyway; `in_radius` records the verdict.
pub fn perturbed_energy(spec: &PerturbationSpec, max_order: usize) -> Result<SeriesEvaluation> {
    if max_order < 2 {
        return Err(Error::InvalidOrder { order: max_order, min: 2 });
    }
    let e = spec.energy;
    let y = spec.expansion_variable();
    let mut terms = vec![0.0; max_order];
    // even term t (alpha power 2t) is E (-1)^(t+1) 2 Catalan(t-1) y^t
    let mut term = 2.0 * e * y;
    for t in 1..=max_order / 2 {
        terms[2 * t - 1] = term;
        let tf = t as f64;
        term *= -2.0 * (2.0 * tf - 1.0) / (tf + 1.0) * y;
    }
    let partial_sums = terms
        .iter()
        .scan(e, |acc, t| {
            *acc += t;
            Some(*acc)
        })
        .collect();
    let in_radius = is_convergent(spec);
    Ok(SeriesEvaluation {
        energy: e,
        terms,
        partial_sums,
        in_radius,
        at_boundary: is_on_boundary(spec),
        limit_estimate: in_radius.then(|| resummed_energy(e, spec.coupling())),
    })
}
