//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use quatpert::models::{self, alpha_max, sigma_curve, sigma_limit};
use quatpert::oracle::{self, discretize, embed, Grid1D};
use quatpert::series::{self, correction_coefficient_closed, perturbed_energy, CorrectionRecurrence};
use quatpert::{ModelKind, PerturbationSpec};
use rand::{rngs::StdRng, Rng, SeedableRng};

const REFERENCE_TABLE: [[f64; 3]; 5] = [
    [-13.60000, -13.60090, -13.60080],
    [-3.40000, -3.40015, -3.40331],
    [-1.51111, -1.51116, -1.51854],
    [-0.85000, -0.85002, -0.86313],
    [-0.54400, -0.54401, -0.56430],
];

struct Verdict {
    checks: Vec<(String, bool)>,
}

impl Verdict {
    fn new() -> Self {
        Verdict { checks: Vec::new() }
    }

    fn check(&mut self, label: impl Into<String>, ok: bool) {
        self.checks.push((label.into(), ok));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    fn summary(&self) -> String {
        let failed: Vec<&str> = self.checks.iter().filter(|(_, ok)| !ok).map(|(l, _)| l.as_str()).collect();
        if failed.is_empty() {
            format!("{} checks", self.checks.len())
        } else {
            format!("failed: {}", failed.join("; "))
        }
    }
}

fn quatpert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatpert")).args(args).output().expect("binary runs")
}

fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn random_spec(rng: &mut StdRng) -> PerturbationSpec {
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let e = sign * rng.gen_range(0.01..50.0);
    let w = Complex64::from_polar(rng.gen_range(0.01..20.0), rng.gen_range(0.0..std::f64::consts::TAU));
    PerturbationSpec::new(e, w, rng.gen_range(-5.0..5.0)).unwrap()
}

fn spec_at_ratio(rng: &mut StdRng, ratio: f64) -> PerturbationSpec {
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let e = sign * rng.gen_range(0.01..50.0);
    let w = rng.gen_range(0.1..10.0);
    PerturbationSpec::with_modulus(e, w, ratio * e.abs() / w).unwrap()
}

fn relative(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn criterion_1() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let out = quatpert(&["hydrogen-table", "--alphaw", "0.15", "--n-max", "5"]);
    let elapsed = start.elapsed();
    v.check("exit code 0", out.status.code() == Some(0));
    let rows = csv_rows(&out);
    v.check("five rows", rows.len() == 5);
    for (row, reference) in rows.iter().zip(REFERENCE_TABLE) {
        let n: f64 = row[0].parse().unwrap();
        let values: Vec<f64> = row[1..4].iter().map(|s| s.parse().unwrap()).collect();
        for (k, (got, want)) in values.iter().zip(reference).enumerate() {
            v.check(format!("n={n} column {k} {got} vs {want}"), (got - want).abs() <= 1e-3);
        }
        let e = -13.6 / (n * n);
        let closed = -(e.hypot(0.15));
        v.check(format!("n={n} closed form"), (values[2] - closed).abs() <= 1e-4);
    }
    v.check(format!("runtime {elapsed:?} < 1 s"), elapsed < Duration::from_secs(1));
    v
}

fn criterion_2() -> Verdict {
    let mut v = Verdict::new();
    let expected: [i128; 5] = [1, -2, 6, -20, 70];
    let closed: Vec<i128> = (1..=5).map(series::normalized_coefficient).collect();
    v.check("closed formula", closed == expected);
    v.check("integer recurrence", series::normalized_coefficients_by_recurrence(5) == expected);
    v
}

fn criterion_3() -> Verdict {
    let mut v = Verdict::new();
    let mut rng = StdRng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let spec = random_spec(&mut rng);
        let mut rec = CorrectionRecurrence::new(&spec);
        for s in (2..=40).step_by(2) {
            let a = correction_coefficient_closed(&spec, s).unwrap();
            let b = rec.coefficient(s).unwrap();
            worst = worst.max(relative(a, b));
        }
    }
    v.check(format!("max relative difference {worst:.2e} < 1e-12"), worst < 1e-12);
    v
}

fn criterion_4() -> Verdict {
    let mut v = Verdict::new();
    let mut rng = StdRng::seed_from_u64(4);
    let mut all_zero = true;
    for _ in 0..100 {
        let spec = random_spec(&mut rng);
        let mut rec = CorrectionRecurrence::new(&spec);
        let eval = perturbed_energy(&spec, 41).unwrap();
        for s in (1..=41).step_by(2) {
            all_zero &= correction_coefficient_closed(&spec, s).unwrap() == 0.0;
            all_zero &= rec.coefficient(s).unwrap() == 0.0;
            all_zero &= eval.terms[s - 1] == 0.0;
        }
    }
    v.check("odd orders exactly zero", all_zero);
    v
}

fn criterion_5() -> Verdict {
    let mut v = Verdict::new();
    let mut rng = StdRng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for k in 0..100 {
        let ratio = 0.9 * f64::from(k) / 99.0;
        let spec = spec_at_ratio(&mut rng, ratio);
        let eval = perturbed_energy(&spec, 200).unwrap();
        let limit = spec.energy().signum() * spec.energy().hypot(spec.coupling());
        worst = worst.max((eval.value() - limit).abs() / spec.energy().abs());
    }
    v.check(format!("inside: worst |S_200 - limit|/|E0| = {worst:.2e} <= 1e-10"), worst <= 1e-10);
    let mut witnessed = 0;
    for k in 0..100 {
        let ratio = 1.05 + 1.95 * f64::from(k) / 99.0;
        let spec = spec_at_ratio(&mut rng, ratio);
        let eval = perturbed_energy(&spec, 200).unwrap();
        if eval.divergence_witness().is_some() && !eval.in_radius {
            witnessed += 1;
        }
    }
    v.check(format!("outside: divergence witnessed {witnessed}/100"), witnessed == 100);
    v
}

fn criterion_6() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let mut worst_closed = 0.0f64;
    let mut worst_series = 0.0f64;
    let mut solves = 0;
    for model in [ModelKind::Well, ModelKind::Oscillator] {
        let grid = Grid1D::for_model(model, 2000).unwrap();
        for n in model.min_n()..=5 {
            let radius = alpha_max(model, n).unwrap();
            for fraction in [0.1, 0.5, 0.9] {
                let report = oracle::oracle_compare(model, n, fraction * radius, &grid, 50).unwrap();
                worst_closed = worst_closed.max(report.dev_oracle_closed);
                worst_series = worst_series.max(report.dev_oracle_series);
                solves += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    v.check(format!("oracle vs closed form {worst_closed:.2e} < 1e-4"), worst_closed < 1e-4);
    v.check(format!("oracle vs order-50 series {worst_series:.2e} < 1e-4"), worst_series < 1e-4);
    v.check(format!("{solves} solves at 2N = 4000 in {elapsed:.1?} < 60 s"), elapsed < Duration::from_secs(60));

    let coarse = Grid1D::for_model(ModelKind::Well, 999).unwrap();
    let fine = coarse.refined();
    for (model, n, fraction) in [(ModelKind::Well, 1, 0.5), (ModelKind::Oscillator, 1, 0.5)] {
        let (coarse, fine) = if model == ModelKind::Well {
            (coarse, fine)
        } else {
            let c = Grid1D::for_model(model, 999).unwrap();
            (c, c.refined())
        };
        let alpha = fraction * alpha_max(model, n).unwrap();
        let a = oracle::oracle_compare(model, n, alpha, &coarse, 50).unwrap();
        let b = oracle::oracle_compare(model, n, alpha, &fine, 50).unwrap();
        let ratio = a.dev_oracle_closed / b.dev_oracle_closed;
        v.check(format!("{model} n={n}: halving h improves by {ratio:.2} (3.5..4.5)"), (3.5..=4.5).contains(&ratio));
    }
    v
}

fn criterion_7() -> Verdict {
    let mut v = Verdict::new();
    let mut exact = true;
    for n in 1..=10u32 {
        let nf = f64::from(n);
        exact &= alpha_max(ModelKind::Hydrogen, n).unwrap() == 1.0 / (2.0 * nf * nf);
        exact &= alpha_max(ModelKind::Well, n).unwrap() == nf * nf / 2.0;
    }
    for n in 0..=10u32 {
        exact &= alpha_max(ModelKind::Oscillator, n).unwrap() == f64::from(n) + 0.5;
    }
    v.check("alpha_max formulas exact", exact);

    let figure_bounds = [
        ("hydrogen", 1, 1.0 / 8.0),
        ("hydrogen", 2, 1.0 / 18.0),
        ("well", 1, 1.0),
        ("well", 2, 2.0),
        ("oscillator", 1, 1.5),
        ("oscillator", 2, 2.5),
    ];
    for (model, n, bound) in figure_bounds {
        let (n_arg, at, beyond) = (n.to_string(), bound.to_string(), (bound * 1.01).to_string());
        let accepted = quatpert(&["sigma", "--model", model, "--n", &n_arg, "--alpha", &at, "--max-order", "5"]);
        v.check(
            format!("{model} n={n} accepts alpha={bound}"),
            accepted.status.code() == Some(0) && csv_rows(&accepted).len() == 5,
        );
        let rejected = quatpert(&["sigma", "--model", model, "--n", &n_arg, "--alpha", &beyond, "--max-order", "5"]);
        v.check(
            format!("{model} n={n} rejects alpha={beyond}"),
            rejected.status.code() == Some(1) && rejected.stdout.is_empty(),
        );
    }
    v
}

fn criterion_8() -> Verdict {
    let mut v = Verdict::new();
    let mut rng = StdRng::seed_from_u64(8);
    let mut worst_series = 0.0f64;
    for _ in 0..100 {
        let e: f64 = rng.gen_range(0.1..10.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let w = rng.gen_range(0.1..5.0);
        let alpha = rng.gen_range(0.0..0.95) * e.abs() / w;
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let base = perturbed_energy(&PerturbationSpec::new(e, Complex64::new(w, 0.0), alpha).unwrap(), 80).unwrap();
        let flip = perturbed_energy(&PerturbationSpec::new(e, Complex64::new(w, 0.0), -alpha).unwrap(), 80).unwrap();
        let rot =
            perturbed_energy(&PerturbationSpec::new(e, Complex64::from_polar(w, theta), alpha).unwrap(), 80).unwrap();
        worst_series = worst_series.max(relative(base.value(), flip.value())).max(relative(base.value(), rot.value()));
    }
    v.check(format!("series {worst_series:.2e} <= 1e-10"), worst_series <= 1e-10);

    let mut worst_oracle = 0.0f64;
    for model in [ModelKind::Well, ModelKind::Oscillator] {
        let grid = Grid1D::for_model(model, 400).unwrap();
        let h = discretize(model, &grid).unwrap();
        let unperturbed = h.eigenvalues().unwrap();
        for n in model.min_n()..=model.min_n() + 2 {
            let index = (n - model.min_n()) as usize;
            let alpha = rng.gen_range(0.05..1.0) * alpha_max(model, n).unwrap();
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let w = Complex64::new(2.0, 0.0);
            let level = |a: f64, w: Complex64| {
                let spectrum = embed(&h, a, w).eigenvalues().unwrap();
                oracle::matched_branch(&unperturbed, &spectrum, index).unwrap()
            };
            let base = level(alpha, w);
            let flip = level(-alpha, w);
            let rot = level(alpha, w * Complex64::from_polar(1.0, theta));
            worst_oracle = worst_oracle.max(relative(base, flip)).max(relative(base, rot));
        }
    }
    v.check(format!("oracle levels {worst_oracle:.2e} <= 1e-10"), worst_oracle <= 1e-10);
    v
}

fn criterion_9() -> Verdict {
    let mut v = Verdict::new();
    let mut ones = true;
    let mut alternates = true;
    let mut converges = true;
    let mut hydrogen_above = true;
    let mut others_below = true;
    for model in ModelKind::ALL {
        for n in model.min_n().max(1)..=4 {
            ones &= sigma_curve(model, n, &[0.0], 30).unwrap().rows.iter().all(|p| p.sigma == 1.0);
            let bound = models::gap_alpha_max(model, n).unwrap();
            for fraction in [0.1, 0.4, 0.7, 0.9] {
                let alpha = fraction * bound;
                let limit = sigma_limit(model, n, alpha).unwrap();
                let rows = sigma_curve(model, n, &[alpha], 200).unwrap().rows;
                let offsets: Vec<f64> = rows.iter().map(|p| p.sigma - limit).collect();
                alternates &= offsets
                    .windows(2)
                    .all(|w| w[0].abs() < 1e-13 || w[1].abs() < 1e-13 || w[0] * w[1] < 0.0);
                converges &= offsets.last().unwrap().abs() < 1e-8;
                if model == ModelKind::Hydrogen {
                    hydrogen_above &= limit > 1.0;
                } else {
                    others_below &= limit < 1.0;
                }
            }
        }
    }
    v.check("sigma identically 1 at alpha = 0", ones);
    v.check("partial sums alternate around the limit", alternates);
    v.check("partial sums converge to the closed-form limit", converges);
    v.check("hydrogen sigma > 1 inside the radius", hydrogen_above);
    v.check("well and oscillator sigma < 1 inside the radius", others_below);
    v
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("table reproduction", criterion_1),
        ("coefficient sequence", criterion_2),
        ("recurrence equals closed formula", criterion_3),
        ("odd-order vanishing", criterion_4),
        ("series limit and radius", criterion_5),
        ("oracle equivalence", criterion_6),
        ("convergence bounds", criterion_7),
        ("invariance suite", criterion_8),
        ("figure data properties", criterion_9),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let verdict = run();
        let status = if verdict.passed() { "PASS" } else { "FAIL" };
        if !verdict.passed() {
            failures += 1;
        }
        println!("criterion {}: {status}: {name} ({})", k + 1, verdict.summary());
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
