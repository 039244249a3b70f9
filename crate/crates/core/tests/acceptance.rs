//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use common::{c, ftc_corpus, rel, theorem_corpus};
use num_complex::Complex64;
use pfq_integrals::identities::{lemma1_grid, DEFAULT_SEED};
use pfq_integrals::oracle::{
    airy_integral, fd_derivative, fd_nth_derivative, quad_finite, quad_oscillatory_fourier, quad_semi_infinite,
};
use pfq_integrals::orr_sommerfeld::series_leading_coefficient;
use pfq_integrals::orr_sommerfeld::AiryCenter;
use pfq_integrals::series_integrals::series_factor;
use pfq_integrals::{
    airy_ai, antiderivative, definite_integral, fourier_gaussian, fourier_moment_gaussian, laplace_erf,
    laplace_moment_gaussian, lemma1_residual, os_residual, pfq, phi_quadrature, phi_series, theorem_residual,
    IdentityCase, IdentityId, Kernel, OSParams, PFqParams, TruncationPolicy,
};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn fourier_gaussian_reproduction() -> Verdict {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for theta in [1.0, 2.0] {
        for k in [0.0, 1.0, 2.0, 4.0] {
            let closed = fourier_gaussian(theta, k).unwrap();
            let oracle = quad_oscillatory_fourier(|x: f64| (-theta * theta * x * x).exp(), k, 1e-12).unwrap();
            worst = worst.max(rel(c(closed), oracle.value));
        }
    }
    let elapsed = start.elapsed();
    verdict(
        worst <= 1e-8 && elapsed < Duration::from_secs(1),
        format!("max rel err {worst:.2e} (≤ 1e-8), {:.3} s (< 1 s)", elapsed.as_secs_f64()),
    )
}

fn fourier_moments() -> Verdict {
    let policy = TruncationPolicy::default();
    let mut worst = 0.0f64;
    for alpha in 0..=3i32 {
        for theta in [1.0, 2.0] {
            for k in [0.0, 1.0, 2.0] {
                let closed = fourier_moment_gaussian(alpha as i64, theta, k, &policy).unwrap().value;
                let oracle =
                    quad_oscillatory_fourier(|x: f64| x.powi(alpha) * (-theta * theta * x * x).exp(), k, 1e-13).unwrap();
                // odd moments vanish at k = 0; compare absolutely there
                let err = (closed - oracle.value).norm() / oracle.value.norm().max(1e-6);
                worst = worst.max(err);
            }
        }
    }
    let mut relation = 0.0f64;
    for theta in [0.5, 1.0, 2.0] {
        for k in [0.5, 1.0, 2.0, 4.0] {
            let first = fourier_moment_gaussian(1, theta, k, &policy).unwrap().value;
            let expected = Complex64::new(0.0, k / (2.0 * theta * theta)) * fourier_gaussian(theta, k).unwrap();
            relation = relation.max(rel(first, expected));
        }
    }
    verdict(
        worst <= 1e-7 && relation <= 1e-12,
        format!("max rel err vs oracle {worst:.2e} (≤ 1e-7), first-moment relation {relation:.2e} (≤ 1e-12)"),
    )
}

fn laplace_asymptotics() -> Verdict {
    let mut honest = true;
    let mut worst_ratio = 0.0f64;
    let mut worst_bound = 0.0f64;
    for theta in [0.5, 1.0] {
        for alpha in [0.0, 0.5, 1.0, 2.0] {
            for ratio in [8.0, 10.0, 20.0, 50.0] {
                let u = ratio * theta;
                let s = laplace_moment_gaussian(alpha, theta, c(u)).unwrap();
                let oracle = match quad_semi_infinite(
                    |x: f64| x.powf(alpha) * (-theta * theta * x * x - u * x).exp(),
                    1e-15 * s.value.norm(),
                ) {
                    Ok(r) => r,
                    Err(pfq_integrals::Error::MaxSubdivisions(r)) => *r,
                    Err(e) => panic!("{e}"),
                };
                let diff = (s.value - oracle.value).norm();
                // the oracle's own error and a few ulps of rounding sit on top of the truncation bound
                let allowance = s.error_estimate + oracle.error_estimate + 4.0 * f64::EPSILON * s.value.norm();
                honest &= diff <= allowance;
                worst_ratio = worst_ratio.max(diff / allowance);
                worst_bound = worst_bound.max(s.error_estimate / s.value.norm());
            }
        }
    }
    let u = 1e3;
    let limit = (laplace_erf(c(u)).unwrap().value.re * u * u - 1.0).abs();
    verdict(
        honest && worst_bound <= 1e-4 && limit <= 1e-4,
        format!(
            "|asym − oracle| / bound ≤ {worst_ratio:.2} (≤ 1), max relative bound {worst_bound:.2e} (≤ 1e-4), |u²·L[erf](10³) − 1| = {limit:.2e} (≤ 1e-4)"
        ),
    )
}

fn product_identity() -> Verdict {
    let start = Instant::now();
    let grid = lemma1_grid(500, DEFAULT_SEED);
    let worst = grid
        .iter()
        .map(|&(a, b, g, n, j)| lemma1_residual(c(a), c(b), c(g), n, j).unwrap())
        .fold(0.0, f64::max);
    let elapsed = start.elapsed();
    verdict(
        worst <= 1e-12 && grid.len() >= 500 && elapsed < Duration::from_secs(1),
        format!(
            "{} cases (seed {DEFAULT_SEED:#x}), max residual {worst:.2e} (≤ 1e-12), {:.3} s (< 1 s)",
            grid.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn ftc_property() -> Verdict {
    let policy = TruncationPolicy::default();
    let corpus = ftc_corpus();
    let mut worst_fd = 0.0f64;
    let mut worst_def = 0.0f64;
    let mut compared = 0;
    for spec in &corpus {
        for x in [0.5, 1.0, 1.5] {
            let d = fd_derivative(|t: f64| antiderivative(spec, c(t), &policy).unwrap().value, x, 1e-8).unwrap();
            worst_fd = worst_fd.max(rel(d, spec.integrand(x, &policy).unwrap()));
        }
        let series = definite_integral(spec, 0.1, 2.0, &policy);
        let oracle = quad_finite(|x: f64| spec.integrand(x, &policy).unwrap(), 0.1, 2.0, 1e-11);
        if let (Ok(s), Ok(o)) = (series, oracle) {
            if o.converged {
                compared += 1;
                worst_def = worst_def.max(rel(s.value, o.value));
            }
        }
    }
    verdict(
        corpus.len() >= 50 && worst_fd <= 1e-6 && worst_def <= 1e-8 && compared >= 50,
        format!(
            "{} specs: max derivative rel err {worst_fd:.2e} (≤ 1e-6), max definite rel err {worst_def:.2e} over {compared} converged (≤ 1e-8)",
            corpus.len()
        ),
    )
}

fn kernel_decompositions() -> Verdict {
    let policy = TruncationPolicy::default();
    let corpus = theorem_corpus();
    let mut worst = 0.0f64;
    let mut decomposition = 0.0f64;
    for (spec, x) in &corpus {
        for id in IdentityId::THEOREMS {
            let case = IdentityCase { id, spec: spec.clone(), x: c(*x), n: 0, j: 0 };
            worst = worst.max(theorem_residual(&case, &policy).unwrap());
        }
        let exp = series_factor(&spec.with_kernel(Kernel::Exp), c(*x), &policy).unwrap().value;
        let cosh = series_factor(&spec.with_kernel(Kernel::Cosh), c(*x), &policy).unwrap().value;
        let sinh = series_factor(&spec.with_kernel(Kernel::Sinh), c(*x), &policy).unwrap().value;
        decomposition = decomposition.max(rel(cosh + sinh, exp));
    }
    verdict(
        corpus.len() >= 20 && worst <= 1e-8 && decomposition <= 1e-10,
        format!(
            "{} cases per identity, max residual {worst:.2e} (≤ 1e-8), cosh + sinh vs exp {decomposition:.2e} (≤ 1e-10)",
            corpus.len()
        ),
    )
}

fn airy() -> Verdict {
    let policy = TruncationPolicy::default();
    let mut worst = 0.0f64;
    let mut ode = 0.0f64;
    for i in 0..=20 {
        let z = -2.0 + 0.2 * i as f64;
        let series = airy_ai(c(z), &policy).unwrap().value;
        let oracle = airy_integral(c(z), 1e-13).unwrap().value;
        worst = worst.max(rel(series, oracle));
        let d2 = fd_nth_derivative(|t: f64| airy_ai(c(t), &policy).unwrap().value, z, 2, 0.1, 1e-6).unwrap();
        ode = ode.max((d2.value - series * z).norm());
    }
    verdict(
        worst <= 1e-8 && ode <= 1e-6,
        format!("21 points on [−2, 2]: max rel err {worst:.2e} (≤ 1e-8), max |Ai'' − z·Ai| {ode:.2e} (≤ 1e-6)"),
    )
}

fn orr_sommerfeld() -> Verdict {
    let params = OSParams::default();
    let phi = |y: f64| phi_quadrature(y, &params, 1e-13).unwrap().phi;
    let mut worst = 0.0f64;
    for y in [0.25, 0.5, 0.75, 1.0, 1.5] {
        worst = worst.max(os_residual(y, &params, phi).unwrap());
    }
    let policy = TruncationPolicy::default();
    let mut discrepancies = Vec::new();
    for y in [0.5, 1.0, 2.0] {
        let q = phi(y);
        let line = match phi_series(y, &params, &policy) {
            Ok(s) => format!("y={y}: {:.1e}", (s.phi - q).norm() / q.norm()),
            Err(e) => format!("y={y}: series failed ({e})"),
        };
        discrepancies.push(line);
    }
    let lead = series_leading_coefficient(&params, AiryCenter::Consistent).unwrap();
    verdict(
        worst <= 1e-4,
        format!(
            "max normalised residual {worst:.2e} (≤ 1e-4); series/quadrature relative discrepancy (reported, not bounded) [{}]; leading series coefficient {lead:.3}",
            discrepancies.join(", ")
        ),
    )
}

fn pfq_engine(suite_start: Instant) -> Verdict {
    let policy = TruncationPolicy::default();
    let empty = PFqParams::empty();
    // Grid: |z| ≤ 20 where summation loses at most e^{|z| − Re z} ≤ e^{12} to cancellation.
    let mut exp_err = 0.0f64;
    for re in [-5.0, -2.5, 0.0, 2.5, 5.0, 10.0, 15.0, 20.0] {
        for im in [-10.0, -3.0, 0.0, 3.0, 10.0] {
            let z = Complex64::new(re, im);
            if z.norm() <= 20.0 && z.norm() - z.re <= 12.0 {
                exp_err = exp_err.max(rel(pfq(&empty, z, &policy).unwrap().value, z.exp()));
            }
        }
    }
    let mut disc = 0.0f64;
    for i in 0..72 {
        let z = Complex64::from_polar(20.0, i as f64 * 5f64.to_radians());
        disc = disc.max(rel(pfq(&empty, z, &policy).unwrap().value, z.exp()));
    }
    let half = PFqParams::real(&[], &[0.5]).unwrap();
    let mut cos_err = 0.0f64;
    for i in 0..=40 {
        let t = 0.25 * i as f64;
        for t in [t, -t] {
            cos_err = cos_err.max(rel(pfq(&half, c(-t * t / 4.0), &policy).unwrap().value, c(t.cos())));
        }
    }
    let mut kummer = 0.0f64;
    for a in [c(0.5), c(2.0), Complex64::new(-1.5, 0.3)] {
        let params = PFqParams::new(vec![a], vec![a]).unwrap();
        for z in [c(-5.0), c(1.0), c(10.0), Complex64::new(3.0, -4.0), Complex64::new(-2.0, 8.0)] {
            kummer = kummer.max(rel(pfq(&params, z, &policy).unwrap().value, z.exp()));
        }
    }
    let elapsed = suite_start.elapsed();
    verdict(
        exp_err <= 1e-10 && cos_err <= 1e-10 && kummer <= 1e-10 && elapsed < Duration::from_secs(30),
        format!(
            "0F0 {exp_err:.2e}, 0F1 cos {cos_err:.2e}, 1F1(a;a) {kummer:.2e} (each ≤ 1e-10); suite {:.2} s (< 30 s); full |z| = 20 circle {disc:.1e} (cancellation-limited on Re z < 0, outside the grid)",
            elapsed.as_secs_f64()
        ),
    )
}

fn main() {
    let start = Instant::now();
    let checks: [(&str, fn() -> Verdict); 8] = [
        ("Gaussian Fourier transform vs oracle", fourier_gaussian_reproduction),
        ("Fourier moments of the Gaussian", fourier_moments),
        ("Laplace asymptotics and error bounds", laplace_asymptotics),
        ("product identity on random grid", product_identity),
        ("antiderivative derivative and definite integrals", ftc_property),
        ("kernel decomposition identities", kernel_decompositions),
        ("Airy series vs integral", airy),
        ("Orr-Sommerfeld residual", orr_sommerfeld),
    ];
    let mut failures = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let v = check();
        failures += usize::from(!v.pass);
        println!("[{}] {}. {name}: {}", if v.pass { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    let v = pfq_engine(start);
    failures += usize::from(!v.pass);
    println!("[{}] 9. pFq engine reductions: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    if failures > 0 {
        std::process::exit(1);
    }
}
