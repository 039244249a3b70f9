#![allow(dead_code)]

use num_complex::Complex64;
use pfq_integrals::{IntegrandSpec, Kernel, PFqParams};

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn inner_lists() -> Vec<PFqParams> {
    vec![
        PFqParams::empty(),
        PFqParams::real(&[], &[0.5]).unwrap(),
        PFqParams::real(&[0.5], &[1.5]).unwrap(),
        PFqParams::real(&[1.0, 0.25], &[2.0, 1.5]).unwrap(),
    ]
}

/// Specs for the derivative and definite-integral checks on [0.1, 2]:
/// every kernel, real and complex η, several inner lists.
pub fn ftc_corpus() -> Vec<IntegrandSpec> {
    let etas = [c(0.7), c(-1.1), Complex64::new(0.4, 0.5)];
    let shapes = [(0.0, 1.0, 2.0), (0.5, 1.0, 1.0), (1.5, 0.5, 2.0), (0.25, 2.0, 1.0)];
    let lambdas = [c(-0.3), Complex64::new(0.2, 0.1)];
    let lists = inner_lists();
    let mut out = Vec::new();
    let mut i = 0usize;
    for kernel in Kernel::ALL {
        for &(alpha, beta, gamma) in &shapes {
            for eta in etas {
                // cycle the remaining choices so the corpus stays small
                let lambda = lambdas[i % lambdas.len()];
                let list = lists[i % lists.len()].clone();
                i += 1;
                out.push(IntegrandSpec::new(kernel, c(alpha), c(beta), eta, lambda, c(gamma), list).unwrap());
            }
        }
    }
    out
}

/// Small-argument theorem cases `(spec, x)` with `|ηx^β| ≤ 2` and `|λx^γ| ≤ 1/2`.
pub fn theorem_corpus() -> Vec<(IntegrandSpec, f64)> {
    let etas = [c(0.8), c(-1.5), Complex64::new(0.6, 0.9)];
    let shapes = [(0.0, 1.0, 1.0), (0.5, 2.0, 1.5), (1.3, 1.0, 2.0)];
    let lambdas = [c(0.25), c(-0.4)];
    let lists = inner_lists();
    let mut out = Vec::new();
    let mut i = 0usize;
    for &(alpha, beta, gamma) in &shapes {
        for eta in etas {
            for lambda in lambdas {
                for x in [0.5f64, 1.0] {
                    let small = (eta * x.powf(beta)).norm() <= 2.0 && (lambda * x.powf(gamma)).norm() <= 0.5;
                    if small {
                        let list = lists[i % lists.len()].clone();
                        i += 1;
                        let spec = IntegrandSpec::new(Kernel::Exp, c(alpha), c(beta), eta, lambda, c(gamma), list).unwrap();
                        out.push((spec, x));
                    }
                }
            }
        }
    }
    out
}
