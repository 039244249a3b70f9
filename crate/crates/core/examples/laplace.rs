//! Laplace transforms by optimal truncation of 2F0, with the first omitted
//! term as error bound, against the semi-infinite quadrature oracle.

use num_complex::Complex64;
use pfq_integrals::oracle::quad_semi_infinite;
use pfq_integrals::{laplace_erf, laplace_moment_gaussian};

fn main() -> Result<(), pfq_integrals::Error> {
    println!("{:>5} {:>6} {:>24} {:>24} {:>10} {:>10}", "alpha", "u", "asymptotic", "oracle", "|diff|", "bound");
    for alpha in [0.0, 0.5, 1.0, 2.0] {
        for u in [8.0, 10.0, 20.0] {
            let s = laplace_moment_gaussian(alpha, 1.0, Complex64::new(u, 0.0))?;
            let oracle = quad_semi_infinite(|x: f64| x.powf(alpha) * (-x * x - u * x).exp(), 1e-18)?;
            let diff = (s.value - oracle.value).norm();
            println!("{alpha:>5} {u:>6} {:>24.16e} {:>24.16e} {diff:>10.2e} {:>10.2e}", s.value.re, oracle.value.re, s.error_estimate);
        }
    }
    println!();
    for u in [10.0, 100.0, 1000.0] {
        let s = laplace_erf(Complex64::new(u, 0.0))?;
        println!("u = {u:>6}: u^2 * L[erf](u) = {:.12}", s.value.re * u * u);
    }
    Ok(())
}
