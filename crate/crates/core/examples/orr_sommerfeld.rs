//! Green's-function solution of the Orr-Sommerfeld equation for plane Couette
//! flow, its ODE residual, and the series form alongside it.

use pfq_integrals::orr_sommerfeld::{phi_quadrature, phi_series, os_residual, OSParams};
use pfq_integrals::TruncationPolicy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = OSParams::default();
    println!("k = {}, r = {}, Re = {}, omega = {}", params.k, params.r, params.re, params.omega);
    println!("lambda = {}", params.lambda_os());

    let phi = |y: f64| phi_quadrature(y, &params, 1e-13).map(|s| s.phi).unwrap_or(f64::NAN.into());
    println!("{:>6} {:>24} {:>24} {:>10}", "y", "Re phi", "Im phi", "residual");
    for y in [0.25, 0.5, 0.75, 1.0, 1.5] {
        let sol = phi_quadrature(y, &params, 1e-13)?;
        let res = os_residual(y, &params, phi)?;
        println!("{y:>6} {:>24.16e} {:>24.16e} {res:>10.2e}", sol.phi.re, sol.phi.im);
    }

    println!("\nseries form against quadrature");
    let policy = TruncationPolicy::default();
    for y in [0.5, 1.0, 2.0, 4.0] {
        let quad = phi_quadrature(y, &params, 1e-13)?.phi;
        match phi_series(y, &params, &policy) {
            Ok(series) => println!("y = {y}: series {} quadrature {quad} |diff| {:.3e}", series.phi, (series.phi - quad).norm()),
            Err(e) => println!("y = {y}: series failed ({e}), quadrature {quad}"),
        }
    }
    Ok(())
}
