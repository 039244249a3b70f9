//! Series antiderivatives of x^α kernel(ηx^β) pFq(λx^γ), checked against the
//! quadrature oracle and against a finite-difference derivative.

use num_complex::Complex64;
use pfq_integrals::oracle::{fd_derivative, quad_finite};
use pfq_integrals::{antiderivative, definite_integral, IntegrandSpec, Kernel, PFqParams, TruncationPolicy};

fn main() -> Result<(), pfq_integrals::Error> {
    let policy = TruncationPolicy::default();
    let inner = PFqParams::real(&[0.5], &[1.5, 2.0])?;
    let (a, b) = (0.1, 2.0);

    println!("{:>5} {:>24} {:>24} {:>10} {:>10}", "kernel", "series", "oracle", "rel diff", "fd check");
    for kernel in Kernel::ALL {
        let spec = IntegrandSpec::real(kernel, 0.5, 1.0, 0.8, -0.3, 2.0, inner.clone())?;
        let series = definite_integral(&spec, a, b, &policy)?;
        let oracle = quad_finite(|x: f64| spec.integrand(x, &policy).unwrap(), a, b, 1e-14)?;
        let rel = (series.value - oracle.value).norm() / oracle.value.norm();

        let x = 1.3;
        let deriv = fd_derivative(|t: f64| antiderivative(&spec, Complex64::new(t, 0.0), &policy).unwrap().value, x, 1e-10)?;
        let direct = spec.integrand(x, &policy)?;
        let fd_rel = (deriv - direct).norm() / direct.norm();
        println!("{kernel:>5} {:>24.16e} {:>24.16e} {rel:>10.2e} {fd_rel:>10.2e}", series.value.re, oracle.value.re);
    }

    // ∫₀¹ cos x dx through 0F1(;1/2;−x²/4)
    let spec = IntegrandSpec::real(Kernel::Exp, 0.0, 1.0, 0.0, -0.25, 2.0, PFqParams::real(&[], &[0.5])?)?;
    let v = definite_integral(&spec, 0.0, 1.0, &policy)?;
    println!("\n∫₀¹ cos x dx = {:.16} (sin 1 = {:.16})", v.value.re, 1f64.sin());
    Ok(())
}
