//! Fourier transforms of Gaussian-weighted monomials against the oscillatory
//! quadrature oracle.

use pfq_integrals::oracle::quad_oscillatory_fourier;
use pfq_integrals::{fourier_gaussian, fourier_moment_gaussian, TruncationPolicy};

fn main() -> Result<(), pfq_integrals::Error> {
    let policy = TruncationPolicy::default();
    println!("{:>3} {:>5} {:>4} {:>26} {:>26}", "a", "theta", "k", "closed form", "oracle");
    for alpha in 0..4i32 {
        for theta in [1.0, 2.0] {
            for k in [0.0, 1.0, 2.0] {
                let closed = fourier_moment_gaussian(alpha as i64, theta, k, &policy)?.value;
                let oracle = quad_oscillatory_fourier(|x: f64| x.powi(alpha) * (-theta * theta * x * x).exp(), k, 1e-13)?.value;
                let shown = |z: num_complex::Complex64| if alpha % 2 == 0 { z.re } else { z.im };
                println!("{alpha:>3} {theta:>5} {k:>4} {:>26.16e} {:>26.16e}", shown(closed), shown(oracle));
            }
        }
    }
    println!("\nGaussian, theta = 1, k = 2: {:.16}", fourier_gaussian(1.0, 2.0)?);
    Ok(())
}
