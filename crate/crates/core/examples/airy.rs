//! Ai(z) from the 0F1 pair against the contour-integral oracle.

use num_complex::Complex64;
use pfq_integrals::oracle::airy_integral;
use pfq_integrals::{airy_ai, TruncationPolicy};

fn main() -> Result<(), pfq_integrals::Error> {
    let policy = TruncationPolicy::default();
    println!("{:>14} {:>24} {:>24} {:>10}", "z", "series", "integral", "rel diff");
    for z in [
        Complex64::new(-2.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(2.0, 1.0),
        Complex64::new(-1.0, -3.0),
        Complex64::new(5.0, 0.0),
    ] {
        let s = airy_ai(z, &policy)?.value;
        let q = airy_integral(z, 1e-13)?.value;
        println!("{:>14} {:>24.16e} {:>24.16e} {:>10.2e}", z.to_string(), s.re, q.re, (s - q).norm() / q.norm());
    }
    match airy_ai(Complex64::new(15.0, 0.0), &policy) {
        Ok(_) => println!("Ai(15) accepted"),
        Err(e) => println!("Ai(15) via series: {e}"),
    }
    Ok(())
}
