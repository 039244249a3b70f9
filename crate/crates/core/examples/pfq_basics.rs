//! The pFq engine on a few classical reductions, plus the two asymptotic forms.

use num_complex::Complex64;
use pfq_integrals::{pfq, pfq_1f1_asymptotic, two_f_zero_asymptotic, PFqParams, TruncationPolicy};

fn main() -> Result<(), pfq_integrals::Error> {
    let policy = TruncationPolicy::default();
    let c = |v: f64| Complex64::new(v, 0.0);

    let e = pfq(&PFqParams::empty(), c(1.0), &policy)?;
    println!("0F0(;;1)            = {:.16} ({} terms, exp(1) = {:.16})", e.value.re, e.terms_used, 1f64.exp());

    let t = 3.0;
    let cos = pfq(&PFqParams::real(&[], &[0.5])?, c(-t * t / 4.0), &policy)?;
    println!("0F1(;1/2;-t^2/4)    = {:.16} (cos 3 = {:.16})", cos.value.re, t.cos());

    let f = pfq(&PFqParams::real(&[1.0], &[2.0])?, c(1.0), &policy)?;
    println!("1F1(1;2;1)          = {:.16} (e - 1 = {:.16})", f.value.re, 1f64.exp() - 1.0);

    let poly = pfq(&PFqParams::real(&[-3.0, 2.0], &[1.5])?, Complex64::new(0.4, -0.2), &policy)?;
    println!("2F1(-3,2;3/2;z)     = {} (terminates after {} terms)", poly.value, poly.terms_used);

    let asym = pfq_1f1_asymptotic(c(1.0), c(3.0), c(50.0))?;
    let conv = pfq(&PFqParams::real(&[1.0], &[3.0])?, c(50.0), &policy)?;
    println!("1F1(1;3;50)         ~ {:.6e} (series {:.6e}, bound {:.1e})", asym.value.re, conv.value.re, asym.error_estimate);

    let two = two_f_zero_asymptotic(c(0.5), c(1.0), c(-0.04))?;
    println!("2F0(1/2,1;;-0.04)   ~ {:.16} ({} terms, first omitted {:.1e})", two.value.re, two.terms_used, two.error_estimate);

    match pfq(&PFqParams::real(&[1.0, 1.0], &[2.0])?, c(1.5), &policy) {
        Ok(v) => println!("2F1 at |z| = 1.5 unexpectedly gave {}", v.value),
        Err(e) => println!("2F1 at |z| = 1.5: {e}"),
    }
    Ok(())
}
