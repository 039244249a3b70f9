use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Lanczos parameter g = 607/128 with 15 coefficients (Godfrey).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_78;

pub(crate) const POLE_TOL: f64 = 1e-12;

/// Returns the nonpositive integer `z` sits on (within `tol`), if any.
pub(crate) fn nonpositive_integer(z: Complex64, tol: f64) -> Option<i64> {
    if z.im.abs() > tol || z.re > tol {
        return None;
    }
    let r = z.re.round();
    ((z.re - r).abs() <= tol).then_some(r as i64)
}

/// Exact test used for series termination: `z` is literally 0, -1, -2, ...
pub(crate) fn exact_nonpositive_integer(z: Complex64) -> Option<u64> {
    (z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 && z.re > -1e15).then(|| (-z.re) as u64)
}

fn lanczos_log_gamma(z: Complex64) -> Complex64 {
    // lnΓ(z) for Re z >= 0.5, via lnΓ(w + 1) with w = z - 1.
    let w = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (k, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += *c / (w + k as f64);
    }
    let t = w + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (w + 0.5) * t.ln() - t + series.ln()
}

/// ln sin(w) that stays finite for large |Im w|.
fn ln_sin(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    if w.im > 20.0 {
        // sin w = e^{-iw} (e^{2iw} - 1) / (2i)
        -i * w + ((((2.0 * i * w).exp()) - 1.0) / (2.0 * i)).ln()
    } else if w.im < -20.0 {
        // sin w = e^{iw} (1 - e^{-2iw}) / (2i)
        i * w + ((1.0 - (-2.0 * i * w).exp()) / (2.0 * i)).ln()
    } else {
        w.sin().ln()
    }
}

/// Principal-branch ln Γ(z).
///
/// Lanczos approximation for `Re z >= 1/2`, reflection below. For
/// `Re z < 1/2` the imaginary part is fixed only modulo 2π, which is all
/// that `exp(log_gamma(z))` needs.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("log_gamma argument"));
    }
    if nonpositive_integer(z, POLE_TOL).is_some() {
        return Err(Error::PoleAtNonpositiveInteger(z));
    }
    if z.re >= 0.5 {
        Ok(lanczos_log_gamma(z))
    } else {
        let reflected = lanczos_log_gamma(1.0 - z);
        Ok(Complex64::new(PI.ln(), 0.0) - ln_sin(PI * z) - reflected)
    }
}

/// Γ(z) as `exp(log_gamma(z))`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// 1/Γ(z), which is entire: zero at the poles of Γ.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// Rising factorial (θ)_n = Γ(θ+n)/Γ(θ), with (θ)_0 = 1.
///
/// Direct product for `n <= 64`, log-gamma ratio above. Nonpositive-integer
/// `θ` with `|θ| < n` gives exactly zero.
pub fn pochhammer(theta: Complex64, n: u64) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if let Some(k) = exact_nonpositive_integer(theta) {
        if k < n {
            return Complex64::new(0.0, 0.0);
        }
    }
    if n <= 64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for i in 0..n {
            acc *= theta + i as f64;
        }
        return acc;
    }
    match (log_gamma(theta + n as f64), log_gamma(theta)) {
        (Ok(num), Ok(den)) => (num - den).exp(),
        // θ near a pole with θ+n far from one, or vice versa: fall back to the product.
        _ => {
            let mut acc = Complex64::new(1.0, 0.0);
            for i in 0..n {
                acc *= theta + i as f64;
            }
            acc
        }
    }
}
