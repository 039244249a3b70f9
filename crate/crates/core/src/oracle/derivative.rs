use num_complex::Complex64;

use crate::{Error, Result};

const SHRINK: f64 = 1.4;
const TABLE: usize = 10;
const SAFE: f64 = 2.0;
/// Rows always built before the divergence stop may fire.
const MIN_ROWS: usize = 4;

/// Extrapolated derivative and the spread of the last accepted extrapolants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteDifference {
    pub value: Complex64,
    pub error_estimate: f64,
}

fn stencil<F>(f: &F, x: f64, h: f64, order: u32) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    match order {
        1 => (f(x + h) - f(x - h)) / (2.0 * h),
        2 => (f(x + h) - f(x) * 2.0 + f(x - h)) / (h * h),
        4 => {
            (f(x + 2.0 * h) - f(x + h) * 4.0 + f(x) * 6.0 - f(x - h) * 4.0 + f(x - 2.0 * h))
                / (h * h * h * h)
        }
        _ => unreachable!("order validated by caller"),
    }
}

/// Derivative of order 1, 2 or 4 at `x` by Ridders' extrapolation of central
/// differences, starting from step `h0` and shrinking it by 1.4 per row.
///
/// Returns `NoiseFloor` when the best extrapolant still differs from its
/// neighbours by more than `tol·max(1, |value|)`.
pub fn fd_nth_derivative<F, T>(f: F, x: f64, order: u32, h0: f64, tol: f64) -> Result<FiniteDifference>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    if !matches!(order, 1 | 2 | 4) {
        return Err(Error::InvalidParameter(format!("unsupported derivative order {order}")));
    }
    if !(h0 > 0.0 && h0.is_finite() && x.is_finite()) {
        return Err(Error::InvalidParameter("step and point must be finite, step positive".into()));
    }
    let g = |t: f64| f(t).into();
    let mut table = [[Complex64::new(0.0, 0.0); TABLE]; TABLE];
    let mut h = h0;
    table[0][0] = stencil(&g, x, h, order);
    let mut best = table[0][0];
    let mut err = f64::INFINITY;
    for i in 1..TABLE {
        h /= SHRINK;
        table[0][i] = stencil(&g, x, h, order);
        let mut fac = SHRINK * SHRINK;
        for j in 1..=i {
            table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
            fac *= SHRINK * SHRINK;
            let e = (table[j][i] - table[j - 1][i])
                .norm()
                .max((table[j][i] - table[j - 1][i - 1]).norm());
            if e <= err {
                err = e;
                best = table[j][i];
            }
        }
        if i >= MIN_ROWS && (table[i][i] - table[i - 1][i - 1]).norm() >= SAFE * err {
            break;
        }
    }
    if !(best.re.is_finite() && best.im.is_finite()) {
        return Err(Error::NonFinite("finite difference"));
    }
    if err > tol * best.norm().max(1.0) {
        return Err(Error::NoiseFloor { error: err });
    }
    Ok(FiniteDifference { value: best, error_estimate: err })
}

/// First derivative with a starting step of `0.1·max(|x|, 0.1)`.
pub fn fd_derivative<F, T>(f: F, x: f64, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    let h0 = 0.1 * x.abs().max(0.1);
    fd_nth_derivative(f, x, 1, h0, tol).map(|d| d.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_derivatives() {
        assert!((fd_derivative(f64::exp, 0.0, 1e-10).unwrap().re - 1.0).abs() < 1e-10);
        assert!((fd_derivative(f64::sin, 0.0, 1e-10).unwrap().re - 1.0).abs() < 1e-10);
        let d = fd_derivative(|x: f64| x.ln(), 0.2, 1e-9).unwrap();
        assert!((d.re - 5.0).abs() < 1e-8);
    }

    #[test]
    fn higher_orders() {
        let d2 = fd_nth_derivative(f64::sin, 0.7, 2, 0.1, 1e-8).unwrap();
        assert!((d2.value.re + 0.7f64.sin()).abs() < 1e-8);
        let d4 = fd_nth_derivative(f64::exp, 0.3, 4, 0.2, 1e-6).unwrap();
        assert!((d4.value.re - 0.3f64.exp()).abs() < 1e-6);
    }

    #[test]
    fn noise_is_detected() {
        let noisy = |x: f64| x + 1e-3 * ((x * 1e9).sin());
        assert!(matches!(fd_derivative(noisy, 0.5, 1e-10), Err(Error::NoiseFloor { .. })));
    }
}
