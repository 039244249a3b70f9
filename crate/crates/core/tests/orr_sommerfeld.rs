mod common;

use common::c;
use num_complex::Complex64;
use pfq_integrals::oracle::{airy_integral, fd_nth_derivative, quad_semi_infinite};
use pfq_integrals::orr_sommerfeld::{
    phi_quadrature_with, phi_series_with, series_leading_coefficient, AiryCenter, InterpretationFlag, OSMethod,
};
use pfq_integrals::special_functions::gamma;
use pfq_integrals::{airy_ai, os_residual, phi_quadrature, phi_series, Error, OSParams, TruncationPolicy};

#[test]
fn airy_values_and_equation() {
    let p = TruncationPolicy::default();
    let ai0 = 3f64.powf(-2.0 / 3.0) / gamma(c(2.0 / 3.0)).unwrap().re;
    assert!((airy_ai(c(0.0), &p).unwrap().value.re - ai0).abs() < 1e-16);
    assert!((ai0 - 0.355_028_053_9).abs() < 1e-10);
    // (1/π)∫₀^∞ cos(t³/3 + t) dt, written with the decaying contour
    assert!((airy_integral(c(1.0), 1e-12).unwrap().value.re - 0.135_292_416_3).abs() < 1e-10);
    for z in [-1.0, 0.0, 1.0] {
        let d2 = fd_nth_derivative(|t: f64| airy_ai(c(t), &p).unwrap().value, z, 2, 0.1, 1e-6).unwrap();
        let ai = airy_ai(c(z), &p).unwrap().value;
        assert!((d2.value - ai * z).norm() <= 1e-6);
    }
    assert!(matches!(airy_ai(c(12.5), &p), Err(Error::ArgumentTooLarge { .. })));
}

#[test]
fn airy_complex_plane_against_integral() {
    let p = TruncationPolicy::default();
    for z in [Complex64::new(1.5, 1.5), Complex64::new(-3.0, 2.0), Complex64::new(0.5, -4.0)] {
        let s = airy_ai(z, &p).unwrap().value;
        let q = airy_integral(z, 1e-13).unwrap().value;
        assert!((s - q).norm() / q.norm() < 1e-9, "{z}");
    }
}

#[test]
fn lambda_follows_fields() {
    let mut params = OSParams::default();
    assert_eq!(params.lambda_os(), c(-110.0));
    params.omega = Complex64::new(0.2, 0.0);
    assert_eq!(params.lambda_os(), Complex64::new(-100.0, 20.0));
}

#[test]
fn wall_value_is_far_integral() {
    let params = OSParams::default();
    let sol = phi_quadrature(0.0, &params, 1e-14).unwrap();
    assert_eq!(sol.method, OSMethod::Quadrature);
    let s = params.center(AiryCenter::Consistent);
    let scale = params.airy_scale();
    let kappa = params.kappa();
    let far = quad_semi_infinite(|t: f64| (-kappa * t).exp() * airy_integral(scale * (t - s), 1e-13).unwrap().value, 1e-14)
        .unwrap();
    assert!((sol.phi - far.value / kappa).norm() <= 1e-12 * sol.phi.norm().max(1e-3));
}

#[test]
fn continuity_and_tolerance_consistency() {
    let params = OSParams::default();
    let a = phi_quadrature(0.5, &params, 1e-13).unwrap();
    let b = phi_quadrature(0.5 + 1e-6, &params, 1e-13).unwrap();
    assert!((a.phi - b.phi).norm() <= 1e-6 * 1e-3);
    let loose = phi_quadrature(0.5, &params, 1e-11).unwrap();
    assert!((a.phi - loose.phi).norm() <= 10.0 * 1e-11);
    assert!(a.error_estimate <= 1e-12 && a.converged);
}

#[test]
fn residual_of_green_solution() {
    let params = OSParams::default();
    for y in [0.25, 0.5, 0.75, 1.0, 1.5] {
        let scale = phi_quadrature(y, &params, 1e-13).unwrap().phi.norm();
        // rescaled so that the max(|φ|, 1) floor does not hide small φ
        let phi = |t: f64| phi_quadrature(t, &params, 1e-15 * scale).unwrap().phi / scale;
        let r = os_residual(y, &params, phi).unwrap();
        assert!(r <= 1e-4, "y = {y}: {r:e}");
    }
}

#[test]
fn residual_detects_wrong_solution() {
    let params = OSParams::default();
    assert_eq!(os_residual(0.5, &params, |_| c(0.0)).unwrap(), 0.0);
    let r = os_residual(0.5, &params, |y: f64| c((-y).exp())).unwrap();
    assert!(r > 0.1 && r < 10.0, "{r}");
}

#[test]
fn printed_centre_underflows() {
    // With s = λ = −110 the Airy argument has modulus ≈ 500 and e^{−ζ} underflows.
    let params = OSParams::default();
    let sol = phi_quadrature_with(0.5, &params, AiryCenter::AsPrinted, 1e-13).unwrap();
    assert_eq!(sol.phi, c(0.0));
    assert_eq!(sol.flags, vec![InterpretationFlag::Center(AiryCenter::AsPrinted)]);
}

#[test]
fn series_form_structure() {
    let params = OSParams::default();
    let s = params.center(AiryCenter::Consistent);
    let kappa = params.kappa();
    let lead = series_leading_coefficient(&params, AiryCenter::Consistent).unwrap();
    let expected = s / gamma(c(2.0 / 3.0)).unwrap() * ((kappa * s).cosh().powi(2) + (kappa * s).sinh().powi(2));
    assert!((lead - expected).norm() <= 1e-14 * expected.norm());

    let policy = TruncationPolicy::default();
    let sol = phi_series(0.5, &params, &policy).unwrap();
    assert_eq!(sol.method, OSMethod::Series);
    for flag in [
        InterpretationFlag::ImplicitBlockSum,
        InterpretationFlag::TwoFThreeInsideSum,
        InterpretationFlag::PrintedNormalization,
        InterpretationFlag::Center(AiryCenter::Consistent),
    ] {
        assert!(sol.flags.contains(&flag));
    }
    assert!(sol.error_estimate.is_finite() && sol.error_estimate >= 0.0);
    let printed = phi_series_with(0.5, &params, AiryCenter::AsPrinted, &policy);
    assert!(printed.is_ok() || matches!(printed, Err(Error::NonFinite(_)) | Err(Error::NotConverged(_))));
}

#[test]
fn series_discrepancy_is_reported() {
    let params = OSParams::default();
    let policy = TruncationPolicy::default();
    for y in [0.5, 1.0, 2.0, 4.0] {
        let q = phi_quadrature(y, &params, 1e-13).unwrap().phi;
        match phi_series(y, &params, &policy) {
            Ok(s) => println!("y = {y}: series {} quadrature {q} relative discrepancy {:.3e}", s.phi, (s.phi - q).norm() / q.norm()),
            Err(e) => println!("y = {y}: series failed: {e}"),
        }
    }
}

#[test]
fn invalid_parameters() {
    assert!(OSParams::new(1.0, 0.5, 100.0, c(0.0)).is_err());
    assert!(phi_quadrature(-0.1, &OSParams::default(), 1e-10).is_err());
}
