use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::QuadratureResult;
use crate::{Error, Result};

/// Subdivision cap for one adaptive run.
pub const MAX_PANELS: usize = 10_000;

// Kronrod abscissae and weights (15 points) with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Half-width of the truncated tanh-sinh parameter range.
const DE_T_MAX: f64 = 6.0;
const DE_INITIAL_PANELS: usize = 12;

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
    at_floor: bool,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<G>(g: &G, lo: f64, hi: f64) -> Result<Panel>
where
    G: Fn(f64) -> Result<Complex64>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut fv1 = [Complex64::new(0.0, 0.0); 7];
    let mut fv2 = [Complex64::new(0.0, 0.0); 7];

    let fc = g(center)?;
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = WGK[7] * fc.norm();
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = g(center - dx)?;
        let f2 = g(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += (f1 + f2) * WGK[j];
        res_abs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            res_g += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).norm();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();

    let mut error = ((res_k - res_g) * half).norm();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    let at_floor = floor >= error;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(floor);
    }
    Ok(Panel { lo, hi, value: res_k * half, error, at_floor })
}

/// Globally adaptive bisection over `[lo, hi]`, refining the panel with the
/// largest error estimate until the summed estimate falls below `tol`.
fn adaptive<G>(g: G, lo: f64, hi: f64, initial: usize, tol: f64) -> Result<QuadratureResult>
where
    G: Fn(f64) -> Result<Complex64>,
{
    let mut heap = BinaryHeap::new();
    let width = (hi - lo) / initial as f64;
    for i in 0..initial {
        let a = lo + width * i as f64;
        let b = if i + 1 == initial { hi } else { a + width };
        heap.push(gk15(&g, a, b)?);
    }
    let mut evaluations = 15 * initial;

    let finish = |heap: &BinaryHeap<Panel>, evaluations: usize, converged: bool| {
        let mut value = Complex64::new(0.0, 0.0);
        let mut comp = Complex64::new(0.0, 0.0);
        let mut error = 0.0;
        for p in heap.iter() {
            // Kahan on the panel sum; panel counts can reach the cap.
            let y = p.value - comp;
            let t = value + y;
            comp = (t - value) - y;
            value = t;
            error += p.error;
        }
        QuadratureResult { value, error_estimate: error, evaluations, converged: converged && error <= tol }
    };

    loop {
        let total: f64 = heap.iter().map(|p| p.error).sum();
        if total <= tol {
            return Ok(finish(&heap, evaluations, true));
        }
        if heap.len() >= MAX_PANELS {
            return Err(Error::MaxSubdivisions(Box::new(finish(&heap, evaluations, false))));
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        if worst.at_floor || mid <= worst.lo || mid >= worst.hi {
            heap.push(worst);
            return Ok(finish(&heap, evaluations, false));
        }
        heap.push(gk15(&g, worst.lo, mid)?);
        heap.push(gk15(&g, mid, worst.hi)?);
        evaluations += 30;
    }
}

/// Tanh-sinh node at parameter `t` for an interval of length `len`:
/// distance to the nearer endpoint, the weight, and whether that endpoint is the left one.
fn de_node(t: f64, len: f64) -> (f64, f64, bool) {
    let s = t.sinh();
    let u = (-PI * s.abs()).exp();
    let d = len * u / (1.0 + u);
    let w = 0.5 * len * FRAC_PI_2 * t.cosh() * 4.0 * u / ((1.0 + u) * (1.0 + u));
    (d, w, t < 0.0)
}

fn weighted(value: Complex64, w: f64, x: f64) -> Result<Complex64> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value * w)
    } else if w < 1e-200 {
        // Integrable endpoint blow-up at a node whose weight has underflowed.
        Ok(Complex64::new(0.0, 0.0))
    } else {
        Err(Error::SingularInterior(x))
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("quadrature tolerance must be positive, got {tol}")))
    }
}

/// `∫_a^b f(x) dx` to absolute tolerance `tol`.
///
/// The interval is mapped by the tanh-sinh substitution, which absorbs
/// algebraic endpoint singularities, and the mapped integrand is integrated
/// by adaptive Gauss-Kronrod 7/15 bisection. A singularity at `b` is
/// resolved only down to the spacing of floats near `b`; put strong
/// singularities at the left end when `|b|` is large relative to the width.
pub fn quad_finite<F, T>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    check_tol(tol)?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParameter("quad_finite needs finite limits".into()));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let len = hi - lo;
    let mapped = |t: f64| -> Result<Complex64> {
        let (d, w, left) = de_node(t, len);
        let x = if left { lo + d } else { hi - d };
        if x <= lo || x >= hi {
            return Ok(Complex64::new(0.0, 0.0));
        }
        weighted(f(x).into(), w, x)
    };
    let mut r = adaptive(mapped, -DE_T_MAX, DE_T_MAX, DE_INITIAL_PANELS, tol)?;
    r.value *= sign;
    Ok(r)
}

/// Abscissa at which the tail of a semi-infinite integrand is probed.
const TAIL_PROBE: f64 = 700.0;

/// `∫_0^∞ f(x) dx` through `x = -ln τ`, `τ ∈ (0, 1]`.
///
/// Fails with `DecayTooSlow` when `|f(700)|·700` exceeds `tol`.
pub fn quad_semi_infinite<F, T>(f: F, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    check_tol(tol)?;
    let tail = f(TAIL_PROBE).into().norm() * TAIL_PROBE;
    if !(tail <= tol) {
        return Err(Error::DecayTooSlow { tail, tol });
    }
    let mapped = |t: f64| -> Result<Complex64> {
        let (d, w, left) = de_node(t, 1.0);
        if d <= 0.0 || (!left && d >= 1.0) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let (tau, x) = if left { (d, -d.ln()) } else { (1.0 - d, -(-d).ln_1p()) };
        if x <= 0.0 || !x.is_finite() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        weighted(f(x).into() / tau, w, x)
    };
    adaptive(mapped, -DE_T_MAX, DE_T_MAX, DE_INITIAL_PANELS, tol)
}

/// `∫_{-∞}^{∞} envelope(x) e^{ikx} dx` for a Gaussian-type envelope.
///
/// The range is cut at `±L`, the first power of two beyond which the envelope
/// stays below `tol/10` on both sides, and `[-L, L]` is split into
/// half-period panels of width `π/|k|`. The real part is the cosine
/// transform and the imaginary part the sine transform.
pub fn quad_oscillatory_fourier<F, T>(envelope: F, k: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    check_tol(tol)?;
    if !k.is_finite() {
        return Err(Error::InvalidParameter("wavenumber must be finite".into()));
    }
    let env = |x: f64| envelope(x).into();
    let mut cut = 1.0f64;
    loop {
        let outer = env(cut).norm().max(env(-cut).norm()).max(env(1.5 * cut).norm()).max(env(-1.5 * cut).norm());
        if outer < 0.1 * tol {
            break;
        }
        cut *= 2.0;
        if cut > 1e6 {
            return Err(Error::DecayTooSlow { tail: outer, tol });
        }
    }
    let panels = if k == 0.0 {
        1
    } else {
        ((2.0 * cut * k.abs() / PI).ceil() as usize).clamp(1, MAX_PANELS)
    };
    let width = 2.0 * cut / panels as f64;
    let panel_tol = tol / panels as f64;
    let integrand = |x: f64| env(x) * Complex64::new(0.0, k * x).exp();

    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut evaluations = 0;
    let mut converged = true;
    for i in 0..panels {
        let a = -cut + width * i as f64;
        let b = if i + 1 == panels { cut } else { a + width };
        let r = match quad_finite(integrand, a, b, panel_tol) {
            Ok(r) => r,
            Err(Error::MaxSubdivisions(r)) => *r,
            Err(e) => return Err(e),
        };
        value += r.value;
        error += r.error_estimate;
        evaluations += r.evaluations;
        converged &= r.converged;
    }
    Ok(QuadratureResult { value, error_estimate: error, evaluations, converged: converged && error <= tol })
}
