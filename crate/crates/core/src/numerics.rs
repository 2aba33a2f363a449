//! Shared numerical kernels: adaptive Gauss-Kronrod quadrature on finite and
//! semi-infinite intervals, bracketed root finding, and golden-section
//! minimization in one and two variables.
//!
//! The quadrature driver bisects whichever segment carries the largest
//! embedded-pair error estimate until the summed estimate meets the requested
//! tolerance or the subdivision budget runs out.

use alloc::vec::Vec;
use core::fmt;

use crate::math;

/// Tolerances and subdivision budget for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: u32,
}

impl QuadratureSpec {
    /// Panics if a tolerance is not positive or the budget is zero.
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: u32) -> Self {
        assert!(abs_tol > 0.0, "abs_tol must be positive");
        assert!(rel_tol > 0.0, "rel_tol must be positive");
        assert!(max_subdivisions >= 1, "max_subdivisions must be at least 1");
        QuadratureSpec {
            abs_tol,
            rel_tol,
            max_subdivisions,
        }
    }

    fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions_used: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NumericsError {
    /// The subdivision budget ran out before the error estimate met the
    /// tolerance; carries the best estimate found.
    QuadratureNonConvergence(IntegrationResult),
    /// `find_root` was handed endpoints whose function values do not bracket
    /// a sign change.
    InvalidBracket { lo: f64, hi: f64 },
}

impl fmt::Display for NumericsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericsError::QuadratureNonConvergence(r) => write!(
                f,
                "quadrature did not converge: value {} with error estimate {} after {} subdivisions",
                r.value, r.error_estimate, r.subdivisions_used
            ),
            NumericsError::InvalidBracket { lo, hi } => {
                write!(f, "no sign change on bracket [{lo}, {hi}]")
            }
        }
    }
}

impl core::error::Error for NumericsError {}

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK abscissae
// and weights). XGK holds the positive abscissae in decreasing order with the
// center last; WG holds the Gauss weights for the odd-indexed abscissae.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[allow(clippy::excessive_precision)]
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

/// Scale a raw Kronrod-minus-Gauss difference into a usable error estimate,
/// following the QUADPACK heuristic.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = math::pow(200.0 * scaled / res_asc, 1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

/// One 15-point Gauss-Kronrod evaluation on `[lo, hi]`; returns the Kronrod
/// value and the rescaled error estimate. All nodes are interior, so the
/// endpoints themselves are never evaluated.
fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = f(center);

    let mut fv1 = [0.0_f64; 7];
    let mut fv2 = [0.0_f64; 7];

    let mut res_gauss = f_center * WG[3];
    let mut res_kronrod = f_center * WGK[7];
    let mut res_abs = res_kronrod.abs();

    for (j, wg) in WG.iter().enumerate().take(3) {
        let idx = 2 * j + 1;
        let off = half * XGK[idx];
        let f1 = f(center - off);
        let f2 = f(center + off);
        fv1[idx] = f1;
        fv2[idx] = f2;
        res_gauss += wg * (f1 + f2);
        res_kronrod += WGK[idx] * (f1 + f2);
        res_abs += WGK[idx] * (f1.abs() + f2.abs());
    }

    for j in 0..4 {
        let idx = 2 * j;
        let off = half * XGK[idx];
        let f1 = f(center - off);
        let f2 = f(center + off);
        fv1[idx] = f1;
        fv2[idx] = f2;
        res_kronrod += WGK[idx] * (f1 + f2);
        res_abs += WGK[idx] * (f1.abs() + f2.abs());
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = (res_kronrod - res_gauss) * half;
    let value = res_kronrod * half;
    (value, rescale_error(err, res_abs * half.abs(), res_asc * half.abs()))
}

#[derive(Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    splittable: bool,
}

fn eval_segment<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Segment {
    let (value, error) = gauss_kronrod_15(f, lo, hi);
    let mid = 0.5 * (lo + hi);
    Segment {
        lo,
        hi,
        value,
        error,
        splittable: mid > lo && mid < hi,
    }
}

/// Adaptive integration of `f` over the finite interval `[lo, hi]`.
///
/// Converges when the summed error estimate drops below
/// `max(abs_tol, rel_tol * |value|)`; otherwise reports the best estimate in
/// the non-convergence error.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    spec: &QuadratureSpec,
) -> Result<IntegrationResult, NumericsError> {
    assert!(lo < hi, "integration interval must satisfy lo < hi");

    let mut segments: Vec<Segment> = Vec::new();
    segments.push(eval_segment(&f, lo, hi));
    let mut subdivisions = 0_u32;

    loop {
        let mut value = 0.0;
        let mut error = 0.0;
        for s in &segments {
            value += s.value;
            error += s.error;
        }

        if error <= spec.tolerance_for(value) {
            return Ok(IntegrationResult {
                value,
                error_estimate: error,
                subdivisions_used: subdivisions,
            });
        }

        let mut worst: Option<usize> = None;
        let mut worst_err = 0.0;
        for (i, s) in segments.iter().enumerate() {
            if s.splittable && s.error > worst_err {
                worst_err = s.error;
                worst = Some(i);
            }
        }

        let (idx, exhausted) = match worst {
            Some(i) if subdivisions < spec.max_subdivisions => (i, false),
            _ => (0, true),
        };
        if exhausted {
            return Err(NumericsError::QuadratureNonConvergence(IntegrationResult {
                value,
                error_estimate: error,
                subdivisions_used: subdivisions,
            }));
        }

        let seg = segments.swap_remove(idx);
        let mid = 0.5 * (seg.lo + seg.hi);
        segments.push(eval_segment(&f, seg.lo, mid));
        segments.push(eval_segment(&f, mid, seg.hi));
        subdivisions += 1;
    }
}

/// Integrate `f` over `[lo, +inf)` by splitting at `max(lo, 1)` and mapping
/// the unbounded part through `x = 1/u`. Requires decay at least like
/// `x^-2` for the transformed integrand to stay bounded.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    spec: &QuadratureSpec,
) -> Result<IntegrationResult, NumericsError> {
    let cut = lo.max(1.0);

    let tail = integrate_adaptive(
        |u| {
            let x = 1.0 / u;
            let v = f(x);
            // zero density shortcut also dodges 0 * inf when x overflows
            if v == 0.0 {
                0.0
            } else {
                (v * x) * x
            }
        },
        0.0,
        1.0 / cut,
        spec,
    )?;

    if cut > lo {
        let head = integrate_adaptive(&f, lo, cut, spec)?;
        Ok(IntegrationResult {
            value: head.value + tail.value,
            error_estimate: head.error_estimate + tail.error_estimate,
            subdivisions_used: head.subdivisions_used + tail.subdivisions_used,
        })
    } else {
        Ok(tail)
    }
}

/// Bracketed root finding by a bisection/secant hybrid.
///
/// Requires `f(lo)` and `f(hi)` to differ in sign. Stops when `|f(x)| <= tol`
/// or the bracket width drops below `tol`; the result always stays inside the
/// initial bracket.
pub fn find_root<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64, NumericsError> {
    assert!(tol > 0.0, "tolerance must be positive");
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let mut fb = f(b);

    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(NumericsError::InvalidBracket { lo, hi });
    }

    for _ in 0..200 {
        // secant step, replaced by bisection when it leaves the bracket
        // or fails to shrink it meaningfully
        let mid = 0.5 * (a + b);
        let mut x = if fb != fa {
            b - fb * (b - a) / (fb - fa)
        } else {
            mid
        };
        let width = b - a;
        if !(x > a && x < b) || (x - a).min(b - x) < 0.01 * width {
            x = mid;
        }

        let fx = f(x);
        if fx.abs() <= tol {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        if b - a <= tol {
            break;
        }
    }
    Ok(0.5 * (a + b))
}

/// Golden-section minimization of a unimodal `f` on `[lo, hi]`.
///
/// Returns `(x, f(x))` with `x` within `tol` of the minimizer when `f` is
/// unimodal; otherwise the best point seen. Probes are strictly interior.
pub fn minimize_scalar<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    assert!(lo < hi, "search interval must satisfy lo < hi");
    assert!(tol > 0.0, "tolerance must be positive");

    const INV_PHI: f64 = 0.618_033_988_749_894_9;

    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);

    while b - a > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        if x1 >= x2 {
            break; // interval no longer resolvable in f64
        }
    }

    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Minimize `f(x, y)` on a box by coordinate descent with golden-section line
/// searches, restarted from a 5x5 grid of interior starting points, then
/// polished with a damped finite-difference Newton stage. Returns the best
/// `(x, y, f(x, y))` across all starts.
pub fn minimize_bivariate<F: Fn(f64, f64) -> f64>(
    f: F,
    x_bounds: (f64, f64),
    y_bounds: (f64, f64),
    tol: f64,
) -> (f64, f64, f64) {
    assert!(x_bounds.0 < x_bounds.1 && y_bounds.0 < y_bounds.1);
    assert!(tol > 0.0, "tolerance must be positive");

    const GRID: usize = 5;
    let mut best = (f64::NAN, f64::NAN, f64::INFINITY);

    for i in 0..GRID {
        for j in 0..GRID {
            let fx = (i + 1) as f64 / (GRID + 1) as f64;
            let fy = (j + 1) as f64 / (GRID + 1) as f64;
            let mut x = x_bounds.0 + fx * (x_bounds.1 - x_bounds.0);
            let mut y = y_bounds.0 + fy * (y_bounds.1 - y_bounds.0);
            let mut fxy = f(x, y);

            for _ in 0..120 {
                let (nx, _) = minimize_scalar(|t| f(t, y), x_bounds.0, x_bounds.1, tol);
                let (ny, nf) = minimize_scalar(|t| f(nx, t), y_bounds.0, y_bounds.1, tol);
                let moved = (nx - x).abs().max((ny - y).abs());
                x = nx;
                y = ny;
                fxy = nf;
                if moved < tol {
                    break;
                }
            }

            if fxy < best.2 {
                best = (x, y, fxy);
            }
        }
    }

    newton_polish(&f, best, x_bounds, y_bounds)
}

/// Push a near-optimal interior point to the position accuracy that value
/// comparisons alone cannot reach: central differences cancel the roundoff
/// plateau around the minimum, so a few damped Newton steps recover several
/// more digits in the coordinates.
fn newton_polish<F: Fn(f64, f64) -> f64>(
    f: &F,
    start: (f64, f64, f64),
    x_bounds: (f64, f64),
    y_bounds: (f64, f64),
) -> (f64, f64, f64) {
    const H_GRAD: f64 = 1e-5;
    const H_HESS: f64 = 1e-4;

    let (mut x, mut y, mut fxy) = start;
    if !fxy.is_finite() {
        return start;
    }

    for _ in 0..16 {
        let gx = (f(x + H_GRAD, y) - f(x - H_GRAD, y)) / (2.0 * H_GRAD);
        let gy = (f(x, y + H_GRAD) - f(x, y - H_GRAD)) / (2.0 * H_GRAD);
        let fxx = (f(x + H_HESS, y) - 2.0 * fxy + f(x - H_HESS, y)) / (H_HESS * H_HESS);
        let fyy = (f(x, y + H_HESS) - 2.0 * fxy + f(x, y - H_HESS)) / (H_HESS * H_HESS);
        let fxy2 = (f(x + H_HESS, y + H_HESS) - f(x + H_HESS, y - H_HESS)
            - f(x - H_HESS, y + H_HESS)
            + f(x - H_HESS, y - H_HESS))
            / (4.0 * H_HESS * H_HESS);

        let det = fxx * fyy - fxy2 * fxy2;
        if !(gx.is_finite() && gy.is_finite() && det.is_finite()) || det.abs() < 1e-30 {
            break;
        }

        let mut dx = -(fyy * gx - fxy2 * gy) / det;
        let mut dy = -(fxx * gy - fxy2 * gx) / det;

        let mut accepted = false;
        for _ in 0..8 {
            let nx = (x + dx).clamp(x_bounds.0, x_bounds.1);
            let ny = (y + dy).clamp(y_bounds.0, y_bounds.1);
            let nf = f(nx, ny);
            // allow value ties: steps below the roundoff plateau still
            // improve the position
            if nf.is_finite() && nf <= fxy + 1e-13 * (1.0 + fxy.abs()) {
                accepted = !(nx == x && ny == y);
                x = nx;
                y = ny;
                fxy = nf.min(fxy);
                break;
            }
            dx *= 0.5;
            dy *= 0.5;
        }
        if !accepted || dx.abs().max(dy.abs()) < 1e-13 {
            break;
        }
    }

    (x, y, fxy)
}
