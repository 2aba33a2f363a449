//! Closed-form densities, CDFs, quantiles and exact constants for the three
//! side-length models of a random tangent triangle.
//!
//! The three laws:
//!
//! * single tangent — the height of the crossing of two random tangents,
//!   one-sided Cauchy: `(2/pi) / (h^2 + 1)` on `h > 0`;
//! * naive convolution — sum of two independent such heights:
//!   `(8/pi^2) (l atan l + ln(l^2 + 1)) / ((l^2 + 4) l)` on `l > 0`;
//! * incircle conditioned — the same sum conditioned on the circle being the
//!   incircle: `16 (f(l) + g(l)) / (pi^2 (l^2 + 4) l)` on `l > 2`, where
//!   `f(l) = l (atan b - atan a)`, `g(l) = ln b - ln a` and `a <= b` are the
//!   roots of `k^2 - l k + 1`.

use core::cell::Cell;
use core::f64::consts::PI;
use core::fmt;

use crate::math;
use crate::numerics::{self, NumericsError};

pub use crate::numerics::QuadratureSpec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalyticError {
    /// An argument fell outside the domain of the operation.
    Domain { what: &'static str, value: f64 },
    /// Quadrature did not converge; carries the value it reached and the
    /// error estimate it achieved.
    Quadrature { value: f64, achieved: f64 },
    /// Quantile bracket expansion gave up before enclosing the target
    /// probability (heavy tail, `p` too close to 1).
    BracketExpansion { p: f64 },
    /// Root finding was handed an invalid bracket.
    InvalidBracket,
}

impl fmt::Display for AnalyticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyticError::Domain { what, value } => {
                write!(f, "{what}: argument {value} outside domain")
            }
            AnalyticError::Quadrature { value, achieved } => {
                write!(
                    f,
                    "quadrature did not converge (value {value}, achieved error {achieved})"
                )
            }
            AnalyticError::BracketExpansion { p } => {
                write!(f, "could not bracket quantile p = {p}")
            }
            AnalyticError::InvalidBracket => write!(f, "root bracket does not enclose the target"),
        }
    }
}

impl core::error::Error for AnalyticError {}

impl From<NumericsError> for AnalyticError {
    fn from(e: NumericsError) -> Self {
        match e {
            NumericsError::QuadratureNonConvergence(r) => AnalyticError::Quadrature {
                value: r.value,
                achieved: r.error_estimate,
            },
            NumericsError::InvalidBracket { .. } => AnalyticError::InvalidBracket,
        }
    }
}

/// Selector among the three side-length laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DensityModel {
    SingleTangent,
    NaiveConvolution,
    IncircleConditioned,
}

impl DensityModel {
    /// Infimum of the support: 0, 0 and 2 respectively.
    pub fn support_lower_bound(self) -> f64 {
        match self {
            DensityModel::SingleTangent | DensityModel::NaiveConvolution => 0.0,
            DensityModel::IncircleConditioned => 2.0,
        }
    }

    /// Density as a total function: zero outside the open support.
    pub fn pdf(self, x: f64) -> f64 {
        match self {
            DensityModel::SingleTangent => {
                if x > 0.0 {
                    single_tangent_density(x)
                } else {
                    0.0
                }
            }
            DensityModel::NaiveConvolution => {
                if x > 0.0 {
                    naive_density(x)
                } else {
                    0.0
                }
            }
            DensityModel::IncircleConditioned => density_incircle(x),
        }
    }
}

fn single_tangent_density(h: f64) -> f64 {
    (2.0 / PI) / (h * h + 1.0)
}

fn naive_density(l: f64) -> f64 {
    // ln(l^2 + 1) would overflow through l^2 long before the density itself
    // underflows; switch to 2 ln l where the +1 is far below one ulp
    let log_term = if l > 1e150 {
        2.0 * math::ln(l)
    } else {
        math::ln(l * l + 1.0)
    };
    (8.0 / (PI * PI)) * (l * math::atan(l) + log_term) / ((l * l + 4.0) * l)
}

/// One-sided Cauchy density `(2/pi) / (h^2 + 1)` for `h > 0`.
pub fn density_single(h: f64) -> Result<f64, AnalyticError> {
    if !(h > 0.0) {
        return Err(AnalyticError::Domain {
            what: "density_single",
            value: h,
        });
    }
    Ok(single_tangent_density(h))
}

/// Unconditioned convolution density
/// `(8/pi^2) (l atan l + ln(l^2+1)) / ((l^2+4) l)` for `l > 0`.
pub fn density_naive(l: f64) -> Result<f64, AnalyticError> {
    if !(l > 0.0) {
        return Err(AnalyticError::Domain {
            what: "density_naive",
            value: l,
        });
    }
    Ok(naive_density(l))
}

/// Joint density of the two tangent heights `(h, k)`:
/// `(8/pi^2) / ((h^2+1)(k^2+1))` on `h k > 1`, zero on `h k <= 1`.
pub fn density_bivariate_hk(h: f64, k: f64) -> Result<f64, AnalyticError> {
    if !(h > 0.0) {
        return Err(AnalyticError::Domain {
            what: "density_bivariate_hk",
            value: h,
        });
    }
    if !(k > 0.0) {
        return Err(AnalyticError::Domain {
            what: "density_bivariate_hk",
            value: k,
        });
    }
    if h * k <= 1.0 {
        return Ok(0.0);
    }
    Ok((8.0 / (PI * PI)) / ((h * h + 1.0) * (k * k + 1.0)))
}

/// Roots `(a, b)` of `k^2 - l k + 1` for `l > 2`: the convolution in the
/// incircle model runs over `k` in `[a, b]`. Satisfies `a b = 1`,
/// `a + b = l`, `0 < a < 1 < b < l`.
///
/// `b` is computed from the stable quadratic branch and `a` as `1/b`, so no
/// subtractive cancellation occurs for large `l`.
pub fn integration_limits(l: f64) -> Result<(f64, f64), AnalyticError> {
    if !(l > 2.0) {
        return Err(AnalyticError::Domain {
            what: "integration_limits",
            value: l,
        });
    }
    let disc = math::sqrt((l - 2.0) * (l + 2.0));
    let b = 0.5 * (l + disc);
    Ok((1.0 / b, b))
}

/// `f(l) = l (atan b - atan a)`, evaluated as `l atan(sqrt(l^2-4)/2)` via
/// `atan b - atan a = atan((b - a)/(1 + a b))` with `a b = 1`.
pub fn f_term(l: f64) -> Result<f64, AnalyticError> {
    if !(l > 2.0) {
        return Err(AnalyticError::Domain {
            what: "f_term",
            value: l,
        });
    }
    let half_gap = 0.5 * math::sqrt((l - 2.0) * (l + 2.0));
    Ok(l * math::atan(half_gap))
}

/// `g(l) = ln b - ln a`, evaluated in the stable form `2 acosh(l/2)`.
pub fn g_term(l: f64) -> Result<f64, AnalyticError> {
    if !(l > 2.0) {
        return Err(AnalyticError::Domain {
            what: "g_term",
            value: l,
        });
    }
    Ok(2.0 * math::acosh(0.5 * l))
}

/// Side density under the incircle condition:
/// `16 (f(l) + g(l)) / (pi^2 (l^2 + 4) l)` for `l > 2`, zero for `l <= 2`.
pub fn density_incircle(l: f64) -> f64 {
    if l <= 2.0 {
        return 0.0;
    }
    let half_gap = 0.5 * math::sqrt((l - 2.0) * (l + 2.0));
    let f = l * math::atan(half_gap);
    let g = 2.0 * math::acosh(0.5 * l);
    16.0 * (f + g) / (PI * PI * (l * l + 4.0) * l)
}

/// Marginal density of the upper contact angle: `2 (pi - alpha) / pi^2` on
/// `(0, pi)`, zero elsewhere.
pub fn marginal_alpha(alpha: f64) -> f64 {
    if alpha > 0.0 && alpha < PI {
        2.0 * (PI - alpha) / (PI * PI)
    } else {
        0.0
    }
}

/// Closed-form CDF of the contact-angle marginal: `(2 pi a - a^2) / pi^2`.
pub fn marginal_alpha_cdf(alpha: f64) -> f64 {
    if alpha <= 0.0 {
        0.0
    } else if alpha >= PI {
        1.0
    } else {
        alpha * (2.0 * PI - alpha) / (PI * PI)
    }
}

/// CDF of `model` at `x` by adaptive quadrature of the density from the
/// support lower bound.
pub fn cdf(model: DensityModel, x: f64, spec: &QuadratureSpec) -> Result<f64, AnalyticError> {
    let lb = model.support_lower_bound();
    if x <= lb {
        return Ok(0.0);
    }
    let r = numerics::integrate_adaptive(|t| model.pdf(t), lb, x, spec)?;
    Ok(r.value.clamp(0.0, 1.0))
}

/// CDF values for an ascending slice of abscissae, accumulating segment
/// integrals instead of re-integrating from the support bound each time.
pub fn cdf_grid(
    model: DensityModel,
    ascending: &[f64],
    spec: &QuadratureSpec,
) -> Result<alloc::vec::Vec<f64>, AnalyticError> {
    let lb = model.support_lower_bound();
    let mut out = alloc::vec::Vec::with_capacity(ascending.len());
    let mut acc = 0.0_f64;
    let mut prev = lb;
    for &x in ascending {
        debug_assert!(x >= prev || x <= lb, "abscissae must be ascending");
        if x > prev {
            acc += numerics::integrate_adaptive(|t| model.pdf(t), prev, x, spec)?.value;
            prev = x;
        }
        out.push(acc.clamp(0.0, 1.0));
    }
    Ok(out)
}

/// Quantile of `model` at probability `p` by bracket expansion and bisection/
/// secant root finding on the quadrature CDF. `tol` bounds `|cdf(x) - p|`.
pub fn quantile(
    model: DensityModel,
    p: f64,
    spec: &QuadratureSpec,
    tol: f64,
) -> Result<f64, AnalyticError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(AnalyticError::Domain {
            what: "quantile",
            value: p,
        });
    }
    if !(tol > 0.0) {
        return Err(AnalyticError::Domain {
            what: "quantile tolerance",
            value: tol,
        });
    }

    let lb = model.support_lower_bound();
    let lo = lb + 1e-9;
    let mut hi = (2.0 * lb).max(1.0);
    let mut expansions = 0;
    while cdf(model, hi, spec)? < p {
        hi *= 2.0;
        expansions += 1;
        if expansions > 70 {
            return Err(AnalyticError::BracketExpansion { p });
        }
    }

    let failure: Cell<Option<AnalyticError>> = Cell::new(None);
    let objective = |x: f64| match cdf(model, x, spec) {
        Ok(v) => v - p,
        Err(e) => {
            failure.set(Some(e));
            f64::NAN
        }
    };
    let root = numerics::find_root(objective, lo, hi, tol);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(root?)
}

/// Probability that the triangle is acute, via the iterated double integral
/// of the constant contact density `2/pi^2` over
/// `{0 < alpha < pi/2, 0 < beta < pi/2, alpha + beta > pi/2}`. Equals 1/4.
pub fn acute_probability_exact(spec: &QuadratureSpec) -> Result<f64, AnalyticError> {
    let density = 2.0 / (PI * PI);
    let inner_failure: Cell<Option<NumericsError>> = Cell::new(None);
    let outer = numerics::integrate_adaptive(
        |alpha| {
            let beta_lo = 0.5 * PI - alpha;
            match numerics::integrate_adaptive(|_| density, beta_lo, 0.5 * PI, spec) {
                Ok(r) => r.value,
                Err(e) => {
                    inner_failure.set(Some(e));
                    f64::NAN
                }
            }
        },
        0.0,
        0.5 * PI,
        spec,
    );
    if let Some(e) = inner_failure.take() {
        return Err(e.into());
    }
    Ok(outer?.value)
}
