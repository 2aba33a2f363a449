//! Extremal quantities for triangles of unit inradius: the minimum
//! perimeter, the side infimum, and the minimum sum of two sides.
//!
//! The closed forms come from the isosceles family: eliminating the equal
//! sides through Heron's formula gives `v(w) = (w^2 + 4) w / (2 (w^2 - 4))`,
//! whose stationary base is `w* = sqrt(8 + 4 sqrt 5)` with
//! `u + v = sqrt(22 + 10 sqrt 5)` and apex cosine `sqrt 5 - 2`. The numeric
//! route searches the full two-gap space without assuming symmetry and is
//! expected to land on the same point.

use core::f64::consts::PI;
use core::fmt;

use crate::math;
use crate::numerics;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OptimizeError {
    /// `v_of_w` needs a base longer than 2; shorter bases cannot close a
    /// unit-inradius triangle.
    BaseTooShort { w: f64 },
}

impl fmt::Display for OptimizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OptimizeError::BaseTooShort { w } => {
                write!(f, "base {w} is not above 2, no unit-inradius isosceles triangle exists")
            }
        }
    }
}

impl core::error::Error for OptimizeError {}

/// The minimizing two-side configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSideOptimum {
    /// Base side left free while `u + v` is minimized.
    pub w_star: f64,
    /// Minimal value of `u + v`.
    pub sum_uv: f64,
    /// Angle between the two minimized sides, radians.
    pub apex_angle: f64,
    /// Cosine of the apex angle; equals `sqrt 5 - 2`, the reciprocal golden
    /// mean cubed.
    pub cos_apex: f64,
}

/// Minimum perimeter over all triangles circumscribing the unit circle,
/// attained by the equilateral one: `6 sqrt 3`.
pub fn min_perimeter() -> f64 {
    6.0 * math::sqrt(3.0)
}

/// Infimum of a single side length. Not attained: the bound 2 is approached
/// as the other two sides become parallel.
pub fn side_infimum() -> f64 {
    2.0
}

/// Equal-side length of the unit-inradius isosceles triangle with base `w`:
/// `v = (w^2 + 4) w / (2 (w^2 - 4))` for `w > 2`.
pub fn v_of_w(w: f64) -> Result<f64, OptimizeError> {
    if !(w > 2.0) {
        return Err(OptimizeError::BaseTooShort { w });
    }
    Ok((w * w + 4.0) * w / (2.0 * (w * w - 4.0)))
}

/// Closed-form two-side optimum.
pub fn two_side_min_closed() -> TwoSideOptimum {
    let sqrt5 = math::sqrt(5.0);
    let cos_apex = sqrt5 - 2.0;
    TwoSideOptimum {
        w_star: math::sqrt(8.0 + 4.0 * sqrt5),
        sum_uv: math::sqrt(22.0 + 10.0 * sqrt5),
        apex_angle: math::acos(cos_apex),
        cos_apex,
    }
}

const GAP_MARGIN: f64 = 1e-3;

fn gap_objective(g1: f64, g2: f64, weight_third: f64) -> f64 {
    let g3 = 2.0 * PI - g1 - g2;
    if g3 <= 0.0 || g3 >= PI {
        return f64::INFINITY;
    }
    math::tan(0.5 * g1) + math::tan(0.5 * g2) + weight_third * math::tan(0.5 * g3)
}

/// Two-side minimum by an unconstrained search over the two-gap space,
/// without the isosceles assumption. Parametrization: gaps `(g1, g2)` range
/// over `(0, pi)^2` with `g3 = 2 pi - g1 - g2` forced into `(0, pi)`; the two
/// minimized sides are the ones meeting at the vertex opposite the base, so
/// `u + v = tan(g1/2) + tan(g2/2) + 2 tan(g3/2)`.
///
/// Returns the optimum and `|u - v|` at the optimum, which vanishes if the
/// symmetry argument is right.
pub fn two_side_min_numeric(tol: f64) -> (TwoSideOptimum, f64) {
    assert!(tol > 0.0, "tolerance must be positive");
    let (g1, g2, sum_uv) = numerics::minimize_bivariate(
        |a, b| gap_objective(a, b, 2.0),
        (GAP_MARGIN, PI - GAP_MARGIN),
        (GAP_MARGIN, PI - GAP_MARGIN),
        tol,
    );
    let t1 = math::tan(0.5 * g1);
    let t2 = math::tan(0.5 * g2);
    let g3 = 2.0 * PI - g1 - g2;
    // the apex sits at the vertex subtending g3, between the two summed sides
    let apex_angle = PI - g3;
    let optimum = TwoSideOptimum {
        w_star: t1 + t2,
        sum_uv,
        apex_angle,
        cos_apex: math::cos(apex_angle),
    };
    (optimum, (t1 - t2).abs())
}

/// Minimum perimeter by the same two-gap search; cross-checks `6 sqrt 3`.
pub fn min_perimeter_numeric(tol: f64) -> f64 {
    assert!(tol > 0.0, "tolerance must be positive");
    let (_, _, half) = numerics::minimize_bivariate(
        |a, b| gap_objective(a, b, 1.0),
        (GAP_MARGIN, PI - GAP_MARGIN),
        (GAP_MARGIN, PI - GAP_MARGIN),
        tol,
    );
    2.0 * half
}
