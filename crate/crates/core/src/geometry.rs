//! Tangent triangles of the unit circle.
//!
//! A configuration is fixed by three contact points on the circle: one pinned
//! at angle `pi` (the vertical tangent through `(-1, 0)`), one at angle
//! `alpha` on the upper semicircle, one at angle `-beta` on the lower
//! semicircle. The circle is the incircle of the resulting triangle exactly
//! when no semicircle contains all three contact points, i.e. when every
//! angular gap between consecutive contacts stays below `pi`.

use core::f64::consts::PI;
use core::fmt;

use crate::math;

/// Tolerance window around `pi` inside which a gap is treated as degenerate:
/// the corresponding vertex runs off to infinity.
pub const DEGENERATE_GAP_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeometryError {
    /// A contact angle fell outside the open interval `(0, pi)`.
    ContactAngleOutOfRange { value: f64 },
    /// A gap angle fell outside the open interval `(0, pi)`.
    GapOutOfRange { value: f64 },
    /// The three gaps of a would-be `GapTriple` do not sum to `2 pi`.
    GapSumMismatch { sum: f64 },
    /// A gap was not positive.
    NonPositiveGap { value: f64 },
    /// An incircle configuration was required but the contact points all fit
    /// on a semicircle.
    NotAnIncircle,
    /// A gap lies within [`DEGENERATE_GAP_MARGIN`] of `pi`; the triangle is
    /// numerically unusable.
    DegenerateGap { value: f64 },
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::ContactAngleOutOfRange { value } => {
                write!(f, "contact angle {value} outside (0, pi)")
            }
            GeometryError::GapOutOfRange { value } => {
                write!(f, "gap angle {value} outside (0, pi)")
            }
            GeometryError::GapSumMismatch { sum } => {
                write!(f, "gap angles sum to {sum}, expected 2 pi")
            }
            GeometryError::NonPositiveGap { value } => {
                write!(f, "gap angle {value} is not positive")
            }
            GeometryError::NotAnIncircle => {
                write!(f, "contact points lie on a semicircle (excircle configuration)")
            }
            GeometryError::DegenerateGap { value } => {
                write!(f, "gap angle {value} is too close to pi")
            }
        }
    }
}

impl core::error::Error for GeometryError {}

/// The pair of free contact angles `(alpha, beta)`, both in `(0, pi)`.
///
/// `alpha` is measured counterclockwise to the upper contact point,
/// `beta` clockwise to the lower one. `alpha + beta < pi` is the incircle
/// condition; it is checked by [`classify`], not here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactAngles {
    alpha: f64,
    beta: f64,
}

impl ContactAngles {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, GeometryError> {
        for value in [alpha, beta] {
            if !(value > 0.0 && value < PI) {
                return Err(GeometryError::ContactAngleOutOfRange { value });
            }
        }
        Ok(ContactAngles { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// The three angular gaps between consecutive contact points, in the order
/// (pinned-to-alpha, pinned-to-beta, alpha-to-beta). Gaps are positive and
/// sum to `2 pi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapTriple {
    gamma1: f64,
    gamma2: f64,
    gamma3: f64,
}

impl GapTriple {
    const SUM_TOLERANCE: f64 = 1e-12;

    pub fn new(gamma1: f64, gamma2: f64, gamma3: f64) -> Result<Self, GeometryError> {
        for value in [gamma1, gamma2, gamma3] {
            if !(value > 0.0) {
                return Err(GeometryError::NonPositiveGap { value });
            }
        }
        let sum = gamma1 + gamma2 + gamma3;
        if (sum - 2.0 * PI).abs() > Self::SUM_TOLERANCE {
            return Err(GeometryError::GapSumMismatch { sum });
        }
        Ok(GapTriple {
            gamma1,
            gamma2,
            gamma3,
        })
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    pub fn gamma3(&self) -> f64 {
        self.gamma3
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.gamma1, self.gamma2, self.gamma3]
    }

    pub fn max_gap(&self) -> f64 {
        self.gamma1.max(self.gamma2).max(self.gamma3)
    }
}

/// Whether the unit circle is the incircle or an excircle of the triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TangencyClass {
    Incircle,
    Excircle,
}

/// A triangle circumscribing the unit circle, built from explicit tangent
/// line intersections. `sides[i]` lies opposite `vertices[i]`, and
/// `sides[0]` is the side carried by the pinned vertical tangent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircumscribedTriangle {
    vertices: [[f64; 2]; 3],
    sides: [f64; 3],
    angles: [f64; 3],
    perimeter: f64,
    area: f64,
    contacts: ContactAngles,
}

impl CircumscribedTriangle {
    pub fn vertices(&self) -> [[f64; 2]; 3] {
        self.vertices
    }

    pub fn sides(&self) -> [f64; 3] {
        self.sides
    }

    pub fn angles(&self) -> [f64; 3] {
        self.angles
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn contacts(&self) -> ContactAngles {
        self.contacts
    }

    /// Distance from the origin to the supporting line of each side; equals 1
    /// when the unit circle is the incircle.
    pub fn side_line_distances(&self) -> [f64; 3] {
        let [v0, v1, v2] = self.vertices;
        [
            line_distance_to_origin(v1, v2),
            line_distance_to_origin(v0, v2),
            line_distance_to_origin(v0, v1),
        ]
    }
}

fn line_distance_to_origin(p: [f64; 2], q: [f64; 2]) -> f64 {
    let dx = q[0] - p[0];
    let dy = q[1] - p[1];
    let cross = p[0] * q[1] - p[1] * q[0];
    cross.abs() / math::sqrt(dx * dx + dy * dy)
}

/// Angular gaps between consecutive contact points:
/// `(pi - alpha, pi - beta, alpha + beta)`.
pub fn gaps_from_contacts(c: ContactAngles) -> GapTriple {
    GapTriple {
        gamma1: PI - c.alpha,
        gamma2: PI - c.beta,
        gamma3: c.alpha + c.beta,
    }
}

/// Incircle iff every gap is below `pi`. A gap of exactly `pi` puts all
/// contact points on a closed semicircle and counts as excircle.
pub fn classify(g: GapTriple) -> TangencyClass {
    if g.max_gap() < PI {
        TangencyClass::Incircle
    } else {
        TangencyClass::Excircle
    }
}

/// Distance from the vertex between two tangents with angular gap `gamma` to
/// either of its contact points: `tan(gamma / 2)`.
pub fn tangent_length(gamma: f64) -> Result<f64, GeometryError> {
    if !(gamma > 0.0 && gamma < PI) {
        return Err(GeometryError::GapOutOfRange { value: gamma });
    }
    Ok(math::tan(0.5 * gamma))
}

/// Side lengths indexed by the tangent that carries them: side `i` is the sum
/// of the tangent lengths of the two gaps adjacent to contact point `i`.
/// Fails when any gap reaches `pi` (a vertex at infinity).
pub fn side_lengths(g: GapTriple) -> Result<[f64; 3], GeometryError> {
    if classify(g) != TangencyClass::Incircle {
        return Err(GeometryError::NotAnIncircle);
    }
    let t1 = tangent_length(g.gamma1)?;
    let t2 = tangent_length(g.gamma2)?;
    let t3 = tangent_length(g.gamma3)?;
    Ok([t1 + t2, t1 + t3, t2 + t3])
}

/// Interior angles indexed by gap: the vertex subtending gap `gamma_i` has
/// angle `pi - gamma_i`. They sum to `pi`.
pub fn vertex_angles(g: GapTriple) -> Result<[f64; 3], GeometryError> {
    if classify(g) != TangencyClass::Incircle {
        return Err(GeometryError::NotAnIncircle);
    }
    Ok([PI - g.gamma1, PI - g.gamma2, PI - g.gamma3])
}

/// True iff all vertex angles are strictly below `pi/2`, i.e. all gaps exceed
/// `pi/2`. Right triangles count as not acute.
pub fn is_acute(g: GapTriple) -> bool {
    g.gamma1 > 0.5 * PI && g.gamma2 > 0.5 * PI && g.gamma3 > 0.5 * PI
}

/// Intersection of the tangents touching the circle at angles `phi1`, `phi2`.
/// The tangent at angle `phi` is the line `x cos(phi) + y sin(phi) = 1`.
fn tangent_intersection(phi1: f64, phi2: f64) -> [f64; 2] {
    let d = math::sin(phi2 - phi1);
    [
        (math::sin(phi2) - math::sin(phi1)) / d,
        (math::cos(phi1) - math::cos(phi2)) / d,
    ]
}

fn distance(p: [f64; 2], q: [f64; 2]) -> f64 {
    let dx = q[0] - p[0];
    let dy = q[1] - p[1];
    math::sqrt(dx * dx + dy * dy)
}

fn interior_angle(at: [f64; 2], p: [f64; 2], q: [f64; 2]) -> f64 {
    let ux = p[0] - at[0];
    let uy = p[1] - at[1];
    let vx = q[0] - at[0];
    let vy = q[1] - at[1];
    let dot = ux * vx + uy * vy;
    let norms = math::sqrt(ux * ux + uy * uy) * math::sqrt(vx * vx + vy * vy);
    math::acos((dot / norms).clamp(-1.0, 1.0))
}

/// Build the full triangle from contact angles via explicit tangent-line
/// intersections. Sides, angles, perimeter and area all come from the vertex
/// coordinates, independently of the tangent-length identities.
///
/// Fails on excircle configurations and on gaps within
/// [`DEGENERATE_GAP_MARGIN`] of `pi`.
pub fn triangle_from_contacts(c: ContactAngles) -> Result<CircumscribedTriangle, GeometryError> {
    let gaps = gaps_from_contacts(c);
    if classify(gaps) != TangencyClass::Incircle {
        return Err(GeometryError::NotAnIncircle);
    }
    for value in gaps.as_array() {
        if value > PI - DEGENERATE_GAP_MARGIN {
            return Err(GeometryError::DegenerateGap { value });
        }
    }

    // contact angles on the circle: pinned tangent, upper tangent, lower tangent
    let phi = [PI, c.alpha, -c.beta];

    // vertices[i] is opposite the side on tangent i
    let vertices = [
        tangent_intersection(phi[1], phi[2]),
        tangent_intersection(phi[0], phi[2]),
        tangent_intersection(phi[0], phi[1]),
    ];

    let sides = [
        distance(vertices[1], vertices[2]),
        distance(vertices[0], vertices[2]),
        distance(vertices[0], vertices[1]),
    ];

    let angles = [
        interior_angle(vertices[0], vertices[1], vertices[2]),
        interior_angle(vertices[1], vertices[0], vertices[2]),
        interior_angle(vertices[2], vertices[0], vertices[1]),
    ];

    let perimeter = sides[0] + sides[1] + sides[2];
    let [v0, v1, v2] = vertices;
    let area = 0.5
        * (v0[0] * (v1[1] - v2[1]) + v1[0] * (v2[1] - v0[1]) + v2[0] * (v0[1] - v1[1])).abs();

    Ok(CircumscribedTriangle {
        vertices,
        sides,
        angles,
        perimeter,
        area,
        contacts: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn contacts(alpha: f64, beta: f64) -> ContactAngles {
        ContactAngles::new(alpha, beta).unwrap()
    }

    #[test]
    fn contact_angles_reject_out_of_range() {
        assert!(ContactAngles::new(0.0, 1.0).is_err());
        assert!(ContactAngles::new(1.0, PI).is_err());
        assert!(ContactAngles::new(-0.1, 1.0).is_err());
        assert!(ContactAngles::new(1.0, 1.0).is_ok());
    }

    #[test]
    fn gaps_of_equilateral_contacts() {
        let g = gaps_from_contacts(contacts(PI / 3.0, PI / 3.0));
        assert!((g.gamma1() - 2.0 * PI / 3.0).abs() < 1e-15);
        assert!((g.gamma2() - 2.0 * PI / 3.0).abs() < 1e-15);
        assert!((g.gamma3() - 2.0 * PI / 3.0).abs() < 1e-15);
    }

    #[test]
    fn gaps_of_right_angled_contacts() {
        let g = gaps_from_contacts(contacts(PI / 2.0, PI / 4.0));
        assert!((g.gamma1() - PI / 2.0).abs() < 1e-15);
        assert!((g.gamma2() - 3.0 * PI / 4.0).abs() < 1e-15);
        assert!((g.gamma3() - 3.0 * PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn crowded_contacts_classify_as_excircle() {
        let g = gaps_from_contacts(contacts(0.9 * PI, 0.2 * PI));
        assert!((g.gamma1() - 0.1 * PI).abs() < 1e-12);
        assert!((g.gamma2() - 0.8 * PI).abs() < 1e-12);
        assert!((g.gamma3() - 1.1 * PI).abs() < 1e-12);
        assert_eq!(classify(g), TangencyClass::Excircle);
    }

    #[test]
    fn classify_boundary_semicircle_is_excircle() {
        let g = GapTriple::new(PI / 2.0, PI / 2.0, PI).unwrap();
        assert_eq!(classify(g), TangencyClass::Excircle);
    }

    #[test]
    fn classify_equilateral_is_incircle() {
        let third = 2.0 * PI / 3.0;
        let g = GapTriple::new(third, third, third).unwrap();
        assert_eq!(classify(g), TangencyClass::Incircle);
    }

    #[test]
    fn gap_triple_validates_sum() {
        assert!(matches!(
            GapTriple::new(1.0, 1.0, 1.0),
            Err(GeometryError::GapSumMismatch { .. })
        ));
        assert!(matches!(
            GapTriple::new(-1.0, PI, PI + 1.0),
            Err(GeometryError::NonPositiveGap { .. })
        ));
    }

    #[test]
    fn tangent_length_reference_values() {
        assert!((tangent_length(PI / 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((tangent_length(2.0 * PI / 3.0).unwrap() - SQRT3).abs() < 1e-15);
        // gap pi - theta gives cot(theta/2); at theta = pi/2 that is 1
        let theta = PI / 2.0;
        let h = 1.0 / (0.5 * theta).tan();
        assert!((tangent_length(PI - theta).unwrap() - h).abs() < 1e-15);
        assert!(tangent_length(0.0).is_err());
        assert!(tangent_length(PI).is_err());
    }

    #[test]
    fn equilateral_side_lengths() {
        let g = gaps_from_contacts(contacts(PI / 3.0, PI / 3.0));
        let s = side_lengths(g).unwrap();
        for side in s {
            assert!((side - 2.0 * SQRT3).abs() < 1e-12);
        }
        assert!((s.iter().sum::<f64>() - 6.0 * SQRT3).abs() < 1e-12);
    }

    #[test]
    fn pinned_side_approaches_infimum() {
        // alpha = pi/2, beta near pi/2 squeezes the pinned side toward 2
        let mut prev = f64::INFINITY;
        for eps in [1e-2, 1e-4, 1e-6] {
            let g = gaps_from_contacts(contacts(PI / 2.0, PI / 2.0 - eps));
            let s = side_lengths(g).unwrap();
            assert!(s[0] > 2.0);
            assert!(s[0] < prev);
            prev = s[0];
        }
        assert!(prev - 2.0 < 1e-5);
    }

    #[test]
    fn side_lengths_reject_excircle() {
        let g = gaps_from_contacts(contacts(0.9 * PI, 0.2 * PI));
        assert!(matches!(side_lengths(g), Err(GeometryError::NotAnIncircle)));
    }

    #[test]
    fn vertex_angles_reference_values() {
        let third = 2.0 * PI / 3.0;
        let g = GapTriple::new(third, third, third).unwrap();
        for a in vertex_angles(g).unwrap() {
            assert!((a - PI / 3.0).abs() < 1e-15);
        }

        let g = GapTriple::new(PI / 2.0, 3.0 * PI / 4.0, 3.0 * PI / 4.0).unwrap();
        let a = vertex_angles(g).unwrap();
        assert!((a[0] - PI / 2.0).abs() < 1e-15);
        assert!((a[1] - PI / 4.0).abs() < 1e-15);
        assert!((a[2] - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn acuteness_cases() {
        let third = 2.0 * PI / 3.0;
        assert!(is_acute(GapTriple::new(third, third, third).unwrap()));
        // right triangle: boundary gap pi/2 counts as not acute
        assert!(!is_acute(
            GapTriple::new(PI / 2.0, 3.0 * PI / 4.0, 3.0 * PI / 4.0).unwrap()
        ));
        assert!(!is_acute(
            GapTriple::new(0.4 * PI, 0.8 * PI, 0.8 * PI).unwrap()
        ));
    }

    #[test]
    fn equilateral_triangle_coordinates() {
        let t = triangle_from_contacts(contacts(PI / 3.0, PI / 3.0)).unwrap();
        for v in t.vertices() {
            let r = (v[0] * v[0] + v[1] * v[1]).sqrt();
            assert!((r - 2.0).abs() < 1e-12, "vertex radius {r}");
        }
        assert!((t.perimeter() - 6.0 * SQRT3).abs() < 1e-12);
        assert!((t.area() - t.perimeter() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn intro_construction_vertex() {
        // alpha = pi/2: the pinned and upper tangents cross at (-1, 1)
        let t = triangle_from_contacts(contacts(PI / 2.0, PI / 4.0)).unwrap();
        let v = t.vertices()[2];
        assert!((v[0] + 1.0).abs() < 1e-12);
        assert!((v[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_rejects_excircle_and_degenerate() {
        assert!(matches!(
            triangle_from_contacts(contacts(0.9 * PI, 0.2 * PI)),
            Err(GeometryError::NotAnIncircle)
        ));
        // alpha tiny: gap to the pinned contact is within the degeneracy margin
        assert!(matches!(
            triangle_from_contacts(contacts(1e-10, 0.5)),
            Err(GeometryError::DegenerateGap { .. })
        ));
    }

    #[test]
    fn incircle_line_distances_are_unit() {
        let t = triangle_from_contacts(contacts(1.1, 0.7)).unwrap();
        for d in t.side_line_distances() {
            assert!((d - 1.0).abs() < 1e-12);
        }
    }
}
