//! Focal distances to the fixed foci `(-1, 0)` and `(1, 0)`, the four
//! derived coordinate functions, and the curves they cut out.
//!
//! For a point `P` with distances `a = |PF1|` and `b = |PF2|`:
//!
//! | measure | value                    | level set                         |
//! |---------|--------------------------|-----------------------------------|
//! | `f`     | `a / b`                  | circle of the hyperbolic pencil   |
//! | `g`     | `(a^2 + b^2 - 4) / 2ab`  | circle of the elliptic pencil     |
//! | `h`     | `a - b`                  | right branch of a confocal hyperbola |
//! | `e`     | `a + b`                  | confocal ellipse                  |
//!
//! Inside the open positive quadrant any two of these determine the point.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Left focus.
pub const F1: Point = Point { s: -1.0, t: 0.0 };
/// Right focus.
pub const F2: Point = Point { s: 1.0, t: 0.0 };

/// Points closer than this to a focus or to a coordinate axis are rejected
/// wherever a downstream formula divides by the vanishing distance.
pub const GUARD_BAND: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub s: f64,
    pub t: f64,
}

impl Point {
    pub const fn new(s: f64, t: f64) -> Self {
        Self { s, t }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.s - other.s).hypot(self.t - other.t)
    }

    /// True for points of the open positive quadrant outside the guard band.
    pub fn in_quadrant(self) -> bool {
        self.s >= GUARD_BAND && self.t >= GUARD_BAND && self.s.is_finite() && self.t.is_finite()
    }

    pub(crate) fn require_quadrant(self) -> Result<Self> {
        if self.in_quadrant() {
            Ok(self)
        } else {
            Err(Error::OutsideQuadrant { s: self.s, t: self.t })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    /// Mirror in the x-axis: `t -> -t`.
    Horizontal,
    /// Mirror in the y-axis: `s -> -s`.
    Vertical,
    Both,
}

pub fn reflect(p: Point, axis: Axis) -> Point {
    match axis {
        Axis::Horizontal => Point::new(p.s, -p.t),
        Axis::Vertical => Point::new(-p.s, p.t),
        Axis::Both => Point::new(-p.s, -p.t),
    }
}

/// Distances `(a, b)` from `p` to the left and right focus.
pub fn focal_distances(p: Point) -> Result<(f64, f64)> {
    let a = p.distance(F1);
    let b = p.distance(F2);
    if a < GUARD_BAND || b < GUARD_BAND {
        return Err(Error::FocusCoincidence { s: p.s, t: p.t });
    }
    Ok((a, b))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FocalMeasures {
    pub a: f64,
    pub b: f64,
    pub f: f64,
    pub g: f64,
    pub h: f64,
    pub e: f64,
}

impl FocalMeasures {
    pub fn get(&self, m: Measure) -> f64 {
        match m {
            Measure::F => self.f,
            Measure::G => self.g,
            Measure::H => self.h,
            Measure::E => self.e,
        }
    }
}

/// Which of the four coordinate functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Measure {
    F,
    G,
    H,
    E,
}

/// Measures at a quadrant point.
///
/// `h` is evaluated as `4s / e`, which equals `a - b` because
/// `a^2 - b^2 = 4s`, and stays accurate near the y-axis where `a - b`
/// cancels.
pub fn measures(p: Point) -> Result<FocalMeasures> {
    let p = p.require_quadrant()?;
    let (a, b) = focal_distances(p)?;
    let e = a + b;
    let h = 4.0 * p.s / e;
    Ok(FocalMeasures {
        a,
        b,
        f: a / b,
        g: (a * a + b * b - 4.0) / (2.0 * a * b),
        h,
        e,
    })
}

/// `e - 2` and `2 - h`, evaluated without cancellation.
///
/// Both gaps vanish on the quadrant boundary (the segment between the foci
/// and the x-axis beyond the right focus) and the chart inverses take
/// logarithms of them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct BoundaryGaps {
    pub e_minus_two: f64,
    pub two_minus_h: f64,
}

pub(crate) fn boundary_gaps(p: Point, m: &FocalMeasures) -> BoundaryGaps {
    let t2 = p.t * p.t;
    // a - (1 + s) and b - |1 - s| are t^2 / (sum) exactly.
    let a_gap = t2 / (m.a + 1.0 + p.s);
    let b_from_left = if p.s < 1.0 {
        t2 / (m.b + 1.0 - p.s)
    } else {
        m.b - (1.0 - p.s)
    };
    let b_from_right = if p.s > 1.0 {
        t2 / (m.b + p.s - 1.0)
    } else {
        m.b - (p.s - 1.0)
    };
    let e_minus_two = a_gap + b_from_left;
    let e_minus_two_s = a_gap + b_from_right;
    BoundaryGaps {
        e_minus_two,
        // 2 - h = 2 (e - 2s) / e
        two_minus_h: 2.0 * e_minus_two_s / m.e,
    }
}

/// Reconstructs the quadrant point with ellipse measure `e` and hyperbola
/// measure `h` (inverse elliptic coordinates).
pub fn point_from_eh(e: f64, h: f64) -> Result<Point> {
    if !(e > 2.0) || !e.is_finite() {
        return Err(Error::OutOfRange(format!("e = {e} must exceed 2")));
    }
    if !(h > 0.0 && h < 2.0) {
        return Err(Error::OutOfRange(format!("h = {h} must lie in (0, 2)")));
    }
    let s = e * h / 4.0;
    let radicand = (e - 2.0) * (e + 2.0) * (2.0 - h) * (2.0 + h);
    if radicand <= 0.0 {
        return Err(Error::DegenerateTarget(format!("e = {e}, h = {h}")));
    }
    let t = radicand.sqrt() / 4.0;
    let p = Point::new(s, t);
    if !p.in_quadrant() {
        return Err(Error::DegenerateTarget(format!(
            "e = {e}, h = {h} lands at ({s}, {t})"
        )));
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    HyperbolicApollonian,
    EllipticApollonian,
    ConfocalEllipse,
    ConfocalHyperbola,
    VerticalLine,
    HorizontalLine,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::HyperbolicApollonian,
        Family::EllipticApollonian,
        Family::ConfocalEllipse,
        Family::ConfocalHyperbola,
        Family::VerticalLine,
        Family::HorizontalLine,
    ];

    /// Kebab-case name, used as the SVG stroke class.
    pub fn css_class(self) -> &'static str {
        match self {
            Family::HyperbolicApollonian => "hyperbolic-apollonian",
            Family::EllipticApollonian => "elliptic-apollonian",
            Family::ConfocalEllipse => "confocal-ellipse",
            Family::ConfocalHyperbola => "confocal-hyperbola",
            Family::VerticalLine => "vertical-line",
            Family::HorizontalLine => "horizontal-line",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.css_class())
    }
}

/// Canonical parameters of one curve of one of the six families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum CurveDescriptor {
    /// Circle `|XF1| / |XF2| = const`, centered on the x-axis.
    HyperbolicApollonian { center_x: f64, radius: f64 },
    /// Circle through both foci, centered on the y-axis.
    EllipticApollonian { center_y: f64, radius: f64 },
    ConfocalEllipse { semi_major: f64, semi_minor: f64 },
    /// Right branch only.
    ConfocalHyperbola { semi_transverse: f64, semi_conjugate: f64 },
    VerticalLine { abscissa: f64 },
    HorizontalLine { ordinate: f64 },
}

impl CurveDescriptor {
    pub fn family(&self) -> Family {
        match self {
            CurveDescriptor::HyperbolicApollonian { .. } => Family::HyperbolicApollonian,
            CurveDescriptor::EllipticApollonian { .. } => Family::EllipticApollonian,
            CurveDescriptor::ConfocalEllipse { .. } => Family::ConfocalEllipse,
            CurveDescriptor::ConfocalHyperbola { .. } => Family::ConfocalHyperbola,
            CurveDescriptor::VerticalLine { .. } => Family::VerticalLine,
            CurveDescriptor::HorizontalLine { .. } => Family::HorizontalLine,
        }
    }

    /// Hyperbolic-pencil circle with distance ratio `mu`.
    ///
    /// `mu < 1` gives the mirror circle around the left focus.
    pub fn hyperbolic_circle(mu: f64) -> Result<Self> {
        if !mu.is_finite() || mu <= 0.0 || (mu - 1.0).abs() < f64::EPSILON {
            return Err(Error::DegeneratePencilMember(mu));
        }
        let m2 = mu * mu;
        Ok(CurveDescriptor::HyperbolicApollonian {
            center_x: (m2 + 1.0) / (m2 - 1.0),
            radius: (2.0 * mu / (m2 - 1.0)).abs(),
        })
    }

    /// Elliptic-pencil circle on which `cos(F1 X F2) = cosine` along the
    /// upper arc.
    pub fn elliptic_circle(cosine: f64) -> Result<Self> {
        if !(cosine > -1.0 && cosine < 1.0) {
            return Err(Error::OutOfRange(format!("cosine {cosine} must lie in (-1, 1)")));
        }
        let sine = ((1.0 - cosine) * (1.0 + cosine)).sqrt();
        Ok(CurveDescriptor::EllipticApollonian {
            center_y: cosine / sine,
            radius: 1.0 / sine,
        })
    }

    /// Confocal ellipse with `a + b = e`.
    pub fn ellipse(e: f64) -> Result<Self> {
        if !(e > 2.0) || !e.is_finite() {
            return Err(Error::OutOfRange(format!("e = {e} must exceed 2")));
        }
        let semi_major = e / 2.0;
        Ok(CurveDescriptor::ConfocalEllipse {
            semi_major,
            semi_minor: ((semi_major - 1.0) * (semi_major + 1.0)).sqrt(),
        })
    }

    /// Right branch of the confocal hyperbola with `a - b = h`.
    pub fn hyperbola(h: f64) -> Result<Self> {
        if !(h > 0.0 && h < 2.0) {
            return Err(Error::OutOfRange(format!("h = {h} must lie in (0, 2)")));
        }
        let semi_transverse = h / 2.0;
        Ok(CurveDescriptor::ConfocalHyperbola {
            semi_transverse,
            semi_conjugate: ((1.0 - semi_transverse) * (1.0 + semi_transverse)).sqrt(),
        })
    }

    /// Point at parameter `u` of the curve's natural parametrization.
    ///
    /// Circles and the ellipse use the angle, the hyperbola branch uses
    /// `(A cosh u, B sinh u)`, lines use the free coordinate.
    pub fn point_at(&self, u: f64) -> Point {
        match *self {
            CurveDescriptor::HyperbolicApollonian { center_x, radius } => {
                Point::new(center_x + radius * u.cos(), radius * u.sin())
            }
            CurveDescriptor::EllipticApollonian { center_y, radius } => {
                Point::new(radius * u.cos(), center_y + radius * u.sin())
            }
            CurveDescriptor::ConfocalEllipse { semi_major, semi_minor } => {
                Point::new(semi_major * u.cos(), semi_minor * u.sin())
            }
            CurveDescriptor::ConfocalHyperbola { semi_transverse, semi_conjugate } => {
                Point::new(semi_transverse * u.cosh(), semi_conjugate * u.sinh())
            }
            CurveDescriptor::VerticalLine { abscissa } => Point::new(abscissa, u),
            CurveDescriptor::HorizontalLine { ordinate } => Point::new(u, ordinate),
        }
    }
}

/// Canonical descriptor of the member of `family` passing through `p`.
pub fn curve_through(p: Point, family: Family) -> Result<CurveDescriptor> {
    let m = measures(p)?;
    match family {
        Family::HyperbolicApollonian => CurveDescriptor::hyperbolic_circle(m.f),
        Family::EllipticApollonian => CurveDescriptor::elliptic_circle(m.g),
        Family::ConfocalEllipse => CurveDescriptor::ellipse(m.e),
        Family::ConfocalHyperbola => CurveDescriptor::hyperbola(m.h),
        Family::VerticalLine => Ok(CurveDescriptor::VerticalLine { abscissa: p.s }),
        Family::HorizontalLine => Ok(CurveDescriptor::HorizontalLine { ordinate: p.t }),
    }
}

/// Implicit-equation residual at `p` divided by the gradient norm there.
///
/// Approximates the distance from `p` to the curve near the curve. The
/// hyperbola uses the branch-selecting form `x - A sqrt(1 + y^2/B^2)` so
/// points of the left branch are not counted as lying on it.
pub fn residual(c: &CurveDescriptor, p: Point) -> f64 {
    let (value, grad) = match *c {
        CurveDescriptor::HyperbolicApollonian { center_x, radius } => {
            circle_implicit(p, center_x, 0.0, radius)
        }
        CurveDescriptor::EllipticApollonian { center_y, radius } => {
            circle_implicit(p, 0.0, center_y, radius)
        }
        CurveDescriptor::ConfocalEllipse { semi_major, semi_minor } => {
            let (a2, b2) = (semi_major * semi_major, semi_minor * semi_minor);
            (
                p.s * p.s / a2 + p.t * p.t / b2 - 1.0,
                (2.0 * p.s / a2).hypot(2.0 * p.t / b2),
            )
        }
        CurveDescriptor::ConfocalHyperbola { semi_transverse, semi_conjugate } => {
            let b2 = semi_conjugate * semi_conjugate;
            let root = (1.0 + p.t * p.t / b2).sqrt();
            (
                p.s - semi_transverse * root,
                1.0f64.hypot(semi_transverse * p.t / (b2 * root)),
            )
        }
        CurveDescriptor::VerticalLine { abscissa } => (p.s - abscissa, 1.0),
        CurveDescriptor::HorizontalLine { ordinate } => (p.t - ordinate, 1.0),
    };
    if grad > 0.0 {
        value.abs() / grad
    } else {
        value.abs()
    }
}

fn circle_implicit(p: Point, cx: f64, cy: f64, r: f64) -> (f64, f64) {
    let (dx, dy) = (p.s - cx, p.t - cy);
    (dx * dx + dy * dy - r * r, 2.0 * dx.hypot(dy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const SQRT5: f64 = 2.236_067_977_499_79;

    #[test]
    fn focal_distances_examples() {
        let (a, b) = focal_distances(Point::new(1.0, 1.0)).unwrap();
        assert_relative_eq!(a, 5f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(b, 1.0);
        let (a, b) = focal_distances(Point::new(3.0, 4.0)).unwrap();
        assert_relative_eq!(a, 4.0 * 2f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(b, 2.0 * 5f64.sqrt(), max_relative = 1e-15);
        for t in [0.1, 1.0, 17.0] {
            let (a, b) = focal_distances(Point::new(0.0, t)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn focus_is_rejected() {
        assert!(matches!(
            focal_distances(F2),
            Err(Error::FocusCoincidence { .. })
        ));
        assert!(focal_distances(Point::new(-1.0, 1e-9)).is_err());
    }

    #[test]
    fn measures_at_one_one() {
        let m = measures(Point::new(1.0, 1.0)).unwrap();
        assert_relative_eq!(m.f, SQRT5, max_relative = 1e-15);
        assert_relative_eq!(m.g, 1.0 / SQRT5, max_relative = 1e-15);
        assert_relative_eq!(m.h, SQRT5 - 1.0, max_relative = 1e-15);
        assert_relative_eq!(m.e, SQRT5 + 1.0, max_relative = 1e-15);
    }

    #[test]
    fn inscribed_angle_examples() {
        let m = measures(Point::new(1.0, 2.0)).unwrap();
        assert_relative_eq!(m.a, 2.0 * 2f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(m.b, 2.0);
        assert_relative_eq!(m.g, 0.5f64.sqrt(), max_relative = 1e-15);

        let m = measures(Point::new(2.0 * 2f64.sqrt() / 3.0, 1.0 / 3.0)).unwrap();
        assert!(m.g.abs() < 1e-15, "g = {}", m.g);
    }

    #[test]
    fn measures_rejects_outside_quadrant() {
        for p in [Point::new(0.0, 1.0), Point::new(1.0, -1.0), Point::new(-2.0, 3.0)] {
            assert!(matches!(measures(p), Err(Error::OutsideQuadrant { .. })));
        }
    }

    #[test]
    fn point_from_eh_examples() {
        let p = point_from_eh(SQRT5 + 1.0, SQRT5 - 1.0).unwrap();
        assert!((p.s - 1.0).abs() < 1e-14 && (p.t - 1.0).abs() < 1e-14);
        let p = point_from_eh(4.0, 1.0).unwrap();
        assert!((p.s - 1.0).abs() < 1e-15 && (p.t - 1.5).abs() < 1e-15);
        let (a, b) = focal_distances(p).unwrap();
        assert_relative_eq!(a, 2.5, max_relative = 1e-15);
        assert_relative_eq!(b, 1.5, max_relative = 1e-15);
    }

    #[test]
    fn point_from_eh_errors() {
        assert!(matches!(
            point_from_eh(2.0 + 1e-13, 1e-13),
            Err(Error::DegenerateTarget(_))
        ));
        assert!(matches!(point_from_eh(2.0, 1.0), Err(Error::OutOfRange(_))));
        assert!(matches!(point_from_eh(3.0, 2.0), Err(Error::OutOfRange(_))));
        assert!(matches!(point_from_eh(3.0, -0.5), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn reflections() {
        let p = Point::new(1.0, 1.0);
        assert_eq!(reflect(p, Axis::Vertical), Point::new(-1.0, 1.0));
        assert_eq!(reflect(p, Axis::Horizontal), Point::new(1.0, -1.0));
        let (a, b) = focal_distances(reflect(p, Axis::Vertical)).unwrap();
        assert_relative_eq!(a / b, 1.0 / SQRT5, max_relative = 1e-15);

        let q = Point::new(3.0, 4.0);
        let (a0, b0) = focal_distances(q).unwrap();
        let (a1, b1) = focal_distances(reflect(q, Axis::Both)).unwrap();
        assert_relative_eq!(a0 + b0, a1 + b1, max_relative = 1e-15);
    }

    #[test]
    fn curve_through_examples() {
        let p = Point::new(2.0 * 2f64.sqrt() / 3.0, 1.0 / 3.0);
        match curve_through(p, Family::EllipticApollonian).unwrap() {
            CurveDescriptor::EllipticApollonian { center_y, radius } => {
                assert!(center_y.abs() < 1e-15);
                assert_relative_eq!(radius, 1.0, max_relative = 1e-15);
            }
            other => panic!("unexpected {other:?}"),
        }

        // f = 2 at (3, 0); the circle meets the axis at 3 and 1/3.
        match CurveDescriptor::hyperbolic_circle(2.0).unwrap() {
            CurveDescriptor::HyperbolicApollonian { center_x, radius } => {
                assert_relative_eq!(center_x, 5.0 / 3.0, max_relative = 1e-15);
                assert_relative_eq!(radius, 4.0 / 3.0, max_relative = 1e-15);
            }
            other => panic!("unexpected {other:?}"),
        }

        match curve_through(Point::new(1.0, 1.5), Family::ConfocalEllipse).unwrap() {
            CurveDescriptor::ConfocalEllipse { semi_major, semi_minor } => {
                assert_relative_eq!(semi_major, 2.0, max_relative = 1e-15);
                assert_relative_eq!(semi_minor, 3f64.sqrt(), max_relative = 1e-15);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn curve_through_lines_pass_through_point() {
        let p = Point::new(0.7, 2.5);
        assert_eq!(
            curve_through(p, Family::VerticalLine).unwrap(),
            CurveDescriptor::VerticalLine { abscissa: 0.7 }
        );
        assert_eq!(
            curve_through(p, Family::HorizontalLine).unwrap(),
            CurveDescriptor::HorizontalLine { ordinate: 2.5 }
        );
        assert!(curve_through(Point::new(-0.7, 2.5), Family::VerticalLine).is_err());
    }

    #[test]
    fn residual_examples() {
        let unit = CurveDescriptor::EllipticApollonian { center_y: 0.0, radius: 1.0 };
        assert!(residual(&unit, Point::new(2.0 * 2f64.sqrt() / 3.0, 1.0 / 3.0)) < 1e-12);

        let ell = CurveDescriptor::ellipse(4.0).unwrap();
        assert!(residual(&ell, Point::new(2.0, 0.01)) > 0.0);
        assert!(residual(&ell, Point::new(2.0, 0.0)) < 1e-15);

        let circ = CurveDescriptor::hyperbolic_circle(2.0).unwrap();
        assert!(residual(&circ, Point::new(3.0, 0.0)) < 1e-12);
    }

    #[test]
    fn hyperbola_residual_ignores_left_branch() {
        let hyp = CurveDescriptor::hyperbola(1.0).unwrap();
        let on_right = hyp.point_at(0.8);
        assert!(residual(&hyp, on_right) < 1e-12);
        assert!(residual(&hyp, reflect(on_right, Axis::Vertical)) > 0.5);
    }

    #[test]
    fn mirror_ratio_mirrors_circle() {
        let (CurveDescriptor::HyperbolicApollonian { center_x: c0, radius: r0 },
             CurveDescriptor::HyperbolicApollonian { center_x: c1, radius: r1 }) =
            (CurveDescriptor::hyperbolic_circle(3.0).unwrap(),
             CurveDescriptor::hyperbolic_circle(1.0 / 3.0).unwrap())
        else {
            unreachable!()
        };
        assert_relative_eq!(c0, -c1, max_relative = 1e-15);
        assert_relative_eq!(r0, r1, max_relative = 1e-15);
        assert!(CurveDescriptor::hyperbolic_circle(1.0).is_err());
    }

    #[test]
    fn boundary_gaps_match_direct_subtraction() {
        for p in [Point::new(0.3, 0.9), Point::new(1.7, 0.4), Point::new(1.0, 2.0)] {
            let m = measures(p).unwrap();
            let gaps = boundary_gaps(p, &m);
            assert_relative_eq!(gaps.e_minus_two, m.e - 2.0, max_relative = 1e-12);
            assert_relative_eq!(gaps.two_minus_h, 2.0 - m.h, max_relative = 1e-12);
        }
    }
}
