//! The four chart maps that straighten the webs.
//!
//! Each [`WebId`] names a diffeomorphism from a chart domain onto the open
//! positive quadrant. Lines `x = const`, `y = const` and `x - y = const`
//! (and for the conic webs also `x + y = const`) map onto the curve
//! families listed by [`family_of_direction`]. Along each such line one
//! focal measure (or one image coordinate) is constant; [`leaf_value`]
//! gives its closed form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::focal::{self, Family, FocalMeasures, Measure, Point};

/// Chart points closer than this to the domain boundary are not members.
pub const DOMAIN_MARGIN: f64 = 1e-12;
/// Minimum boundary clearance for the finite-difference stencil.
pub const JACOBIAN_MARGIN: f64 = 1e-5;
/// Relative central-difference step.
pub const JACOBIAN_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WebId {
    /// Both Apollonian pencils and the confocal hyperbolas.
    W1,
    /// Both Apollonian pencils and the confocal ellipses.
    W2,
    /// Confocal ellipses, confocal hyperbolas and the hyperbolic pencil,
    /// plus vertical lines.
    W3,
    /// Confocal ellipses, confocal hyperbolas and the elliptic pencil,
    /// plus horizontal lines.
    W4,
}

impl WebId {
    pub const ALL: [WebId; 4] = [WebId::W1, WebId::W2, WebId::W3, WebId::W4];

    pub fn name(self) -> &'static str {
        match self {
            WebId::W1 => "w1",
            WebId::W2 => "w2",
            WebId::W3 => "w3",
            WebId::W4 => "w4",
        }
    }

    /// Chart directions whose images are curve families of this web.
    pub fn directions(self) -> &'static [Direction] {
        match self {
            WebId::W1 | WebId::W2 => &[Direction::XConst, Direction::YConst, Direction::DiagMinus],
            WebId::W3 | WebId::W4 => &Direction::ALL,
        }
    }
}

impl fmt::Display for WebId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for WebId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "w1" | "1" => Ok(WebId::W1),
            "w2" | "2" => Ok(WebId::W2),
            "w3" | "3" => Ok(WebId::W3),
            "w4" | "4" => Ok(WebId::W4),
            other => Err(Error::InvalidArgument(format!("unknown web '{other}'"))),
        }
    }
}

/// A foliation of the chart by parallel lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    /// Lines `x = const`.
    XConst,
    /// Lines `y = const`.
    YConst,
    /// Lines `x - y = const`.
    DiagMinus,
    /// Lines `x + y = const`.
    DiagPlus,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::XConst,
        Direction::YConst,
        Direction::DiagMinus,
        Direction::DiagPlus,
    ];

    /// The quantity that is constant along a line of this direction.
    pub fn level(self, c: WebCoords) -> f64 {
        match self {
            Direction::XConst => c.x,
            Direction::YConst => c.y,
            Direction::DiagMinus => c.x - c.y,
            Direction::DiagPlus => c.x + c.y,
        }
    }

    /// Unit-speed (in the free coordinate) tangent of the lines.
    pub fn tangent(self) -> (f64, f64) {
        match self {
            Direction::XConst => (0.0, 1.0),
            Direction::YConst => (1.0, 0.0),
            Direction::DiagMinus => (1.0, 1.0),
            Direction::DiagPlus => (1.0, -1.0),
        }
    }

    /// The line `self = level` as `base + u * tangent`.
    pub fn line(self, level: f64) -> (WebCoords, (f64, f64)) {
        let base = match self {
            Direction::XConst => WebCoords::new(level, 0.0),
            Direction::YConst => WebCoords::new(0.0, level),
            Direction::DiagMinus | Direction::DiagPlus => WebCoords::new(level, 0.0),
        };
        (base, self.tangent())
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::XConst => "x-const",
            Direction::YConst => "y-const",
            Direction::DiagMinus => "diag-minus",
            Direction::DiagPlus => "diag-plus",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WebCoords {
    pub x: f64,
    pub y: f64,
}

impl WebCoords {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn offset(self, (dx, dy): (f64, f64), by: f64) -> Self {
        Self::new(self.x + by * dx, self.y + by * dy)
    }
}

/// How the domain of the fourth web is read.
///
/// The stated fourth-quadrant domain misses every target point with
/// `e < 2 sqrt 2`, whose chart abscissa `ln((e/2)^2 - 1)` is negative.
/// `Corrected` uses the half-plane `y < 0`, which makes the map onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DomainMode {
    #[default]
    Corrected,
    StrictQuadrant,
}

/// Half-plane bounds of a chart domain; `None` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainSpec {
    pub web: WebId,
    /// Lower bound on `x`.
    pub x_above: Option<f64>,
    /// Upper bound on `y`.
    pub y_below: Option<f64>,
}

impl DomainSpec {
    pub fn of(web: WebId, mode: DomainMode) -> Self {
        let (x_above, y_below) = match (web, mode) {
            (WebId::W1, _) => (Some(0.0), None),
            (WebId::W2 | WebId::W3, _) => (Some(0.0), Some(0.0)),
            (WebId::W4, DomainMode::Corrected) => (None, Some(0.0)),
            (WebId::W4, DomainMode::StrictQuadrant) => (Some(0.0), Some(0.0)),
        };
        Self { web, x_above, y_below }
    }

    /// Signed clearance to the boundary; positive inside.
    pub fn margin(&self, c: WebCoords) -> f64 {
        let mut m = f64::INFINITY;
        if let Some(lo) = self.x_above {
            m = m.min(c.x - lo);
        }
        if let Some(hi) = self.y_below {
            m = m.min(hi - c.y);
        }
        m
    }

    pub fn contains(&self, c: WebCoords) -> bool {
        c.x.is_finite() && c.y.is_finite() && self.margin(c) > DOMAIN_MARGIN
    }
}

pub fn domain_contains(web: WebId, c: WebCoords) -> bool {
    DomainSpec::of(web, DomainMode::Corrected).contains(c)
}

pub fn domain_contains_in(web: WebId, c: WebCoords, mode: DomainMode) -> bool {
    DomainSpec::of(web, mode).contains(c)
}

/// The additive constants inside the square roots of the chart maps.
///
/// Both are 1 for the true maps; other values exist so the verification
/// suite can show it detects a perturbed map.
///
/// | web | `first`                 | `second`                 |
/// |-----|-------------------------|--------------------------|
/// | W1  | `sqrt(first + e^y)`     | `sqrt(e^x - second)`     |
/// | W2  | `sqrt(first - e^y)`     | `sqrt(e^x - second)`     |
/// | W3  | `(e^2x - first)`        | `(second - e^2y)`        |
/// | W4  | `(first + e^x)`         | `(second - e^y)`         |
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapConstants {
    pub first: f64,
    pub second: f64,
}

impl Default for MapConstants {
    fn default() -> Self {
        Self { first: 1.0, second: 1.0 }
    }
}

/// Chart point to plane point.
pub fn forward(web: WebId, c: WebCoords) -> Result<Point> {
    if !domain_contains(web, c) {
        return Err(Error::OutsideDomain { web, x: c.x, y: c.y });
    }
    Ok(forward_with(web, c, MapConstants::default()))
}

/// Chart map without the domain check, with adjustable constants.
pub fn forward_with(web: WebId, c: WebCoords, k: MapConstants) -> Point {
    let (ex, ey) = (c.x.exp(), c.y.exp());
    match web {
        WebId::W1 => {
            let denom = ex + ey;
            Point::new(
                ex * (k.first + ey).sqrt() / denom,
                ey * (ex - k.second).sqrt() / denom,
            )
        }
        WebId::W2 => {
            let denom = ex - ey;
            Point::new(
                ex * (k.first - ey).sqrt() / denom,
                ey * (ex - k.second).sqrt() / denom,
            )
        }
        WebId::W3 => Point::new(
            (c.x + c.y).exp(),
            (((2.0 * c.x).exp() - k.first) * (k.second - (2.0 * c.y).exp())).sqrt(),
        ),
        WebId::W4 => Point::new(
            ((k.first + ex) * (k.second - ey)).sqrt(),
            (0.5 * (c.x + c.y)).exp(),
        ),
    }
}

/// Plane point to chart point.
///
/// Every branch is a logarithm of a ratio of `4ab`, `e^2 - 4` or
/// `4 - h^2`, each computed without cancellation; algebraically these are
/// `ln(2/(1-g))`, `ln(((f+1)/(f-1))^2 - 1)` and their siblings.
pub fn inverse(web: WebId, p: Point) -> Result<WebCoords> {
    let m = focal::measures(p)?;
    let gaps = focal::boundary_gaps(p, &m);
    let four_ab = 4.0 * m.a * m.b;
    // e^2 - 4 and 4 - h^2
    let e_sq_gap = gaps.e_minus_two * (m.e + 2.0);
    let h_sq_gap = gaps.two_minus_h * (2.0 + m.h);
    let c = match web {
        WebId::W1 => WebCoords::new((four_ab / h_sq_gap).ln(), (four_ab / (m.h * m.h)).ln()),
        WebId::W2 => WebCoords::new((four_ab / e_sq_gap).ln(), (four_ab / (m.e * m.e)).ln()),
        WebId::W3 => WebCoords::new((m.e / 2.0).ln(), (m.h / 2.0).ln()),
        WebId::W4 => WebCoords::new((e_sq_gap / 4.0).ln(), (h_sq_gap / 4.0).ln()),
    };
    Ok(c)
}

/// Row-major 2x2 matrix `[[ds/dx, ds/dy], [dt/dx, dt/dy]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobian(pub [[f64; 2]; 2]);

impl Jacobian {
    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }
}

/// Central finite-difference Jacobian of [`forward`].
pub fn jacobian(web: WebId, c: WebCoords) -> Result<Jacobian> {
    let domain = DomainSpec::of(web, DomainMode::Corrected);
    if !domain.contains(c) {
        return Err(Error::OutsideDomain { web, x: c.x, y: c.y });
    }
    let margin = domain.margin(c);
    if margin < JACOBIAN_MARGIN {
        return Err(Error::BoundaryTooClose { web, x: c.x, y: c.y, margin });
    }
    let k = MapConstants::default();
    let column = |dir: (f64, f64), coord: f64| {
        let step = JACOBIAN_STEP * coord.abs().max(1.0);
        let plus = forward_with(web, c.offset(dir, step), k);
        let minus = forward_with(web, c.offset(dir, -step), k);
        (
            (plus.s - minus.s) / (2.0 * step),
            (plus.t - minus.t) / (2.0 * step),
        )
    };
    let (sx, tx) = column((1.0, 0.0), c.x);
    let (sy, ty) = column((0.0, 1.0), c.y);
    Ok(Jacobian([[sx, sy], [tx, ty]]))
}

/// Which curve family the lines of `direction` map onto.
pub fn family_of_direction(web: WebId, direction: Direction) -> Result<Family> {
    use Direction::*;
    let family = match (web, direction) {
        (WebId::W1 | WebId::W2, XConst) => Family::EllipticApollonian,
        (WebId::W1 | WebId::W2, YConst) => Family::HyperbolicApollonian,
        (WebId::W1, DiagMinus) => Family::ConfocalHyperbola,
        (WebId::W2, DiagMinus) => Family::ConfocalEllipse,
        (WebId::W3 | WebId::W4, XConst) => Family::ConfocalEllipse,
        (WebId::W3 | WebId::W4, YConst) => Family::ConfocalHyperbola,
        (WebId::W3, DiagMinus) => Family::HyperbolicApollonian,
        (WebId::W4, DiagMinus) => Family::EllipticApollonian,
        (WebId::W3, DiagPlus) => Family::VerticalLine,
        (WebId::W4, DiagPlus) => Family::HorizontalLine,
        (WebId::W1 | WebId::W2, DiagPlus) => {
            return Err(Error::UnsupportedDirection { web, direction })
        }
    };
    Ok(family)
}

/// The quantity a leaf keeps constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Invariant {
    Measure(Measure),
    Abscissa,
    Ordinate,
}

impl Invariant {
    pub fn of_family(family: Family) -> Self {
        match family {
            Family::HyperbolicApollonian => Invariant::Measure(Measure::F),
            Family::EllipticApollonian => Invariant::Measure(Measure::G),
            Family::ConfocalHyperbola => Invariant::Measure(Measure::H),
            Family::ConfocalEllipse => Invariant::Measure(Measure::E),
            Family::VerticalLine => Invariant::Abscissa,
            Family::HorizontalLine => Invariant::Ordinate,
        }
    }

    pub fn evaluate(self, p: Point) -> Result<f64> {
        match self {
            Invariant::Measure(m) => Ok(focal::measures(p)?.get(m)),
            Invariant::Abscissa => Ok(p.s),
            Invariant::Ordinate => Ok(p.t),
        }
    }

    pub fn from_measures(self, p: Point, m: &FocalMeasures) -> f64 {
        match self {
            Invariant::Measure(k) => m.get(k),
            Invariant::Abscissa => p.s,
            Invariant::Ordinate => p.t,
        }
    }
}

pub fn invariant_of(web: WebId, direction: Direction) -> Result<Invariant> {
    family_of_direction(web, direction).map(Invariant::of_family)
}

/// Closed-form value of the leaf invariant on the line `direction = level`.
pub fn leaf_value(web: WebId, direction: Direction, level: f64) -> Result<f64> {
    use Direction::*;
    let v = match (web, direction) {
        (WebId::W1, XConst) => 1.0 - 2.0 * (-level).exp(),
        (WebId::W1, YConst) => {
            let r = (1.0 + level.exp()).sqrt();
            (r + 1.0) / (r - 1.0)
        }
        (WebId::W1, DiagMinus) => {
            let q = level.exp();
            2.0 * (q / (q + 1.0)).sqrt()
        }
        (WebId::W2, XConst) => 2.0 * (-level).exp() - 1.0,
        (WebId::W2, YConst) => {
            let r = (-level.exp_m1()).sqrt();
            (1.0 + r) / (1.0 - r)
        }
        (WebId::W2, DiagMinus) => 2.0 * (level.exp() / level.exp_m1()).sqrt(),
        (WebId::W3, XConst) => 2.0 * level.exp(),
        (WebId::W3, YConst) => 2.0 * level.exp(),
        (WebId::W3, DiagMinus) => 1.0 / (0.5 * level).tanh(),
        (WebId::W3, DiagPlus) => level.exp(),
        (WebId::W4, XConst) => 2.0 * (1.0 + level.exp()).sqrt(),
        (WebId::W4, YConst) => 2.0 * (-level.exp_m1()).sqrt(),
        (WebId::W4, DiagMinus) => (0.5 * level).tanh(),
        (WebId::W4, DiagPlus) => (0.5 * level).exp(),
        (WebId::W1 | WebId::W2, DiagPlus) => {
            return Err(Error::UnsupportedDirection { web, direction })
        }
    };
    Ok(v)
}
