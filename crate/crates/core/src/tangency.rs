//! Scaled Apollonian circles and the confocal conic they all touch.
//!
//! Scaling every elliptic-pencil circle by `k1` and every hyperbolic-pencil
//! circle by `k2 = sqrt(1 - k1^2)` about its own center yields circles
//! tangent to the confocal hyperbola with semi-axes `(k1, k2)`. For
//! `k1 > 1` the scaled elliptic circles touch the confocal ellipse with
//! semi-major axis `k1` instead, sometimes at complex points.
//!
//! Tangency is certified algebraically: eliminating one coordinate
//! between circle and conic leaves a quadratic whose discriminant vanishes
//! exactly when the two curves touch, whether or not the touching point is
//! real.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::focal::{CurveDescriptor, Point};

/// Axis tolerance for circle centers.
pub const AXIS_TOLERANCE: f64 = 1e-12;
/// Residual bound a conic must meet over the certification sweep.
pub const CERTIFICATION_TOLERANCE: f64 = 1e-9;
/// Pencil members checked before a conic is returned.
pub const CERTIFICATION_MEMBERS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pencil {
    Hyperbolic,
    Elliptic,
}

/// One pencil member: ratio `mu > 1` for the hyperbolic pencil, center
/// ordinate `d` for the elliptic pencil.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PencilParam {
    pub pencil: Pencil,
    pub value: f64,
}

impl PencilParam {
    pub fn hyperbolic(mu: f64) -> Self {
        Self { pencil: Pencil::Hyperbolic, value: mu }
    }

    pub fn elliptic(d: f64) -> Self {
        Self { pencil: Pencil::Elliptic, value: d }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn point_at(&self, angle: f64) -> Point {
        Point::new(
            self.center.s + self.radius * angle.cos(),
            self.center.t + self.radius * angle.sin(),
        )
    }
}

pub fn apollonian_circle(p: PencilParam) -> Result<Circle> {
    match p.pencil {
        Pencil::Hyperbolic => {
            let mu = p.value;
            if !(mu > 1.0) || !mu.is_finite() {
                return Err(Error::DegeneratePencilMember(mu));
            }
            let m2 = mu * mu;
            Ok(Circle {
                center: Point::new((m2 + 1.0) / (m2 - 1.0), 0.0),
                radius: 2.0 * mu / (m2 - 1.0),
            })
        }
        Pencil::Elliptic => {
            let d = p.value;
            if !d.is_finite() {
                return Err(Error::InvalidArgument(format!("center ordinate {d}")));
            }
            Ok(Circle {
                center: Point::new(0.0, d),
                radius: 1.0f64.hypot(d),
            })
        }
    }
}

/// Edelsbrunner scale factors and the conic they determine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingPair {
    /// Elliptic-circle factor.
    pub k1: f64,
    /// Hyperbolic-circle factor; absent when `k1 > 1`.
    pub k2: Option<f64>,
    pub conic: CurveDescriptor,
}

impl ScalingPair {
    pub fn new(k1: f64, k2: Option<f64>) -> Result<Self> {
        let conic = tangent_conic_for_scaling(k1, k2)?;
        let k2 = (k1 < 1.0).then(|| (1.0 - k1) * (1.0 + k1)).map(f64::sqrt);
        Ok(Self { k1, k2, conic })
    }

    /// Pencils whose scaled circles touch the conic.
    pub fn pencils(&self) -> &'static [Pencil] {
        if self.k2.is_some() {
            &[Pencil::Hyperbolic, Pencil::Elliptic]
        } else {
            &[Pencil::Elliptic]
        }
    }

    pub fn factor(&self, pencil: Pencil) -> Result<f64> {
        match pencil {
            Pencil::Elliptic => Ok(self.k1),
            Pencil::Hyperbolic => self.k2.ok_or_else(|| {
                Error::InvalidScale(format!(
                    "k1 = {} > 1 fixes no scale for hyperbolic circles",
                    self.k1
                ))
            }),
        }
    }
}

pub fn scaled_circle(p: PencilParam, pair: &ScalingPair) -> Result<Circle> {
    let c = apollonian_circle(p)?;
    Ok(Circle { radius: c.radius * pair.factor(p.pencil)?, ..c })
}

/// Which coordinate survives the elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EliminatedAxis {
    /// Quadratic in `x` (circle centered on the x-axis).
    Y,
    /// Quadratic in `y` (circle centered on the y-axis).
    X,
}

/// The reduced quadratic and its double-root data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangencyCertificate {
    /// `|disc| / lead^2`.
    pub residual: f64,
    pub eliminated: EliminatedAxis,
    /// Coefficients `[lead, linear, constant]`.
    pub quadratic: [f64; 3],
    /// `-linear / (2 lead)`: the touching coordinate when the residual
    /// vanishes.
    pub double_root: f64,
    /// Square of the other coordinate at the double root, read off the
    /// conic. Negative means the touching points are complex.
    pub partner_square: f64,
}

impl TangencyCertificate {
    pub fn is_real(&self) -> bool {
        self.partner_square >= 0.0
    }

    /// Real touching point in the closed upper half plane (or right half
    /// plane), when there is one.
    pub fn touching_point(&self) -> Option<Point> {
        if !self.is_real() {
            return None;
        }
        let partner = self.partner_square.sqrt();
        Some(match self.eliminated {
            EliminatedAxis::Y => Point::new(self.double_root, partner),
            EliminatedAxis::X => Point::new(partner, self.double_root),
        })
    }
}

pub fn tangency_residual(circle: &Circle, conic: &CurveDescriptor) -> Result<f64> {
    tangency_certificate(circle, conic).map(|c| c.residual)
}

/// Substitutes the conic into the circle and inspects the discriminant.
///
/// A circle centered on the y-axis eliminates `x^2`, one centered on the
/// x-axis eliminates `y^2`. For a center at the origin the y-quadratic is
/// used, because the x-quadratic of a symmetric pair of tangencies on the
/// x-axis has two distinct roots.
pub fn tangency_certificate(circle: &Circle, conic: &CurveDescriptor) -> Result<TangencyCertificate> {
    // Conic as x^2 / p + y^2 / q = 1 with q < 0 for the hyperbola.
    let (p, q) = match *conic {
        CurveDescriptor::ConfocalEllipse { semi_major, semi_minor } => {
            (semi_major * semi_major, semi_minor * semi_minor)
        }
        CurveDescriptor::ConfocalHyperbola { semi_transverse, semi_conjugate } => {
            (semi_transverse * semi_transverse, -semi_conjugate * semi_conjugate)
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "tangency needs a confocal conic, got {}",
                other.family()
            )))
        }
    };
    let Circle { center, radius } = *circle;
    let r2 = radius * radius;
    let (eliminated, quadratic) = if center.s.abs() <= AXIS_TOLERANCE {
        // x^2 = p (1 - y^2 / q) into x^2 + (y - d)^2 = r^2
        let d = center.t;
        (
            EliminatedAxis::X,
            [1.0 - p / q, -2.0 * d, p + d * d - r2],
        )
    } else if center.t.abs() <= AXIS_TOLERANCE {
        // y^2 = q (1 - x^2 / p) into (x - c)^2 + y^2 = r^2
        let c = center.s;
        (
            EliminatedAxis::Y,
            [1.0 - q / p, -2.0 * c, c * c + q - r2],
        )
    } else {
        return Err(Error::AxisMismatch { cx: center.s, cy: center.t });
    };
    let [lead, linear, constant] = quadratic;
    if lead == 0.0 {
        return Err(Error::InvalidArgument("degenerate quadratic".into()));
    }
    // disc / 4 = (linear/2)^2 - lead * constant
    let half = 0.5 * linear;
    let disc = 4.0 * (half * half - lead * constant);
    let double_root = -half / lead;
    let partner_square = match eliminated {
        EliminatedAxis::X => p * (1.0 - double_root * double_root / q),
        EliminatedAxis::Y => q * (1.0 - double_root * double_root / p),
    };
    Ok(TangencyCertificate {
        // squared root separation, relative once the roots leave the unit scale
        residual: disc.abs() / (lead * lead * double_root.abs().max(1.0).powi(2)),
        eliminated,
        quadratic,
        double_root,
        partner_square,
    })
}

/// `n` hyperbolic ratios spread geometrically over `(lo, hi]`.
pub fn ratio_sweep(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let span = (hi / lo).ln();
    (1..=n)
        .map(|i| lo * (span * i as f64 / n as f64).exp())
        .collect()
}

/// `n` elliptic center ordinates spread evenly over `[lo, hi]`.
pub fn ordinate_sweep(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Default sweep ranges: ratios in `(1.01, 50]`, ordinates in `[-10, 10]`.
pub fn default_members(pencil: Pencil, n: usize) -> Vec<PencilParam> {
    match pencil {
        Pencil::Hyperbolic => ratio_sweep(n, 1.01, 50.0)
            .into_iter()
            .map(PencilParam::hyperbolic)
            .collect(),
        Pencil::Elliptic => ordinate_sweep(n, -10.0, 10.0)
            .into_iter()
            .map(PencilParam::elliptic)
            .collect(),
    }
}

/// Worst residual over `n` members of each pencil the pair scales.
pub fn sweep_residual(pair: &ScalingPair, n: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for &pencil in pair.pencils() {
        for member in default_members(pencil, n) {
            let c = scaled_circle(member, pair)?;
            worst = worst.max(tangency_residual(&c, &pair.conic)?);
        }
    }
    Ok(worst)
}

fn check_scale(k1: f64) -> Result<()> {
    if !k1.is_finite() || k1 <= 0.0 {
        return Err(Error::InvalidScale(format!("k1 = {k1} must be positive")));
    }
    if k1 == 1.0 {
        return Err(Error::InvalidScale("k1 = 1 degenerates both conics".into()));
    }
    Ok(())
}

/// The conic touched by every scaled circle, certified over a sweep.
///
/// `k1 < 1` gives the hyperbola with semi-axes `(k1, sqrt(1 - k1^2))`;
/// a supplied `k2` must agree with that. `k1 > 1` gives the ellipse with
/// semi-major axis `k1`.
pub fn tangent_conic_for_scaling(k1: f64, k2: Option<f64>) -> Result<CurveDescriptor> {
    check_scale(k1)?;
    let candidate = if k1 < 1.0 {
        let expected = ((1.0 - k1) * (1.0 + k1)).sqrt();
        if let Some(k2) = k2 {
            if (k2 - expected).abs() > 1e-12 {
                return Err(Error::InvalidScale(format!(
                    "k2 = {k2} violates k1^2 + k2^2 = 1 (expected {expected})"
                )));
            }
        }
        CurveDescriptor::ConfocalHyperbola { semi_transverse: k1, semi_conjugate: expected }
    } else {
        CurveDescriptor::ConfocalEllipse {
            semi_major: k1,
            semi_minor: ((k1 - 1.0) * (k1 + 1.0)).sqrt(),
        }
    };
    let pair = ScalingPair {
        k1,
        k2: (k1 < 1.0).then(|| ((1.0 - k1) * (1.0 + k1)).sqrt()),
        conic: candidate,
    };
    let worst = sweep_residual(&pair, CERTIFICATION_MEMBERS / 2)?;
    if !(worst < CERTIFICATION_TOLERANCE) {
        return Err(Error::NoTangentConic { k1, residual: worst });
    }
    Ok(candidate)
}
