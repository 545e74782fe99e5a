//! SVG figures: images of shifted chart lattices, and scaled pencil
//! circles around their common tangent conic.
//!
//! Curves are sampled adaptively in their chart (or angle) parameter until
//! every chord is within a quarter pixel of the curve. Clipping points are
//! found by bisection on the curve itself, so every emitted vertex lies on
//! its curve.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::focal::{CurveDescriptor, Family, Point};
use crate::tangency::{self, Circle, Pencil, PencilParam, ScalingPair};
use crate::webs::{self, Direction, DomainMode, DomainSpec, WebId};

/// Chart-space clearance kept from each domain boundary when rendering.
pub const RENDER_GUARD: f64 = 1e-3;
/// Chord-to-curve deviation bound, in pixels.
pub const PIXEL_TOLERANCE: f64 = 0.25;
pub const MAX_DEPTH: u32 = 24;
const INITIAL_SEGMENTS: usize = 16;

/// Axis-aligned box in chart coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartWindow {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

/// Axis-aligned box in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub s_min: f64,
    pub s_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl Viewport {
    pub fn contains(&self, p: Point) -> bool {
        p.s >= self.s_min && p.s <= self.s_max && p.t >= self.t_min && p.t <= self.t_max
    }

    fn around<'a>(points: impl IntoIterator<Item = &'a Point>, pad: f64) -> Option<Self> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut v = Viewport { s_min: first.s, s_max: first.s, t_min: first.t, t_max: first.t };
        for p in it {
            v.s_min = v.s_min.min(p.s);
            v.s_max = v.s_max.max(p.s);
            v.t_min = v.t_min.min(p.t);
            v.t_max = v.t_max.max(p.t);
        }
        let margin = pad * (v.s_max - v.s_min).max(v.t_max - v.t_min);
        v.s_min -= margin;
        v.s_max += margin;
        v.t_min -= margin;
        v.t_max += margin;
        Some(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub pixels_per_unit: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self { pixels_per_unit: 100.0 }
    }
}

impl RenderOptions {
    fn tolerance(&self) -> f64 {
        PIXEL_TOLERANCE / self.pixels_per_unit
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    pub web: WebId,
    /// Lattice spacing.
    pub step: f64,
    /// Lattice translation.
    pub shift: (f64, f64),
    pub directions: Vec<Direction>,
    pub window: ChartWindow,
    /// Plane-space clip box; the padded bounding box of the curves when
    /// absent.
    pub viewport: Option<Viewport>,
}

impl LatticeSpec {
    /// Figure presets: step `ln 2`, no shift, every direction of the web,
    /// and a window showing at least five curves per family.
    pub fn preset(web: WebId) -> Self {
        let window = match web {
            WebId::W1 => ChartWindow { x_min: 0.05, x_max: 3.5, y_min: -3.0, y_max: 3.0 },
            WebId::W2 | WebId::W3 => {
                ChartWindow { x_min: 0.05, x_max: 3.5, y_min: -3.5, y_max: -0.05 }
            }
            WebId::W4 => ChartWindow { x_min: -2.0, x_max: 2.0, y_min: -3.5, y_max: -0.05 },
        };
        Self {
            web,
            step: std::f64::consts::LN_2,
            shift: (0.0, 0.0),
            directions: web.directions().to_vec(),
            window,
            viewport: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::InvalidArgument(format!("lattice step {}", self.step)));
        }
        let w = &self.window;
        if !(w.x_min < w.x_max && w.y_min < w.y_max) {
            return Err(Error::InvalidArgument("empty chart window".into()));
        }
        for &d in &self.directions {
            webs::family_of_direction(self.web, d)?;
        }
        Ok(())
    }

    /// Levels of the lattice lines of `direction` that cross the window,
    /// in increasing order.
    pub fn levels(&self, direction: Direction) -> Vec<f64> {
        let w = &self.window;
        let (tx, ty) = self.shift;
        let (offset, lo, hi) = match direction {
            Direction::XConst => (tx, w.x_min, w.x_max),
            Direction::YConst => (ty, w.y_min, w.y_max),
            Direction::DiagMinus => (tx - ty, w.x_min - w.y_max, w.x_max - w.y_min),
            Direction::DiagPlus => (tx + ty, w.x_min + w.y_min, w.x_max + w.y_max),
        };
        let first = ((lo - offset) / self.step).ceil() as i64;
        let last = ((hi - offset) / self.step).floor() as i64;
        (first..=last).map(|i| i as f64 * self.step + offset).collect()
    }
}

/// Provenance of a rendered curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveRole {
    Leaf { direction: Direction, level: f64 },
    Conic,
    ScaledCircle { member: PencilParam, circle: Circle },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub family: Family,
    pub role: CurveRole,
    pub points: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgScene {
    pub viewport: Viewport,
    pub pixels_per_unit: f64,
    pub polylines: Vec<Polyline>,
}

/// Parameter interval of the chart line `direction = level` inside the
/// window and at least `RENDER_GUARD` inside the domain.
pub fn chart_interval(web: WebId, direction: Direction, level: f64, window: &ChartWindow) -> Option<(f64, f64)> {
    let (base, (dx, dy)) = direction.line(level);
    let domain = DomainSpec::of(web, DomainMode::Corrected);
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    // each constraint: coord(u) = b + u * d within [min, max]
    let mut constraints = vec![
        (base.x, dx, window.x_min, window.x_max),
        (base.y, dy, window.y_min, window.y_max),
    ];
    if let Some(x0) = domain.x_above {
        constraints.push((base.x, dx, x0 + RENDER_GUARD, f64::INFINITY));
    }
    if let Some(y0) = domain.y_below {
        constraints.push((base.y, dy, f64::NEG_INFINITY, y0 - RENDER_GUARD));
    }
    for (b, d, min, max) in constraints {
        if d == 0.0 {
            if b < min || b > max {
                return None;
            }
        } else {
            let (u0, u1) = ((min - b) / d, (max - b) / d);
            lo = lo.max(u0.min(u1));
            hi = hi.min(u0.max(u1));
        }
    }
    (lo < hi).then_some((lo, hi))
}

fn chord_deviation(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.s - a.s, b.t - a.t);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return p.distance(a);
    }
    let u = (((p.s - a.s) * dx + (p.t - a.t) * dy) / len2).clamp(0.0, 1.0);
    p.distance(Point::new(a.s + u * dx, a.t + u * dy))
}

/// Adaptive samples `(u, curve(u))` over `[u0, u1]`, in parameter order.
fn trace(curve: &dyn Fn(f64) -> Point, u0: f64, u1: f64, tol: f64) -> Vec<(f64, Point)> {
    fn refine(
        curve: &dyn Fn(f64) -> Point,
        (ua, pa): (f64, Point),
        (ub, pb): (f64, Point),
        tol: f64,
        depth: u32,
        out: &mut Vec<(f64, Point)>,
    ) {
        let um = 0.5 * (ua + ub);
        let pm = curve(um);
        if depth < MAX_DEPTH && chord_deviation(pm, pa, pb) > tol {
            refine(curve, (ua, pa), (um, pm), tol, depth + 1, out);
            refine(curve, (um, pm), (ub, pb), tol, depth + 1, out);
        } else {
            out.push((ub, pb));
        }
    }

    let mut out = vec![(u0, curve(u0))];
    for i in 0..INITIAL_SEGMENTS {
        let ub = u0 + (u1 - u0) * (i + 1) as f64 / INITIAL_SEGMENTS as f64;
        let a = *out.last().expect("nonempty");
        refine(curve, a, (ub, curve(ub)), tol, 0, &mut out);
    }
    out
}

/// Splits traced samples into runs inside `viewport`, extending each run
/// to the viewport edge by bisection on the curve.
fn clip(curve: &dyn Fn(f64) -> Point, samples: &[(f64, Point)], viewport: &Viewport) -> Vec<Vec<Point>> {
    let boundary = |inside: f64, outside: f64| {
        let (mut a, mut b) = (inside, outside);
        for _ in 0..64 {
            let m = 0.5 * (a + b);
            if viewport.contains(curve(m)) {
                a = m;
            } else {
                b = m;
            }
        }
        curve(a)
    };
    let mut runs = Vec::new();
    let mut current: Vec<Point> = Vec::new();
    for (i, &(u, p)) in samples.iter().enumerate() {
        let inside = viewport.contains(p);
        if i > 0 {
            let (u_prev, p_prev) = samples[i - 1];
            match (viewport.contains(p_prev), inside) {
                (true, false) => {
                    current.push(boundary(u_prev, u));
                    runs.push(std::mem::take(&mut current));
                }
                (false, true) => current.push(boundary(u, u_prev)),
                _ => {}
            }
        }
        if inside {
            current.push(p);
        }
    }
    runs.push(current);
    runs.retain(|r| r.len() >= 2);
    runs
}

/// Adaptive polyline of the image of the chart line `direction = level`.
pub fn sample_curve(
    web: WebId,
    direction: Direction,
    level: f64,
    window: &ChartWindow,
    options: &RenderOptions,
) -> Result<Vec<Point>> {
    Ok(trace_leaf(web, direction, level, window, options)?
        .into_iter()
        .map(|(_, p)| p)
        .collect())
}

fn leaf_curve(web: WebId, direction: Direction, level: f64) -> impl Fn(f64) -> Point {
    let (base, dir) = direction.line(level);
    move |u: f64| webs::forward_with(web, base.offset(dir, u), webs::MapConstants::default())
}

fn trace_leaf(
    web: WebId,
    direction: Direction,
    level: f64,
    window: &ChartWindow,
    options: &RenderOptions,
) -> Result<Vec<(f64, Point)>> {
    webs::family_of_direction(web, direction)?;
    let (u0, u1) = chart_interval(web, direction, level, window).ok_or_else(|| {
        Error::EmptyIntersection(format!("{web} {direction} = {level} misses the window"))
    })?;
    let curve = leaf_curve(web, direction, level);
    Ok(trace(&curve, u0, u1, options.tolerance()))
}

/// Image of the lattice `step * Z^2 + shift`: one polyline per lattice
/// line per direction, ordered by direction then level.
pub fn render_web_lattice(spec: &LatticeSpec, options: &RenderOptions) -> Result<SvgScene> {
    spec.validate()?;
    let web = spec.web;
    let mut directions = spec.directions.clone();
    directions.sort();
    directions.dedup();

    let mut traced = Vec::new();
    for &direction in &directions {
        let family = webs::family_of_direction(web, direction)?;
        for level in spec.levels(direction) {
            if chart_interval(web, direction, level, &spec.window).is_none() {
                continue;
            }
            let samples = trace_leaf(web, direction, level, &spec.window, options)?;
            traced.push((family, direction, level, samples));
        }
    }
    if traced.is_empty() {
        return Err(Error::EmptyIntersection(format!(
            "no lattice line of {web} meets the window"
        )));
    }

    let viewport = match spec.viewport {
        Some(v) => v,
        None => Viewport::around(traced.iter().flat_map(|t| t.3.iter().map(|(_, p)| p)), 0.02)
            .expect("nonempty"),
    };
    let mut polylines = Vec::new();
    for (family, direction, level, samples) in traced {
        let curve = leaf_curve(web, direction, level);
        for points in clip(&curve, &samples, &viewport) {
            polylines.push(Polyline {
                family,
                role: CurveRole::Leaf { direction, level },
                points,
            });
        }
    }
    Ok(SvgScene { viewport, pixels_per_unit: options.pixels_per_unit, polylines })
}

/// Figure of `members` scaled circles from each pencil the scale applies
/// to, with the conic they touch.
///
/// Hyperbolic ratios are spread over `(1.5, 8]` and elliptic ordinates
/// over `[-1.5, 1.5]`. The viewport is fitted to the circles and the conic
/// is clipped to it.
pub fn render_tangency_figure(k1: f64, members: usize, options: &RenderOptions) -> Result<SvgScene> {
    let pair = ScalingPair::new(k1, None)?;
    if members == 0 {
        return Err(Error::InvalidArgument("tangency figure needs members >= 1".into()));
    }
    let tol = options.tolerance();
    let mut circles = Vec::new();
    for &pencil in pair.pencils() {
        let params: Vec<PencilParam> = match pencil {
            Pencil::Hyperbolic => tangency::ratio_sweep(members, 1.5, 8.0)
                .into_iter()
                .map(PencilParam::hyperbolic)
                .collect(),
            Pencil::Elliptic => tangency::ordinate_sweep(members, -1.5, 1.5)
                .into_iter()
                .map(PencilParam::elliptic)
                .collect(),
        };
        for member in params {
            let circle = tangency::scaled_circle(member, &pair)?;
            let residual = tangency::tangency_residual(&circle, &pair.conic)?;
            if !(residual < crate::verify::TOLERANCE) {
                return Err(Error::NoTangentConic { k1, residual });
            }
            let family = match pencil {
                Pencil::Hyperbolic => Family::HyperbolicApollonian,
                Pencil::Elliptic => Family::EllipticApollonian,
            };
            let curve = move |u: f64| circle.point_at(u);
            let mut points: Vec<Point> = trace(&curve, 0.0, TAU, tol).into_iter().map(|(_, p)| p).collect();
            // close exactly
            if let Some(first) = points.first().copied() {
                *points.last_mut().expect("nonempty") = first;
            }
            circles.push(Polyline {
                family,
                role: CurveRole::ScaledCircle { member, circle },
                points,
            });
        }
    }

    let conic = pair.conic;
    let mut extent: Vec<Point> = circles.iter().flat_map(|c| c.points.iter().copied()).collect();
    if let CurveDescriptor::ConfocalEllipse { semi_major, semi_minor } = conic {
        extent.extend([
            Point::new(-semi_major, -semi_minor),
            Point::new(semi_major, semi_minor),
        ]);
    }
    let viewport = Viewport::around(&extent, 0.05).expect("nonempty");

    let mut polylines = Vec::new();
    match conic {
        CurveDescriptor::ConfocalEllipse { .. } => {
            let curve = move |u: f64| conic.point_at(u);
            let mut samples = trace(&curve, 0.0, TAU, tol);
            let first = samples[0];
            samples.last_mut().expect("nonempty").1 = first.1;
            for points in clip(&curve, &samples, &viewport) {
                polylines.push(Polyline { family: Family::ConfocalEllipse, role: CurveRole::Conic, points });
            }
        }
        CurveDescriptor::ConfocalHyperbola { semi_transverse, semi_conjugate } => {
            let reach = viewport.s_min.abs().max(viewport.s_max.abs()).max(viewport.t_min.abs()).max(viewport.t_max.abs());
            let span = (reach / semi_transverse.min(semi_conjugate)).asinh() + 0.5;
            for side in [1.0, -1.0] {
                let curve = move |u: f64| Point::new(side * semi_transverse * u.cosh(), semi_conjugate * u.sinh());
                let samples = trace(&curve, -span, span, tol);
                for points in clip(&curve, &samples, &viewport) {
                    polylines.push(Polyline { family: Family::ConfocalHyperbola, role: CurveRole::Conic, points });
                }
            }
        }
        _ => unreachable!("scaling pairs hold confocal conics"),
    }
    polylines.extend(circles);
    Ok(SvgScene { viewport, pixels_per_unit: options.pixels_per_unit, polylines })
}

const STYLE: &str = "\
polyline { fill: none; stroke-width: 1.2; stroke-linejoin: round; }
.hyperbolic-apollonian { stroke: #1f77b4; }
.elliptic-apollonian { stroke: #d62728; }
.confocal-ellipse { stroke: #2ca02c; }
.confocal-hyperbola { stroke: #9467bd; }
.vertical-line { stroke: #ff7f0e; }
.horizontal-line { stroke: #8c564b; }
.conic { stroke: #000000; stroke-width: 2; }
";

impl SvgScene {
    fn to_pixels(&self, p: Point) -> (f64, f64) {
        (
            (p.s - self.viewport.s_min) * self.pixels_per_unit,
            (self.viewport.t_max - p.t) * self.pixels_per_unit,
        )
    }

    /// SVG 1.1 document with the plane's y-axis pointing up.
    pub fn to_svg(&self) -> String {
        let width = (self.viewport.s_max - self.viewport.s_min) * self.pixels_per_unit;
        let height = (self.viewport.t_max - self.viewport.t_min) * self.pixels_per_unit;
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.3}\" height=\"{height:.3}\" viewBox=\"0 0 {width:.3} {height:.3}\">"
        );
        let _ = writeln!(out, "<style type=\"text/css\"><![CDATA[\n{STYLE}]]></style>");
        for line in &self.polylines {
            let class = match line.role {
                CurveRole::Conic => format!("{} conic", line.family.css_class()),
                _ => line.family.css_class().to_owned(),
            };
            let _ = write!(out, "<polyline class=\"{class}\" points=\"");
            for (i, &p) in line.points.iter().enumerate() {
                let (x, y) = self.to_pixels(p);
                if i > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{x:.3},{y:.3}");
            }
            out.push_str("\"/>\n");
        }
        out.push_str("</svg>\n");
        out
    }
}
