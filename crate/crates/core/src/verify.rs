//! Executable checks of the web and tangency claims.
//!
//! Every check returns a [`VerificationReport`]. Sampling uses
//! [`ChaCha8Rng`] seeded through `seed_from_u64`, so a report is a pure
//! function of its arguments and is reproduced bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::focal::{self, Point};
use crate::tangency::{self, ScalingPair};
use crate::webs::{
    self, Direction, DomainMode, DomainSpec, Invariant, MapConstants, WebCoords, WebId,
};

/// Tolerance of the level-set, closed-form, roundtrip, hexagon and
/// tangency checks.
pub const TOLERANCE: f64 = 1e-9;
/// Smallest admissible `|det|` of the Jacobian.
pub const MIN_DETERMINANT: f64 = 1e-8;

pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_JACOBIAN_SAMPLES: usize = 1_000;
pub const DEFAULT_HEXAGONS: usize = 100;
pub const DEFAULT_TANGENCY_MEMBERS: usize = 100;

/// Scale factors exercised by the default tangency sweep.
pub fn default_tangency_scales() -> [f64; 6] {
    [0.3, std::f64::consts::FRAC_1_SQRT_2, 0.9, 1.1, std::f64::consts::SQRT_2, 3.0]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub web: Option<WebId>,
    pub samples: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub seed: u64,
}

impl VerificationReport {
    fn new(check: &str, web: Option<WebId>, samples: usize, max_error: f64, tolerance: f64, seed: u64) -> Self {
        Self {
            check_name: check.to_owned(),
            web,
            samples,
            max_error,
            tolerance,
            // NaN never passes
            passed: max_error <= tolerance,
            seed,
        }
    }
}

/// `|a - b| / max(1, |a|, |b|)`: relative away from zero, absolute near it.
pub fn relative_error(a: f64, b: f64) -> f64 {
    let err = (a - b).abs() / 1f64.max(a.abs()).max(b.abs());
    if err.is_nan() {
        f64::INFINITY
    } else {
        err
    }
}

/// Chart box used for random samples, well inside each domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartBox {
    pub x: (f64, f64),
    pub y: (f64, f64),
}

impl ChartBox {
    pub fn sampling(web: WebId) -> Self {
        match web {
            WebId::W1 => Self { x: (0.05, 4.0), y: (-4.0, 4.0) },
            WebId::W2 | WebId::W3 => Self { x: (0.05, 4.0), y: (-4.0, -0.05) },
            WebId::W4 => Self { x: (-4.0, 4.0), y: (-4.0, -0.05) },
        }
    }

    pub fn sample(&self, rng: &mut impl Rng) -> WebCoords {
        WebCoords::new(rng.gen_range(self.x.0..self.x.1), rng.gen_range(self.y.0..self.y.1))
    }

    /// Parameters `u` with `base + u * dir` inside the box.
    pub fn line_interval(&self, base: WebCoords, dir: (f64, f64)) -> Option<(f64, f64)> {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for (b, d, (min, max)) in [(base.x, dir.0, self.x), (base.y, dir.1, self.y)] {
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

    /// Random point of the box, and a second one on the same line of
    /// `direction`.
    pub fn sample_pair(&self, direction: Direction, rng: &mut impl Rng) -> (WebCoords, WebCoords) {
        loop {
            let first = self.sample(rng);
            let dir = direction.tangent();
            if let Some((lo, hi)) = self.line_interval(first, dir) {
                let u = rng.gen_range(lo..hi);
                return (first, first.offset(dir, u));
            }
        }
    }
}

/// One leaf law: along lines of `direction` the `invariant` equals
/// `closed_form(level)`.
#[derive(Debug, Clone, Copy)]
pub struct LevelLaw {
    pub direction: Direction,
    pub invariant: Invariant,
    pub closed_form: fn(f64) -> f64,
}

macro_rules! law {
    ($web:expr, $dir:expr) => {{
        fn closed_form(level: f64) -> f64 {
            webs::leaf_value($web, $dir, level).expect("supported direction")
        }
        LevelLaw {
            direction: $dir,
            invariant: webs::invariant_of($web, $dir).expect("supported direction"),
            closed_form,
        }
    }};
}

/// The leaf laws of `web`, in direction order.
pub fn level_laws(web: WebId) -> Vec<LevelLaw> {
    use Direction::*;
    match web {
        WebId::W1 => vec![law!(WebId::W1, XConst), law!(WebId::W1, YConst), law!(WebId::W1, DiagMinus)],
        WebId::W2 => vec![law!(WebId::W2, XConst), law!(WebId::W2, YConst), law!(WebId::W2, DiagMinus)],
        WebId::W3 => vec![
            law!(WebId::W3, XConst),
            law!(WebId::W3, YConst),
            law!(WebId::W3, DiagMinus),
            law!(WebId::W3, DiagPlus),
        ],
        WebId::W4 => vec![
            law!(WebId::W4, XConst),
            law!(WebId::W4, YConst),
            law!(WebId::W4, DiagMinus),
            law!(WebId::W4, DiagPlus),
        ],
    }
}

fn invariant_at(web: WebId, c: WebCoords, inv: Invariant, k: MapConstants) -> f64 {
    let p = webs::forward_with(web, c, k);
    inv.evaluate(p).unwrap_or(f64::NAN)
}

fn seeded(seed: u64, web: Option<WebId>, salt: u64) -> ChaCha8Rng {
    let web_tag = web.map_or(0, |w| w as u64 + 1);
    ChaCha8Rng::seed_from_u64(seed ^ (web_tag << 56) ^ (salt << 48))
}

/// Pairs of points on a common leaf have equal invariants, and both equal
/// the leaf's closed form.
pub fn verify_level_sets(web: WebId, n: usize, seed: u64) -> Result<VerificationReport> {
    verify_level_sets_with(web, n, seed, &level_laws(web), MapConstants::default())
}

/// [`verify_level_sets`] with substituted laws or map constants.
pub fn verify_level_sets_with(
    web: WebId,
    n: usize,
    seed: u64,
    laws: &[LevelLaw],
    k: MapConstants,
) -> Result<VerificationReport> {
    if n < 2 {
        return Err(Error::InvalidArgument("level-set check needs n >= 2".into()));
    }
    let mut rng = seeded(seed, Some(web), 1);
    let bounds = ChartBox::sampling(web);
    let mut worst = 0.0f64;
    for law in laws {
        for _ in 0..n {
            let (c0, c1) = bounds.sample_pair(law.direction, &mut rng);
            let v0 = invariant_at(web, c0, law.invariant, k);
            let v1 = invariant_at(web, c1, law.invariant, k);
            let expected = (law.closed_form)(law.direction.level(c0));
            worst = worst
                .max(relative_error(v0, v1))
                .max(relative_error(v0, expected))
                .max(relative_error(v1, expected));
        }
    }
    Ok(VerificationReport::new("level_sets", Some(web), n * laws.len(), worst, TOLERANCE, seed))
}

/// Measures from raw focal distances at forward-mapped points agree with
/// every closed form of the web.
pub fn verify_closed_forms(web: WebId, n: usize, seed: u64) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("closed-form check needs n >= 1".into()));
    }
    let mut rng = seeded(seed, Some(web), 2);
    let bounds = ChartBox::sampling(web);
    let laws = level_laws(web);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let c = bounds.sample(&mut rng);
        let p = webs::forward(web, c)?;
        let Ok(m) = focal::measures(p) else {
            worst = f64::INFINITY;
            continue;
        };
        for law in &laws {
            let got = law.invariant.from_measures(p, &m);
            let expected = (law.closed_form)(law.direction.level(c));
            worst = worst.max(relative_error(got, expected));
        }
    }
    Ok(VerificationReport::new("closed_forms", Some(web), n, worst, TOLERANCE, seed))
}

/// Quadrant point with log-uniform ellipse and hyperbola gaps.
///
/// `e - 2` ranges over `[1e-2, 20]` and `h = 2 / (1 + 10^u)` with
/// `u` in `[-2, 2]`, so both the segment between the foci and the axis
/// beyond them are approached.
pub fn sample_measure_space(rng: &mut impl Rng) -> Point {
    loop {
        let e = 2.0 + 10f64.powf(rng.gen_range(-2.0..1.3));
        let h = 2.0 / (1.0 + 10f64.powf(rng.gen_range(-2.0..2.0)));
        if let Ok(p) = focal::point_from_eh(e, h) {
            return p;
        }
    }
}

/// Plane-side and chart-side roundtrips through [`webs::inverse`] and
/// [`webs::forward`].
///
/// Each of the `n` iterations draws one point uniformly from
/// `[1e-2, 10]^2`, one point log-uniformly in measure space, and one chart
/// point in the sampling box. The error is the largest absolute
/// coordinate displacement.
pub fn verify_roundtrip(web: WebId, n: usize, seed: u64) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("roundtrip check needs n >= 1".into()));
    }
    let mut rng = seeded(seed, Some(web), 3);
    let bounds = ChartBox::sampling(web);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let uniform = Point::new(rng.gen_range(1e-2..10.0), rng.gen_range(1e-2..10.0));
        let logarithmic = sample_measure_space(&mut rng);
        for p in [uniform, logarithmic] {
            worst = worst.max(point_roundtrip_error(web, p));
        }
        let c = bounds.sample(&mut rng);
        worst = worst.max(chart_roundtrip_error(web, c));
    }
    Ok(VerificationReport::new("roundtrip", Some(web), 3 * n, worst, TOLERANCE, seed))
}

/// `|forward(inverse(p)) - p|`, infinite if either step fails.
pub fn point_roundtrip_error(web: WebId, p: Point) -> f64 {
    webs::inverse(web, p)
        .and_then(|c| webs::forward(web, c))
        .map_or(f64::INFINITY, |q| (q.s - p.s).abs().max((q.t - p.t).abs()))
}

/// `|inverse(forward(c)) - c|`, infinite if either step fails.
pub fn chart_roundtrip_error(web: WebId, c: WebCoords) -> f64 {
    webs::forward(web, c)
        .and_then(|p| webs::inverse(web, p))
        .map_or(f64::INFINITY, |d| (d.x - c.x).abs().max((d.y - c.y).abs()))
}

/// Jacobian determinants at `n` interior samples.
///
/// The reported error is `1 / min(sign * det)` with the sign of the first
/// sample; a sign change or zero reports `f64::MAX`. The tolerance is
/// `1 / MIN_DETERMINANT`.
pub fn verify_jacobian(web: WebId, n: usize, seed: u64) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("jacobian check needs n >= 1".into()));
    }
    let mut rng = seeded(seed, Some(web), 4);
    let bounds = ChartBox::sampling(web);
    let mut sign = 0.0;
    let mut smallest = f64::INFINITY;
    for _ in 0..n {
        let det = webs::jacobian(web, bounds.sample(&mut rng))?.det();
        if sign == 0.0 {
            sign = det.signum();
        }
        smallest = smallest.min(sign * det);
    }
    let err = if smallest > 0.0 { 1.0 / smallest } else { f64::MAX };
    Ok(VerificationReport::new("jacobian", Some(web), n, err, 1.0 / MIN_DETERMINANT, seed))
}

/// Chart steps of the Thomsen hexagon: along `y = const`, `x - y = const`,
/// `x = const`, then the same three leaves backwards.
const HEXAGON_STEPS: [((f64, f64), f64); 6] = [
    ((1.0, 0.0), 1.0),
    ((1.0, 1.0), 1.0),
    ((0.0, 1.0), 1.0),
    ((1.0, 0.0), -1.0),
    ((1.0, 1.0), -1.0),
    ((0.0, 1.0), -1.0),
];

/// Walks the hexagon through the plane and returns its vertices, the
/// last of which should coincide with `seed_point`.
pub fn hexagon_vertices(web: WebId, seed_point: Point, delta: f64) -> Result<Vec<Point>> {
    let domain = DomainSpec::of(web, DomainMode::Corrected);
    let mut vertices = Vec::with_capacity(7);
    let mut p = seed_point.require_quadrant()?;
    vertices.push(p);
    for (i, (dir, sign)) in HEXAGON_STEPS.iter().enumerate() {
        let c = webs::inverse(web, p).map_err(|_| Error::LeftDomain { web, vertex: i })?;
        let next = c.offset(*dir, sign * delta);
        if !domain.contains(next) {
            return Err(Error::LeftDomain { web, vertex: i + 1 });
        }
        p = webs::forward(web, next)?;
        if !p.in_quadrant() {
            return Err(Error::LeftDomain { web, vertex: i + 1 });
        }
        vertices.push(p);
    }
    Ok(vertices)
}

/// Closure error of one Thomsen hexagon started at `seed_point`.
pub fn hexagon_closure(web: WebId, seed_point: Point, delta: f64, tol: f64) -> Result<VerificationReport> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidArgument(format!("hexagon step {delta}")));
    }
    let vertices = hexagon_vertices(web, seed_point, delta)?;
    let end = vertices[vertices.len() - 1];
    let gap = end.distance(seed_point);
    Ok(VerificationReport::new("hexagon_closure", Some(web), 1, gap, tol, 0))
}

/// `n` hexagons with random start and step, chosen so the chart hexagon
/// stays inside the sampling box.
pub fn verify_hexagons(web: WebId, n: usize, seed: u64) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("hexagon check needs n >= 1".into()));
    }
    let mut rng = seeded(seed, Some(web), 5);
    let bounds = ChartBox::sampling(web);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let delta = rng.gen_range(0.01..0.3);
        let start_box = ChartBox {
            x: (bounds.x.0, bounds.x.1 - 2.0 * delta),
            y: (bounds.y.0, bounds.y.1 - 2.0 * delta),
        };
        let start = webs::forward(web, start_box.sample(&mut rng))?;
        let report = hexagon_closure(web, start, delta, TOLERANCE)?;
        worst = worst.max(report.max_error);
    }
    Ok(VerificationReport::new("hexagon_closure", Some(web), n, worst, TOLERANCE, seed))
}

/// Discriminant residuals of `n` scaled circles per applicable pencil.
pub fn verify_tangency_sweep(k1: f64, n: usize) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("tangency sweep needs n >= 1".into()));
    }
    let pair = ScalingPair::new(k1, None)?;
    let worst = tangency::sweep_residual(&pair, n)?;
    let members = n * pair.pencils().len();
    Ok(VerificationReport::new("tangency_sweep", None, members, worst, TOLERANCE, 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    LevelSets,
    ClosedForms,
    Roundtrip,
    Jacobian,
    Hexagon,
    Tangency,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::LevelSets,
        Check::ClosedForms,
        Check::Roundtrip,
        Check::Jacobian,
        Check::Hexagon,
        Check::Tangency,
    ];
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub webs: Vec<WebId>,
    pub checks: Vec<Check>,
    pub seed: u64,
    /// Overrides every per-check default size.
    pub samples: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            webs: WebId::ALL.to_vec(),
            checks: Check::ALL.to_vec(),
            seed: 42,
            samples: None,
        }
    }
}

/// Runs the configured checks: per web in web order, then the tangency
/// sweeps.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let size = |default: usize| config.samples.unwrap_or(default);
    let mut reports = Vec::new();
    for &web in &config.webs {
        for &check in &config.checks {
            let seed = config.seed;
            let report = match check {
                Check::LevelSets => verify_level_sets(web, size(DEFAULT_SAMPLES).max(2), seed)?,
                Check::ClosedForms => verify_closed_forms(web, size(DEFAULT_SAMPLES), seed)?,
                Check::Roundtrip => verify_roundtrip(web, size(DEFAULT_SAMPLES), seed)?,
                Check::Jacobian => verify_jacobian(web, size(DEFAULT_JACOBIAN_SAMPLES), seed)?,
                Check::Hexagon => verify_hexagons(web, size(DEFAULT_HEXAGONS), seed)?,
                Check::Tangency => continue,
            };
            reports.push(report);
        }
    }
    if config.checks.contains(&Check::Tangency) {
        for k1 in default_tangency_scales() {
            reports.push(verify_tangency_sweep(k1, size(DEFAULT_TANGENCY_MEMBERS))?);
        }
    }
    Ok(reports)
}

pub fn all_passed(reports: &[VerificationReport]) -> bool {
    !reports.is_empty() && reports.iter().all(|r| r.passed)
}
