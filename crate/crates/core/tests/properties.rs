//! Property tests for the focal measures, chart maps and pencils.

mod oracles;

use proptest::prelude::*;

use tweb_core::focal::{self, Axis, CurveDescriptor, Family, Point};
use tweb_core::tangency::{self, PencilParam, ScalingPair};
use tweb_core::webs::{self, Direction, WebCoords, WebId};

fn quadrant_point() -> impl Strategy<Value = Point> {
    (1e-3..10.0f64, 1e-3..10.0f64).prop_map(|(s, t)| Point::new(s, t))
}

fn web() -> impl Strategy<Value = WebId> {
    prop_oneof![Just(WebId::W1), Just(WebId::W2), Just(WebId::W3), Just(WebId::W4)]
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn measure_ranges(p in quadrant_point()) {
        let m = focal::measures(p).unwrap();
        prop_assert!(m.f > 1.0);
        prop_assert!(m.g > -1.0 && m.g < 1.0);
        prop_assert!(m.h > 0.0 && m.h < 2.0);
        prop_assert!(m.e > 2.0);
    }

    #[test]
    fn measure_identities(p in quadrant_point()) {
        let m = focal::measures(p).unwrap();
        prop_assert!(rel(m.f, (m.e + m.h) / (m.e - m.h)) <= 1e-12);
        prop_assert!(rel(m.e * m.e - m.h * m.h, 4.0 * m.a * m.b) <= 1e-12);
        prop_assert!((m.g - (m.e * m.e + m.h * m.h - 8.0) / (m.e * m.e - m.h * m.h)).abs() <= 1e-12);
    }

    #[test]
    fn measures_match_raw_distances(p in quadrant_point()) {
        let m = focal::measures(p).unwrap();
        let raw = oracles::raw_measures(p.s, p.t);
        for (got, want) in [m.a, m.b, m.f, m.g, m.h, m.e].into_iter().zip(raw) {
            // h = a - b loses digits near the y-axis in the raw form
            prop_assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0));
        }
    }

    #[test]
    fn symmetries(p in quadrant_point()) {
        let (a, b) = focal::focal_distances(p).unwrap();
        let (am, bm) = focal::focal_distances(focal::reflect(p, Axis::Vertical)).unwrap();
        let (ah, bh) = focal::focal_distances(focal::reflect(p, Axis::Horizontal)).unwrap();
        let (ab, bb) = focal::focal_distances(focal::reflect(p, Axis::Both)).unwrap();
        let g = |a: f64, b: f64| (a * a + b * b - 4.0) / (2.0 * a * b);
        prop_assert!(rel((a / b) * (am / bm), 1.0) <= 1e-12);
        prop_assert!((g(a, b) - g(am, bm)).abs() <= 1e-12);
        prop_assert!((g(a, b) - g(ah, bh)).abs() <= 1e-12);
        prop_assert!(((a - b) + (am - bm)).abs() <= 1e-12 * (a + b));
        for e in [am + bm, ah + bh, ab + bb] {
            prop_assert!(rel(a + b, e) <= 1e-12);
        }
    }

    #[test]
    fn eh_roundtrip(p in quadrant_point()) {
        let m = focal::measures(p).unwrap();
        let q = focal::point_from_eh(m.e, m.h).unwrap();
        prop_assert!((q.s - p.s).abs() <= 1e-9 && (q.t - p.t).abs() <= 1e-9, "{p:?} -> {q:?}");
    }

    #[test]
    fn curves_pass_through_their_point(p in quadrant_point()) {
        for family in Family::ALL {
            let c = focal::curve_through(p, family).unwrap();
            prop_assert!(focal::residual(&c, p) <= 1e-12 * p.s.max(p.t).max(1.0) * 10.0,
                "{family}: {}", focal::residual(&c, p));
        }
    }

    #[test]
    fn inverse_agrees_with_textbook_formulas(w in web(), s in 0.05..5.0f64, t in 0.05..5.0f64) {
        let c = webs::inverse(w, Point::new(s, t)).unwrap();
        let (x, y) = oracles::naive_inverse(w as u8 + 1, s, t);
        prop_assert!((c.x - x).abs() <= 1e-8 && (c.y - y).abs() <= 1e-8, "{c:?} vs ({x}, {y})");
    }

    #[test]
    fn images_are_in_the_open_quadrant(w in web(), x in -6.0..6.0f64, y in -6.0..6.0f64) {
        let c = match w {
            WebId::W1 => WebCoords::new(x.abs().max(1e-3), y),
            WebId::W4 => WebCoords::new(x, -y.abs().max(1e-3)),
            _ => WebCoords::new(x.abs().max(1e-3), -y.abs().max(1e-3)),
        };
        prop_assert!(webs::domain_contains(w, c));
        let p = webs::forward(w, c).unwrap();
        prop_assert!(p.s > 0.0 && p.t > 0.0);
        prop_assert!(webs::domain_contains(w, webs::inverse(w, p).unwrap()));
    }

    #[test]
    fn cross_web_consistency(w in web(), p in quadrant_point()) {
        prop_assume!(p.s >= 0.01 && p.t >= 0.01);
        let m = focal::measures(p).unwrap();
        let c = webs::inverse(w, p).unwrap();
        for &d in w.directions() {
            let inv = webs::invariant_of(w, d).unwrap();
            let closed = webs::leaf_value(w, d, d.level(c)).unwrap();
            let direct = inv.from_measures(p, &m);
            prop_assert!((closed - direct).abs() <= 1e-9 * direct.abs().max(1.0),
                "{w} {d}: {closed} vs {direct}");
        }
    }

    #[test]
    fn scaled_circles_touch_hyperbola(k1 in 0.05..0.95f64, mu in 1.01..60.0f64, d in -20.0..20.0f64) {
        let pair = ScalingPair::new(k1, None).unwrap();
        for member in [PencilParam::hyperbolic(mu), PencilParam::elliptic(d)] {
            let c = tangency::scaled_circle(member, &pair).unwrap();
            prop_assert!(tangency::tangency_residual(&c, &pair.conic).unwrap() < 1e-9);
        }
    }

    #[test]
    fn scaled_circles_touch_ellipse(k1 in 1.01..5.0f64, d in -20.0..20.0f64) {
        let pair = ScalingPair::new(k1, None).unwrap();
        let c = tangency::scaled_circle(PencilParam::elliptic(d), &pair).unwrap();
        let cert = tangency::tangency_certificate(&c, &pair.conic).unwrap();
        prop_assert!(cert.residual < 1e-9);
        let semi_minor = (k1 * k1 - 1.0).sqrt();
        // real exactly when the double root y = -d B^2 stays within [-B, B]
        if (d.abs() * semi_minor - 1.0).abs() > 1e-9 {
            prop_assert_eq!(cert.is_real(), d.abs() * semi_minor <= 1.0);
        }
    }
}

/// Sampled points of each descriptor stay on it, and the Apollonian
/// circles keep their defining metric property.
#[test]
fn descriptor_parametrizations() {
    let cases = [
        CurveDescriptor::hyperbolic_circle(1.3).unwrap(),
        CurveDescriptor::hyperbolic_circle(7.0).unwrap(),
        CurveDescriptor::elliptic_circle(-0.6).unwrap(),
        CurveDescriptor::elliptic_circle(0.8).unwrap(),
        CurveDescriptor::ellipse(2.5).unwrap(),
        CurveDescriptor::hyperbola(0.4).unwrap(),
        CurveDescriptor::VerticalLine { abscissa: 1.5 },
        CurveDescriptor::HorizontalLine { ordinate: 0.5 },
    ];
    for c in cases {
        for i in 0..100 {
            let u = match c.family() {
                Family::ConfocalHyperbola => -3.0 + 6.0 * i as f64 / 99.0,
                Family::VerticalLine | Family::HorizontalLine => -5.0 + 10.0 * i as f64 / 99.0,
                _ => std::f64::consts::TAU * i as f64 / 100.0,
            };
            let p = c.point_at(u);
            assert!(focal::residual(&c, p) <= 1e-9, "{c:?} at {u}");
        }
    }

    for mu in [1.3, 2.0, 7.0] {
        let c = CurveDescriptor::hyperbolic_circle(mu).unwrap();
        for i in 0..100 {
            let p = c.point_at(std::f64::consts::TAU * (i as f64 + 0.5) / 100.0);
            let [a, b, ..] = oracles::raw_measures(p.s, p.t);
            assert!(rel(a / b, mu) <= 1e-12, "mu {mu}: {}", a / b);
        }
    }
    for g in [-0.6, 0.0, 0.8] {
        let c = CurveDescriptor::elliptic_circle(g).unwrap();
        for i in 0..100 {
            // upper arc only
            let p = c.point_at(std::f64::consts::PI * (i as f64 + 0.5) / 100.0);
            if p.t <= 1e-6 {
                continue;
            }
            let cos = oracles::raw_measures(p.s, p.t)[3];
            assert!((cos - g).abs() <= 1e-12, "g {g}: {cos}");
        }
    }
}

#[test]
fn jacobian_sign_constant_over_w3_sweep() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let mut signs = std::collections::BTreeSet::new();
    for _ in 0..1000 {
        let c = WebCoords::new(rng.gen_range(0.01..4.0), rng.gen_range(-4.0..-0.01));
        let det = webs::jacobian(WebId::W3, c).unwrap().det();
        assert!(det.abs() > 1e-8);
        signs.insert(det > 0.0);
    }
    assert_eq!(signs.len(), 1);
}

#[test]
fn w3_vertical_lines_on_diagonals() {
    for level in [-2.0, -0.5, 0.0, 1.0] {
        let (base, dir) = Direction::DiagPlus.line(level);
        for u in [-3.0, -1.0, 0.5] {
            let c = base.offset(dir, u);
            if webs::domain_contains(WebId::W3, c) {
                let p = webs::forward(WebId::W3, c).unwrap();
                assert!((p.s - f64::exp(level)).abs() < 1e-12);
            }
        }
    }
}
