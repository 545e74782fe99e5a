//! Reference computations that share no code path with the library.

#![allow(dead_code)]

/// `(a, b, f, g, h, e)` straight from the distance definitions.
pub fn raw_measures(s: f64, t: f64) -> [f64; 6] {
    let a = ((s + 1.0).powi(2) + t * t).sqrt();
    let b = ((s - 1.0).powi(2) + t * t).sqrt();
    [a, b, a / b, (a * a + b * b - 4.0) / (2.0 * a * b), a - b, a + b]
}

/// Chart coordinates from the `f, g, e, h` inversion formulas as written,
/// without any cancellation-free rearrangement.
pub fn naive_inverse(web: u8, s: f64, t: f64) -> (f64, f64) {
    let [_, _, f, g, h, e] = raw_measures(s, t);
    match web {
        1 => ((2.0 / (1.0 - g)).ln(), (((f + 1.0) / (f - 1.0)).powi(2) - 1.0).ln()),
        2 => ((2.0 / (1.0 + g)).ln(), (1.0 - ((f - 1.0) / (f + 1.0)).powi(2)).ln()),
        3 => ((e / 2.0).ln(), (h / 2.0).ln()),
        4 => (((e / 2.0).powi(2) - 1.0).ln(), (1.0 - (h / 2.0).powi(2)).ln()),
        _ => unreachable!(),
    }
}

/// Golden-section search for the extremum of a unimodal `f` on `[lo, hi]`.
pub fn golden_extremum(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, maximize: bool) -> f64 {
    let sign = if maximize { -1.0 } else { 1.0 };
    let g = |x: f64| sign * f(x);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let (mut fc, mut fd) = (g(c), g(d));
    for _ in 0..200 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = g(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = g(d);
        }
    }
    f(0.5 * (lo + hi))
}

/// Closest distance from `(cx, 0)` (cx > 0) to the right branch
/// `(A cosh u, B sinh u)`.
pub fn hyperbola_min_distance_from_axis_point(a: f64, b: f64, cx: f64) -> f64 {
    let d2 = |u: f64| (a * u.cosh() - cx).powi(2) + (b * u.sinh()).powi(2);
    let reach = (2.0 * cx / a).max(2.0).acosh() + 1.0;
    golden_extremum(d2, 0.0, reach, false).sqrt()
}

/// Closest distance from `(0, d)` to the right branch.
pub fn hyperbola_min_distance_from_ordinate(a: f64, b: f64, d: f64) -> f64 {
    let d2 = |u: f64| (a * u.cosh()).powi(2) + (b * u.sinh() - d).powi(2);
    let reach = (d.abs() / b).asinh() + 2.0;
    golden_extremum(d2, -reach, reach, false).sqrt()
}

/// Farthest distance from `(0, d)` to the ellipse over the right half,
/// where the squared distance is unimodal in the angle.
pub fn ellipse_max_distance_from_ordinate(a: f64, b: f64, d: f64) -> f64 {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let d2 = |u: f64| (a * u.cos()).powi(2) + (b * u.sin() - d).powi(2);
    golden_extremum(d2, -half_pi, half_pi, true).sqrt()
}
