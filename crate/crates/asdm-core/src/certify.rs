//! Segment certificates: concavity-defect residuals and pseudo-convexity
//! probes, plus seeded sampling over box regions.
//!
//! The class certified here is the set of functions satisfying, for some
//! mu > 0 and v >= 2,
//!
//! ```text
//! f(a x + (1-a) y) >= a f(x) + (1-a) f(y) - a (1-a) mu ||x - y||^v
//! ```
//!
//! for all segment endpoints in the region of interest. A C^{1,1} function
//! with gradient Lipschitz constant L belongs with mu = L / 2 and v = 2.
//! The residual functions below return the slack of these inequalities;
//! a negative residual (beyond rounding) is a counterexample.

use rand::Rng;

use crate::objective::Objective;
use crate::point::Point;

/// One sampled segment: endpoints and an interior parameter.
#[derive(Clone, Debug)]
pub struct SegmentSample {
    pub x: Point,
    pub y: Point,
    pub alpha: f64,
}

/// Slack of the defect inequality at one segment evaluation:
///
/// `f(ax + (1-a)y) - [a f(x) + (1-a) f(y) - a (1-a) mu ||x - y||^v]`.
///
/// Nonnegative (up to rounding) whenever the certificate (mu, v) is valid
/// on the segment.
pub fn condition_a_residual(
    obj: &impl Objective,
    x: &Point,
    y: &Point,
    alpha: f64,
    mu: f64,
    v: f64,
) -> f64 {
    assert!((0.0..=1.0).contains(&alpha), "alpha must lie in [0, 1]");
    assert!(mu > 0.0, "mu must be positive");
    assert!(v >= 2.0, "v must be at least 2");
    let z = Point::convex_combination(alpha, x, y);
    let chord = alpha * obj.value(x) + (1.0 - alpha) * obj.value(y);
    let slack = alpha * (1.0 - alpha) * mu * x.sub(y).norm_pow(v);
    obj.value(&z) - (chord - slack)
}

/// Slack of the first-order form of the same certificate:
///
/// `[f(x) - f(y)] - [<grad f(x), x - y> - mu ||x - y||^v]`.
pub fn differential_inequality_residual(
    obj: &impl Objective,
    x: &Point,
    y: &Point,
    mu: f64,
    v: f64,
) -> f64 {
    assert!(mu > 0.0, "mu must be positive");
    assert!(v >= 2.0, "v must be at least 2");
    let d = x.sub(y);
    (obj.value(x) - obj.value(y)) - (obj.gradient(x).dot(&d) - mu * d.norm_pow(v))
}

/// True when the pair (x, y) witnesses a pseudo-convexity violation:
/// f(y) < f(x) while <grad f(x), y - x> >= 0. For a pseudo-convex function
/// a strictly better point always sees a strictly negative directional
/// derivative, so no such pair exists.
pub fn pseudoconvexity_witness(obj: &impl Objective, x: &Point, y: &Point) -> bool {
    obj.value(y) < obj.value(x) && obj.gradient(x).dot(&y.sub(x)) >= 0.0
}

/// Axis-aligned sampling region, a box approximation of the sublevel set of
/// the configured start point.
#[derive(Clone, Debug)]
pub struct SamplingBox {
    pub center: Point,
    pub half_width: f64,
}

impl SamplingBox {
    pub fn new(center: Point, half_width: f64) -> Self {
        assert!(half_width > 0.0, "half width must be positive");
        SamplingBox { center, half_width }
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Point {
        let coords = self
            .center
            .as_slice()
            .iter()
            .map(|c| c + rng.gen_range(-self.half_width..=self.half_width))
            .collect();
        Point::new(coords)
    }
}

/// Outcome of a randomized certificate scan.
#[derive(Clone, Debug)]
pub struct ScanOutcome {
    pub samples: usize,
    pub violations: usize,
    /// Worst residual divided by its scale `1 + |f(x)| + |f(y)|`.
    pub min_scaled_residual: f64,
    pub worst: Option<SegmentSample>,
}

/// Draws `n` segments in `region` and evaluates [`condition_a_residual`] on
/// each. A sample counts as a violation when the residual falls below
/// `-1e-12 * (1 + |f(x)| + |f(y)|)`.
pub fn scan_condition_a(
    obj: &impl Objective,
    region: &SamplingBox,
    mu: f64,
    v: f64,
    n: usize,
    rng: &mut impl Rng,
) -> ScanOutcome {
    let mut violations = 0;
    let mut min_scaled = f64::INFINITY;
    let mut worst = None;
    for _ in 0..n {
        let x = region.sample(rng);
        let mut y = region.sample(rng);
        while y == x {
            y = region.sample(rng);
        }
        let alpha = rng.gen_range(0.0..=1.0);
        let r = condition_a_residual(obj, &x, &y, alpha, mu, v);
        let scale = 1.0 + obj.value(&x).abs() + obj.value(&y).abs();
        let scaled = r / scale;
        if scaled < min_scaled {
            min_scaled = scaled;
            worst = Some(SegmentSample {
                x: x.clone(),
                y: y.clone(),
                alpha,
            });
        }
        if scaled < -1e-12 {
            violations += 1;
        }
    }
    ScanOutcome {
        samples: n,
        violations,
        min_scaled_residual: min_scaled,
        worst,
    }
}

/// Draws `n` ordered pairs in `region` and returns the ones that witness a
/// pseudo-convexity violation, capped at eight pairs.
pub fn scan_pseudoconvexity(
    obj: &impl Objective,
    region: &SamplingBox,
    n: usize,
    rng: &mut impl Rng,
) -> Vec<(Point, Point)> {
    let mut found = Vec::new();
    for _ in 0..n {
        let x = region.sample(rng);
        let y = region.sample(rng);
        if pseudoconvexity_witness(obj, &x, &y) {
            found.push((x, y));
            if found.len() == 8 {
                break;
            }
        }
    }
    found
}
