//! Planar geometric primitives.
//!
//! Everything here works in meters on `f64` coordinates. The minimum
//! enclosing circle uses the randomized incremental construction with a
//! fixed internal shuffle seed, so results are reproducible across runs
//! and platforms.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    /// The three points span a triangle whose area is below tolerance.
    #[error("points are collinear within tolerance; no circumcircle exists")]
    CollinearPoints,
    /// An operation that needs at least one point got none.
    #[error("empty point set")]
    EmptyInput,
}

/// Absolute tolerance on the signed triangle area (m²) below which three
/// points are treated as collinear. Coordinates are O(10^4) m, so this is
/// far below any meaningful geometry.
pub const COLLINEAR_AREA_TOL: f64 = 1e-9;

/// Relative slack used when testing circle membership during the minimum
/// enclosing circle construction. Keeps boundary points from being
/// re-promoted due to rounding; small enough that results stay within
/// 1e-9 m of the exact circle at the coordinate scales used here.
const MEC_CONTAINS_EPS: f64 = 1e-13;

/// Fixed seed for the internal shuffle of the minimum enclosing circle.
/// The shuffle only affects the insertion order (expected-linear runtime),
/// not the result, but fixing it keeps runs bit-reproducible.
const MEC_SHUFFLE_SEED: u64 = 0x7fb5_d329_728e_a185;

/// A planar location in meters.
///
/// Serialized as a two-element array `[x, y]`; non-finite coordinates are
/// rejected on deserialization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite(), "non-finite coordinate");
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl TryFrom<(f64, f64)> for Point {
    type Error = String;

    fn try_from((x, y): (f64, f64)) -> Result<Self, String> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(format!("non-finite coordinate: [{x}, {y}]"))
        }
    }
}

impl From<Point> for (f64, f64) {
    fn from(p: Point) -> (f64, f64) {
        (p.x, p.y)
    }
}

/// A disk given by center and radius in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Self {
        debug_assert!(radius >= 0.0);
        Self { center, radius }
    }

    /// Membership with a small relative slack on the squared radius.
    fn contains(&self, p: Point) -> bool {
        dist_sq(self.center, p) <= self.radius * self.radius * (1.0 + MEC_CONTAINS_EPS)
    }
}

/// Euclidean distance between two points.
pub fn dist(a: Point, b: Point) -> f64 {
    dist_sq(a, b).sqrt()
}

/// Squared Euclidean distance; preferred for comparisons.
pub fn dist_sq(a: Point, b: Point) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    dx * dx + dy * dy
}

/// Component-wise mean of two points.
pub fn midpoint(a: Point, b: Point) -> Point {
    Point::new((a.x + b.x) / 2.0, (a.y + b.y) / 2.0)
}

/// Circle through three points (the circumcircle).
///
/// Fails with [`GeometryError::CollinearPoints`] when the signed triangle
/// area is below [`COLLINEAR_AREA_TOL`]; callers fall back to the
/// farthest-pair diameter circle in that case.
pub fn circumcenter(a: Point, b: Point, c: Point) -> Result<Circle, GeometryError> {
    // Translate toward the triangle for conditioning before solving.
    let ox = (a.x.min(b.x).min(c.x) + a.x.max(b.x).max(c.x)) / 2.0;
    let oy = (a.y.min(b.y).min(c.y) + a.y.max(b.y).max(c.y)) / 2.0;
    let (ax, ay) = (a.x - ox, a.y - oy);
    let (bx, by) = (b.x - ox, b.y - oy);
    let (cx, cy) = (c.x - ox, c.y - oy);

    let d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    // |d| = 4 * triangle area.
    if d.abs() < 4.0 * COLLINEAR_AREA_TOL {
        return Err(GeometryError::CollinearPoints);
    }
    let a2 = ax * ax + ay * ay;
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
    let uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
    let center = Point::new(ox + ux, oy + uy);
    let radius = dist(center, a).max(dist(center, b)).max(dist(center, c));
    Ok(Circle::new(center, radius))
}

/// Smallest circle through the diameter pair (a, b).
fn diameter_circle(a: Point, b: Point) -> Circle {
    let center = midpoint(a, b);
    Circle::new(center, dist(center, a).max(dist(center, b)))
}

/// Smallest circle containing every input point.
///
/// Randomized incremental construction, expected O(n); determined by at
/// most three support points. The result is deterministic for a given
/// input ordering, and unique (up to rounding) regardless of ordering.
pub fn min_enclosing_circle(points: &[Point]) -> Result<Circle, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    let mut pts = points.to_vec();
    shuffle(&mut pts);

    let mut circle = Circle::new(pts[0], 0.0);
    for i in 1..pts.len() {
        if !circle.contains(pts[i]) {
            circle = mec_one_boundary(&pts[..i], pts[i]);
        }
    }
    Ok(circle)
}

/// MEC of `points` given that `p` lies on the boundary.
fn mec_one_boundary(points: &[Point], p: Point) -> Circle {
    let mut circle = Circle::new(p, 0.0);
    for (i, &q) in points.iter().enumerate() {
        if !circle.contains(q) {
            circle = if circle.radius == 0.0 {
                diameter_circle(p, q)
            } else {
                mec_two_boundary(&points[..=i], p, q)
            };
        }
    }
    circle
}

/// MEC of `points` given that `p` and `q` lie on the boundary.
fn mec_two_boundary(points: &[Point], p: Point, q: Point) -> Circle {
    let base = diameter_circle(p, q);
    let mut left: Option<Circle> = None;
    let mut right: Option<Circle> = None;

    let (px, py) = (q.x - p.x, q.y - p.y);
    for &r in points {
        if base.contains(r) {
            continue;
        }
        let cross = px * (r.y - p.y) - py * (r.x - p.x);
        let Ok(c) = circumcenter(p, q, r) else {
            continue;
        };
        let c_cross = px * (c.center.y - p.y) - py * (c.center.x - p.x);
        if cross > 0.0
            && left.is_none_or(|l| c_cross > px * (l.center.y - p.y) - py * (l.center.x - p.x))
        {
            left = Some(c);
        } else if cross < 0.0
            && right.is_none_or(|l| c_cross < px * (l.center.y - p.y) - py * (l.center.x - p.x))
        {
            right = Some(c);
        }
    }

    match (left, right) {
        (None, None) => base,
        (Some(l), None) => l,
        (None, Some(r)) => r,
        (Some(l), Some(r)) => {
            if l.radius <= r.radius {
                l
            } else {
                r
            }
        }
    }
}

/// Deterministic Fisher-Yates with a fixed seed mixed with the length.
fn shuffle(pts: &mut [Point]) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(MEC_SHUFFLE_SEED ^ (pts.len() as u64));
    for i in (1..pts.len()).rev() {
        let j = rng.random_range(0..=i);
        pts.swap(i, j);
    }
}
