//! Plane geometry for the event tracer: orientation, circumcircles and
//! circles internally tangent to the unit circle.

use core::f64::consts::TAU;
use core::ops::{Add, Mul, Sub};

use crate::error::DomainError;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn polar(r: f64, theta: f64) -> Self {
        Point::new(r * libm::cos(theta), r * libm::sin(theta))
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn angle(self) -> f64 {
        libm::atan2(self.y, self.x)
    }

    pub fn lerp(self, o: Point, s: f64) -> Point {
        Point::new(self.x + (o.x - self.x) * s, self.y + (o.y - self.y) * s)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// `det[b-a, c-a]`: positive when `a, b, c` turn counterclockwise, zero
/// when collinear.
pub fn orientation(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

/// Relative threshold below which three points count as collinear.
pub const COLLINEAR_EPS: f64 = 1e-10;

fn max_sep_sq(p: Point, q: Point, r: Point) -> f64 {
    (q - p)
        .norm_sq()
        .max((r - p).norm_sq())
        .max((r - q).norm_sq())
}

/// Whether `|orientation|` is negligible relative to the squared spread of
/// the points.
pub fn nearly_collinear(p: Point, q: Point, r: Point) -> bool {
    orientation(p, q, r).abs() <= COLLINEAR_EPS * max_sep_sq(p, q, r)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

/// The three points passed to [`circumcircle`] are (numerically) collinear.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Collinear;

/// Unique circle through three non-collinear points.
pub fn circumcircle(p: Point, q: Point, r: Point) -> Result<Circle, Collinear> {
    if nearly_collinear(p, q, r) {
        return Err(Collinear);
    }
    let (b, c) = (q - p, r - p);
    let d = 2.0 * b.cross(c);
    let (bb, cc) = (b.norm_sq(), c.norm_sq());
    let u = Point::new((c.y * bb - b.y * cc) / d, (b.x * cc - c.x * bb) / d);
    Ok(Circle {
        center: p + u,
        radius: u.norm(),
    })
}

impl Circle {
    /// `|c| + r - 1`: zero exactly for circles internally tangent to the
    /// unit circle.
    pub fn tangency_residual(&self) -> f64 {
        self.center.norm() + self.radius - 1.0
    }

    /// The point of the circle closest to the unit circle, `c/|c|` for an
    /// internally tangent circle. `None` for a circle centered at the origin.
    pub fn tangency_point(&self) -> Option<Point> {
        let m = self.center.norm();
        (m > 0.0).then(|| self.center * (1.0 / m))
    }

    /// Distance of `p` from the circle itself.
    pub fn distance(&self, p: Point) -> f64 {
        ((p - self.center).norm() - self.radius).abs()
    }

    /// Counterclockwise angle in `[0, 2π)` from the tangency point to `p`,
    /// seen from the center.
    pub fn angle_from_tangency(&self, p: Point) -> f64 {
        let base = self.center.angle();
        let a = (p - self.center).angle() - base;
        let a = a - TAU * libm::floor(a / TAU);
        if a >= TAU {
            0.0
        } else {
            a
        }
    }
}

/// Smooth stand-in for the tangency residual of the circle through
/// `p, q, r`.
///
/// Writing the circle as `A(x²+y²) + Dx + Ey + F = 0` this is
/// `D² + E² - (A+F)²`, which equals
/// `A²·(r²-(1-|c|)²)·((1+|c|)²-r²)`. For points inside the open unit disc
/// the last factor is positive, so its sign is that of `|c| + r - 1`. Unlike
/// the residual it stays finite (and positive) through collinear
/// configurations.
pub fn tangency_polynomial(p: Point, q: Point, r: Point) -> f64 {
    let (sp, sq, sr) = (p.norm_sq(), q.norm_sq(), r.norm_sq());
    let det3 = |a: [f64; 3], b: [f64; 3], c: [f64; 3]| {
        a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
    };
    let a = det3([p.x, p.y, 1.0], [q.x, q.y, 1.0], [r.x, r.y, 1.0]);
    let d = -det3([sp, p.y, 1.0], [sq, q.y, 1.0], [sr, r.y, 1.0]);
    let e = det3([sp, p.x, 1.0], [sq, q.x, 1.0], [sr, r.x, 1.0]);
    let f = -det3([sp, p.x, p.y], [sq, q.x, q.y], [sr, r.x, r.y]);
    d * d + e * e - (a + f) * (a + f)
}

/// The two circles through `a` and `b` internally tangent to the unit
/// circle, for distinct points inside the open unit disc.
pub fn tangent_circles_through(a: Point, b: Point) -> [Circle; 2] {
    // Centers lie on the perpendicular bisector m + s·u. With h = |ab|/2,
    // r² = h² + s² and |c| = 1 - r give r = K - s·B, a quadratic in s.
    let m = (a + b) * 0.5;
    let d = b - a;
    let h2 = d.norm_sq() * 0.25;
    let u = Point::new(-d.y, d.x) * (1.0 / d.norm());
    let k = (1.0 + h2 - m.norm_sq()) * 0.5;
    let bcoef = m.dot(u);
    // (B² - 1)s² - 2KB s + (K² - h²) = 0
    let qa = bcoef * bcoef - 1.0;
    let qb = -2.0 * k * bcoef;
    let qc = k * k - h2;
    let disc = libm::sqrt((qb * qb - 4.0 * qa * qc).max(0.0));
    // qa < 0 strictly for interior points (|m·u| ≤ |m| < 1)
    let s1 = (-qb + disc) / (2.0 * qa);
    let s2 = (-qb - disc) / (2.0 * qa);
    let circle = |s: f64| Circle {
        center: m + u * s,
        radius: k - s * bcoef,
    };
    let (c1, c2) = (circle(s1), circle(s2));
    if (c1.center.x, c1.center.y) <= (c2.center.x, c2.center.y) {
        [c1, c2]
    } else {
        [c2, c1]
    }
}

/// Whether `a` comes before `b` walking counterclockwise around `circle`
/// from its tangency point. Both points must be within `tol` of the circle.
pub fn precedes(a: Point, b: Point, circle: &Circle, tol: f64) -> Result<bool, DomainError> {
    for p in [a, b] {
        let dist = circle.distance(p);
        if dist > tol {
            return Err(DomainError::NotOnCircle { distance: dist });
        }
    }
    Ok(circle.angle_from_tangency(a) < circle.angle_from_tangency(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn circumcircle_examples() {
        let c = circumcircle(
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(-1.0, 0.0),
        )
        .unwrap();
        assert!(close(c.center.x, 0.0, 1e-15) && close(c.center.y, 0.0, 1e-15));
        assert!(close(c.radius, 1.0, 1e-15));

        assert_eq!(
            circumcircle(
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(2.0, 0.0)
            ),
            Err(Collinear)
        );

        let (cx, r) = (Point::new(0.3, 0.0), 0.7);
        let pts = [0.4, 2.1, 4.0].map(|t| cx + Point::polar(r, t));
        let c = circumcircle(pts[0], pts[1], pts[2]).unwrap();
        assert!((c.center - cx).norm() < 1e-12);
        assert!(close(c.radius, r, 1e-12));
        assert!(close(c.tangency_residual(), 0.0, 1e-12));
    }

    #[test]
    fn tangency_polynomial_sign_matches_residual() {
        let mut seed = 0x2545F4914F6CDD1Du64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut checked = 0;
        for _ in 0..2000 {
            let pts: [Point; 3] =
                core::array::from_fn(|_| Point::polar(0.95 * libm::sqrt(next()), TAU * next()));
            let Ok(c) = circumcircle(pts[0], pts[1], pts[2]) else {
                continue;
            };
            let res = c.tangency_residual();
            if res.abs() < 1e-6 {
                continue;
            }
            let poly = tangency_polynomial(pts[0], pts[1], pts[2]);
            assert_eq!(res > 0.0, poly > 0.0, "{pts:?}");
            checked += 1;
        }
        assert!(checked > 1900);
    }

    #[test]
    fn tangency_polynomial_vanishes_on_tangent_circles() {
        let c = Circle {
            center: Point::new(-0.2, 0.35),
            radius: 1.0 - libm::hypot(-0.2, 0.35),
        };
        let pts = [0.3, 1.9, 5.1].map(|t| c.center + Point::polar(c.radius, t));
        assert!(tangency_polynomial(pts[0], pts[1], pts[2]).abs() < 1e-13);
    }

    #[test]
    fn two_tangent_circles_through_two_points() {
        let (a, b) = (Point::new(0.1, 0.2), Point::new(-0.3, 0.4));
        let cs = tangent_circles_through(a, b);
        for c in &cs {
            assert!(c.distance(a) < 1e-12 && c.distance(b) < 1e-12);
            assert!(c.tangency_residual().abs() < 1e-12);
            assert!(c.radius > 0.0);
        }
        assert!((cs[0].center - cs[1].center).norm() > 1e-3);
        // a precedes b on exactly one of them
        let p0 = precedes(a, b, &cs[0], 1e-9).unwrap();
        let p1 = precedes(a, b, &cs[1], 1e-9).unwrap();
        assert_ne!(p0, p1);
    }

    #[test]
    fn precedes_examples() {
        // tangency point at angle 0 seen from the center
        let c = Circle {
            center: Point::new(0.5, 0.0),
            radius: 0.5,
        };
        let a = c.center + Point::polar(0.5, PI / 2.0);
        let b = c.center + Point::polar(0.5, PI);
        assert!(precedes(a, b, &c, 1e-12).unwrap());
        assert!(!precedes(b, a, &c, 1e-12).unwrap());
        assert!(matches!(
            precedes(Point::new(0.0, 0.9), b, &c, 1e-9),
            Err(DomainError::NotOnCircle { .. })
        ));
    }
}
