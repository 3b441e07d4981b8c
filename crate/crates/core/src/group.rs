//! Group law, Kaplan gauge, tangent planes and the horizontal frame on H¹.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point of H¹ (also used as a plain vector of R³).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x1: 0.0, x2: 0.0, x3: 0.0 };

    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Point { x1, x2, x3 }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Point::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x1 * o.x1 + self.x2 * o.x2 + self.x3 * o.x3
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Euclidean norm of the horizontal projection.
    pub fn horizontal_norm(self) -> f64 {
        self.x1.hypot(self.x2)
    }

    pub fn cross(self, o: Point) -> Point {
        Point::new(
            self.x2 * o.x3 - self.x3 * o.x2,
            self.x3 * o.x1 - self.x1 * o.x3,
            self.x1 * o.x2 - self.x2 * o.x1,
        )
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x1, -self.x2, -self.x3)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

/// The plane `n1*y1 + n2*y2 + n3*y3 = c`, stored unnormalized.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Plane {
    pub n1: f64,
    pub n2: f64,
    pub n3: f64,
    pub c: f64,
}

impl Plane {
    pub const fn new(n1: f64, n2: f64, n3: f64, c: f64) -> Self {
        Plane { n1, n2, n3, c }
    }

    pub fn normal(&self) -> Point {
        Point::new(self.n1, self.n2, self.n3)
    }

    /// Signed residual `<n, y> - c`.
    pub fn eval(&self, y: Point) -> f64 {
        self.normal().dot(y) - self.c
    }

    /// Same plane with a unit normal.
    pub fn normalized(&self) -> Plane {
        let s = self.normal().norm();
        Plane::new(self.n1 / s, self.n2 / s, self.n3 / s, self.c / s)
    }
}

/// `x ⊞ y`.
pub fn group_mul(x: Point, y: Point) -> Point {
    Point::new(
        x.x1 + y.x1,
        x.x2 + y.x2,
        x.x3 + y.x3 - 0.5 * (x.x1 * y.x2 - x.x2 * y.x1),
    )
}

pub fn group_inv(x: Point) -> Point {
    -x
}

/// Anisotropic dilation `(λx1, λx2, λ²x3)`.
pub fn dilate(x: Point, lambda: f64) -> Point {
    Point::new(lambda * x.x1, lambda * x.x2, lambda * lambda * x.x3)
}

/// Fourth power of the Kaplan gauge.
pub fn kaplan_gauge4(x: Point) -> f64 {
    let r2 = x.x1 * x.x1 + x.x2 * x.x2;
    r2 * r2 + 16.0 * x.x3 * x.x3
}

pub fn kaplan_gauge(x: Point) -> f64 {
    // sqrt(sqrt(.)) keeps full range where powf(0.25) would not gain anything
    kaplan_gauge4(x).sqrt().sqrt()
}

/// The plane through `x` spanned by the horizontal directions at `x`.
pub fn tangent_plane(x: Point) -> Plane {
    let n1 = -x.x2 / 2.0;
    let n2 = x.x1 / 2.0;
    // <n, x> = -x2 x1/2 + x1 x2/2 + x3 = x3
    Plane::new(n1, n2, 1.0, x.x3)
}

/// The vectors `X1 = (1, 0, x2/2)` and `X2 = (0, 1, -x1/2)` at `x`.
pub fn horizontal_frame(x: Point) -> (Point, Point) {
    (Point::new(1.0, 0.0, x.x2 / 2.0), Point::new(0.0, 1.0, -x.x1 / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Point, b: Point, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn group_law_examples() {
        let z = group_mul(Point::new(1.0, 0.0, 0.0), Point::new(0.0, 1.0, 0.0));
        assert_eq!(z, Point::new(1.0, 1.0, -0.5));
        let x = Point::new(0.3, -1.2, 2.5);
        assert_eq!(group_mul(x, Point::ORIGIN), x);
        assert_eq!(group_mul(x, group_inv(x)), Point::ORIGIN);
        assert_eq!(group_inv(Point::new(1.0, 2.0, 3.0)), Point::new(-1.0, -2.0, -3.0));
    }

    #[test]
    fn gauge_examples() {
        assert_eq!(kaplan_gauge(Point::new(1.0, 0.0, 0.0)), 1.0);
        assert_eq!(kaplan_gauge(Point::new(0.0, 0.0, 1.0)), 2.0);
        assert!((kaplan_gauge(Point::new(1.0, 1.0, 0.0)) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn tangent_plane_examples() {
        let p = tangent_plane(Point::ORIGIN);
        assert_eq!((p.n1, p.n2, p.n3, p.c), (0.0, 0.0, 1.0, 0.0));
        let x = Point::new(2.0, 0.0, 0.0);
        let p = tangent_plane(x);
        assert_eq!((p.n1, p.n2, p.n3, p.c), (0.0, 1.0, 1.0, 0.0));
        // points with x1 y2 - x2 y1 = 2 (x3 - y3) lie on the plane
        for i in 0..10 {
            let y1 = i as f64 * 0.37 - 1.0;
            let y2 = 1.5 - i as f64 * 0.21;
            let y3 = x.x3 - (x.x1 * y2 - x.x2 * y1) / 2.0;
            assert!(p.eval(Point::new(y1, y2, y3)).abs() < 1e-14);
        }
    }

    #[test]
    fn frame_examples() {
        let (a, b) = horizontal_frame(Point::ORIGIN);
        assert_eq!(a, Point::new(1.0, 0.0, 0.0));
        assert_eq!(b, Point::new(0.0, 1.0, 0.0));
        assert_eq!(horizontal_frame(Point::new(0.0, 2.0, 0.0)).0, Point::new(1.0, 0.0, 1.0));
    }

    fn pt() -> impl Strategy<Value = Point> {
        (-5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64).prop_map(|(a, b, c)| Point::new(a, b, c))
    }

    proptest! {
        #[test]
        fn associativity(x in pt(), y in pt(), z in pt()) {
            let l = group_mul(group_mul(x, y), z);
            let r = group_mul(x, group_mul(y, z));
            prop_assert!(close(l, r, 1e-12));
        }

        #[test]
        fn inverse_is_negation(x in pt()) {
            prop_assert_eq!(group_mul(x, group_inv(x)), Point::ORIGIN);
            prop_assert_eq!(group_mul(group_inv(x), x), Point::ORIGIN);
        }

        #[test]
        fn gauge_difference_left_invariant(v in pt(), x in pt(), y in pt()) {
            let a = kaplan_gauge(group_mul(group_inv(group_mul(v, y)), group_mul(v, x)));
            let b = kaplan_gauge(group_mul(group_inv(y), x));
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b));
        }

        #[test]
        fn gauge_homogeneous(x in pt(), l in 0.01..10.0f64) {
            let a = kaplan_gauge(dilate(x, l));
            prop_assert!((a - l * kaplan_gauge(x)).abs() <= 1e-12 * (1.0 + a));
        }

        #[test]
        fn tangent_plane_contains_point_and_frame(x in pt()) {
            let p = tangent_plane(x);
            prop_assert_eq!(p.n3, 1.0);
            prop_assert!(p.eval(x).abs() <= 1e-12);
            let (a, b) = horizontal_frame(x);
            prop_assert!(p.normal().dot(a).abs() <= 1e-12);
            prop_assert!(p.normal().dot(b).abs() <= 1e-12);
        }
    }
}
