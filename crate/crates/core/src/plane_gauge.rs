//! Depressed-cubic solver, gauge distance from a point to a plane, the
//! two-case lower bounds for that distance and a brute-force oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{group_inv, group_mul, Plane, Point};
use crate::scalar::golden_min;

/// `48√6`, the recurring scale in the plane bounds.
pub const K48: f64 = 117.575_507_653_592_54;

/// The cubic `z³ + pz = q` with `p > 0`, `q ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubicCoeffs {
    pub p: f64,
    pub q: f64,
}

impl CubicCoeffs {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p.is_finite() && q.is_finite()) {
            return Err(Error::NonFinite("cubic coefficients"));
        }
        if p <= 0.0 {
            return Err(Error::InvalidArgument(format!("p = {p} must be positive")));
        }
        if q == 0.0 {
            return Err(Error::InvalidArgument("q must be nonzero".into()));
        }
        Ok(CubicCoeffs { p, q })
    }
}

/// Unique real root of `z³ + pz = q`.
///
/// The larger radical `s = (|q|/2 + √(q²/4 + p³/27))^{1/3}` is formed first;
/// the second radical is `p/(3s)`, and the difference of the two is taken as
/// `|q| / (s² + p/3 + (p/(3s))²)` so no near-equal terms are subtracted. One
/// Newton step polishes the last bits.
pub fn cardano_root(c: CubicCoeffs) -> f64 {
    let (p, q) = (c.p, c.q);
    let aq = q.abs();
    // scale-free evaluation of √(q²/4 + p³/27) without overflow
    let disc = (aq / 2.0).hypot((p / 3.0).sqrt().powi(3));
    let s = (aq / 2.0 + disc).cbrt();
    let t = p / (3.0 * s);
    let mut z = aq / (s * s + p / 3.0 + t * t);
    let f = z * z * z + p * z - aq;
    z -= f / (3.0 * z * z + p);
    z.copysign(q)
}

/// Lower bound `(|q|^{1/3}/3)(1 + p√p/(3√3|q|))^{−2/3}` on the root's magnitude.
pub fn cardano_lower_bound(c: CubicCoeffs) -> f64 {
    let aq = c.q.abs();
    let ratio = c.p * c.p.sqrt() / (3.0 * 3f64.sqrt() * aq);
    aq.cbrt() / 3.0 * (1.0 + ratio).powf(-2.0 / 3.0)
}

/// Coefficient on the vertical term of the quartic gauge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerticalCoefficient {
    /// `(y1² + y2²)² + 16 y3²`, the gauge used everywhere else.
    Sixteen,
    /// `(y1² + y2²)² + y3²/16`.
    InverseSixteen,
}

impl VerticalCoefficient {
    pub fn value(self) -> f64 {
        match self {
            VerticalCoefficient::Sixteen => 16.0,
            VerticalCoefficient::InverseSixteen => 1.0 / 16.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            VerticalCoefficient::Sixteen => "16",
            VerticalCoefficient::InverseSixteen => "1/16",
        }
    }
}

/// Quartic gauge with a chosen vertical coefficient.
pub fn gauge4_with(x: Point, coef: VerticalCoefficient) -> f64 {
    let r2 = x.x1 * x.x1 + x.x2 * x.x2;
    r2 * r2 + coef.value() * x.x3 * x.x3
}

/// A point shifted so that its plane problem becomes the one for `y3 = 0`,
/// plus the case-splitting parameter `a`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneCaseParams {
    pub u1: f64,
    pub u2: f64,
    pub w: f64,
    pub a: f64,
}

impl PlaneCaseParams {
    pub fn rho2(&self) -> f64 {
        self.u1 * self.u1 + self.u2 * self.u2
    }
}

/// Left-translates by `v = (−2n2, 2n1, −c)/n3`, which carries the plane to
/// `y3 = 0`; returns the image of `x`.
pub fn reduced_to_horizontal(plane: &Plane, x: Point, a: f64) -> Result<PlaneCaseParams> {
    if plane.n3 == 0.0 {
        return Err(Error::InvalidArgument("plane is vertical (n3 = 0)".into()));
    }
    let (n1, n2, n3, c) = (plane.n1, plane.n2, plane.n3, plane.c);
    Ok(PlaneCaseParams {
        u1: -2.0 * n2 / n3 + x.x1,
        u2: 2.0 * n1 / n3 + x.x2,
        w: -c / n3 + x.x3 + x.x1 * n1 / n3 + x.x2 * n2 / n3,
        a,
    })
}

/// Gauge distance from `(u1, u2, w)` to the plane `y3 = 0`.
///
/// With `ρ = |u|` the problem is `min_s s⁴ + C(w + sρ/2)²`, a strictly convex
/// function of `s`; its critical point solves `s³ + (Cρ²/8)s = −Cρw/4`, and at
/// that point the value equals `s⁴ + 16s⁶/(Cρ²)`.
pub fn horizontal_plane_gauge(u1: f64, u2: f64, w: f64, coef: VerticalCoefficient) -> f64 {
    let cc = coef.value();
    if w == 0.0 {
        return 0.0;
    }
    let rho = u1.hypot(u2);
    if rho == 0.0 {
        return (cc * w * w).sqrt().sqrt();
    }
    let cubic = CubicCoeffs { p: cc * rho * rho / 8.0, q: -cc * rho * w / 4.0 };
    if !(cubic.p > 0.0 && cubic.q != 0.0 && cubic.p.is_finite() && cubic.q.is_finite()) {
        return (cc * w * w).sqrt().sqrt().min(2.0 * w.abs() / rho);
    }
    let s = cardano_root(cubic);
    let s2 = s * s;
    (s2 * s2 + 16.0 * s2 * s2 * s2 / (cc * rho * rho)).sqrt().sqrt()
}

/// Critical-point evaluation of the plane distance for both vertical
/// coefficients; requires `n3 ≠ 0`.
pub fn gauge_dist_to_plane_critical_with(plane: &Plane, x: Point, coef: VerticalCoefficient) -> Result<f64> {
    let r = reduced_to_horizontal(plane, x, 1.0)?;
    Ok(horizontal_plane_gauge(r.u1, r.u2, r.w, coef))
}

/// Critical-point plane distance in the gauge with coefficient 16.
pub fn gauge_dist_to_plane_critical(plane: &Plane, x: Point) -> Result<f64> {
    let v16 = gauge_dist_to_plane_critical_with(plane, x, VerticalCoefficient::Sixteen)?;
    if log::log_enabled!(log::Level::Debug) {
        let v116 = gauge_dist_to_plane_critical_with(plane, x, VerticalCoefficient::InverseSixteen)?;
        log::debug!("plane gauge distance: coefficient 16 -> {v16}, coefficient 1/16 -> {v116}");
    }
    Ok(v16)
}

/// Gauge distance to any plane; vertical planes reduce to the planar distance.
pub fn gauge_dist_to_plane(plane: &Plane, x: Point) -> f64 {
    let n = plane.normal();
    let nn = n.norm();
    if plane.n3.abs() <= 1e-12 * nn {
        let nh = plane.n1.hypot(plane.n2);
        return (plane.c - plane.n1 * x.x1 - plane.n2 * x.x2 - plane.n3 * x.x3).abs() / nh;
    }
    let r = reduced_to_horizontal(plane, x, 1.0).expect("n3 checked nonzero");
    horizontal_plane_gauge(r.u1, r.u2, r.w, VerticalCoefficient::Sixteen)
}

/// Which branch of the two-case bound applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundCase {
    Height,
    Radial,
}

/// Candidate lower bound on the squared plane distance.
///
/// `ρ² ≤ a|w|` gives `|w|/108 · (1 + a/(48√6))^{−2}`; otherwise
/// `4w²/ρ² · (48√6/a + 1)^{−4/3}`.
pub fn prop_lower_bound(params: &PlaneCaseParams) -> Result<(BoundCase, f64)> {
    let (a, w) = (params.a, params.w);
    if !(a > 0.0) {
        return Err(Error::InvalidArgument(format!("a = {a} must be positive")));
    }
    if w == 0.0 {
        return Err(Error::InvalidArgument("w must be nonzero".into()));
    }
    let rho2 = params.rho2();
    if rho2 <= a * w.abs() {
        Ok((BoundCase::Height, w.abs() / 108.0 * (1.0 + a / K48).powi(-2)))
    } else {
        Ok((BoundCase::Radial, 4.0 * w * w / rho2 * (K48 / a + 1.0).powf(-4.0 / 3.0)))
    }
}

/// Grid-search oracle for the plane distance in the gauge with coefficient 16.
pub fn gauge_dist_to_plane_bruteforce(plane: &Plane, x: Point) -> f64 {
    gauge_dist_to_plane_bruteforce_with(plane, x, VerticalCoefficient::Sixteen)
}

/// Search oracle with a chosen vertical coefficient.
///
/// Parametrizes the plane around the Euclidean foot point of `x` and scans a
/// 64×64 grid over a window that provably contains the minimizer. The
/// sublevel sets of the objective on the plane are convex (affine images of
/// gauge balls), so the scan is followed by nested golden-section searches
/// over the window: an outer one in the first coordinate over the inner
/// minimum in the second.
pub fn gauge_dist_to_plane_bruteforce_with(plane: &Plane, x: Point, coef: VerticalCoefficient) -> f64 {
    let pl = plane.normalized();
    let n = pl.normal();
    let y0 = x - n * pl.eval(x);
    let helper = if n.x1.abs() < 0.9 { Point::new(1.0, 0.0, 0.0) } else { Point::new(0.0, 1.0, 0.0) };
    let e1 = {
        let v = n.cross(helper);
        v * (1.0 / v.norm())
    };
    let e2 = n.cross(e1);
    let f = |a: f64, b: f64| gauge4_with(group_mul(group_inv(y0 + e1 * a + e2 * b), x), coef);
    let d0 = f(0.0, 0.0).sqrt().sqrt();
    if d0 == 0.0 {
        return 0.0;
    }
    // every y with gauge distance ≤ d0 satisfies |y − x| ≤ this radius
    let radius = d0 * (1.0 + x.horizontal_norm() / 2.0) + d0 * d0 / coef.value().sqrt();
    const N: usize = 64;
    let step = 2.0 * radius / N as f64;
    let mut best = f(0.0, 0.0);
    for i in 0..=N {
        for j in 0..=N {
            best = best.min(f(-radius + i as f64 * step, -radius + j as f64 * step));
        }
    }
    let inner = |a: f64| golden_min(|b| f(a, b), -radius, radius, 90).1;
    let (_, nested) = golden_min(inner, -radius, radius, 90);
    best.min(nested).sqrt().sqrt()
}
