//! Geodesic arcs from the origin, the Carnot–Carathéodory distance and the
//! ratio function `g`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{group_inv, group_mul, Plane, Point};
use crate::scalar::{bisect_increasing, golden_max};

/// Arc parameters `(k, θ, t)`: curvature, initial angle and length.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicParams {
    pub k: f64,
    pub theta: f64,
    pub t: f64,
}

impl GeodesicParams {
    pub fn new(k: f64, theta: f64, t: f64) -> Result<Self> {
        if !(k.is_finite() && theta.is_finite() && t.is_finite()) {
            return Err(Error::NonFinite("geodesic parameters"));
        }
        if t < 0.0 {
            return Err(Error::InvalidArgument(format!("negative length {t}")));
        }
        if k != 0.0 && t * k.abs() > 2.0 * PI * (1.0 + 1e-15) {
            return Err(Error::InvalidArgument(format!("length {t} beyond 2π/|k| for k = {k}")));
        }
        Ok(GeodesicParams { k, theta, t })
    }
}

/// `sin(τ/2) / (τ/2)`, even in τ.
pub fn sinc_half(tau: f64) -> f64 {
    if tau.abs() < 1e-3 {
        let t2 = tau * tau;
        1.0 - t2 / 24.0 + t2 * t2 / 1920.0
    } else {
        (tau / 2.0).sin() / (tau / 2.0)
    }
}

/// `(τ - sin τ) / (2τ²)`, odd in τ.
pub fn lift_factor(tau: f64) -> f64 {
    if tau.abs() < 0.1 {
        let t2 = tau * tau;
        tau * (1.0 / 12.0
            + t2 * (-1.0 / 240.0 + t2 * (1.0 / 10080.0 + t2 * (-1.0 / 725_760.0 + t2 / 79_833_600.0))))
    } else {
        (tau - tau.sin()) / (2.0 * tau * tau)
    }
}

/// The endpoint `γ_{k,θ}(t)`.
///
/// Written as `t·S(kt)·(sin(θ+kt/2), cos(θ+kt/2))` and `t²·Z(kt)`, which
/// contains the straight line at `k = 0` and stays accurate as `k → 0`.
pub fn geodesic_point(g: GeodesicParams) -> Point {
    let tau = g.k * g.t;
    let s = g.t * sinc_half(tau);
    let phase = g.theta + tau / 2.0;
    Point::new(s * phase.sin(), s * phase.cos(), g.t * g.t * lift_factor(tau))
}

/// `|z3| / r²` along the arc family, as a function of `τ ∈ (0, π]`.
fn height_ratio_small(tau: f64) -> f64 {
    let s = sinc_half(tau);
    lift_factor(tau) / (s * s)
}

/// Same ratio written in `σ = 2π − τ ∈ (0, π]`.
fn height_ratio_large(sigma: f64) -> f64 {
    let sh = (sigma / 2.0).sin();
    (2.0 * PI - sigma + sigma.sin()) / (8.0 * sh * sh)
}

/// `d_C(z, 0)`.
pub fn cc_distance_origin(z: Point) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::NonFinite("cc_distance_origin"));
    }
    let r = z.horizontal_norm();
    let h = z.x3.abs();
    if h == 0.0 {
        return Ok(r);
    }
    if r == 0.0 {
        return Ok(2.0 * (PI * h).sqrt());
    }
    let ratio = h / (r * r);
    if !ratio.is_finite() {
        // r² underflowed relative to h: the full-circle value is exact to rounding
        return Ok(2.0 * (PI * h).sqrt());
    }
    if ratio <= PI / 8.0 {
        // solve on τ ∈ (0, π]; the ratio is ≈ τ/12 near 0
        let hi = PI.min(24.0 * ratio + 1e-300);
        let tau = bisect_increasing(|t| height_ratio_small(t) - ratio, 0.0, hi.max(f64::MIN_POSITIVE), 0.0);
        Ok(r / sinc_half(tau))
    } else {
        // solve on σ ∈ (0, π), ratio is decreasing in σ
        let sigma = bisect_increasing(|s| ratio - height_ratio_large(s), 0.0, PI, 0.0);
        let tau = 2.0 * PI - sigma;
        Ok(tau * r / (2.0 * (sigma / 2.0).sin()))
    }
}

/// `d_C(x, y) = d_C((−y) ⊞ x, 0)`.
pub fn cc_distance(x: Point, y: Point) -> Result<f64> {
    cc_distance_origin(group_mul(group_inv(y), x))
}

/// `g(τ) = (4/τ⁴)((1−cos τ)² + (τ − sin τ)²)` on `[0, 2π]`.
pub fn ratio_g(tau: f64) -> Result<f64> {
    if !(0.0..=2.0 * PI).contains(&tau) {
        return Err(Error::InvalidArgument(format!("τ = {tau} outside [0, 2π]")));
    }
    // (1 − cos τ) = τ²S²/2 and (τ − sin τ) = 2τ²Z
    let s = sinc_half(tau);
    let z = lift_factor(tau);
    Ok(s * s * s * s + 16.0 * z * z)
}

/// Carnot–Carathéodory distance from `x` to the plane `⟨n, y⟩ = c`.
///
/// Uses the left translation to the origin and the support function of the
/// C-C ball: a geodesic of length `t` and phase `τ = kt` reaches horizontal
/// extent `tS(τ)` and height `t²Z(τ)`, so the ball of radius `t` first meets
/// `⟨m, z⟩ = e` at `t(τ) = 2e / (aS + √(a²S² + 4bZe))`, minimized over
/// `τ ∈ [0, π]` (`Z` peaks at `π`, `S` is decreasing).
pub fn cc_distance_to_plane(x: Point, plane: &Plane) -> f64 {
    let mut e = plane.c - plane.normal().dot(x);
    let mut n = plane.normal();
    if e < 0.0 {
        e = -e;
        n = -n;
    }
    if e == 0.0 {
        return 0.0;
    }
    let a = (n.x1 + n.x3 * x.x2 / 2.0).hypot(n.x2 - n.x3 * x.x1 / 2.0);
    let b = n.x3.abs();
    if b == 0.0 {
        return e / a;
    }
    if a == 0.0 {
        return (2.0 * PI * e / b).sqrt();
    }
    let four_be = 4.0 * b * e;
    let psi = |tau: f64| {
        let s = a * sinc_half(tau);
        s + (s * s + four_be * lift_factor(tau)).sqrt()
    };
    let (_, best) = golden_max(psi, 0.0, PI, 72);
    2.0 * e / best
}
