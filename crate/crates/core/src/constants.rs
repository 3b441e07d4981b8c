//! Closed-form Hardy constants, the face-count root `c_m`, the structural
//! condition on polytopes and the approximating cylinder domains.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Point;
use crate::plane_gauge::K48;
use crate::polytope::Polytope;
use crate::scalar::bisect_increasing;

/// Number of faces whose normal has a nonzero vertical component.
pub fn count_nonorthogonal_faces(p: &Polytope) -> usize {
    p.faces()
        .iter()
        .filter(|f| {
            let pl = p.planes()[f.halfspace];
            pl.n3.abs() / pl.normal().norm() > 1e-12
        })
        .count()
}

/// Root of the face-count equation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CmSolution {
    pub m: u32,
    pub c_m: f64,
    pub residual: f64,
}

/// `c^{4/3} π m √(c² + 16) (1 + c/(48√6))^{2/3} − 16/3`, increasing in `c > 0`.
pub fn cm_equation(m: u32, c: f64) -> f64 {
    c.powf(4.0 / 3.0) * PI * m as f64 * (c * c + 16.0).sqrt() * (1.0 + c / K48).powf(2.0 / 3.0) - 16.0 / 3.0
}

pub fn solve_cm(m: u32) -> Result<CmSolution> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let mut hi = 1.0;
    while cm_equation(m, hi) < 0.0 {
        hi *= 2.0;
    }
    let c = bisect_increasing(|c| cm_equation(m, c), 0.0, hi, 0.0);
    Ok(CmSolution { m, c_m: c, residual: cm_equation(m, c).abs() })
}

/// Upper bound on `1/c_m` used for the explicit constant.
pub fn inverse_cm_upper_bound(m: u32) -> f64 {
    3.0 * PI * (m as f64).powf(8.0 / 9.0) * 2f64.powf(-11.0 / 6.0) * (1.0 + 1.0 / (12.0 * 6f64.sqrt())).powf(2.0 / 3.0)
}

/// `c_m ≤ 4/m^{1/3}` and `1/c_m ≤ 3π m^{8/9} 2^{−11/6} (1 + 1/(12√6))^{2/3}`.
pub fn cm_upper_bound_check(sol: &CmSolution) -> bool {
    let m = sol.m as f64;
    sol.c_m <= 4.0 / m.cbrt() && 1.0 / sol.c_m <= inverse_cm_upper_bound(sol.m)
}

/// A closed-form Hardy constant and the quotient lower bound it implies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardyConstantReport {
    pub theorem: String,
    /// Multiplier of `∫|u|²/dist²` on the left-hand side.
    pub constant: f64,
    /// Lower bound on `∫|∇_H u|² / ∫|u|²/dist²`.
    pub quotient_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

/// `(1/5)(48√6/c_m + 1)^{−4/3}` for a polytope with `m` non-vertical faces.
pub fn hardy_constant_polytope(m: u32) -> Result<HardyConstantReport> {
    let sol = solve_cm(m)?;
    let c = 0.2 * (K48 / sol.c_m + 1.0).powf(-4.0 / 3.0);
    Ok(HardyConstantReport {
        theorem: "3.2".into(),
        constant: c,
        quotient_bound: c,
        m: Some(m),
        c_m: Some(sol.c_m),
        a: None,
        epsilon: None,
    })
}

/// `C(a) = (48√6/a + 1)^{−4/3}`, quotient bound `C(a)/4`.
pub fn hardy_constant_assumption(a: f64) -> Result<HardyConstantReport> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidArgument(format!("a = {a} must be positive and finite")));
    }
    let c = (K48 / a + 1.0).powf(-4.0 / 3.0);
    Ok(HardyConstantReport {
        theorem: "6.2".into(),
        constant: c,
        quotient_bound: c / 4.0,
        m: None,
        c_m: None,
        a: Some(a),
        epsilon: None,
    })
}

/// Halton point in `[0, 1)³` (bases 2, 3, 5).
pub fn halton3(i: u64) -> [f64; 3] {
    fn radical(mut i: u64, b: u64) -> f64 {
        let (mut f, mut r) = (1.0, 0.0);
        while i > 0 {
            f /= b as f64;
            r += f * (i % b) as f64;
            i /= b;
        }
        r
    }
    [radical(i, 2), radical(i, 3), radical(i, 5)]
}

/// Left side minus `a` times the right side of the structural inequality for
/// one plane at `x`; nonnegative where the inequality holds.
fn assumption_margin(n: [f64; 4], x: Point, a: f64) -> f64 {
    let [n1, n2, n3, c] = n;
    let u1 = -2.0 * n2 / n3 + x.x1;
    let u2 = 2.0 * n1 / n3 + x.x2;
    let w = -c / n3 + x.x3 + x.x1 * n1 / n3 + x.x2 * n2 / n3;
    u1 * u1 + u2 * u2 - a * w.abs()
}

/// Checks `(−2n2/n3 + x1)² + (2n1/n3 + x2)² ≥ a|−c/n3 + x3 + x1n1/n3 + x2n2/n3|`
/// for every non-vertical face at all vertices and at `samples` quasi-random
/// interior points.
pub fn check_assumption_with(p: &Polytope, a: f64, samples: usize) -> bool {
    let planes: Vec<[f64; 4]> = p
        .faces()
        .iter()
        .map(|f| p.planes()[f.halfspace])
        .filter(|pl| pl.n3.abs() > 1e-12)
        .map(|pl| [pl.n1, pl.n2, pl.n3, pl.c])
        .collect();
    let ok = |x: Point, slack: f64| planes.iter().all(|&n| assumption_margin(n, x, a) >= -slack);
    let b = p.bbox();
    let scale = 1.0 + (b.hi - b.lo).norm() + b.lo.norm().max(b.hi.norm());
    if !p.vertices().iter().all(|&v| ok(v, 1e-9 * scale * scale * (1.0 + a))) {
        return false;
    }
    let mut found = 0;
    let mut i = 1u64;
    let cap = 1000 * samples as u64 + 1000;
    while found < samples && i < cap {
        let h = halton3(i);
        i += 1;
        let x = Point::new(
            b.lo.x1 + h[0] * (b.hi.x1 - b.lo.x1),
            b.lo.x2 + h[1] * (b.hi.x2 - b.lo.x2),
            b.lo.x3 + h[2] * (b.hi.x3 - b.lo.x3),
        );
        if !p.contains(x) {
            continue;
        }
        found += 1;
        if !ok(x, 0.0) {
            return false;
        }
    }
    true
}

/// [`check_assumption_with`] using 10⁵ interior samples.
pub fn check_assumption(p: &Polytope, a: f64) -> bool {
    check_assumption_with(p, a, 100_000)
}

/// Smallest `a` with `(48√6/a + 1)^{2/3} ≤ 1 + ε/2`.
pub fn epsilon_threshold(eps: f64) -> f64 {
    K48 / ((1.0 + eps / 2.0).powf(1.5) - 1.0)
}

/// Prism over the regular `n_sides`-gon inscribed in the unit disk about
/// `(√a + 1, 0)`, heights `(0, 1)`, with `a` twice the ε threshold.
pub fn construct_epsilon_domain(eps: f64, n_sides: usize) -> Result<(Polytope, f64)> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!("ε = {eps} must be positive and finite")));
    }
    if n_sides < 8 {
        return Err(Error::InvalidArgument(format!("n_sides = {n_sides} must be at least 8")));
    }
    let a = 2.0 * epsilon_threshold(eps);
    let p = Polytope::regular_prism(a.sqrt() + 1.0, 0.0, 1.0, n_sides, 0.0, 1.0)?;
    Ok((p, a))
}

/// Same prism over the circumscribed polygon, for measuring the
/// polygonal-approximation gap.
pub fn construct_epsilon_domain_circumscribed(eps: f64, n_sides: usize) -> Result<(Polytope, f64)> {
    let (_, a) = construct_epsilon_domain(eps, n_sides)?;
    let r = 1.0 / (PI / n_sides as f64).cos();
    let p = Polytope::regular_prism(a.sqrt() + 1.0, 0.0, r, n_sides, 0.0, 1.0)?;
    Ok((p, a))
}

/// Constants for an ε-domain: `C(a)`, quotient bound `C(a)/4` and the
/// target `1/(2+ε)²` it must dominate.
pub fn hardy_constant_epsilon(eps: f64) -> Result<HardyConstantReport> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!("ε = {eps} must be positive and finite")));
    }
    let a = 2.0 * epsilon_threshold(eps);
    let mut r = hardy_constant_assumption(a)?;
    r.theorem = "3.3".into();
    r.epsilon = Some(eps);
    Ok(r)
}
