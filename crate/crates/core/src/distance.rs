//! Distances from interior points of a convex polytope to its boundary.
//!
//! For a convex polytope, every left-translated C-C ball and gauge ball about
//! an interior point is convex (gauge case) or must cross the boundary
//! before reaching any bounding plane (curve case), so both boundary
//! distances equal the minimum over the bounding planes of the distance to
//! the whole plane.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geodesic::cc_distance_to_plane;
use crate::group::{horizontal_frame, Point};
use crate::plane_gauge::gauge_dist_to_plane;
use crate::polytope::Polytope;

/// Planar convex polygon `H(x) ∩ P̄`, vertices counter-clockwise.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SlicePolygon {
    pub vertices: Vec<Point>,
}

impl SlicePolygon {
    /// Euclidean distance from `(p1, p2)` to the boundary of the projection.
    pub fn projected_boundary_distance(&self, p1: f64, p2: f64) -> f64 {
        let n = self.vertices.len();
        let mut best = f64::INFINITY;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let (dx, dy) = (b.x1 - a.x1, b.x2 - a.x2);
            let len2 = dx * dx + dy * dy;
            let t = if len2 > 0.0 { (((p1 - a.x1) * dx + (p2 - a.x2) * dy) / len2).clamp(0.0, 1.0) } else { 0.0 };
            best = best.min((p1 - a.x1 - t * dx).hypot(p2 - a.x2 - t * dy));
        }
        best
    }
}

/// Halfplanes `α·y_h ≤ β` cut out of `H(x)` by the bounding planes.
fn slice_halfplanes(p: &Polytope, x: Point) -> Vec<(f64, f64, f64)> {
    p.planes()
        .iter()
        .map(|pl| (pl.n1 + pl.n3 * x.x2 / 2.0, pl.n2 - pl.n3 * x.x1 / 2.0, pl.c - pl.n3 * x.x3))
        .collect()
}

/// Exit parameter along `±(1, 0, x2/2)`.
pub fn d1(p: &Polytope, x: Point) -> Result<f64> {
    p.require_interior(x)?;
    let (t1, _) = horizontal_frame(x);
    Ok(p.ray_exit_unchecked(x, t1).min(p.ray_exit_unchecked(x, -t1)))
}

/// Exit parameter along `±(0, 1, −x1/2)`.
pub fn d2(p: &Polytope, x: Point) -> Result<f64> {
    p.require_interior(x)?;
    let (_, t2) = horizontal_frame(x);
    Ok(p.ray_exit_unchecked(x, t2).min(p.ray_exit_unchecked(x, -t2)))
}

/// The polygon `H(x) ∩ P̄` by halfplane intersection in the `(y1, y2)` chart.
pub fn slice_polygon(p: &Polytope, x: Point) -> Result<SlicePolygon> {
    p.require_interior(x)?;
    let hp = slice_halfplanes(p, x);
    let scale = hp.iter().fold(1.0f64, |s, h| s.max(h.2.abs()));
    let tol = 1e-10 * scale;
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for i in 0..hp.len() {
        for j in (i + 1)..hp.len() {
            let (a1, b1, c1) = hp[i];
            let (a2, b2, c2) = hp[j];
            let det = a1 * b2 - a2 * b1;
            if det.abs() < 1e-12 * (a1.hypot(b1) * a2.hypot(b2)).max(1e-300) {
                continue;
            }
            let y1 = (c1 * b2 - c2 * b1) / det;
            let y2 = (a1 * c2 - a2 * c1) / det;
            if hp.iter().all(|&(a, b, c)| a * y1 + b * y2 <= c + tol * (1.0 + a.hypot(b))) {
                if !pts.iter().any(|&(u, v)| (u - y1).hypot(v - y2) <= tol * 10.0) {
                    pts.push((y1, y2));
                }
            }
        }
    }
    pts.sort_by(|a, b| (a.1 - x.x2).atan2(a.0 - x.x1).total_cmp(&(b.1 - x.x2).atan2(b.0 - x.x1)));
    let vertices = pts
        .into_iter()
        .map(|(y1, y2)| Point::new(y1, y2, x.x3 + 0.5 * (x.x2 * y1 - x.x1 * y2)))
        .collect();
    Ok(SlicePolygon { vertices })
}

/// Reduced distance: Euclidean distance from `(x1, x2)` to the boundary of
/// the projected slice polygon, i.e. the least distance to its edge lines.
pub fn omega(p: &Polytope, x: Point) -> Result<f64> {
    p.require_interior(x)?;
    Ok(omega_unchecked(p, x))
}

pub(crate) fn omega_unchecked(p: &Polytope, x: Point) -> f64 {
    let mut best = f64::INFINITY;
    for (a, b, c) in slice_halfplanes(p, x) {
        let len = a.hypot(b);
        if len > 0.0 {
            best = best.min((c - a * x.x1 - b * x.x2) / len);
        }
    }
    best
}

/// Boundary distance in the Kaplan gauge.
pub fn delta_k(p: &Polytope, x: Point) -> Result<f64> {
    p.require_interior(x)?;
    Ok(delta_k_unchecked(p, x))
}

pub(crate) fn delta_k_unchecked(p: &Polytope, x: Point) -> f64 {
    p.planes().iter().map(|pl| gauge_dist_to_plane(pl, x)).fold(f64::INFINITY, f64::min)
}

/// Boundary distance in the Carnot–Carathéodory metric.
pub fn delta_c(p: &Polytope, x: Point) -> Result<f64> {
    p.require_interior(x)?;
    let d = delta_c_unchecked(p, x);
    debug_assert!({
        let k = delta_k_unchecked(p, x);
        d >= k * (1.0 - 1e-9) && d <= std::f64::consts::PI.sqrt() * k * (1.0 + 1e-9)
    });
    Ok(d)
}

pub(crate) fn delta_c_unchecked(p: &Polytope, x: Point) -> f64 {
    delta_c_nearest_plane(p, x).0
}

/// `δ_C(x)` together with the index of a bounding plane attaining it.
pub fn delta_c_nearest_plane(p: &Polytope, x: Point) -> (f64, usize) {
    // vertical planes are exact and cheap; the gauge distance is a lower
    // bound for the others and prunes most golden-section searches
    let mut best = (f64::INFINITY, 0);
    let mut pending: Vec<(f64, usize)> = Vec::new();
    for (i, pl) in p.planes().iter().enumerate() {
        if pl.n3 == 0.0 {
            let d = pl.c - pl.n1 * x.x1 - pl.n2 * x.x2;
            if d < best.0 {
                best = (d, i);
            }
        } else {
            pending.push((gauge_dist_to_plane(pl, x), i));
        }
    }
    pending.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (lower, i) in pending {
        if lower >= best.0 {
            break;
        }
        let d = cc_distance_to_plane(x, &p.planes()[i]);
        if d < best.0 {
            best = (d, i);
        }
    }
    best
}

/// All boundary distances at one point.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DistanceReport {
    pub point: Point,
    pub delta_c: f64,
    pub delta_k: f64,
    pub omega: f64,
    pub d1: f64,
    pub d2: f64,
    /// `[δ_K, √π δ_K]`, which must contain `δ_C`.
    pub bracket: [f64; 2],
}

pub fn distance_report(p: &Polytope, x: Point) -> Result<DistanceReport> {
    let dk = delta_k(p, x)?;
    Ok(DistanceReport {
        point: x,
        delta_c: delta_c(p, x)?,
        delta_k: dk,
        omega: omega(p, x)?,
        d1: d1(p, x)?,
        d2: d2(p, x)?,
        bracket: [dk, std::f64::consts::PI.sqrt() * dk],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::geodesic::cc_distance;
    use crate::group::{group_inv, group_mul, kaplan_gauge};
    use crate::oracle;
    use crate::polytope::Halfspace;
    use proptest::prelude::*;

    fn cube() -> Polytope {
        Polytope::cube(1.0).unwrap()
    }

    #[test]
    fn ray_distance_examples() {
        let c = cube();
        assert_eq!(d1(&c, Point::ORIGIN).unwrap(), 1.0);
        assert_eq!(d2(&c, Point::ORIGIN).unwrap(), 1.0);
        let x = Point::new(0.0, 0.5, 0.0);
        assert_eq!(d1(&c, x).unwrap(), 1.0);
        assert!((d1(&c, x).unwrap() - oracle::ray_exit_by_sampling(&c, x, horizontal_frame(x).0)).abs() < 1e-12);
        let slab = Polytope::cuboid(Point::new(-10.0, -10.0, -1.0), Point::new(10.0, 10.0, 1.0)).unwrap();
        assert_eq!(d1(&slab, Point::ORIGIN).unwrap(), 10.0);
        assert!(matches!(d1(&c, Point::new(2.0, 0.0, 0.0)), Err(Error::NotInterior)));
    }

    #[test]
    fn slice_examples() {
        let c = cube();
        let s = slice_polygon(&c, Point::ORIGIN).unwrap();
        assert_eq!(s.vertices.len(), 4);
        for v in &s.vertices {
            assert!((v.x1.abs() - 1.0).abs() < 1e-12 && (v.x2.abs() - 1.0).abs() < 1e-12 && v.x3 == 0.0);
        }
        let s = slice_polygon(&c, Point::new(0.0, 0.0, 0.5)).unwrap();
        assert!(s.vertices.iter().all(|v| v.x3 == 0.5));
        assert_eq!(s.vertices.len(), 4);
    }

    #[test]
    fn omega_examples() {
        let b = Polytope::cuboid(Point::new(-2.0, -2.0, -1.0), Point::new(2.0, 2.0, 1.0)).unwrap();
        assert_eq!(omega(&b, Point::ORIGIN).unwrap(), 2.0);
        assert_eq!(omega(&cube(), Point::ORIGIN).unwrap(), 1.0);
    }

    #[test]
    fn gauge_distance_examples() {
        let slab = Polytope::cuboid(Point::new(-10.0, -10.0, 0.0), Point::new(10.0, 10.0, 2.0)).unwrap();
        let x = Point::new(0.0, 0.0, 1.0);
        assert!((delta_k(&slab, x).unwrap() - 2.0).abs() < 1e-12);
        let c = cube();
        assert!((delta_k(&c, Point::ORIGIN).unwrap() - 1.0).abs() < 1e-15);
        let boundary = oracle::boundary_samples(&c, 100_000, 11);
        let brute = boundary.iter().map(|y| kaplan_gauge(group_mul(group_inv(*y), Point::ORIGIN))).fold(f64::INFINITY, f64::min);
        assert!(brute >= 1.0 - 1e-12 && brute < 1.01);
    }

    #[test]
    fn cc_distance_examples() {
        let c = cube();
        let d = delta_c(&c, Point::ORIGIN).unwrap();
        assert!(d >= 1.0 && d <= std::f64::consts::PI.sqrt());
        assert_eq!(d, 1.0);
        let near = delta_c(&c, Point::new(0.999, 0.2, 0.1)).unwrap();
        assert!(near <= 1e-3 + 1e-12);
        let near_top = delta_c(&c, Point::new(0.1, 0.2, 0.999)).unwrap();
        assert!(near_top > 0.0 && near_top < 0.1);
    }

    #[test]
    fn cc_distance_matches_face_search_oracle() {
        for seed in 0..3 {
            let p = Polytope::random_cut_cube(seed, 3);
            for &x in &[Point::new(0.1, -0.2, 0.15), Point::new(-0.3, 0.25, -0.4), Point::new(0.0, 0.0, 0.5)] {
                if !p.contains(x) {
                    continue;
                }
                let fast = delta_c(&p, x).unwrap();
                let slow = oracle::delta_c_face_search(&p, x);
                assert!(fast <= slow + 1e-9, "{fast} {slow}");
                assert!(slow - fast <= 1e-6 * (1.0 + fast), "{fast} {slow}");
            }
        }
    }

    #[test]
    fn theorem_identity_on_slices() {
        let p = Polytope::random_cut_cube(7, 4);
        for &x in &[Point::new(0.1, 0.2, 0.05), Point::new(-0.2, 0.1, -0.3), Point::new(0.05, -0.1, 0.2)] {
            if !p.contains(x) {
                continue;
            }
            let w = omega(&p, x).unwrap();
            let s = slice_polygon(&p, x).unwrap();
            assert!((s.projected_boundary_distance(x.x1, x.x2) - w).abs() < 1e-12);
            let g = oracle::slice_boundary_gauge_min(&p, x, 10_000);
            assert!(((g - w) / w).abs() < 1e-5, "{g} {w}");
        }
    }

    fn interior_point(p: &Polytope, f: (f64, f64, f64)) -> Point {
        let b = p.bbox();
        Point::new(
            b.lo.x1 + f.0 * (b.hi.x1 - b.lo.x1),
            b.lo.x2 + f.1 * (b.hi.x2 - b.lo.x2),
            b.lo.x3 + f.2 * (b.hi.x3 - b.lo.x3),
        )
    }

    fn frac() -> impl Strategy<Value = (f64, f64, f64)> {
        (0.0..1.0f64, 0.0..1.0f64, 0.0..1.0f64)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn ordering_and_sandwich(seed in 0u64..20, f in frac()) {
            let p = Polytope::random_cut_cube(seed, 3);
            let x = interior_point(&p, f);
            prop_assume!(p.contains(x));
            let (dc, dk, w) = (delta_c(&p, x).unwrap(), delta_k(&p, x).unwrap(), omega(&p, x).unwrap());
            prop_assert!(dk <= dc * (1.0 + 1e-12));
            prop_assert!(dc <= std::f64::consts::PI.sqrt() * dk * (1.0 + 1e-12));
            prop_assert!(dc <= w * (1.0 + 1e-12));
            let (a, b) = (d1(&p, x).unwrap(), d2(&p, x).unwrap());
            prop_assert!(1.0 / (a * a) + 1.0 / (b * b) >= 1.0 / (w * w) * (1.0 - 1e-12));
            prop_assert!(dc > 0.0 && dk > 0.0 && w > 0.0);
        }

        #[test]
        fn cc_distance_is_one_lipschitz(seed in 0u64..20, f in frac(), g in frac()) {
            let p = Polytope::random_cut_cube(seed, 2);
            let (x, y) = (interior_point(&p, f), interior_point(&p, g));
            prop_assume!(p.contains(x) && p.contains(y));
            let diff = (delta_c(&p, x).unwrap() - delta_c(&p, y).unwrap()).abs();
            prop_assert!(diff <= cc_distance(x, y).unwrap() + 1e-9);
        }

        #[test]
        fn redundant_planes_do_not_change_distances(f in frac()) {
            let c = cube();
            let mut hs = c.halfspaces().to_vec();
            hs.push(Halfspace::new([0.3, 0.4, 1.0], 3.0));
            let p = Polytope::new(hs).unwrap();
            let x = interior_point(&c, f);
            prop_assume!(c.contains(x));
            prop_assert_eq!(delta_c(&p, x).unwrap(), delta_c(&c, x).unwrap());
            prop_assert_eq!(delta_k(&p, x).unwrap(), delta_k(&c, x).unwrap());
        }
    }
}
