//! Slow reference computations used to cross-check the fast paths.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geodesic::cc_distance;
use crate::group::{group_inv, group_mul, horizontal_frame, kaplan_gauge, Point};
use crate::polytope::{Face, Polytope};
use crate::scalar::golden_min;

/// Exit parameter found by marching and bisection on membership.
pub fn ray_exit_by_sampling(p: &Polytope, x: Point, v: Point) -> f64 {
    let mut step = 1e-3 * (p.bbox().hi - p.bbox().lo).norm() / v.norm();
    let mut s = 0.0;
    while p.contains(x + v * (s + step)) {
        s += step;
    }
    while step > 1e-15 * (1.0 + s) {
        step *= 0.5;
        if p.contains(x + v * (s + step)) {
            s += step;
        }
    }
    s + step
}

/// Area-weighted uniform samples on the boundary.
pub fn boundary_samples(p: &Polytope, n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tris: Vec<(Point, Point, Point, f64)> = Vec::new();
    for f in p.faces() {
        let v = &f.vertices;
        for i in 1..v.len() - 1 {
            let area = (v[i] - v[0]).cross(v[i + 1] - v[0]).norm() / 2.0;
            tris.push((v[0], v[i], v[i + 1], area));
        }
    }
    let total: f64 = tris.iter().map(|t| t.3).sum();
    (0..n)
        .map(|_| {
            let mut r = rng.random_range(0.0..total);
            let mut k = 0;
            while k + 1 < tris.len() && r > tris[k].3 {
                r -= tris[k].3;
                k += 1;
            }
            let (a, b, c, _) = tris[k];
            let (mut u, mut w): (f64, f64) = (rng.random(), rng.random());
            if u + w > 1.0 {
                u = 1.0 - u;
                w = 1.0 - w;
            }
            a + (b - a) * u + (c - a) * w
        })
        .collect()
}

/// Minimum over `∂P ∩ H(x)` of the gauge distance to `x`, sampled along
/// `n` horizontal directions and refined by golden-section search.
pub fn slice_boundary_gauge_min(p: &Polytope, x: Point, n: usize) -> f64 {
    let (t1, t2) = horizontal_frame(x);
    let gauge_at = |phi: f64| {
        let v = t1 * phi.cos() + t2 * phi.sin();
        let s = ray_exit_by_sampling(p, x, v);
        kaplan_gauge(group_mul(group_inv(x + v * s), x))
    };
    let h = 2.0 * PI / n as f64;
    let (mut best, mut arg) = (f64::INFINITY, 0.0);
    for i in 0..n {
        let phi = i as f64 * h;
        let g = gauge_at(phi);
        if g < best {
            best = g;
            arg = phi;
        }
    }
    let (_, refined) = golden_min(gauge_at, arg - h, arg + h, 60);
    best.min(refined)
}

struct FaceChart {
    origin: Point,
    e1: Point,
    e2: Point,
    poly: Vec<(f64, f64)>,
}

impl FaceChart {
    fn new(face: &Face) -> Self {
        let v = &face.vertices;
        let origin = v[0];
        let e1 = (v[1] - v[0]) * (1.0 / (v[1] - v[0]).norm());
        let n = (v[1] - v[0]).cross(v[2] - v[0]);
        let e2 = n.cross(e1) * (1.0 / n.norm());
        let poly = v.iter().map(|p| ((*p - origin).dot(e1), (*p - origin).dot(e2))).collect();
        FaceChart { origin, e1, e2, poly }
    }

    fn point(&self, s: f64, t: f64) -> Point {
        let (s, t) = self.clamp(s, t);
        self.origin + self.e1 * s + self.e2 * t
    }

    /// Nearest point of the (convex) polygon.
    fn clamp(&self, s: f64, t: f64) -> (f64, f64) {
        let n = self.poly.len();
        let mut inside_pos = true;
        let mut inside_neg = true;
        for i in 0..n {
            let (ax, ay) = self.poly[i];
            let (bx, by) = self.poly[(i + 1) % n];
            let cr = (bx - ax) * (t - ay) - (by - ay) * (s - ax);
            inside_pos &= cr >= 0.0;
            inside_neg &= cr <= 0.0;
        }
        if inside_pos || inside_neg {
            return (s, t);
        }
        let mut best = (f64::INFINITY, s, t);
        for i in 0..n {
            let (ax, ay) = self.poly[i];
            let (bx, by) = self.poly[(i + 1) % n];
            let (dx, dy) = (bx - ax, by - ay);
            let u = (((s - ax) * dx + (t - ay) * dy) / (dx * dx + dy * dy)).clamp(0.0, 1.0);
            let (px, py) = (ax + u * dx, ay + u * dy);
            let d = (px - s).hypot(py - t);
            if d < best.0 {
                best = (d, px, py);
            }
        }
        (best.1, best.2)
    }
}

fn nelder_mead<F: Fn(f64, f64) -> f64>(f: &F, start: (f64, f64), size: f64, iters: usize) -> f64 {
    let mut s = [
        (start.0, start.1),
        (start.0 + size, start.1),
        (start.0, start.1 + size),
    ];
    let mut v = [f(s[0].0, s[0].1), f(s[1].0, s[1].1), f(s[2].0, s[2].1)];
    for _ in 0..iters {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        let (b, m, w) = (idx[0], idx[1], idx[2]);
        if (v[w] - v[b]).abs() <= 1e-13 * (1.0 + v[b].abs()) {
            break;
        }
        let c = ((s[b].0 + s[m].0) / 2.0, (s[b].1 + s[m].1) / 2.0);
        let refl = (2.0 * c.0 - s[w].0, 2.0 * c.1 - s[w].1);
        let fr = f(refl.0, refl.1);
        if fr < v[b] {
            let exp = (3.0 * c.0 - 2.0 * s[w].0, 3.0 * c.1 - 2.0 * s[w].1);
            let fe = f(exp.0, exp.1);
            if fe < fr {
                s[w] = exp;
                v[w] = fe;
            } else {
                s[w] = refl;
                v[w] = fr;
            }
        } else if fr < v[m] {
            s[w] = refl;
            v[w] = fr;
        } else {
            let con = ((c.0 + s[w].0) / 2.0, (c.1 + s[w].1) / 2.0);
            let fc = f(con.0, con.1);
            if fc < v[w] {
                s[w] = con;
                v[w] = fc;
            } else {
                for k in [m, w] {
                    s[k] = ((s[k].0 + s[b].0) / 2.0, (s[k].1 + s[b].1) / 2.0);
                    v[k] = f(s[k].0, s[k].1);
                }
            }
        }
    }
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

/// `δ_C` by direct search over each face: a 16×16 grid on the face chart,
/// then Nelder–Mead restarts from the three best grid points.
pub fn delta_c_face_search(p: &Polytope, x: Point) -> f64 {
    let mut best = f64::INFINITY;
    for face in p.faces() {
        let chart = FaceChart::new(face);
        let f = |s: f64, t: f64| cc_distance(x, chart.point(s, t)).unwrap_or(f64::INFINITY);
        let (mut smin, mut smax, mut tmin, mut tmax) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for &(s, t) in &chart.poly {
            smin = smin.min(s);
            smax = smax.max(s);
            tmin = tmin.min(t);
            tmax = tmax.max(t);
        }
        let mut cand: Vec<(f64, f64, f64)> = Vec::new();
        for i in 0..16 {
            for j in 0..16 {
                let s = smin + (i as f64 + 0.5) / 16.0 * (smax - smin);
                let t = tmin + (j as f64 + 0.5) / 16.0 * (tmax - tmin);
                let (s, t) = chart.clamp(s, t);
                cand.push((f(s, t), s, t));
            }
        }
        cand.sort_by(|a, b| a.0.total_cmp(&b.0));
        let size = (smax - smin).max(tmax - tmin) / 16.0;
        for &(v, s, t) in cand.iter().take(3) {
            best = best.min(v);
            best = best.min(nelder_mead(&f, (s, t), size, 400));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_oracles_on_cube() {
        let c = Polytope::cube(1.0).unwrap();
        let s = ray_exit_by_sampling(&c, Point::ORIGIN, Point::new(1.0, 0.0, 0.0));
        assert!((s - 1.0).abs() < 1e-12);
        let b = boundary_samples(&c, 1000, 1);
        assert!(b.iter().all(|y| (y.x1.abs().max(y.x2.abs()).max(y.x3.abs()) - 1.0).abs() < 1e-12));
        assert!((slice_boundary_gauge_min(&c, Point::ORIGIN, 1000) - 1.0).abs() < 1e-9);
        let d = delta_c_face_search(&c, Point::ORIGIN);
        assert!((d - 1.0).abs() < 1e-7, "{d}");
    }
}
