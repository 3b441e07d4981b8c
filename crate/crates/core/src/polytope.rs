//! Bounded convex polytopes given as intersections of halfspaces.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Plane, Point};

/// The closed halfspace `⟨n, y⟩ ≤ c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub plane: Plane,
}

impl Halfspace {
    pub fn new(n: [f64; 3], c: f64) -> Self {
        Halfspace { plane: Plane::new(n[0], n[1], n[2], c) }
    }
}

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub lo: Point,
    pub hi: Point,
}

/// A two-dimensional face with its vertices in cyclic order.
#[derive(Clone, Debug)]
pub struct Face {
    /// Index into [`Polytope::halfspaces`].
    pub halfspace: usize,
    pub vertices: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct HalfspaceRecord {
    n: [f64; 3],
    c: f64,
}

#[derive(Serialize, Deserialize)]
struct PolytopeRecord {
    halfspaces: Vec<HalfspaceRecord>,
}

/// Open bounded convex polytope with nonempty interior.
#[derive(Clone, Debug)]
pub struct Polytope {
    halfspaces: Vec<Halfspace>,
    unit: Vec<Plane>,
    vertices: Vec<Point>,
    faces: Vec<Face>,
    bbox: BBox,
}

fn solve3(a: [Point; 3], b: [f64; 3]) -> Option<Point> {
    let det = a[0].dot(a[1].cross(a[2]));
    if det.abs() < 1e-10 {
        return None;
    }
    // Cramer's rule through the cross products of the rows
    let r = a[1].cross(a[2]) * b[0] + a[2].cross(a[0]) * b[1] + a[0].cross(a[1]) * b[2];
    Some(r * (1.0 / det))
}

impl Polytope {
    /// Validates boundedness and a nonempty interior, then enumerates
    /// vertices and faces.
    pub fn new(halfspaces: Vec<Halfspace>) -> Result<Self> {
        if halfspaces.is_empty() {
            return Err(Error::InvalidPolytope("no halfspaces".into()));
        }
        let mut unit = Vec::with_capacity(halfspaces.len());
        for h in &halfspaces {
            let p = h.plane;
            if !(p.n1.is_finite() && p.n2.is_finite() && p.n3.is_finite() && p.c.is_finite()) {
                return Err(Error::InvalidPolytope("non-finite halfspace".into()));
            }
            if p.normal().norm() == 0.0 {
                return Err(Error::InvalidPolytope("zero normal".into()));
            }
            unit.push(p.normalized());
        }
        let scale = unit.iter().fold(1.0f64, |s, p| s.max(p.c.abs()));
        let big = 1e6 * scale;
        let m = unit.len();
        let mut all = unit.clone();
        for (i, s) in [(0usize, 1.0), (0, -1.0), (1, 1.0), (1, -1.0), (2, 1.0), (2, -1.0)] {
            let mut n = [0.0; 3];
            n[i] = s;
            all.push(Plane::new(n[0], n[1], n[2], big));
        }
        let tol = 1e-9 * scale;
        let mut verts: Vec<Point> = Vec::new();
        let mut unbounded = false;
        let total = all.len();
        for i in 0..total {
            for j in (i + 1)..total {
                for k in (j + 1)..total {
                    let Some(v) = solve3(
                        [all[i].normal(), all[j].normal(), all[k].normal()],
                        [all[i].c, all[j].c, all[k].c],
                    ) else {
                        continue;
                    };
                    if all.iter().any(|p| p.eval(v) > tol) {
                        continue;
                    }
                    if all[m..].iter().any(|p| p.eval(v) > -tol * 1e3) {
                        unbounded = true;
                        continue;
                    }
                    if !verts.iter().any(|w| (*w - v).norm() <= tol * 10.0) {
                        verts.push(v);
                    }
                }
            }
        }
        if unbounded {
            return Err(Error::InvalidPolytope("unbounded intersection".into()));
        }
        if verts.is_empty() {
            return Err(Error::InvalidPolytope("empty intersection".into()));
        }
        let centroid = verts.iter().fold(Point::ORIGIN, |s, v| s + *v) * (1.0 / verts.len() as f64);
        let mut lo = verts[0];
        let mut hi = verts[0];
        for v in &verts {
            lo = Point::new(lo.x1.min(v.x1), lo.x2.min(v.x2), lo.x3.min(v.x3));
            hi = Point::new(hi.x1.max(v.x1), hi.x2.max(v.x2), hi.x3.max(v.x3));
        }
        let diam = (hi - lo).norm();
        let slack = unit.iter().map(|p| -p.eval(centroid)).fold(f64::INFINITY, f64::min);
        if !(slack > 1e-9 * diam.max(1e-300)) {
            return Err(Error::InvalidPolytope("empty interior".into()));
        }
        let mut faces: Vec<Face> = Vec::new();
        for (idx, p) in unit.iter().enumerate() {
            let on: Vec<Point> = verts.iter().copied().filter(|v| p.eval(*v).abs() <= tol * 10.0).collect();
            if on.len() < 3 {
                continue;
            }
            if faces.iter().any(|f| {
                let q = unit[f.halfspace];
                (q.normal() - p.normal()).norm() < 1e-12 && (q.c - p.c).abs() < tol
            }) {
                continue;
            }
            let c = on.iter().fold(Point::ORIGIN, |s, v| s + *v) * (1.0 / on.len() as f64);
            let n = p.normal();
            let mut e1 = on.iter().map(|v| *v - c).fold(Point::ORIGIN, |a, d| if d.norm() > a.norm() { d } else { a });
            e1 = e1 * (1.0 / e1.norm());
            let e2 = n.cross(e1);
            let mut ordered: Vec<(f64, Point)> =
                on.iter().map(|v| ((*v - c).dot(e2).atan2((*v - c).dot(e1)), *v)).collect();
            ordered.sort_by(|a, b| a.0.total_cmp(&b.0));
            faces.push(Face { halfspace: idx, vertices: ordered.into_iter().map(|x| x.1).collect() });
        }
        Ok(Polytope { halfspaces, unit, vertices: verts, faces, bbox: BBox { lo, hi } })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rec: PolytopeRecord = serde_json::from_str(text)?;
        Polytope::new(rec.halfspaces.into_iter().map(|h| Halfspace::new(h.n, h.c)).collect())
    }

    pub fn to_json(&self) -> String {
        let rec = PolytopeRecord {
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| HalfspaceRecord { n: [h.plane.n1, h.plane.n2, h.plane.n3], c: h.plane.c })
                .collect(),
        };
        serde_json::to_string_pretty(&rec).expect("plain data serializes")
    }

    /// The halfspaces as given.
    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    /// The bounding planes with unit normals, in input order.
    pub fn planes(&self) -> &[Plane] {
        &self.unit
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn bbox(&self) -> BBox {
        self.bbox
    }

    /// Strict membership in the open polytope.
    pub fn contains(&self, x: Point) -> bool {
        self.unit.iter().all(|p| p.eval(x) < 0.0)
    }

    pub(crate) fn require_interior(&self, x: Point) -> Result<()> {
        if !x.is_finite() {
            return Err(Error::NonFinite("query point"));
        }
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInterior)
        }
    }

    /// Smallest `s > 0` with `x + s v` outside the polytope.
    pub fn ray_exit(&self, x: Point, v: Point) -> Result<f64> {
        self.require_interior(x)?;
        if v.norm() == 0.0 || !v.is_finite() {
            return Err(Error::InvalidArgument("ray direction must be nonzero and finite".into()));
        }
        Ok(self.ray_exit_unchecked(x, v))
    }

    pub(crate) fn ray_exit_unchecked(&self, x: Point, v: Point) -> f64 {
        let mut s = f64::INFINITY;
        for p in &self.unit {
            let den = p.normal().dot(v);
            if den > 0.0 {
                s = s.min(-p.eval(x) / den);
            }
        }
        s
    }

    /// Centroid of the vertex set, an interior point.
    pub fn vertex_centroid(&self) -> Point {
        self.vertices.iter().fold(Point::ORIGIN, |s, v| s + *v) * (1.0 / self.vertices.len() as f64)
    }

    /// The box `[lo, hi]` as a polytope.
    pub fn cuboid(lo: Point, hi: Point) -> Result<Self> {
        Polytope::new(vec![
            Halfspace::new([1.0, 0.0, 0.0], hi.x1),
            Halfspace::new([-1.0, 0.0, 0.0], -lo.x1),
            Halfspace::new([0.0, 1.0, 0.0], hi.x2),
            Halfspace::new([0.0, -1.0, 0.0], -lo.x2),
            Halfspace::new([0.0, 0.0, 1.0], hi.x3),
            Halfspace::new([0.0, 0.0, -1.0], -lo.x3),
        ])
    }

    /// The cube `(−h, h)³`.
    pub fn cube(h: f64) -> Result<Self> {
        Polytope::cuboid(Point::new(-h, -h, -h), Point::new(h, h, h))
    }

    /// Tetrahedron spanned by four affinely independent points.
    pub fn simplex(v: [Point; 4]) -> Result<Self> {
        let mut hs = Vec::with_capacity(4);
        for i in 0..4 {
            let f: Vec<Point> = (0..4).filter(|&j| j != i).map(|j| v[j]).collect();
            let mut n = (f[1] - f[0]).cross(f[2] - f[0]);
            if n.norm() == 0.0 {
                return Err(Error::InvalidPolytope("degenerate simplex".into()));
            }
            if n.dot(v[i] - f[0]) > 0.0 {
                n = -n;
            }
            hs.push(Halfspace::new(n.to_array(), n.dot(f[0])));
        }
        Polytope::new(hs)
    }

    /// Prism over a convex polygon (counter-clockwise vertices) between heights `z0 < z1`.
    pub fn prism(polygon: &[(f64, f64)], z0: f64, z1: f64) -> Result<Self> {
        if polygon.len() < 3 {
            return Err(Error::InvalidPolytope("prism needs at least 3 polygon vertices".into()));
        }
        let mut hs = Vec::with_capacity(polygon.len() + 2);
        for i in 0..polygon.len() {
            let (ax, ay) = polygon[i];
            let (bx, by) = polygon[(i + 1) % polygon.len()];
            // outward normal of a counter-clockwise edge
            let (nx, ny) = (by - ay, ax - bx);
            hs.push(Halfspace::new([nx, ny, 0.0], nx * ax + ny * ay));
        }
        hs.push(Halfspace::new([0.0, 0.0, 1.0], z1));
        hs.push(Halfspace::new([0.0, 0.0, -1.0], -z0));
        Polytope::new(hs)
    }

    /// Prism over the regular `n_sides`-gon inscribed in the circle of
    /// radius `radius` about `(cx, cy)`.
    pub fn regular_prism(cx: f64, cy: f64, radius: f64, n_sides: usize, z0: f64, z1: f64) -> Result<Self> {
        let poly: Vec<(f64, f64)> = (0..n_sides)
            .map(|i| {
                let a = 2.0 * PI * i as f64 / n_sides as f64;
                (cx + radius * a.cos(), cy + radius * a.sin())
            })
            .collect();
        Polytope::prism(&poly, z0, z1)
    }

    /// Seeded random tetrahedron with vertices in `[−1, 1]³` and volume at least 0.2.
    pub fn random_simplex(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let v: [Point; 4] = std::array::from_fn(|_| {
                Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            });
            let vol = (v[1] - v[0]).dot((v[2] - v[0]).cross(v[3] - v[0])).abs() / 6.0;
            if vol >= 0.2 {
                if let Ok(p) = Polytope::simplex(v) {
                    return p;
                }
            }
        }
    }

    /// Seeded random polytope: the cube `(−1, 1)³` cut by `extra` random
    /// planes at distance 0.3 to 0.9 from the origin.
    pub fn random_cut_cube(seed: u64, extra: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut hs = Polytope::cube(1.0).expect("cube is valid").halfspaces;
        for _ in 0..extra {
            let n = loop {
                let n = Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                let l = n.norm();
                if l > 0.1 && l <= 1.0 {
                    break n * (1.0 / l);
                }
            };
            hs.push(Halfspace::new(n.to_array(), rng.random_range(0.3..0.9)));
        }
        Polytope::new(hs).expect("cut cube contains a ball about the origin")
    }
}
