//! Fixed inputs shared by the benchmarks.

use heisenhardy::{Point, Polytope};

/// Points spread over `[−2, 2]³` on a deterministic lattice.
pub fn sample_points(n: usize) -> Vec<Point> {
    (0..n)
        .map(|i| {
            let h = heisenhardy::constants::halton3(i as u64 + 1);
            Point::new(4.0 * h[0] - 2.0, 4.0 * h[1] - 2.0, 4.0 * h[2] - 2.0)
        })
        .collect()
}

/// A cube cut by a few oblique planes and interior points of it.
pub fn cut_cube_with_points(n: usize) -> (Polytope, Vec<Point>) {
    let p = Polytope::random_cut_cube(5, 4);
    let pts = sample_points(8 * n).into_iter().map(|x| x * 0.5).filter(|&x| p.contains(x)).take(n).collect();
    (p, pts)
}
