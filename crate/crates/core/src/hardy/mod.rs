//! Grid discretization of Hardy quotients: horizontal gradients, quotient
//! evaluation, trial functions and quotient minimization.

pub mod eigen;
pub mod form;
pub mod grid;
pub mod weight;

use serde::{Deserialize, Serialize};

use crate::distance::delta_c_nearest_plane;
use crate::error::{Error, Result};
use crate::polytope::Polytope;
pub use eigen::{EigenOptions, EigenResult};
pub use form::DirichletForm;
pub use grid::{Grid, GridFunction};
pub use weight::{weight_at, weight_field, WeightField, WeightKind};

/// `(X1 u, X2 u)` at every cell from central differences of the coordinate
/// derivatives, one-sided where a neighbour leaves the mask; zero off the mask.
pub fn sub_gradient(g: &Grid, u: &GridFunction) -> Vec<[f64; 2]> {
    let mask = g.mask();
    (0..g.len())
        .map(|c| {
            if !mask[c] {
                return [0.0, 0.0];
            }
            let [i, j, k] = g.coords(c);
            let (i, j, k) = (i as i64, j as i64, k as i64);
            let mut d = [0.0; 3];
            for (a, step) in [(1i64, 0i64, 0i64), (0, 1, 0), (0, 0, 1)].into_iter().enumerate() {
                let nb = |s: i64| g.index_checked(i + s * step.0, j + s * step.1, k + s * step.2).filter(|&n| mask[n]);
                d[a] = match (nb(-1), nb(1)) {
                    (Some(m), Some(p)) => (u.values[p] - u.values[m]) / (2.0 * g.h[a]),
                    (None, Some(p)) => (u.values[p] - u.values[c]) / g.h[a],
                    (Some(m), None) => (u.values[c] - u.values[m]) / g.h[a],
                    (None, None) => 0.0,
                };
            }
            let x = g.center_of(c);
            [d[0] + x.x2 / 2.0 * d[2], d[1] - x.x1 / 2.0 * d[2]]
        })
        .collect()
}

/// `Σ|∇_H u|² vol / Σ w u² vol` with the horizontal energy of [`form`].
pub fn quotient(g: &Grid, u: &GridFunction, w: &WeightField) -> Result<f64> {
    if u.values.len() != g.len() || w.values.len() != g.len() {
        return Err(Error::InvalidArgument("grid function size does not match the grid".into()));
    }
    if u.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if u.values.iter().zip(g.mask()).any(|(&v, &m)| v != 0.0 && !m) {
        return Err(Error::InvalidArgument("grid function is nonzero off the mask".into()));
    }
    let vol = g.cell_volume();
    let den: f64 = u.values.iter().zip(&w.values).map(|(v, wt)| wt * v * v * vol).sum();
    if !(den > 0.0) {
        return Err(Error::InvalidArgument("weighted norm of u vanishes".into()));
    }
    Ok(form::energy(g, &u.values) / den)
}

/// `δ^{1/2 + 1/n}` on the mask for a cached boundary distance `dist`.
pub fn trial_from_distance(g: &Grid, dist: &[f64], n: u32) -> Result<GridFunction> {
    if n == 0 {
        return Err(Error::InvalidArgument("trial index n must be at least 1".into()));
    }
    let alpha = 0.5 + 1.0 / n as f64;
    let values = dist.iter().zip(g.mask()).map(|(&d, &m)| if m { d.powf(alpha) } else { 0.0 }).collect();
    Ok(GridFunction { values })
}

/// `δ_C^{1/2 + 1/n}` on the mask.
pub fn trial_sequence(g: &Grid, p: &Polytope, n: u32) -> Result<GridFunction> {
    let dist: Vec<f64> = (0..g.len())
        .map(|c| if g.mask()[c] { delta_c_nearest_plane(p, g.center_of(c)).0 } else { 0.0 })
        .collect();
    trial_from_distance(g, &dist, n)
}

/// Smallest discrete quotient over functions supported on the active cells.
#[derive(Clone, Debug)]
pub struct QuotientMinimum {
    pub value: f64,
    pub function: GridFunction,
    pub iterations: usize,
    pub converged: bool,
    pub history: Vec<f64>,
}

pub fn minimize_quotient(g: &Grid, w: &WeightField, iters: usize) -> Result<QuotientMinimum> {
    minimize_quotient_with(g, w, None, EigenOptions { max_iters: iters, ..EigenOptions::default() })
}

/// As [`minimize_quotient`], optionally starting from `init` (for example a
/// coarse-grid minimizer resampled onto `g`).
pub fn minimize_quotient_with(
    g: &Grid,
    w: &WeightField,
    init: Option<&GridFunction>,
    opts: EigenOptions,
) -> Result<QuotientMinimum> {
    if g.active_count() == 0 {
        return Err(Error::InvalidArgument("grid has no cells away from the boundary".into()));
    }
    let form = DirichletForm::new(g, g.active());
    let vol = g.cell_volume();
    let b: Vec<f64> = form.cells.iter().map(|&c| w.values[c] * vol).collect();
    if !b.iter().any(|&v| v > 0.0) {
        return Err(Error::SingularWeight("weight vanishes on the admissible support".into()));
    }
    let mut x0: Vec<f64> = match init {
        Some(f) => form.gather(&f.values),
        None => match &w.distance {
            Some(d) => form.cells.iter().map(|&c| d[c].sqrt()).collect(),
            None => vec![1.0; form.len()],
        },
    };
    if !x0.iter().zip(&b).any(|(x, bb)| x * x * bb > 0.0) {
        x0 = vec![1.0; form.len()];
    }
    let res = eigen::lobpcg(&form.matrix, &b, &x0, opts);
    if !res.converged {
        log::warn!("quotient minimization stopped after {} iterations without meeting the tolerance", res.iterations);
    }
    let mut values = form.scatter(&res.vector, g.len());
    // fix the sign so the minimizer is mostly positive
    if values.iter().sum::<f64>() < 0.0 {
        values.iter_mut().for_each(|v| *v = -*v);
    }
    Ok(QuotientMinimum {
        value: res.value,
        function: GridFunction { values },
        iterations: res.iterations,
        converged: res.converged,
        history: res.history,
    })
}

/// Outcome of the unit-gradient check for `δ_C`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct EikonalReport {
    /// Mask cells that are not ridge cells.
    pub checked: usize,
    /// Mask cells whose stencil sees more than one nearest plane.
    pub ridge: usize,
    /// Checked cells with `|∇_H δ_C|` inside the band.
    pub within: usize,
    pub fraction: f64,
    pub band: [f64; 2],
}

/// Fraction of non-ridge mask cells where the finite-difference `|∇_H δ_C|`
/// lies in `band`.
pub fn eikonal_check(g: &Grid, p: &Polytope, band: [f64; 2]) -> EikonalReport {
    use rayon::prelude::*;
    let eval: Vec<(f64, usize)> = (0..g.len())
        .into_par_iter()
        .map(|c| if g.mask()[c] { delta_c_nearest_plane(p, g.center_of(c)) } else { (0.0, usize::MAX) })
        .collect();
    let u = GridFunction { values: eval.iter().map(|e| e.0).collect() };
    let grad = sub_gradient(g, &u);
    let (mut checked, mut ridge, mut within) = (0, 0, 0);
    for c in 0..g.len() {
        if !g.mask()[c] {
            continue;
        }
        let [i, j, k] = g.coords(c);
        let face = eval[c].1;
        let mixed = [(1i64, 0i64, 0i64), (0, 1, 0), (0, 0, 1)].iter().any(|s| {
            [-1i64, 1].iter().any(|&o| {
                g.index_checked(i as i64 + o * s.0, j as i64 + o * s.1, k as i64 + o * s.2)
                    .filter(|&n| g.mask()[n])
                    .is_some_and(|n| eval[n].1 != face)
            })
        });
        if mixed {
            ridge += 1;
            continue;
        }
        checked += 1;
        let norm = grad[c][0].hypot(grad[c][1]);
        if norm >= band[0] && norm <= band[1] {
            within += 1;
        }
    }
    EikonalReport { checked, ridge, within, fraction: within as f64 / checked.max(1) as f64, band }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{group_mul, Point};
    use crate::polytope::Halfspace;

    fn cube() -> Polytope {
        Polytope::cube(1.0).unwrap()
    }

    #[test]
    fn gradient_of_linear_functions_is_exact() {
        let p = cube();
        let g = Grid::new(&p, 10).unwrap();
        let u = GridFunction::from_fn(&g, |x| x.x1);
        for v in sub_gradient(&g, &u).iter().zip(g.mask()).filter(|e| *e.1).map(|e| e.0) {
            assert!((v[0] - 1.0).abs() < 1e-12 && v[1].abs() < 1e-12);
        }
        let u = GridFunction::from_fn(&g, |x| x.x3);
        for (c, v) in sub_gradient(&g, &u).iter().enumerate() {
            let x = g.center_of(c);
            assert!((v[0] - x.x2 / 2.0).abs() < 1e-12 && (v[1] + x.x1 / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn gradient_second_order_on_quadratics() {
        let p = cube();
        let err = |n: usize| {
            let g = Grid::new(&p, n).unwrap();
            let u = GridFunction::from_fn(&g, |x| x.x1 * x.x1);
            let gr = sub_gradient(&g, &u);
            (0..g.len())
                .filter(|&c| g.active()[c])
                .map(|c| (gr[c][0] - 2.0 * g.center_of(c).x1).abs())
                .fold(0.0, f64::max)
        };
        // central differences are exact on quadratics in the interior
        assert!(err(12) < 1e-12 && err(24) < 1e-12);
        // a cubic exhibits the h² rate
        let cubic = |n: usize| {
            let g = Grid::new(&p, n).unwrap();
            let u = GridFunction::from_fn(&g, |x| x.x1.powi(3));
            let gr = sub_gradient(&g, &u);
            (0..g.len())
                .filter(|&c| g.active()[c])
                .map(|c| (gr[c][0] - 3.0 * g.center_of(c).x1.powi(2)).abs())
                .fold(0.0, f64::max)
        };
        let ratio = cubic(12) / cubic(24);
        assert!(ratio > 3.5 && ratio < 4.5, "{ratio}");
    }

    #[test]
    fn quotient_scaling_and_errors() {
        let p = cube();
        let g = Grid::new(&p, 12).unwrap();
        let w = weight_field(&g, &p, WeightKind::DeltaC, Point::ORIGIN).unwrap();
        let u = trial_sequence(&g, &p, 2).unwrap();
        let q = quotient(&g, &u, &w).unwrap();
        let q3 = quotient(&g, &u.scaled(3.0), &w).unwrap();
        assert!((q3 - q).abs() <= 1e-12 * q);
        let q2 = quotient(&g, &u.scaled(-0.25), &w).unwrap();
        assert!((q2 - q).abs() <= 1e-15 * q);
        assert!(matches!(quotient(&g, &GridFunction::zeros(&g), &w), Err(Error::ZeroFunction)));
        assert!(trial_sequence(&g, &p, 0).is_err());
    }

    #[test]
    fn quotient_invariant_under_vertical_translation() {
        let p = Polytope::cuboid(Point::new(-1.0, -1.0, 0.0), Point::new(1.0, 1.0, 1.0)).unwrap();
        let v = Point::new(0.0, 0.0, 0.75);
        let shifted: Vec<Halfspace> = p
            .halfspaces()
            .iter()
            .map(|h| Halfspace::new([h.plane.n1, h.plane.n2, h.plane.n3], h.plane.c + h.plane.n3 * v.x3))
            .collect();
        let q = Polytope::new(shifted).unwrap();
        let (g, gq) = (Grid::new(&p, 14).unwrap(), Grid::new(&q, 14).unwrap());
        let (w, wq) = (
            weight_field(&g, &p, WeightKind::DeltaC, Point::ORIGIN).unwrap(),
            weight_field(&gq, &q, WeightKind::DeltaC, group_mul(v, Point::ORIGIN)).unwrap(),
        );
        let (u, uq) = (trial_sequence(&g, &p, 3).unwrap(), trial_sequence(&gq, &q, 3).unwrap());
        let (a, b) = (quotient(&g, &u, &w).unwrap(), quotient(&gq, &uq, &wq).unwrap());
        assert!((a - b).abs() <= 1e-6 * a, "{a} {b}");
    }

    #[test]
    fn weights_invariant_under_left_translation() {
        let p = Polytope::random_cut_cube(2, 3);
        let v = Point::new(0.4, -0.3, 0.2);
        // image of p under y ↦ v ⊞ y: ⟨n, v⁻¹ ⊞ y⟩ ≤ c is again a halfspace
        let moved: Vec<Halfspace> = p
            .halfspaces()
            .iter()
            .map(|h| {
                let (n1, n2, n3, c) = (h.plane.n1, h.plane.n2, h.plane.n3, h.plane.c);
                // v⁻¹ ⊞ y = (y1 − v1, y2 − v2, y3 − v3 + ½(v1 y2 − v2 y1))
                let m = [n1 - n3 * v.x2 / 2.0, n2 + n3 * v.x1 / 2.0, n3];
                Halfspace::new(m, c + n1 * v.x1 + n2 * v.x2 + n3 * v.x3)
            })
            .collect();
        let q = Polytope::new(moved).unwrap();
        for x in [Point::new(0.1, 0.2, 0.0), Point::new(-0.3, 0.1, 0.2), Point::new(0.0, -0.2, -0.3)] {
            if !p.contains(x) {
                continue;
            }
            let y = group_mul(v, x);
            for kind in [WeightKind::DeltaC, WeightKind::DeltaK, WeightKind::Omega, WeightKind::D1D2, WeightKind::PointCc] {
                let a = weight_at(&p, kind, Point::ORIGIN, x).unwrap();
                let b = weight_at(&q, kind, v, y).unwrap();
                assert!((a - b).abs() <= 1e-9 * a, "{kind} {a} {b}");
            }
        }
    }

    #[test]
    fn minimizer_is_no_worse_than_trial_functions() {
        let p = cube();
        let g = Grid::new(&p, 14).unwrap();
        let w = weight_field(&g, &p, WeightKind::DeltaC, Point::ORIGIN).unwrap();
        let m = minimize_quotient(&g, &w, 300).unwrap();
        assert!(m.converged);
        assert!(m.history.windows(2).all(|h| h[1] <= h[0] * (1.0 + 1e-10)));
        let trial = trial_sequence(&g, &p, 2).unwrap().restrict_to_active(&g);
        assert!(m.value <= quotient(&g, &trial, &w).unwrap());
        let q = quotient(&g, &m.function, &w).unwrap();
        assert!((q - m.value).abs() <= 1e-8 * m.value, "{q} {}", m.value);
    }

    #[test]
    fn eikonal_on_cube_small() {
        let p = cube();
        let g = Grid::new(&p, 16).unwrap();
        let r = eikonal_check(&g, &p, [0.9, 1.1]);
        assert!(r.checked > 0 && r.fraction > 0.8, "{r:?}");
    }
}
