//! Regular cell-centered lattices over a polytope's bounding box.

use crate::error::{Error, Result};
use crate::group::Point;
use crate::polytope::{BBox, Polytope};

/// Cell-centered grid with the interior mask of a polytope.
#[derive(Clone, Debug)]
pub struct Grid {
    pub bbox: BBox,
    pub n: [usize; 3],
    pub h: [f64; 3],
    mask: Vec<bool>,
    active: Vec<bool>,
}

impl Grid {
    /// `n` cells per axis over the bounding box of `p`.
    pub fn new(p: &Polytope, n: usize) -> Result<Self> {
        Grid::with_resolution(p, [n, n, n])
    }

    pub fn with_resolution(p: &Polytope, n: [usize; 3]) -> Result<Self> {
        if n.iter().any(|&k| k < 3) {
            return Err(Error::InvalidArgument(format!("resolution {n:?} must be at least 3 per axis")));
        }
        let bbox = p.bbox();
        let ext = [bbox.hi.x1 - bbox.lo.x1, bbox.hi.x2 - bbox.lo.x2, bbox.hi.x3 - bbox.lo.x3];
        let h = [ext[0] / n[0] as f64, ext[1] / n[1] as f64, ext[2] / n[2] as f64];
        let mut g = Grid { bbox, n, h, mask: Vec::new(), active: Vec::new() };
        let len = g.len();
        g.mask = (0..len).map(|idx| p.contains(g.center_of(idx))).collect();
        if !g.mask.iter().any(|&m| m) {
            return Err(Error::InvalidArgument("no cell center lies inside the polytope".into()));
        }
        g.active = (0..len).map(|idx| g.mask[idx] && g.neighbours_in_mask(idx)).collect();
        Ok(g)
    }

    fn neighbours_in_mask(&self, idx: usize) -> bool {
        let [i, j, k] = self.coords(idx);
        for di in -1i64..=1 {
            for dj in -1i64..=1 {
                for dk in -1i64..=1 {
                    match self.index_checked(i as i64 + di, j as i64 + dj, k as i64 + dk) {
                        Some(n) if self.mask[n] => {}
                        _ => return false,
                    }
                }
            }
        }
        true
    }

    pub fn len(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n[1] + j) * self.n[2] + k
    }

    pub fn index_checked(&self, i: i64, j: i64, k: i64) -> Option<usize> {
        if i < 0 || j < 0 || k < 0 || i >= self.n[0] as i64 || j >= self.n[1] as i64 || k >= self.n[2] as i64 {
            None
        } else {
            Some(self.index(i as usize, j as usize, k as usize))
        }
    }

    pub fn coords(&self, idx: usize) -> [usize; 3] {
        let k = idx % self.n[2];
        let j = (idx / self.n[2]) % self.n[1];
        [idx / (self.n[1] * self.n[2]), j, k]
    }

    /// Center of cell `(i, j, k)`; indices may lie one layer outside the grid.
    pub fn center(&self, i: i64, j: i64, k: i64) -> Point {
        Point::new(
            self.bbox.lo.x1 + (i as f64 + 0.5) * self.h[0],
            self.bbox.lo.x2 + (j as f64 + 0.5) * self.h[1],
            self.bbox.lo.x3 + (k as f64 + 0.5) * self.h[2],
        )
    }

    pub fn center_of(&self, idx: usize) -> Point {
        let [i, j, k] = self.coords(idx);
        self.center(i as i64, j as i64, k as i64)
    }

    pub fn cell_volume(&self) -> f64 {
        self.h[0] * self.h[1] * self.h[2]
    }

    /// Cells whose center lies in the open polytope.
    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Mask cells whose 26 neighbours are also mask cells: the admissible
    /// support once a one-cell zero margin is imposed.
    pub fn active(&self) -> &[bool] {
        &self.active
    }

    pub fn mask_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn active_count(&self) -> usize {
        self.active.iter().filter(|&&m| m).count()
    }
}

/// Samples on the cells of a [`Grid`], zero off the mask.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn zeros(g: &Grid) -> Self {
        GridFunction { values: vec![0.0; g.len()] }
    }

    /// Evaluates `f` at the centers of mask cells.
    pub fn from_fn<F: Fn(Point) -> f64>(g: &Grid, f: F) -> Self {
        let values = (0..g.len()).map(|i| if g.mask()[i] { f(g.center_of(i)) } else { 0.0 }).collect();
        GridFunction { values }
    }

    pub fn scaled(&self, c: f64) -> Self {
        GridFunction { values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Zeroes every cell outside the active set.
    pub fn restrict_to_active(&self, g: &Grid) -> Self {
        let values = self.values.iter().zip(g.active()).map(|(&v, &a)| if a { v } else { 0.0 }).collect();
        GridFunction { values }
    }

    /// Trilinear interpolation from grid `from` onto the cell centers of `to`,
    /// treating values beyond `from` as zero.
    pub fn resample(&self, from: &Grid, to: &Grid) -> Self {
        let pos = |x: f64, lo: f64, h: f64| (x - lo) / h - 0.5;
        let values = (0..to.len())
            .map(|idx| {
                if !to.mask()[idx] {
                    return 0.0;
                }
                let x = to.center_of(idx);
                let f = [pos(x.x1, from.bbox.lo.x1, from.h[0]), pos(x.x2, from.bbox.lo.x2, from.h[1]), pos(x.x3, from.bbox.lo.x3, from.h[2])];
                let b = [f[0].floor(), f[1].floor(), f[2].floor()];
                let t = [f[0] - b[0], f[1] - b[1], f[2] - b[2]];
                let mut s = 0.0;
                for c in 0..8 {
                    let o = [(c >> 2) & 1, (c >> 1) & 1, c & 1];
                    let mut wgt = 1.0;
                    for a in 0..3 {
                        wgt *= if o[a] == 1 { t[a] } else { 1.0 - t[a] };
                    }
                    if wgt == 0.0 {
                        continue;
                    }
                    if let Some(n) = from.index_checked(b[0] as i64 + o[0] as i64, b[1] as i64 + o[1] as i64, b[2] as i64 + o[2] as i64) {
                        s += wgt * self.values[n];
                    }
                }
                s
            })
            .collect();
        GridFunction { values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_grid_layout() {
        let p = Polytope::cube(1.0).unwrap();
        let g = Grid::new(&p, 8).unwrap();
        assert_eq!(g.len(), 512);
        assert_eq!(g.mask_count(), 512);
        assert_eq!(g.active_count(), 216);
        assert_eq!(g.center(0, 0, 0), Point::new(-0.875, -0.875, -0.875));
        for idx in [0, 17, 511] {
            let [i, j, k] = g.coords(idx);
            assert_eq!(g.index(i, j, k), idx);
        }
        assert!((g.cell_volume() - 0.015625).abs() < 1e-16);
        assert!(Grid::new(&p, 2).is_err());
    }

    #[test]
    fn resample_reproduces_linear_functions_inside() {
        let p = Polytope::cube(1.0).unwrap();
        let a = Grid::new(&p, 16).unwrap();
        let b = Grid::new(&p, 24).unwrap();
        let f = GridFunction::from_fn(&a, |x| 1.0 + x.x1 - 2.0 * x.x2 + 0.5 * x.x3);
        let r = f.resample(&a, &b);
        for idx in 0..b.len() {
            let x = b.center_of(idx);
            if x.x1.abs().max(x.x2.abs()).max(x.x3.abs()) < 1.0 - a.h[0] {
                assert!((r.values[idx] - (1.0 + x.x1 - 2.0 * x.x2 + 0.5 * x.x3)).abs() < 1e-12);
            }
        }
    }
}
