//! Discrete horizontal Dirichlet energy.
//!
//! At every cell center `c` (including one ghost layer around the grid) and
//! for each frame field `X ∈ {X1, X2}` and sign `±`, the difference quotient
//! `(u(c ± sX(c)) − u(c)) / s` is formed, with the step `s` chosen so the
//! target moves at most one cell along each axis and `u` at the target
//! obtained by bilinear interpolation in the plane spanned by `X(c)`.
//! Values off the support are zero. The energy is
//! `Σ ½ · vol · difference²` over all such terms, which is exact for affine
//! `u` and reproduces `∫ |X1 u|² + |X2 u|²` under refinement.

use super::grid::Grid;

/// One difference term: `coef · (Σ w_k u[t_k] − u[c])²`.
#[derive(Clone, Copy, Debug)]
pub struct Stencil {
    pub source: Option<usize>,
    pub targets: [(usize, f64); 4],
    pub n_targets: usize,
    pub coef: f64,
}

/// Calls `f` for every difference term touching a cell with `keep == true`.
pub fn for_each_stencil<K: Fn(usize) -> bool, F: FnMut(&Stencil)>(g: &Grid, keep: K, mut f: F) {
    let vol = g.cell_volume();
    let n = g.n;
    for i in -1..=n[0] as i64 {
        for j in -1..=n[1] as i64 {
            for k in -1..=n[2] as i64 {
                let x = g.center(i, j, k);
                let source = g.index_checked(i, j, k).filter(|&s| keep(s));
                // X1 = (1, 0, x2/2) moves in (i, k); X2 = (0, 1, −x1/2) moves in (j, k)
                for (axis, slope) in [(0usize, x.x2 / 2.0), (1usize, -x.x1 / 2.0)] {
                    let ha = g.h[axis];
                    let s = if slope.abs() * ha <= g.h[2] { ha } else { g.h[2] / slope.abs() };
                    let da = s / ha;
                    let dk = slope * s / g.h[2];
                    for sign in [1.0, -1.0] {
                        let fa = sign * da;
                        let fk = sign * dk;
                        let mut st = Stencil { source, targets: [(0, 0.0); 4], n_targets: 0, coef: 0.5 * vol / (s * s) };
                        let a0 = fa.floor();
                        let k0 = fk.floor();
                        let (ta, tk) = (fa - a0, fk - k0);
                        for (oa, wa) in [(0i64, 1.0 - ta), (1, ta)] {
                            if wa == 0.0 {
                                continue;
                            }
                            for (ok, wk) in [(0i64, 1.0 - tk), (1, tk)] {
                                if wk == 0.0 {
                                    continue;
                                }
                                let (ii, jj) = if axis == 0 {
                                    (i + a0 as i64 + oa, j)
                                } else {
                                    (i, j + a0 as i64 + oa)
                                };
                                let kk = k + k0 as i64 + ok;
                                if let Some(t) = g.index_checked(ii, jj, kk) {
                                    if keep(t) {
                                        st.targets[st.n_targets] = (t, wa * wk);
                                        st.n_targets += 1;
                                    }
                                }
                            }
                        }
                        if st.source.is_some() || st.n_targets > 0 {
                            f(&st);
                        }
                    }
                }
            }
        }
    }
}

/// `Σ coef · difference²` for a function given on all cells (zero off `mask`).
pub fn energy(g: &Grid, values: &[f64]) -> f64 {
    let mut e = 0.0;
    for_each_stencil(g, |c| values[c] != 0.0, |st| {
        let mut d = st.targets[..st.n_targets].iter().map(|&(t, w)| w * values[t]).sum::<f64>();
        if let Some(s) = st.source {
            d -= values[s];
        }
        e += st.coef * d * d;
    });
    e
}

/// Symmetric sparse matrix in compressed-row form.
#[derive(Clone, Debug)]
pub struct CsrMatrix {
    pub n: usize,
    pub indptr: Vec<usize>,
    pub indices: Vec<u32>,
    pub values: Vec<f64>,
    diag_pos: Vec<usize>,
}

impl CsrMatrix {
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for r in 0..self.n {
            let mut s = 0.0;
            for p in self.indptr[r]..self.indptr[r + 1] {
                s += self.values[p] * x[self.indices[p] as usize];
            }
            y[r] = s;
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.diag_pos.iter().map(|&p| self.values[p]).collect()
    }

    /// Symmetric Gauss–Seidel preconditioner `(D+L) D⁻¹ (D+U)` applied as an inverse.
    pub fn ssor_solve(&self, r: &[f64], z: &mut [f64]) {
        let n = self.n;
        // forward: (D + L) y = r
        for i in 0..n {
            let mut s = r[i];
            for p in self.indptr[i]..self.diag_pos[i] {
                s -= self.values[p] * z[self.indices[p] as usize];
            }
            z[i] = s / self.values[self.diag_pos[i]];
        }
        // backward: (D + U) z = D y
        for i in (0..n).rev() {
            let d = self.values[self.diag_pos[i]];
            let mut s = z[i] * d;
            for p in (self.diag_pos[i] + 1)..self.indptr[i + 1] {
                s -= self.values[p] * z[self.indices[p] as usize];
            }
            z[i] = s / d;
        }
    }
}

/// The energy restricted to functions supported on `support`, as a matrix
/// over the support cells in increasing cell order.
#[derive(Clone, Debug)]
pub struct DirichletForm {
    /// Grid index of each unknown.
    pub cells: Vec<usize>,
    pub matrix: CsrMatrix,
}

impl DirichletForm {
    pub fn new(g: &Grid, support: &[bool]) -> Self {
        let mut unknown = vec![u32::MAX; g.len()];
        let mut cells = Vec::new();
        for (c, &s) in support.iter().enumerate() {
            if s {
                unknown[c] = cells.len() as u32;
                cells.push(c);
            }
        }
        let n = cells.len();
        let mut rows: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
        let mut add = |r: u32, c: u32, v: f64| {
            let row = &mut rows[r as usize];
            match row.iter_mut().find(|e| e.0 == c) {
                Some(e) => e.1 += v,
                None => row.push((c, v)),
            }
        };
        for_each_stencil(g, |c| support[c], |st| {
            let mut gvec: [(u32, f64); 5] = [(0, 0.0); 5];
            let mut m = 0;
            if let Some(s) = st.source {
                gvec[m] = (unknown[s], -1.0);
                m += 1;
            }
            for &(t, w) in &st.targets[..st.n_targets] {
                gvec[m] = (unknown[t], w);
                m += 1;
            }
            for a in 0..m {
                for b in 0..m {
                    add(gvec[a].0, gvec[b].0, st.coef * gvec[a].1 * gvec[b].1);
                }
            }
        });
        let mut indptr = Vec::with_capacity(n + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        let mut diag_pos = Vec::with_capacity(n);
        indptr.push(0);
        for (r, mut row) in rows.into_iter().enumerate() {
            row.sort_by_key(|e| e.0);
            for (c, v) in row {
                if c as usize == r {
                    diag_pos.push(indices.len());
                }
                indices.push(c);
                values.push(v);
            }
            indptr.push(indices.len());
        }
        DirichletForm { cells, matrix: CsrMatrix { n, indptr, indices, values, diag_pos } }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn gather(&self, values: &[f64]) -> Vec<f64> {
        self.cells.iter().map(|&c| values[c]).collect()
    }

    pub fn scatter(&self, x: &[f64], len: usize) -> Vec<f64> {
        let mut v = vec![0.0; len];
        for (&c, &xi) in self.cells.iter().zip(x) {
            v[c] = xi;
        }
        v
    }
}
