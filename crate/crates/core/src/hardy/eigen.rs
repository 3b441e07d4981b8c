//! Smallest eigenpair of `A x = λ B x` with `A` sparse SPD and `B` diagonal.
//!
//! Single-vector LOBPCG: each step applies an approximate inverse of `A`
//! (a few SSOR-preconditioned conjugate-gradient iterations) to the
//! residual and performs Rayleigh–Ritz on `span{x, w, p}`. The Ritz value
//! never increases from one step to the next.

use nalgebra::{DMatrix, SymmetricEigen};

use super::form::CsrMatrix;

#[derive(Clone, Copy, Debug)]
pub struct EigenOptions {
    pub max_iters: usize,
    /// Stop once successive Ritz values differ by less than this, relatively.
    pub rel_tol: f64,
    /// Conjugate-gradient iterations inside the preconditioner.
    pub inner_iters: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions { max_iters: 500, rel_tol: 1e-8, inner_iters: 12 }
    }
}

#[derive(Clone, Debug)]
pub struct EigenResult {
    pub value: f64,
    pub vector: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Ritz value after each step, starting with the initial quotient.
    pub history: Vec<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn bdot(b: &[f64], x: &[f64], y: &[f64]) -> f64 {
    b.iter().zip(x).zip(y).map(|((w, p), q)| w * p * q).sum()
}

fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Approximate `A⁻¹ r` by preconditioned CG from zero.
fn inner_solve(a: &CsrMatrix, r: &[f64], iters: usize, z: &mut [f64]) {
    let n = r.len();
    z.iter_mut().for_each(|v| *v = 0.0);
    let mut res = r.to_vec();
    let mut s = vec![0.0; n];
    a.ssor_solve(&res, &mut s);
    let mut d = s.clone();
    let mut rs = dot(&res, &s);
    let mut ad = vec![0.0; n];
    let r0 = rs.abs();
    for _ in 0..iters {
        if rs.abs() <= 1e-30 * r0 || rs == 0.0 {
            break;
        }
        a.matvec(&d, &mut ad);
        let dad = dot(&d, &ad);
        if dad <= 0.0 {
            break;
        }
        let alpha = rs / dad;
        axpy(alpha, &d, z);
        axpy(-alpha, &ad, &mut res);
        a.ssor_solve(&res, &mut s);
        let rs_new = dot(&res, &s);
        let beta = rs_new / rs;
        rs = rs_new;
        for (di, si) in d.iter_mut().zip(&s) {
            *di = si + beta * *di;
        }
    }
}

pub fn lobpcg(a: &CsrMatrix, b: &[f64], x0: &[f64], opts: EigenOptions) -> EigenResult {
    let n = a.n;
    let mut x = x0.to_vec();
    let nx = bdot(b, &x, &x).sqrt();
    x.iter_mut().for_each(|v| *v /= nx);
    let mut ax = vec![0.0; n];
    a.matvec(&x, &mut ax);
    let mut lambda = dot(&x, &ax);
    let mut history = vec![lambda];
    let mut p: Option<(Vec<f64>, Vec<f64>)> = None;
    let mut r = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut converged = false;
    let mut iterations = 0;
    for it in 1..=opts.max_iters {
        iterations = it;
        for i in 0..n {
            r[i] = ax[i] - lambda * b[i] * x[i];
        }
        inner_solve(a, &r, opts.inner_iters, &mut w);
        let mut aw = vec![0.0; n];
        a.matvec(&w, &mut aw);
        // B-orthonormal basis of span{x, w, p}, with A-images carried along
        let mut basis: Vec<(Vec<f64>, Vec<f64>)> = vec![(x.clone(), ax.clone())];
        let mut cands = vec![(w.clone(), aw)];
        if let Some(pp) = p.take() {
            cands.push(pp);
        }
        for (mut v, mut av) in cands {
            let norm0 = bdot(b, &v, &v).sqrt();
            if !(norm0 > 0.0) {
                continue;
            }
            for _ in 0..2 {
                for (q, aq) in &basis {
                    let c = bdot(b, q, &v);
                    axpy(-c, q, &mut v);
                    axpy(-c, aq, &mut av);
                }
            }
            let norm = bdot(b, &v, &v).sqrt();
            if norm > 1e-10 * norm0 {
                v.iter_mut().for_each(|t| *t /= norm);
                av.iter_mut().for_each(|t| *t /= norm);
                basis.push((v, av));
            }
        }
        let k = basis.len();
        let mut gram = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let v = 0.5 * (dot(&basis[i].0, &basis[j].1) + dot(&basis[j].0, &basis[i].1));
                gram[(i, j)] = v;
                gram[(j, i)] = v;
            }
        }
        let eig = SymmetricEigen::new(gram);
        let (imin, _) = eig.eigenvalues.iter().enumerate().fold((0, f64::INFINITY), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc });
        let y: Vec<f64> = (0..k).map(|i| eig.eigenvectors[(i, imin)]).collect();
        let mut xn = vec![0.0; n];
        let mut axn = vec![0.0; n];
        let mut pn = vec![0.0; n];
        let mut apn = vec![0.0; n];
        for (i, (v, av)) in basis.iter().enumerate() {
            axpy(y[i], v, &mut xn);
            axpy(y[i], av, &mut axn);
            if i > 0 {
                axpy(y[i], v, &mut pn);
                axpy(y[i], av, &mut apn);
            }
        }
        let nn = bdot(b, &xn, &xn).sqrt();
        xn.iter_mut().for_each(|t| *t /= nn);
        axn.iter_mut().for_each(|t| *t /= nn);
        if it % 20 == 0 {
            a.matvec(&xn, &mut axn);
        }
        x = xn;
        ax = axn;
        p = Some((pn, apn));
        let new_lambda = dot(&x, &ax);
        let change = (lambda - new_lambda).abs();
        lambda = new_lambda;
        history.push(lambda);
        if change <= opts.rel_tol * lambda.abs() {
            converged = true;
            break;
        }
    }
    EigenResult { value: lambda, vector: x, iterations, converged, history }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::form::DirichletForm;
    use crate::hardy::grid::Grid;
    use crate::polytope::Polytope;

    /// Dense generalized eigenproblem via `B^{-1/2} A B^{-1/2}`.
    fn dense_smallest(a: &CsrMatrix, b: &[f64]) -> f64 {
        let n = a.n;
        let mut m = DMatrix::<f64>::zeros(n, n);
        for r in 0..n {
            for q in a.indptr[r]..a.indptr[r + 1] {
                let c = a.indices[q] as usize;
                m[(r, c)] = a.values[q] / (b[r] * b[c]).sqrt();
            }
        }
        SymmetricEigen::new(m).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn matches_dense_solver_on_small_grid() {
        let p = Polytope::cube(1.0).unwrap();
        let g = Grid::new(&p, 9).unwrap();
        let form = DirichletForm::new(&g, g.active());
        let b: Vec<f64> = form.cells.iter().map(|&c| {
            let x = g.center_of(c);
            1.0 + x.x1 * x.x1 + 0.5 * x.x3
        }).collect();
        let x0 = vec![1.0; form.len()];
        let res = lobpcg(&form.matrix, &b, &x0, EigenOptions { max_iters: 300, rel_tol: 1e-13, inner_iters: 6 });
        let want = dense_smallest(&form.matrix, &b);
        assert!((res.value - want).abs() <= 1e-8 * want, "{} {}", res.value, want);
        assert!(res.history.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
    }
}
