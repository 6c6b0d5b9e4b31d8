//! One-sided (Hestenes) Jacobi singular value decomposition.

use num_complex::Complex64;

use super::eigen::Rotation;
use super::matrix::{vec_dot, vec_norm, ComplexMatrix};
use crate::error::{Error, Result};

/// Thin SVD `M = U diag(sigma) V^H` with `k = min(rows, cols)` columns.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.u
            .scale_rows_cols(&vec![1.0; self.u.rows()], &self.sigma)
            .matmul(&self.v.adjoint())
    }
}

/// Singular value decomposition, singular values descending.
pub fn svd(m: &ComplexMatrix, tol: f64) -> Result<Svd> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol must be positive, got {tol}")));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite("svd input".into()));
    }
    if m.rows() < m.cols() {
        let t = svd_tall(&m.adjoint(), tol)?;
        return Ok(Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        });
    }
    svd_tall(m, tol)
}

fn svd_tall(m: &ComplexMatrix, tol: f64) -> Result<Svd> {
    let (rows, n) = (m.rows(), m.cols());
    let mut w = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let norm = m.frobenius_norm();
    let tiny = 1e-300_f64.max(1e-30 * norm * norm);
    let max_sweeps = (100 * n * n).max(60);

    let mut converged = n < 2;
    for _ in 0..max_sweeps {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let cp = w.column(p);
                let cq = w.column(q);
                let alpha = cp.iter().map(|z| z.norm_sqr()).sum::<f64>();
                let beta = cq.iter().map(|z| z.norm_sqr()).sum::<f64>();
                let gamma = vec_dot(&cp, &cq);
                let g = gamma.norm();
                if g <= tiny || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let rot = Rotation::for_block(alpha, beta, gamma);
                rot.apply_right(&mut w, p, q);
                rot.apply_right(&mut v, p, q);
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            method: "one-sided jacobi svd",
            iterations: max_sweeps,
            residual: norm,
        });
    }

    let mut sigma: Vec<f64> = (0..n).map(|j| vec_norm(&w.column(j))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));
    sigma = order.iter().map(|&i| sigma[i]).collect();
    let smax = sigma.first().copied().unwrap_or(0.0);

    let mut u = ComplexMatrix::zeros(rows, n);
    let mut vs = ComplexMatrix::zeros(n, n);
    let mut filled = vec![false; n];
    for (k, &src) in order.iter().enumerate() {
        vs.set_column(k, &v.column(src));
        if sigma[k] > 1e-13 * smax && sigma[k] > 0.0 {
            let col: Vec<Complex64> = w.column(src).iter().map(|z| z / sigma[k]).collect();
            u.set_column(k, &col);
            filled[k] = true;
        }
    }
    complete_orthonormal(&mut u, &filled);

    let out = Svd { u, sigma, v: vs };
    let residual = (&out.reconstruct() - m).frobenius_norm();
    if residual > 10.0 * tol * norm && residual > 1e3 * f64::EPSILON * norm {
        return Err(Error::NoConvergence {
            method: "one-sided jacobi svd",
            iterations: max_sweeps,
            residual,
        });
    }
    Ok(out)
}

/// Fills the columns of `u` not marked in `filled` with unit vectors orthogonal
/// to every other column, re-orthogonalising filled columns first.
pub(crate) fn complete_orthonormal(u: &mut ComplexMatrix, filled: &[bool]) {
    let rows = u.rows();
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for (k, &f) in filled.iter().enumerate() {
        if f {
            let mut c = u.column(k);
            gram_schmidt_against(&mut c, &basis);
            let nrm = vec_norm(&c);
            let c: Vec<Complex64> = c.iter().map(|z| z / nrm).collect();
            u.set_column(k, &c);
            basis.push(c);
        }
    }
    let mut candidate = 0;
    for (k, &f) in filled.iter().enumerate() {
        if f {
            continue;
        }
        loop {
            assert!(candidate < rows, "cannot complete orthonormal set");
            let mut e = vec![Complex64::new(0.0, 0.0); rows];
            e[candidate] = Complex64::new(1.0, 0.0);
            candidate += 1;
            gram_schmidt_against(&mut e, &basis);
            gram_schmidt_against(&mut e, &basis);
            let nrm = vec_norm(&e);
            if nrm > 1e-8 {
                let e: Vec<Complex64> = e.iter().map(|z| z / nrm).collect();
                u.set_column(k, &e);
                basis.push(e);
                break;
            }
        }
    }
}

fn gram_schmidt_against(x: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for b in basis {
        let proj = vec_dot(b, x);
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi -= bi * proj;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::eigen::hermitian_eigen;
    use crate::numerics::matrix::orthonormality_error;
    use crate::rng::{random_complex_matrix, seeded};

    #[test]
    fn zero_matrix() {
        let s = svd(&ComplexMatrix::zeros(3, 2), 1e-12).unwrap();
        assert_eq!(s.sigma, vec![0.0, 0.0]);
        assert!(orthonormality_error(&s.u) < 1e-14);
    }

    #[test]
    fn diagonal() {
        let s = svd(&ComplexMatrix::diag_real(&[1.0, 3.0]), 1e-12).unwrap();
        assert_eq!(s.sigma, vec![3.0, 1.0]);
    }

    #[test]
    fn random_rectangular_matches_gram_eigenvalues() {
        let mut rng = seeded(3);
        for _ in 0..10 {
            let m = random_complex_matrix(&mut rng, 6, 4);
            let s = svd(&m, 1e-12).unwrap();
            let gram = m.adjoint().matmul(&m);
            let e = hermitian_eigen(&gram, 1e-12).unwrap();
            for (sv, ev) in s.sigma.iter().zip(&e.values) {
                assert!((sv - ev.max(0.0).sqrt()).abs() < 1e-12 * s.sigma[0]);
            }
            assert!((&s.reconstruct() - &m).frobenius_norm() < 1e-13 * m.frobenius_norm());
            assert!(orthonormality_error(&s.u) < 1e-13);
            assert!(orthonormality_error(&s.v) < 1e-13);

            let wide = svd(&m.adjoint(), 1e-12).unwrap();
            for (a, b) in s.sigma.iter().zip(&wide.sigma) {
                assert!((a - b).abs() < 1e-12 * s.sigma[0]);
            }
        }
    }

    #[test]
    fn rank_deficient_completes_basis() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0], &[0.0, 0.0]]).unwrap();
        let s = svd(&m, 1e-12).unwrap();
        assert!((s.sigma[0] - 2.0).abs() < 1e-14);
        assert!(s.sigma[1].abs() < 1e-14);
        assert!(orthonormality_error(&s.u) < 1e-14);
    }
}
