//! Cyclic Jacobi eigensolver for Hermitian matrices.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Spectral decomposition of a Hermitian matrix, eigenvalues descending.
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl EigenResult {
    /// `V diag(values) V^H`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let scaled = self.vectors.scale_rows_cols(&vec![1.0; n], &self.values);
        scaled.matmul(&self.vectors.adjoint())
    }
}

/// Unitary 2x2 rotation `[[c, s], [-s*conj(e), c*conj(e)]]` that diagonalises
/// the Hermitian block `[[app, apq], [conj(apq), aqq]]`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Rotation {
    pub c: f64,
    pub s: f64,
    pub phase: Complex64,
}

impl Rotation {
    pub(crate) fn for_block(app: f64, aqq: f64, apq: Complex64) -> Self {
        let g = apq.norm();
        let phase = apq / g;
        let tau = (aqq - app) / (2.0 * g);
        let t = if tau >= 0.0 {
            1.0 / (tau + (1.0 + tau * tau).sqrt())
        } else {
            -1.0 / (-tau + (1.0 + tau * tau).sqrt())
        };
        let c = 1.0 / (1.0 + t * t).sqrt();
        Rotation { c, s: t * c, phase }
    }

    /// Columns `p, q` of `m` are replaced by `[m_p, m_q] * V`.
    pub(crate) fn apply_right(&self, m: &mut ComplexMatrix, p: usize, q: usize) {
        let ec = self.phase.conj();
        for i in 0..m.rows() {
            let xp = m[(i, p)];
            let xq = m[(i, q)];
            m[(i, p)] = xp * self.c - xq * ec * self.s;
            m[(i, q)] = xp * self.s + xq * ec * self.c;
        }
    }

    /// Rows `p, q` of `m` are replaced by `V^H * [m_p; m_q]`.
    fn apply_left_adjoint(&self, m: &mut ComplexMatrix, p: usize, q: usize) {
        let e = self.phase;
        for j in 0..m.cols() {
            let xp = m[(p, j)];
            let xq = m[(q, j)];
            m[(p, j)] = xp * self.c - xq * e * self.s;
            m[(q, j)] = xp * self.s + xq * e * self.c;
        }
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
///
/// `tol` is relative to `‖M‖_F`: it bounds the admissible Hermitian defect of
/// the input and the reconstruction residual of the output.
pub fn hermitian_eigen(m: &ComplexMatrix, tol: f64) -> Result<EigenResult> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "hermitian_eigen needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol must be positive, got {tol}")));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite("hermitian_eigen input".into()));
    }
    let n = m.rows();
    let norm = m.frobenius_norm();
    let deviation = m.hermitian_part_error();
    if deviation > tol * norm.max(1.0) {
        return Err(Error::NotHermitian {
            deviation,
            tol: tol * norm.max(1.0),
        });
    }
    if n == 0 {
        return Ok(EigenResult {
            values: vec![],
            vectors: ComplexMatrix::zeros(0, 0),
        });
    }

    // Work on the exactly Hermitian part.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let tiny = 1e-300_f64.max(1e-18 * norm);
    let max_sweeps = (100 * n * n).max(50);

    let mut converged = false;
    for _sweep in 0..max_sweeps {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                if g <= tiny || g <= 0.5 * f64::EPSILON * (app.abs() * aqq.abs()).sqrt() {
                    continue;
                }
                rotated = true;
                let rot = Rotation::for_block(app, aqq, apq);
                rot.apply_right(&mut a, p, q);
                rot.apply_left_adjoint(&mut a, p, q);
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                rot.apply_right(&mut v, p, q);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            method: "jacobi",
            iterations: max_sweeps,
            residual: off_diagonal_norm(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    let result = EigenResult { values, vectors };

    let residual = (&result.reconstruct() - m).frobenius_norm();
    if residual > 10.0 * tol * norm.max(f64::MIN_POSITIVE) && residual > 1e3 * f64::EPSILON * norm {
        return Err(Error::NoConvergence {
            method: "jacobi",
            iterations: max_sweeps,
            residual,
        });
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::orthonormality_error;
    use crate::rng::{random_hermitian, seeded};

    #[test]
    fn identity_has_unit_spectrum() {
        let r = hermitian_eigen(&ComplexMatrix::identity(3), 1e-12).unwrap();
        assert_eq!(r.values, vec![1.0, 1.0, 1.0]);
        assert!(orthonormality_error(&r.vectors) < 1e-15);
    }

    #[test]
    fn diagonal_values_sorted() {
        let r = hermitian_eigen(&ComplexMatrix::diag_real(&[-1.0, 2.0]), 1e-12).unwrap();
        assert_eq!(r.values, vec![2.0, -1.0]);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        let mut rng = seeded(7);
        for _ in 0..20 {
            let m = random_hermitian(&mut rng, 8);
            let r = hermitian_eigen(&m, 1e-12).unwrap();
            let res = (&r.reconstruct() - &m).frobenius_norm();
            assert!(res <= 1e-12 * m.frobenius_norm(), "residual {res}");
            assert!(orthonormality_error(&r.vectors) < 1e-13);
            for k in 0..8 {
                let v = r.vectors.column(k);
                let mv = m.mul_vec(&v);
                let err: f64 = mv
                    .iter()
                    .zip(&v)
                    .map(|(a, b)| (a - b * r.values[k]).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(err < 1e-12 * m.frobenius_norm());
            }
            assert!(r.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn rejects_non_hermitian_and_non_square() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(hermitian_eigen(&m, 1e-10), Err(Error::NotHermitian { .. })));
        assert!(matches!(
            hermitian_eigen(&ComplexMatrix::zeros(2, 3), 1e-10),
            Err(Error::Shape(_))
        ));
    }
}
