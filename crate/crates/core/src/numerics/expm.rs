use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Matrix exponential by scaling and squaring around a truncated Taylor series.
///
/// The argument is scaled by `2^-s` until its 1-norm is at most 1/2, where
/// 24 Taylor terms leave a truncation error far below rounding.
pub fn matrix_exp(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "matrix_exp needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite("matrix_exp input".into()));
    }
    let n = m.rows();
    let norm = m.norm_one();
    let mut squarings = 0u32;
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
    }
    if squarings > 1000 {
        return Err(Error::Overflow(format!("matrix_exp argument norm {norm:.3e}")));
    }
    let a = m.scale_real(0.5f64.powi(squarings as i32));

    let mut result = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=24 {
        term = term.matmul(&a).scale(Complex64::new(1.0 / k as f64, 0.0));
        result = &result + &term;
        if term.max_abs() <= f64::EPSILON * 1e-3 * result.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
        if !result.is_finite() {
            return Err(Error::Overflow(format!(
                "matrix_exp overflowed during squaring (norm {norm:.3e})"
            )));
        }
    }
    Ok(result)
}
