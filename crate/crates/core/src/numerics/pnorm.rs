//! Induced `p -> p` operator norm estimation.
//!
//! Uses the Boyd power iteration in the form analysed by Higham: alternate
//! between `y = M x` and the dual-vector step `x = dual_q(M^H dual_p(y))`.
//! Every iterate satisfies `‖x‖_p = 1`, so each `‖M x‖_p` is an attained
//! value and the returned maximum is always a lower bound on `‖M‖_p`.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::ComplexMatrix;
use super::svd::svd;
use crate::error::{Error, Result};
use crate::rng::seeded;

const MAX_ITERS: usize = 500;

/// Exponent of an `ℓ^p` norm; `f64::INFINITY` selects the max norm.
pub fn vec_pnorm(x: &[Complex64], p: f64) -> f64 {
    if p.is_infinite() {
        return x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    }
    if p == 1.0 {
        return x.iter().map(|z| z.norm()).sum();
    }
    if p == 2.0 {
        return x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    }
    let m = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        return 0.0;
    }
    m * x.iter().map(|z| (z.norm() / m).powf(p)).sum::<f64>().powf(1.0 / p)
}

/// Hölder conjugate exponent.
pub fn conjugate_exponent(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// The unique unit `ℓ^q` vector `d` with `<x, d> = ‖x‖_p` (1 < p < ∞).
fn dual_vector(x: &[Complex64], p: f64) -> Vec<Complex64> {
    let nrm = vec_pnorm(x, p);
    if nrm == 0.0 {
        return vec![Complex64::new(0.0, 0.0); x.len()];
    }
    x.iter()
        .map(|z| {
            let a = z.norm();
            if a == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                z / a * (a / nrm).powf(p - 1.0)
            }
        })
        .collect()
}

fn power_iteration(m: &ComplexMatrix, p: f64, start: Vec<Complex64>) -> f64 {
    let q = conjugate_exponent(p);
    let mh = m.adjoint();
    let s = vec_pnorm(&start, p);
    if s == 0.0 {
        return 0.0;
    }
    let mut x: Vec<Complex64> = start.iter().map(|z| z / s).collect();
    let mut best = 0.0f64;
    for _ in 0..MAX_ITERS {
        let y = m.mul_vec(&x);
        let gamma = vec_pnorm(&y, p);
        best = best.max(gamma);
        if gamma == 0.0 {
            break;
        }
        let z = mh.mul_vec(&dual_vector(&y, p));
        let zq = vec_pnorm(&z, q);
        let zx: f64 = z.iter().zip(&x).map(|(a, b)| (a.conj() * b).re).sum();
        if zq <= zx * (1.0 + 1e-13) {
            break;
        }
        x = dual_vector(&z, q);
    }
    best
}

/// Lower-bound estimate of the induced `p -> p` norm of `m`.
///
/// `p = 1` and `p = ∞` use the exact column/row-sum formulas and `p = 2`
/// the largest singular value; other exponents run `restarts` power
/// iterations from seeded random starts (plus the all-ones start).
pub fn opnorm_p_estimate(m: &ComplexMatrix, p: f64, restarts: usize, seed: u64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!("p must be >= 1, got {p}")));
    }
    if restarts == 0 {
        return Err(Error::InvalidParameter("restarts must be at least 1".into()));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite("opnorm input".into()));
    }
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0.0);
    }
    if p == 1.0 {
        return Ok(m.norm_one());
    }
    if p.is_infinite() {
        return Ok(m.norm_inf());
    }
    if p == 2.0 {
        return Ok(svd(m, 1e-12)?.sigma[0]);
    }
    let n = m.cols();
    let mut rng = seeded(seed);
    let mut best = power_iteration(m, p, vec![Complex64::new(1.0, 0.0); n]);
    // the column of largest p-norm is a cheap, often excellent start
    let (jmax, _) = (0..n)
        .map(|j| (j, vec_pnorm(&m.column(j), p)))
        .fold((0, -1.0), |acc, c| if c.1 > acc.1 { c } else { acc });
    let mut e = vec![Complex64::new(0.0, 0.0); n];
    e[jmax] = Complex64::new(1.0, 0.0);
    best = best.max(power_iteration(m, p, e));
    for _ in 0..restarts {
        let start: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        best = best.max(power_iteration(m, p, start));
    }
    Ok(best)
}

/// Riesz–Thorin upper bound `‖M‖_p <= ‖M‖_1^{1/p} ‖M‖_∞^{1-1/p}`.
pub fn opnorm_p_upper(m: &ComplexMatrix, p: f64) -> f64 {
    if p.is_infinite() {
        return m.norm_inf();
    }
    let theta = 1.0 / p;
    m.norm_one().powf(theta) * m.norm_inf().powf(1.0 - theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{random_complex_matrix, random_complex_vector};

    #[test]
    fn identity_is_isometry() {
        let i = ComplexMatrix::identity(4);
        for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            let e = opnorm_p_estimate(&i, p, 3, 1).unwrap();
            assert!((e - 1.0).abs() < 1e-12, "p={p}: {e}");
        }
    }

    #[test]
    fn diagonal_spectral() {
        let d = ComplexMatrix::diag_real(&[2.0, 1.0]);
        assert!((opnorm_p_estimate(&d, 2.0, 1, 0).unwrap() - 2.0).abs() < 1e-14);
        assert!((opnorm_p_estimate(&d, 3.0, 2, 0).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn random_probe_lower_bound() {
        let mut rng = seeded(99);
        let m = random_complex_matrix(&mut rng, 5, 5);
        let est = opnorm_p_estimate(&m, 3.0, 8, 17).unwrap();
        for _ in 0..1000 {
            let x = random_complex_vector(&mut rng, 5);
            let ratio = vec_pnorm(&m.mul_vec(&x), 3.0) / vec_pnorm(&x, 3.0);
            assert!(est >= ratio * (1.0 - 1e-12), "{est} < {ratio}");
        }
        assert!(est <= opnorm_p_upper(&m, 3.0) * (1.0 + 1e-12));
    }

    #[test]
    fn deterministic_for_seed() {
        let mut rng = seeded(4);
        let m = random_complex_matrix(&mut rng, 6, 6);
        let a = opnorm_p_estimate(&m, 1.7, 4, 123).unwrap();
        let b = opnorm_p_estimate(&m, 1.7, 4, 123).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn rejects_bad_inputs() {
        let m = ComplexMatrix::identity(2);
        assert!(opnorm_p_estimate(&m, 0.5, 1, 0).is_err());
        assert!(opnorm_p_estimate(&m, 2.0, 0, 0).is_err());
    }
}
