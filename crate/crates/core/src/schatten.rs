//! Singular values in the weighted metric, Schatten norms, eigenvalue
//! inequalities and approximation numbers.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert_embed::weighted_norm;
use crate::numerics::{
    conjugate_exponent, general_eigenvalues, hermitian_eigen, opnorm_p_upper, svd, vec_pnorm,
    ComplexMatrix,
};
use crate::operator_algebra::BOperator;
use crate::report::{Check, VerificationReport};

const TOL: f64 = 1e-12;
/// Agreement demanded between the two singular-value paths, relative to `μ_1`.
pub const PATH_AGREEMENT: f64 = 1e-10;

/// Singular values `μ_n` (descending) and eigenvalues `λ_n` (by modulus, descending).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularSpectrum {
    pub mu: Vec<f64>,
    pub lambda: Vec<Complex64>,
}

pub fn singular_spectrum(a: &BOperator) -> Result<SingularSpectrum> {
    let mu = singular_values(a)?;
    let mut lambda = general_eigenvalues(a.matrix())?;
    lambda.sort_by(|x, y| y.norm().total_cmp(&x.norm()));
    Ok(SingularSpectrum { mu, lambda })
}

/// Eigenvectors `φ_n` of `A*A` (coordinates) with the bracket values
/// `<A*A φ_n, φ_n*> = ‖Aφ_n‖_H² / ‖φ_n‖_H²`, descending.
fn ata_brackets(a: &BOperator) -> Result<Vec<f64>> {
    let n = a.dim();
    let w = a.weights();
    let ata = a.adjoint().compose(a)?;
    let h = ata.h_matrix();
    let h = (&h + &h.adjoint()).scale_real(0.5);
    let eig = hermitian_eigen(&h, TOL)?;
    let inv = w.inv_sqrt();
    let mut out: Vec<f64> = (0..n)
        .map(|k| {
            let phi: Vec<Complex64> = (0..n).map(|i| eig.vectors[(i, k)] * inv[i]).collect();
            let aphi = a.apply(&phi);
            let r = weighted_norm(&aphi, w) / weighted_norm(&phi, w);
            r * r
        })
        .collect();
    out.sort_by(|x, y| y.total_cmp(x));
    Ok(out)
}

/// Both singular-value paths: (square roots of the `A*A` brackets, SVD of the H-matrix).
pub fn singular_value_paths(a: &BOperator) -> Result<(Vec<f64>, Vec<f64>)> {
    if a.dim() == 0 {
        return Ok((vec![], vec![]));
    }
    let via_ata: Vec<f64> = ata_brackets(a)?.into_iter().map(f64::sqrt).collect();
    let via_svd = svd(&a.h_matrix(), TOL)?.sigma;
    Ok((via_ata, via_svd))
}

/// Largest discrepancy between the two paths relative to `μ_1`.
pub fn path_discrepancy(x: &[f64], y: &[f64]) -> f64 {
    let scale = x.iter().chain(y).fold(0.0f64, |m, v| m.max(*v));
    let d = x.iter().zip(y).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    if d == 0.0 {
        0.0
    } else {
        d / scale
    }
}

/// `μ_n(A)` in the H metric, cross-checked between two independent paths.
pub fn singular_values(a: &BOperator) -> Result<Vec<f64>> {
    let (x, y) = singular_value_paths(a)?;
    let gap = path_discrepancy(&x, &y);
    if gap > PATH_AGREEMENT {
        return Err(Error::CrossCheck {
            what: "singular value paths",
            gap,
        });
    }
    Ok(y)
}

fn check_p(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter(format!("p must be >= 1, got {p}")));
    }
    Ok(())
}

/// `(Σ x_n^p)^{1/p}`, with `p = ∞` the maximum.
pub fn lp_sum(x: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return x.iter().fold(0.0f64, |m, v| m.max(*v));
    }
    let m = x.iter().fold(0.0f64, |m, v| m.max(*v));
    if m == 0.0 {
        return 0.0;
    }
    m * x.iter().map(|v| (v / m).powf(p)).sum::<f64>().powf(1.0 / p)
}

/// Schatten norm by the bracket formula and by the singular values.
pub fn schatten_norm_paths(a: &BOperator, p: f64) -> Result<(f64, f64)> {
    check_p(p)?;
    if a.dim() == 0 {
        return Ok((0.0, 0.0));
    }
    let brackets: Vec<f64> = ata_brackets(a)?.into_iter().map(|b| b.max(0.0).sqrt()).collect();
    let mu = svd(&a.h_matrix(), TOL)?.sigma;
    Ok((lp_sum(&brackets, p), lp_sum(&mu, p)))
}

pub fn schatten_norm(a: &BOperator, p: f64) -> Result<f64> {
    let (bracket, mu) = schatten_norm_paths(a, p)?;
    let gap = (bracket - mu).abs() / mu.max(f64::MIN_POSITIVE);
    if bracket != mu && gap > 1e-9 {
        return Err(Error::CrossCheck {
            what: "schatten norm paths",
            gap,
        });
    }
    Ok(mu)
}

/// `Φ(t) = t^p`, the shipped monotone family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerMap(pub f64);

impl PowerMap {
    pub fn eval(&self, t: f64) -> f64 {
        t.powf(self.0)
    }
}

/// Relative excess of `lhs` over `rhs`, clamped at zero, scaled by `rhs + 1`.
pub fn excess(lhs: f64, rhs: f64) -> f64 {
    ((lhs - rhs) / (rhs.abs() + 1.0)).max(0.0)
}

/// `Σ Φ(|λ_n|)` and `Σ Φ(μ_n)`.
pub fn weyl_sums(a: &BOperator, phi: impl Fn(f64) -> f64) -> Result<(f64, f64)> {
    let s = singular_spectrum(a)?;
    Ok((
        s.lambda.iter().map(|l| phi(l.norm())).sum(),
        s.mu.iter().map(|&m| phi(m)).sum(),
    ))
}

pub fn weyl_check(a: &BOperator, phi: PowerMap) -> Result<VerificationReport> {
    let (l, r) = weyl_sums(a, |t| phi.eval(t))?;
    let mut rep = VerificationReport::new("schatten", 0);
    rep.push(Check::assert("weyl", excess(l, r), 1e-9, 1).param("phi_power", phi.0));
    Ok(rep)
}

/// `Σ Φ(|λ_n(A₁A₂)|)` and `Σ Φ(μ_n(A₁) μ_n(A₂))`.
pub fn horn_sums(a1: &BOperator, a2: &BOperator, phi: impl Fn(f64) -> f64) -> Result<(f64, f64)> {
    let prod = a1.compose(a2)?;
    let mut lam = general_eigenvalues(prod.matrix())?;
    lam.sort_by(|x, y| y.norm().total_cmp(&x.norm()));
    let m1 = singular_values(a1)?;
    let m2 = singular_values(a2)?;
    Ok((
        lam.iter().map(|l| phi(l.norm())).sum(),
        m1.iter().zip(&m2).map(|(x, y)| phi(x * y)).sum(),
    ))
}

pub fn horn_check(a1: &BOperator, a2: &BOperator, phi: PowerMap) -> Result<VerificationReport> {
    let (l, r) = horn_sums(a1, a2, |t| phi.eval(t))?;
    let mut rep = VerificationReport::new("schatten", 0);
    rep.push(Check::assert("horn", excess(l, r), 1e-9, 1).param("phi_power", phi.0));
    Ok(rep)
}

/// `Σ|λ_n|` and `Σ μ_n`.
pub fn lalesco_sums(a: &BOperator) -> Result<(f64, f64)> {
    weyl_sums(a, |t| t)
}

pub fn lalesco_check(a: &BOperator) -> Result<VerificationReport> {
    let (l, r) = lalesco_sums(a)?;
    let mut rep = VerificationReport::new("schatten", 0);
    rep.push(Check::assert("lalesco", excess(l, r), 1e-9, 1));
    Ok(rep)
}

/// `|Σλ_n − Tr A| / (|Tr A| + 1)`.
pub fn lidskii_defect(a: &BOperator) -> Result<f64> {
    let lam = general_eigenvalues(a.matrix())?;
    let tr = a.matrix().trace();
    let s: Complex64 = lam.iter().sum();
    Ok((s - tr).norm() / (tr.norm() + 1.0))
}

pub fn lidskii_check(a: &BOperator) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("schatten", 0);
    rep.push(Check::assert("lidskii", lidskii_defect(a)?, 1e-9, 1));
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    /// Exact, from the singular values.
    H,
    /// Certified upper bounds in the `ℓ^p` coordinate model.
    BEstimate,
}

/// Best rank-`n` truncations of `m` from its SVD, `n = 0..=N`.
fn truncation_residuals(m: &ComplexMatrix) -> Result<Vec<ComplexMatrix>> {
    let n = m.rows();
    let s = svd(m, TOL)?;
    let mut out = Vec::with_capacity(n + 1);
    let mut rest = m.clone();
    out.push(rest.clone());
    for k in 0..n {
        let term = ComplexMatrix::from_fn(n, n, |i, j| s.u[(i, k)] * s.sigma[k] * s.v[(j, k)].conj());
        rest = &rest - &term;
        out.push(rest.clone());
    }
    Ok(out)
}

/// Approximation numbers `s_0, ..., s_N` (`s_N = 0`).
///
/// In the H metric `s_n = μ_{n+1}`. In the `B` model each entry is the least
/// Riesz–Thorin bound on `‖A − K‖_p` over candidate rank-`n` truncations
/// (of the H-matrix SVD and of the coordinate SVD), made nonincreasing.
pub fn approximation_numbers(a: &BOperator, metric: Metric, p_for_b: f64) -> Result<Vec<f64>> {
    let n = a.dim();
    match metric {
        Metric::H => {
            let mut s = singular_values(a)?;
            s.push(0.0);
            Ok(s)
        }
        Metric::BEstimate => {
            check_p(p_for_b)?;
            let w = a.weights();
            let from_h: Vec<ComplexMatrix> = truncation_residuals(&a.h_matrix())?
                .into_iter()
                .map(|r| r.scale_rows_cols(&w.inv_sqrt(), &w.sqrt()))
                .collect();
            let from_coord = truncation_residuals(a.matrix())?;
            let mut out = Vec::with_capacity(n + 1);
            let mut run = f64::INFINITY;
            for k in 0..=n {
                let b = opnorm_p_upper(&from_h[k], p_for_b).min(opnorm_p_upper(&from_coord[k], p_for_b));
                run = run.min(b);
                out.push(if k == n { 0.0 } else { run });
            }
            Ok(out)
        }
    }
}

/// `C_p(A) = Σ_{i≥1} s_i^p`.
pub fn pietsch_cp(a: &BOperator, p: f64, metric: Metric, p_for_b: f64) -> Result<f64> {
    check_p(p)?;
    let s = approximation_numbers(a, metric, p_for_b)?;
    Ok(s.iter().skip(1).map(|x| x.powf(p)).sum())
}

/// Upper bound on the nuclear norm `N₁(A)` of `A` acting on `ℓ^p` coordinates:
/// the least `Σ ‖f_n‖_q ‖ψ_n‖_p` over three explicit representations
/// (H-metric singular decomposition, coordinate SVD, entrywise).
pub fn nuclear_norm_upper(a: &BOperator, p: f64) -> Result<f64> {
    check_p(p)?;
    let n = a.dim();
    if n == 0 {
        return Ok(0.0);
    }
    let q = conjugate_exponent(p);
    let w = a.weights();
    let (s, inv) = (w.sqrt(), w.inv_sqrt());
    let rep_sum = |d: &crate::numerics::Svd, left: &[f64], right: &[f64]| -> f64 {
        (0..n)
            .map(|k| {
                let psi: Vec<Complex64> = (0..n).map(|i| d.u[(i, k)] * left[i]).collect();
                let f: Vec<Complex64> = (0..n).map(|i| d.v[(i, k)] * right[i]).collect();
                d.sigma[k] * vec_pnorm(&psi, p) * vec_pnorm(&f, q)
            })
            .sum()
    };
    let h = svd(&a.h_matrix(), TOL)?;
    let c = svd(a.matrix(), TOL)?;
    let ones = vec![1.0; n];
    let entrywise: f64 = a.matrix().as_slice().iter().map(|z| z.norm()).sum();
    Ok(rep_sum(&h, &inv, &s).min(rep_sum(&c, &ones, &ones)).min(entrywise))
}
