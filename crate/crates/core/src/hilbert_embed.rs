//! The weighted Hilbert space built on top of a Schauder basis.
//!
//! `H` is never materialised as a function space: an element is represented
//! by its basis coefficients and the whole geometry is the diagonal weight
//! vector `t_n`.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use crate::rng::{random_complex_vector, seeded};
use crate::sbasis::{coefficients, lp_norm, reconstruct, GridFunction, SchauderBasis};

/// Positive diagonal of the Gram matrix, `t_1, ..., t_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Weights(Vec<f64>);

impl Weights {
    /// `t_n = 2^{-n}`, `n = 1..=N`.
    pub fn dyadic(n: usize) -> Self {
        Self((1..=n).map(|k| 0.5f64.powi(k as i32)).collect())
    }

    /// All ones: the Euclidean coordinate metric.
    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    pub fn custom(t: Vec<f64>) -> Result<Self> {
        if t.is_empty() || t.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidParameter("weights must be positive and finite".into()));
        }
        Ok(Self(t))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn sqrt(&self) -> Vec<f64> {
        self.0.iter().map(|w| w.sqrt()).collect()
    }

    pub fn inv_sqrt(&self) -> Vec<f64> {
        self.0.iter().map(|w| 1.0 / w.sqrt()).collect()
    }

    pub fn recip(&self) -> Vec<f64> {
        self.0.iter().map(|w| 1.0 / w).collect()
    }

    /// `W = diag(t)`.
    pub fn matrix(&self) -> ComplexMatrix {
        ComplexMatrix::diag_real(&self.0)
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Weight mass dropped by truncation when the schedule is dyadic (`2^{-N}`).
    pub fn dyadic_tail(&self) -> f64 {
        0.5f64.powi(self.0.len() as i32)
    }

    pub fn is_dyadic(&self) -> bool {
        *self == Self::dyadic(self.len())
    }
}

/// `Σ t_n c_n conj(d_n)`.
pub fn weighted_inner(c: &[Complex64], d: &[Complex64], w: &Weights) -> Complex64 {
    c.iter()
        .zip(d)
        .zip(w.as_slice())
        .map(|((a, b), t)| a * b.conj() * *t)
        .sum()
}

pub fn weighted_norm(c: &[Complex64], w: &Weights) -> f64 {
    c.iter()
        .zip(w.as_slice())
        .map(|(a, t)| a.norm_sqr() * t)
        .sum::<f64>()
        .sqrt()
}

/// A Schauder basis truncated at `N` members with its weight schedule.
#[derive(Debug, Clone)]
pub struct EmbeddingSpace {
    basis: SchauderBasis,
    weights: Weights,
}

impl EmbeddingSpace {
    /// Dyadic weights `t_n = 2^{-n}`.
    pub fn new(basis: SchauderBasis) -> Self {
        let weights = Weights::dyadic(basis.len());
        Self { basis, weights }
    }

    pub fn with_weights(basis: SchauderBasis, weights: Weights) -> Result<Self> {
        if weights.len() != basis.len() {
            return Err(Error::Shape(format!(
                "{} weights for {} basis members",
                weights.len(),
                basis.len()
            )));
        }
        Ok(Self { basis, weights })
    }

    pub fn basis(&self) -> &SchauderBasis {
        &self.basis
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn p(&self) -> f64 {
        self.basis.p()
    }

    pub fn coefficients(&self, u: &GridFunction) -> Result<Vec<Complex64>> {
        coefficients(u, &self.basis)
    }

    pub fn reconstruct(&self, c: &[Complex64]) -> Result<GridFunction> {
        reconstruct(c, &self.basis)
    }

    pub fn b_norm(&self, u: &GridFunction) -> Result<f64> {
        lp_norm(u, self.basis.p())
    }
}

pub fn h_inner(u: &GridFunction, v: &GridFunction, space: &EmbeddingSpace) -> Result<Complex64> {
    let cu = space.coefficients(u)?;
    let cv = space.coefficients(v)?;
    Ok(weighted_inner(&cu, &cv, space.weights()))
}

pub fn h_norm(u: &GridFunction, space: &EmbeddingSpace) -> Result<f64> {
    Ok(weighted_norm(&space.coefficients(u)?, space.weights()))
}

/// `G_mk = (E_m, E_k)_H` evaluated through quadrature.
pub fn gram_matrix(space: &EmbeddingSpace) -> Result<ComplexMatrix> {
    let coeffs: Vec<Vec<Complex64>> = space
        .basis()
        .members()
        .iter()
        .map(|e| space.coefficients(e))
        .collect::<Result<_>>()?;
    let n = space.dim();
    Ok(ComplexMatrix::from_fn(n, n, |m, k| {
        weighted_inner(&coeffs[m], &coeffs[k], space.weights())
    }))
}

/// The linear functional `v ↦ (v, u)_H`.
#[derive(Debug, Clone)]
pub struct DualFunctional {
    representer: GridFunction,
    coeffs: Vec<Complex64>,
    weights: Weights,
}

impl DualFunctional {
    pub fn representer(&self) -> &GridFunction {
        &self.representer
    }

    pub fn representer_coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn evaluate_coefficients(&self, v: &[Complex64]) -> Result<Complex64> {
        if v.len() != self.coeffs.len() {
            return Err(Error::Shape(format!(
                "{} coefficients for a functional on {}",
                v.len(),
                self.coeffs.len()
            )));
        }
        Ok(weighted_inner(v, &self.coeffs, &self.weights))
    }

    /// Functional of the sum of representers.
    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            representer: self.representer.add(&other.representer)?,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            weights: self.weights.clone(),
        })
    }
}

pub fn jb_apply(u: &GridFunction, space: &EmbeddingSpace) -> Result<DualFunctional> {
    Ok(DualFunctional {
        representer: u.clone(),
        coeffs: space.coefficients(u)?,
        weights: space.weights().clone(),
    })
}

pub fn evaluate(f: &DualFunctional, v: &GridFunction, space: &EmbeddingSpace) -> Result<Complex64> {
    f.representer.check_grid(v)?;
    f.evaluate_coefficients(&space.coefficients(v)?)
}

/// Norms appearing in the chain `‖J_B(u)‖_{B'} ≤ ‖u‖_H ≤ ‖u‖_B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JbNormBound {
    /// Lower estimate of the dual norm from probes.
    pub functional_estimate: f64,
    pub h_norm: f64,
    pub b_norm: f64,
}

/// Estimates `‖J_B(u)‖_{B'}` as the largest `|(v, u)_H| / ‖v‖_B` over `u` itself
/// and `probes` random elements of the span.
pub fn jb_norm_bound(
    u: &GridFunction,
    space: &EmbeddingSpace,
    probes: usize,
    seed: u64,
) -> Result<JbNormBound> {
    if probes == 0 {
        return Err(Error::InvalidParameter("probes must be at least 1".into()));
    }
    let f = jb_apply(u, space)?;
    let h = weighted_norm(f.representer_coefficients(), space.weights());
    let b = space.b_norm(u)?;
    let mut rng = seeded(seed);
    let mut best = 0.0f64;
    let mut consider = |c: &[Complex64]| -> Result<()> {
        let v = space.reconstruct(c)?;
        let nb = space.b_norm(&v)?;
        if nb > 0.0 {
            best = best.max(f.evaluate_coefficients(c)?.norm() / nb);
        }
        Ok(())
    };
    consider(&f.coeffs.clone())?;
    for _ in 0..probes {
        let mut c = random_complex_vector(&mut rng, space.dim());
        // bias some probes towards the representer to sharpen the estimate
        let mix: f64 = rng.random_range(0.0..1.0);
        let scale = crate::numerics::vec_norm(f.representer_coefficients());
        let len = (c.len() as f64).sqrt();
        if scale > 0.0 {
            for (ci, ui) in c.iter_mut().zip(f.representer_coefficients()) {
                *ci = *ci * (1.0 - mix) + ui * (mix * len / scale);
            }
        }
        consider(&c)?;
    }
    Ok(JbNormBound {
        functional_estimate: best,
        h_norm: h,
        b_norm: b,
    })
}

/// Output of the biorthonormal Gram–Schmidt construction.
#[derive(Debug, Clone)]
pub struct Biorthonormal {
    /// `H`-orthogonal vectors `φ_i`.
    pub phi: Vec<GridFunction>,
    /// `ψ_i = φ_i / ‖φ_i‖_B`.
    pub psi: Vec<GridFunction>,
    /// Functionals with `<ψ_i, ψ_j*> = δ_ij`.
    pub psi_star: Vec<DualFunctional>,
}

impl Biorthonormal {
    /// `M_ij = <ψ_i, ψ_j*>`.
    pub fn pairing_matrix(&self, space: &EmbeddingSpace) -> Result<ComplexMatrix> {
        let n = self.psi.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            let c = space.coefficients(&self.psi[i])?;
            for j in 0..n {
                m[(i, j)] = self.psi_star[j].evaluate_coefficients(&c)?;
            }
        }
        Ok(m)
    }
}

/// Modified Gram–Schmidt in the `H` metric followed by `B`-normalisation.
pub fn gram_schmidt_biorthonormal(
    vectors: &[GridFunction],
    space: &EmbeddingSpace,
) -> Result<Biorthonormal> {
    if vectors.is_empty() {
        return Err(Error::InvalidParameter("no vectors given".into()));
    }
    let w = space.weights();
    let mut phi: Vec<GridFunction> = Vec::with_capacity(vectors.len());
    let mut phi_c: Vec<Vec<Complex64>> = Vec::with_capacity(vectors.len());
    for (idx, v) in vectors.iter().enumerate() {
        let mut f = v.clone();
        let mut c = space.coefficients(v)?;
        let start = weighted_norm(&c, w);
        for (q, qc) in phi.iter().zip(&phi_c) {
            let r = weighted_inner(&c, qc, w) / weighted_inner(qc, qc, w).re;
            f = f.axpy(-r, q)?;
            for (a, b) in c.iter_mut().zip(qc) {
                *a -= r * b;
            }
        }
        let left = weighted_norm(&c, w);
        if start == 0.0 || left <= 1e-6 * start {
            return Err(Error::RankDeficient {
                index: idx,
                residual: if start == 0.0 { 0.0 } else { left / start },
            });
        }
        phi.push(f);
        phi_c.push(c);
    }
    let mut psi = Vec::with_capacity(phi.len());
    let mut psi_star = Vec::with_capacity(phi.len());
    for (f, c) in phi.iter().zip(&phi_c) {
        let nb = space.b_norm(f)?;
        let nh2 = weighted_inner(c, c, w).re;
        psi.push(f.scale(Complex64::new(1.0 / nb, 0.0)));
        psi_star.push(jb_apply(&f.scale(Complex64::new(nb / nh2, 0.0)), space)?);
    }
    Ok(Biorthonormal { phi, psi, psi_star })
}
