//! Truncated operators on `B` and their adjoint in the weighted metric.
//!
//! With `W = diag(t)` and `S = W^{1/2}`, an operator with coordinate matrix
//! `A` acts on `H` like the Euclidean matrix `S A S^{-1}` (its *H-matrix*).
//! Adjoints, norms, polar and spectral data are all computed from the
//! H-matrix and transported back.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert_embed::{weighted_inner, weighted_norm, EmbeddingSpace, Weights};
use crate::numerics::{
    general_eigenvalues, hermitian_eigen, matrix_exp, opnorm_p_estimate, svd, vec_dot, vec_norm,
    ComplexMatrix,
};
use crate::report::{Check, VerificationReport};
use crate::rng::{random_complex_matrix, random_complex_vector, random_hermitian, seeded};
use crate::sbasis::{duality_map, pairing, GridFunction};

const EIG_TOL: f64 = 1e-12;
/// Relative gap below which eigenvalues share one spectral projection.
pub const CLUSTER_GAP: f64 = 1e-8;

/// Coordinate matrix of an operator together with the weights of its space.
#[derive(Debug, Clone, PartialEq)]
pub struct BOperator {
    matrix: ComplexMatrix,
    weights: Weights,
}

impl BOperator {
    pub fn new(matrix: ComplexMatrix, weights: Weights) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != weights.len() {
            return Err(Error::Shape(format!(
                "operator matrix {}x{} on a space of dimension {}",
                matrix.rows(),
                matrix.cols(),
                weights.len()
            )));
        }
        Ok(Self { matrix, weights })
    }

    pub fn on_space(matrix: ComplexMatrix, space: &EmbeddingSpace) -> Result<Self> {
        Self::new(matrix, space.weights().clone())
    }

    pub fn identity(weights: Weights) -> Self {
        let n = weights.len();
        Self {
            matrix: ComplexMatrix::identity(n),
            weights,
        }
    }

    pub fn zero(weights: Weights) -> Self {
        let n = weights.len();
        Self {
            matrix: ComplexMatrix::zeros(n, n),
            weights,
        }
    }

    /// Operator whose H-matrix is `b`, i.e. coordinate matrix `S^{-1} b S`.
    pub fn from_h_matrix(b: &ComplexMatrix, weights: Weights) -> Result<Self> {
        let m = b.scale_rows_cols(&weights.inv_sqrt(), &weights.sqrt());
        Self::new(m, weights)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `S A S^{-1}`.
    pub fn h_matrix(&self) -> ComplexMatrix {
        self.matrix
            .scale_rows_cols(&self.weights.sqrt(), &self.weights.inv_sqrt())
    }

    /// `A* = W^{-1} A^H W`.
    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self
                .matrix
                .adjoint()
                .scale_rows_cols(&self.weights.recip(), self.weights.as_slice()),
            weights: self.weights.clone(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.weights != other.weights {
            return Err(Error::Shape("operators live on different spaces".into()));
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            matrix: self.matrix.matmul(&other.matrix),
            weights: self.weights.clone(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            matrix: &self.matrix + &other.matrix,
            weights: self.weights.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            matrix: &self.matrix - &other.matrix,
            weights: self.weights.clone(),
        })
    }

    pub fn scale(&self, a: Complex64) -> Self {
        Self {
            matrix: self.matrix.scale(a),
            weights: self.weights.clone(),
        }
    }

    /// Action on coefficient vectors.
    pub fn apply(&self, c: &[Complex64]) -> Vec<Complex64> {
        self.matrix.mul_vec(c)
    }

    /// Action on a function of the span: expand, apply, resum.
    pub fn apply_function(&self, u: &GridFunction, space: &EmbeddingSpace) -> Result<GridFunction> {
        if space.weights() != &self.weights {
            return Err(Error::Shape("operator and space disagree".into()));
        }
        space.reconstruct(&self.apply(&space.coefficients(u)?))
    }

    /// Operator norm on `H`.
    pub fn h_norm(&self) -> Result<f64> {
        if self.dim() == 0 {
            return Ok(0.0);
        }
        Ok(svd(&self.h_matrix(), EIG_TOL)?.sigma[0])
    }

    /// Hilbert–Schmidt norm on `H`.
    pub fn h_frobenius(&self) -> f64 {
        self.h_matrix().frobenius_norm()
    }
}

pub fn adjoint(a: &BOperator) -> BOperator {
    a.adjoint()
}

/// `‖S(X − Y)S^{-1}‖_F`.
pub fn h_distance(x: &BOperator, y: &BOperator) -> Result<f64> {
    Ok(x.sub(y)?.h_frobenius())
}

fn relative(diff: f64, scale: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else {
        diff / scale.max(f64::MIN_POSITIVE)
    }
}

pub fn random_operator<R: Rng + ?Sized>(rng: &mut R, weights: &Weights) -> BOperator {
    let n = weights.len();
    BOperator::new(random_complex_matrix(rng, n, n), weights.clone()).expect("square")
}

/// Random naturally self-adjoint operator (Hermitian H-matrix).
pub fn random_selfadjoint<R: Rng + ?Sized>(rng: &mut R, weights: &Weights) -> BOperator {
    BOperator::from_h_matrix(&random_hermitian(rng, weights.len()), weights.clone()).expect("square")
}

/// Relative violations of the five adjoint identities, in order:
/// `(aA)* = conj(a)A*`, `A** = A`, `(A+B)* = A*+B*`, `(AB)* = B*A*`, `(A*A)* = A*A`.
pub fn adjoint_algebra_violations(a: &BOperator, b: &BOperator, alpha: Complex64) -> Result<[f64; 5]> {
    a.check_same(b)?;
    let (sa, sb) = (a.adjoint(), b.adjoint());
    let (na, nb) = (sa.h_frobenius(), sb.h_frobenius());
    let homog = relative(
        h_distance(&a.scale(alpha).adjoint(), &sa.scale(alpha.conj()))?,
        alpha.norm() * na,
    );
    let invol = relative(h_distance(&sa.adjoint(), a)?, a.h_frobenius());
    let additive = relative(h_distance(&a.add(b)?.adjoint(), &sa.add(&sb)?)?, na + nb);
    let product = relative(h_distance(&a.compose(b)?.adjoint(), &sb.compose(&sa)?)?, na * nb);
    let ata = sa.compose(a)?;
    let ata_sa = relative(h_distance(&ata.adjoint(), &ata)?, na * a.h_frobenius());
    Ok([homog, invol, additive, product, ata_sa])
}

pub fn adjoint_algebra_check(a: &BOperator, b: &BOperator, alpha: Complex64) -> Result<VerificationReport> {
    let v = adjoint_algebra_violations(a, b, alpha)?;
    let names = [
        "adjoint_homogeneity",
        "adjoint_involution",
        "adjoint_additivity",
        "adjoint_product",
        "adjoint_ata_selfadjoint",
    ];
    let mut r = VerificationReport::new("adjoint", 0);
    for (name, x) in names.iter().zip(v) {
        r.push(Check::assert(*name, x, 1e-10, 1).param("n", a.dim()));
    }
    Ok(r)
}

/// `|(Au, v)_H − (u, A*v)_H| / (‖A‖_H ‖u‖_H ‖v‖_H)`.
pub fn adjoint_identity_violation(a: &BOperator, u: &[Complex64], v: &[Complex64]) -> Result<f64> {
    let w = a.weights();
    let lhs = weighted_inner(&a.apply(u), v, w);
    let rhs = weighted_inner(u, &a.adjoint().apply(v), w);
    let scale = a.h_norm()? * weighted_norm(u, w) * weighted_norm(v, w);
    Ok(relative((lhs - rhs).norm(), scale))
}

/// Norm estimates around `‖A*A‖ ≤ ‖A*‖‖A‖ ≤ ‖A‖²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormInequality {
    pub p: f64,
    /// `ℓ^p` coordinate-model estimates.
    pub a_b: f64,
    pub a_star_b: f64,
    pub ata_b: f64,
    pub a_h: f64,
    pub ata_h: f64,
}

impl NormInequality {
    pub fn adjoint_ratio_b(&self) -> f64 {
        self.a_star_b / self.a_b
    }

    pub fn cstar_ratio_b(&self) -> f64 {
        self.ata_b / (self.a_b * self.a_b)
    }

    /// `|‖A*A‖_H − ‖A‖_H²| / ‖A‖_H²`.
    pub fn cstar_defect_h(&self) -> f64 {
        relative((self.ata_h - self.a_h * self.a_h).abs(), self.a_h * self.a_h)
    }
}

pub fn norm_inequality(a: &BOperator, p: f64, restarts: usize, seed: u64) -> Result<NormInequality> {
    let sa = a.adjoint();
    let ata = sa.compose(a)?;
    Ok(NormInequality {
        p,
        a_b: opnorm_p_estimate(a.matrix(), p, restarts, seed)?,
        a_star_b: opnorm_p_estimate(sa.matrix(), p, restarts, seed)?,
        ata_b: opnorm_p_estimate(ata.matrix(), p, restarts, seed)?,
        a_h: a.h_norm()?,
        ata_h: ata.h_norm()?,
    })
}

/// Reports the `B`-model ratios as measurements and asserts the `H` identity.
pub fn norm_inequality_report(a: &BOperator, p: f64, restarts: usize, seed: u64) -> Result<VerificationReport> {
    let m = norm_inequality(a, p, restarts, seed)?;
    let mut r = VerificationReport::new("adjoint", seed);
    r.push(
        Check::measured("norm_ratio_b", m.adjoint_ratio_b(), 1)
            .param("p", p)
            .param("restarts", restarts),
    );
    r.push(Check::measured("cstar_ratio_b", m.cstar_ratio_b(), 1).param("p", p));
    r.push(Check::assert("lax_cstar_identity", m.cstar_defect_h(), 1e-8, 1));
    Ok(r)
}

/// `‖B − B^H‖_F ≤ tol·‖B‖_F` on the H-matrix.
pub fn is_naturally_selfadjoint(a: &BOperator, tol: f64) -> bool {
    let b = a.h_matrix();
    b.hermitian_part_error() <= tol * b.frobenius_norm()
}

pub fn is_normal(a: &BOperator, tol: f64) -> bool {
    let b = a.h_matrix();
    let bh = b.adjoint();
    let c = &b.matmul(&bh) - &bh.matmul(&b);
    c.frobenius_norm() <= tol * b.frobenius_norm().powi(2)
}

pub fn is_unitary(u: &BOperator, tol: f64) -> bool {
    let b = u.h_matrix();
    let id = ComplexMatrix::identity(u.dim());
    let bh = b.adjoint();
    (&b.matmul(&bh) - &id).frobenius_norm() <= tol && (&bh.matmul(&b) - &id).frobenius_norm() <= tol
}

/// True iff `(v, u)_H` vanishes within `tol` for every pair.
pub fn orthogonal_subspaces(
    us: &[GridFunction],
    vs: &[GridFunction],
    space: &EmbeddingSpace,
    tol: f64,
) -> Result<bool> {
    if us.is_empty() || vs.is_empty() {
        return Err(Error::InvalidParameter("vector sets must be nonempty".into()));
    }
    let cu: Vec<_> = us.iter().map(|u| space.coefficients(u)).collect::<Result<_>>()?;
    let cv: Vec<_> = vs.iter().map(|v| space.coefficients(v)).collect::<Result<_>>()?;
    let w = space.weights();
    Ok(cu.iter().all(|u| {
        cv.iter().all(|v| {
            weighted_inner(u, v, w).norm() <= tol && weighted_inner(v, u, w).norm() <= tol
        })
    }))
}

fn require_selfadjoint(a: &BOperator, tol: f64) -> Result<()> {
    let b = a.h_matrix();
    let dev = b.hermitian_part_error();
    if dev > tol * b.frobenius_norm() {
        return Err(Error::NotSelfAdjoint {
            deviation: dev,
            tol: tol * b.frobenius_norm(),
        });
    }
    Ok(())
}

fn hermitian_part(b: &ComplexMatrix) -> ComplexMatrix {
    (b + &b.adjoint()).scale_real(0.5)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaxMeasurement {
    pub h_norm: f64,
    pub b_norm_estimate: f64,
    /// `‖T‖_H² / ‖T‖_B²`.
    pub k_hat: f64,
    /// Largest distance between matched eigenvalues of `T` and its H-matrix,
    /// relative to `max(1, ‖T‖_H)`.
    pub spectrum_gap: f64,
}

pub fn lax_measure(t: &BOperator, p: f64, restarts: usize, seed: u64, tol: f64) -> Result<LaxMeasurement> {
    require_selfadjoint(t, tol)?;
    let eig = hermitian_eigen(&hermitian_part(&t.h_matrix()), EIG_TOL)?;
    let h_norm = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut coord = general_eigenvalues(t.matrix())?;
    coord.sort_by(|a, b| b.re.total_cmp(&a.re));
    let gap = coord
        .iter()
        .zip(&eig.values)
        .map(|(z, x)| (z - Complex64::new(*x, 0.0)).norm())
        .fold(0.0f64, f64::max);
    let b_norm = opnorm_p_estimate(t.matrix(), p, restarts, seed)?;
    Ok(LaxMeasurement {
        h_norm,
        b_norm_estimate: b_norm,
        k_hat: if b_norm > 0.0 { h_norm * h_norm / (b_norm * b_norm) } else { f64::NAN },
        spectrum_gap: gap / h_norm.max(1.0),
    })
}

pub fn lax_check(t: &BOperator, p: f64, restarts: usize, seed: u64, tol: f64) -> Result<VerificationReport> {
    let m = lax_measure(t, p, restarts, seed, tol)?;
    let mut r = VerificationReport::new("adjoint", seed);
    r.push(Check::assert("lax_point_spectrum", m.spectrum_gap, 1e-8, 1).param("n", t.dim()));
    r.push(
        Check::measured("lax_constant", m.k_hat, 1)
            .param("h_norm", m.h_norm)
            .param("b_norm", m.b_norm_estimate)
            .param("p", p),
    );
    Ok(r)
}

/// Largest `‖E^H E − I‖_F` over `E = exp(±i t B)`, `t ∈ tgrid`; infinite if the
/// exponential overflows.
pub fn self_conjugacy_defect(a: &BOperator, tgrid: &[f64]) -> f64 {
    let b = a.h_matrix();
    let id = ComplexMatrix::identity(a.dim());
    let mut worst = 0.0f64;
    for &t in tgrid {
        for s in [1.0, -1.0] {
            match matrix_exp(&b.scale(Complex64::new(0.0, s * t))) {
                Ok(e) => worst = worst.max((&e.adjoint().matmul(&e) - &id).frobenius_norm()),
                Err(_) => return f64::INFINITY,
            }
        }
    }
    worst
}

/// Whether `exp(±itA)` is an isometry of `H` for every `t` in `tgrid`.
pub fn self_conjugacy_check(a: &BOperator, tgrid: &[f64], tol: f64) -> bool {
    self_conjugacy_defect(a, tgrid) <= tol
}

#[derive(Debug, Clone)]
pub struct Polar {
    pub u: BOperator,
    pub t: BOperator,
    pub rank: usize,
    /// Set when `T` is singular and `U` was completed on `ker T`.
    pub rank_deficient: bool,
}

/// `A = U T` with `T = (A*A)^{1/2}`.
pub fn polar_decompose(a: &BOperator, tol: f64) -> Result<Polar> {
    let n = a.dim();
    let b = a.h_matrix();
    let s = svd(&b, EIG_TOL)?;
    let smax = s.sigma.first().copied().unwrap_or(0.0);
    let rank = s.sigma.iter().filter(|&&x| x > tol * smax.max(f64::MIN_POSITIVE)).count();
    let t = s
        .v
        .scale_rows_cols(&vec![1.0; n], &s.sigma)
        .matmul(&s.v.adjoint());
    let u = s.u.matmul(&s.v.adjoint());
    let w = a.weights().clone();
    Ok(Polar {
        u: BOperator::from_h_matrix(&u, w.clone())?,
        t: BOperator::from_h_matrix(&hermitian_part(&t), w)?,
        rank,
        rank_deficient: rank < n,
    })
}

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Distinct eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    pub projections: Vec<BOperator>,
    pub ranks: Vec<usize>,
}

impl SpectralDecomposition {
    /// `Σ x_j P_j`.
    pub fn reconstruct(&self) -> BOperator {
        let mut acc = BOperator::zero(self.projections[0].weights().clone());
        for (x, p) in self.eigenvalues.iter().zip(&self.projections) {
            acc = acc.add(&p.scale(Complex64::new(*x, 0.0))).expect("same space");
        }
        acc
    }

    /// Worst of `‖P_j² − P_j‖`, `‖P_j − P_j*‖`, `‖P_j P_k‖`, `‖Σ P_j − I‖`,
    /// all in the H-Frobenius norm.
    pub fn axiom_defect(&self) -> f64 {
        let w = self.projections[0].weights().clone();
        let mut worst = 0.0f64;
        let mut sum = BOperator::zero(w.clone());
        for (j, p) in self.projections.iter().enumerate() {
            let p2 = p.compose(p).expect("same space");
            worst = worst.max(h_distance(&p2, p).expect("same space"));
            worst = worst.max(h_distance(&p.adjoint(), p).expect("same space"));
            for q in &self.projections[j + 1..] {
                worst = worst.max(p.compose(q).expect("same space").h_frobenius());
            }
            sum = sum.add(p).expect("same space");
        }
        worst.max(h_distance(&sum, &BOperator::identity(w)).expect("same space"))
    }
}

pub fn spectral_decompose(a: &BOperator, tol: f64) -> Result<SpectralDecomposition> {
    require_selfadjoint(a, tol)?;
    let n = a.dim();
    if n == 0 {
        return Err(Error::InvalidParameter("empty operator".into()));
    }
    let eig = hermitian_eigen(&hermitian_part(&a.h_matrix()), EIG_TOL)?;
    let scale = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let mut groups: Vec<Vec<usize>> = vec![vec![0]];
    for i in 1..n {
        if eig.values[i - 1] - eig.values[i] <= CLUSTER_GAP * scale {
            groups.last_mut().expect("nonempty").push(i);
        } else {
            groups.push(vec![i]);
        }
    }
    let mut eigenvalues = Vec::with_capacity(groups.len());
    let mut projections = Vec::with_capacity(groups.len());
    let mut ranks = Vec::with_capacity(groups.len());
    for g in groups {
        let x = g.iter().map(|&i| eig.values[i]).sum::<f64>() / g.len() as f64;
        let p = ComplexMatrix::from_fn(n, n, |r, c| {
            g.iter()
                .map(|&k| eig.vectors[(r, k)] * eig.vectors[(c, k)].conj())
                .sum()
        });
        eigenvalues.push(x);
        ranks.push(g.len());
        projections.push(BOperator::from_h_matrix(&p, a.weights().clone())?);
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        projections,
        ranks,
    })
}

fn orthonormalize(cols: &mut [Vec<Complex64>]) {
    for j in 0..cols.len() {
        for _ in 0..2 {
            for i in 0..j {
                let (head, tail) = cols.split_at_mut(j);
                let r = vec_dot(&head[i], &tail[0]);
                for (x, q) in tail[0].iter_mut().zip(&head[i]) {
                    *x -= r * q;
                }
            }
        }
        let nrm = vec_norm(&cols[j]);
        if nrm > 0.0 {
            for x in cols[j].iter_mut() {
                *x /= nrm;
            }
        }
    }
}

/// Courant–Fischer estimate of the `k`-th largest eigenvalue (1-based) by
/// randomized block subspace iteration on the H-matrix. Each Ritz value is a
/// lower bound, so the best of `trials` restarts is kept.
pub fn minmax_eigenvalue(a: &BOperator, k: usize, trials: usize, seed: u64) -> Result<f64> {
    let n = a.dim();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..={n}")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    require_selfadjoint(a, 1e-8)?;
    let h = hermitian_part(&a.h_matrix());
    // shift to a positive semidefinite operator so the iteration favours the top
    let shift = h.norm_one();
    let shifted = &h + &ComplexMatrix::identity(n).scale_real(shift);
    let m = n.min(k + 8);
    let mut rng = seeded(seed);
    let mut best = f64::NEG_INFINITY;
    for _ in 0..trials {
        let mut q: Vec<Vec<Complex64>> = (0..m).map(|_| random_complex_vector(&mut rng, n)).collect();
        orthonormalize(&mut q);
        let mut prev = f64::NAN;
        let mut ritz = f64::NEG_INFINITY;
        for it in 0..5000 {
            if it > 0 {
                for col in q.iter_mut() {
                    *col = shifted.mul_vec(col);
                }
                orthonormalize(&mut q);
            }
            let small = ComplexMatrix::from_fn(m, m, |i, j| vec_dot(&q[i], &h.mul_vec(&q[j])));
            let e = hermitian_eigen(&hermitian_part(&small), EIG_TOL)?;
            ritz = e.values[k - 1];
            if m == n || (ritz - prev).abs() <= 1e-15 * shift.max(1.0) {
                break;
            }
            prev = ritz;
        }
        best = best.max(ritz);
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RayleighComparison {
    /// `<Aψ, J(ψ)> / <ψ, J(ψ)>` with the `L^p` duality map.
    pub b_ratio: Complex64,
    /// `(Aψ, ψ)_H / (ψ, ψ)_H`.
    pub h_ratio: Complex64,
    pub gap: f64,
}

pub fn rayleigh_compare(a: &BOperator, psi: &GridFunction, space: &EmbeddingSpace) -> Result<RayleighComparison> {
    if psi.is_zero() {
        return Err(Error::InvalidParameter("ψ must be nonzero".into()));
    }
    let c = space.coefficients(psi)?;
    let ac = a.apply(&c);
    let a_psi = space.reconstruct(&ac)?;
    let j = duality_map(psi, space.p())?;
    let b_ratio = pairing(&a_psi, &j)? / pairing(psi, &j)?;
    let w = space.weights();
    let h_ratio = weighted_inner(&ac, &c, w) / weighted_inner(&c, &c, w);
    Ok(RayleighComparison {
        b_ratio,
        h_ratio,
        gap: (b_ratio - h_ratio).norm(),
    })
}

/// Periodic central-difference discretisation of `a(x)u'' + x b(x) u'` on the
/// basis grid, expressed in basis coordinates. Requires `Re a ≥ eps` everywhere.
pub fn finite_difference_operator(
    a: &GridFunction,
    b: &GridFunction,
    space: &EmbeddingSpace,
    eps: f64,
) -> Result<BOperator> {
    let grid = space.basis().grid();
    grid.check_grid(a)?;
    grid.check_grid(b)?;
    if grid.dim() != 1 {
        return Err(Error::InvalidParameter("finite differences are one-dimensional".into()));
    }
    if let Some(bad) = a.samples().iter().find(|z| !(z.re >= eps)) {
        return Err(Error::InvalidParameter(format!(
            "ellipticity violated: a = {bad} below {eps}"
        )));
    }
    let m = grid.resolution();
    let h = grid.spacing(0);
    let x = grid.midpoints_1d();
    let n = space.dim();
    let mut mat = ComplexMatrix::zeros(n, n);
    for (col, e) in space.basis().members().iter().enumerate() {
        let u = e.samples();
        let lu = GridFunction::from_fn(grid.bounds().to_vec(), m, |_| Complex64::new(0.0, 0.0))?;
        let mut lu = lu;
        for (i, out) in lu.samples_mut().iter_mut().enumerate() {
            let (l, r) = (u[(i + m - 1) % m], u[(i + 1) % m]);
            let d2 = (l - u[i] * 2.0 + r) / (h * h);
            let d1 = (r - l) / (2.0 * h);
            *out = a.samples()[i] * d2 + b.samples()[i] * x[i] * d1;
        }
        mat.set_column(col, &space.coefficients(&lu)?);
    }
    BOperator::on_space(mat, space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sbasis::fourier_sbasis;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn nilpotent(w: Weights) -> BOperator {
        BOperator::new(ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap(), w).unwrap()
    }

    #[test]
    fn adjoint_of_nilpotent_in_dyadic_metric() {
        // W^{-1} A^H W with W = diag(1/2, 1/4): the (2,1) entry is (1/t_2)·1·t_1 = 2
        let a = nilpotent(Weights::dyadic(2));
        let s = a.adjoint();
        let expect = ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[2.0, 0.0]]).unwrap();
        assert!((s.matrix() - &expect).max_abs() < 1e-15);
        let u = [c(0.3, -1.0), c(2.0, 0.5)];
        let v = [c(-0.7, 0.2), c(1.1, 1.0)];
        let w = a.weights();
        let lhs = weighted_inner(&a.apply(&u), &v, w);
        let rhs = weighted_inner(&u, &s.apply(&v), w);
        assert!((lhs - rhs).norm() < 1e-15);
    }

    #[test]
    fn identity_is_everything() {
        let i = BOperator::identity(Weights::dyadic(3));
        assert_eq!(i.adjoint(), i);
        assert!(is_naturally_selfadjoint(&i, 1e-12));
        assert!(is_normal(&i, 1e-12));
        assert!(is_unitary(&i, 1e-12));
        let n = nilpotent(Weights::dyadic(2));
        assert!(!is_naturally_selfadjoint(&n, 1e-8));
        assert!(!is_normal(&n, 1e-8));
        assert!(!is_unitary(&n, 1e-8));
        let d = BOperator::new(ComplexMatrix::diag_real(&[1.0, 2.0]), Weights::dyadic(2)).unwrap();
        assert!(is_naturally_selfadjoint(&d, 1e-14));
    }

    #[test]
    fn algebra_on_random_pairs() {
        let mut rng = seeded(11);
        for n in [1, 4, 16] {
            let w = Weights::dyadic(n);
            let a = random_operator(&mut rng, &w);
            let b = random_operator(&mut rng, &w);
            let v = adjoint_algebra_violations(&a, &b, c(0.3, -2.0)).unwrap();
            assert!(v.iter().all(|&x| x <= 1e-12), "{v:?}");
            let z = adjoint_algebra_violations(&a, &b, c(0.0, 0.0)).unwrap();
            assert_eq!(z[0], 0.0);
            let u = random_complex_vector(&mut rng, n);
            let x = random_complex_vector(&mut rng, n);
            assert!(adjoint_identity_violation(&a, &u, &x).unwrap() < 1e-12);
        }
    }

    #[test]
    fn cstar_identity_in_h() {
        let mut rng = seeded(5);
        let a = random_operator(&mut rng, &Weights::dyadic(8));
        let m = norm_inequality(&a, 3.0, 4, 1).unwrap();
        assert!(m.cstar_defect_h() < 1e-10);
        let i = norm_inequality(&BOperator::identity(Weights::dyadic(4)), 3.0, 2, 1).unwrap();
        assert!((i.adjoint_ratio_b() - 1.0).abs() < 1e-12);
        assert!((i.cstar_ratio_b() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lax_spectra_match() {
        let mut rng = seeded(8);
        for n in [1, 4, 8, 16] {
            let w = Weights::dyadic(n);
            let a = random_operator(&mut rng, &w);
            let t = a.adjoint().compose(&a).unwrap();
            let m = lax_measure(&t, 3.0, 4, 2, 1e-10).unwrap();
            assert!(m.spectrum_gap < 1e-8, "n={n}: {}", m.spectrum_gap);
            assert!(m.k_hat.is_finite());
        }
        let i = lax_measure(&BOperator::identity(Weights::dyadic(3)), 2.0, 1, 0, 1e-12).unwrap();
        assert!((i.h_norm - 1.0).abs() < 1e-14);
        assert!(lax_measure(&nilpotent(Weights::dyadic(2)), 2.0, 1, 0, 1e-8).is_err());
    }

    #[test]
    fn self_conjugacy_examples() {
        let w = Weights::dyadic(2);
        let ts = [0.25, 0.5, 1.0];
        let d = BOperator::new(ComplexMatrix::diag_real(&[1.0, 2.0]), w.clone()).unwrap();
        assert!(self_conjugacy_check(&d, &ts, 1e-10));
        assert!(!self_conjugacy_check(&nilpotent(w.clone()), &ts, 1e-8));
        assert!(self_conjugacy_check(&BOperator::zero(w), &ts, 1e-14));
    }

    #[test]
    fn polar_reconstructs() {
        let mut rng = seeded(3);
        let w = Weights::dyadic(12);
        let a = random_operator(&mut rng, &w);
        let pd = polar_decompose(&a, 1e-12).unwrap();
        let ut = pd.u.compose(&pd.t).unwrap();
        assert!((a.matrix() - ut.matrix()).frobenius_norm() <= 1e-9 * a.matrix().frobenius_norm());
        assert!(is_naturally_selfadjoint(&pd.t, 1e-9));
        assert!(is_unitary(&pd.u, 1e-10));
        assert!(!pd.rank_deficient);

        let i = polar_decompose(&BOperator::identity(w.clone()), 1e-12).unwrap();
        assert!(h_distance(&i.u, &BOperator::identity(w.clone())).unwrap() < 1e-12);
        let pos = random_operator(&mut rng, &w);
        let pos = pos.adjoint().compose(&pos).unwrap();
        let pp = polar_decompose(&pos, 1e-12).unwrap();
        assert!(h_distance(&pp.t, &pos).unwrap() <= 1e-10 * pos.h_frobenius());
        assert!(h_distance(&pp.u, &BOperator::identity(w)).unwrap() < 1e-8);
    }

    #[test]
    fn spectral_examples() {
        let w = Weights::dyadic(3);
        let d = BOperator::new(ComplexMatrix::diag_real(&[1.0, 1.0, 2.0]), w.clone()).unwrap();
        let s = spectral_decompose(&d, 1e-12).unwrap();
        assert_eq!(s.eigenvalues, vec![2.0, 1.0]);
        assert_eq!(s.ranks, vec![1, 2]);
        let i = spectral_decompose(&BOperator::identity(w), 1e-12).unwrap();
        assert_eq!(i.eigenvalues, vec![1.0]);

        let mut rng = seeded(2);
        let a = random_selfadjoint(&mut rng, &Weights::dyadic(10));
        let s = spectral_decompose(&a, 1e-10).unwrap();
        assert!(h_distance(&s.reconstruct(), &a).unwrap() <= 1e-10 * a.h_frobenius());
        assert!(s.axiom_defect() < 1e-10);
        assert!(spectral_decompose(&nilpotent(Weights::dyadic(2)), 1e-8).is_err());
    }

    #[test]
    fn minmax_matches_eigen() {
        let w = Weights::dyadic(3);
        let d = BOperator::new(ComplexMatrix::diag_real(&[3.0, 2.0, 1.0]), w.clone()).unwrap();
        assert!((minmax_eigenvalue(&d, 1, 2, 0).unwrap() - 3.0).abs() < 1e-12);
        assert!((minmax_eigenvalue(&BOperator::identity(w), 2, 1, 0).unwrap() - 1.0).abs() < 1e-12);
        let mut rng = seeded(4);
        let w = Weights::dyadic(16);
        let a = random_selfadjoint(&mut rng, &w);
        let s = spectral_decompose(&a, 1e-10).unwrap();
        for k in [1, 2, 5] {
            let est = minmax_eigenvalue(&a, k, 3, 9).unwrap();
            assert!((est - s.eigenvalues[k - 1]).abs() < 1e-6, "k={k}");
        }
        assert!(minmax_eigenvalue(&a, 0, 1, 0).is_err());
        assert!(minmax_eigenvalue(&a, 17, 1, 0).is_err());
    }

    fn small_space(n: usize) -> EmbeddingSpace {
        EmbeddingSpace::new(fourier_sbasis(n, 3.0, 256).unwrap())
    }

    #[test]
    fn orthogonality_sets() {
        let s = small_space(3);
        let e = s.basis().members();
        assert!(orthogonal_subspaces(&e[..1], &e[1..2], &s, 1e-10).unwrap());
        assert!(!orthogonal_subspaces(&e[..1], &e[..1], &s, 1e-10).unwrap());
        assert!(orthogonal_subspaces(&[], &e[..1], &s, 1e-10).is_err());
    }

    #[test]
    fn rayleigh_on_eigenvector() {
        let s = small_space(4);
        let d = BOperator::on_space(ComplexMatrix::diag_real(&[1.0, 5.0, 2.0, 3.0]), &s).unwrap();
        let r = rayleigh_compare(&d, s.basis().member(1), &s).unwrap();
        assert!((r.b_ratio - c(5.0, 0.0)).norm() < 1e-10);
        assert!((r.h_ratio - c(5.0, 0.0)).norm() < 1e-10);
        let i = BOperator::identity(s.weights().clone());
        let u = s.basis().member(0).add(s.basis().member(2)).unwrap();
        let r = rayleigh_compare(&i, &u, &s).unwrap();
        assert!(r.gap < 1e-10);
        assert!(rayleigh_compare(&i, &u.zeros_like(), &s).is_err());
    }

    #[test]
    fn finite_differences() {
        let basis = fourier_sbasis(5, 2.0, 256).unwrap();
        let uni = EmbeddingSpace::with_weights(basis.clone(), Weights::uniform(5)).unwrap();
        let g = basis.grid();
        let one = g.map(|_| c(1.0, 0.0));
        let two = g.map(|_| c(2.0, 0.0));
        let zero = g.zeros_like();
        let lap = finite_difference_operator(&one, &zero, &uni, 1e-6).unwrap();
        assert!(is_naturally_selfadjoint(&lap, 1e-10));
        let drift = finite_difference_operator(&one, &one, &uni, 1e-6).unwrap();
        assert!(h_distance(&drift, &drift.adjoint()).unwrap() > 1.0);
        let lap2 = finite_difference_operator(&two, &zero, &uni, 1e-6).unwrap();
        let e1 = spectral_decompose(&lap, 1e-10).unwrap().eigenvalues;
        let e2 = spectral_decompose(&lap2, 1e-10).unwrap().eigenvalues;
        for (x, y) in e1.iter().zip(&e2) {
            assert!((2.0 * x - y).abs() <= 1e-9 * y.abs().max(1.0));
        }
        assert!(finite_difference_operator(&zero, &zero, &uni, 1e-6).is_err());
    }
}
