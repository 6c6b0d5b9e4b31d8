//! Verification suites: every module invariant as a named, seeded check.
//!
//! Each check draws its randomness from `stream_seed(seed, name)`, so adding
//! or removing a check never changes the samples seen by another.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hilbert_embed::{
    gram_matrix, gram_schmidt_biorthonormal, h_inner, h_norm, jb_apply, jb_norm_bound, weighted_norm,
    EmbeddingSpace, Weights,
};
use crate::integral_ops::{
    adjoint_relation_violation, empirical_hls_constant, empirical_lp_constant, hilbert_multiplier, hilbert_pv,
    hls_exponent, odd_kernel_operator, pv_convergence, pv_gap, random_band_limited, random_compact_probe,
    riesz_potential, riesz_potential_at, riesz_unit_midpoint, OddKernel, PeriodicSignal, SignalOp,
    STABILITY_FACTOR,
};
use crate::ks2::{
    embedding_bound, functionals, ks2_norm_from, pairing_index, pairing_order, rational_center, tail_bound,
    weak_strong_demo, CubeSystem,
};
use crate::numerics::{
    general_eigenvalues, hermitian_eigen, matrix_exp, opnorm_p_estimate, svd, ComplexMatrix,
};
use crate::operator_algebra::{
    adjoint_algebra_violations, adjoint_identity_violation, h_distance, is_naturally_selfadjoint,
    lax_measure, minmax_eigenvalue, norm_inequality, polar_decompose, random_operator, random_selfadjoint,
    rayleigh_compare, self_conjugacy_check, spectral_decompose, BOperator,
};
use crate::report::{Check, Param, VerificationReport};
use crate::rng::{complex_normal, random_complex_matrix, random_complex_vector, random_hermitian, seeded, stream_seed, SeededRng};
use crate::sbasis::{
    coefficients, duality_map, fourier_sbasis, lp_norm, pairing, project, GridFunction, Interval,
};
use crate::schatten::{
    horn_sums, lalesco_sums, lidskii_defect, nuclear_norm_upper, path_discrepancy, pietsch_cp,
    schatten_norm, schatten_norm_paths, singular_value_paths, weyl_sums, excess, Metric,
};

pub const SUITE_NAMES: [&str; 5] = ["embedding", "adjoint", "schatten", "ks2", "integral"];

const EMBEDDING_CHECKS: &[&str] = &[
    "biorthonormal_pairing",
    "duality_homogeneity",
    "duality_identity",
    "eigen_sorted_real",
    "expm_commuting",
    "gram_diagonal",
    "gram_schmidt_orthogonal",
    "gram_schmidt_unit_b",
    "jb_linearity",
    "jb_norm_bound",
    "norm_chain_b",
    "norm_chain_functional",
    "norm_chain_middle",
    "opnorm_two_sigma",
    "projection_idempotent",
    "svd_adjoint_invariance",
];

const ADJOINT_CHECKS: &[&str] = &[
    "adjoint_additivity",
    "adjoint_ata_selfadjoint",
    "adjoint_homogeneity",
    "adjoint_identity",
    "adjoint_involution",
    "adjoint_product",
    "ata_spectrum",
    "cstar_ratio_b",
    "lax_constant",
    "lax_cstar_identity",
    "lax_point_spectrum",
    "minmax_eigenvalues",
    "norm_ratio_b",
    "polar_reconstruction",
    "projection_axioms",
    "rayleigh_gap",
    "self_conjugacy_agreement",
    "spectral_reconstruction",
];

const SCHATTEN_CHECKS: &[&str] = &[
    "horn",
    "lalesco",
    "lidskii",
    "nuclear_norm_upper",
    "pietsch_cp_b",
    "schatten_monotone",
    "schatten_two_path",
    "schatten_unitary_invariance",
    "singular_value_paths",
    "weyl",
];

const KS2_CHECKS: &[&str] = &[
    "centers_distinct",
    "embedding_bound_inf",
    "embedding_bound_q",
    "fk_l1_bound",
    "fundamentality",
    "ks2_hermitian_psd",
    "ks2_sup_bound",
    "ks2_truncation_monotone",
    "pairing_bijection",
    "pairing_prefix",
    "weak_strong",
];

const INTEGRAL_CHECKS: &[&str] = &[
    "hilbert_cp",
    "hilbert_cp_stable",
    "hilbert_isometry",
    "hilbert_l2_constant",
    "hilbert_pv_skew_adjoint",
    "hilbert_skew_adjoint",
    "hilbert_square",
    "hls_constant",
    "hls_exponent",
    "hls_stable",
    "odd_kernel_linearity",
    "odd_kernel_shared_path",
    "pv_convergence_order",
    "pv_multiplier_gap",
    "riesz_positivity",
    "riesz_spot_value",
    "riesz_symmetry",
];

/// Check names of one suite, or of all of them for `"all"`.
pub fn check_names(suite: &str) -> Result<Vec<&'static str>> {
    let list: &[&str] = match suite {
        "embedding" => EMBEDDING_CHECKS,
        "adjoint" => ADJOINT_CHECKS,
        "schatten" => SCHATTEN_CHECKS,
        "ks2" => KS2_CHECKS,
        "integral" => INTEGRAL_CHECKS,
        "all" => {
            let mut v: Vec<&str> = SUITE_NAMES.iter().flat_map(|s| check_names(s).unwrap()).collect();
            v.sort_unstable();
            return Ok(v);
        }
        other => return Err(Error::InvalidParameter(format!("unknown suite '{other}'"))),
    };
    Ok(list.to_vec())
}

/// Overrides for a suite run. `None` keeps each check's documented default.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SuiteParams {
    pub seed: u64,
    /// Basis / operator dimension; the adjoint and Schatten sweeps use 4, 8, 16 by default.
    pub dim: Option<usize>,
    /// Quadrature resolution (basis grid, step functions, signal length).
    pub grid: Option<usize>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub alpha: Option<f64>,
    /// Replaces every per-check sample count.
    pub trials: Option<usize>,
    /// Replaces every asserted tolerance.
    pub tol: Option<f64>,
    pub cubes: Option<usize>,
}

impl SuiteParams {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if let Some(n) = self.dim {
            if !(1..=32).contains(&n) {
                return bad(format!("--dim must lie in 1..=32, got {n}"));
            }
        }
        if let Some(m) = self.grid {
            if !m.is_power_of_two() || !(16..=16384).contains(&m) {
                return bad(format!("--grid must be a power of two in 16..=16384, got {m}"));
            }
            if m < 8 * self.dim.unwrap_or(8) {
                return bad(format!("--grid {m} too coarse for the basis dimension"));
            }
        }
        if let Some(p) = self.p {
            if !(p > 1.0 && p.is_finite()) {
                return bad(format!("--p must lie in (1, inf), got {p}"));
            }
        }
        if let Some(q) = self.q {
            if !(q >= 1.0) {
                return bad(format!("--q must lie in [1, inf], got {q}"));
            }
        }
        if let Some(a) = self.alpha {
            if !(a > 0.0 && a < 1.0) {
                return bad(format!("--alpha must lie in (0, 1), got {a}"));
            }
        }
        if self.trials == Some(0) {
            return bad("--trials must be at least 1".into());
        }
        if let Some(t) = self.tol {
            if !(t >= 0.0 && t.is_finite()) {
                return bad(format!("--tol must be a nonnegative number, got {t}"));
            }
        }
        if let Some(k) = self.cubes {
            if !(1..=4096).contains(&k) {
                return bad(format!("--cubes must lie in 1..=4096, got {k}"));
            }
        }
        hls_exponent(self.alpha(), self.hls_p())?;
        Ok(())
    }

    fn trials(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    fn dims(&self) -> Vec<usize> {
        self.dim.map_or_else(|| vec![4, 8, 16], |n| vec![n])
    }

    fn basis_dim(&self) -> usize {
        self.dim.unwrap_or(8)
    }

    fn basis_grid(&self) -> usize {
        self.grid.unwrap_or(512).max(8 * self.basis_dim())
    }

    fn p_sweep(&self) -> Vec<f64> {
        self.p.map_or_else(|| vec![1.5, 2.0, 3.0, 4.0], |p| vec![p])
    }

    /// An exponent other than 2 for the `B`-model measurements.
    fn p_not_two(&self) -> f64 {
        self.p.filter(|&p| p != 2.0).unwrap_or(3.0)
    }

    fn alpha(&self) -> f64 {
        self.alpha.unwrap_or(0.25)
    }

    fn hls_p(&self) -> f64 {
        self.p.unwrap_or(4.0 / 3.0)
    }

    fn cubes(&self) -> usize {
        self.cubes.unwrap_or(256)
    }

    fn record(&self, r: &mut VerificationReport) {
        let mut put = |k: &str, v: Option<Param>| {
            if let Some(v) = v {
                r.params.insert(k.to_owned(), v);
            }
        };
        put("dim", self.dim.map(Param::from));
        put("grid", self.grid.map(Param::from));
        put("p", self.p.map(Param::from));
        put("q", self.q.map(Param::from));
        put("alpha", self.alpha.map(Param::from));
        put("trials", self.trials.map(Param::from));
        put("tol", self.tol.map(Param::from));
        put("cubes", self.cubes.map(Param::from));
    }
}

struct Runner<'a> {
    params: &'a SuiteParams,
    report: VerificationReport,
}

impl Runner<'_> {
    /// Runs a group of checks on the stream of `key`; a failing computation
    /// turns every expected name into an errored check.
    fn group(&mut self, key: &str, names: &[&str], f: impl FnOnce(&mut SeededRng, u64) -> Result<Vec<Check>>) {
        let seed = stream_seed(self.params.seed, key);
        let mut rng = seeded(seed);
        match f(&mut rng, seed) {
            Ok(checks) => {
                for c in checks {
                    self.push(c);
                }
            }
            Err(e) => {
                for n in names {
                    self.push(Check::errored(*n, &e));
                }
            }
        }
    }

    fn one(&mut self, name: &str, f: impl FnOnce(&mut SeededRng, u64) -> Result<Check>) {
        self.group(name, &[name], |rng, seed| Ok(vec![f(rng, seed)?]));
    }

    fn push(&mut self, c: Check) {
        let c = match self.params.tol {
            Some(t) => c.with_tolerance(t),
            None => c,
        };
        self.report.push(c);
    }
}

/// Runs one suite (or `"all"`) and returns the report with checks sorted by name.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<VerificationReport> {
    params.validate()?;
    let names: Vec<&str> = match name {
        "all" => SUITE_NAMES.to_vec(),
        s if SUITE_NAMES.contains(&s) => vec![s],
        other => return Err(Error::InvalidParameter(format!("unknown suite '{other}'"))),
    };
    let mut run = Runner {
        params,
        report: VerificationReport::new(name, params.seed),
    };
    params.record(&mut run.report);
    for s in names {
        match s {
            "embedding" => embedding_suite(&mut run),
            "adjoint" => adjoint_suite(&mut run),
            "schatten" => schatten_suite(&mut run),
            "ks2" => ks2_suite(&mut run),
            _ => integral_suite(&mut run),
        }
    }
    let mut report = run.report;
    report.sort();
    Ok(report)
}

fn rel(x: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        x / scale
    } else {
        x
    }
}

/// Random element of the span of the basis with decaying complex coefficients.
fn random_span_element(rng: &mut SeededRng, space: &EmbeddingSpace) -> Result<(Vec<Complex64>, GridFunction)> {
    let decay: f64 = rng.random_range(0.0..1.0);
    let c: Vec<Complex64> = (0..space.dim())
        .map(|k| complex_normal(rng) * (1.0 + k as f64).powf(-decay))
        .collect();
    let u = space.reconstruct(&c)?;
    Ok((c, u))
}

fn space_for(p: f64, params: &SuiteParams) -> Result<EmbeddingSpace> {
    Ok(EmbeddingSpace::new(fourier_sbasis(params.basis_dim(), p, params.basis_grid())?))
}

fn embedding_suite(run: &mut Runner) {
    let params = run.params;
    let n = params.basis_dim();
    let weight_tail = Weights::dyadic(n).dyadic_tail();
    run.report.tail_bounds.insert("weight_tail".into(), weight_tail);

    run.one("eigen_sorted_real", |rng, _| {
        let trials = params.trials(20);
        let mut worst = 0.0f64;
        for _ in 0..trials {
            let m = random_hermitian(rng, n);
            let e = hermitian_eigen(&m, 1e-12)?;
            for w in e.values.windows(2) {
                worst = worst.max(w[1] - w[0]);
            }
            worst = worst.max(rel((&e.reconstruct() - &m).frobenius_norm(), m.frobenius_norm()) * 1e-2);
        }
        Ok(Check::assert("eigen_sorted_real", worst, 1e-12, trials as u64).param("n", n))
    });

    run.one("svd_adjoint_invariance", |rng, _| {
        let trials = params.trials(20);
        let mut worst = 0.0f64;
        for _ in 0..trials {
            let m = random_complex_matrix(rng, n, n);
            let a = svd(&m, 1e-14)?.sigma;
            let b = svd(&m.adjoint(), 1e-14)?.sigma;
            let top = a.first().copied().unwrap_or(0.0);
            for (x, y) in a.iter().zip(&b) {
                worst = worst.max(rel((x - y).abs(), top));
            }
        }
        Ok(Check::assert("svd_adjoint_invariance", worst, 1e-12, trials as u64).param("n", n))
    });

    run.one("opnorm_two_sigma", |rng, seed| {
        let trials = params.trials(20);
        let mut worst = 0.0f64;
        for t in 0..trials {
            let m = random_complex_matrix(rng, 8, 8);
            let top = svd(&m, 1e-14)?.sigma[0];
            let est = opnorm_p_estimate(&m, 2.0, 4, seed.wrapping_add(t as u64))?;
            worst = worst.max(rel((est - top).abs(), top));
        }
        Ok(Check::assert("opnorm_two_sigma", worst, 1e-8, trials as u64))
    });

    run.one("expm_commuting", |rng, _| {
        let trials = params.trials(20);
        let mut worst = 0.0f64;
        for _ in 0..trials {
            // diagonal pairs and polynomials in one matrix both commute
            let d1: Vec<Complex64> = random_complex_vector(rng, n);
            let d2: Vec<Complex64> = random_complex_vector(rng, n);
            let a = ComplexMatrix::from_fn(n, n, |i, j| if i == j { d1[i] } else { Complex64::new(0.0, 0.0) });
            let b = ComplexMatrix::from_fn(n, n, |i, j| if i == j { d2[i] } else { Complex64::new(0.0, 0.0) });
            let g = random_complex_matrix(rng, n, n).scale_real(0.5 / (n as f64).sqrt());
            let g2 = &g.scale_real(0.3) + &g.matmul(&g).scale_real(0.2);
            for (x, y) in [(&a, &b), (&g, &g2)] {
                let lhs = matrix_exp(&(x + y))?;
                let rhs = matrix_exp(x)?.matmul(&matrix_exp(y)?);
                worst = worst.max(rel((&lhs - &rhs).frobenius_norm(), lhs.frobenius_norm()));
            }
        }
        Ok(Check::assert("expm_commuting", worst, 1e-10, 2 * trials as u64).param("n", n))
    });

    run.group("duality", &["duality_identity", "duality_homogeneity"], |rng, _| {
        let trials = params.trials(200);
        let (mut ident, mut homog) = (0.0f64, 0.0f64);
        let sweep = params.p_sweep();
        for &p in &sweep {
            let space = space_for(p, params)?;
            let q = crate::numerics::conjugate_exponent(p);
            for _ in 0..trials {
                let (_, u) = random_span_element(rng, &space)?;
                let j = duality_map(&u, p)?;
                let nu2 = lp_norm(&u, p)?.powi(2);
                ident = ident
                    .max(rel((pairing(&u, &j)? - nu2).norm(), nu2))
                    .max(rel((lp_norm(&j, q)?.powi(2) - nu2).abs(), nu2));
                let c = complex_normal(rng);
                let lhs = duality_map(&u.scale(c), p)?;
                let rhs = j.scale(c);
                homog = homog.max(rel(lp_norm(&lhs.sub(&rhs)?, q)?, lp_norm(&lhs, q)?));
            }
        }
        let samples = (trials * sweep.len()) as u64;
        Ok(vec![
            Check::assert("duality_identity", ident, 1e-6, samples).param("n", n),
            Check::assert("duality_homogeneity", homog, 1e-8, samples),
        ])
    });

    run.one("projection_idempotent", |rng, _| {
        let trials = params.trials(50);
        let space = space_for(params.p_not_two(), params)?;
        let grid = space.basis().grid().clone();
        let mut worst = 0.0f64;
        for _ in 0..trials {
            let u = grid.map(|_| complex_normal(rng));
            let once = project(&u, space.basis())?;
            let twice = project(&once, space.basis())?;
            worst = worst.max(rel(twice.sub(&once)?.max_abs(), once.max_abs()));
        }
        Ok(Check::assert("projection_idempotent", worst, 1e-10, trials as u64))
    });

    run.group(
        "norm_chain",
        &["norm_chain_functional", "norm_chain_b", "norm_chain_middle"],
        |rng, _| {
            let trials = params.trials(500);
            let (mut func, mut bnorm, mut middle) = (0.0f64, 0.0f64, 0.0f64);
            let mut max_dual = 0.0f64;
            let sweep = params.p_sweep();
            for &p in &sweep {
                let space = space_for(p, params)?;
                max_dual = space.basis().dual_norms()?.into_iter().fold(max_dual, f64::max);
                for _ in 0..trials {
                    let (_, u) = random_span_element(rng, &space)?;
                    let u = u.scale(Complex64::new(1.0 / space.b_norm(&u)?, 0.0));
                    let c = coefficients(&u, space.basis())?;
                    let sup = c.iter().fold(0.0f64, |m, z| m.max(z.norm()));
                    let h = weighted_norm(&c, space.weights());
                    func = func.max(rel((h - sup).max(0.0), sup));
                    bnorm = bnorm.max(h - 1.0);
                    middle = middle.max(sup);
                }
            }
            let samples = (trials * sweep.len()) as u64;
            Ok(vec![
                Check::assert("norm_chain_functional", func, 1e-12, samples),
                Check::assert("norm_chain_b", bnorm.max(0.0), 5e-7, samples).param("largest_h_minus_b", bnorm),
                Check::measured("norm_chain_middle", middle, samples).param("max_dual_norm", max_dual),
            ])
        },
    );

    run.one("gram_diagonal", |_, _| {
        let space = space_for(params.p_not_two(), params)?;
        let g = gram_matrix(&space)?;
        let mut off = 0.0f64;
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                if i != j {
                    off = off.max(g[(i, j)].norm());
                }
            }
        }
        Ok(Check::assert("gram_diagonal", off, 1e-8, 1).param("grid", space.basis().grid().resolution()))
    });

    run.one("jb_linearity", |rng, _| {
        let trials = params.trials(100);
        let space = space_for(params.p_not_two(), params)?;
        let mut worst = 0.0f64;
        for _ in 0..trials {
            let (_, u) = random_span_element(rng, &space)?;
            let (_, v) = random_span_element(rng, &space)?;
            let (cw, _) = random_span_element(rng, &space)?;
            let a = complex_normal(rng);
            let ju = jb_apply(&u, &space)?;
            let jv = jb_apply(&v, &space)?;
            let sum = jb_apply(&u.add(&v)?, &space)?.evaluate_coefficients(&cw)?;
            let parts = ju.add(&jv)?.evaluate_coefficients(&cw)?;
            let scaled = jb_apply(&u.scale(a), &space)?.evaluate_coefficients(&cw)?;
            let expect = ju.evaluate_coefficients(&cw)? * a.conj();
            let scale = weighted_norm(&cw, space.weights()) * (h_norm(&u, &space)? + h_norm(&v, &space)?) * (1.0 + a.norm());
            worst = worst.max(rel((sum - parts).norm(), scale)).max(rel((scaled - expect).norm(), scale));
        }
        Ok(Check::assert("jb_linearity", worst, 1e-12, trials as u64))
    });

    run.one("jb_norm_bound", |rng, seed| {
        let trials = params.trials(100);
        let space = space_for(params.p_not_two(), params)?;
        let mut worst = f64::NEG_INFINITY;
        for t in 0..trials {
            let (_, u) = random_span_element(rng, &space)?;
            let u = u.scale(Complex64::new(1.0 / space.b_norm(&u)?, 0.0));
            let b = jb_norm_bound(&u, &space, 16, seed.wrapping_add(t as u64))?;
            worst = worst.max(b.functional_estimate - b.h_norm);
        }
        Ok(Check::assert("jb_norm_bound", worst.max(0.0), 1e-8, trials as u64).param("largest_excess", worst))
    });

    run.group(
        "gram_schmidt",
        &["gram_schmidt_orthogonal", "gram_schmidt_unit_b", "biorthonormal_pairing"],
        |rng, _| {
            let trials = params.trials(20);
            let space = space_for(params.p_not_two(), params)?;
            let (mut orth, mut unit, mut pair) = (0.0f64, 0.0f64, 0.0f64);
            for _ in 0..trials {
                let count = rng.random_range(1..=space.dim());
                let vs: Vec<GridFunction> = (0..count)
                    .map(|_| random_span_element(rng, &space).map(|x| x.1))
                    .collect::<Result<_>>()?;
                let bo = gram_schmidt_biorthonormal(&vs, &space)?;
                for i in 0..count {
                    let ni = h_norm(&bo.phi[i], &space)?;
                    for j in 0..i {
                        let nj = h_norm(&bo.phi[j], &space)?;
                        orth = orth.max(rel(h_inner(&bo.phi[i], &bo.phi[j], &space)?.norm(), ni * nj));
                    }
                    unit = unit.max((space.b_norm(&bo.psi[i])? - 1.0).abs());
                }
                let m = bo.pairing_matrix(&space)?;
                pair = pair.max((&m - &ComplexMatrix::identity(count)).max_abs());
            }
            Ok(vec![
                Check::assert("gram_schmidt_orthogonal", orth, 1e-8, trials as u64),
                Check::assert("gram_schmidt_unit_b", unit, 1e-8, trials as u64),
                Check::assert("biorthonormal_pairing", pair, 1e-8, trials as u64),
            ])
        },
    );
}

/// Self-adjoint operator whose H-matrix has repeated eigenvalues.
fn clustered_selfadjoint(rng: &mut SeededRng, w: &Weights) -> Result<BOperator> {
    let n = w.len();
    let q = svd(&random_complex_matrix(rng, n, n), 1e-14)?.u;
    let levels = rng.random_range(1..=n.max(1));
    let vals: Vec<f64> = (0..n).map(|i| (i % levels) as f64 - 1.0).collect();
    let h = q.scale_rows_cols(&vec![1.0; n], &vals).matmul(&q.adjoint());
    BOperator::from_h_matrix(&(&h + &h.adjoint()).scale_real(0.5), w.clone())
}

fn adjoint_suite(run: &mut Runner) {
    let params = run.params;
    let dims = params.dims();

    run.group(
        "adjoint_algebra",
        &[
            "adjoint_homogeneity",
            "adjoint_involution",
            "adjoint_additivity",
            "adjoint_product",
            "adjoint_ata_selfadjoint",
        ],
        |rng, _| {
            let trials = params.trials(500);
            let mut worst = [0.0f64; 5];
            for &n in &dims {
                let w = Weights::dyadic(n);
                for _ in 0..trials {
                    let a = random_operator(rng, &w);
                    let b = random_operator(rng, &w);
                    let v = adjoint_algebra_violations(&a, &b, complex_normal(rng))?;
                    for (x, y) in worst.iter_mut().zip(v) {
                        *x = x.max(y);
                    }
                }
            }
            let samples = (trials * dims.len()) as u64;
            let names = [
                "adjoint_homogeneity",
                "adjoint_involution",
                "adjoint_additivity",
                "adjoint_product",
                "adjoint_ata_selfadjoint",
            ];
            Ok(names
                .iter()
                .zip(worst)
                .map(|(name, x)| Check::assert(*name, x, 1e-10, samples).param("dims", format!("{dims:?}")))
                .collect())
        },
    );

    run.one("adjoint_identity", |rng, _| {
        let trials = params.trials(1000);
        let mut worst = 0.0f64;
        for t in 0..trials {
            let n = dims[t % dims.len()];
            let w = Weights::dyadic(n);
            let a = random_operator(rng, &w);
            let u = random_complex_vector(rng, n);
            let v = random_complex_vector(rng, n);
            worst = worst.max(adjoint_identity_violation(&a, &u, &v)?);
        }
        Ok(Check::assert("adjoint_identity", worst, 1e-10, trials as u64))
    });

    run.one("ata_spectrum", |rng, _| {
        let trials = params.trials(100);
        let mut worst = 0.0f64;
        for t in 0..trials {
            let n = dims[t % dims.len()];
            let a = random_operator(rng, &Weights::dyadic(n));
            let ata = a.adjoint().compose(&a)?;
            let scale = ata.h_norm()?.max(f64::MIN_POSITIVE);
            for z in general_eigenvalues(ata.matrix())? {
                worst = worst.max(z.im.abs() / scale).max((-z.re / scale).max(0.0));
            }
        }
        Ok(Check::assert("ata_spectrum", worst, 1e-10, trials as u64))
    });

    run.one("self_conjugacy_agreement", |rng, _| {
        let per_class = params.trials(200);
        let mut disagree = 0u64;
        for t in 0..2 * per_class {
            let n = dims[t % dims.len()];
            let w = Weights::dyadic(n);
            let a = if t < per_class {
                random_selfadjoint(rng, &w)
            } else {
                random_operator(rng, &w)
            };
            let scale = svd(&a.h_matrix(), 1e-14)?.sigma[0].max(1.0);
            let tgrid: Vec<f64> = [0.25, 0.5, 1.0].iter().map(|t| t / scale).collect();
            if is_naturally_selfadjoint(&a, 1e-10) != self_conjugacy_check(&a, &tgrid, 1e-8) {
                disagree += 1;
            }
        }
        Ok(Check::assert("self_conjugacy_agreement", disagree as f64, 0.0, 2 * per_class as u64))
    });

    run.group(
        "lax",
        &["lax_point_spectrum", "lax_constant", "lax_cstar_identity"],
        |rng, seed| {
            let trials = params.trials(200);
            let p = params.p_not_two();
            let (mut gap, mut kmax, mut kmin, mut cstar) = (0.0f64, 0.0f64, f64::INFINITY, 0.0f64);
            for t in 0..trials {
                let n = dims[t % dims.len()];
                let w = Weights::dyadic(n);
                let s = random_selfadjoint(rng, &w);
                let m = lax_measure(&s, p, 2, seed.wrapping_add(t as u64), 1e-10)?;
                gap = gap.max(m.spectrum_gap);
                kmax = kmax.max(m.k_hat);
                kmin = kmin.min(m.k_hat);
                let g = random_operator(rng, &w);
                let ata = g.adjoint().compose(&g)?;
                let h = g.h_norm()?;
                cstar = cstar.max(rel((ata.h_norm()? - h * h).abs(), h * h));
            }
            Ok(vec![
                Check::assert("lax_point_spectrum", gap, 1e-8, trials as u64),
                Check::measured("lax_constant", kmax, trials as u64)
                    .param("p", p)
                    .param("k_hat_min", kmin),
                Check::assert("lax_cstar_identity", cstar, 1e-8, trials as u64),
            ])
        },
    );

    run.group("norm_ratio", &["norm_ratio_b", "cstar_ratio_b"], |rng, seed| {
        let trials = params.trials(50);
        let p = params.p_not_two();
        let (mut lo, mut hi, mut cs) = (f64::INFINITY, 0.0f64, 0.0f64);
        for t in 0..trials {
            let n = dims[t % dims.len()];
            let a = random_operator(rng, &Weights::dyadic(n));
            let m = norm_inequality(&a, p, 2, seed.wrapping_add(t as u64))?;
            lo = lo.min(m.adjoint_ratio_b());
            hi = hi.max(m.adjoint_ratio_b());
            cs = cs.max(m.cstar_ratio_b());
        }
        Ok(vec![
            Check::measured("norm_ratio_b", hi, trials as u64).param("p", p).param("ratio_min", lo),
            Check::measured("cstar_ratio_b", cs, trials as u64).param("p", p),
        ])
    });

    run.one("polar_reconstruction", |rng, _| {
        let trials = params.trials(100);
        let mut worst = 0.0f64;
        for t in 0..trials {
            let n = dims[t % dims.len()];
            let a = random_operator(rng, &Weights::dyadic(n));
            let pd = polar_decompose(&a, 1e-12)?;
            worst = worst.max(rel(h_distance(&a, &pd.u.compose(&pd.t)?)?, a.h_frobenius()));
        }
        Ok(Check::assert("polar_reconstruction", worst, 1e-9, trials as u64))
    });

    run.group(
        "spectral",
        &["spectral_reconstruction", "projection_axioms"],
        |rng, _| {
            let trials = params.trials(100);
            let (mut recon, mut axioms) = (0.0f64, 0.0f64);
            for t in 0..trials {
                let n = dims[t % dims.len()];
                let w = Weights::dyadic(n);
                let a = if t % 2 == 0 {
                    random_selfadjoint(rng, &w)
                } else {
                    clustered_selfadjoint(rng, &w)?
                };
                let sd = spectral_decompose(&a, 1e-10)?;
                recon = recon.max(rel(h_distance(&sd.reconstruct(), &a)?, a.h_frobenius()));
                axioms = axioms.max(sd.axiom_defect());
            }
            Ok(vec![
                Check::assert("spectral_reconstruction", recon, 1e-8, trials as u64),
                Check::assert("projection_axioms", axioms, 1e-8, trials as u64),
            ])
        },
    );

    run.one("minmax_eigenvalues", |rng, seed| {
        let trials = params.trials(50);
        let mut worst = 0.0f64;
        for t in 0..trials {
            let n = dims[t % dims.len()];
            let a = random_selfadjoint(rng, &Weights::dyadic(n));
            let k = rng.random_range(1..=n);
            let direct = hermitian_eigen(&a.h_matrix(), 1e-10)?.values[k - 1];
            let mm = minmax_eigenvalue(&a, k, 3, seed.wrapping_add(t as u64))?;
            worst = worst.max((mm - direct).abs());
        }
        Ok(Check::assert("minmax_eigenvalues", worst, 1e-6, trials as u64))
    });

    run.one("rayleigh_gap", |rng, _| {
        let trials = params.trials(50);
        let p = params.p_not_two();
        let space = space_for(p, params)?;
        let mut worst = 0.0f64;
        for _ in 0..trials {
            let a = random_selfadjoint(rng, space.weights());
            let (_, psi) = random_span_element(rng, &space)?;
            worst = worst.max(rayleigh_compare(&a, &psi, &space)?.gap);
        }
        Ok(Check::measured("rayleigh_gap", worst, trials as u64).param("p", p))
    });
}

/// W-unitary operator `exp(iK)` with `K` naturally self-adjoint.
fn random_unitary(rng: &mut SeededRng, w: &Weights) -> Result<BOperator> {
    let k = random_hermitian(rng, w.len());
    BOperator::from_h_matrix(&matrix_exp(&k.scale(Complex64::new(0.0, 1.0)))?, w.clone())
}

fn schatten_suite(run: &mut Runner) {
    let params = run.params;
    let dims = params.dims();
    let ps = [1.0, 2.0, 4.0];

    run.group("schatten_paths", &["schatten_two_path", "singular_value_paths"], |rng, _| {
        let trials = params.trials(500);
        let (mut two, mut sv) = (0.0f64, 0.0f64);
        for t in 0..trials {
            let n = dims[t % dims.len()];
            let a = random_operator(rng, &Weights::dyadic(n));
            for p in ps {
                let (b, m) = schatten_norm_paths(&a, p)?;
                two = two.max(rel((b - m).abs(), m));
            }
            let (x, y) = singular_value_paths(&a)?;
            sv = sv.max(path_discrepancy(&x, &y));
        }
        Ok(vec![
            Check::assert("schatten_two_path", two, 1e-9, (trials * ps.len()) as u64),
            Check::assert("singular_value_paths", sv, 1e-10, trials as u64),
        ])
    });

    run.one("schatten_monotone", |rng, _| {
        let trials = params.trials(100);
        let sweep = [1.0, 1.5, 2.0, 3.0, 4.0, f64::INFINITY];
        let mut worst = 0.0f64;
        for t in 0..trials {
            let n = dims[t % dims.len()];
            let a = random_operator(rng, &Weights::dyadic(n));
            let norms: Vec<f64> = sweep.iter().map(|&p| schatten_norm(&a, p)).collect::<Result<_>>()?;
            for w in norms.windows(2) {
                worst = worst.max(rel((w[1] - w[0]).max(0.0), w[0]));
            }
        }
        Ok(Check::assert("schatten_monotone", worst, 1e-12, trials as u64))
    });

    run.one("schatten_unitary_invariance", |rng, _| {
        let trials = params.trials(100);
        let mut worst = 0.0f64;
        for t in 0..trials {
            let n = dims[t % dims.len()];
            let w = Weights::dyadic(n);
            let a = random_operator(rng, &w);
            let u = random_unitary(rng, &w)?;
            let v = random_unitary(rng, &w)?;
            let uav = u.compose(&a)?.compose(&v)?;
            for p in ps {
                let x = schatten_norm(&a, p)?;
                worst = worst.max(rel((schatten_norm(&uav, p)? - x).abs(), x));
            }
        }
        Ok(Check::assert("schatten_unitary_invariance", worst, 1e-9, trials as u64))
    });

    run.group("weyl_family", &["weyl", "horn", "lalesco", "lidskii"], |rng, _| {
        let trials = params.trials(500);
        let (mut weyl, mut horn, mut lal, mut lid) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for t in 0..trials {
            let n = dims[t % dims.len()];
            let w = Weights::dyadic(n);
            let a = random_operator(rng, &w);
            let b = random_operator(rng, &w);
            let phi = ps[t % ps.len()];
            let (l, r) = weyl_sums(&a, |x| x.powf(phi))?;
            weyl = weyl.max(excess(l, r));
            let (l, r) = horn_sums(&a, &b, |x| x.powf(phi))?;
            horn = horn.max(excess(l, r));
            let (l, r) = lalesco_sums(&a)?;
            lal = lal.max(excess(l, r));
            lid = lid.max(lidskii_defect(&a)?);
        }
        let s = trials as u64;
        Ok(vec![
            Check::assert("weyl", weyl, 1e-9, s),
            Check::assert("horn", horn, 1e-9, s),
            Check::assert("lalesco", lal, 1e-9, s),
            Check::assert("lidskii", lid, 1e-9, s),
        ])
    });

    run.group("b_model", &["pietsch_cp_b", "nuclear_norm_upper"], |rng, _| {
        let trials = params.trials(20);
        let p = params.p_not_two();
        let (mut cp, mut nuc) = (0.0f64, 0.0f64);
        for t in 0..trials {
            let n = dims[t % dims.len()];
            let a = random_operator(rng, &Weights::dyadic(n));
            let scale = schatten_norm(&a, 1.0)?;
            cp = cp.max(pietsch_cp(&a, 1.0, Metric::BEstimate, p)? / scale);
            nuc = nuc.max(nuclear_norm_upper(&a, p)? / scale);
        }
        Ok(vec![
            Check::measured("pietsch_cp_b", cp, trials as u64)
                .param("p", p)
                .param("normalised_by", "trace norm"),
            Check::measured("nuclear_norm_upper", nuc, trials as u64)
                .param("p", p)
                .param("normalised_by", "trace norm"),
        ])
    });
}

/// The eight leading pairs as listed, kept apart from the library constant.
const LISTED_PAIRS: [(u64, u64); 8] = [(1, 1), (2, 1), (1, 2), (1, 3), (2, 2), (3, 1), (3, 2), (2, 3)];

fn random_step_1d(rng: &mut SeededRng, resolution: usize) -> Result<GridFunction> {
    let pieces = rng.random_range(1..=16);
    let mut cuts: Vec<f64> = (0..pieces - 1).map(|_| rng.random_range(0.0..1.0)).collect();
    cuts.sort_by(f64::total_cmp);
    let heights: Vec<Complex64> = (0..pieces).map(|_| complex_normal(rng)).collect();
    GridFunction::from_fn(vec![Interval::unit()], resolution, |x| heights[cuts.partition_point(|&c| c <= x[0])])
}

fn random_step_2d(rng: &mut SeededRng, resolution: usize) -> Result<GridFunction> {
    let rects: Vec<([f64; 4], Complex64)> = (0..rng.random_range(1..=4))
        .map(|_| {
            let (a, b): (f64, f64) = (rng.random_range(0.0..1.0), rng.random_range(0.0..1.0));
            let (c, d): (f64, f64) = (rng.random_range(0.0..1.0), rng.random_range(0.0..1.0));
            ([a.min(b), a.max(b), c.min(d), c.max(d)], complex_normal(rng))
        })
        .collect();
    GridFunction::from_fn(vec![Interval::unit(); 2], resolution, |x| {
        rects
            .iter()
            .filter(|(r, _)| x[0] >= r[0] && x[0] < r[1] && x[1] >= r[2] && x[1] < r[3])
            .map(|(_, h)| *h)
            .sum()
    })
}

fn ks2_suite(run: &mut Runner) {
    let params = run.params;
    let k = params.cubes();
    let res1 = params.grid.unwrap_or(1024);
    let res2 = 64;

    run.one("pairing_prefix", |_, _| {
        let mismatches = LISTED_PAIRS
            .iter()
            .enumerate()
            .filter(|(i, p)| pairing_order(*i as u64 + 1).ok() != Some(**p))
            .count();
        Ok(Check::assert("pairing_prefix", mismatches as f64, 0.0, 8))
    });

    run.one("pairing_bijection", |_, _| {
        let limit = 10_000u64;
        let mut seen = std::collections::HashSet::new();
        let mut bad = 0u64;
        for i in 1..=limit {
            let pair = pairing_order(i)?;
            if pairing_index(pair.0, pair.1)? != i || !seen.insert(pair) {
                bad += 1;
            }
        }
        Ok(Check::assert("pairing_bijection", bad as f64, 0.0, limit))
    });

    run.one("centers_distinct", |_, _| {
        let mut dup = 0u64;
        for n in [1usize, 2] {
            let b = vec![Interval::unit(); n];
            let mut seen = std::collections::HashSet::new();
            for i in 1..=1000u64 {
                let c = rational_center(n, i, &b)?;
                if !seen.insert(c.iter().map(|x| x.to_bits()).collect::<Vec<_>>()) {
                    dup += 1;
                }
            }
        }
        Ok(Check::assert("centers_distinct", dup as f64, 0.0, 2000))
    });

    run.group(
        "ks2_bounds",
        &["embedding_bound_q", "embedding_bound_inf", "ks2_sup_bound", "fundamentality"],
        |rng, _| {
            let (sys1, sys2) = (&CubeSystem::unit(1, k)?, &CubeSystem::unit(2, k)?);
            let trials = params.trials(200);
            let qs: Vec<f64> = params.q.map_or_else(|| vec![1.0, 2.0, 4.0], |q| vec![q]);
            let (mut eq, mut einf, mut sup, mut silent) = (0.0f64, 0.0f64, 0.0f64, 0u64);
            for t in 0..trials {
                let (f, sys) = if t % 4 == 3 {
                    (random_step_2d(rng, res2)?, sys2)
                } else {
                    (random_step_1d(rng, res1)?, sys1)
                };
                for &q in &qs {
                    let (_, _, ex) = embedding_bound(&f, q, k, sys)?;
                    let slack = if q.is_infinite() { &mut einf } else { &mut eq };
                    *slack = slack.max(ex);
                }
                let (_, _, ex) = embedding_bound(&f, f64::INFINITY, k, sys)?;
                einf = einf.max(ex);
                let fs = functionals(&f, k, sys)?;
                let s = fs.iter().fold(0.0f64, |m, z| m.max(z.norm()));
                sup = sup.max(rel((ks2_norm_from(&fs) - s).max(0.0), s));
                let l1 = lp_norm(&f, 1.0)?;
                if l1 > 0.0 && fs.iter().all(|z| z.norm() <= 1e-14 * l1) {
                    silent += 1;
                }
            }
            let s = trials as u64;
            Ok(vec![
                Check::assert("embedding_bound_q", eq, 1e-9, s * qs.len() as u64).param("cubes", k),
                Check::assert("embedding_bound_inf", einf, 1e-9, s).param("cubes", k),
                Check::assert("ks2_sup_bound", sup, 1e-12, s),
                Check::assert("fundamentality", silent as f64, 0.0, s).param("cubes", k),
            ])
        },
    );

    let mut tail = None;
    run.group("ks2_functionals", &["fk_l1_bound", "ks2_truncation_monotone"], |rng, _| {
        let sys1 = &CubeSystem::unit(1, k)?;
        let trials = params.trials(500);
        let (mut l1b, mut mono, mut tb) = (0.0f64, 0u64, 0.0f64);
        for _ in 0..trials {
            let f = random_step_1d(rng, res1)?;
            let l1 = lp_norm(&f, 1.0)?;
            let fs = functionals(&f, k, sys1)?;
            for z in &fs {
                l1b = l1b.max(rel((z.norm() - l1).max(0.0), l1));
            }
            let mut acc = 0.0f64;
            let mut prev = 0.0f64;
            for (i, z) in fs.iter().enumerate() {
                acc += CubeSystem::weight(i as u64 + 1) * z.norm_sqr();
                let cur = acc.sqrt();
                if cur < prev {
                    mono += 1;
                }
                prev = cur;
            }
            tb = tb.max(tail_bound(&fs));
        }
        tail = Some(tb);
        Ok(vec![
            Check::assert("fk_l1_bound", l1b, 1e-12, trials as u64 * k as u64),
            Check::assert("ks2_truncation_monotone", mono as f64, 0.0, trials as u64).param("tail_bound", tb),
        ])
    });
    if let Some(tb) = tail {
        run.report.tail_bounds.insert("ks2_tail".into(), tb);
    }

    run.one("ks2_hermitian_psd", |rng, _| {
        let sys1 = &CubeSystem::unit(1, k)?;
        let sets = params.trials(20);
        let mut worst = 0.0f64;
        for _ in 0..sets {
            let m = 8;
            let fs: Vec<Vec<Complex64>> = (0..m)
                .map(|_| functionals(&random_step_1d(rng, res1)?, k, sys1))
                .collect::<Result<_>>()?;
            let g = ComplexMatrix::from_fn(m, m, |i, j| {
                fs[i]
                    .iter()
                    .zip(&fs[j])
                    .enumerate()
                    .map(|(idx, (a, b))| a * b.conj() * CubeSystem::weight(idx as u64 + 1))
                    .sum()
            });
            let scale = g.max_abs().max(f64::MIN_POSITIVE);
            worst = worst.max(g.hermitian_part_error() / scale);
            let e = hermitian_eigen(&g, 1e-9)?;
            worst = worst.max((-e.values[m - 1] / scale).max(0.0));
        }
        Ok(Check::assert("ks2_hermitian_psd", worst, 1e-10, sets as u64))
    });

    run.one("weak_strong", |_, _| {
        let sys = &CubeSystem::unit(1, k)?;
        let r = weak_strong_demo(64, k, sys)?;
        Ok(r.checks.into_iter().next().expect("one check"))
    });
}

fn integral_suite(run: &mut Runner) {
    let params = run.params;
    let m = params.grid.unwrap_or(1024);
    let alpha = params.alpha();
    let minus_one = Complex64::new(-1.0, 0.0);

    run.group("hilbert_multiplier", &["hilbert_isometry", "hilbert_square"], |rng, _| {
        let trials = params.trials(200);
        let (mut iso, mut sq) = (0.0f64, 0.0f64);
        for t in 0..trials {
            let f = if t % 2 == 0 {
                let modes = rng.random_range(1..=64);
                random_band_limited(rng, m, modes)?
            } else {
                // white noise with the zero and Nyquist modes removed
                let raw = PeriodicSignal::new(random_complex_vector(rng, m))?;
                hilbert_multiplier(&hilbert_multiplier(&raw)).scale(minus_one)
            };
            let hf = hilbert_multiplier(&f);
            let nf = f.l2_norm();
            iso = iso.max((hf.l2_norm() / nf - 1.0).abs());
            sq = sq.max(hilbert_multiplier(&hf).sub(&f.scale(minus_one))?.l2_norm() / nf);
        }
        Ok(vec![
            Check::assert("hilbert_isometry", iso, 1e-12, trials as u64).param("m", m),
            Check::assert("hilbert_square", sq, 1e-12, trials as u64).param("m", m),
        ])
    });

    run.one("hilbert_skew_adjoint", |rng, _| {
        let trials = params.trials(200);
        let mut worst = 0.0f64;
        for _ in 0..trials {
            let f = PeriodicSignal::new(random_complex_vector(rng, m))?;
            let g = PeriodicSignal::new(random_complex_vector(rng, m))?;
            worst = worst.max(adjoint_relation_violation(SignalOp::Multiplier, &f, &g, -1.0)?);
        }
        Ok(Check::assert("hilbert_skew_adjoint", worst, SignalOp::Multiplier.adjoint_tolerance(), trials as u64))
    });

    run.one("hilbert_pv_skew_adjoint", |rng, _| {
        let trials = params.trials(20);
        let op = SignalOp::PrincipalValue { eps_cells: 4 };
        let mut worst = 0.0f64;
        for _ in 0..trials {
            let f = PeriodicSignal::new(random_complex_vector(rng, m))?;
            let g = PeriodicSignal::new(random_complex_vector(rng, m))?;
            worst = worst.max(adjoint_relation_violation(op, &f, &g, -1.0)?);
        }
        Ok(Check::assert("hilbert_pv_skew_adjoint", worst, op.adjoint_tolerance(), trials as u64))
    });

    run.one("pv_multiplier_gap", |_, _| {
        Ok(Check::assert("pv_multiplier_gap", pv_gap(1024, 4)?, 2e-2, 1)
            .param("m", 1024usize)
            .param("eps_cells", 4usize))
    });

    run.one("pv_convergence_order", |_, _| {
        let (gaps, orders) = pv_convergence(512, 4, 5)?;
        let min = orders.iter().copied().fold(f64::INFINITY, f64::min);
        let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.9}")).collect::<Vec<_>>().join(" ");
        Ok(Check::assert("pv_convergence_order", (1.0 - min).max(0.0), 1e-3, orders.len() as u64)
            .param("min_order", min)
            .param("orders", fmt(&orders))
            .param("gaps", fmt(&gaps))
            .param("m_range", "512-8192")
            .param("eps_cells", 4usize))
    });

    run.group("odd_kernel", &["odd_kernel_shared_path", "odd_kernel_linearity"], |rng, _| {
        let f = PeriodicSignal::new(random_complex_vector(rng, m))?;
        let eps = 4.0 / m as f64;
        let pv = hilbert_pv(&f, eps)?;
        let shared = odd_kernel_operator(&f, OddKernel::new(-1.0 / std::f64::consts::PI, 1.0 / std::f64::consts::PI)?, eps)?;
        let bitwise = pv
            .samples()
            .iter()
            .zip(shared.samples())
            .filter(|(a, b)| a.re.to_bits() != b.re.to_bits() || a.im.to_bits() != b.im.to_bits())
            .count();
        let two = odd_kernel_operator(&f, OddKernel::new(2.0, -2.0)?, eps)?;
        let expect = pv.scale(Complex64::new(-2.0 * std::f64::consts::PI, 0.0));
        let lin = two.sub(&expect)?.sup_norm() / expect.sup_norm().max(f64::MIN_POSITIVE);
        Ok(vec![
            Check::assert("odd_kernel_shared_path", bitwise as f64, 0.0, m as u64),
            Check::assert("odd_kernel_linearity", lin, 1e-12, m as u64),
        ])
    });

    run.group("hilbert_lp", &["hilbert_cp", "hilbert_cp_stable", "hilbert_l2_constant"], |_, seed| {
        let trials = params.trials(250);
        let p = params.p.unwrap_or(4.0);
        let (c_t, c_2t) = empirical_lp_constant(SignalOp::Multiplier, p, m, trials, seed)?;
        let (_, c2) = empirical_lp_constant(SignalOp::Multiplier, 2.0, m, trials.min(50), seed)?;
        let growth = if c_t > 0.0 && c_2t.is_finite() { c_2t / c_t } else { f64::INFINITY };
        Ok(vec![
            Check::measured("hilbert_cp", c_2t, 2 * trials as u64)
                .param("p", p)
                .param("cp_half", c_t)
                .param("probes", "real mean-zero trig polynomials, 1-16 modes"),
            Check::assert("hilbert_cp_stable", growth, STABILITY_FACTOR, 2 * trials as u64).param("p", p),
            Check::assert("hilbert_l2_constant", (c2 - 1.0).abs(), 1e-10, 2 * trials.min(50) as u64),
        ])
    });

    run.group("riesz", &["riesz_symmetry", "riesz_positivity"], |rng, _| {
        let trials = params.trials(50);
        let b = Interval::new(-1.0, 2.0);
        let (mut sym, mut pos) = (0.0f64, 0.0f64);
        let res = m.min(2048);
        for _ in 0..trials {
            let f = random_compact_probe(rng, b, res)?;
            let g = random_compact_probe(rng, b, res)?;
            let (if_, ig) = (riesz_potential(&f, alpha)?, riesz_potential(&g, alpha)?);
            let scale = lp_norm(&f, 2.0)? * lp_norm(&g, 2.0)?;
            sym = sym.max(rel((pairing(&if_, &g)? - pairing(&f, &ig)?).norm(), scale));
            let ff = pairing(&if_, &f)?.re;
            pos = pos.max(rel((-ff).max(0.0), lp_norm(&f, 2.0)?.powi(2)));
        }
        Ok(vec![
            Check::assert("riesz_symmetry", sym, 1e-8, trials as u64).param("alpha", alpha),
            Check::assert("riesz_positivity", pos, 1e-8, trials as u64).param("alpha", alpha),
        ])
    });

    run.one("riesz_spot_value", |_, _| {
        let one = GridFunction::from_real_fn_1d(Interval::unit(), 8192, |_| 1.0)?;
        let v = riesz_potential_at(&one, alpha, 0.5)?;
        let expect = riesz_unit_midpoint(alpha)?;
        Ok(Check::assert("riesz_spot_value", (v - expect).norm(), 1e-4, 1)
            .param("alpha", alpha)
            .param("expected", expect))
    });

    run.one("hls_exponent", |_, _| {
        let reference = (hls_exponent(0.25, 4.0 / 3.0)? - 2.0).abs();
        let p = params.hls_p();
        let q = hls_exponent(alpha, p)?;
        let relation = (1.0 / q - (1.0 / p - alpha)).abs();
        let in_range = if q > p && q.is_finite() { 0.0 } else { 1.0 };
        Ok(Check::assert("hls_exponent", reference.max(relation).max(in_range), 1e-12, 2)
            .param("p", p)
            .param("q", q))
    });

    run.group("hls", &["hls_constant", "hls_stable"], |_, seed| {
        let trials = params.trials(250);
        let p = params.hls_p();
        let (q, a_t, a_2t) = empirical_hls_constant(alpha, p, m.min(2048), trials, seed)?;
        let growth = if a_t > 0.0 && a_2t.is_finite() { a_2t / a_t } else { f64::INFINITY };
        Ok(vec![
            Check::measured("hls_constant", a_2t, 2 * trials as u64)
                .param("alpha", alpha)
                .param("p", p)
                .param("q", q)
                .param("constant_half", a_t),
            Check::assert("hls_stable", growth, STABILITY_FACTOR, 2 * trials as u64)
                .param("alpha", alpha)
                .param("p", p)
                .param("q", q),
        ])
    });
}

/// Every check name across all suites, with its suite.
pub fn registry() -> BTreeMap<&'static str, &'static str> {
    let mut out = BTreeMap::new();
    for s in SUITE_NAMES {
        for c in check_names(s).expect("known suite") {
            out.insert(c, s);
        }
    }
    out
}
