use std::f64::consts::PI;

use num_complex::Complex64;

use super::grid::{lp_norm, pairing, GridFunction, Interval};
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

/// Unit-norm basis members together with biorthonormal coefficient functionals.
///
/// Each dual is stored as a representer `g_n` on the same grid, acting by
/// `<E_n*, u> = ∫ u conj(g_n)`, so that `<E_n*, E_m> = δ_nm`.
#[derive(Debug, Clone)]
pub struct SchauderBasis {
    members: Vec<GridFunction>,
    duals: Vec<GridFunction>,
    p: f64,
}

impl SchauderBasis {
    /// Assembles a basis, checking unit `p`-norms and biorthonormality to `tol`.
    pub fn from_parts(
        members: Vec<GridFunction>,
        duals: Vec<GridFunction>,
        p: f64,
        tol: f64,
    ) -> Result<Self> {
        if members.is_empty() || members.len() != duals.len() {
            return Err(Error::Shape(format!(
                "{} members vs {} duals",
                members.len(),
                duals.len()
            )));
        }
        for f in members.iter().chain(&duals) {
            members[0].check_grid(f)?;
        }
        let basis = Self { members, duals, p };
        for (n, e) in basis.members.iter().enumerate() {
            let nrm = lp_norm(e, p)?;
            if (nrm - 1.0).abs() > tol {
                return Err(Error::InvalidParameter(format!(
                    "member {n} has p-norm {nrm}, expected 1"
                )));
            }
        }
        let err = (&basis.biorthonormality_matrix()? - &ComplexMatrix::identity(basis.len())).max_abs();
        if err > tol {
            return Err(Error::InvalidParameter(format!(
                "duals are not biorthonormal (max error {err:.3e})"
            )));
        }
        Ok(basis)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn members(&self) -> &[GridFunction] {
        &self.members
    }

    pub fn member(&self, n: usize) -> &GridFunction {
        &self.members[n]
    }

    pub fn duals(&self) -> &[GridFunction] {
        &self.duals
    }

    /// Grid template shared by every member.
    pub fn grid(&self) -> &GridFunction {
        &self.members[0]
    }

    /// Matrix of `<E_i*, E_j>`.
    pub fn biorthonormality_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = pairing(&self.members[j], &self.duals[i])?;
            }
        }
        Ok(m)
    }

    /// `‖E_n*‖_{B'} = ‖g_n‖_q` for each dual functional.
    pub fn dual_norms(&self) -> Result<Vec<f64>> {
        let q = crate::numerics::conjugate_exponent(self.p);
        self.duals.iter().map(|g| lp_norm(g, q)).collect()
    }
}

/// Raw (unnormalised) trigonometric function in the listed order
/// `1, cos 2πt, sin 2πt, cos 4πt, sin 4πt, ...`.
fn trig_member(n: usize, t: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let k = ((n + 1) / 2) as f64;
    if n % 2 == 1 {
        (2.0 * PI * k * t).cos()
    } else {
        (2.0 * PI * k * t).sin()
    }
}

/// Frequency of the `n`-th member (0-based).
pub fn trig_frequency(n: usize) -> usize {
    n.div_ceil(2)
}

/// First `n` members of the trigonometric basis of `L^p[0,1]`, each scaled to
/// unit `p`-norm on the grid, with matching biorthonormal duals.
pub fn fourier_sbasis(n: usize, p: f64, resolution: usize) -> Result<SchauderBasis> {
    if n == 0 {
        return Err(Error::InvalidParameter("basis size must be at least 1".into()));
    }
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter(format!("p must lie in [1, ∞], got {p}")));
    }
    if resolution < 8 * n {
        return Err(Error::InvalidParameter(format!(
            "resolution {resolution} too coarse for {n} members (need at least {})",
            8 * n
        )));
    }
    let mut members = Vec::with_capacity(n);
    let mut duals = Vec::with_capacity(n);
    for idx in 0..n {
        let raw = GridFunction::from_real_fn_1d(Interval::unit(), resolution, |t| trig_member(idx, t))?;
        let scale = 1.0 / lp_norm(&raw, p)?;
        let member = raw.scale(Complex64::new(scale, 0.0));
        let energy = pairing(&raw, &raw)?.re;
        let dual = raw.scale(Complex64::new(1.0 / (scale * energy), 0.0));
        members.push(member);
        duals.push(dual);
    }
    SchauderBasis::from_parts(members, duals, p, 1e-8)
}

/// Coefficients `u_n = <E_n*, u>`.
pub fn coefficients(u: &GridFunction, basis: &SchauderBasis) -> Result<Vec<Complex64>> {
    basis.duals().iter().map(|g| pairing(u, g)).collect()
}

/// `Σ c_n E_n`.
pub fn reconstruct(coeffs: &[Complex64], basis: &SchauderBasis) -> Result<GridFunction> {
    if coeffs.len() != basis.len() {
        return Err(Error::Shape(format!(
            "{} coefficients for a basis of {}",
            coeffs.len(),
            basis.len()
        )));
    }
    let mut out = basis.grid().zeros_like();
    for (c, e) in coeffs.iter().zip(basis.members()) {
        out = out.axpy(*c, e)?;
    }
    Ok(out)
}

/// Truncation projection `Π_N u`.
pub fn project(u: &GridFunction, basis: &SchauderBasis) -> Result<GridFunction> {
    reconstruct(&coefficients(u, basis)?, basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_constant_member() {
        let b = fourier_sbasis(1, 3.0, 64).unwrap();
        assert!(b.member(0).samples().iter().all(|z| (z.re - 1.0).abs() < 1e-14));
        // the dual of the constant is plain integration
        assert!(b.duals()[0].samples().iter().all(|z| (z.re - 1.0).abs() < 1e-14));
    }

    #[test]
    fn biorthonormal_p2() {
        let b = fourier_sbasis(3, 2.0, 256).unwrap();
        let m = b.biorthonormality_matrix().unwrap();
        assert!((&m - &ComplexMatrix::identity(3)).max_abs() < 1e-8);
    }

    #[test]
    fn unit_norms_p3() {
        let b = fourier_sbasis(5, 3.0, 512).unwrap();
        for e in b.members() {
            assert!((lp_norm(e, 3.0).unwrap() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn ordering_follows_listed_family() {
        let b = fourier_sbasis(5, 2.0, 64).unwrap();
        let x = b.member(0).midpoints_1d();
        let i = 5;
        let s = 2f64.sqrt();
        assert!((b.member(1).samples()[i].re - s * (2.0 * PI * x[i]).cos()).abs() < 1e-12);
        assert!((b.member(2).samples()[i].re - s * (2.0 * PI * x[i]).sin()).abs() < 1e-12);
        assert!((b.member(3).samples()[i].re - s * (4.0 * PI * x[i]).cos()).abs() < 1e-12);
        assert!((b.member(4).samples()[i].re - s * (4.0 * PI * x[i]).sin()).abs() < 1e-12);
    }

    #[test]
    fn coarse_resolution_rejected() {
        assert!(fourier_sbasis(4, 2.0, 31).is_err());
        assert!(fourier_sbasis(0, 2.0, 64).is_err());
    }

    #[test]
    fn coefficient_round_trip() {
        let b = fourier_sbasis(4, 3.0, 512).unwrap();
        let c = coefficients(b.member(1), &b).unwrap();
        assert!((c[1].re - 1.0).abs() < 1e-12);
        assert!(c[0].norm() + c[2].norm() + c[3].norm() < 1e-12);

        let zero = b.grid().zeros_like();
        assert!(coefficients(&zero, &b).unwrap().iter().all(|z| z.norm() == 0.0));

        let u = b
            .member(0)
            .scale(Complex64::new(2.0, 0.0))
            .axpy(Complex64::new(3.0, 0.0), b.member(2))
            .unwrap();
        let c = coefficients(&u, &b).unwrap();
        let expect = [2.0, 0.0, 3.0, 0.0];
        for (z, e) in c.iter().zip(expect) {
            assert!((z - Complex64::new(e, 0.0)).norm() < 1e-8);
        }
        let back = reconstruct(&c, &b).unwrap();
        assert!(back.sub(&u).unwrap().max_abs() < 1e-8);
    }

    #[test]
    fn projection_is_idempotent() {
        let b = fourier_sbasis(6, 2.5, 512).unwrap();
        let u = GridFunction::from_real_fn_1d(Interval::unit(), 512, |t| (t - 0.4).abs()).unwrap();
        let once = project(&u, &b).unwrap();
        let twice = project(&once, &b).unwrap();
        assert!(twice.sub(&once).unwrap().max_abs() < 1e-10);
    }
}
