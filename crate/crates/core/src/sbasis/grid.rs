use num_complex::Complex64;

use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` of one axis of the working box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn unit() -> Self {
        Self { lo: 0.0, hi: 1.0 }
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    /// Length of the intersection with `[a, b]`.
    pub fn overlap(&self, a: f64, b: f64) -> f64 {
        (self.hi.min(b) - self.lo.max(a)).max(0.0)
    }
}

/// Complex samples at the cell midpoints of a uniform grid over a box in
/// one or two dimensions. Integrals use the composite midpoint rule.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    bounds: Vec<Interval>,
    resolution: usize,
    samples: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(bounds: Vec<Interval>, resolution: usize, samples: Vec<Complex64>) -> Result<Self> {
        let dim = bounds.len();
        if !(1..=2).contains(&dim) {
            return Err(Error::InvalidParameter(format!("dimension must be 1 or 2, got {dim}")));
        }
        if resolution == 0 {
            return Err(Error::InvalidParameter("resolution must be positive".into()));
        }
        if bounds
            .iter()
            .any(|b| !(b.length() > 0.0) || !b.lo.is_finite() || !b.hi.is_finite())
        {
            return Err(Error::InvalidParameter("box must have positive volume".into()));
        }
        let expected = resolution.pow(dim as u32);
        if samples.len() != expected {
            return Err(Error::Shape(format!(
                "expected {expected} samples, got {}",
                samples.len()
            )));
        }
        if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("grid samples".into()));
        }
        Ok(Self {
            bounds,
            resolution,
            samples,
        })
    }

    pub fn zeros(bounds: Vec<Interval>, resolution: usize) -> Result<Self> {
        let n = resolution.pow(bounds.len() as u32);
        Self::new(bounds, resolution, vec![Complex64::new(0.0, 0.0); n])
    }

    /// Samples a function of the midpoint coordinates.
    pub fn from_fn(
        bounds: Vec<Interval>,
        resolution: usize,
        mut f: impl FnMut(&[f64]) -> Complex64,
    ) -> Result<Self> {
        let mut g = Self::zeros(bounds, resolution)?;
        let mut x = vec![0.0; g.dim()];
        for idx in 0..g.samples.len() {
            g.midpoint_into(idx, &mut x);
            g.samples[idx] = f(&x);
        }
        if g.samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("grid samples".into()));
        }
        Ok(g)
    }

    /// One-dimensional real-valued convenience constructor.
    pub fn from_real_fn_1d(
        interval: Interval,
        resolution: usize,
        mut f: impl FnMut(f64) -> f64,
    ) -> Result<Self> {
        Self::from_fn(vec![interval], resolution, |x| Complex64::new(f(x[0]), 0.0))
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[Interval] {
        &self.bounds
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex64] {
        &mut self.samples
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        self.bounds[axis].length() / self.resolution as f64
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.dim()).map(|a| self.spacing(a)).product()
    }

    /// Midpoint of the cell with flat index `idx` (row-major in 2-D).
    pub fn midpoint_into(&self, idx: usize, x: &mut [f64]) {
        let r = self.resolution;
        match self.dim() {
            1 => x[0] = self.bounds[0].lo + (idx as f64 + 0.5) * self.spacing(0),
            _ => {
                let (i, j) = (idx / r, idx % r);
                x[0] = self.bounds[0].lo + (i as f64 + 0.5) * self.spacing(0);
                x[1] = self.bounds[1].lo + (j as f64 + 0.5) * self.spacing(1);
            }
        }
    }

    pub fn midpoints_1d(&self) -> Vec<f64> {
        let h = self.spacing(0);
        (0..self.resolution)
            .map(|i| self.bounds[0].lo + (i as f64 + 0.5) * h)
            .collect()
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.resolution == other.resolution && self.bounds == other.bounds
    }

    pub(crate) fn check_grid(&self, other: &Self) -> Result<()> {
        if self.same_grid(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "{:?}@{} vs {:?}@{}",
                self.bounds, self.resolution, other.bounds, other.resolution
            )))
        }
    }

    pub fn map(&self, mut f: impl FnMut(Complex64) -> Complex64) -> Self {
        Self {
            bounds: self.bounds.clone(),
            resolution: self.resolution,
            samples: self.samples.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|z| z * c)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: Complex64, other: &Self) -> Result<Self> {
        self.check_grid(other)?;
        Ok(Self {
            bounds: self.bounds.clone(),
            resolution: self.resolution,
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a + b * c)
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex64::new(1.0, 0.0), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    pub fn zeros_like(&self) -> Self {
        self.map(|_| Complex64::new(0.0, 0.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.samples.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }
}

/// `(∫ |f|^p dλ)^{1/p}` by the midpoint rule; `p = ∞` is the max sample.
pub fn lp_norm(f: &GridFunction, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter(format!("p must lie in [1, ∞], got {p}")));
    }
    let m = f.max_abs();
    if p.is_infinite() || m == 0.0 {
        return Ok(m);
    }
    let vol = f.cell_volume();
    let s: f64 = if p == 2.0 {
        f.samples().iter().map(|z| (z.norm() / m).powi(2)).sum()
    } else {
        f.samples().iter().map(|z| (z.norm() / m).powf(p)).sum()
    };
    Ok(m * (s * vol).powf(1.0 / p))
}

/// Duality bracket `<f, g> = ∫ f conj(g) dλ`.
pub fn pairing(f: &GridFunction, g: &GridFunction) -> Result<Complex64> {
    f.check_grid(g)?;
    let s: Complex64 = f
        .samples()
        .iter()
        .zip(g.samples())
        .map(|(a, b)| a * b.conj())
        .sum();
    Ok(s * f.cell_volume())
}

/// The `L^p` duality map `u* = ‖u‖_p^{2-p} |u|^{p-2} u`, with `J(0) = 0`.
pub fn duality_map(u: &GridFunction, p: f64) -> Result<GridFunction> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "duality map needs 1 < p < ∞, got {p}"
        )));
    }
    let nrm = lp_norm(u, p)?;
    if nrm == 0.0 {
        return Ok(u.zeros_like());
    }
    Ok(u.map(|z| {
        let a = z.norm();
        if a == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            // ‖u‖^{2-p} |u|^{p-2} = ‖u‖^{2-p} · ‖u‖^{p-2} (|u|/‖u‖)^{p-2}
            z * (a / nrm).powf(p - 2.0)
        }
    }))
}
