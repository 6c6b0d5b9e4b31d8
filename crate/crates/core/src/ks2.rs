//! The Kuelbs–Steadman space: cube functionals with dyadic weights.
//!
//! Grid functions are treated as piecewise constant on their cells, so every
//! cube functional is an exact finite sum of cell/cube overlap volumes.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{Check, VerificationReport};
use crate::sbasis::{lp_norm, GridFunction, Interval};

/// The eight leading pairs `(l, i)` of the listed zig-zag.
pub const PAIRING_PREFIX: [(u64, u64); 8] = [
    (1, 1),
    (2, 1),
    (1, 2),
    (1, 3),
    (2, 2),
    (3, 1),
    (3, 2),
    (2, 3),
];

/// Boustrophedon positions of the prefix pairs, ascending.
const PREFIX_POSITIONS: [u64; 8] = [1, 2, 3, 4, 5, 6, 8, 9];

/// Position of `(l, i)` in the alternating diagonal traversal: diagonal
/// `d = l + i`, with `l` descending on odd `d` and ascending on even `d`.
fn boustrophedon_index(l: u64, i: u64) -> u64 {
    let d = l + i;
    let before = (d - 2) * (d - 1) / 2;
    let pos = if d % 2 == 1 { i } else { l };
    before + pos
}

fn boustrophedon_pair(b: u64) -> (u64, u64) {
    // smallest d with (d-1)d/2 >= b
    let mut d = ((((8 * b) as f64).sqrt() - 1.0) / 2.0).floor() as u64 + 1;
    while (d - 1) * d / 2 < b {
        d += 1;
    }
    while d > 2 && (d - 2) * (d - 1) / 2 >= b {
        d -= 1;
    }
    let pos = b - (d - 2) * (d - 1) / 2;
    if d % 2 == 1 {
        (d - pos, pos)
    } else {
        (pos, d - pos)
    }
}

/// `k ↦ (l, i)`: the listed eight pairs, then the alternating diagonal
/// traversal with those pairs skipped (so `k = 9 ↦ (4, 1)`, `k = 10 ↦ (1, 4)`,
/// and `k ↦` the `k`-th diagonal position from then on).
pub fn pairing_order(k: u64) -> Result<(u64, u64)> {
    if k == 0 {
        return Err(Error::InvalidParameter("cube index starts at 1".into()));
    }
    if k <= 8 {
        return Ok(PAIRING_PREFIX[(k - 1) as usize]);
    }
    let mut seen = 8;
    let mut b = 0;
    // only positions 7 and 10 and beyond are left after the prefix
    for cand in [7u64, 10] {
        seen += 1;
        b = cand;
        if seen == k {
            return Ok(boustrophedon_pair(b));
        }
    }
    debug_assert_eq!(b, 10);
    Ok(boustrophedon_pair(k))
}

/// Inverse of [`pairing_order`].
pub fn pairing_index(l: u64, i: u64) -> Result<u64> {
    if l == 0 || i == 0 {
        return Err(Error::InvalidParameter("pair components start at 1".into()));
    }
    if let Some(pos) = PAIRING_PREFIX.iter().position(|&p| p == (l, i)) {
        return Ok(pos as u64 + 1);
    }
    let b = boustrophedon_index(l, i);
    let below = PREFIX_POSITIONS.iter().filter(|&&x| x < b).count() as u64;
    Ok(8 + b - below)
}

fn level_count(n: usize, level: u32) -> u64 {
    let side = |lv: u32| (1u64 << lv) + 1;
    let all = side(level).pow(n as u32);
    if level == 0 {
        all
    } else {
        all - side(level - 1).pow(n as u32)
    }
}

/// `i`-th dyadic rational point of the box (1-based).
///
/// Points are grouped by level `L` (denominator `2^L`), each level listing
/// only points absent from coarser levels, in lexicographic order of the
/// integer numerators. On `[0, 1]`: `0, 1, 1/2, 1/4, 3/4, 1/8, ...`.
pub fn rational_center(n: usize, i: u64, bounds: &[Interval]) -> Result<Vec<f64>> {
    if !(1..=2).contains(&n) || bounds.len() != n {
        return Err(Error::InvalidParameter(format!(
            "dimension {n} with {} intervals",
            bounds.len()
        )));
    }
    if i == 0 {
        return Err(Error::InvalidParameter("center index starts at 1".into()));
    }
    let mut rest = i - 1;
    let mut level = 0u32;
    loop {
        let c = level_count(n, level);
        if rest < c {
            break;
        }
        rest -= c;
        level += 1;
        if level > 60 {
            return Err(Error::Overflow(format!("center index {i}")));
        }
    }
    let m = 1u64 << level;
    let coords: Vec<u64> = if level == 0 {
        // all corners, lexicographic
        (0..n).rev().map(|ax| (rest >> ax) & 1).collect()
    } else if n == 1 {
        vec![2 * rest + 1]
    } else {
        let odd_cols = m + 1;
        let even_cols = m / 2;
        let mut j1 = 0u64;
        loop {
            let width = if j1 % 2 == 1 { odd_cols } else { even_cols };
            if rest < width {
                let j2 = if j1 % 2 == 1 { rest } else { 2 * rest + 1 };
                break vec![j1, j2];
            }
            rest -= width;
            j1 += 1;
        }
    };
    Ok(coords
        .iter()
        .zip(bounds)
        .map(|(&j, b)| b.lo + b.length() * (j as f64 / m as f64))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cube {
    pub k: u64,
    pub l: u64,
    pub i: u64,
    pub center: Vec<f64>,
    /// Side length `2^{-l}/√n`, so the diagonal is `2^{-l}`.
    pub side: f64,
}

impl Cube {
    pub fn interval(&self, axis: usize) -> Interval {
        Interval::new(self.center[axis] - self.side / 2.0, self.center[axis] + self.side / 2.0)
    }

    pub fn volume(&self) -> f64 {
        self.side.powi(self.center.len() as i32)
    }
}

/// The first `K` cubes over a working box, with weights `t_k = 2^{-k}`.
#[derive(Debug, Clone)]
pub struct CubeSystem {
    bounds: Vec<Interval>,
    cubes: Vec<Cube>,
}

impl CubeSystem {
    pub fn new(bounds: Vec<Interval>, count: usize) -> Result<Self> {
        let n = bounds.len();
        if !(1..=2).contains(&n) {
            return Err(Error::InvalidParameter(format!("dimension must be 1 or 2, got {n}")));
        }
        if bounds.iter().any(|b| !(b.length() > 0.0)) {
            return Err(Error::InvalidParameter("box must have positive volume".into()));
        }
        let mut cubes = Vec::with_capacity(count);
        for k in 1..=count as u64 {
            cubes.push(make_cube(k, &bounds)?);
        }
        Ok(Self { bounds, cubes })
    }

    /// `[0, 1]^n`.
    pub fn unit(n: usize, count: usize) -> Result<Self> {
        Self::new(vec![Interval::unit(); n], count)
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[Interval] {
        &self.bounds
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    /// Cube `k` (1-based); built on demand beyond the cached range.
    pub fn cube(&self, k: u64) -> Result<Cube> {
        match self.cubes.get((k as usize).wrapping_sub(1)) {
            Some(c) if k >= 1 => Ok(c.clone()),
            _ => make_cube(k, &self.bounds),
        }
    }

    pub fn weight(k: u64) -> f64 {
        0.5f64.powi(k.min(i32::MAX as u64) as i32)
    }

    /// `Σ_{k ≤ K} t_k = 1 − 2^{-K}`.
    pub fn weight_sum(&self) -> f64 {
        1.0 - 0.5f64.powi(self.cubes.len() as i32)
    }

    fn check_grid(&self, f: &GridFunction) -> Result<()> {
        if f.bounds() != self.bounds.as_slice() {
            return Err(Error::GridMismatch(format!(
                "function box {:?} vs cube box {:?}",
                f.bounds(),
                self.bounds
            )));
        }
        Ok(())
    }
}

fn make_cube(k: u64, bounds: &[Interval]) -> Result<Cube> {
    let (l, i) = pairing_order(k)?;
    let n = bounds.len();
    Ok(Cube {
        k,
        l,
        i,
        center: rational_center(n, i, bounds)?,
        side: 0.5f64.powi(l.min(1100) as i32) / (n as f64).sqrt(),
    })
}

/// Cells of one axis overlapping `[a, b]`, with their overlap lengths.
fn axis_overlaps(f: &GridFunction, axis: usize, iv: &Interval) -> Vec<(usize, f64)> {
    let b = f.bounds()[axis];
    let h = f.spacing(axis);
    let r = f.resolution();
    let lo = iv.lo.max(b.lo);
    let hi = iv.hi.min(b.hi);
    if hi <= lo {
        return vec![];
    }
    let first = (((lo - b.lo) / h).floor().max(0.0) as usize).min(r - 1);
    let last = (((hi - b.lo) / h).ceil().max(1.0) as usize).min(r);
    (first..last)
        .filter_map(|c| {
            let cell = Interval::new(b.lo + c as f64 * h, b.lo + (c + 1) as f64 * h);
            let w = cell.overlap(lo, hi);
            (w > 0.0).then_some((c, w))
        })
        .collect()
}

/// `F_k(f) = ∫_{B_k} f`, exact for the piecewise-constant reading of `f`.
pub fn functional_fk(f: &GridFunction, k: u64, system: &CubeSystem) -> Result<Complex64> {
    system.check_grid(f)?;
    let cube = system.cube(k)?;
    Ok(cube_integral(f, &cube))
}

fn cube_integral(f: &GridFunction, cube: &Cube) -> Complex64 {
    let s = f.samples();
    let r = f.resolution();
    match f.dim() {
        1 => axis_overlaps(f, 0, &cube.interval(0))
            .into_iter()
            .map(|(c, w)| s[c] * w)
            .sum(),
        _ => {
            let xs = axis_overlaps(f, 0, &cube.interval(0));
            let ys = axis_overlaps(f, 1, &cube.interval(1));
            let mut acc = Complex64::new(0.0, 0.0);
            for &(i, wx) in &xs {
                for &(j, wy) in &ys {
                    acc += s[i * r + j] * (wx * wy);
                }
            }
            acc
        }
    }
}

/// `F_1(f), ..., F_K(f)`.
pub fn functionals(f: &GridFunction, k_max: usize, system: &CubeSystem) -> Result<Vec<Complex64>> {
    system.check_grid(f)?;
    (1..=k_max as u64)
        .map(|k| Ok(cube_integral(f, &system.cube(k)?)))
        .collect()
}

fn weighted_sum(fs: &[Complex64], gs: &[Complex64]) -> Complex64 {
    fs.iter()
        .zip(gs)
        .enumerate()
        .map(|(idx, (a, b))| a * b.conj() * CubeSystem::weight(idx as u64 + 1))
        .sum()
}

/// `Σ_{k ≤ K} t_k F_k(f) conj(F_k(g))`.
pub fn ks2_inner(f: &GridFunction, g: &GridFunction, k_max: usize, system: &CubeSystem) -> Result<Complex64> {
    f.check_grid(g)?;
    Ok(weighted_sum(&functionals(f, k_max, system)?, &functionals(g, k_max, system)?))
}

pub fn ks2_norm(f: &GridFunction, k_max: usize, system: &CubeSystem) -> Result<f64> {
    Ok(ks2_norm_from(&functionals(f, k_max, system)?))
}

/// Norm from precomputed functional values.
pub fn ks2_norm_from(fs: &[Complex64]) -> f64 {
    fs.iter()
        .enumerate()
        .map(|(idx, z)| z.norm_sqr() * CubeSystem::weight(idx as u64 + 1))
        .sum::<f64>()
        .sqrt()
}

/// `2^{-K} sup_k |F_k(f)|²`, the weight mass beyond the truncation times the
/// largest observed functional.
pub fn tail_bound(fs: &[Complex64]) -> f64 {
    let sup = fs.iter().fold(0.0f64, |m, z| m.max(z.norm_sqr()));
    0.5f64.powi(fs.len() as i32) * sup
}

/// `(1/(2√n))^n`.
pub fn sup_norm_constant(n: usize) -> f64 {
    (1.0 / (2.0 * (n as f64).sqrt())).powi(n as i32)
}

/// Bound `‖f‖_{KS²} ≤ ‖f‖_q` (or the sup-norm form when `q = ∞`) and the
/// relative excess over it.
pub fn embedding_bound(f: &GridFunction, q: f64, k_max: usize, system: &CubeSystem) -> Result<(f64, f64, f64)> {
    let ks = ks2_norm(f, k_max, system)?;
    let bound = if q.is_infinite() {
        sup_norm_constant(f.dim()) * lp_norm(f, q)?
    } else {
        lp_norm(f, q)?
    };
    Ok((ks, bound, ((ks - bound) / (1.0 + bound)).max(0.0)))
}

pub fn embedding_bound_check(f: &GridFunction, q: f64, k_max: usize, system: &CubeSystem) -> Result<VerificationReport> {
    let (ks, bound, excess) = embedding_bound(f, q, k_max, system)?;
    let name = if q.is_infinite() { "embedding_bound_inf" } else { "embedding_bound_q" };
    let mut r = VerificationReport::new("ks2", 0);
    r.push(
        Check::assert(name, excess, 1e-9, 1)
            .param("q", q)
            .param("ks2_norm", ks)
            .param("bound", bound)
            .param("cubes", k_max),
    );
    Ok(r)
}

/// KS² norms of `sin(2πmx)`, `m = 1..=m_max`, on `[0, 1]`.
pub fn oscillation_norms(m_max: usize, resolution: usize, k_max: usize, system: &CubeSystem) -> Result<Vec<f64>> {
    if system.dim() != 1 || system.bounds()[0] != Interval::unit() {
        return Err(Error::InvalidParameter("oscillation demo runs on [0, 1]".into()));
    }
    (1..=m_max)
        .map(|m| {
            let f = GridFunction::from_real_fn_1d(Interval::unit(), resolution, |x| {
                (2.0 * std::f64::consts::PI * m as f64 * x).sin()
            })?;
            ks2_norm(&f, k_max, system)
        })
        .collect()
}

/// Decay threshold for `‖f_{m_max}‖ / ‖f_1‖`.
pub const WEAK_STRONG_RATIO: f64 = 0.2;

pub fn weak_strong_demo(m_max: usize, k_max: usize, system: &CubeSystem) -> Result<VerificationReport> {
    if m_max < 1 {
        return Err(Error::InvalidParameter("m_max must be at least 1".into()));
    }
    let resolution = (64 * m_max).next_power_of_two().max(1024);
    let norms = oscillation_norms(m_max, resolution, k_max, system)?;
    let ratio = norms[m_max - 1] / norms[0];
    // running maximum of the tail: the monotone envelope of the decay
    let mut envelope = norms.clone();
    for j in (0..envelope.len().saturating_sub(1)).rev() {
        envelope[j] = envelope[j].max(envelope[j + 1]);
    }
    let mut r = VerificationReport::new("ks2", 0);
    r.push(
        Check::assert("weak_strong", ratio, WEAK_STRONG_RATIO, m_max as u64)
            .param("m_max", m_max)
            .param("cubes", k_max)
            .param("norm_first", norms[0])
            .param("norm_last", norms[m_max - 1])
            .param("envelope_half", envelope[m_max / 2]),
    );
    Ok(r)
}

/// CSV rows `k,l,i,center...,side` for the first `count` cubes.
pub fn dump_cubes(system: &CubeSystem) -> String {
    let mut out = String::from("k,l,i");
    for ax in 0..system.dim() {
        out.push_str(&format!(",center{ax}"));
    }
    out.push_str(",side\n");
    for c in system.cubes() {
        out.push_str(&format!("{},{},{}", c.k, c.l, c.i));
        for x in &c.center {
            out.push_str(&format!(",{x:?}"));
        }
        out.push_str(&format!(",{:?}\n", c.side));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_and_continuation() {
        for (k, p) in PAIRING_PREFIX.iter().enumerate() {
            assert_eq!(pairing_order(k as u64 + 1).unwrap(), *p);
        }
        assert_eq!(pairing_order(9).unwrap(), (4, 1));
        assert_eq!(pairing_order(10).unwrap(), (1, 4));
        assert_eq!(pairing_order(11).unwrap(), (1, 5));
        assert_eq!(pairing_order(16).unwrap(), (6, 1));
        assert!(pairing_order(0).is_err());
    }

    #[test]
    fn pairing_round_trip() {
        let mut seen = std::collections::HashSet::new();
        for k in 1..=10_000u64 {
            let (l, i) = pairing_order(k).unwrap();
            assert_eq!(pairing_index(l, i).unwrap(), k);
            assert!(seen.insert((l, i)));
        }
        // every pair on the first 100 diagonals is hit
        for d in 2..=100u64 {
            for l in 1..d {
                assert!(pairing_index(l, d - l).unwrap() <= 5050 + 10);
            }
        }
    }

    #[test]
    fn centers_unit_interval() {
        let b = [Interval::unit()];
        let got: Vec<f64> = (1..=7).map(|i| rational_center(1, i, &b).unwrap()[0]).collect();
        assert_eq!(got, vec![0.0, 1.0, 0.5, 0.25, 0.75, 0.125, 0.375]);
    }

    #[test]
    fn centers_distinct() {
        for n in [1, 2] {
            let b = vec![Interval::unit(); n];
            let mut seen = std::collections::HashSet::new();
            for i in 1..=1000 {
                let c = rational_center(n, i, &b).unwrap();
                let key: Vec<u64> = c.iter().map(|x| x.to_bits()).collect();
                assert!(seen.insert(key), "n={n} i={i}");
                assert!(c.iter().all(|&x| (0.0..=1.0).contains(&x)));
            }
        }
        let two = vec![Interval::unit(); 2];
        assert_eq!(rational_center(2, 4, &two).unwrap(), vec![1.0, 1.0]);
        assert_eq!(rational_center(2, 5, &two).unwrap(), vec![0.0, 0.5]);
        assert_eq!(rational_center(2, 6, &two).unwrap(), vec![0.5, 0.0]);
    }

    #[test]
    fn cube_geometry() {
        let sys = CubeSystem::unit(2, 4).unwrap();
        for c in sys.cubes() {
            assert!((c.side * 2f64.sqrt() - 0.5f64.powi(c.l as i32)).abs() < 1e-15);
        }
        assert!((sys.weight_sum() - (1.0 - 1.0 / 16.0)).abs() < 1e-15);
    }

    #[test]
    fn unit_function_overlaps() {
        let sys = CubeSystem::unit(1, 8).unwrap();
        let one = GridFunction::from_real_fn_1d(Interval::unit(), 64, |_| 1.0).unwrap();
        // k=1: centre 0, side 1/2 -> [0, 1/4]; k=2: centre 0, side 1/4 -> [0, 1/8];
        // k=3: centre 1, side 1/2 -> [3/4, 1]; k=4: centre 1/2, side 1/2 -> [1/4, 3/4]
        let expect = [0.25, 0.125, 0.25, 0.5];
        for (k, e) in expect.iter().enumerate() {
            let v = functional_fk(&one, k as u64 + 1, &sys).unwrap();
            assert!((v.re - e).abs() < 1e-15 && v.im == 0.0);
        }
        let zero = one.zeros_like();
        assert_eq!(functional_fk(&zero, 3, &sys).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(ks2_norm(&zero, 8, &sys).unwrap(), 0.0);
    }

    #[test]
    fn bounds_on_indicator() {
        let sys = CubeSystem::unit(1, 64).unwrap();
        let one = GridFunction::from_real_fn_1d(Interval::unit(), 256, |_| 1.0).unwrap();
        let (ks, bound, ex) = embedding_bound(&one, 2.0, 64, &sys).unwrap();
        assert!(ks <= 1.0 && (bound - 1.0).abs() < 1e-15 && ex == 0.0);
        let (_, b_inf, ex) = embedding_bound(&one, f64::INFINITY, 64, &sys).unwrap();
        assert_eq!(b_inf, 0.5);
        assert_eq!(ex, 0.0);
        assert!((sup_norm_constant(2) - 1.0 / 8.0).abs() < 1e-16);
    }

    #[test]
    fn two_dimensional_functional() {
        let sys = CubeSystem::unit(2, 1).unwrap();
        let one = GridFunction::from_fn(vec![Interval::unit(); 2], 32, |_| Complex64::new(1.0, 0.0)).unwrap();
        // centre (0,0), side 1/(2√2), quarter of the cube inside the box
        let s = 0.5 / 2f64.sqrt();
        let v = functional_fk(&one, 1, &sys).unwrap();
        assert!((v.re - (s / 2.0) * (s / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn oscillation_decays() {
        let sys = CubeSystem::unit(1, 256).unwrap();
        let r = weak_strong_demo(64, 256, &sys).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn dump_has_header_and_rows() {
        let s = dump_cubes(&CubeSystem::unit(1, 3).unwrap());
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "k,l,i,center0,side");
        assert_eq!(lines[1], "1,1,1,0.0,0.5");
        assert_eq!(lines.len(), 4);
    }
}
