//! Eigenvalues of a general complex matrix: Householder reduction to upper
//! Hessenberg form followed by single-shift complex QR with deflation.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn hessenberg(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    let mut h = m.clone();
    if n < 3 {
        return h;
    }
    for k in 0..n - 2 {
        let x: Vec<Complex64> = ((k + 1)..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 {
            x[0] / x[0].norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut v = x.clone();
        v[0] += phase * xnorm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H <- (I - 2 v v^H) H
        for j in 0..n {
            let s: Complex64 = v
                .iter()
                .enumerate()
                .map(|(r, vr)| vr.conj() * h[(k + 1 + r, j)])
                .sum();
            for (r, vr) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= vr * s * 2.0;
            }
        }
        // H <- H (I - 2 v v^H)
        for i in 0..n {
            let s: Complex64 = v
                .iter()
                .enumerate()
                .map(|(r, vr)| h[(i, k + 1 + r)] * vr)
                .sum();
            for (r, vr) in v.iter().enumerate() {
                h[(i, k + 1 + r)] -= s * vr.conj() * 2.0;
            }
        }
        for i in (k + 2)..n {
            h[(i, k)] = ZERO;
        }
    }
    h
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mu1 = (a + d) * 0.5 + disc;
    let mu2 = (a + d) * 0.5 - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// Diagonal similarity by powers of two equalising row and column norms
/// (Parlett–Reinsch). Exact in floating point; helps graded matrices.
fn balance(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    let mut a = m.clone();
    let mut converged = false;
    let mut sweeps = 0;
    while !converged && sweeps < 100 {
        converged = true;
        sweeps += 1;
        for i in 0..n {
            let (mut c, mut r) = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].l1_norm();
                    r += a[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let (mut cc, mut rr) = (c, r);
            while cc < rr / 2.0 {
                f *= 2.0;
                cc *= 2.0;
                rr /= 2.0;
            }
            while cc >= rr * 2.0 {
                f /= 2.0;
                cc /= 2.0;
                rr *= 2.0;
            }
            if (cc + rr) < 0.95 * s {
                converged = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
    a
}

/// All `n` eigenvalues of a square matrix counted with algebraic multiplicity.
pub fn general_eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "general_eigenvalues needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite("general_eigenvalues input".into()));
    }
    let n = m.rows();
    let balanced = balance(m);
    let mut h = hessenberg(&balanced);
    let mut eig = vec![ZERO; n];
    if n == 0 {
        return Ok(eig);
    }
    let norm = balanced.frobenius_norm();
    let max_iter = 60 * n.max(1);
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;

    loop {
        if hi == 0 {
            eig[0] = h[(0, 0)];
            break;
        }
        // locate the start of the active unreduced block
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let diag = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            let scale = if diag == 0.0 { norm } else { diag };
            if sub <= f64::EPSILON * scale || sub <= f64::MIN_POSITIVE {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if iter > max_iter {
            return Err(Error::NoConvergence {
                method: "shifted hessenberg qr",
                iterations: total,
                residual: h[(hi, hi - 1)].norm(),
            });
        }

        let mu = if iter % 11 == 0 {
            // exceptional shift to break cycles
            h[(hi, hi)] + Complex64::new(h[(hi, hi - 1)].norm(), 0.0) * 1.5
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        for k in l..=hi {
            h[(k, k)] -= mu;
        }
        let mut rots: Vec<(Complex64, Complex64)> = Vec::with_capacity(hi - l);
        for k in l..hi {
            let x = h[(k, k)];
            let y = h[(k + 1, k)];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (g1, g2) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), ZERO)
            } else {
                (x / r, y / r)
            };
            for j in k..=hi {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = g1.conj() * a + g2.conj() * b;
                h[(k + 1, j)] = -g2 * a + g1 * b;
            }
            rots.push((g1, g2));
        }
        for (idx, &(g1, g2)) in rots.iter().enumerate() {
            let k = l + idx;
            let top = (k + 2).min(hi);
            for i in l..=top {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = a * g1 + b * g2;
                h[(i, k + 1)] = -a * g2.conj() + b * g1.conj();
            }
        }
        for k in l..=hi {
            h[(k, k)] += mu;
        }
    }
    Ok(eig)
}
