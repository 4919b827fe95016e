//! Dense complex linear algebra helpers: matrix exponential, Hermitian
//! eigendecomposition, Kronecker products and norms.
//!
//! The matrix exponential uses scaling-and-squaring with a Pade(13)
//! approximant (Higham 2005). Sizes in this crate stay below a few hundred,
//! so plain dense `ndarray` arithmetic is enough.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

pub type C64 = Complex64;

pub fn eye(n: usize) -> Array2<C64> {
    Array2::from_diag_elem(n, C64::new(1.0, 0.0))
}

pub fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[[i, j]];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[[i * br + k, j * bc + l]] = aij * b[[k, l]];
                }
            }
        }
    }
    out
}

/// Max-modulus (entrywise) norm.
pub fn max_norm(a: &Array2<C64>) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Deviation from Hermiticity, max |A - A^dag|.
pub fn hermiticity_defect(a: &Array2<C64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let d = (a[[i, j]] - a[[j, i]].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

/// Deviation from unitarity, max |U^dag U - I|.
pub fn unitarity_defect(u: &Array2<C64>) -> f64 {
    let n = u.nrows();
    let prod = dagger(u).dot(u);
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            };
            worst = worst.max((prod[[i, j]] - target).norm());
        }
    }
    worst
}

pub fn dagger(a: &Array2<C64>) -> Array2<C64> {
    a.t().mapv(|z| z.conj())
}

fn one_norm(a: &Array2<C64>) -> f64 {
    let (r, c) = a.dim();
    let mut best = 0.0f64;
    for j in 0..c {
        let mut s = 0.0;
        for i in 0..r {
            s += a[[i, j]].norm();
        }
        best = best.max(s);
    }
    best
}

/// Pade(13,13) coefficients from Higham (2005), eq. (10.33).
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn solve_dense(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    // Gaussian elimination with partial pivoting, AX = B.
    let n = a.nrows();
    let m = b.ncols();
    let mut lu = a.clone();
    let mut x = b.clone();
    for col in 0..n {
        let mut piv = col;
        let mut best = lu[[col, col]].norm();
        for r in col + 1..n {
            let v = lu[[r, col]].norm();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if piv != col {
            for j in 0..n {
                lu.swap([col, j], [piv, j]);
            }
            for j in 0..m {
                x.swap([col, j], [piv, j]);
            }
        }
        let d = lu[[col, col]];
        for r in col + 1..n {
            let f = lu[[r, col]] / d;
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            for j in col..n {
                let v = lu[[col, j]];
                lu[[r, j]] -= f * v;
            }
            for j in 0..m {
                let v = x[[col, j]];
                x[[r, j]] -= f * v;
            }
        }
    }
    // back substitution
    for col in (0..n).rev() {
        let d = lu[[col, col]];
        for j in 0..m {
            x[[col, j]] /= d;
        }
        for r in 0..col {
            let f = lu[[r, col]];
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..m {
                let v = x[[col, j]];
                x[[r, j]] -= f * v;
            }
        }
    }
    x
}

/// exp(A) for a square complex matrix.
pub fn expm(a: &Array2<C64>) -> Array2<C64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm requires a square matrix");
    if n == 0 {
        return Array2::zeros((0, 0));
    }

    let theta13 = 5.371920351148152;
    let norm = one_norm(a);
    let s = if norm > theta13 {
        (norm / theta13).log2().ceil() as u32
    } else {
        0
    };
    let scale = C64::new((0.5f64).powi(s as i32), 0.0);
    let a1 = a * scale;

    let a2 = a1.dot(&a1);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);
    let id = eye(n);

    let b = |k: usize| C64::new(PADE13[k], 0.0);
    let w1 = &a6 * b(13) + &a4 * b(11) + &a2 * b(9);
    let w2 = &a6 * b(7) + &a4 * b(5) + &a2 * b(3) + &id * b(1);
    let w = a6.dot(&w1) + &w2;
    let u = a1.dot(&w);
    let z1 = &a6 * b(12) + &a4 * b(10) + &a2 * b(8);
    let z2 = &a6 * b(6) + &a4 * b(4) + &a2 * b(2) + &id * b(0);
    let v = a6.dot(&z1) + &z2;

    // (V - U) X = (V + U)
    let mut r = solve_dense(&(&v - &u), &(&v + &u));
    for _ in 0..s {
        r = r.dot(&r);
    }
    r
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns (eigenvalues ascending, unitary V with columns the
/// eigenvectors), A = V diag(w) V^dag.
pub fn eigh(a: &Array2<C64>) -> (Array1<f64>, Array2<C64>) {
    let n = a.nrows();
    let mut m = a.clone();
    let mut v = eye(n);
    let tol = 1e-14 * one_norm(a).max(1.0);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(m[[p, q]].norm());
            }
        }
        if off < tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[[p, q]];
                if apq.norm() < tol * 1e-2 {
                    continue;
                }
                let app = m[[p, p]].re;
                let aqq = m[[q, q]].re;
                // phase so the off-diagonal element becomes real
                let phase = apq / apq.norm();
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let cs = C64::new(c, 0.0);
                let sn = phase * s;
                // rows/cols p and q of M and cols of V
                for i in 0..n {
                    let mip = m[[i, p]];
                    let miq = m[[i, q]];
                    m[[i, p]] = mip * cs - miq * sn.conj();
                    m[[i, q]] = mip * sn + miq * cs;
                }
                for j in 0..n {
                    let mpj = m[[p, j]];
                    let mqj = m[[q, j]];
                    m[[p, j]] = mpj * cs - mqj * sn;
                    m[[q, j]] = mpj * sn.conj() + mqj * cs;
                }
                for i in 0..n {
                    let vip = v[[i, p]];
                    let viq = v[[i, q]];
                    v[[i, p]] = vip * cs - viq * sn.conj();
                    v[[i, q]] = vip * sn + viq * cs;
                }
            }
        }
    }
    let mut w: Vec<f64> = (0..n).map(|i| m[[i, i]].re).collect();
    // sort ascending, permute columns of V accordingly
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| w[i].partial_cmp(&w[j]).unwrap());
    let w_sorted = Array1::from_iter(idx.iter().map(|&i| w[i]));
    let mut v_sorted = Array2::zeros((n, n));
    for (newcol, &oldcol) in idx.iter().enumerate() {
        for i in 0..n {
            v_sorted[[i, newcol]] = v[[i, oldcol]];
        }
    }
    w.sort_by(|a, b| a.partial_cmp(b).unwrap());
    (w_sorted, v_sorted)
}

/// Hermitian positive semidefinite square root via eigh. Small negative
/// eigenvalues from roundoff are clamped to zero.
pub fn sqrtm_psd(a: &Array2<C64>) -> Array2<C64> {
    let (w, v) = eigh(a);
    let n = a.nrows();
    let mut d = Array2::zeros((n, n));
    for i in 0..n {
        d[[i, i]] = C64::new(w[i].max(0.0).sqrt(), 0.0);
    }
    v.dot(&d).dot(&dagger(&v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_zero_is_identity() {
        let z: Array2<C64> = Array2::zeros((4, 4));
        let e = expm(&z);
        assert!(max_norm(&(&e - &eye(4))) < 1e-15);
    }

    #[test]
    fn expm_diagonal() {
        let mut a: Array2<C64> = Array2::zeros((3, 3));
        a[[0, 0]] = C64::new(0.0, 1.0);
        a[[1, 1]] = C64::new(-0.5, 0.0);
        a[[2, 2]] = C64::new(0.0, -2.0);
        let e = expm(&a);
        for i in 0..3 {
            assert!((e[[i, i]] - a[[i, i]].exp()).norm() < 1e-14);
        }
    }

    #[test]
    fn expm_pauli_x_rotation() {
        // exp(-i t sx) = cos t I - i sin t sx
        let t = 0.7;
        let mut sx: Array2<C64> = Array2::zeros((2, 2));
        sx[[0, 1]] = C64::new(1.0, 0.0);
        sx[[1, 0]] = C64::new(1.0, 0.0);
        let e = expm(&(&sx * C64::new(0.0, -t)));
        assert!((e[[0, 0]] - C64::new(t.cos(), 0.0)).norm() < 1e-14);
        assert!((e[[0, 1]] - C64::new(0.0, -t.sin())).norm() < 1e-14);
    }

    #[test]
    fn expm_large_norm_scaling() {
        // 40 x (antisymmetric) => rotation by 40 rad, still unitary
        let mut a: Array2<C64> = Array2::zeros((2, 2));
        a[[0, 1]] = C64::new(40.0, 0.0);
        a[[1, 0]] = C64::new(-40.0, 0.0);
        let e = expm(&a);
        assert!(unitarity_defect(&e) < 1e-12);
        assert!((e[[0, 0]].re - 40.0f64.cos()).abs() < 1e-11);
    }

    #[test]
    fn eigh_recomposes() {
        let n = 6;
        let mut a: Array2<C64> = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                let v = C64::new((i * 3 + j) as f64 * 0.1, (i as f64 - j as f64) * 0.05);
                a[[i, j]] = v;
            }
        }
        let h = &a + &dagger(&a);
        let (w, v) = eigh(&h);
        let mut d: Array2<C64> = Array2::zeros((n, n));
        for i in 0..n {
            d[[i, i]] = C64::new(w[i], 0.0);
        }
        let back = v.dot(&d).dot(&dagger(&v));
        assert!(max_norm(&(&back - &h)) < 1e-12);
        assert!(unitarity_defect(&v) < 1e-12);
    }

    #[test]
    fn sqrtm_squares_back() {
        let mut a: Array2<C64> = Array2::zeros((3, 3));
        a[[0, 0]] = C64::new(0.5, 0.0);
        a[[1, 1]] = C64::new(0.25, 0.0);
        a[[2, 2]] = C64::new(0.25, 0.0);
        a[[0, 1]] = C64::new(0.1, 0.05);
        a[[1, 0]] = C64::new(0.1, -0.05);
        let r = sqrtm_psd(&a);
        assert!(max_norm(&(&r.dot(&r) - &a)) < 1e-12);
    }
}
