//! Scalar and 2D root finding for the transcendental commensurability
//! systems: bracketed Brent iteration and a damped Newton with a restart
//! grid.

use crate::error::{IonGateError, Result};

/// Brent's method on a bracketing interval [a, b] with f(a) f(b) <= 0.
pub fn brent<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, max_iter: usize) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(IonGateError::NoConvergence(format!(
            "brent: no sign change on [{a}, {b}] (f = {fa:.3e}, {fb:.3e})"
        )));
    }
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut mflag = true;
    for _ in 0..max_iter {
        if fb == 0.0 || (b - a).abs() < tol {
            return Ok(b);
        }
        let mut s = if fa != fc && fb != fc {
            // inverse quadratic interpolation
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let lo = (3.0 * a + b) / 4.0;
        let cond = !((lo.min(b) < s && s < lo.max(b))
            && !(mflag && (s - b).abs() >= (b - c).abs() / 2.0)
            && !(!mflag && (s - b).abs() >= (c - d).abs() / 2.0)
            && !(mflag && (b - c).abs() < tol)
            && !(!mflag && (c - d).abs() < tol));
        if cond {
            s = (a + b) / 2.0;
            mflag = true;
        } else {
            mflag = false;
        }
        let fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if fa * fs < 0.0 {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    Ok(b)
}

/// Damped Newton for a 2x2 system with analytic Jacobian.
///
/// `f` returns the residual pair, `jac` the row-major Jacobian
/// [[df0/dx0, df0/dx1], [df1/dx0, df1/dx1]].
pub fn newton2<F, J>(
    f: F,
    jac: J,
    start: (f64, f64),
    tol: f64,
    max_iter: usize,
) -> Option<(f64, f64)>
where
    F: Fn(f64, f64) -> (f64, f64),
    J: Fn(f64, f64) -> [[f64; 2]; 2],
{
    let (mut x, mut y) = start;
    for _ in 0..max_iter {
        let (f0, f1) = f(x, y);
        let r = (f0 * f0 + f1 * f1).sqrt();
        if r < tol {
            return Some((x, y));
        }
        let j = jac(x, y);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-300 {
            return None;
        }
        let dx = (f0 * j[1][1] - f1 * j[0][1]) / det;
        let dy = (f1 * j[0][0] - f0 * j[1][0]) / det;
        // backtracking line search on the residual norm
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let (g0, g1) = f(x - step * dx, y - step * dy);
            if (g0 * g0 + g1 * g1).sqrt() < r {
                x -= step * dx;
                y -= step * dy;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            return None;
        }
    }
    let (f0, f1) = f(x, y);
    if (f0 * f0 + f1 * f1).sqrt() < tol {
        Some((x, y))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_sqrt2() {
        let r = brent(|x| x * x - 2.0, 0.0, 2.0, 1e-14, 200).unwrap();
        assert!((r - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn brent_transcendental() {
        let r = brent(|x| x.sin() - 0.5, 0.0, 1.0, 1e-14, 200).unwrap();
        assert!((r - 0.5f64.asin()).abs() < 1e-12);
    }

    #[test]
    fn brent_rejects_no_bracket() {
        assert!(brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 100).is_err());
    }

    #[test]
    fn newton2_converges() {
        // x^2 + y^2 = 4, x y = 1
        let f = |x: f64, y: f64| (x * x + y * y - 4.0, x * y - 1.0);
        let j = |x: f64, y: f64| [[2.0 * x, 2.0 * y], [y, x]];
        let (x, y) = newton2(f, j, (2.0, 0.3), 1e-14, 100).unwrap();
        assert!((x * x + y * y - 4.0).abs() < 1e-12);
        assert!((x * y - 1.0).abs() < 1e-12);
    }
}
