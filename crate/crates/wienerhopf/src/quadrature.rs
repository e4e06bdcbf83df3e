//! Adaptive quadrature for complex-valued integrands on real intervals.
//!
//! Used as the independent oracle against which the spectral Cauchy
//! machinery is verified (both in the test suites and in the CLI
//! self-test). Gauss-Legendre nodes are generated at run time by Newton
//! iteration on the Legendre recurrence, so no tabulated constants enter
//! the comparison path.

use num_complex::Complex64;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("adaptive quadrature failed to converge on [{a}, {b}] (error estimate {err:.3e})")]
    NoConvergence { a: f64, b: f64, err: f64 },
}

/// Gauss-Legendre nodes and weights on [-1, 1].
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi-style initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 1..n {
        let p_next = ((2 * k + 1) as f64 * x * p - k as f64 * p_prev) / (k + 1) as f64;
        p_prev = p;
        p = p_next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

fn rules() -> &'static (Vec<(f64, f64)>, Vec<(f64, f64)>) {
    static RULES: OnceLock<(Vec<(f64, f64)>, Vec<(f64, f64)>)> = OnceLock::new();
    RULES.get_or_init(|| (gauss_legendre(16), gauss_legendre(32)))
}

fn panel<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64, f64) {
    let (coarse, fine) = rules();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut lo = Complex64::new(0.0, 0.0);
    for &(x, w) in coarse {
        lo += f(mid + half * x) * w;
    }
    let mut hi = Complex64::new(0.0, 0.0);
    let mut abs = 0.0;
    for &(x, w) in fine {
        let v = f(mid + half * x);
        hi += v * w;
        abs += v.norm() * w;
    }
    (hi * half, (hi - lo).norm() * half.abs(), abs * half.abs())
}

/// Adaptive integral of a complex-valued `f` over `[a, b]`.
///
/// `tol` is an absolute tolerance on the whole interval; panels are
/// bisected until the local 16/32-point Gauss disagreement, scaled by the
/// panel fraction, is below it.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<Complex64, QuadError> {
    let total_len = (b - a).abs();
    if total_len == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut stack = vec![(a, b, 0u32)];
    let mut acc = Complex64::new(0.0, 0.0);
    while let Some((lo, hi, depth)) = stack.pop() {
        let (val, err, abs) = panel(&f, lo, hi);
        let local_tol = tol * ((hi - lo).abs() / total_len).max(1e-3);
        // the second bound is the roundoff floor of the panel itself
        if err <= local_tol.max(1e-15 * abs) {
            acc += val;
        } else if depth >= 48 {
            return Err(QuadError::NoConvergence { a: lo, b: hi, err });
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    Ok(acc)
}

/// Adaptive integral of a real-valued `f` over `[a, b]`.
pub fn integrate_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64, QuadError> {
    integrate(|x| Complex64::new(f(x), 0.0), a, b, tol).map(|v| v.re)
}
