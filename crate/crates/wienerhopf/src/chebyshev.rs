//! Chebyshev grids of the second kind, value/coefficient transforms,
//! series evaluation and Clenshaw-Curtis quadrature weights.
//!
//! Everything here works on the extrema grid including the endpoints
//! `x₁ = -1`, `x_n = +1`, ordered ascending. Transforms are dense
//! `n x n` matrices; at the resolutions used (n ≤ ~513) that is cheaper
//! than setting up an FFT and the Cauchy-matrix assembly needs the
//! transform as an explicit matrix anyway.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ChebError {
    #[error("grid needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("expected {expected} samples, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Chebyshev points of the second kind on [-1, 1], ascending.
///
/// Invariants: `x[0] = -1`, `x[n-1] = +1`, strictly increasing and
/// antisymmetric about 0 (`x[q] = -x[n-1-q]` exactly).
#[derive(Debug, Clone, PartialEq)]
pub struct ChebGrid {
    pub n: usize,
    pub x: Vec<f64>,
}

impl ChebGrid {
    pub fn interior(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.x
            .iter()
            .copied()
            .enumerate()
            .skip(1)
            .take(self.n - 2)
    }
}

/// Coefficients of a Chebyshev-T expansion `Σ_k c_k T_k(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    pub coeffs: Vec<Complex64>,
}

impl ChebSeries {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Second-kind Chebyshev points `(-1, cos((n-2)π/(n-1)), ..., cos(π/(n-1)), 1)`.
///
/// Built half-by-half and mirrored so the antisymmetry `x_q = -x_{n+1-q}`
/// holds exactly in floating point.
pub fn chebyshev_points(n: usize) -> Result<ChebGrid, ChebError> {
    if n < 2 {
        return Err(ChebError::TooFewPoints(n));
    }
    let big_n = n - 1;
    let mut x = vec![0.0; n];
    for (j, slot) in x.iter_mut().enumerate().take(n / 2) {
        *slot = -(j as f64 * PI / big_n as f64).cos();
    }
    x[0] = -1.0;
    for j in 0..n / 2 {
        x[n - 1 - j] = -x[j];
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    Ok(ChebGrid { n, x })
}

/// Dense transform matrix `F` taking values at the grid to T-coefficients.
///
/// Row k holds the discrete-orthogonality weights for coefficient k:
/// `c_k = (2 / (N γ_k)) Σ'' v_q T_k(x_q)` with halved endpoint terms and
/// `γ_k = 2` for `k = 0, N`.
pub fn transform_matrix(n: usize) -> DMatrix<Complex64> {
    let big_n = n - 1;
    DMatrix::from_fn(n, n, |k, q| {
        let gamma = if k == 0 || k == big_n { 2.0 } else { 1.0 };
        let w = if q == 0 || q == big_n { 0.5 } else { 1.0 };
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let t_kq = sign * (k as f64 * q as f64 * PI / big_n as f64).cos();
        Complex64::new(2.0 / (big_n as f64 * gamma) * w * t_kq, 0.0)
    })
}

/// Inverse of [`transform_matrix`]: synthesis matrix with entries `T_k(x_q)`.
pub fn synthesis_matrix(n: usize) -> DMatrix<Complex64> {
    let big_n = n - 1;
    DMatrix::from_fn(n, n, |q, k| {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        Complex64::new(sign * (k as f64 * q as f64 * PI / big_n as f64).cos(), 0.0)
    })
}

/// Transform samples at `chebyshev_points(n)` into T-coefficients.
pub fn values_to_coeffs(grid: &ChebGrid, values: &[Complex64]) -> Result<ChebSeries, ChebError> {
    if values.len() != grid.n {
        return Err(ChebError::LengthMismatch {
            expected: grid.n,
            got: values.len(),
        });
    }
    let n = grid.n;
    let big_n = n - 1;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    for (k, c) in coeffs.iter_mut().enumerate() {
        let gamma = if k == 0 || k == big_n { 2.0 } else { 1.0 };
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let mut acc = Complex64::new(0.0, 0.0);
        for (q, v) in values.iter().enumerate() {
            let w = if q == 0 || q == big_n { 0.5 } else { 1.0 };
            acc += v * (w * sign * (k as f64 * q as f64 * PI / big_n as f64).cos());
        }
        *c = acc * (2.0 / (big_n as f64 * gamma));
    }
    Ok(ChebSeries { coeffs })
}

/// Evaluate `Σ_k c_k T_k(z)` by the three-term recurrence.
///
/// Valid for complex `z`; off [-1, 1] this is the analytic continuation
/// of the polynomial interpolant.
pub fn eval_series(series: &ChebSeries, z: Complex64) -> Complex64 {
    let c = &series.coeffs;
    if c.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    let mut acc = c[0];
    if c.len() == 1 {
        return acc;
    }
    let mut t_prev = Complex64::new(1.0, 0.0);
    let mut t_cur = z;
    acc += c[1] * t_cur;
    for ck in c.iter().skip(2) {
        let t_next = 2.0 * z * t_cur - t_prev;
        acc += ck * t_next;
        t_prev = t_cur;
        t_cur = t_next;
    }
    acc
}

/// Clenshaw-Curtis weights on the second-kind grid.
///
/// `Σ w_q f(x_q)` integrates polynomials of degree ≤ n-1 (n odd) exactly
/// over [-1, 1]; all weights positive, palindromic, summing to 2.
pub fn clenshaw_curtis_weights(n: usize) -> Result<Vec<f64>, ChebError> {
    if n < 2 {
        return Err(ChebError::TooFewPoints(n));
    }
    let big_n = n - 1;
    let mut w = vec![0.0; n];
    let endpoint = if big_n % 2 == 0 {
        1.0 / (big_n * big_n - 1) as f64
    } else {
        1.0 / (big_n * big_n) as f64
    };
    w[0] = endpoint;
    w[big_n] = endpoint;
    for q in 1..big_n {
        let theta = q as f64 * PI / big_n as f64;
        let mut v = 1.0;
        if big_n % 2 == 0 {
            for k in 1..big_n / 2 {
                v -= 2.0 * (2.0 * k as f64 * theta).cos() / (4 * k * k - 1) as f64;
            }
            v -= (big_n as f64 * theta).cos() / (big_n * big_n - 1) as f64;
        } else {
            for k in 1..=(big_n - 1) / 2 {
                v -= 2.0 * (2.0 * k as f64 * theta).cos() / (4 * k * k - 1) as f64;
            }
        }
        w[q] = 2.0 * v / big_n as f64;
    }
    Ok(w)
}

/// Moment `∫_{-1}^{1} T_k(t) dt`: zero for odd k, `2/(1-k²)` for even k.
pub fn chebyshev_moment(k: usize) -> f64 {
    if k % 2 == 1 {
        0.0
    } else {
        2.0 / (1.0 - (k * k) as f64)
    }
}
