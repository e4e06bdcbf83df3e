//! Cauchy transforms of the Chebyshev basis on the unit interval and on
//! mapped contours, and assembly of the collocation matrices C⁺ and C⁻.
//!
//! The whole module is built on the single family
//! `S_k(z) = (1/2πi) ∫_{-1}^{1} T_k(t)/(t-z) dt`,
//! which satisfies `S_{k+1} = 2z S_k - S_{k-1} + m_k/(πi)` with the
//! Chebyshev moments `m_k`. Two equivalent closed forms are used in
//! complementary regimes:
//!
//! * `S_k = S₀ T_k(z) + ψ_k(z)/(πi)` with the polynomial ψ-recurrence —
//!   stable on the interval (boundary values) and just off it, where
//!   `T_k` stays bounded;
//! * an expansion in powers of the inverse Joukowski variable
//!   `ζ = T₊⁻¹(z)`, whose growing `ζ^{-k}` part cancels identically —
//!   stable away from the interval where `|ζ|` is small.
//!
//! Endpoint limits enter through the finite-part rows μ^L, μ^R; on
//! densities vanishing at ±1 (all solved densities, by the decay closure)
//! the finite-part convention constant drops out of every interior row.

use crate::chebyshev::{chebyshev_moment, chebyshev_points, transform_matrix};
use crate::mapping::{ContourTag, EndpointRow, Preimage, RationalMap};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Error, PartialEq)]
pub enum CauchyError {
    #[error("evaluation point {0} coincides with an interval endpoint")]
    AtEndpoint(Complex64),
    #[error("side {side:?} needs {requirement}, got z = {z}")]
    WrongSide {
        side: Side,
        requirement: &'static str,
        z: Complex64,
    },
    #[error("exterior block got a preimage on the interval: {0}")]
    PreimageOnInterval(Complex64),
    #[error("matrix size must be at least {min}, got {got}")]
    TooSmall { min: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
    Off,
}

/// Row of Cauchy transforms of the Chebyshev basis at one point.
#[derive(Debug, Clone)]
pub struct BasisRow {
    pub values: Vec<Complex64>,
    pub z: Complex64,
    pub side: Side,
}

/// The collocation matrices for one map and size. `c_plus - c_minus = I`
/// on interior rows (Plemelj); endpoint rows carry finite parts and are
/// overwritten by decay conditions before any solve.
#[derive(Debug, Clone)]
pub struct CauchyPair {
    pub c_plus: DMatrix<Complex64>,
    pub c_minus: DMatrix<Complex64>,
    pub map: RationalMap,
    pub n: usize,
}

/// Inverse Joukowski map `T₊⁻¹(z) = z - √(z-1)√(z+1)`, taking the cut
/// plane ℂ \ [-1,1] into the open unit disk. Products of principal square
/// roots put the branch cut exactly on the interval; the reciprocal form
/// `1/(z + √(z-1)√(z+1))` is used when the direct difference would
/// cancel (the two agree identically since (z-s)(z+s) = 1).
pub fn inverse_joukowski(z: Complex64) -> Complex64 {
    let s = (z - 1.0).sqrt() * (z + 1.0).sqrt();
    if (z + s).norm() >= (z - s).norm() {
        (z + s).inv()
    } else {
        z - s
    }
}

/// `S₀(z)` off the interval: `(Log(z-1) - Log(z+1)) / 2πi`, with a series
/// for `log((z-1)/(z+1)) = log(1 - 2/(z+1))` far out where the log
/// difference cancels.
fn s0_off(z: Complex64) -> Complex64 {
    if z.norm() > 50.0 {
        let w = -2.0 / (z + 1.0);
        let mut term = w;
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 1..=14 {
            acc += term / m as f64;
            term *= -w;
        }
        acc / (2.0 * PI * I)
    } else {
        ((z - 1.0).ln() - (z + 1.0).ln()) / (2.0 * PI * I)
    }
}

/// Boundary values `S₀^±(x)` for x in (-1, 1).
fn s0_boundary(x: f64, side: Side) -> Complex64 {
    let principal = Complex64::new(((1.0 - x) / (1.0 + x)).ln(), 0.0) / (2.0 * PI * I);
    match side {
        Side::Plus => principal + 0.5,
        Side::Minus => principal - 0.5,
        Side::Off => unreachable!("boundary value needs a side"),
    }
}

/// Finite-part corner values of the interval matrix diagonal (+ side).
fn corner_plus(endpoint: f64) -> Complex64 {
    let ln2 = std::f64::consts::LN_2;
    if endpoint < 0.0 {
        Complex64::new(0.5, 0.0) + Complex64::new(ln2, 0.0) / (2.0 * PI * I)
    } else {
        Complex64::new(0.5, 0.0) - Complex64::new(ln2, 0.0) / (2.0 * PI * I)
    }
}

/// ψ-recurrence: `ψ₀ = 0`, `ψ₁ = 1`, `ψ_{k+1} = 2zψ_k - ψ_{k-1} + m_k`.
fn psi_values(z: Complex64, n: usize) -> Vec<Complex64> {
    let mut psi = vec![Complex64::new(0.0, 0.0); n];
    if n > 1 {
        psi[1] = Complex64::new(1.0, 0.0);
    }
    for k in 1..n.saturating_sub(1) {
        psi[k + 1] = 2.0 * z * psi[k] - psi[k - 1] + chebyshev_moment(k);
    }
    psi
}

/// `S_k(z)` for k = 0..n-1 at a point off the interval.
pub(crate) fn s_row_off(z: Complex64, n: usize) -> Vec<Complex64> {
    let zeta = inverse_joukowski(z);
    // Growth budget 1e4 for the T/U form: T_k(z) ~ ζ^{-k}/2.
    let threshold = 1e-4f64.powf(1.0 / n as f64);
    if zeta.norm() >= threshold {
        s_row_tu(z, n)
    } else {
        s_row_zeta(s0_off(z), zeta, n)
    }
}

fn s_row_tu(z: Complex64, n: usize) -> Vec<Complex64> {
    let s0 = s0_off(z);
    let psi = psi_values(z, n);
    let mut t_prev = Complex64::new(1.0, 0.0);
    let mut t_cur = z;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let t_k = match k {
            0 => t_prev,
            1 => t_cur,
            _ => {
                let t_next = 2.0 * z * t_cur - t_prev;
                t_prev = t_cur;
                t_cur = t_next;
                t_next
            }
        };
        out.push(s0 * t_k + psi[k] / (PI * I));
    }
    out
}

/// ζ-expansion with the exactly cancelled growing part:
/// `S_k = (S₀/2 - w) ζ^k + w Σ_{odd j≥3} c_j ζ^{|k+1-j|}`,
/// `w = 1/(πi(ζ⁻¹ - ζ))`, `c_j = 2/(j(j-2))`.
fn s_row_zeta(s0: Complex64, zeta: Complex64, n: usize) -> Vec<Complex64> {
    let w = ((zeta.inv() - zeta) * PI * I).inv();
    let r = zeta.norm();

    let coeff = |j: usize| 2.0 / (j * (j - 2)) as f64;

    // B_k = Σ_{odd j > k+1} c_j ζ^{j-k-1}, computed backward from k = n-1.
    let mut b = vec![Complex64::new(0.0, 0.0); n];
    let mut tail = Complex64::new(0.0, 0.0);
    {
        let mut j = if n % 2 == 0 { n + 1 } else { n + 2 };
        if j < 3 {
            j = 3;
        }
        let mut power = zeta.powu((j - n) as u32);
        loop {
            let term = coeff(j) * power;
            tail += term;
            if term.norm() < 1e-18 && r < 0.999999 {
                break;
            }
            if j > n + 400_000 {
                break;
            }
            j += 2;
            power *= zeta * zeta;
        }
    }
    b[n - 1] = tail;
    for k in (1..n).rev() {
        let cap = if (k + 1) % 2 == 1 && k + 1 >= 3 {
            Complex64::new(coeff(k + 1), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        b[k - 1] = zeta * (b[k] + cap);
    }

    // A_k = Σ_{odd j, 3 ≤ j ≤ k+1} c_j ζ^{k+1-j}, forward.
    let mut out = Vec::with_capacity(n);
    let mut a = Complex64::new(0.0, 0.0);
    let mut zeta_k = Complex64::new(1.0, 0.0);
    for k in 0..n {
        if k > 0 {
            a = zeta * a
                + if (k + 1) % 2 == 1 && k + 1 >= 3 {
                    Complex64::new(coeff(k + 1), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
        }
        out.push((s0 / 2.0 - w) * zeta_k + w * (a + b[k]));
        zeta_k *= zeta;
    }
    out
}

/// Boundary-value rows `S_k^±(x)` for x in (-1, 1).
pub(crate) fn s_row_boundary(x: f64, n: usize, side: Side) -> Vec<Complex64> {
    let s0 = s0_boundary(x, side);
    let z = Complex64::new(x, 0.0);
    let psi = psi_values(z, n);
    let mut out = Vec::with_capacity(n);
    let mut t_prev = 1.0f64;
    let mut t_cur = x;
    for k in 0..n {
        let t_k = match k {
            0 => t_prev,
            1 => t_cur,
            _ => {
                let t_next = 2.0 * x * t_cur - t_prev;
                t_prev = t_cur;
                t_cur = t_next;
                t_next
            }
        };
        out.push(s0 * t_k + psi[k] / (PI * I));
    }
    out
}

/// Cauchy transforms of the Chebyshev basis at one point, as boundary
/// values on the indicated side when z lies on the interval.
pub fn cauchy_basis_row(z: Complex64, n: usize, side: Side) -> Result<BasisRow, CauchyError> {
    let on_axis = z.im == 0.0;
    if on_axis && (z.re.abs() - 1.0).abs() < 1e-14 {
        return Err(CauchyError::AtEndpoint(z));
    }
    let values = match side {
        Side::Off => {
            if on_axis && z.re.abs() < 1.0 {
                return Err(CauchyError::WrongSide {
                    side,
                    requirement: "a point off [-1, 1]",
                    z,
                });
            }
            s_row_off(z, n)
        }
        Side::Plus | Side::Minus => {
            if !on_axis || z.re.abs() >= 1.0 {
                return Err(CauchyError::WrongSide {
                    side,
                    requirement: "a real point in (-1, 1)",
                    z,
                });
            }
            s_row_boundary(z.re, n, side)
        }
    };
    Ok(BasisRow { values, z, side })
}

/// Finite-part rows at the preimages of infinity: `(μ^L, μ^R)`.
///
/// Entry k is the real-axis finite part of `S_k` at -1 / +1. On densities
/// with vanishing endpoint values these rows reproduce the actual limits
/// of the Cauchy transform; the assembled C± stay finite at the endpoint
/// rows because every block caps them with these finite parts.
pub fn endpoint_rows(n: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let ln2 = std::f64::consts::LN_2;
    let fp_l = Complex64::new(ln2, 0.0) / (2.0 * PI * I);
    let fp_r = -fp_l;
    let psi_l = psi_values(Complex64::new(-1.0, 0.0), n);
    let psi_r = psi_values(Complex64::new(1.0, 0.0), n);
    let mu_l: Vec<_> = (0..n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * fp_l + psi_l[k] / (PI * I)
        })
        .collect();
    let mu_r: Vec<_> = (0..n).map(|k| fp_r + psi_r[k] / (PI * I)).collect();
    (mu_l, mu_r)
}

/// Interval-branch matrix of Cauchy boundary values at the grid:
/// `diag(S₀^±(x_p)) + (1/πi) Ψ F`, with finite-part corners at the
/// endpoint rows.
pub fn interval_matrix(n: usize, side: Side) -> Result<DMatrix<Complex64>, CauchyError> {
    if n < 2 {
        return Err(CauchyError::TooSmall { min: 2, got: n });
    }
    let grid = chebyshev_points(n).expect("n >= 2");
    let f = transform_matrix(n);
    let mut m = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for p in 0..n {
        let x = grid.x[p];
        let psi = psi_values(Complex64::new(x, 0.0), n);
        for q in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += psi[k] * f[(k, q)];
            }
            m[(p, q)] = acc / (PI * I);
        }
        let diag = if p == 0 || p == n - 1 {
            let c = corner_plus(x);
            match side {
                Side::Plus | Side::Off => c,
                Side::Minus => c - 1.0,
            }
        } else {
            s0_boundary(x, side)
        };
        m[(p, p)] += diag;
    }
    Ok(m)
}

/// Shorthand for the + side matrix.
pub fn interval_plus_matrix(n: usize) -> Result<DMatrix<Complex64>, CauchyError> {
    interval_matrix(n, Side::Plus)
}

/// Cauchy block of one non-interval branch: interior row p holds the
/// basis transforms at the branch preimage of α_p, the first and last
/// rows hold the assigned μ rows, and the block is right-multiplied by F.
pub fn exterior_block(
    preimages: &[Preimage],
    first_row: EndpointRow,
    last_row: EndpointRow,
    n: usize,
    f: &DMatrix<Complex64>,
    mu_l: &[Complex64],
    mu_r: &[Complex64],
) -> Result<DMatrix<Complex64>, CauchyError> {
    assert_eq!(preimages.len(), n, "one preimage per collocation point");
    let pick = |which: EndpointRow| match which {
        EndpointRow::MuL => mu_l,
        EndpointRow::MuR => mu_r,
    };
    let mut rows = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for k in 0..n {
        rows[(0, k)] = pick(first_row)[k];
        rows[(n - 1, k)] = pick(last_row)[k];
    }
    for (p, pre) in preimages.iter().enumerate().take(n - 1).skip(1) {
        match pre {
            Preimage::Infinite => {} // Cauchy transform vanishes at infinity
            Preimage::Finite(v) => {
                if v.im == 0.0 && v.re.abs() < 1.0 {
                    return Err(CauchyError::PreimageOnInterval(*v));
                }
                let s = s_row_off(*v, n);
                for k in 0..n {
                    rows[(p, k)] = s[k];
                }
            }
        }
    }
    Ok(rows * f)
}

/// Coefficient-space row of the full mapped-contour Cauchy transform at a
/// point off the contour: the d preimage rows summed, minus the
/// pole-multiplicity-weighted endpoint parts.
pub fn offcontour_row(map: &RationalMap, roots: &[Complex64], n: usize) -> Vec<Complex64> {
    let (mu_l, mu_r) = endpoint_rows(n);
    let mut row = vec![Complex64::new(0.0, 0.0); n];
    for v in roots {
        let vals = s_row_off(*v, n);
        for k in 0..n {
            row[k] += vals[k];
        }
    }
    let m = map.pole_multiplicity as f64;
    for k in 0..n {
        row[k] -= m * (mu_l[k] + mu_r[k]);
    }
    row
}

/// Coefficient-space row of the side-`side` boundary value of the full
/// mapped-contour Cauchy transform at the contour point with interval
/// preimage `x` (any interior x, not just grid points).
pub fn boundary_row(map: &RationalMap, x: f64, side: Side, n: usize) -> Vec<Complex64> {
    let (mu_l, mu_r) = endpoint_rows(n);
    let mut row = s_row_boundary(x, n, side);
    for tp in map.preimages_at_collocation(x) {
        if tp.tag == ContourTag::Interval {
            continue;
        }
        if let Preimage::Finite(v) = tp.point {
            let vals = s_row_off(v, n);
            for k in 0..n {
                row[k] += vals[k];
            }
        }
    }
    let m = map.pole_multiplicity as f64;
    for k in 0..n {
        row[k] -= m * (mu_l[k] + mu_r[k]);
    }
    row
}

/// Assemble the Cauchy collocation pair for a map.
///
/// `C⁺ = C₁⁺ + Σ_branches C_j⁺ - 𝟙 diag(m (μ^L + μ^R)) F` with m the
/// endpoint pole multiplicity; `C⁻` differs only in the interval-branch
/// diagonal, and `C⁺ - C⁻ = I` holds on interior rows.
pub fn assemble_cauchy(map: &RationalMap, n: usize) -> Result<CauchyPair, CauchyError> {
    if n < 4 {
        return Err(CauchyError::TooSmall { min: 4, got: n });
    }
    let grid = chebyshev_points(n).expect("n >= 4");
    let f = transform_matrix(n);
    let (mu_l, mu_r) = endpoint_rows(n);

    let mut c_plus = interval_matrix(n, Side::Plus)?;
    let mut c_minus = interval_matrix(n, Side::Minus)?;

    for branch in &map.branches {
        if branch.tag == ContourTag::Interval {
            continue;
        }
        let mut pres = vec![Preimage::Infinite; n];
        for p in 1..n - 1 {
            let all = map.preimages_at_collocation(grid.x[p]);
            let found = all
                .iter()
                .find(|t| t.tag == branch.tag)
                .expect("branch present");
            pres[p] = found.point;
        }
        let block = exterior_block(&pres, branch.first_row, branch.last_row, n, &f, &mu_l, &mu_r)?;
        c_plus += &block;
        c_minus += &block;
    }

    // rank-one endpoint correction, identical in every row
    let m = map.pole_multiplicity as f64;
    let mut corr = vec![Complex64::new(0.0, 0.0); n];
    for q in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..n {
            acc += (mu_l[k] + mu_r[k]) * f[(k, q)];
        }
        corr[q] = m * acc;
    }
    for p in 0..n {
        for q in 0..n {
            c_plus[(p, q)] -= corr[q];
            c_minus[(p, q)] -= corr[q];
        }
    }

    Ok(CauchyPair {
        c_plus,
        c_minus,
        map: map.clone(),
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::RationalMap;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn s0_at_i_is_quarter() {
        let row = cauchy_basis_row(c(0.0, 1.0), 8, Side::Off).unwrap();
        assert!((row.values[0] - c(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn plemelj_jump_of_basis() {
        // S_k⁺ - S_k⁻ = T_k(x)
        for x in [-0.7, 0.0, 0.31, 0.9] {
            let plus = cauchy_basis_row(c(x, 0.0), 12, Side::Plus).unwrap();
            let minus = cauchy_basis_row(c(x, 0.0), 12, Side::Minus).unwrap();
            let mut t_prev = 1.0;
            let mut t_cur = x;
            for k in 0..12 {
                let t_k = match k {
                    0 => 1.0,
                    1 => x,
                    _ => {
                        let t = 2.0 * x * t_cur - t_prev;
                        t_prev = t_cur;
                        t_cur = t;
                        t
                    }
                };
                assert!(
                    (plus.values[k] - minus.values[k] - c(t_k, 0.0)).norm() < 1e-13,
                    "x={x} k={k}"
                );
            }
        }
    }

    #[test]
    fn far_field_decay_matches_moment() {
        // S_k(z) ≈ -m_k/(2πi z) for large |z|
        let z = c(2.0e6, 1.5e6);
        let row = cauchy_basis_row(z, 6, Side::Off).unwrap();
        for k in [0usize, 2, 4] {
            let expect = -chebyshev_moment(k) / (2.0 * PI * I * z);
            assert!(
                (row.values[k] - expect).norm() < 1e-6 * expect.norm() + 1e-22,
                "k={k}: {} vs {}",
                row.values[k],
                expect
            );
        }
    }

    #[test]
    fn rejects_bad_points() {
        assert!(matches!(
            cauchy_basis_row(c(1.0, 0.0), 4, Side::Off),
            Err(CauchyError::AtEndpoint(_))
        ));
        assert!(matches!(
            cauchy_basis_row(c(0.5, 0.0), 4, Side::Off),
            Err(CauchyError::WrongSide { .. })
        ));
        assert!(matches!(
            cauchy_basis_row(c(0.5, 0.2), 4, Side::Plus),
            Err(CauchyError::WrongSide { .. })
        ));
    }

    #[test]
    fn regime_forms_agree() {
        // Both closed forms are valid near the interval (|ζ| close to 1 keeps
        // T_k bounded); they must agree there. Far points only at small n,
        // where the T/U growth stays within budget.
        for (&z, n) in [(c(0.05, 0.02), 40), (c(-0.6, -0.03), 40), (c(2.0, 1.0), 6)]
            .iter()
            .map(|(z, n)| (z, *n))
        {
            let tu = s_row_tu(z, n);
            let zf = s_row_zeta(s0_off(z), inverse_joukowski(z), n);
            for k in 0..n {
                assert!(
                    (tu[k] - zf[k]).norm() < 1e-10,
                    "z={z} k={k}: {} vs {}",
                    tu[k],
                    zf[k]
                );
            }
        }
    }

    #[test]
    fn inverse_joukowski_examples() {
        let z = inverse_joukowski(c(-2.0, 0.0));
        assert!((z - c(-2.0 + 3.0f64.sqrt(), 0.0)).norm() < 1e-15);
        // maps exterior to the open unit disk
        for &w in &[c(2.0, 0.0), c(0.0, 3.0), c(-0.5, 0.01), c(10.0, -4.0)] {
            assert!(inverse_joukowski(w).norm() < 1.0);
        }
    }

    #[test]
    fn endpoint_rows_finite() {
        for n in [8, 65, 513] {
            let (mu_l, mu_r) = endpoint_rows(n);
            for k in 0..n {
                assert!(mu_l[k].is_finite() && mu_r[k].is_finite());
            }
        }
    }

    #[test]
    fn subtraction_term_is_constant_column() {
        // 𝟙 diag(μL+μR) F applied to samples of T₀ gives a constant vector
        let n = 9;
        let f = transform_matrix(n);
        let (mu_l, mu_r) = endpoint_rows(n);
        let ones = nalgebra::DVector::from_element(n, c(1.0, 0.0));
        let coeffs = &f * &ones;
        let scalar: Complex64 = (0..n).map(|k| (mu_l[k] + mu_r[k]) * coeffs[k]).sum();
        // every row of the rank-one term produces the same value
        assert!(scalar.is_finite());
    }

    #[test]
    fn plemelj_identity_assembled() {
        for map in [RationalMap::two_to_one(), RationalMap::four_to_one()] {
            let pair = assemble_cauchy(&map, 33).unwrap();
            let n = pair.n;
            for p in 1..n - 1 {
                for q in 0..n {
                    let expect = if p == q { 1.0 } else { 0.0 };
                    let diff = pair.c_plus[(p, q)] - pair.c_minus[(p, q)];
                    assert!(
                        (diff - c(expect, 0.0)).norm() <= 1e-13,
                        "{} ({p},{q}): {diff}",
                        map.name()
                    );
                }
            }
        }
    }

    #[test]
    fn interval_matrix_principal_value_at_zero() {
        // samples of g(t) = t at x = 0 (n odd): C⁺g(0) = 1/(πi)
        let n = 9;
        let grid = chebyshev_points(n).unwrap();
        let m = interval_plus_matrix(n).unwrap();
        let mid = n / 2;
        let mut acc = c(0.0, 0.0);
        for q in 0..n {
            acc += m[(mid, q)] * c(grid.x[q], 0.0);
        }
        let expect = (PI * I).inv();
        assert!((acc - expect).norm() < 1e-13, "{acc} vs {expect}");
    }

    #[test]
    fn interval_sides_differ_by_identity() {
        let n = 17;
        let plus = interval_matrix(n, Side::Plus).unwrap();
        let minus = interval_matrix(n, Side::Minus).unwrap();
        for p in 1..n - 1 {
            for q in 0..n {
                let expect = if p == q { 1.0 } else { 0.0 };
                assert!((plus[(p, q)] - minus[(p, q)] - c(expect, 0.0)).norm() < 1e-13);
            }
        }
    }
}
