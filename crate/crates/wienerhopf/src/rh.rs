//! Assembly and solution of scalar and block-matrix Riemann-Hilbert
//! collocation systems on the rotated real line, with decay conditions at
//! the preimages of infinity, plus evaluation of solutions on and off the
//! contour.
//!
//! The jump relation `A(α) Φ₊ + B(α) Φ₋ + C(α) = 0` is collocated as
//! `[diag A(α_p^rot)] C⁺ + [diag B(α_p^rot)] C⁻` acting on density
//! samples; the first and last collocation rows of every block are
//! replaced by `Φ(endpoint) = 0`, which is exact for densities decaying
//! like `α^{-1/2}`.

use crate::cauchy::{self, assemble_cauchy, CauchyError, CauchyPair, Side};
use crate::chebyshev::{values_to_coeffs, ChebSeries};
use crate::linalg::{DenseSolver, LinalgError};
use crate::mapping::{CollocationGrid, MapError, RationalMap};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;
use thiserror::Error;

pub type MatrixSampler = Box<dyn Fn(Complex64) -> DMatrix<Complex64> + Send + Sync>;
pub type VectorSampler = Box<dyn Fn(Complex64) -> DVector<Complex64> + Send + Sync>;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("rotation angle chi = {0} outside [0, pi/2)")]
    InvalidChi(f64),
    #[error("rotation by chi = {chi} crosses the singularity '{name}' at {location}")]
    RotationIllegal {
        name: String,
        location: Complex64,
        chi: f64,
    },
    #[error("coefficient sampler '{which}' returned a non-finite value at alpha = {alpha}")]
    SamplerFailure { which: &'static str, alpha: Complex64 },
    #[error("condition estimate {0:.3e} exceeds 1e12; system unreliable")]
    IllConditioned(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Cauchy(#[from] CauchyError),
    #[error("n = {0} too small for a solve (need n >= 8)")]
    TooSmall(usize),
}

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("alpha = {alpha} is within {dist:.2e} of the rotated contour; use boundary values")]
    TooCloseToContour { alpha: Complex64, dist: f64 },
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfPlane {
    Above,
    Below,
}

/// A singularity of the coefficient functions that constrains the
/// rotation. `hint` records which side of the real axis the point belongs
/// to in the limit of vanishing regularization (k + i0 causality).
#[derive(Debug, Clone)]
pub struct SingularityInfo {
    pub name: String,
    pub location: Complex64,
    pub hint: HalfPlane,
}

/// A Riemann-Hilbert problem `A Φ₊ + B Φ₋ + C = 0` on `ℝ e^{-iχ}`.
///
/// Samplers take the rotated collocation point and return the m x m
/// coefficient blocks / the m-vector C. All catalogue problems close the
/// system with the decay condition `Φ = 0` at the endpoint preimages of
/// infinity.
pub struct RHProblem {
    pub m: usize,
    pub coeff_a: MatrixSampler,
    pub coeff_b: MatrixSampler,
    pub rhs_c: VectorSampler,
    pub chi: f64,
    pub map: RationalMap,
    pub name: String,
    pub singularities: Vec<SingularityInfo>,
    pub warnings: Vec<String>,
}

/// Solved density with per-component Chebyshev series and the operators
/// needed to evaluate boundary values and off-contour continuations.
#[derive(Debug, Clone)]
pub struct RHSolution {
    pub m: usize,
    pub n: usize,
    pub chi: f64,
    pub map: RationalMap,
    pub density: Vec<Vec<Complex64>>,
    pub series: Vec<ChebSeries>,
    pub cauchy: CauchyPair,
    pub grid: CollocationGrid,
    pub residual: f64,
    pub condition: f64,
    pub problem_name: String,
}

/// Which side of the rotated contour a point lies on: the sign of
/// `Im(α e^{iχ})`.
pub fn half_plane_side(alpha: Complex64, chi: f64) -> Result<HalfPlane, EvalError> {
    let unrot = alpha * Complex64::from_polar(1.0, chi);
    let dist = unrot.im.abs();
    if dist <= 1e-12 * (1.0 + unrot.norm()) {
        return Err(EvalError::TooCloseToContour { alpha, dist });
    }
    Ok(if unrot.im > 0.0 {
        HalfPlane::Above
    } else {
        HalfPlane::Below
    })
}

/// Collocation grid for a map at rotation angle `chi` in [0, pi/2).
pub fn build_grid(map: &RationalMap, n: usize, chi: f64) -> Result<CollocationGrid, SolveError> {
    if !(0.0..FRAC_PI_2).contains(&chi) {
        return Err(SolveError::InvalidChi(chi));
    }
    Ok(CollocationGrid::build(map, n, chi)?)
}

/// Check that sweeping ℝ onto ℝe^{-iχ} crosses none of the declared
/// singularities and leaves none of them on the rotated contour.
pub fn check_rotation_legality(
    singularities: &[SingularityInfo],
    chi: f64,
) -> Result<(), SolveError> {
    for s in singularities {
        let p = s.location;
        let on_axis = p.im.abs() <= 1e-12 * (1.0 + p.re.abs());
        let crossed = if on_axis {
            // swept sectors: (-chi, 0) off the positive ray, (pi-chi, pi) off
            // the negative ray; an on-axis point is crossed when its causal
            // side puts it inside the sweep
            if p.re > 0.0 {
                s.hint == HalfPlane::Below && chi > 0.0
            } else {
                s.hint == HalfPlane::Above && chi > 0.0
            }
        } else {
            let a = p.arg();
            (-chi < a && a < 0.0) || (std::f64::consts::PI - chi < a && a < std::f64::consts::PI)
        };
        let on_contour = (p * Complex64::from_polar(1.0, chi)).im.abs()
            <= 1e-10 * (1.0 + p.norm());
        if crossed || on_contour {
            return Err(SolveError::RotationIllegal {
                name: s.name.clone(),
                location: p,
                chi,
            });
        }
    }
    Ok(())
}

/// Assemble the mn x mn block collocation system and right-hand side.
///
/// Block (i, j) contributes `diag_p[A_ij] C⁺ + diag_p[B_ij] C⁻`; rows for
/// x = ±1 in every block are replaced by the decay condition.
pub fn assemble_system(
    problem: &RHProblem,
    grid: &CollocationGrid,
    cauchy: &CauchyPair,
) -> Result<(DMatrix<Complex64>, DVector<Complex64>), SolveError> {
    let m = problem.m;
    let n = cauchy.n;
    let zero = Complex64::new(0.0, 0.0);
    let mut sys = DMatrix::from_element(m * n, m * n, zero);
    let mut rhs = DVector::from_element(m * n, zero);

    for p in 1..n - 1 {
        let alpha = grid.alpha_rotated[p].expect("interior point");
        let a = (problem.coeff_a)(alpha);
        let b = (problem.coeff_b)(alpha);
        let cv = (problem.rhs_c)(alpha);
        if a.iter().any(|z| !z.is_finite()) {
            return Err(SolveError::SamplerFailure { which: "A", alpha });
        }
        if b.iter().any(|z| !z.is_finite()) {
            return Err(SolveError::SamplerFailure { which: "B", alpha });
        }
        if cv.iter().any(|z| !z.is_finite()) {
            return Err(SolveError::SamplerFailure { which: "C", alpha });
        }
        for i in 0..m {
            for j in 0..m {
                let (aij, bij) = (a[(i, j)], b[(i, j)]);
                if aij == zero && bij == zero {
                    continue;
                }
                for q in 0..n {
                    sys[(i * n + p, j * n + q)] +=
                        aij * cauchy.c_plus[(p, q)] + bij * cauchy.c_minus[(p, q)];
                }
            }
            rhs[i * n + p] = -cv[i];
        }
    }
    // decay closure: density vanishes at the preimages of infinity
    for i in 0..m {
        for p in [0, n - 1] {
            sys[(i * n + p, i * n + p)] = Complex64::new(1.0, 0.0);
        }
    }
    Ok((sys, rhs))
}

/// Solve the RH problem at resolution `n`.
pub fn solve(problem: &RHProblem, n: usize) -> Result<RHSolution, SolveError> {
    if n < 8 {
        return Err(SolveError::TooSmall(n));
    }
    check_rotation_legality(&problem.singularities, problem.chi)?;
    let grid = build_grid(&problem.map, n, problem.chi)?;
    let cauchy = assemble_cauchy(&problem.map, n)?;
    let (sys, rhs) = assemble_system(problem, &grid, &cauchy)?;

    let solver = DenseSolver::new(sys.clone())?;
    let condition = solver.condition_estimate();
    if condition > 1e12 {
        return Err(SolveError::IllConditioned(condition));
    }
    let x = solver.solve(&rhs)?;
    let residual = (&sys * &x - &rhs)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);

    let m = problem.m;
    let mut density = Vec::with_capacity(m);
    let mut series = Vec::with_capacity(m);
    for i in 0..m {
        let comp: Vec<Complex64> = (0..n).map(|q| x[i * n + q]).collect();
        series.push(values_to_coeffs(&grid.grid, &comp).expect("grid-sized"));
        density.push(comp);
    }

    Ok(RHSolution {
        m,
        n,
        chi: problem.chi,
        map: problem.map.clone(),
        density,
        series,
        cauchy,
        grid,
        residual,
        condition,
        problem_name: problem.name.clone(),
    })
}

impl RHSolution {
    /// Boundary values `(C⁺ density, C⁻ density)` per component, with the
    /// endpoint entries pinned to 0 by the decay convention.
    pub fn boundary_values(&self) -> (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>) {
        let n = self.n;
        let zero = Complex64::new(0.0, 0.0);
        let mut plus = Vec::with_capacity(self.m);
        let mut minus = Vec::with_capacity(self.m);
        for comp in &self.density {
            let v = DVector::from_column_slice(comp);
            let mut pv: Vec<Complex64> = (&self.cauchy.c_plus * &v).iter().copied().collect();
            let mut mv: Vec<Complex64> = (&self.cauchy.c_minus * &v).iter().copied().collect();
            pv[0] = zero;
            pv[n - 1] = zero;
            mv[0] = zero;
            mv[n - 1] = zero;
            plus.push(pv);
            minus.push(mv);
        }
        (plus, minus)
    }

    /// Side-`side` boundary value of the Cauchy transform at the contour
    /// point whose interval preimage is `x` (any interior point).
    pub fn boundary_value_at(&self, x: f64, side: Side) -> Vec<Complex64> {
        let row = cauchy::boundary_row(&self.map, x, side, self.n);
        self.series
            .iter()
            .map(|s| {
                s.coeffs
                    .iter()
                    .zip(&row)
                    .map(|(c, r)| c * r)
                    .sum::<Complex64>()
            })
            .collect()
    }

    /// Evaluate `𝒞Φ(alpha)` off the rotated contour: `Φ₊` above it, `Φ₋`
    /// below. Points within 1e-10 (relative) of the contour are refused.
    pub fn evaluate_offcontour(&self, alpha: Complex64) -> Result<Vec<Complex64>, EvalError> {
        let unrot = alpha * Complex64::from_polar(1.0, self.chi);
        let dist = unrot.im.abs();
        if dist <= 1e-10 * (1.0 + unrot.norm()) {
            return Err(EvalError::TooCloseToContour { alpha, dist });
        }
        let roots = self.map.roots(unrot)?;
        let row = cauchy::offcontour_row(&self.map, &roots, self.n);
        Ok(self
            .series
            .iter()
            .map(|s| {
                s.coeffs
                    .iter()
                    .zip(&row)
                    .map(|(c, r)| c * r)
                    .sum::<Complex64>()
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::RationalMap;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn homogeneous_problem(map: RationalMap, b: f64) -> RHProblem {
        RHProblem {
            m: 1,
            coeff_a: Box::new(|_| DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0))),
            coeff_b: Box::new(move |_| DMatrix::from_element(1, 1, Complex64::new(b, 0.0))),
            rhs_c: Box::new(|_| DVector::from_element(1, Complex64::new(0.0, 0.0))),
            chi: std::f64::consts::FRAC_PI_4,
            map,
            name: "homogeneous".into(),
            singularities: vec![],
            warnings: vec![],
        }
    }

    #[test]
    fn half_plane_examples() {
        assert_eq!(half_plane_side(c(0.0, 1.0), 0.0).unwrap(), HalfPlane::Above);
        assert_eq!(half_plane_side(c(0.0, -1.0), 0.0).unwrap(), HalfPlane::Below);
        assert_eq!(
            half_plane_side(c(1.0, 0.0), std::f64::consts::FRAC_PI_4).unwrap(),
            HalfPlane::Above
        );
        assert!(half_plane_side(c(1.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn grid_rotation_factor() {
        let rot = Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4);
        assert!((rot - c(0.70710678118654752, -0.70710678118654752)).norm() < 1e-15);
        let map = RationalMap::four_to_one();
        let g = build_grid(&map, 17, std::f64::consts::FRAC_PI_4).unwrap();
        for p in 1..16 {
            let a = g.alpha[p].unwrap();
            assert!((g.alpha_rotated[p].unwrap() - a * rot).norm() < 1e-14 * (1.0 + a.abs()));
        }
        assert!(g.alpha[0].is_none() && g.alpha[16].is_none());
        assert!(build_grid(&map, 17, 1.6).is_err());
    }

    #[test]
    fn homogeneous_solves_to_zero() {
        for map in [RationalMap::two_to_one(), RationalMap::four_to_one()] {
            let p = homogeneous_problem(map, -1.0);
            let sol = solve(&p, 17).unwrap();
            for comp in &sol.density {
                for v in comp {
                    assert!(v.norm() < 1e-12, "{v}");
                }
            }
            assert_eq!(sol.density[0][0], c(0.0, 0.0));
            assert_eq!(sol.density[0][16], c(0.0, 0.0));
        }
    }

    #[test]
    fn constant_negative_jump_is_degenerate() {
        // A = B = 1 gives the jump G = -1: the principal-value (airfoil)
        // operator, whose discretization carries the classical
        // Chebyshev-weight null mode. The solver must refuse it loudly
        // rather than return garbage.
        for map in [RationalMap::two_to_one(), RationalMap::four_to_one()] {
            let p = homogeneous_problem(map, 1.0);
            match solve(&p, 17) {
                Err(SolveError::IllConditioned(est)) => assert!(est > 1e12),
                Err(SolveError::Linalg(_)) => {}
                other => panic!("expected ill-conditioned report, got {other:?}"),
            }
        }
    }

    #[test]
    fn legality_check() {
        let bad = vec![SingularityInfo {
            name: "pole".into(),
            location: c(0.8, 0.0),
            hint: HalfPlane::Below,
        }];
        assert!(check_rotation_legality(&bad, 0.5).is_err());
        let good = vec![SingularityInfo {
            name: "pole".into(),
            location: c(0.8, 0.0),
            hint: HalfPlane::Above,
        }];
        assert!(check_rotation_legality(&good, 0.5).is_ok());
        // negative-axis point shifted below: legal; above: crossed
        let good = vec![SingularityInfo {
            name: "pole".into(),
            location: c(-0.9, 0.0),
            hint: HalfPlane::Below,
        }];
        assert!(check_rotation_legality(&good, 0.5).is_ok());
        let bad = vec![SingularityInfo {
            name: "pole".into(),
            location: c(-0.9, 0.0),
            hint: HalfPlane::Above,
        }];
        assert!(check_rotation_legality(&bad, 0.5).is_err());
        // genuinely complex singularity inside the swept sector
        let bad = vec![SingularityInfo {
            name: "cut end".into(),
            location: Complex64::from_polar(2.0, -0.3),
            hint: HalfPlane::Below,
        }];
        assert!(check_rotation_legality(&bad, 0.5).is_err());
    }

    #[test]
    fn offcontour_refuses_near_contour() {
        let p = homogeneous_problem(RationalMap::four_to_one(), -1.0);
        let sol = solve(&p, 17).unwrap();
        let on = Complex64::from_polar(2.0, -sol.chi);
        assert!(matches!(
            sol.evaluate_offcontour(on),
            Err(EvalError::TooCloseToContour { .. })
        ));
        assert!(sol.evaluate_offcontour(c(0.0, 2.0)).is_ok());
    }
}
