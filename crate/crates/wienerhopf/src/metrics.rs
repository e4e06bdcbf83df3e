//! Error norms on the mapped interval and in the transform variable, and
//! convergence sweeps against exact or high-resolution references.

use crate::chebyshev::{clenshaw_curtis_weights, eval_series, values_to_coeffs};
use crate::diffraction::{sommerfeld_exact, DiffractionProblem, ProblemKind};
use crate::mapping::CollocationGrid;
use crate::rh::{solve, RHSolution, SolveError};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("sample lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("exact reference is only available for the Sommerfeld problem")]
    NoExactReference,
    #[error("reference resolution {n_ref} must exceed the largest swept n = {n_max}")]
    ReferenceTooCoarse { n_ref: usize, n_max: usize },
    #[error("n_list must be ascending and non-empty")]
    BadNList,
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormOrder {
    L2,
    LInf,
}

/// Error norm in the mapped unit interval: Clenshaw-Curtis sum of
/// `|Q - Q_n|^2` for L2, plain maximum for L-infinity.
pub fn e_norm(
    exact: &[Complex64],
    numeric: &[Complex64],
    order: NormOrder,
) -> Result<f64, MetricsError> {
    if exact.len() != numeric.len() {
        return Err(MetricsError::LengthMismatch(exact.len(), numeric.len()));
    }
    match order {
        NormOrder::LInf => Ok(exact
            .iter()
            .zip(numeric)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)),
        NormOrder::L2 => {
            let w = clenshaw_curtis_weights(exact.len()).map_err(|_| MetricsError::BadNList)?;
            let sum: f64 = exact
                .iter()
                .zip(numeric)
                .zip(&w)
                .map(|((a, b), wq)| wq * (a - b).norm_sqr())
                .sum();
            Ok(sum.sqrt())
        }
    }
}

/// Error norm in the transform variable: the interval norm weighted by
/// `dα/dx`. Endpoint terms are dropped; the compared functions share the
/// decaying endpoint value there, so the integrand is forced to zero.
pub fn e_alpha_norm(
    exact: &[Complex64],
    numeric: &[Complex64],
    grid: &CollocationGrid,
) -> Result<f64, MetricsError> {
    let n = grid.grid.n;
    if exact.len() != n || numeric.len() != n {
        return Err(MetricsError::LengthMismatch(exact.len(), numeric.len()));
    }
    let w = clenshaw_curtis_weights(n).map_err(|_| MetricsError::BadNList)?;
    let mut sum = 0.0;
    for q in 1..n - 1 {
        let d = (exact[q] - numeric[q]).norm_sqr();
        sum += w[q] * d * grid.dalpha_dx[q].expect("interior");
    }
    Ok(sum.abs().sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reference {
    Exact,
    SelfHighRes(usize),
}

impl std::fmt::Display for Reference {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Reference::Exact => write!(f, "exact"),
            Reference::SelfHighRes(n) => write!(f, "self:{n}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConvergenceRecord {
    pub n: usize,
    pub e2: f64,
    pub einf: f64,
    pub ealpha2: f64,
    pub reference: Reference,
}

/// All 2m boundary-value curves of a solution, plus components first.
/// Endpoint entries are zero by the decay convention.
fn boundary_curves(sol: &RHSolution) -> Vec<Vec<Complex64>> {
    let (plus, minus) = sol.boundary_values();
    plus.into_iter().chain(minus).collect()
}

/// Reference curves sampled on the grid of a coarser solve.
fn reference_curves(
    problem: &DiffractionProblem,
    reference: Reference,
    ref_sol: Option<&RHSolution>,
    coarse: &RHSolution,
) -> Result<Vec<Vec<Complex64>>, MetricsError> {
    let n = coarse.n;
    match reference {
        Reference::Exact => {
            if problem.kind != ProblemKind::Sommerfeld {
                return Err(MetricsError::NoExactReference);
            }
            let mut plus = vec![Complex64::new(0.0, 0.0); n];
            let mut minus = vec![Complex64::new(0.0, 0.0); n];
            for q in 1..n - 1 {
                let alpha = coarse.grid.alpha_rotated[q].expect("interior");
                let (pp, dm) = sommerfeld_exact(&problem.params, alpha);
                plus[q] = pp;
                minus[q] = dm;
            }
            Ok(vec![plus, minus])
        }
        Reference::SelfHighRes(_) => {
            let rs = ref_sol.expect("reference solution present");
            let ref_curves = boundary_curves(rs);
            let mut out = Vec::with_capacity(ref_curves.len());
            for curve in &ref_curves {
                let series = values_to_coeffs(&rs.grid.grid, curve).expect("grid-sized");
                let mut resampled = vec![Complex64::new(0.0, 0.0); n];
                for q in 1..n - 1 {
                    resampled[q] =
                        eval_series(&series, Complex64::new(coarse.grid.grid.x[q], 0.0));
                }
                out.push(resampled);
            }
            Ok(out)
        }
    }
}

/// Solve at each n in `n_list` and record the worst-component errors of
/// the boundary-value curves against the reference.
pub fn convergence_sweep(
    problem: &DiffractionProblem,
    n_list: &[usize],
    reference: Reference,
) -> Result<Vec<ConvergenceRecord>, MetricsError> {
    if n_list.is_empty() || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MetricsError::BadNList);
    }
    if let Reference::SelfHighRes(n_ref) = reference {
        let n_max = *n_list.last().unwrap();
        if n_ref <= n_max {
            return Err(MetricsError::ReferenceTooCoarse { n_ref, n_max });
        }
    }
    let ref_sol = match reference {
        Reference::SelfHighRes(n_ref) => Some(solve(&problem.rh, n_ref)?),
        Reference::Exact => {
            if problem.kind != ProblemKind::Sommerfeld {
                return Err(MetricsError::NoExactReference);
            }
            None
        }
    };

    let mut out = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let sol = solve(&problem.rh, n)?;
        let numeric = boundary_curves(&sol);
        let exact = reference_curves(problem, reference, ref_sol.as_ref(), &sol)?;
        let mut e2 = 0.0f64;
        let mut einf = 0.0f64;
        let mut ealpha2 = 0.0f64;
        for (ex, num) in exact.iter().zip(&numeric) {
            e2 = e2.max(e_norm(ex, num, NormOrder::L2)?);
            einf = einf.max(e_norm(ex, num, NormOrder::LInf)?);
            ealpha2 = ealpha2.max(e_alpha_norm(ex, num, &sol.grid)?);
        }
        out.push(ConvergenceRecord {
            n,
            e2,
            einf,
            ealpha2,
            reference,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::RationalMap;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn norm_basics() {
        let a = vec![c(1.0, 2.0); 9];
        assert_eq!(e_norm(&a, &a, NormOrder::L2).unwrap(), 0.0);
        assert_eq!(e_norm(&a, &a, NormOrder::LInf).unwrap(), 0.0);
        // constant error c: L2 -> |c|·sqrt(2), inf -> |c|
        let b = vec![c(1.0, 2.0) + c(0.3, -0.4); 9];
        let l2 = e_norm(&a, &b, NormOrder::L2).unwrap();
        assert!((l2 - 0.5 * 2.0f64.sqrt()).abs() < 1e-14, "{l2}");
        let li = e_norm(&a, &b, NormOrder::LInf).unwrap();
        assert!((li - 0.5).abs() < 1e-15);
        // homogeneity
        let scaled: Vec<_> = a.iter().map(|z| z * 3.0).collect();
        let scaled_b: Vec<_> = b.iter().map(|z| z * 3.0).collect();
        let l2s = e_norm(&scaled, &scaled_b, NormOrder::L2).unwrap();
        assert!((l2s - 3.0 * l2).abs() < 1e-13);
        assert!(e_norm(&a, &b[..5], NormOrder::L2).is_err());
    }

    #[test]
    fn alpha_norm_frozen_value() {
        // error f(x) = (1-x²)² on the 4-to-1 map: the weighted sum equals
        // ∫ (1-x²)⁴ M'(x) dx = ∫ (1-x²)(1+6x²+x⁴) dx = 64/21 exactly once
        // n is large enough for the degree-6 polynomial integrand.
        let map = RationalMap::four_to_one();
        let grid = CollocationGrid::build(&map, 9, 0.0).unwrap();
        let f: Vec<Complex64> = grid
            .grid
            .x
            .iter()
            .map(|&x| c((1.0 - x * x).powi(2), 0.0))
            .collect();
        let zero = vec![c(0.0, 0.0); 9];
        let v = e_alpha_norm(&f, &zero, &grid).unwrap();
        let expect = (64.0f64 / 21.0).sqrt();
        assert!((v - expect).abs() < 1e-13, "{v} vs {expect}");
    }

    #[test]
    fn sweep_rejects_bad_input() {
        let map = RationalMap::four_to_one();
        let p = crate::diffraction::sommerfeld_problem(
            &crate::diffraction::PhysicalParams::sommerfeld(1.0, std::f64::consts::PI / 5.0),
            map,
            std::f64::consts::FRAC_PI_4,
        )
        .unwrap();
        assert!(convergence_sweep(&p, &[33, 17], Reference::Exact).is_err());
        assert!(matches!(
            convergence_sweep(&p, &[17, 33], Reference::SelfHighRes(33)),
            Err(MetricsError::ReferenceTooCoarse { .. })
        ));
    }
}
