//! Far-field directivity `D(θ)` from solved transforms via the
//! steepest-descent formula, with the exact Sommerfeld directivity as
//! oracle.
//!
//! The diffracted field behaves like `D(θ) e^{ikr}/√r`; steepest descent
//! evaluates the relevant transform at the stationary-phase point
//! `∓k cosθ` (− for the Sommerfeld/Senior transform convention, + for
//! Hurd's). Near `θ = 0, π` the raw formula is a 0·∞ product of the
//! `sinθ` prefactor with a branch-point blow-up of the transform; the
//! evaluators below use the identity `sinθ/γ(-k cosθ) = i/k` (and
//! `sinθ/β(k cosθ) = 1/k`) to cancel it analytically, so every angle away
//! from the shadow boundaries is evaluated without dividing by a
//! vanishing branch function.

use crate::diffraction::{
    beta_eval, gamma_eval, DiffractionProblem, PhysicalParams, ProblemKind,
};
use crate::rh::{EvalError, RHSolution};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI};
use thiserror::Error;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Width of the shadow-boundary exclusion window in `cosθ + cosθ₀`.
pub const SHADOW_WINDOW: f64 = 0.1;

/// Arguments this close to the rotated contour are evaluated through the
/// boundary-value interpolant instead of the off-contour continuation.
const NEAR_CONTOUR: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum FarfieldError {
    #[error("directivity pole at the shadow boundary cosθ = -cosθ₀ (θ = {0})")]
    ShadowBoundaryPole(f64),
    #[error("problem kind {0:?} needs the scalar-pair entry point")]
    NeedsScalarPair(ProblemKind),
    #[error("problem kind mismatch: solution for '{0}' passed with kind {1:?}")]
    KindMismatch(String, ProblemKind),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Directivity samples over a θ grid. `flags[i]` marks angles inside the
/// shadow-boundary exclusion window, where the non-uniform formula is
/// unreliable and the sample must not be trusted.
#[derive(Debug, Clone)]
pub struct DirectivityCurve {
    pub thetas: Vec<f64>,
    pub values: Vec<Complex64>,
    pub flags: Vec<bool>,
    pub shadow_angles: Vec<f64>,
}

/// Shadow-boundary test `|cosθ + cosθ₀| < window`.
pub fn in_shadow_window(theta: f64, theta0: f64) -> bool {
    (theta.cos() + theta0.cos()).abs() < SHADOW_WINDOW
}

/// Exact hard-hard Sommerfeld directivity
/// `D(θ) = -√(2/kπ) e^{-iπ/4} sin(θ/2) sin(θ₀/2) / (cosθ + cosθ₀)`.
pub fn sommerfeld_directivity_exact(
    params: &PhysicalParams,
    theta: f64,
) -> Result<Complex64, FarfieldError> {
    let denom = theta.cos() + params.theta0.cos();
    if denom.abs() < 1e-12 {
        return Err(FarfieldError::ShadowBoundaryPole(theta));
    }
    let amp = -(2.0 / (params.k * PI)).sqrt() * (theta / 2.0).sin() * (params.theta0 / 2.0).sin()
        / denom;
    Ok(amp * Complex64::from_polar(1.0, -FRAC_PI_4))
}

/// Common prefactor `√k e^{-iπ/4} / √(2π)`.
fn prefactor(k: f64) -> Complex64 {
    Complex64::from_polar(k.sqrt() / (2.0 * PI).sqrt(), -FRAC_PI_4)
}

/// Evaluate the solution's sectionally analytic vector at a real physical
/// argument: off-contour continuation away from the origin, minus-side
/// boundary interpolant next to it (the contour passes through 0).
fn eval_at_real(sol: &RHSolution, alpha: f64) -> Result<Vec<Complex64>, EvalError> {
    if alpha.abs() <= NEAR_CONTOUR {
        Ok(sol.boundary_value_at(0.0, crate::cauchy::Side::Minus))
    } else {
        sol.evaluate_offcontour(Complex64::new(alpha, 0.0))
    }
}

/// Sommerfeld: `(Φ'₊ + Φ'₋)(α)` with `Φ'₊` continued from the numeric
/// solution and `Φ'₋` in closed form. Used above the contour.
fn somm_plus_sum(
    sol: &RHSolution,
    params: &PhysicalParams,
    alpha: f64,
) -> Result<Complex64, EvalError> {
    let phi_plus = sol.evaluate_offcontour(Complex64::new(alpha, 0.0))?[0];
    let k = params.k;
    let phi_minus = k * params.theta0.sin() / (alpha - k * params.theta0.cos());
    Ok(phi_plus + phi_minus)
}

fn somm_value(
    sol: &RHSolution,
    params: &PhysicalParams,
    theta: f64,
) -> Result<Complex64, FarfieldError> {
    let k = params.k;
    let alpha = -k * theta.cos();
    let pref = prefactor(k);
    let upper = theta <= PI;
    let s_abs = theta.sin().abs();
    // A·sinθ and B·|sinθ| via sinθ/γ(-k cosθ) = i/k
    if alpha > NEAR_CONTOUR {
        let sum = somm_plus_sum(sol, params, alpha)?;
        let a_s = -(I / k) * sum;
        Ok(if upper { pref * a_s } else { -pref * a_s })
    } else {
        let d_minus = eval_at_real(sol, alpha)?[0];
        Ok(if upper {
            pref * d_minus * s_abs
        } else {
            -pref * d_minus * s_abs
        })
    }
}

/// Senior four-function reconstruction at a real argument, from whichever
/// side of the contour the argument lies on.
/// Returns `(Φ'₊(0⁺), Φ'₊(0⁻), Φ'₋(0))`.
fn senior_functions(
    plus_vals: impl Fn(f64) -> Result<[Complex64; 2], EvalError>,
    minus_vals: impl Fn(f64) -> Result<[Complex64; 2], EvalError>,
    params: &PhysicalParams,
    alpha: f64,
) -> Result<(Complex64, Complex64, Complex64), FarfieldError> {
    let k = params.k;
    let s = params.s.expect("validated");
    let t0 = params.theta0;
    let a = Complex64::new(alpha, 0.0);
    let g = gamma_eval(k, params.epsilon, a).expect("real gap point off cuts");
    let pole = a - k * t0.cos();
    if alpha > NEAR_CONTOUR {
        // above the contour: U's numeric, Φ'₋ from the summed jump rows
        let [u1, u2] = plus_vals(alpha)?;
        let phi_m = -0.5 * ((1.0 + I * s * g) * (u1 + u2) + 2.0 * I * g * s * k * t0.sin() / pole);
        Ok((u1, u2, phi_m))
    } else {
        // below (or on) the contour: L's numeric, Φ'₊ from each jump row
        let [l1, l2] = minus_vals(alpha)?;
        let denom = 1.0 + I * s * g;
        let u1 = (-(l1 + g * l2) + I * g * (1.0 - s * k * t0.sin()) / pole) / denom;
        let u2 = (-(l1 - g * l2) - I * g * (1.0 + s * k * t0.sin()) / pole) / denom;
        Ok((u1, u2, l1))
    }
}

fn senior_value(
    plus_vals: &impl Fn(f64) -> Result<[Complex64; 2], EvalError>,
    minus_vals: &impl Fn(f64) -> Result<[Complex64; 2], EvalError>,
    params: &PhysicalParams,
    theta: f64,
) -> Result<Complex64, FarfieldError> {
    let k = params.k;
    let alpha = -k * theta.cos();
    let pref = prefactor(k);
    let (u1, u2, phi_m) = senior_functions(plus_vals, minus_vals, params, alpha)?;
    Ok(if theta <= PI {
        // D = pref · A·sinθ, A·sinθ = -(Φ'₊(0⁺)+Φ'₋(0))·(i/k)
        -pref * (I / k) * (u1 + phi_m)
    } else {
        // D = pref · B·|sinθ|, B·|sinθ| = +(Φ'₊(0⁻)+Φ'₋(0))·(i/k)
        pref * (I / k) * (u2 + phi_m)
    })
}

fn hurd_value(
    sol: &RHSolution,
    params: &PhysicalParams,
    theta: f64,
) -> Result<Complex64, FarfieldError> {
    let k = params.k;
    // Hurd's transform convention puts the stationary-phase point at +k cosθ
    let alpha = k * theta.cos();
    let pref = prefactor(k);
    let (l1, l2) = hurd_minus_functions(sol, params, alpha)?;
    let s_abs = theta.sin().abs();
    // sinθ/β(k cosθ) = 1/k on (0, π), |sinθ|/β likewise below
    Ok(if theta <= PI {
        pref * 0.5 * (l1 * s_abs + l2 / k)
    } else {
        pref * 0.5 * (-l1 * s_abs + l2 / k)
    })
}

/// Hurd `(L₁, L₂)` at a real argument: direct below the contour,
/// jump-inverted above it. The inversion is written with the β-scaled
/// entries `ē_j = β + k S_j`, so the β → 0 limits at α = ±k stay finite:
/// `L₁,₂ = (ē₂ r̄₁ ∓ β ē₁ r̄₂) / (ē₁ ē₂)` with
/// `r̄₁ = U₁ - k(S₁-S₀)/(2πi(α+k cosθ₀))`, `r̄₂ = U₂ - k(S₂+S₀)/(2πi(α+k cosθ₀))`.
fn hurd_minus_functions(
    sol: &RHSolution,
    params: &PhysicalParams,
    alpha: f64,
) -> Result<(Complex64, Complex64), FarfieldError> {
    if alpha <= NEAR_CONTOUR {
        let l = eval_at_real(sol, alpha)?;
        return Ok((l[0], l[1]));
    }
    let u = sol.evaluate_offcontour(Complex64::new(alpha, 0.0))?;
    hurd_invert_jump(params, Complex64::new(alpha, 0.0), &u)
}

fn hurd_invert_jump(
    params: &PhysicalParams,
    alpha: Complex64,
    u: &[Complex64],
) -> Result<(Complex64, Complex64), FarfieldError> {
    let k = params.k;
    let (s1, s2) = (
        params.theta1.expect("validated").sin(),
        params.theta2.expect("validated").sin(),
    );
    let s0 = params.theta0.sin();
    let b = beta_eval(k, params.epsilon, alpha).expect("off cuts");
    let k_eff = Complex64::new(k, params.epsilon);
    let pole = alpha + k_eff * params.theta0.cos();
    let e1 = b + k_eff * s1;
    let e2 = b + k_eff * s2;
    let r1 = u[0] - k_eff * (s1 - s0) / (2.0 * PI * I * pole);
    let r2 = u[1] - k_eff * (s2 + s0) / (2.0 * PI * I * pole);
    let l1 = (e2 * r1 - b * e1 * r2) / (e1 * e2);
    let l2 = (e2 * r1 + b * e1 * r2) / (e1 * e2);
    Ok((l1, l2))
}

/// Reconstruct the field transforms `(A, B)` of the full-range ansatz at
/// a point off the rotated contour.
///
/// Uses the side-appropriate equivalent representation; this is the raw
/// definition, so it divides by γ (Sommerfeld, Senior) and is not meant
/// for use next to the branch points — [`directivity`] uses internally
/// cancelled forms there.
pub fn reconstruct_a_b(
    sol: &RHSolution,
    problem: &DiffractionProblem,
    alpha: Complex64,
) -> Result<(Complex64, Complex64), FarfieldError> {
    let params = &problem.params;
    let k = params.k;
    match problem.kind {
        ProblemKind::Sommerfeld => {
            let side = crate::rh::half_plane_side(alpha, sol.chi)?;
            let a = match side {
                crate::rh::HalfPlane::Above => {
                    let phi_plus = sol.evaluate_offcontour(alpha)?[0];
                    let phi_minus =
                        k * params.theta0.sin() / (alpha - k * params.theta0.cos());
                    let g = gamma_eval(k, params.epsilon, alpha).expect("off cuts");
                    -(phi_plus + phi_minus) / g
                }
                crate::rh::HalfPlane::Below => sol.evaluate_offcontour(alpha)?[0],
            };
            Ok((a, -a))
        }
        ProblemKind::SeniorMatrix => {
            let side = crate::rh::half_plane_side(alpha, sol.chi)?;
            let g = gamma_eval(k, params.epsilon, alpha).expect("off cuts");
            let s = params.s.expect("validated");
            let t0 = params.theta0;
            let pole = alpha - k * t0.cos();
            let (u1, u2, phi_m) = match side {
                crate::rh::HalfPlane::Above => {
                    let u = sol.evaluate_offcontour(alpha)?;
                    let phi_m = -0.5
                        * ((1.0 + I * s * g) * (u[0] + u[1])
                            + 2.0 * I * g * s * k * t0.sin() / pole);
                    (u[0], u[1], phi_m)
                }
                crate::rh::HalfPlane::Below => {
                    let l = sol.evaluate_offcontour(alpha)?;
                    let denom = 1.0 + I * s * g;
                    let u1 =
                        (-(l[0] + g * l[1]) + I * g * (1.0 - s * k * t0.sin()) / pole) / denom;
                    let u2 =
                        (-(l[0] - g * l[1]) - I * g * (1.0 + s * k * t0.sin()) / pole) / denom;
                    (u1, u2, l[0])
                }
            };
            Ok((-(u1 + phi_m) / g, (u2 + phi_m) / g))
        }
        ProblemKind::Hurd => {
            let side = crate::rh::half_plane_side(alpha, sol.chi)?;
            let b = beta_eval(k, params.epsilon, alpha).expect("off cuts");
            let (l1, l2) = match side {
                crate::rh::HalfPlane::Below => {
                    let l = sol.evaluate_offcontour(alpha)?;
                    (l[0], l[1])
                }
                crate::rh::HalfPlane::Above => {
                    if alpha.im == 0.0 {
                        hurd_minus_functions(sol, params, alpha.re)?
                    } else {
                        // general complex point: same jump inversion
                        hurd_minus_general(sol, params, alpha)?
                    }
                }
            };
            Ok((0.5 * (l1 + l2 / b), 0.5 * (-l1 + l2 / b)))
        }
        kind => Err(FarfieldError::NeedsScalarPair(kind)),
    }
}

fn hurd_minus_general(
    sol: &RHSolution,
    params: &PhysicalParams,
    alpha: Complex64,
) -> Result<(Complex64, Complex64), FarfieldError> {
    let u = sol.evaluate_offcontour(alpha)?;
    hurd_invert_jump(params, alpha, &u)
}

fn curve_from<Fv: FnMut(f64) -> Result<Complex64, FarfieldError>>(
    thetas: &[f64],
    theta0: f64,
    mut value: Fv,
) -> Result<DirectivityCurve, FarfieldError> {
    let mut values = Vec::with_capacity(thetas.len());
    let mut flags = Vec::with_capacity(thetas.len());
    for &t in thetas {
        flags.push(in_shadow_window(t, theta0));
        values.push(value(t)?);
    }
    let shadow_angles = vec![PI - theta0.abs(), PI + theta0.abs()];
    Ok(DirectivityCurve {
        thetas: thetas.to_vec(),
        values,
        flags,
        shadow_angles,
    })
}

/// Directivity curve for a single-solution catalogue problem
/// (Sommerfeld, Senior matrix form, Hurd).
pub fn directivity(
    sol: &RHSolution,
    problem: &DiffractionProblem,
    thetas: &[f64],
) -> Result<DirectivityCurve, FarfieldError> {
    let params = &problem.params;
    match problem.kind {
        ProblemKind::Sommerfeld => {
            curve_from(thetas, params.theta0, |t| somm_value(sol, params, t))
        }
        ProblemKind::SeniorMatrix => {
            let plus = |alpha: f64| -> Result<[Complex64; 2], EvalError> {
                let v = sol.evaluate_offcontour(Complex64::new(alpha, 0.0))?;
                Ok([v[0], v[1]])
            };
            let minus = |alpha: f64| -> Result<[Complex64; 2], EvalError> {
                let v = eval_at_real(sol, alpha)?;
                Ok([v[0], v[1]])
            };
            curve_from(thetas, params.theta0, |t| {
                senior_value(&plus, &minus, params, t)
            })
        }
        ProblemKind::Hurd => curve_from(thetas, params.theta0, |t| hurd_value(sol, params, t)),
        kind => Err(FarfieldError::NeedsScalarPair(kind)),
    }
}

/// Directivity for Senior's problem solved in scalar-pair form: the four
/// sectionally analytic functions are recombined from the sum and
/// difference solutions.
pub fn directivity_senior_scalar(
    sum_sol: &RHSolution,
    diff_sol: &RHSolution,
    params: &PhysicalParams,
    thetas: &[f64],
) -> Result<DirectivityCurve, FarfieldError> {
    let plus = |alpha: f64| -> Result<[Complex64; 2], EvalError> {
        let sig = sum_sol.evaluate_offcontour(Complex64::new(alpha, 0.0))?[0];
        let del = diff_sol.evaluate_offcontour(Complex64::new(alpha, 0.0))?[0];
        Ok([(sig + del) / 2.0, (sig - del) / 2.0])
    };
    let minus = |alpha: f64| -> Result<[Complex64; 2], EvalError> {
        let l1 = eval_at_real(sum_sol, alpha)?[0];
        let l2 = eval_at_real(diff_sol, alpha)?[0];
        Ok([l1, l2])
    };
    curve_from(thetas, params.theta0, |t| {
        senior_value(&plus, &minus, params, t)
    })
}

/// Uniform θ grid with `samples` points on `[lo, hi]`.
pub fn theta_grid(lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    if samples == 1 {
        return vec![lo];
    }
    (0..samples)
        .map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_directivity_spot_value() {
        let p = PhysicalParams::sommerfeld(1.0, PI / 5.0);
        let d = sommerfeld_directivity_exact(&p, PI / 2.0).unwrap();
        assert!((d.norm() - 0.21550124).abs() < 1e-7, "{}", d.norm());
        // antisymmetry factor: D(0) = 0
        let d0 = sommerfeld_directivity_exact(&p, 0.0).unwrap();
        assert_eq!(d0.norm(), 0.0);
        // pole flagged at the shadow boundary
        assert!(matches!(
            sommerfeld_directivity_exact(&p, PI - PI / 5.0),
            Err(FarfieldError::ShadowBoundaryPole(_))
        ));
    }

    #[test]
    fn shadow_window_examples() {
        let theta0 = PI / 5.0;
        assert!(in_shadow_window(PI - theta0, theta0));
        assert!(!in_shadow_window(PI / 2.0, theta0));
    }

    #[test]
    fn theta_grid_inclusive() {
        let g = theta_grid(0.0, 2.0 * PI, 361);
        assert_eq!(g.len(), 361);
        assert_eq!(g[0], 0.0);
        assert!((g[360] - 2.0 * PI).abs() < 1e-15);
        assert!((g[180] - PI).abs() < 1e-15);
    }
}
