//! The half-plane diffraction catalogue: hard-hard Sommerfeld, Senior's
//! equal-impedance problem (scalar pair and 2x2 matrix forms) and Hurd's
//! unequal-impedance problem, as Riemann-Hilbert problem builders, plus
//! the causal branch functions and the exact Sommerfeld factorization.
//!
//! Branch convention: `γ(α)² = α² - k²` with cuts running vertically from
//! ±k into the first/third quadrants, `γ(0) = -ik`, `γ(α)/α → 1` towards
//! the right end of the rotated contour; `β = iγ`, `β(0) = k`. The
//! rotated contour then never meets a cut for `0 < χ < π/2`, and the
//! right-hand-side poles sit on the un-swept side of the real axis.

use crate::mapping::RationalMap;
use crate::rh::{HalfPlane, RHProblem, SingularityInfo};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};
use thiserror::Error;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("parameter {param} = {value} outside {requirement}")]
    OutOfRange {
        param: &'static str,
        value: f64,
        requirement: &'static str,
    },
    #[error("missing parameter {param} (required for {problem})")]
    Missing {
        param: &'static str,
        problem: &'static str,
    },
}

#[derive(Debug, Error, PartialEq)]
pub enum BranchError {
    #[error("alpha = {0} lies on a branch cut")]
    OnCut(Complex64),
}

/// Physical parameters of a catalogue problem. `s` is Senior's impedance
/// parameter; `theta1`, `theta2` are Hurd's impedance angles with
/// `S_j = sin θ_j`; `epsilon` is an optional small Im(k) ≥ 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalParams {
    pub k: f64,
    pub theta0: f64,
    pub s: Option<f64>,
    pub theta1: Option<f64>,
    pub theta2: Option<f64>,
    pub epsilon: f64,
}

impl PhysicalParams {
    pub fn sommerfeld(k: f64, theta0: f64) -> Self {
        PhysicalParams {
            k,
            theta0,
            s: None,
            theta1: None,
            theta2: None,
            epsilon: 0.0,
        }
    }

    pub fn senior(k: f64, theta0: f64, s: f64) -> Self {
        PhysicalParams {
            k,
            theta0,
            s: Some(s),
            theta1: None,
            theta2: None,
            epsilon: 0.0,
        }
    }

    pub fn hurd(k: f64, theta0: f64, theta1: f64, theta2: f64) -> Self {
        PhysicalParams {
            k,
            theta0,
            s: None,
            theta1: Some(theta1),
            theta2: Some(theta2),
            epsilon: 0.0,
        }
    }

    fn k_eff(&self) -> Complex64 {
        Complex64::new(self.k, self.epsilon)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchKind {
    Gamma,
    Beta,
}

/// A causal branch function `γ` or `β = iγ` for a given wavenumber.
#[derive(Debug, Clone, Copy)]
pub struct BranchFunction {
    pub kind: BranchKind,
    pub k: f64,
    pub epsilon: f64,
}

impl BranchFunction {
    pub fn eval(&self, alpha: Complex64) -> Result<Complex64, BranchError> {
        match self.kind {
            BranchKind::Gamma => gamma_eval(self.k, self.epsilon, alpha),
            BranchKind::Beta => beta_eval(self.k, self.epsilon, alpha),
        }
    }
}

/// Square root with the branch cut rotated onto the ray `arg w = -π/2`,
/// so values are continuous across the negative real axis.
fn sqrt_cut_down(w: Complex64) -> Complex64 {
    if w.im < 0.0 && w.re <= 0.0 {
        -w.sqrt()
    } else {
        w.sqrt()
    }
}

fn on_cut(w: Complex64) -> bool {
    w.im < 0.0 && w.re.abs() <= 1e-14 * w.norm()
}

/// `γ(α) = -i √(k-α) √(k+α)` with both square-root cuts turned so the
/// α-plane cuts run from +k upward and from -k downward.
pub fn gamma_eval(k: f64, epsilon: f64, alpha: Complex64) -> Result<Complex64, BranchError> {
    let k_eff = Complex64::new(k, epsilon);
    let w1 = k_eff - alpha;
    let w2 = k_eff + alpha;
    if on_cut(w1) || on_cut(w2) {
        return Err(BranchError::OnCut(alpha));
    }
    Ok(-I * sqrt_cut_down(w1) * sqrt_cut_down(w2))
}

/// `β = iγ`, normalized so `β(0) = k`.
pub fn beta_eval(k: f64, epsilon: f64, alpha: Complex64) -> Result<Complex64, BranchError> {
    gamma_eval(k, epsilon, alpha).map(|g| I * g)
}

/// `(α+k)^{1/2}` on the γ-consistent branch.
fn sqrt_alpha_plus_k(k_eff: Complex64, alpha: Complex64) -> Complex64 {
    sqrt_cut_down(k_eff + alpha)
}

/// `(α-k)^{1/2}` on the γ-consistent branch, so the product of the two
/// half-power factors reproduces γ.
fn sqrt_alpha_minus_k(k_eff: Complex64, alpha: Complex64) -> Complex64 {
    -I * sqrt_cut_down(k_eff - alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Sommerfeld,
    SeniorMatrix,
    SeniorScalarSum,
    SeniorScalarDiff,
    Hurd,
}

/// A catalogue problem: the generic RH problem plus the physical identity
/// needed by far-field reconstruction.
pub struct DiffractionProblem {
    pub rh: RHProblem,
    pub kind: ProblemKind,
    pub params: PhysicalParams,
}

fn common_singularities(params: &PhysicalParams) -> Vec<SingularityInfo> {
    vec![
        SingularityInfo {
            name: "branch point +k".into(),
            location: params.k_eff(),
            hint: HalfPlane::Above,
        },
        SingularityInfo {
            name: "branch point -k".into(),
            location: -params.k_eff(),
            hint: HalfPlane::Below,
        },
    ]
}

fn check_positive(k: f64) -> Result<(), ParamError> {
    if !(k > 0.0) {
        return Err(ParamError::OutOfRange {
            param: "k",
            value: k,
            requirement: "k > 0",
        });
    }
    Ok(())
}

/// Exact Wiener-Hopf factorization of the hard-hard Sommerfeld problem:
/// returns `(Φ'₊(0), D₋)` at `alpha`.
///
/// `Φ'₊(0)` is written in the pole-free form
/// `k sinθ₀ / [c₀ (c₀ + (α+k)^{1/2})]` with `c₀ = (k + k cosθ₀)^{1/2}`,
/// which carries the removable limit at `α = k cosθ₀` automatically.
pub fn sommerfeld_exact(params: &PhysicalParams, alpha: Complex64) -> (Complex64, Complex64) {
    let k = params.k_eff();
    let t0 = params.theta0;
    let c0 = (k + k * t0.cos()).sqrt();
    let sp = sqrt_alpha_plus_k(k, alpha);
    let sm = sqrt_alpha_minus_k(k, alpha);
    let num = k * t0.sin();
    let phi_plus_prime = num / (c0 * (c0 + sp));
    let d_minus = -num / (c0 * (alpha - k * t0.cos()) * sm);
    (phi_plus_prime, d_minus)
}

/// Hard-hard Sommerfeld as a scalar RH problem:
/// `(1/γ) Φ₊ + Φ₋ + k sinθ₀ / (γ (α - k cosθ₀)) = 0` with
/// `Φ₊ = Φ'₊(0)` and `Φ₋ = D₋`.
pub fn sommerfeld_problem(
    params: &PhysicalParams,
    map: RationalMap,
    chi: f64,
) -> Result<DiffractionProblem, ParamError> {
    check_positive(params.k)?;
    if !(params.theta0 > -FRAC_PI_2 && params.theta0 < FRAC_PI_2) {
        return Err(ParamError::OutOfRange {
            param: "theta0",
            value: params.theta0,
            requirement: "(-pi/2, pi/2) for the Sommerfeld problem",
        });
    }
    let mut warnings = Vec::new();
    if (params.theta0.abs() - FRAC_PI_2).abs() < 0.05 {
        warnings.push("theta0 within 0.05 rad of pi/2: convergence degrades".to_string());
    }
    let k = params.k_eff();
    let t0 = params.theta0;
    let pole = k * t0.cos();
    let mut singularities = common_singularities(params);
    singularities.push(SingularityInfo {
        name: "incident-wave pole".into(),
        location: pole,
        hint: HalfPlane::Above,
    });

    let (ka, kb, eps) = (params.k, params.epsilon, params.epsilon);
    let _ = eps;
    let rh = RHProblem {
        m: 1,
        coeff_a: Box::new(move |a| {
            let g = gamma_eval(ka, kb, a).expect("rotated contour avoids cuts");
            DMatrix::from_element(1, 1, g.inv())
        }),
        coeff_b: Box::new(|_| DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0))),
        rhs_c: Box::new(move |a| {
            let g = gamma_eval(ka, kb, a).expect("rotated contour avoids cuts");
            let k_eff = Complex64::new(ka, kb);
            DVector::from_element(1, k_eff * t0.sin() / (g * (a - k_eff * t0.cos())))
        }),
        chi,
        map,
        name: "sommerfeld".into(),
        singularities,
        warnings,
    };
    Ok(DiffractionProblem {
        rh,
        kind: ProblemKind::Sommerfeld,
        params: params.clone(),
    })
}

fn senior_validate(params: &PhysicalParams) -> Result<f64, ParamError> {
    check_positive(params.k)?;
    if !(params.theta0 > FRAC_PI_2 && params.theta0 < 3.0 * FRAC_PI_2) {
        return Err(ParamError::OutOfRange {
            param: "theta0",
            value: params.theta0,
            requirement: "(pi/2, 3pi/2) for Senior's problem",
        });
    }
    params.s.ok_or(ParamError::Missing {
        param: "S",
        problem: "Senior's problem",
    })
}

fn senior_warnings(params: &PhysicalParams, s: f64) -> Vec<String> {
    let mut w = Vec::new();
    if (params.theta0 - FRAC_PI_2).abs() < 0.05 || (params.theta0 - 3.0 * FRAC_PI_2).abs() < 0.05 {
        w.push("theta0 within 0.05 rad of the range boundary: convergence degrades".to_string());
    }
    if s.abs() < 0.05 {
        w.push("impedance parameter S near 0: convergence degrades".to_string());
    }
    w
}

fn senior_singularities(params: &PhysicalParams) -> Vec<SingularityInfo> {
    let mut s = common_singularities(params);
    s.push(SingularityInfo {
        name: "incident-wave pole".into(),
        location: params.k_eff() * params.theta0.cos(),
        hint: HalfPlane::Below,
    });
    s
}

/// Senior's problem in 2x2 matrix form. Unknowns:
/// `Φ₊ = (Φ'₊(0⁺), Φ'₊(0⁻))`, `Φ₋ = (Φ'₋(0), Φ₋(0))`.
pub fn senior_matrix_problem(
    params: &PhysicalParams,
    map: RationalMap,
    chi: f64,
) -> Result<DiffractionProblem, ParamError> {
    let s = senior_validate(params)?;
    let warnings = senior_warnings(params, s);
    let singularities = senior_singularities(params);
    let (ka, eps, t0) = (params.k, params.epsilon, params.theta0);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);

    let rh = RHProblem {
        m: 2,
        coeff_a: Box::new(move |a| {
            let g = gamma_eval(ka, eps, a).expect("off cuts");
            let d = g.inv() + I * s;
            DMatrix::from_row_slice(2, 2, &[d, zero, zero, d])
        }),
        coeff_b: Box::new(move |a| {
            let g = gamma_eval(ka, eps, a).expect("off cuts");
            DMatrix::from_row_slice(2, 2, &[g.inv(), one, g.inv(), -one])
        }),
        rhs_c: Box::new(move |a| {
            let k_eff = Complex64::new(ka, eps);
            let pref = -I / (a - k_eff * t0.cos());
            DVector::from_column_slice(&[
                pref * (1.0 - s * ka * t0.sin()),
                pref * (-1.0 - s * ka * t0.sin()),
            ])
        }),
        chi,
        map,
        name: "senior-matrix".into(),
        singularities,
        warnings,
    };
    Ok(DiffractionProblem {
        rh,
        kind: ProblemKind::SeniorMatrix,
        params: params.clone(),
    })
}

/// Senior's problem as two independent scalar problems, both normalized
/// by 1/γ so the densities decay like `α^{-1/2}`:
/// sum:  `(1/γ + iS) Σ₊ + (2/γ) Φ'₋(0) + 2iS k sinθ₀/(α - k cosθ₀) = 0`
/// diff: `(1/γ + iS) Δ₊ + 2 Φ₋(0) - 2i/(α - k cosθ₀) = 0`
/// with `Σ₊/Δ₊ = Φ'₊(0⁺) ± Φ'₊(0⁻)`.
pub fn senior_scalar_problems(
    params: &PhysicalParams,
    map: RationalMap,
    chi: f64,
) -> Result<(DiffractionProblem, DiffractionProblem), ParamError> {
    let s = senior_validate(params)?;
    let (ka, eps, t0) = (params.k, params.epsilon, params.theta0);

    let sum = RHProblem {
        m: 1,
        coeff_a: Box::new(move |a| {
            let g = gamma_eval(ka, eps, a).expect("off cuts");
            DMatrix::from_element(1, 1, g.inv() + I * s)
        }),
        coeff_b: Box::new(move |a| {
            let g = gamma_eval(ka, eps, a).expect("off cuts");
            DMatrix::from_element(1, 1, 2.0 * g.inv())
        }),
        rhs_c: Box::new(move |a| {
            let k_eff = Complex64::new(ka, eps);
            DVector::from_element(
                1,
                2.0 * I * s * k_eff * t0.sin() / (a - k_eff * t0.cos()),
            )
        }),
        chi,
        map: map.clone(),
        name: "senior-scalar-sum".into(),
        singularities: senior_singularities(params),
        warnings: senior_warnings(params, s),
    };
    let diff = RHProblem {
        m: 1,
        coeff_a: Box::new(move |a| {
            let g = gamma_eval(ka, eps, a).expect("off cuts");
            DMatrix::from_element(1, 1, g.inv() + I * s)
        }),
        coeff_b: Box::new(|_| DMatrix::from_element(1, 1, Complex64::new(2.0, 0.0))),
        rhs_c: Box::new(move |a| {
            let k_eff = Complex64::new(ka, eps);
            DVector::from_element(1, -2.0 * I / (a - k_eff * t0.cos()))
        }),
        chi,
        map,
        name: "senior-scalar-diff".into(),
        singularities: senior_singularities(params),
        warnings: senior_warnings(params, s),
    };
    Ok((
        DiffractionProblem {
            rh: sum,
            kind: ProblemKind::SeniorScalarSum,
            params: params.clone(),
        },
        DiffractionProblem {
            rh: diff,
            kind: ProblemKind::SeniorScalarDiff,
            params: params.clone(),
        },
    ))
}

/// Hurd's unequal-impedance problem in 2x2 matrix form. Unknowns:
/// `Φ₊ = (U₁, U₂)`, `Φ₋ = (L₁, L₂)`; the first jump row is scaled by 1/β.
pub fn hurd_problem(
    params: &PhysicalParams,
    map: RationalMap,
    chi: f64,
) -> Result<DiffractionProblem, ParamError> {
    check_positive(params.k)?;
    if !(params.theta0 > -FRAC_PI_2 && params.theta0 < FRAC_PI_2) {
        return Err(ParamError::OutOfRange {
            param: "theta0",
            value: params.theta0,
            requirement: "(-pi/2, pi/2) for Hurd's problem",
        });
    }
    let theta1 = params.theta1.ok_or(ParamError::Missing {
        param: "theta1",
        problem: "Hurd's problem",
    })?;
    let theta2 = params.theta2.ok_or(ParamError::Missing {
        param: "theta2",
        problem: "Hurd's problem",
    })?;
    for (name, v) in [("theta1", theta1), ("theta2", theta2)] {
        if !(0.0..=FRAC_PI_2).contains(&v) {
            return Err(ParamError::OutOfRange {
                param: if name == "theta1" { "theta1" } else { "theta2" },
                value: v,
                requirement: "[0, pi/2]",
            });
        }
    }
    let mut warnings = Vec::new();
    if (params.theta0.abs() - FRAC_PI_2).abs() < 0.05 {
        warnings.push("theta0 within 0.05 rad of pi/2: convergence degrades".to_string());
    }
    if theta1.sin() < 0.05 || theta2.sin() < 0.05 {
        warnings.push("impedance parameter near 0: convergence degrades".to_string());
    }

    let (ka, eps, t0) = (params.k, params.epsilon, params.theta0);
    let (s1, s2, s0) = (theta1.sin(), theta2.sin(), t0.sin());
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);

    let mut singularities = common_singularities(params);
    singularities.push(SingularityInfo {
        name: "incident-wave pole".into(),
        location: -params.k_eff() * t0.cos(),
        hint: HalfPlane::Below,
    });

    let rh = RHProblem {
        m: 2,
        coeff_a: Box::new(move |a| {
            let b = beta_eval(ka, eps, a).expect("off cuts");
            DMatrix::from_row_slice(2, 2, &[b.inv(), zero, zero, one])
        }),
        coeff_b: Box::new(move |a| {
            let b = beta_eval(ka, eps, a).expect("off cuts");
            let e1 = one + ka * s1 * b.inv();
            let e2p = one + ka * s2 * b.inv();
            let e2m = -one - ka * s2 * b.inv();
            DMatrix::from_row_slice(2, 2, &[-0.5 * e1, -0.5 * e1, -0.5 * e2m, -0.5 * e2p])
        }),
        rhs_c: Box::new(move |a| {
            let b = beta_eval(ka, eps, a).expect("off cuts");
            let k_eff = Complex64::new(ka, eps);
            let pref = k_eff / (2.0 * PI * I) / (a + k_eff * t0.cos());
            DVector::from_column_slice(&[-pref * (s1 - s0) / b, -pref * (s2 + s0)])
        }),
        chi,
        map,
        name: "hurd".into(),
        singularities,
        warnings,
    };
    Ok(DiffractionProblem {
        rh,
        kind: ProblemKind::Hurd,
        params: params.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::RationalMap;
    use std::f64::consts::FRAC_PI_4;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn branch_anchors() {
        let g0 = gamma_eval(1.0, 0.0, c(0.0, 0.0)).unwrap();
        assert!((g0 - c(0.0, -1.0)).norm() < 1e-15);
        let b0 = beta_eval(1.0, 0.0, c(0.0, 0.0)).unwrap();
        assert!((b0 - c(1.0, 0.0)).norm() < 1e-15);
        // real branch for |α| > k on the rotated-contour side
        let g2 = gamma_eval(1.0, 0.0, c(2.0, 0.0)).unwrap();
        assert!((g2 - c(3.0f64.sqrt(), 0.0)).norm() < 1e-14, "{g2}");
        let gm2 = gamma_eval(1.0, 0.0, c(-2.0, 0.0)).unwrap();
        assert!((gm2 - c(3.0f64.sqrt(), 0.0)).norm() < 1e-14, "{gm2}");
    }

    #[test]
    fn gamma_squared_identity() {
        let mut state = 0x1234_5678_u64;
        let mut rng = move || {
            // xorshift; plenty for scattering test points
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state as f64 / u64::MAX as f64) * 8.0 - 4.0
        };
        for _ in 0..1000 {
            let a = c(rng(), rng());
            if on_cut(Complex64::new(1.0, 0.0) - a) || on_cut(Complex64::new(1.0, 0.0) + a) {
                continue;
            }
            let g = gamma_eval(1.0, 0.0, a).unwrap();
            assert!((g * g - (a * a - 1.0)).norm() < 1e-13 * (1.0 + a.norm_sqr()));
            let b = beta_eval(1.0, 0.0, a).unwrap();
            assert!((b - I * g).norm() < 1e-14 * (1.0 + g.norm()));
        }
    }

    #[test]
    fn gamma_asymptotic_direction() {
        // γ(α)/α -> 1 along the rotated ray
        let dir = Complex64::from_polar(1.0, -FRAC_PI_4);
        for r in [1e2, 1e4, 1e6] {
            let a = r * dir;
            let g = gamma_eval(1.0, 0.0, a).unwrap();
            assert!((g / a - c(1.0, 0.0)).norm() < 2.0 / (r * r));
        }
    }

    #[test]
    fn gamma_rejects_on_cut() {
        assert!(gamma_eval(1.0, 0.0, c(1.0, 0.5)).is_err());
        assert!(gamma_eval(1.0, 0.0, c(-1.0, -0.5)).is_err());
    }

    #[test]
    fn sommerfeld_exact_spot_values() {
        let p = PhysicalParams::sommerfeld(1.0, PI / 5.0);
        // removable limit at α = k cosθ₀
        let (php, _) = sommerfeld_exact(&p, c(PI.cos() * 0.0 + (PI / 5.0).cos(), 0.0));
        let expect = (PI / 5.0).sin() / (2.0 * (1.0 + (PI / 5.0).cos()));
        assert!((php - c(expect, 0.0)).norm() < 1e-13, "{php} vs {expect}");
        assert!((php.re - 0.16245984811645317).abs() < 1e-14);
        // D₋ decays like α^{-3/2}
        let (_, d1) = sommerfeld_exact(&p, c(1.0e4, -1.0e4));
        let (_, d2) = sommerfeld_exact(&p, c(2.0e4, -2.0e4));
        let ratio = (d1.norm() / d2.norm()).log2();
        assert!((ratio - 1.5).abs() < 1e-3, "{ratio}");
        // θ₀ -> 0: both vanish
        let p0 = PhysicalParams::sommerfeld(1.0, 0.0);
        let (a, b) = sommerfeld_exact(&p0, c(0.3, -0.4));
        assert_eq!(a, c(0.0, 0.0));
        assert_eq!(b, c(0.0, 0.0));
    }

    #[test]
    fn sommerfeld_exact_wh_identity() {
        // Φ'₊ + Φ'₋ = -γ D₋ away from cuts and pole
        let p = PhysicalParams::sommerfeld(1.0, PI / 5.0);
        for &a in &[c(0.7, -0.7), c(-2.0, 1.0), c(3.0, -0.2), c(0.1, 2.0)] {
            let (php, dm) = sommerfeld_exact(&p, a);
            let phm = (PI / 5.0).sin() / (a - c((PI / 5.0).cos(), 0.0));
            let g = gamma_eval(1.0, 0.0, a).unwrap();
            let lhs = php + phm;
            let rhs = -g * dm;
            assert!((lhs - rhs).norm() < 1e-13 * (1.0 + rhs.norm()), "a={a}");
        }
    }

    #[test]
    fn builder_validation() {
        let map = RationalMap::four_to_one();
        let bad = PhysicalParams::sommerfeld(1.0, 2.0);
        assert!(matches!(
            sommerfeld_problem(&bad, map.clone(), FRAC_PI_4),
            Err(ParamError::OutOfRange { param: "theta0", .. })
        ));
        let mut no_s = PhysicalParams::senior(1.0, 5.0 * PI / 6.0, 1.0);
        no_s.s = None;
        assert!(matches!(
            senior_matrix_problem(&no_s, map.clone(), FRAC_PI_4),
            Err(ParamError::Missing { param: "S", .. })
        ));
        let bad_t1 = PhysicalParams::hurd(1.0, PI / 3.0, 2.0, PI / 5.0);
        assert!(matches!(
            hurd_problem(&bad_t1, map, FRAC_PI_4),
            Err(ParamError::OutOfRange { param: "theta1", .. })
        ));
    }

    #[test]
    fn senior_reduces_to_hard_at_s_zero() {
        let map = RationalMap::four_to_one();
        let p = PhysicalParams::senior(1.0, 5.0 * PI / 6.0, 0.0);
        let dp = senior_matrix_problem(&p, map, FRAC_PI_4).unwrap();
        assert!(!dp.rh.warnings.is_empty());
        let a = c(0.4, -0.4);
        let blk = (dp.rh.coeff_a)(a);
        let g = gamma_eval(1.0, 0.0, a).unwrap();
        assert!((blk[(0, 0)] - g.inv()).norm() < 1e-15);
        assert!((blk[(1, 1)] - g.inv()).norm() < 1e-15);
    }

    #[test]
    fn sommerfeld_pole_legality() {
        // θ₀ = π/5: pole at cos(π/5) on the positive axis, causal side above
        let map = RationalMap::four_to_one();
        let p = PhysicalParams::sommerfeld(1.0, PI / 5.0);
        let dp = sommerfeld_problem(&p, map, FRAC_PI_4).unwrap();
        assert!(crate::rh::check_rotation_legality(&dp.rh.singularities, FRAC_PI_4).is_ok());
        let pole = dp
            .rh
            .singularities
            .iter()
            .find(|s| s.name.contains("pole"))
            .unwrap();
        assert!((pole.location.re - (PI / 5.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn hurd_homogeneous_when_impedances_match_incidence() {
        // θ₀ = 0 with θ₁ = θ₂ = 0 zeroes both right-hand-side numerators
        let map = RationalMap::four_to_one();
        let p = PhysicalParams::hurd(1.0, 0.0, 0.0, 0.0);
        let dp = hurd_problem(&p, map, FRAC_PI_4).unwrap();
        let rhs = (dp.rh.rhs_c)(c(0.5, -0.5));
        assert!(rhs[0].norm() < 1e-15 && rhs[1].norm() < 1e-15);
    }
}
