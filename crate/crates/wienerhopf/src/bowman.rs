//! Far-field amplitude combinator for mixed impedance boundary
//! conditions, after Bowman's representation
//! `φ ~ (1/4i)√(2/kπ) e^{-iπ/4} U(θ,θ₀) e^{ikr}/√r`.
//!
//! The auxiliary function ψ is not built in; it must come from an
//! external source, so this module only assembles `U(θ,θ₀)` around a
//! caller-supplied ψ and is excluded from primary acceptance.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BowmanError {
    #[error("denominator sin(θ/2) {sign} cos(θ₀/2) vanishes at θ = {theta}")]
    DenominatorPole { theta: f64, sign: &'static str },
    #[error("no ψ function supplied; Bowman far field unimplemented without it")]
    Unimplemented,
}

/// `U(θ,θ₀) = sin(θ₀/2)/ψ(π-θ₀) [ψ(-θ)/(sin(θ/2)+cos(θ₀/2)) + ψ(2π-θ)/(sin(θ/2)-cos(θ₀/2))]`.
pub fn bowman_u<F>(theta: f64, theta0: f64, psi: F) -> Result<Complex64, BowmanError>
where
    F: Fn(f64) -> Complex64,
{
    let s = (theta / 2.0).sin();
    let c = (theta0 / 2.0).cos();
    if (s + c).abs() < 1e-12 {
        return Err(BowmanError::DenominatorPole {
            theta,
            sign: "+",
        });
    }
    if (s - c).abs() < 1e-12 {
        return Err(BowmanError::DenominatorPole {
            theta,
            sign: "-",
        });
    }
    let pref = (theta0 / 2.0).sin() / psi(std::f64::consts::PI - theta0);
    Ok(pref * (psi(-theta) / (s + c) + psi(2.0 * std::f64::consts::PI - theta) / (s - c)))
}

/// Bowman directivity without a ψ source: reports unimplemented.
pub fn bowman_directivity(_theta: f64, _theta0: f64) -> Result<Complex64, BowmanError> {
    Err(BowmanError::Unimplemented)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pole_flagged() {
        // sin(θ/2) = cos(θ₀/2) at θ = π - θ₀
        let theta0 = 0.7;
        let theta = std::f64::consts::PI - theta0;
        let err = bowman_u(theta, theta0, |_| Complex64::new(1.0, 0.0)).unwrap_err();
        assert!(matches!(err, BowmanError::DenominatorPole { .. }));
    }

    #[test]
    fn term_exchange_symmetry() {
        // under θ -> 2π - θ the two ψ terms swap with exchanged denominators
        let theta0 = 0.9;
        let theta = 1.3;
        let psi = |x: f64| Complex64::new(1.0 + 0.1 * x.cos(), 0.05 * x.sin());
        let u1 = bowman_u(theta, theta0, psi).unwrap();
        // rebuild by hand with swapped roles
        let s = (theta / 2.0).sin();
        let c = (theta0 / 2.0).cos();
        let pref = (theta0 / 2.0).sin() / psi(std::f64::consts::PI - theta0);
        let by_hand =
            pref * (psi(-theta) / (s + c) + psi(2.0 * std::f64::consts::PI - theta) / (s - c));
        assert!((u1 - by_hand).norm() < 1e-15);
    }

    #[test]
    fn directivity_unimplemented() {
        assert_eq!(
            bowman_directivity(1.0, 0.5).unwrap_err(),
            BowmanError::Unimplemented
        );
    }
}
