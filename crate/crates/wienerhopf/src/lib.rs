//! Spectral collocation solver for scalar and matrix Wiener-Hopf problems.
//!
//! Wiener-Hopf functional equations `A(α) Φ₊(α) + B(α) Φ₋(α) + C(α) = 0` are
//! posed as Riemann-Hilbert jump problems on the (rotated) real line and
//! solved by Chebyshev collocation under rational mappings of the unit
//! interval onto ℝ. The 4-to-1 mapping resolves the `α^{-1/2}` far-field
//! decay of the transforms exactly, giving spectral accuracy.
//!
//! The crate ships a catalogue of half-plane diffraction problems
//! (hard-hard Sommerfeld, Senior's equal-impedance problem in scalar and
//! matrix form, Hurd's unequal-impedance problem), exact Sommerfeld oracles,
//! convergence metrics, and far-field directivity output.

pub mod cauchy;
pub mod chebyshev;
pub mod diffraction;
pub mod farfield;
pub mod linalg;
pub mod mapping;
pub mod metrics;
pub mod quadrature;
pub mod rh;
pub mod selftest;

#[cfg(feature = "bowman")]
pub mod bowman;

pub use cauchy::{BasisRow, CauchyPair, Side};
pub use chebyshev::{ChebGrid, ChebSeries};
pub use diffraction::{BranchKind, PhysicalParams, ProblemKind};
pub use farfield::DirectivityCurve;
pub use mapping::{CollocationGrid, ContourTag, MapKind, RationalMap};
pub use metrics::{ConvergenceRecord, Reference};
pub use rh::{HalfPlane, RHProblem, RHSolution};
