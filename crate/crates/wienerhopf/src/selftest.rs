//! Built-in verification suites: Plemelj identity, mapping roundtrips,
//! Cauchy rows against adaptive quadrature, and Clenshaw-Curtis
//! exactness. Shared by the CLI `selftest` command and the test suites.

use crate::cauchy::assemble_cauchy;
use crate::chebyshev::{chebyshev_moment, chebyshev_points, clenshaw_curtis_weights, eval_series, ChebSeries};
use crate::mapping::{Preimage, RationalMap};
use crate::quadrature::integrate;
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub details: String,
}

#[derive(Debug, Clone)]
pub struct SelfTestReport {
    pub suites: Vec<SuiteResult>,
}

impl SelfTestReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }
}

fn result(name: &'static str, max_dev: f64, tol: f64, details: String) -> SuiteResult {
    SuiteResult {
        name,
        passed: max_dev <= tol,
        max_deviation: max_dev,
        tolerance: tol,
        details,
    }
}

/// `C⁺ - C⁻ = I` entrywise on interior rows, both maps, n in {33, 129}.
/// `perturbation` is a test hook added to one entry of C⁺.
pub fn plemelj_suite(perturbation: f64) -> SuiteResult {
    let mut max_dev = 0.0f64;
    for map in [RationalMap::two_to_one(), RationalMap::four_to_one()] {
        for n in [33usize, 129] {
            let pair = assemble_cauchy(&map, n).expect("assembly");
            for p in 1..n - 1 {
                for q in 0..n {
                    let mut cp = pair.c_plus[(p, q)];
                    if perturbation != 0.0 && p == n / 2 && q == n / 2 {
                        cp += perturbation;
                    }
                    let expect = if p == q { 1.0 } else { 0.0 };
                    let dev = (cp - pair.c_minus[(p, q)] - expect).norm();
                    max_dev = max_dev.max(dev);
                }
            }
        }
    }
    result(
        "plemelj",
        max_dev,
        1e-13,
        format!("max |C+ - C- - I| over interior rows = {max_dev:.3e}"),
    )
}

/// Inverse-branch roundtrips over 10³ deterministic interior points.
pub fn mapping_roundtrip_suite() -> SuiteResult {
    let mut max_dev = 0.0f64;
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        // interior, bounded away from the poles at ±1
        (state as f64 / u64::MAX as f64) * 1.96 - 0.98
    };
    for _ in 0..1000 {
        let x = next();
        if x.abs() < 1e-3 {
            continue;
        }
        for map in [RationalMap::two_to_one(), RationalMap::four_to_one()] {
            let alpha = map.forward(Complex64::new(x, 0.0)).expect("interior");
            let expected = map.preimages_at_collocation(x);
            let roots = map.roots(alpha).expect("finite alpha");
            for tp in &expected {
                let e = match tp.point {
                    Preimage::Finite(v) => v,
                    Preimage::Infinite => continue,
                };
                let best = roots
                    .iter()
                    .map(|r| (r - e).norm() / (1.0 + e.norm()))
                    .fold(f64::INFINITY, f64::min);
                max_dev = max_dev.max(best);
            }
        }
    }
    result(
        "mapping-roundtrip",
        max_dev,
        1e-12,
        format!("max relative branch deviation over 1000 points = {max_dev:.3e}"),
    )
}

/// Oracle for the + boundary value of the full mapped-contour Cauchy
/// transform at the collocation point with interval preimage `x_p`:
/// principal value by pole subtraction plus the half jump.
pub fn cauchy_plus_oracle(
    map: &RationalMap,
    g: &dyn Fn(f64) -> Complex64,
    x_p: f64,
    tol: f64,
) -> Complex64 {
    let alpha_p = map.forward(Complex64::new(x_p, 0.0)).expect("interior").re;
    let g_p = g(x_p);
    let smooth = |x: f64| {
        let m = map.forward(Complex64::new(x, 0.0)).expect("interior");
        let dm = map.derivative(Complex64::new(x, 0.0)).expect("interior");
        g(x) * dm / (m - alpha_p) - g_p / (x - x_p)
    };
    // panels split at the (removable) singular point
    let left = integrate(&smooth, -1.0, x_p, tol).expect("quadrature");
    let right = integrate(&smooth, x_p, 1.0, tol).expect("quadrature");
    let pv_log = g_p * ((1.0 - x_p) / (1.0 + x_p)).ln();
    (left + right + pv_log) / (2.0 * PI * I) + g_p / 2.0
}

/// Assembled C⁺ rows against the quadrature oracle for a smooth density
/// vanishing at the endpoints, both maps.
pub fn cauchy_oracle_suite() -> SuiteResult {
    let mut max_dev = 0.0f64;
    // basis-row anchor: C T0(i) = 1/4
    let row = crate::cauchy::cauchy_basis_row(Complex64::new(0.0, 1.0), 4, crate::cauchy::Side::Off)
        .expect("off-contour");
    max_dev = max_dev.max((row.values[0] - 0.25).norm() * 1e3); // weight to the 1e-9 scale vs 1e-12 anchor tolerance

    let n = 33;
    let grid = chebyshev_points(n).expect("n ok");
    let g = |x: f64| Complex64::new((1.0 - x * x) * x.exp(), 0.0);
    let samples: Vec<Complex64> = grid.x.iter().map(|&x| g(x)).collect();
    for map in [RationalMap::two_to_one(), RationalMap::four_to_one()] {
        let pair = assemble_cauchy(&map, n).expect("assembly");
        for p in [n / 4, n / 2, 3 * n / 4] {
            let mut lhs = Complex64::new(0.0, 0.0);
            for q in 0..n {
                lhs += pair.c_plus[(p, q)] * samples[q];
            }
            let oracle = cauchy_plus_oracle(&map, &g, grid.x[p], 1e-12);
            max_dev = max_dev.max((lhs - oracle).norm());
        }
    }
    result(
        "cauchy-quadrature-oracle",
        max_dev,
        1e-9,
        format!("max |C+ row - adaptive quadrature| = {max_dev:.3e}"),
    )
}

/// Clenshaw-Curtis weights integrate the Chebyshev moments exactly.
pub fn quadrature_exactness_suite() -> SuiteResult {
    let mut max_dev = 0.0f64;
    for n in [3usize, 33, 129] {
        let grid = chebyshev_points(n).expect("n ok");
        let w = clenshaw_curtis_weights(n).expect("n ok");
        for k in 0..n {
            let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
            coeffs[k] = Complex64::new(1.0, 0.0);
            let series = ChebSeries { coeffs };
            let quad: f64 = grid
                .x
                .iter()
                .zip(&w)
                .map(|(&x, wq)| wq * eval_series(&series, Complex64::new(x, 0.0)).re)
                .sum();
            max_dev = max_dev.max((quad - chebyshev_moment(k)).abs());
        }
    }
    result(
        "quadrature-exactness",
        max_dev,
        1e-13,
        format!("max moment deviation = {max_dev:.3e}"),
    )
}

pub fn run_all() -> SelfTestReport {
    SelfTestReport {
        suites: vec![
            plemelj_suite(0.0),
            mapping_roundtrip_suite(),
            cauchy_oracle_suite(),
            quadrature_exactness_suite(),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        let report = run_all();
        for s in &report.suites {
            assert!(
                s.passed,
                "{}: {} (tol {:.1e})",
                s.name, s.details, s.tolerance
            );
        }
    }

    #[test]
    fn perturbation_hook_fails_plemelj() {
        let r = plemelj_suite(1e-6);
        assert!(!r.passed);
        assert!(r.max_deviation >= 1e-6 * 0.99);
    }
}
