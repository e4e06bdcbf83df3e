//! Rational mappings of the unit interval onto the real line, with all
//! inverse branches, contour classification and derivatives.
//!
//! The 2-to-1 map `M(x) = x/(1-x²)` sends ±1 to ∓∞ with simple poles; its
//! two inverse branches tile the interval and the real exterior. The
//! 4-to-1 map `M(x) = (x+x³)/(1-x²)²` has double poles at ±1, so
//! `α ~ 1/(2(1-x)²)` near the right endpoint and functions with
//! `α^{-1/2}` tails pull back to analytic functions of x. Its four
//! branches tile the interval, the real exterior and the two unit
//! semicircles.

use crate::chebyshev::{chebyshev_points, ChebGrid};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MapError {
    #[error("evaluation at the map pole x = {0}")]
    PoleAtEndpoint(Complex64),
    #[error("preimages of alpha = 0 or infinity need the collocation-limit path")]
    DegenerateAlpha,
    #[error("preimage {root} not within {tol:e} of any contour branch")]
    ClassificationFailure { root: Complex64, tol: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    TwoToOne,
    FourToOne,
}

/// Which piece of the preimage system a branch covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourTag {
    Interval,
    RealExterior,
    UpperSemicircle,
    LowerSemicircle,
}

/// Endpoint-row assignment for the Cauchy block of a branch: `MuL` is the
/// finite-part row at x = -1, `MuR` at x = +1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndpointRow {
    MuL,
    MuR,
}

/// One inverse branch: its contour and which μ rows cap its Cauchy block.
///
/// The first row of a block corresponds to α = -∞, whose preimage under
/// the branch is an interval endpoint; `first_row`/`last_row` record which
/// one.
#[derive(Debug, Clone, Copy)]
pub struct BranchSpec {
    pub tag: ContourTag,
    pub first_row: EndpointRow,
    pub last_row: EndpointRow,
}

/// A preimage point, with the point at infinity kept symbolic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preimage {
    Finite(Complex64),
    Infinite,
}

impl Preimage {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            Preimage::Finite(z) => Some(z),
            Preimage::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TaggedPreimage {
    pub tag: ContourTag,
    pub point: Preimage,
}

/// Rational map descriptor. `pole_multiplicity` is the order of the poles
/// at x = ±1, which is also the weight of the endpoint correction in the
/// Cauchy-matrix assembly.
#[derive(Debug, Clone)]
pub struct RationalMap {
    pub kind: MapKind,
    pub degree: usize,
    pub pole_multiplicity: usize,
    pub branches: Vec<BranchSpec>,
}

impl RationalMap {
    pub fn two_to_one() -> Self {
        RationalMap {
            kind: MapKind::TwoToOne,
            degree: 2,
            pole_multiplicity: 1,
            branches: vec![
                BranchSpec {
                    tag: ContourTag::Interval,
                    first_row: EndpointRow::MuL,
                    last_row: EndpointRow::MuR,
                },
                // exterior preimage -1/x runs +1 -> +∞ | -∞ -> -1 as α sweeps ℝ
                BranchSpec {
                    tag: ContourTag::RealExterior,
                    first_row: EndpointRow::MuR,
                    last_row: EndpointRow::MuL,
                },
            ],
        }
    }

    pub fn four_to_one() -> Self {
        RationalMap {
            kind: MapKind::FourToOne,
            degree: 4,
            pole_multiplicity: 2,
            branches: vec![
                BranchSpec {
                    tag: ContourTag::Interval,
                    first_row: EndpointRow::MuL,
                    last_row: EndpointRow::MuR,
                },
                // exterior preimage is +1/x here, so the caps swap sides
                BranchSpec {
                    tag: ContourTag::RealExterior,
                    first_row: EndpointRow::MuL,
                    last_row: EndpointRow::MuR,
                },
                BranchSpec {
                    tag: ContourTag::UpperSemicircle,
                    first_row: EndpointRow::MuR,
                    last_row: EndpointRow::MuL,
                },
                BranchSpec {
                    tag: ContourTag::LowerSemicircle,
                    first_row: EndpointRow::MuR,
                    last_row: EndpointRow::MuL,
                },
            ],
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            MapKind::TwoToOne => "2to1",
            MapKind::FourToOne => "4to1",
        }
    }

    /// Forward evaluation `α = M(x)`. Rejects the poles x = ±1.
    pub fn forward(&self, x: Complex64) -> Result<Complex64, MapError> {
        let one = Complex64::new(1.0, 0.0);
        let denom = one - x * x;
        if denom.norm() < 1e-14 {
            return Err(MapError::PoleAtEndpoint(x));
        }
        Ok(match self.kind {
            MapKind::TwoToOne => x / denom,
            MapKind::FourToOne => x * (one + x * x) / (denom * denom),
        })
    }

    /// Analytic derivative `M'(x)`.
    pub fn derivative(&self, x: Complex64) -> Result<Complex64, MapError> {
        let one = Complex64::new(1.0, 0.0);
        let denom = one - x * x;
        if denom.norm() < 1e-14 {
            return Err(MapError::PoleAtEndpoint(x));
        }
        Ok(match self.kind {
            MapKind::TwoToOne => (one + x * x) / (denom * denom),
            MapKind::FourToOne => {
                let x2 = x * x;
                (one + 6.0 * x2 + x2 * x2) / (denom * denom * denom)
            }
        })
    }

    /// All `d` tagged preimages of `M(x_p)` for an interior grid point.
    ///
    /// Uses the closed-form branch expressions; `x_p = 0` is handled by the
    /// limits (exterior preimage at infinity, semicircle preimages ±i).
    pub fn preimages_at_collocation(&self, x_p: f64) -> Vec<TaggedPreimage> {
        let xc = Complex64::new(x_p, 0.0);
        match self.kind {
            MapKind::TwoToOne => {
                let exterior = if x_p == 0.0 {
                    Preimage::Infinite
                } else {
                    Preimage::Finite(Complex64::new(-1.0 / x_p, 0.0))
                };
                vec![
                    TaggedPreimage {
                        tag: ContourTag::Interval,
                        point: Preimage::Finite(xc),
                    },
                    TaggedPreimage {
                        tag: ContourTag::RealExterior,
                        point: exterior,
                    },
                ]
            }
            MapKind::FourToOne => {
                let (exterior, upper, lower) = if x_p == 0.0 {
                    (
                        Preimage::Infinite,
                        Complex64::new(0.0, 1.0),
                        Complex64::new(0.0, -1.0),
                    )
                } else {
                    let alpha = self.forward(xc).expect("interior point");
                    // semicircle pair solves v² + c v + 1 = 0, c = x + 1/x - 1/α;
                    // written via the half-discriminant to keep |v| = 1 exact
                    let c = x_p + 1.0 / x_p - 1.0 / alpha.re;
                    let half = -c / 2.0;
                    let imag = (1.0 - half * half).max(0.0).sqrt();
                    (
                        Preimage::Finite(Complex64::new(1.0 / x_p, 0.0)),
                        Complex64::new(half, imag),
                        Complex64::new(half, -imag),
                    )
                };
                vec![
                    TaggedPreimage {
                        tag: ContourTag::Interval,
                        point: Preimage::Finite(xc),
                    },
                    TaggedPreimage {
                        tag: ContourTag::RealExterior,
                        point: exterior,
                    },
                    TaggedPreimage {
                        tag: ContourTag::UpperSemicircle,
                        point: Preimage::Finite(upper),
                    },
                    TaggedPreimage {
                        tag: ContourTag::LowerSemicircle,
                        point: Preimage::Finite(lower),
                    },
                ]
            }
        }
    }

    /// All `d` roots of `M(x) = alpha` for finite nonzero `alpha`.
    ///
    /// The quartic of the 4-to-1 map is reciprocal, so it reduces exactly to
    /// two quadratics through `u = x + 1/x`; no iterative root finder is
    /// involved and near-double roots at ±1 stay fully accurate.
    pub fn roots(&self, alpha: Complex64) -> Result<Vec<Complex64>, MapError> {
        if alpha.norm() < 1e-300 || !alpha.is_finite() {
            return Err(MapError::DegenerateAlpha);
        }
        match self.kind {
            MapKind::TwoToOne => {
                // α x² + x - α = 0, root product -1
                let disc = (Complex64::new(1.0, 0.0) + 4.0 * alpha * alpha).sqrt();
                let big = -(Complex64::new(1.0, 0.0) + disc) / (2.0 * alpha);
                Ok(vec![-1.0 / big, big])
            }
            MapKind::FourToOne => {
                // u² - u/α - 4 = 0, then v² - u v + 1 = 0 for each u.
                // The smaller u-root comes from Vieta (u₁u₂ = -4) to avoid
                // cancellation when |α| is tiny.
                let inv_a = 1.0 / alpha;
                let disc = (inv_a * inv_a + 16.0).sqrt();
                let u1 = if (inv_a + disc).norm() >= (inv_a - disc).norm() {
                    (inv_a + disc) / 2.0
                } else {
                    (inv_a - disc) / 2.0
                };
                let u2 = -4.0 / u1;
                let mut out = Vec::with_capacity(4);
                for u in [u1, u2] {
                    let d = (u * u - 4.0).sqrt();
                    // larger-magnitude root first for stability
                    let r1 = if (u + d).norm() >= (u - d).norm() {
                        (u + d) / 2.0
                    } else {
                        (u - d) / 2.0
                    };
                    out.push(1.0 / r1);
                    out.push(r1);
                }
                Ok(out)
            }
        }
    }

    /// Tagged preimages of a general finite nonzero `alpha`.
    ///
    /// For real `alpha` the tags follow from geometry. For complex `alpha`
    /// the roots are continued along a straight segment from a real
    /// reference point with known tags, pairing roots step by step.
    pub fn preimages_general(&self, alpha: Complex64) -> Result<Vec<TaggedPreimage>, MapError> {
        if alpha.im == 0.0 {
            return self.classify_real(alpha.re);
        }
        // Reference real α of comparable magnitude keeps the root paths short.
        let ref_alpha = Complex64::new(alpha.norm().max(1e-6), 0.0);
        let mut tagged = self.classify_real(ref_alpha.re)?;
        let steps = 64;
        for s in 1..=steps {
            let t = s as f64 / steps as f64;
            let target = ref_alpha * (1.0 - t) + alpha * t;
            let roots = self.roots(target)?;
            let mut used = vec![false; roots.len()];
            for tp in tagged.iter_mut() {
                let cur = match tp.point {
                    Preimage::Finite(z) => z,
                    Preimage::Infinite => continue,
                };
                let mut best = usize::MAX;
                let mut best_d = f64::INFINITY;
                for (i, r) in roots.iter().enumerate() {
                    if used[i] {
                        continue;
                    }
                    // distance in the chordal metric so large roots pair sanely
                    let d = (r - cur).norm() / ((1.0 + r.norm()) * (1.0 + cur.norm()));
                    if d < best_d {
                        best_d = d;
                        best = i;
                    }
                }
                used[best] = true;
                tp.point = Preimage::Finite(roots[best]);
            }
        }
        Ok(tagged)
    }

    fn classify_real(&self, alpha: f64) -> Result<Vec<TaggedPreimage>, MapError> {
        let roots = self.roots(Complex64::new(alpha, 0.0))?;
        let tol = 1e-8;
        let mut out: Vec<TaggedPreimage> = Vec::with_capacity(roots.len());
        for r in roots {
            let tag = if r.im.abs() <= tol && r.re.abs() <= 1.0 + tol {
                ContourTag::Interval
            } else if r.im.abs() <= tol * r.norm().max(1.0) {
                ContourTag::RealExterior
            } else if (r.norm() - 1.0).abs() <= tol {
                if r.im > 0.0 {
                    ContourTag::UpperSemicircle
                } else {
                    ContourTag::LowerSemicircle
                }
            } else {
                return Err(MapError::ClassificationFailure { root: r, tol });
            };
            out.push(TaggedPreimage {
                tag,
                point: Preimage::Finite(r),
            });
        }
        Ok(out)
    }
}

/// Collocation data: Chebyshev grid, its images under the map, the rotated
/// images and the map derivative. Endpoints map to the point at infinity
/// and are held as `None`.
#[derive(Debug, Clone)]
pub struct CollocationGrid {
    pub grid: ChebGrid,
    pub alpha: Vec<Option<f64>>,
    pub alpha_rotated: Vec<Option<Complex64>>,
    pub dalpha_dx: Vec<Option<f64>>,
    pub chi: f64,
}

impl CollocationGrid {
    pub fn build(map: &RationalMap, n: usize, chi: f64) -> Result<Self, MapError> {
        let grid = chebyshev_points(n).map_err(|_| MapError::DegenerateAlpha)?;
        let rot = Complex64::from_polar(1.0, -chi);
        let mut alpha = vec![None; n];
        let mut alpha_rotated = vec![None; n];
        let mut dalpha_dx = vec![None; n];
        for q in 1..n - 1 {
            let x = Complex64::new(grid.x[q], 0.0);
            let a = map.forward(x)?.re;
            alpha[q] = Some(a);
            alpha_rotated[q] = Some(a * rot);
            dalpha_dx[q] = Some(map.derivative(x)?.re);
        }
        Ok(CollocationGrid {
            grid,
            alpha,
            alpha_rotated,
            dalpha_dx,
            chi,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn forward_values() {
        let m2 = RationalMap::two_to_one();
        let m4 = RationalMap::four_to_one();
        assert!((m2.forward(c(0.5, 0.0)).unwrap() - c(2.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!((m4.forward(c(0.5, 0.0)).unwrap() - c(10.0 / 9.0, 0.0)).norm() < 1e-15);
        assert_eq!(m2.forward(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(m4.forward(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!(matches!(
            m2.forward(c(1.0, 0.0)),
            Err(MapError::PoleAtEndpoint(_))
        ));
        assert!(matches!(
            m4.forward(c(-1.0, 0.0)),
            Err(MapError::PoleAtEndpoint(_))
        ));
    }

    #[test]
    fn derivative_values() {
        let m2 = RationalMap::two_to_one();
        let m4 = RationalMap::four_to_one();
        assert!((m2.derivative(c(0.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((m4.derivative(c(0.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        // odd map => even derivative
        for x in [0.3, 0.77, 0.95] {
            for m in [&m2, &m4] {
                let a = m.derivative(c(x, 0.0)).unwrap();
                let b = m.derivative(c(-x, 0.0)).unwrap();
                assert!((a - b).norm() < 1e-13 * a.norm());
            }
        }
    }

    #[test]
    fn collocation_preimages_examples() {
        let m2 = RationalMap::two_to_one();
        let pts = m2.preimages_at_collocation(0.5);
        assert_eq!(pts[0].point, Preimage::Finite(c(0.5, 0.0)));
        assert_eq!(pts[1].point, Preimage::Finite(c(-2.0, 0.0)));

        let m4 = RationalMap::four_to_one();
        let pts = m4.preimages_at_collocation(0.5);
        let expect = [c(0.5, 0.0), c(2.0, 0.0), c(-0.8, 0.6), c(-0.8, -0.6)];
        for (tp, e) in pts.iter().zip(expect) {
            let z = tp.point.finite().unwrap();
            assert!((z - e).norm() < 1e-14, "{z} vs {e}");
        }
        // x_p = 0 limits
        let pts = m4.preimages_at_collocation(0.0);
        assert_eq!(pts[1].point, Preimage::Infinite);
        assert_eq!(pts[2].point, Preimage::Finite(c(0.0, 1.0)));
        assert_eq!(pts[3].point, Preimage::Finite(c(0.0, -1.0)));
    }

    #[test]
    fn inverse_property_at_collocation() {
        let m4 = RationalMap::four_to_one();
        for x_p in [0.3, -0.62, 0.9] {
            let alpha = m4.forward(c(x_p, 0.0)).unwrap();
            for tp in m4.preimages_at_collocation(x_p) {
                let v = tp.point.finite().unwrap();
                let back = m4.forward(v).unwrap();
                assert!((back - alpha).norm() < 1e-11 * (1.0 + alpha.norm()), "{v}");
            }
        }
    }

    #[test]
    fn general_roots_match_collocation() {
        let m4 = RationalMap::four_to_one();
        let tagged = m4.preimages_general(c(10.0 / 9.0, 0.0)).unwrap();
        let col = m4.preimages_at_collocation(0.5);
        for ct in &col {
            let z = ct.point.finite().unwrap();
            let found = tagged
                .iter()
                .find(|t| t.tag == ct.tag)
                .and_then(|t| t.point.finite())
                .unwrap();
            assert!((found - z).norm() < 1e-12, "{:?}", ct.tag);
        }
        let m2 = RationalMap::two_to_one();
        let tagged = m2.preimages_general(c(2.0 / 3.0, 0.0)).unwrap();
        let vals: Vec<_> = tagged.iter().map(|t| t.point.finite().unwrap()).collect();
        assert!(vals.iter().any(|z| (z - c(0.5, 0.0)).norm() < 1e-13));
        assert!(vals.iter().any(|z| (z - c(-2.0, 0.0)).norm() < 1e-13));
    }

    #[test]
    fn vieta_consistency() {
        // roots of M(x) = α satisfy the monic polynomial rebuilt from Vieta
        let m4 = RationalMap::four_to_one();
        let alpha = c(0.7, 1.3);
        let roots = m4.roots(alpha).unwrap();
        // quartic: x⁴ - x³/α - 2x² - x/α + 1 = 0
        let sum: Complex64 = roots.iter().sum();
        let prod: Complex64 = roots.iter().product();
        assert!((sum - 1.0 / alpha).norm() < 1e-12);
        assert!((prod - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn homotopy_tags_complex_alpha() {
        let m4 = RationalMap::four_to_one();
        let tagged = m4.preimages_general(c(1.2, 0.8)).unwrap();
        assert_eq!(tagged.len(), 4);
        // every tag appears exactly once and roots still invert the map
        for tag in [
            ContourTag::Interval,
            ContourTag::RealExterior,
            ContourTag::UpperSemicircle,
            ContourTag::LowerSemicircle,
        ] {
            assert_eq!(tagged.iter().filter(|t| t.tag == tag).count(), 1);
        }
        for t in &tagged {
            let z = t.point.finite().unwrap();
            assert!((m4.forward(z).unwrap() - c(1.2, 0.8)).norm() < 1e-10);
        }
    }

    #[test]
    fn endpoint_asymptotics() {
        // (1-x)^m · M(x) -> 1/2 as x -> 1
        for (map, m) in [
            (RationalMap::two_to_one(), 1),
            (RationalMap::four_to_one(), 2),
        ] {
            for k in 2..=6 {
                let x = 1.0 - 10f64.powi(-k);
                let v = map.forward(c(x, 0.0)).unwrap().re * (1.0 - x).powi(m);
                assert!((v - 0.5).abs() < 2.0 * 10f64.powi(-k), "m={m} k={k}: {v}");
            }
        }
    }

    #[test]
    fn grid_build() {
        let m4 = RationalMap::four_to_one();
        let g = CollocationGrid::build(&m4, 9, 0.0).unwrap();
        assert!(g.alpha[0].is_none() && g.alpha[8].is_none());
        for q in 1..8 {
            assert_eq!(g.alpha_rotated[q].unwrap(), c(g.alpha[q].unwrap(), 0.0));
        }
        // interior alphas strictly increasing
        for q in 2..8 {
            assert!(g.alpha[q].unwrap() > g.alpha[q - 1].unwrap());
        }
    }
}
