//! The absorption index `xi(C;S)` (minimal sigma >= 1 with `C` inside
//! `sigma S`, dilation about the centroid) and the translate index
//! `alpha(C;S)` (minimal tau with `C` inside a translate of `tau S`),
//! plus the specialized closed forms used as independent cross-checks.

use crate::bodies::ConvexBody;
use crate::error::{Error, Result};
use crate::metrics;
use crate::scalar::{dot, max_of, sum, Scalar};
use crate::simplex::Simplex;

/// Default absolute tolerance on the spread of the per-facet maxima when
/// deciding whether `xi(C;S) S` is circumscribed around `C`.
pub const CIRCUMSCRIBED_TOL: f64 = 1e-9;

/// An index value together with the data certifying it.
#[derive(Debug, Clone)]
pub struct AbsorptionResult {
    pub value: f64,
    /// `m_j = max_{x in C} (-lambda_j(x))` per facet.
    pub per_facet: Vec<f64>,
    /// 0-based facet index attaining `max_j m_j`.
    pub argmax_facet: usize,
    /// Point of `C` attaining `m_{j*}`.
    pub witness_point: Vec<f64>,
    /// Whether all `m_j` agree within [`CIRCUMSCRIBED_TOL`].
    pub circumscribed: bool,
}

fn per_facet_maxima(body: &ConvexBody, s: &Simplex<f64>) -> Result<Vec<(f64, Vec<f64>)>> {
    (0..s.num_vertices())
        .map(|j| body.max_neg_lambda(s, j))
        .collect()
}

fn spread_within(m: &[f64], tol: f64) -> bool {
    let max = m.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = m.iter().cloned().fold(f64::INFINITY, f64::min);
    max - min <= tol
}

/// `xi(C;S) = (n+1) max_j m_j + 1` when `C` is not inside `S`, else 1.
pub fn xi(body: &ConvexBody, s: &Simplex<f64>) -> Result<AbsorptionResult> {
    let maxima = per_facet_maxima(body, s)?;
    let per_facet: Vec<f64> = maxima.iter().map(|(v, _)| *v).collect();
    let argmax_facet = per_facet
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(j, _)| j)
        .unwrap();
    let m_max = per_facet[argmax_facet];
    // all m_j <= 0 means C is inside S, which clamps the index at 1
    let value = if m_max <= 0.0 {
        1.0
    } else {
        (s.num_vertices() as f64) * m_max + 1.0
    };
    Ok(AbsorptionResult {
        value,
        circumscribed: spread_within(&per_facet, CIRCUMSCRIBED_TOL),
        witness_point: maxima[argmax_facet].1.clone(),
        argmax_facet,
        per_facet,
    })
}

/// `alpha(C;S) = sum_j m_j + 1`.
pub fn alpha(body: &ConvexBody, s: &Simplex<f64>) -> Result<AbsorptionResult> {
    let maxima = per_facet_maxima(body, s)?;
    let per_facet: Vec<f64> = maxima.iter().map(|(v, _)| *v).collect();
    let argmax_facet = per_facet
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(j, _)| j)
        .unwrap();
    Ok(AbsorptionResult {
        value: per_facet.iter().sum::<f64>() + 1.0,
        circumscribed: spread_within(&per_facet, CIRCUMSCRIBED_TOL),
        witness_point: maxima[argmax_facet].1.clone(),
        argmax_facet,
        per_facet,
    })
}

/// True iff all per-facet maxima agree within `tol`, i.e. the simplex
/// `xi(C;S) S` is circumscribed around `C`.
pub fn circumscribed_test(body: &ConvexBody, s: &Simplex<f64>, tol: f64) -> Result<bool> {
    let maxima = per_facet_maxima(body, s)?;
    let per_facet: Vec<f64> = maxima.iter().map(|(v, _)| *v).collect();
    Ok(spread_within(&per_facet, tol))
}

// ---------------------------------------------------------------------
// Specialized closed forms. These are independent code paths used for
// cross-validation of the generic support-function route above.
// ---------------------------------------------------------------------

/// `xi(B(x0;rho);S)` from the ball closed form:
/// `(n+1) max_j [rho ||a_j|| - (a_j, x0) - l_{n+1,j}] + 1`, clamped at 1.
pub fn xi_ball_formula(center: &[f64], radius: f64, s: &Simplex<f64>) -> f64 {
    let c = s.coeffs();
    let m_max = (0..s.num_vertices())
        .map(|j| {
            let norm = dot(&c.normals[j], &c.normals[j]).sqrt();
            radius * norm - dot(&c.normals[j], center) - c.offsets[j]
        })
        .fold(f64::NEG_INFINITY, f64::max);
    if m_max <= 0.0 {
        1.0
    } else {
        s.num_vertices() as f64 * m_max + 1.0
    }
}

/// `alpha(B(x0;rho);S) = rho sum_j ||a_j||` (independent of the center).
pub fn alpha_ball_formula(radius: f64, s: &Simplex<f64>) -> f64 {
    let c = s.coeffs();
    radius
        * (0..s.num_vertices())
            .map(|j| dot(&c.normals[j], &c.normals[j]).sqrt())
            .sum::<f64>()
}

/// `alpha(Q_n;S) = sum_i 1/d_i` via the axial diameters.
pub fn alpha_unit_cube_via_diameters(s: &Simplex<f64>) -> f64 {
    metrics::axial_diameters(s).iter().map(|d| 1.0 / d).sum()
}

/// `alpha(Q_n;S) = (1/2) sum_ij |l_ij|` via the coefficient matrix.
/// Exact in rational mode.
pub fn alpha_unit_cube_via_coeffs<T: Scalar>(s: &Simplex<T>) -> T {
    coeff_abs_sum(s) / T::from_int(2)
}

/// `alpha(Q'_n;S) = sum_ij |l_ij|`. Exact in rational mode.
pub fn alpha_sym_cube_via_coeffs<T: Scalar>(s: &Simplex<T>) -> T {
    coeff_abs_sum(s)
}

fn coeff_abs_sum<T: Scalar>(s: &Simplex<T>) -> T {
    let c = s.coeffs();
    sum((0..s.dim()).flat_map(|i| {
        (0..s.num_vertices()).map(move |j| c.matrix.get(i, j).abs())
    }))
}

/// Which of the two cubes an exact-mode computation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubeKind {
    /// `[0,1]^n`
    Unit,
    /// `[-1,1]^n`
    Sym,
}

/// Per-facet maxima of `-lambda_j` over a cube, in any scalar mode.
/// `h_{Q_n}(-a_j)` is a coordinate-wise max, so no square roots appear
/// and the rational path is exact.
pub fn cube_per_facet_maxima<T: Scalar>(kind: CubeKind, s: &Simplex<T>) -> Vec<T> {
    let c = s.coeffs();
    (0..s.num_vertices())
        .map(|j| {
            let support = sum(c.normals[j].iter().map(|l| match kind {
                CubeKind::Unit => max_of(T::zero(), -l.clone()),
                CubeKind::Sym => l.abs(),
            }));
            support - c.offsets[j].clone()
        })
        .collect()
}

/// `xi` of a cube in any scalar mode; exact for rational simplices.
pub fn xi_cube<T: Scalar>(kind: CubeKind, s: &Simplex<T>) -> T {
    let maxima = cube_per_facet_maxima(kind, s);
    let m_max = maxima
        .into_iter()
        .reduce(max_of)
        .expect("simplex has at least two facets");
    if m_max <= T::zero() {
        T::one()
    } else {
        T::from_int(s.num_vertices() as i64) * m_max + T::one()
    }
}

/// `alpha` of a cube in any scalar mode; exact for rational simplices.
pub fn alpha_cube<T: Scalar>(kind: CubeKind, s: &Simplex<T>) -> T {
    sum(cube_per_facet_maxima(kind, s)) + T::one()
}

/// Dimension-compatibility guard shared by the CLI.
pub fn check_dims(body: &ConvexBody, s: &Simplex<f64>) -> Result<()> {
    if body.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: body.dim(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        hadamard_simplex, random_simplex, regular_inscribed_simplex, standard_simplex,
        RandomScheme,
    };
    use num::BigRational;

    #[test]
    fn xi_ball_regular_inscribed_equals_n() {
        for n in 2..=6 {
            let s = regular_inscribed_simplex(n).unwrap();
            let res = xi(&ConvexBody::unit_ball(n), &s).unwrap();
            assert!((res.value - n as f64).abs() < 1e-9, "n={n} xi={}", res.value);
            assert!(res.circumscribed);
        }
    }

    #[test]
    fn xi_ball_standard_2simplex_is_4() {
        let s = standard_simplex::<f64>(2);
        let res = xi(&ConvexBody::unit_ball(2), &s).unwrap();
        assert!((res.value - 4.0).abs() < 1e-12);
        assert!((res.per_facet[0] - (2f64.sqrt() - 1.0)).abs() < 1e-12);
        assert!((res.per_facet[1] - 1.0).abs() < 1e-12);
        assert!((res.per_facet[2] - 1.0).abs() < 1e-12);
        assert!(!res.circumscribed);
        // closed form agrees
        assert!((xi_ball_formula(&[0.0, 0.0], 1.0, &s) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn xi_cube_standard_simplex_is_n_squared() {
        for n in 2..=8 {
            let s = standard_simplex::<f64>(n);
            let res = xi(&ConvexBody::UnitCube { dim: n }, &s).unwrap();
            assert!((res.value - (n * n) as f64).abs() < 1e-9);
            // max is n-1 on the facet opposite the origin vertex, 0 elsewhere
            assert_eq!(res.argmax_facet, 0);
            assert!((res.per_facet[0] - (n as f64 - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn xi_contained_body_clamps_to_one() {
        let s = standard_simplex::<f64>(2);
        let small = ConvexBody::Ball {
            center: vec![1.0 / 3.0, 1.0 / 3.0],
            radius: 0.1,
        };
        let res = xi(&small, &s).unwrap();
        assert_eq!(res.value, 1.0);
        assert!(res.per_facet.iter().all(|&m| m <= 0.0));
    }

    #[test]
    fn alpha_ball_standard_2simplex() {
        let s = standard_simplex::<f64>(2);
        let res = alpha(&ConvexBody::unit_ball(2), &s).unwrap();
        assert!((res.value - (2.0 + 2f64.sqrt())).abs() < 1e-12);
        let (r, _) = metrics::inradius_incenter(&s);
        assert!((res.value - 1.0 / r).abs() < 1e-12);
    }

    #[test]
    fn alpha_cube_standard_simplex_is_n() {
        for n in 2..=8 {
            let s = standard_simplex::<f64>(n);
            let res = alpha(&ConvexBody::UnitCube { dim: n }, &s).unwrap();
            assert!((res.value - n as f64).abs() < 1e-9);
            assert!((alpha_unit_cube_via_coeffs(&s) - n as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn alpha_ball_scales_with_radius_not_center() {
        let s = random_simplex(3, 17, RandomScheme::Gaussian).unwrap();
        let base = alpha(&ConvexBody::unit_ball(3), &s).unwrap().value;
        for (center, rho) in [(vec![1.0, -2.0, 0.5], 2.5), (vec![0.0, 10.0, 0.0], 0.3)] {
            // alpha(B(x0;rho);S) = rho * alpha(B_n;S), independent of x0
            let res = alpha(&ConvexBody::Ball { center, radius: rho }, &s).unwrap();
            assert!((res.value - rho * base).abs() < 1e-9);
            assert!((alpha_ball_formula(rho, &s) - rho * base).abs() < 1e-9);
        }
    }

    #[test]
    fn sym_cube_formula_matches_generic() {
        for seed in 0..10 {
            let s = random_simplex(3, seed, RandomScheme::Gaussian).unwrap();
            let generic = alpha(&ConvexBody::SymCube { dim: 3 }, &s).unwrap().value;
            assert!((alpha_sym_cube_via_coeffs(&s) - generic).abs() < 1e-9);
        }
    }

    #[test]
    fn xi_dominates_alpha() {
        for seed in 0..50 {
            let s = random_simplex(4, seed, RandomScheme::Gaussian).unwrap();
            for body in [
                ConvexBody::unit_ball(4),
                ConvexBody::UnitCube { dim: 4 },
                ConvexBody::SymCube { dim: 4 },
            ] {
                let x = xi(&body, &s).unwrap().value;
                let a = alpha(&body, &s).unwrap().value;
                assert!(x >= a - 1e-12);
                assert!(x >= 1.0 && a > 0.0);
            }
        }
    }

    #[test]
    fn circumscription_matches_value_equality() {
        let reg = regular_inscribed_simplex(3).unwrap();
        assert!(circumscribed_test(&ConvexBody::unit_ball(3), &reg, 1e-9).unwrap());
        let std2 = standard_simplex::<f64>(2);
        assert!(!circumscribed_test(&ConvexBody::unit_ball(2), &std2, 1e-9).unwrap());
        for seed in 0..20 {
            let s = random_simplex(3, seed, RandomScheme::Gaussian).unwrap();
            let body = ConvexBody::unit_ball(3);
            let circ = circumscribed_test(&body, &s, 1e-9).unwrap();
            let x = xi(&body, &s).unwrap().value;
            let a = alpha(&body, &s).unwrap().value;
            assert_eq!(circ, (x - a).abs() <= 1e-9 * 4.0);
        }
    }

    #[test]
    fn witness_lies_on_dilated_boundary() {
        for seed in 0..10 {
            let s = random_simplex(3, 100 + seed, RandomScheme::InBall).unwrap();
            let body = ConvexBody::unit_ball(3);
            let res = xi(&body, &s).unwrap();
            if res.value <= 1.0 {
                continue;
            }
            assert!(body.contains(&res.witness_point, 1e-12));
            let dilated = s.dilate(res.value).unwrap();
            let l = dilated.lagrange_eval(res.argmax_facet, &res.witness_point);
            assert!(l.abs() < 1e-8, "lambda on boundary facet: {l}");
        }
    }

    #[test]
    fn exact_rational_hadamard_xi_equals_n() {
        for n in [3usize, 7] {
            let s = hadamard_simplex::<BigRational>(n).unwrap();
            let value = xi_cube(CubeKind::Unit, &s);
            assert_eq!(value, BigRational::from_int(n as i64));
            let a = alpha_cube(CubeKind::Unit, &s);
            assert_eq!(a, BigRational::from_int(n as i64));
        }
    }
}
