//! Independent verification machinery. Everything here works from
//! definitions (dilation plus exact containment) or generic linear
//! solves, never from the closed-form index formulas it is used to
//! validate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bodies::ConvexBody;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::dot;
use crate::simplex::Simplex;

/// Slack used by the exact containment predicates.
pub const CONTAINMENT_TOL: f64 = 1e-12;

/// Outcome of a containment check.
#[derive(Debug, Clone)]
pub struct ContainmentReport {
    pub contained: bool,
    /// Facet with the worst slack when not contained.
    pub violating_facet: Option<usize>,
    /// Minimum signed slack over all checks.
    pub margin: f64,
}

/// Exact criterion for `B(center; rho)` inside `S`: the signed distance
/// `lambda_j(center) / ||a_j||` to every facet must be at least `rho`.
pub fn ball_in_simplex(center: &[f64], rho: f64, s: &Simplex<f64>) -> ContainmentReport {
    let c = s.coeffs();
    let mut margin = f64::INFINITY;
    let mut worst = 0;
    for j in 0..s.num_vertices() {
        let norm = dot(&c.normals[j], &c.normals[j]).sqrt();
        let slack = s.lagrange_eval(j, center) / norm - rho;
        if slack < margin {
            margin = slack;
            worst = j;
        }
    }
    ContainmentReport {
        contained: margin >= -CONTAINMENT_TOL,
        violating_facet: if margin >= -CONTAINMENT_TOL { None } else { Some(worst) },
        margin,
    }
}

/// Exact cube containment by enumerating all 2^n cube vertices.
pub fn cube_in_simplex(cube: &ConvexBody, s: &Simplex<f64>) -> Result<ContainmentReport> {
    let n = s.dim();
    if n > 20 {
        return Err(Error::DimensionTooLarge { dim: n, max: 20 });
    }
    let (lo, hi) = match cube {
        ConvexBody::UnitCube { .. } => (0.0, 1.0),
        ConvexBody::SymCube { .. } => (-1.0, 1.0),
        ConvexBody::Ball { .. } => {
            return Err(Error::PreconditionFailed(
                "cube_in_simplex needs a cube body".into(),
            ))
        }
    };
    let mut margin = f64::INFINITY;
    let mut worst = 0;
    let mut vertex = vec![lo; n];
    for mask in 0u32..(1 << n) {
        for (i, v) in vertex.iter_mut().enumerate() {
            *v = if mask & (1 << i) != 0 { hi } else { lo };
        }
        for j in 0..s.num_vertices() {
            let l = s.lagrange_eval(j, &vertex);
            if l < margin {
                margin = l;
                worst = j;
            }
        }
    }
    Ok(ContainmentReport {
        contained: margin >= -CONTAINMENT_TOL,
        violating_facet: if margin >= -CONTAINMENT_TOL { None } else { Some(worst) },
        margin,
    })
}

fn body_in_dilated(body: &ConvexBody, s: &Simplex<f64>, tau: f64) -> Result<bool> {
    let dilated = s.dilate(tau)?;
    Ok(match body {
        ConvexBody::Ball { center, radius } => {
            ball_in_simplex(center, *radius, &dilated).contained
        }
        _ => cube_in_simplex(body, &dilated)?.contained,
    })
}

/// Definition-level evaluation of `xi(C;S) = min{sigma >= 1 : C in sigma S}`
/// by doubling then bisection on the dilation ratio.
pub fn xi_bisection(body: &ConvexBody, s: &Simplex<f64>) -> Result<f64> {
    if body_in_dilated(body, s, 1.0)? {
        return Ok(1.0);
    }
    let mut hi = 2.0;
    while !body_in_dilated(body, s, hi)? {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::PreconditionFailed(
                "no enclosing dilation found below 1e12".into(),
            ));
        }
    }
    let mut lo = hi / 2.0;
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if body_in_dilated(body, s, mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Inradius and incenter from the tangency conditions
/// `(a_j, z) + l_{n+1,j} = r ||a_j||`, assembled as one
/// (n+1)x(n+1) linear system in the unknowns (z, r).
pub fn chebyshev_inradius(s: &Simplex<f64>) -> Result<(f64, Vec<f64>)> {
    let n = s.dim();
    let c = s.coeffs();
    let rows = (0..=n)
        .map(|j| {
            let mut row = c.normals[j].clone();
            row.push(-dot(&c.normals[j], &c.normals[j]).sqrt());
            row
        })
        .collect();
    let rhs: Vec<f64> = (0..=n).map(|j| -c.offsets[j]).collect();
    let solution = Matrix::from_rows(rows).solve(&rhs)?;
    let r = solution[n];
    Ok((r, solution[..n].to_vec()))
}

/// Longest axis-parallel segment in direction `i`, by maximizing the
/// exact per-point interval length over a barycentric grid and then a
/// seeded derivative-free refinement. Reports a lower bound for `d_i`.
pub fn axial_diameter_bruteforce(s: &Simplex<f64>, i: usize, resolution: usize) -> f64 {
    let n = s.dim();
    let mut best_len = 0.0;
    let mut best_bary = vec![1.0 / (n as f64 + 1.0); n + 1];
    let mut grid_point = vec![0usize; n + 1];
    grid_walk(resolution, n + 1, &mut grid_point, 0, &mut |parts| {
        let bary: Vec<f64> = parts.iter().map(|&p| p as f64 / resolution as f64).collect();
        let len = interval_length(s, i, &bary);
        if len > best_len {
            best_len = len;
            best_bary = bary;
        }
    });
    // local refinement in barycentric space
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut step = 1.0 / resolution as f64;
    let mut current = best_bary;
    while step > 1e-10 {
        let mut improved = false;
        for _ in 0..4 * (n + 1) {
            let mut candidate = current.clone();
            let k = rng.gen_range(0..=n);
            candidate[k] = (candidate[k] + rng.gen_range(-step..step)).max(0.0);
            let total: f64 = candidate.iter().sum();
            if total <= 0.0 {
                continue;
            }
            for c in candidate.iter_mut() {
                *c /= total;
            }
            let len = interval_length(s, i, &candidate);
            if len > best_len {
                best_len = len;
                current = candidate;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best_len
}

/// Length of `{t : p + t e_i in S}` for the point with barycentric
/// coordinates `bary`.
fn interval_length(s: &Simplex<f64>, i: usize, bary: &[f64]) -> f64 {
    let n = s.dim();
    let p: Vec<f64> = (0..n)
        .map(|d| {
            bary.iter()
                .zip(s.vertices())
                .map(|(b, v)| b * v[d])
                .sum()
        })
        .collect();
    let c = s.coeffs();
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for j in 0..s.num_vertices() {
        // lambda_j(p + t e_i) = lambda_j(p) + t l_ij
        let value = s.lagrange_eval(j, &p);
        let slope = c.normals[j][i];
        if slope.abs() < 1e-300 {
            if value < 0.0 {
                return 0.0;
            }
        } else {
            let t = -value / slope;
            if slope > 0.0 {
                lo = lo.max(t);
            } else {
                hi = hi.min(t);
            }
        }
    }
    (hi - lo).max(0.0)
}

fn grid_walk(
    remaining: usize,
    slots: usize,
    point: &mut Vec<usize>,
    index: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if index == slots - 1 {
        point[index] = remaining;
        visit(point);
        return;
    }
    for v in 0..=remaining {
        point[index] = v;
        grid_walk(remaining - v, slots, point, index + 1, visit);
    }
}

/// Verdict of the ball-versus-cube implication check: when `S` sits in
/// `Q_n`, `Q_n` sits in `nS`, and `S` is not regular, the ball
/// circumscribed around the cube must escape `nS`.
#[derive(Debug, Clone)]
pub struct Corollary5Report {
    pub regular: bool,
    pub cube_in_ns: ContainmentReport,
    pub ball_in_ns: ContainmentReport,
    /// True unless `S` is non-regular yet the circumscribed ball still
    /// fits inside `nS`.
    pub implication_holds: bool,
}

pub fn corollary5_check(s: &Simplex<f64>) -> Result<Corollary5Report> {
    let n = s.dim();
    for v in s.vertices() {
        if v.iter().any(|&c| !(-CONTAINMENT_TOL..=1.0 + CONTAINMENT_TOL).contains(&c)) {
            return Err(Error::PreconditionFailed(
                "simplex is not contained in the unit cube".into(),
            ));
        }
    }
    let dilated = s.dilate(n as f64)?;
    let cube_in_ns = cube_in_simplex(&ConvexBody::UnitCube { dim: n }, &dilated)?;
    if !cube_in_ns.contained {
        return Err(Error::PreconditionFailed(
            "unit cube is not contained in nS".into(),
        ));
    }
    let regular = crate::metrics::is_regular(s, crate::metrics::REGULARITY_TOL);
    let center = vec![0.5; n];
    let ball_in_ns = ball_in_simplex(&center, (n as f64).sqrt() / 2.0, &dilated);
    let implication_holds = regular || !ball_in_ns.contained;
    Ok(Corollary5Report {
        regular,
        cube_in_ns,
        ball_in_ns,
        implication_holds,
    })
}
