//! Geometric quantities of a simplex derived from the Lagrange
//! coefficients: heights, axial diameters, inradius and incenter, tangent
//! points, facet measures, circumradius, Euler-inequality and regularity
//! checks.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{dot, Scalar};
use crate::simplex::Simplex;

/// Largest dimension for which the subset-enumeration circumball runs.
pub const MAX_CIRCUMBALL_DIM: usize = 20;

/// Everything [`compute`] produces in one pass.
#[derive(Debug, Clone)]
pub struct SimplexMetrics {
    pub volume: f64,
    pub heights: Vec<f64>,
    pub axial_diameters: Vec<f64>,
    pub inradius: f64,
    pub incenter: Vec<f64>,
    pub circumradius: f64,
    pub circumcenter: Vec<f64>,
    pub facet_measures: Vec<f64>,
    pub surface: f64,
    pub euler_gap: f64,
    pub regular: bool,
}

/// Points where the inscribed ball touches each facet.
#[derive(Debug, Clone)]
pub struct TangentPoints(pub Vec<Vec<f64>>);

/// Euclidean norm of the facet normal `a_j`.
fn normal_norm(s: &Simplex<f64>, j: usize) -> f64 {
    dot(&s.coeffs().normals[j], &s.coeffs().normals[j]).sqrt()
}

/// Heights `h_j = 1 / ||a_j||`, one per vertex.
pub fn heights(s: &Simplex<f64>) -> Vec<f64> {
    (0..s.num_vertices()).map(|j| 1.0 / normal_norm(s, j)).collect()
}

/// Axial diameters `d_i = 2 / sum_j |l_ij|`. Exact in rational mode.
pub fn axial_diameters<T: Scalar>(s: &Simplex<T>) -> Vec<T> {
    let c = s.coeffs();
    (0..s.dim())
        .map(|i| {
            let total = crate::scalar::sum(
                (0..s.num_vertices()).map(|j| c.matrix.get(i, j).abs()),
            );
            T::from_int(2) / total
        })
        .collect()
}

/// Inradius and incenter: `r = 1 / sum_j ||a_j||`,
/// `z = r * sum_j ||a_j|| x^(j)`.
pub fn inradius_incenter(s: &Simplex<f64>) -> (f64, Vec<f64>) {
    let norms: Vec<f64> = (0..s.num_vertices()).map(|j| normal_norm(s, j)).collect();
    let r = 1.0 / norms.iter().sum::<f64>();
    let z = (0..s.dim())
        .map(|i| {
            r * norms
                .iter()
                .zip(s.vertices())
                .map(|(nj, v)| nj * v[i])
                .sum::<f64>()
        })
        .collect();
    (r, z)
}

/// Tangent points `y^(k) = z - (r / ||a_k||) a_k`.
pub fn tangent_points(s: &Simplex<f64>) -> TangentPoints {
    let (r, z) = inradius_incenter(s);
    let c = s.coeffs();
    let pts = (0..s.num_vertices())
        .map(|k| {
            let nk = normal_norm(s, k);
            (0..s.dim())
                .map(|i| z[i] - r / nk * c.normals[k][i])
                .collect()
        })
        .collect();
    TangentPoints(pts)
}

/// (n-1)-measures of the facets via Gram determinants of edge vectors.
/// For n = 1 the facet "measure" is 1 by convention.
pub fn facet_measures(s: &Simplex<f64>) -> Vec<f64> {
    let n = s.dim();
    if n == 1 {
        return vec![1.0, 1.0];
    }
    (0..s.num_vertices())
        .map(|j| {
            let facet: Vec<&[f64]> = (0..s.num_vertices())
                .filter(|&k| k != j)
                .map(|k| s.vertex(k))
                .collect();
            let base = facet[0];
            let edges: Vec<Vec<f64>> = facet[1..]
                .iter()
                .map(|v| (0..n).map(|i| v[i] - base[i]).collect())
                .collect();
            let gram = Matrix::from_rows(
                edges
                    .iter()
                    .map(|e| edges.iter().map(|f| dot(e, f)).collect())
                    .collect(),
            );
            let fact: f64 = (1..=(n as u64 - 1)).product::<u64>() as f64;
            gram.determinant().max(0.0).sqrt() / fact
        })
        .collect()
}

/// Minimal enclosing ball of the vertex set, by enumerating support
/// subsets of size 2..=n+1 and solving each circumsphere system exactly.
pub fn circumball(s: &Simplex<f64>) -> Result<(f64, Vec<f64>)> {
    let n = s.dim();
    if n > MAX_CIRCUMBALL_DIM {
        return Err(Error::DimensionTooLarge {
            dim: n,
            max: MAX_CIRCUMBALL_DIM,
        });
    }
    let pts = s.vertices();
    let m = pts.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for mask in 1u32..(1 << m) {
        if mask.count_ones() < 2 {
            continue;
        }
        let subset: Vec<&[f64]> = (0..m)
            .filter(|&k| mask & (1 << k) != 0)
            .map(|k| pts[k].as_slice())
            .collect();
        if let Some((radius, center)) = ball_through(&subset) {
            let contains_all = pts
                .iter()
                .all(|p| dist(p, &center) <= radius * (1.0 + 1e-10) + 1e-12);
            if contains_all {
                match &best {
                    Some((r_best, _)) if *r_best <= radius => {}
                    _ => best = Some((radius, center)),
                }
            }
        }
    }
    best.ok_or_else(|| Error::DegenerateSimplex("no enclosing ball found".into()))
}

/// Smallest ball whose boundary passes through all given points, with
/// center in their affine hull. `None` when the points are affinely
/// dependent enough to make the system singular.
fn ball_through(pts: &[&[f64]]) -> Option<(f64, Vec<f64>)> {
    let n = pts[0].len();
    let base = pts[0];
    let k = pts.len() - 1;
    if k == 0 {
        return Some((0.0, base.to_vec()));
    }
    let edges: Vec<Vec<f64>> = pts[1..]
        .iter()
        .map(|p| (0..n).map(|i| p[i] - base[i]).collect())
        .collect();
    // center = base + sum_m c_m edge_m with 2 (edge_l . center - base) = |edge_l|^2
    let gram = Matrix::from_rows(
        edges
            .iter()
            .map(|e| edges.iter().map(|f| 2.0 * dot(e, f)).collect())
            .collect(),
    );
    let rhs: Vec<f64> = edges.iter().map(|e| dot(e, e)).collect();
    let coeffs = gram.solve(&rhs).ok()?;
    let center: Vec<f64> = (0..n)
        .map(|i| base[i] + coeffs.iter().zip(&edges).map(|(c, e)| c * e[i]).sum::<f64>())
        .collect();
    Some((dist(base, &center), center))
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Both sides of the Euler inequality `R >= n r` and their gap.
pub fn euler_check(s: &Simplex<f64>) -> Result<(f64, f64, f64)> {
    let (r, _) = inradius_incenter(s);
    let (big_r, _) = circumball(s)?;
    let nr = s.dim() as f64 * r;
    Ok((big_r, nr, big_r - nr))
}

/// True iff all pairwise vertex distances agree within relative `tol`.
pub fn is_regular(s: &Simplex<f64>, tol: f64) -> bool {
    let mut min_d = f64::INFINITY;
    let mut max_d: f64 = 0.0;
    for (a, va) in s.vertices().iter().enumerate() {
        for vb in &s.vertices()[a + 1..] {
            let d = dist(va, vb);
            min_d = min_d.min(d);
            max_d = max_d.max(d);
        }
    }
    max_d - min_d <= tol * max_d
}

/// Default relative tolerance for [`is_regular`].
pub const REGULARITY_TOL: f64 = 1e-9;

/// All metrics at once.
pub fn compute(s: &Simplex<f64>) -> Result<SimplexMetrics> {
    let (inradius, incenter) = inradius_incenter(s);
    let (circumradius, circumcenter) = circumball(s)?;
    let facet_measures = facet_measures(s);
    let surface = facet_measures.iter().sum();
    Ok(SimplexMetrics {
        volume: s.volume(),
        heights: heights(s),
        axial_diameters: axial_diameters(s),
        inradius,
        incenter,
        euler_gap: circumradius - s.dim() as f64 * inradius,
        circumradius,
        circumcenter,
        facet_measures,
        surface,
        regular: is_regular(s, REGULARITY_TOL),
    })
}
