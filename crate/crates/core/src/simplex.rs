//! The central [`Simplex`] type: n+1 vertices in R^n, the bordered vertex
//! matrix A, and the basic Lagrange coefficients L = A^{-1} whose columns
//! carry the affine functions lambda_j (barycentric coordinates).

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{dot, Scalar};

/// Coefficients of the basic Lagrange polynomials
/// `lambda_j(x) = (a_j, x) + offset_j`, read off the columns of `A^{-1}`.
#[derive(Debug, Clone)]
pub struct LagrangeCoeffs<T> {
    /// The full (n+1)x(n+1) inverse of the bordered vertex matrix.
    pub matrix: Matrix<T>,
    /// `a_j = (l_1j, ..., l_nj)`: inward normal of the facet opposite
    /// vertex j.
    pub normals: Vec<Vec<T>>,
    /// `l_{n+1,j} = lambda_j(0)`.
    pub offsets: Vec<T>,
}

/// A nondegenerate simplex. Immutable after construction; the Lagrange
/// coefficients are computed once on first use.
#[derive(Debug)]
pub struct Simplex<T: Scalar> {
    dim: usize,
    vertices: Vec<Vec<T>>,
    det: T,
    coeffs: OnceLock<LagrangeCoeffs<T>>,
}

impl<T: Scalar> Clone for Simplex<T> {
    fn clone(&self) -> Self {
        Simplex {
            dim: self.dim,
            vertices: self.vertices.clone(),
            det: self.det.clone(),
            coeffs: self.coeffs.clone(),
        }
    }
}

impl<T: Scalar> Simplex<T> {
    /// Builds a simplex from n+1 points of dimension n, validating
    /// nondegeneracy of the bordered vertex matrix.
    pub fn new(vertices: Vec<Vec<T>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::DegenerateSimplex("no vertices".into()));
        }
        let dim = vertices.len() - 1;
        if dim == 0 {
            return Err(Error::DegenerateSimplex(
                "a simplex needs at least two vertices".into(),
            ));
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
        }
        let det = bordered_matrix(&vertices).determinant();
        if T::EXACT {
            if det.is_zero() {
                return Err(Error::DegenerateSimplex("det A = 0".into()));
            }
        } else {
            // scale-aware degeneracy threshold: coordinates of magnitude M
            // inflate det A by up to (M+1)^n
            let scale = vertices
                .iter()
                .flatten()
                .map(|c| c.to_f64().abs())
                .fold(0.0, f64::max);
            let threshold = 1e-12 * (scale + 1.0).powi(dim as i32);
            if det.to_f64().abs() < threshold {
                return Err(Error::DegenerateSimplex(format!(
                    "|det A| = {:.3e} below threshold {:.3e}",
                    det.to_f64().abs(),
                    threshold
                )));
            }
        }
        Ok(Simplex {
            dim,
            vertices,
            det,
            coeffs: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vertices (and facets), n+1.
    pub fn num_vertices(&self) -> usize {
        self.dim + 1
    }

    pub fn vertices(&self) -> &[Vec<T>] {
        &self.vertices
    }

    pub fn vertex(&self, j: usize) -> &[T] {
        &self.vertices[j]
    }

    /// Determinant of the bordered vertex matrix A.
    pub fn det_a(&self) -> &T {
        &self.det
    }

    /// Lagrange coefficients, computed on first call and cached.
    pub fn coeffs(&self) -> &LagrangeCoeffs<T> {
        self.coeffs.get_or_init(|| {
            let inv = bordered_matrix(&self.vertices)
                .invert()
                .expect("nondegeneracy validated at construction");
            let n = self.dim;
            let normals = (0..=n)
                .map(|j| (0..n).map(|i| inv.get(i, j).clone()).collect())
                .collect();
            let offsets = (0..=n).map(|j| inv.get(n, j).clone()).collect();
            LagrangeCoeffs {
                matrix: inv,
                normals,
                offsets,
            }
        })
    }

    /// Evaluates the j-th barycentric coordinate at `x` (j is 0-based).
    pub fn lagrange_eval(&self, j: usize, x: &[T]) -> T {
        assert_eq!(x.len(), self.dim, "point dimension mismatch");
        let c = self.coeffs();
        dot(&c.normals[j], x) + c.offsets[j].clone()
    }

    /// All barycentric coordinates of `x`.
    pub fn barycentric(&self, x: &[T]) -> Vec<T> {
        (0..=self.dim).map(|j| self.lagrange_eval(j, x)).collect()
    }

    /// `vol(S) = |det A| / n!`.
    pub fn volume(&self) -> T {
        let mut fact = T::one();
        for k in 2..=self.dim as i64 {
            fact = fact * T::from_int(k);
        }
        self.det.abs() / fact
    }

    /// Center of gravity of the vertex set.
    pub fn centroid(&self) -> Vec<T> {
        let count = T::from_int(self.num_vertices() as i64);
        (0..self.dim)
            .map(|i| {
                crate::scalar::sum(self.vertices.iter().map(|v| v[i].clone()))
                    / count.clone()
            })
            .collect()
    }

    /// Homothety about the centroid with ratio `tau`.
    pub fn dilate(&self, tau: T) -> Result<Simplex<T>> {
        if tau.is_zero() {
            return Err(Error::DegenerateSimplex("dilation ratio 0".into()));
        }
        let c = self.centroid();
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                (0..self.dim)
                    .map(|i| c[i].clone() + tau.clone() * (v[i].clone() - c[i].clone()))
                    .collect()
            })
            .collect();
        Simplex::new(vertices)
    }

    /// Shifts every vertex by `v`.
    pub fn translate(&self, v: &[T]) -> Result<Simplex<T>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let vertices = self
            .vertices
            .iter()
            .map(|p| {
                (0..self.dim)
                    .map(|i| p[i].clone() + v[i].clone())
                    .collect()
            })
            .collect();
        Simplex::new(vertices)
    }
}

impl Simplex<f64> {
    /// Conversion into exact rational coordinates. Exact only when the
    /// float coordinates are themselves exact (integers, dyadics).
    pub fn to_rational(&self) -> Result<Simplex<num::BigRational>> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&c| {
                        num::BigRational::from_float(c).ok_or_else(|| {
                            Error::PreconditionFailed(format!("non-finite coordinate {c}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Simplex::new(vertices)
    }
}

/// The (n+1)x(n+1) matrix A: vertex coordinates bordered by a column of
/// ones.
fn bordered_matrix<T: Scalar>(vertices: &[Vec<T>]) -> Matrix<T> {
    Matrix::from_rows(
        vertices
            .iter()
            .map(|v| {
                let mut row = v.clone();
                row.push(T::one());
                row
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn standard2() -> Simplex<f64> {
        Simplex::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(standard2().dim() == 2);
        assert!(matches!(
            Simplex::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]]),
            Err(Error::DegenerateSimplex(_))
        ));
        let seg = Simplex::new(vec![vec![0.0], vec![1.0]]).unwrap();
        assert_eq!(seg.dim(), 1);
        assert!(matches!(
            Simplex::new(vec![vec![0.0, 0.0], vec![1.0], vec![0.0, 1.0]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn degeneracy_threshold_is_scale_aware() {
        // collinear up to 1e-9 at coordinate scale 1e4 must be rejected
        let r = Simplex::new(vec![
            vec![0.0, 0.0],
            vec![1e4, 0.0],
            vec![2e4, 1e-9],
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn lagrange_interpolation_property() {
        let s = standard2();
        for j in 0..3 {
            for k in 0..3 {
                let expected = if j == k { 1.0 } else { 0.0 };
                assert!((s.lagrange_eval(j, s.vertex(k).to_vec().as_slice()) - expected).abs() < 1e-9);
            }
        }
        assert!((s.lagrange_eval(0, &[0.0, 0.0]) - 1.0).abs() < 1e-15);
        assert!((s.lagrange_eval(0, &[1.0, 1.0]) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn partition_of_unity() {
        let s = standard2();
        let pts = [[0.3, 0.2], [-4.0, 7.5], [100.0, -3.0]];
        for p in pts {
            let total: f64 = s.barycentric(&p).iter().sum();
            assert!((total - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn volume_values() {
        assert!((standard2().volume() - 0.5).abs() < 1e-15);
        let big = Simplex::new(vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![0.0, 2.0]]).unwrap();
        assert!((big.volume() - 2.0).abs() < 1e-15);
        // standard n-simplex has volume 1/n!
        for n in 1..=6 {
            let s = crate::constructions::standard_simplex::<f64>(n);
            let fact: f64 = (1..=n as u64).product::<u64>() as f64;
            assert!((s.volume() - 1.0 / fact).abs() < 1e-12);
        }
    }

    #[test]
    fn centroid_values() {
        let c = standard2().centroid();
        assert!((c[0] - 1.0 / 3.0).abs() < 1e-15 && (c[1] - 1.0 / 3.0).abs() < 1e-15);
        let seg = Simplex::new(vec![vec![0.0], vec![1.0]]).unwrap();
        assert_eq!(seg.centroid(), vec![0.5]);
    }

    #[test]
    fn dilate_behaviour() {
        let s = standard2();
        let same = s.dilate(1.0).unwrap();
        assert_eq!(same.vertices(), s.vertices());
        let tripled = s.dilate(3.0).unwrap();
        assert!((tripled.vertex(0)[0] + 2.0 / 3.0).abs() < 1e-15);
        assert!((tripled.vertex(0)[1] + 2.0 / 3.0).abs() < 1e-15);
        assert!((tripled.volume() - 9.0 * s.volume()).abs() < 1e-12);
        // centroid is the fixed point
        let c0 = s.centroid();
        let c1 = tripled.centroid();
        assert!((c0[0] - c1[0]).abs() < 1e-12 && (c0[1] - c1[1]).abs() < 1e-12);
        assert!(s.dilate(0.0).is_err());
    }

    #[test]
    fn translate_behaviour() {
        let s = standard2();
        let t = s.translate(&[1.0, 1.0]).unwrap();
        assert_eq!(t.vertex(0), &[1.0, 1.0]);
        assert_eq!(t.vertex(1), &[2.0, 1.0]);
        assert_eq!(t.vertex(2), &[1.0, 2.0]);
        let back = t.translate(&[-1.0, -1.0]).unwrap();
        for (a, b) in back.vertices().iter().zip(s.vertices()) {
            assert!((a[0] - b[0]).abs() < 1e-15 && (a[1] - b[1]).abs() < 1e-15);
        }
        let same = s.translate(&[0.0, 0.0]).unwrap();
        assert_eq!(same.vertices(), s.vertices());
    }

    #[test]
    fn membership_via_barycentric_signs() {
        let s = standard2();
        // interior convex combination
        let inside = [0.2, 0.3];
        assert!(s.barycentric(&inside).iter().all(|&l| l >= -1e-12));
        // outside: some coordinate negative
        let outside = [1.0, 1.0];
        assert!(s.barycentric(&outside).iter().any(|&l| l < 0.0));
    }

    #[test]
    fn rational_simplex_exact_volume() {
        use num::BigRational;
        let s = standard2().to_rational().unwrap();
        assert_eq!(
            s.volume(),
            BigRational::from_int(1) / BigRational::from_int(2)
        );
    }
}
