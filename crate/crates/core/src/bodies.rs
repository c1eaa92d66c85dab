//! Convex bodies described by their support function
//! `h_C(u) = max_{x in C} (u, x)`. The single evaluation
//! `max_{x in C} (-lambda_j(x)) = h_C(-a_j) - l_{n+1,j}` drives both
//! indices for every body kind.

use crate::error::{Error, Result};
use crate::scalar::dot;
use crate::simplex::Simplex;

/// The supported body kinds: balls and the two canonical cubes.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexBody {
    /// `B(center; radius)`.
    Ball { center: Vec<f64>, radius: f64 },
    /// `Q_n = [0,1]^n`.
    UnitCube { dim: usize },
    /// `Q'_n = [-1,1]^n`.
    SymCube { dim: usize },
}

impl ConvexBody {
    pub fn unit_ball(dim: usize) -> Self {
        ConvexBody::Ball {
            center: vec![0.0; dim],
            radius: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Ball { center, .. } => center.len(),
            ConvexBody::UnitCube { dim } | ConvexBody::SymCube { dim } => *dim,
        }
    }

    /// Support function value `h_C(u)`.
    pub fn support(&self, u: &[f64]) -> f64 {
        assert_eq!(u.len(), self.dim(), "direction dimension mismatch");
        match self {
            ConvexBody::Ball { center, radius } => {
                dot(u, center) + radius * dot(u, u).sqrt()
            }
            ConvexBody::UnitCube { .. } => u.iter().map(|&c| c.max(0.0)).sum(),
            ConvexBody::SymCube { .. } => u.iter().map(|&c| c.abs()).sum(),
        }
    }

    /// A point of `C` attaining `h_C(u)`.
    pub fn support_point(&self, u: &[f64]) -> Vec<f64> {
        assert_eq!(u.len(), self.dim(), "direction dimension mismatch");
        match self {
            ConvexBody::Ball { center, radius } => {
                let norm = dot(u, u).sqrt();
                if norm == 0.0 {
                    center.clone()
                } else {
                    center
                        .iter()
                        .zip(u)
                        .map(|(c, ui)| c + radius * ui / norm)
                        .collect()
                }
            }
            ConvexBody::UnitCube { .. } => {
                u.iter().map(|&c| if c > 0.0 { 1.0 } else { 0.0 }).collect()
            }
            ConvexBody::SymCube { .. } => {
                u.iter().map(|&c| if c >= 0.0 { 1.0 } else { -1.0 }).collect()
            }
        }
    }

    /// True when `p` lies in the body, up to slack `tol`.
    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        match self {
            ConvexBody::Ball { center, radius } => {
                let d: f64 = p
                    .iter()
                    .zip(center)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                d <= radius + tol
            }
            ConvexBody::UnitCube { .. } => {
                p.iter().all(|&c| c >= -tol && c <= 1.0 + tol)
            }
            ConvexBody::SymCube { .. } => p.iter().all(|&c| c.abs() <= 1.0 + tol),
        }
    }

    /// `max_{x in C} (-lambda_j(x)) = h_C(-a_j) - l_{n+1,j}` together with
    /// a maximizing point of `C`.
    pub fn max_neg_lambda(&self, s: &Simplex<f64>, j: usize) -> Result<(f64, Vec<f64>)> {
        if self.dim() != s.dim() {
            return Err(Error::DimensionMismatch {
                expected: s.dim(),
                got: self.dim(),
            });
        }
        let c = s.coeffs();
        let neg_a: Vec<f64> = c.normals[j].iter().map(|v| -v).collect();
        let value = self.support(&neg_a) - c.offsets[j];
        Ok((value, self.support_point(&neg_a)))
    }
}
