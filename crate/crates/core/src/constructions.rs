//! Builders for the special simplices: the standard simplex, regular
//! simplices inscribed in the unit ball, Hadamard matrices (Sylvester and
//! Paley I) with the cube-vertex regular simplices they induce, and seeded
//! random simplex generators for property sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::metrics;
use crate::scalar::Scalar;
use crate::simplex::Simplex;

/// Vertices: origin and the unit coordinate points.
pub fn standard_simplex<T: Scalar>(n: usize) -> Simplex<T> {
    assert!(n >= 1);
    let mut vertices = vec![vec![T::zero(); n]];
    for i in 0..n {
        let mut v = vec![T::zero(); n];
        v[i] = T::one();
        vertices.push(v);
    }
    Simplex::new(vertices).expect("standard simplex is nondegenerate")
}

/// Regular simplex with unit-norm vertices, pairwise inner products -1/n
/// and centroid at the origin. Deterministic construction from the
/// Helmert orthonormal basis of the hyperplane sum(x) = 0 in R^{n+1}.
pub fn regular_inscribed_simplex(n: usize) -> Result<Simplex<f64>> {
    assert!(n >= 1);
    let scale = ((n as f64 + 1.0) / n as f64).sqrt();
    let vertices = (0..=n)
        .map(|j| {
            (1..=n)
                .map(|k| {
                    let denom = (k as f64 * (k as f64 + 1.0)).sqrt();
                    if j < k {
                        scale / denom
                    } else if j == k {
                        -scale * k as f64 / denom
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect();
    Simplex::new(vertices)
}

/// A verified Hadamard matrix: +-1 entries with `H H^T = m I`.
#[derive(Debug, Clone)]
pub struct HadamardMatrix {
    order: usize,
    entries: Vec<i64>,
}

impl HadamardMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.order + j]
    }

    /// Exact integer check of `H H^T = m I`.
    fn verify(&self) -> bool {
        let m = self.order;
        for i in 0..m {
            for j in 0..m {
                let dot: i64 = (0..m).map(|k| self.get(i, k) * self.get(j, k)).sum();
                let expected = if i == j { m as i64 } else { 0 };
                if dot != expected {
                    return false;
                }
            }
        }
        true
    }
}

/// Hadamard matrix of order `m` via Sylvester (m a power of two) or
/// Paley I (m = q+1, q prime, q = 3 mod 4). The result is always
/// verified exactly before being returned.
pub fn hadamard(m: usize) -> Result<HadamardMatrix> {
    let h = if m >= 1 && m.is_power_of_two() {
        sylvester(m)
    } else if m >= 4 && is_prime(m - 1) && (m - 1) % 4 == 3 {
        paley_one(m - 1)
    } else {
        return Err(Error::UnsupportedOrder(m));
    };
    debug_assert!(h.verify(), "construction produced a non-Hadamard matrix");
    if !h.verify() {
        return Err(Error::UnsupportedOrder(m));
    }
    Ok(h)
}

fn sylvester(m: usize) -> HadamardMatrix {
    let mut entries = vec![1i64];
    let mut order = 1;
    while order < m {
        let next = order * 2;
        let mut grown = vec![0i64; next * next];
        for i in 0..next {
            for j in 0..next {
                let base = entries[(i % order) * order + (j % order)];
                let sign = if i >= order && j >= order { -1 } else { 1 };
                grown[i * next + j] = sign * base;
            }
        }
        entries = grown;
        order = next;
    }
    HadamardMatrix { order, entries }
}

/// Paley construction I for q prime, q = 3 mod 4: H = I + C with C the
/// bordered Jacobsthal matrix (skew because chi(-1) = -1).
fn paley_one(q: usize) -> HadamardMatrix {
    let m = q + 1;
    let chi = |x: i64| -> i64 {
        let r = x.rem_euclid(q as i64) as u64;
        if r == 0 {
            0
        } else if pow_mod(r, (q as u64 - 1) / 2, q as u64) == 1 {
            1
        } else {
            -1
        }
    };
    let mut entries = vec![0i64; m * m];
    // row/column 0 is the "infinity" index
    entries[0] = 1;
    for b in 0..q {
        entries[b + 1] = 1; // C_{inf,b} = 1
        entries[(b + 1) * m] = -1; // C_{b,inf} = -1
    }
    for a in 0..q {
        for b in 0..q {
            let c = if a == b { 0 } else { chi(a as i64 - b as i64) };
            let diag = if a == b { 1 } else { 0 };
            entries[(a + 1) * m + (b + 1)] = c + diag;
        }
    }
    HadamardMatrix { order: m, entries }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

fn is_prime(v: usize) -> bool {
    if v < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= v {
        if v.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Regular simplex with vertices in `{0,1}^n`, from a Hadamard matrix of
/// order n+1: rows are negated until the last column is all ones, the
/// last column is dropped, and -1 maps to 0.
pub fn hadamard_simplex<T: Scalar>(n: usize) -> Result<Simplex<T>> {
    let h = hadamard(n + 1)?;
    let m = n + 1;
    let vertices = (0..m)
        .map(|i| {
            let flip = h.get(i, m - 1) < 0;
            (0..n)
                .map(|j| {
                    let e = if flip { -h.get(i, j) } else { h.get(i, j) };
                    if e > 0 {
                        T::one()
                    } else {
                        T::zero()
                    }
                })
                .collect()
        })
        .collect();
    Simplex::new(vertices)
}

/// Vertex distribution for [`random_simplex`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomScheme {
    /// Vertices sampled from the corners of `[0,1]^n`.
    UnitCubeVertices,
    /// Standard normal coordinates.
    Gaussian,
    /// Gaussian, then normalized by the circumball so that the simplex
    /// sits in the unit ball with circumradius exactly 1.
    InBall,
}

const MAX_RETRIES: usize = 100;

/// Deterministic seeded random simplex; resamples on degeneracy.
pub fn random_simplex(n: usize, seed: u64, scheme: RandomScheme) -> Result<Simplex<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let vertices: Vec<Vec<f64>> = (0..=n)
            .map(|_| {
                (0..n)
                    .map(|_| match scheme {
                        RandomScheme::UnitCubeVertices => {
                            if rng.gen::<bool>() {
                                1.0
                            } else {
                                0.0
                            }
                        }
                        _ => rng.sample(rand_distr::StandardNormal),
                    })
                    .collect()
            })
            .collect();
        let simplex = match Simplex::new(vertices) {
            Ok(s) => s,
            Err(_) => continue,
        };
        match scheme {
            RandomScheme::InBall => {
                let (radius, center) = metrics::circumball(&simplex)?;
                let normalized = simplex
                    .vertices()
                    .iter()
                    .map(|v| (0..n).map(|i| (v[i] - center[i]) / radius).collect())
                    .collect();
                if let Ok(s) = Simplex::new(normalized) {
                    return Ok(s);
                }
            }
            _ => return Ok(simplex),
        }
    }
    Err(Error::GenerationFailed(MAX_RETRIES))
}
