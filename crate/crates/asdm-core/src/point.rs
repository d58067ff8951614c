//! Dense vectors for iterates, gradients, and search directions.

use serde::{Deserialize, Serialize};

/// A point (or direction) in R^n. Thin wrapper over `Vec<f64>` so that
/// dimension mismatches surface as panics at the call site instead of
/// silently zipping short.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Point(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.0.clone()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn dot(&self, other: &Point) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in dot");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// `||self||^v`. Uses the dot product directly for v = 2 so that values
    /// exactly representable in binary stay exact (no sqrt round trip).
    pub fn norm_pow(&self, v: f64) -> f64 {
        if v == 2.0 {
            self.dot(self)
        } else {
            self.norm().powf(v)
        }
    }

    /// `self + t * other`.
    pub fn add_scaled(&self, t: f64, other: &Point) -> Point {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in add_scaled");
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + t * b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Point) -> Point {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in sub");
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, t: f64) -> Point {
        Point(self.0.iter().map(|a| a * t).collect())
    }

    /// Componentwise division by a scalar. One rounding per component, so
    /// for `p = -g` the result is bitwise `-g_i / d`.
    pub fn div_scalar(&self, d: f64) -> Point {
        Point(self.0.iter().map(|a| a / d).collect())
    }

    pub fn neg(&self) -> Point {
        Point(self.0.iter().map(|a| -a).collect())
    }

    /// `alpha * x + (1 - alpha) * y`. The two products are summed in a fixed
    /// order, so the swapped call `(y, x, 1 - alpha)` agrees bitwise whenever
    /// `1 - alpha` round-trips exactly.
    pub fn convex_combination(alpha: f64, x: &Point, y: &Point) -> Point {
        assert_eq!(x.dim(), y.dim(), "dimension mismatch in convex_combination");
        Point(
            x.0.iter()
                .zip(&y.0)
                .map(|(a, b)| alpha * a + (1.0 - alpha) * b)
                .collect(),
        )
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point(v)
    }
}

impl std::ops::Index<usize> for Point {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}
