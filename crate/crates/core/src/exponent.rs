//! Integer exponent vectors: lattice points of `Z^d`.
//!
//! These carry elements of affine monoids, rays of rational cones and
//! multidegrees. The derived `Ord` is lexicographic, which is the canonical
//! total order used for every deterministic output in the crate.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn new(coords: Vec<i64>) -> Self {
        ExponentVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        ExponentVector(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_sub(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        ExponentVector(self.0.iter().map(|&x| -x).collect())
    }

    pub fn scale(&self, c: i64) -> Self {
        ExponentVector(
            self.0
                .iter()
                .map(|&x| x.checked_mul(c).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn dot(&self, other: &Self) -> i64 {
        assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_mul(*b).expect("exponent overflow"))
            .fold(0i64, |acc, x| acc.checked_add(x).expect("exponent overflow"))
    }

    /// Divide by the gcd of the coordinates. Zero stays zero.
    pub fn primitive(&self) -> Self {
        let g = self.0.iter().fold(0i64, |acc, &x| gcd(acc, x.abs()));
        if g <= 1 {
            return self.clone();
        }
        ExponentVector(self.0.iter().map(|&x| x / g).collect())
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        let a = ExponentVector::new(vec![0, 5]);
        let b = ExponentVector::new(vec![1, -3]);
        assert!(a < b);
    }

    #[test]
    fn primitive_reduction() {
        let v = ExponentVector::new(vec![4, -6, 2]);
        assert_eq!(v.primitive().0, vec![2, -3, 1]);
        assert_eq!(ExponentVector::zero(3).primitive().0, vec![0, 0, 0]);
    }
}
