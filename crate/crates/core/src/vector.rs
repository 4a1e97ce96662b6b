//! Exact integer and rational vectors.
//!
//! Everything in this crate lives in a lattice `Z^d` or its rationalization
//! `Q^d`. Cone generators are stored as primitive integer vectors; rational
//! points only appear at the API boundary and are cleared to integers before
//! any membership test (cones are invariant under positive scaling).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An integer vector. Ordered lexicographically, which is the canonical
/// order used when sorting cone generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVec(Vec<BigInt>);

impl IntVec {
    pub fn new(coords: Vec<BigInt>) -> Self {
        IntVec(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        IntVec(vec![BigInt::zero(); dim])
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        IntVec(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The `i`-th standard basis vector of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVec) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> IntVec {
        IntVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, factor: &BigInt) -> IntVec {
        IntVec(self.0.iter().map(|a| a * factor).collect())
    }

    /// `a * self + b * other`.
    pub fn combine(a: &BigInt, x: &IntVec, b: &BigInt, y: &IntVec) -> IntVec {
        IntVec(x.0.iter().zip(&y.0).map(|(p, q)| a * p + b * q).collect())
    }

    /// Gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content. The direction (and sign) is preserved.
    pub fn primitive(&self) -> IntVec {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntVec(self.0.iter().map(|c| c / &g).collect())
    }

    /// Flips the vector so that its first nonzero coordinate is positive.
    pub fn sign_normalized(&self) -> IntVec {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn to_rat(&self) -> RatVec {
        RatVec(
            self.0
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect(),
        )
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl From<Vec<i64>> for IntVec {
    fn from(coords: Vec<i64>) -> Self {
        IntVec::from_i64s(&coords)
    }
}

impl<const N: usize> From<[i64; N]> for IntVec {
    fn from(coords: [i64; N]) -> Self {
        IntVec::from_i64s(&coords)
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// A rational vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatVec(Vec<BigRational>);

impl RatVec {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RatVec(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        IntVec::from_i64s(coords).to_rat()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Multiplies by the (positive) lcm of the denominators. The result is
    /// a positive multiple of `self`, so cone membership is unchanged.
    pub fn clear_denominators(&self) -> IntVec {
        let lcm = self.0.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        IntVec(
            self.0
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        )
    }
}

impl From<&IntVec> for RatVec {
    fn from(v: &IntVec) -> Self {
        v.to_rat()
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    f.write_str("(")?;
    for (i, c) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_keeps_sign() {
        let v = IntVec::from([-4, 6, 0]);
        assert_eq!(v.primitive(), IntVec::from([-2, 3, 0]));
        assert_eq!(v.sign_normalized().primitive(), IntVec::from([2, -3, 0]));
        assert_eq!(IntVec::zeros(3).primitive(), IntVec::zeros(3));
    }

    #[test]
    fn clearing_denominators_scales_positively() {
        let v = RatVec::new(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-2).into(), 3.into()),
        ]);
        assert_eq!(v.clear_denominators(), IntVec::from([3, -4]));
    }

    #[test]
    fn display() {
        assert_eq!(IntVec::from([1, -1]).to_string(), "(1, -1)");
    }
}
