//! Multi-indices and holomorphic polynomials with exact coefficients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use num_complex::Complex64;
use num_traits::Zero;

use crate::geometry::PhasePoint;
use crate::rational::{to_c64, CRational};
use crate::symplectic::ScalarField;
use crate::{Error, Result};

/// Exponent vector `k` of the monomial `z^k = Π (z^α)^{k_α}`.
///
/// Ordered by graded reverse lexicographic order: higher total degree is
/// greater; at equal degree, `a > b` iff the last nonzero entry of `a − b`
/// is negative. So `z₁² > z₁z₂ > z₂²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn zero(m: usize) -> Self {
        Self(alloc::vec![0; m])
    }

    /// The unit exponent `e_index`.
    pub fn unit(m: usize, index: usize) -> Self {
        let mut k = Self::zero(m);
        k.0[index] = 1;
        k
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, index: usize) -> u32 {
        self.0[index]
    }

    /// `k − e_from + e_to`, or `None` when `k_from = 0` and `from ≠ to`.
    pub fn transfer(&self, from: usize, to: usize) -> Option<Self> {
        if from == to {
            return Some(self.clone());
        }
        if self.0[from] == 0 {
            return None;
        }
        let mut k = self.0.clone();
        k[from] -= 1;
        k[to] += 1;
        Some(Self(k))
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (zi, &k) in z.iter().zip(&self.0) {
            for _ in 0..k {
                acc *= zi;
            }
        }
        acc
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                // Smaller exponent in the last differing slot is greater.
                ord => return ord.reverse(),
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All multi-indices of length `m` and total degree `degree`, in
/// descending graded reverse lexicographic order.
pub fn multi_indices(m: usize, degree: u32) -> Vec<MultiIndex> {
    fn fill(prefix: &mut Vec<u32>, remaining: u32, slots: usize, out: &mut Vec<MultiIndex>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for k in (0..=remaining).rev() {
            prefix.push(k);
            fill(prefix, remaining - k, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    fill(&mut Vec::with_capacity(m), degree, m, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// A polynomial in `z^1, …, z^m` with complex-rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct HoloPolynomial {
    m: usize,
    terms: BTreeMap<MultiIndex, CRational>,
}

impl HoloPolynomial {
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: usize, c: CRational) -> Self {
        let mut p = Self::zero(m);
        p.add_term(MultiIndex::zero(m), c);
        p
    }

    /// `c · z^index`.
    pub fn linear(m: usize, index: usize, c: CRational) -> Result<Self> {
        if index >= m {
            return Err(Error::Index { index, m });
        }
        let mut p = Self::zero(m);
        p.add_term(MultiIndex::unit(m, index), c);
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    /// Adds `c · z^k`; zero coefficients are never stored.
    pub fn add_term(&mut self, k: MultiIndex, c: CRational) {
        assert_eq!(k.dim(), self.m, "multi-index length must equal m");
        let slot = self.terms.entry(k.clone()).or_insert_with(CRational::zero);
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn coefficient(&self, k: &MultiIndex) -> CRational {
        self.terms.get(k).cloned().unwrap_or_else(CRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &CRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval_at(&self, z: &[Complex64]) -> Complex64 {
        self.terms.iter().map(|(k, c)| to_c64(c) * k.eval(z)).sum()
    }
}

impl ScalarField for HoloPolynomial {
    fn eval(&self, p: &PhasePoint) -> Result<Complex64> {
        if p.dim() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: p.dim(),
            });
        }
        Ok(self.eval_at(p.z()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn grevlex_examples() {
        assert_eq!(
            multi_indices(2, 2),
            alloc::vec![mi(&[2, 0]), mi(&[1, 1]), mi(&[0, 2])]
        );
        assert_eq!(
            multi_indices(3, 2),
            alloc::vec![
                mi(&[2, 0, 0]),
                mi(&[1, 1, 0]),
                mi(&[0, 2, 0]),
                mi(&[1, 0, 1]),
                mi(&[0, 1, 1]),
                mi(&[0, 0, 2]),
            ]
        );
        assert_eq!(multi_indices(3, 0), alloc::vec![mi(&[0, 0, 0])]);
        assert!(mi(&[0, 0, 2]) < mi(&[2, 0, 0]));
        assert!(mi(&[0, 0, 3]) > mi(&[2, 0, 0]));
        assert!(mi(&[1, 0, 0, 0]) > mi(&[0, 0, 0, 0]));
    }

    #[test]
    fn transfer_rules() {
        assert_eq!(mi(&[1, 0]).transfer(0, 1), Some(mi(&[0, 1])));
        assert_eq!(mi(&[0, 2]).transfer(0, 1), None);
        assert_eq!(mi(&[0, 2]).transfer(1, 1), Some(mi(&[0, 2])));
    }

    #[test]
    fn polynomial_evaluation_and_cancellation() {
        let mut p = HoloPolynomial::zero(2);
        p.add_term(mi(&[1, 1]), int(3));
        p.add_term(mi(&[0, 0]), int(-1));
        let z = [Complex64::new(1.0, 1.0), Complex64::new(2.0, 0.0)];
        assert_eq!(p.eval_at(&z), Complex64::new(5.0, 6.0));
        p.add_term(mi(&[1, 1]), int(-3));
        assert_eq!(p.terms().count(), 1);
        assert!(HoloPolynomial::linear(2, 2, int(1)).is_err());
    }
}
