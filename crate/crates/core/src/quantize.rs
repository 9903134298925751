//! Exact operator representation of the quantization map on homogeneous
//! holomorphic polynomials.
//!
//! Quantum states are holomorphic polynomials `ψ(z)` (the line bundle is
//! trivialised). The map sends
//!
//! ```text
//! Q(N^{αβ̄}) ψ = ħ (z^α ∂ψ/∂z^β + ½ δ_{αβ} ψ),    Q(c) ψ = c ψ,
//! ```
//!
//! so each `Q(N^{αβ̄})` preserves degree and is represented on the degree-`l`
//! monomial basis by an exact sparse matrix. Operators are polynomials in the
//! symbol `ħ`: one sparse matrix per power.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::geometry::OscillatorParams;
use crate::observables::{structure_bracket, AlgebraElement};
use crate::polynomial::{multi_indices, MultiIndex};
use crate::rational::{from_rational, imag_unit, int, real, CRational};
use crate::{Error, Result};

/// Basis of homogeneous degree-`l` monomials in `m` variables, in descending
/// graded reverse lexicographic order (`z₁^l` first, `z_m^l` last).
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialBasis {
    m: usize,
    degree: u32,
    indices: Vec<MultiIndex>,
    position: BTreeMap<MultiIndex, usize>,
}

pub fn monomial_basis(m: usize, l: u32) -> Result<MonomialBasis> {
    if m == 0 {
        return Err(Error::InvalidParams("m must be at least 1"));
    }
    let indices = multi_indices(m, l);
    let position = indices
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    Ok(MonomialBasis {
        m,
        degree: l,
        indices,
        position,
    })
}

impl MonomialBasis {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn position(&self, k: &MultiIndex) -> Option<usize> {
        self.position.get(k).copied()
    }
}

/// `C(n, k)` with `u128` intermediates.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc as u64
}

type SparseMatrix = BTreeMap<(usize, usize), CRational>;

fn add_entry(mat: &mut SparseMatrix, key: (usize, usize), value: CRational) {
    if value.is_zero() {
        return;
    }
    let slot = mat.entry(key).or_insert_with(CRational::zero);
    *slot = &*slot + value;
    if slot.is_zero() {
        mat.remove(&key);
    }
}

/// `Σ_p ħ^p · A_p` acting on the degree-`l` basis. Entry `(row, col)` of
/// `A_p` is the coefficient of basis monomial `row` in the image of basis
/// monomial `col`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumOperator {
    m: usize,
    degree: u32,
    dim: usize,
    terms: BTreeMap<u32, SparseMatrix>,
}

impl QuantumOperator {
    pub fn zero(m: usize, degree: u32, dim: usize) -> Self {
        Self {
            m,
            degree,
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// `c · ħ^power · I`.
    pub fn scalar(m: usize, degree: u32, dim: usize, c: CRational, power: u32) -> Self {
        let mut op = Self::zero(m, degree, dim);
        for k in 0..dim {
            op.add(power, (k, k), c.clone());
        }
        op
    }

    fn add(&mut self, power: u32, key: (usize, usize), value: CRational) {
        let mat = self.terms.entry(power).or_default();
        add_entry(mat, key, value);
        if mat.is_empty() {
            self.terms.remove(&power);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single power of `ħ` carried by the operator, if it has exactly one.
    pub fn hbar_power(&self) -> Option<u32> {
        let mut powers = self.terms.keys();
        match (powers.next(), powers.next()) {
            (Some(&p), None) => Some(p),
            _ => None,
        }
    }

    /// Coefficient matrix of `ħ^power`.
    pub fn coefficient_matrix(&self, power: u32) -> Option<&BTreeMap<(usize, usize), CRational>> {
        self.terms.get(&power)
    }

    /// Entry `(row, col)` of the `ħ^power` coefficient.
    pub fn entry(&self, power: u32, row: usize, col: usize) -> CRational {
        self.terms
            .get(&power)
            .and_then(|m| m.get(&(row, col)))
            .cloned()
            .unwrap_or_else(CRational::zero)
    }

    /// Iterator over `(power, row, col, value)` for every stored entry.
    pub fn entries(&self) -> impl Iterator<Item = (u32, usize, usize, &CRational)> {
        self.terms
            .iter()
            .flat_map(|(&p, mat)| mat.iter().map(move |(&(r, c), v)| (p, r, c, v)))
    }

    /// Number of nonzero entries summed over all powers.
    pub fn nnz(&self) -> usize {
        self.terms.values().map(BTreeMap::len).sum()
    }

    /// The operator with `ħ` replaced by a concrete value.
    pub fn at_hbar(&self, hbar: &BigRational) -> BTreeMap<(usize, usize), CRational> {
        let mut out = SparseMatrix::new();
        for (&power, mat) in &self.terms {
            let mut factor = BigRational::one();
            for _ in 0..power {
                factor *= hbar;
            }
            let factor = from_rational(factor);
            for (&key, v) in mat {
                add_entry(&mut out, key, v * &factor);
            }
        }
        out
    }

    /// Trace of each `ħ` coefficient.
    pub fn trace(&self) -> BTreeMap<u32, CRational> {
        let mut out = BTreeMap::new();
        for (&power, mat) in &self.terms {
            let t = mat
                .iter()
                .filter(|((r, c), _)| r == c)
                .fold(CRational::zero(), |acc, (_, v)| acc + v);
            if !t.is_zero() {
                out.insert(power, t);
            }
        }
        out
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.m != other.m || self.dim != other.dim || self.degree != other.degree {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (p, r, c, v) in other.entries() {
            out.add(p, (r, c), v.clone());
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &CRational) -> Self {
        let mut out = Self::zero(self.m, self.degree, self.dim);
        for (p, r, col, v) in self.entries() {
            out.add(p, (r, col), v * c);
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scaled(&int(-1)))
    }

    /// Multiplies by `ħ^power`.
    pub fn times_hbar(&self, power: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&p, m)| (p + power, m.clone()))
                .collect(),
            ..self.clone()
        }
    }

    /// Operator product `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        // Column-indexed view of `self` keyed by its column.
        let mut out = Self::zero(self.m, self.degree, self.dim);
        for (&pa, a) in &self.terms {
            let mut by_col: BTreeMap<usize, Vec<(usize, &CRational)>> = BTreeMap::new();
            for (&(r, c), v) in a {
                by_col.entry(c).or_default().push((r, v));
            }
            for (&pb, b) in &other.terms {
                for (&(k, j), vb) in b {
                    if let Some(col) = by_col.get(&k) {
                        for &(i, va) in col {
                            out.add(pa + pb, (i, j), va * vb);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[self, other] = self∘other − other∘self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.minus(&other.compose(self)?)
    }
}

/// The representation of `e` on the degree-`l` polynomials.
pub fn quantize(e: &AlgebraElement, l: u32) -> Result<QuantumOperator> {
    let basis = monomial_basis(e.dim(), l)?;
    quantize_on(e, &basis)
}

/// [`quantize`] on a prebuilt basis.
pub fn quantize_on(e: &AlgebraElement, basis: &MonomialBasis) -> Result<QuantumOperator> {
    let m = e.dim();
    if basis.m() != m {
        return Err(Error::DimensionMismatch {
            expected: basis.m(),
            found: m,
        });
    }
    let mut op = QuantumOperator::zero(m, basis.degree(), basis.dim());
    let half = real(1, 2);
    for alpha in 0..m {
        for beta in 0..m {
            let c = e.coeff(alpha, beta);
            if c.is_zero() {
                continue;
            }
            for (col, k) in basis.indices().iter().enumerate() {
                // z^α ∂_β z^k = k_β z^{k − e_β + e_α}
                if let Some(target) = k.transfer(beta, alpha) {
                    let mut weight = int(i64::from(k.get(beta)));
                    if alpha == beta {
                        weight += &half;
                    }
                    let row = basis.position(&target).expect("transfer preserves degree");
                    op.add(1, (row, col), c * weight);
                }
            }
        }
    }
    let constant = e.constant_term();
    if !constant.is_zero() {
        for k in 0..basis.dim() {
            op.add(0, (k, k), constant.clone());
        }
    }
    Ok(op)
}

/// `[Q(e1), Q(e2)] + iħ Q({e1, e2})`, exactly; zero when the quantization is
/// a Lie algebra homomorphism up to the factor `−iħ`.
pub fn dirac_residual(e1: &AlgebraElement, e2: &AlgebraElement, l: u32) -> Result<QuantumOperator> {
    if e1.dim() != e2.dim() {
        return Err(Error::DimensionMismatch {
            expected: e1.dim(),
            found: e2.dim(),
        });
    }
    let basis = monomial_basis(e1.dim(), l)?;
    let q1 = quantize_on(e1, &basis)?;
    let q2 = quantize_on(e2, &basis)?;
    let bracket = quantize_on(&structure_bracket(e1, e2)?, &basis)?;
    q1.commutator(&q2)?
        .plus(&bracket.scaled(&imag_unit()).times_hbar(1))
}

/// One eigenspace of `Q(H)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub degree: u32,
    /// Eigenvalue in units of `ħ`.
    pub eigenvalue_hbar_units: BigRational,
    /// Eigenvalue at the configured `ħ`.
    pub eigenvalue: BigRational,
    pub multiplicity: usize,
}

/// Assembles `Q(H)` on degree `l`, checks that it is a multiple of `ħ·I`
/// and reports the eigenvalue with its multiplicity.
pub fn spectrum_of_h(params: &OscillatorParams, l: u32) -> Result<Spectrum> {
    let m = params.m();
    let basis = monomial_basis(m, l)?;
    let op = quantize_on(&AlgebraElement::hamiltonian(m), &basis)?;
    let value = scalar_value(&op).ok_or(Error::InvalidParams(
        "Q(H) is not a multiple of the identity",
    ))?;
    if !value.im.is_zero() {
        return Err(Error::InvalidParams("Q(H) has a non-real eigenvalue"));
    }
    let units = value.re;
    Ok(Spectrum {
        degree: l,
        eigenvalue: &units * params.hbar(),
        eigenvalue_hbar_units: units,
        multiplicity: basis.dim(),
    })
}

/// `c` when the operator is exactly `c·ħ·I`.
fn scalar_value(op: &QuantumOperator) -> Option<CRational> {
    if op.hbar_power()? != 1 {
        return None;
    }
    let mat = op.coefficient_matrix(1)?;
    if mat.len() != op.dim() {
        return None;
    }
    let first = mat.get(&(0, 0))?.clone();
    let all_diag_equal = (0..op.dim()).all(|k| mat.get(&(k, k)) == Some(&first));
    all_diag_equal.then_some(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, real};

    fn n(m: usize, a: usize, b: usize) -> AlgebraElement {
        AlgebraElement::basis(m, a, b).unwrap()
    }

    #[test]
    fn basis_examples() {
        let b = monomial_basis(2, 2).unwrap();
        let exps: Vec<&[u32]> = b.indices().iter().map(MultiIndex::exponents).collect();
        assert_eq!(exps, alloc::vec![&[2, 0][..], &[1, 1], &[0, 2]]);
        assert_eq!(monomial_basis(3, 0).unwrap().dim(), 1);
        assert_eq!(monomial_basis(4, 3).unwrap().dim(), 20);
        assert!(monomial_basis(0, 1).is_err());
        assert_eq!(binomial(6, 3), 20);
    }

    #[test]
    fn n11_on_linear_polynomials() {
        let op = quantize(&n(2, 0, 0), 1).unwrap();
        assert_eq!(op.hbar_power(), Some(1));
        assert_eq!(op.entry(1, 0, 0), real(3, 2));
        assert_eq!(op.entry(1, 1, 1), real(1, 2));
        assert_eq!(op.nnz(), 2);
    }

    #[test]
    fn n12_maps_z2_to_z1() {
        let op = quantize(&n(2, 0, 1), 1).unwrap();
        assert_eq!(op.nnz(), 1);
        assert_eq!(op.entry(1, 0, 1), int(1));
    }

    #[test]
    fn constants_quantize_to_multiples_of_identity() {
        let c = real(-7, 3);
        let op = quantize(&AlgebraElement::constant(3, c.clone()), 2).unwrap();
        assert_eq!(op, QuantumOperator::scalar(3, 2, 6, c, 0));
    }

    #[test]
    fn dirac_examples() {
        let r = dirac_residual(&n(2, 0, 0), &n(2, 0, 1), 2).unwrap();
        assert!(r.is_zero());
        let q11 = quantize(&n(2, 0, 0), 2).unwrap();
        let q12 = quantize(&n(2, 0, 1), 2).unwrap();
        assert_eq!(q11.commutator(&q12).unwrap(), q12.times_hbar(1));
        let e = n(2, 1, 0)
            .add(&AlgebraElement::constant(2, int(2)))
            .unwrap();
        assert!(dirac_residual(&e, &e, 3).unwrap().is_zero());
        assert!(dirac_residual(&n(2, 0, 0), &n(3, 0, 0), 1).is_err());
    }

    #[test]
    fn spectrum_examples() {
        let pr = OscillatorParams::new(2, 0.0).unwrap();
        let s = spectrum_of_h(&pr, 0).unwrap();
        assert_eq!(
            (s.eigenvalue_hbar_units.to_string(), s.multiplicity),
            ("1".into(), 1)
        );
        let s = spectrum_of_h(&pr, 2).unwrap();
        assert_eq!(
            (s.eigenvalue_hbar_units.to_string(), s.multiplicity),
            ("3".into(), 3)
        );
        let pr = OscillatorParams::with_hbar(4, 1.0, crate::rational::ratio(1, 3)).unwrap();
        let s = spectrum_of_h(&pr, 3).unwrap();
        assert_eq!(
            (s.eigenvalue_hbar_units.to_string(), s.multiplicity),
            ("5".into(), 20)
        );
        assert_eq!(s.eigenvalue.to_string(), "5/3");
        let pr = OscillatorParams::new(3, 0.0).unwrap();
        assert_eq!(
            spectrum_of_h(&pr, 1)
                .unwrap()
                .eigenvalue_hbar_units
                .to_string(),
            "5/2"
        );
    }

    #[test]
    fn at_hbar_substitutes() {
        let e = n(2, 0, 0)
            .add(&AlgebraElement::constant(2, int(1)))
            .unwrap();
        let op = quantize(&e, 1).unwrap();
        let m = op.at_hbar(&crate::rational::ratio(2, 1));
        assert_eq!(m.get(&(0, 0)), Some(&int(4)));
        assert_eq!(m.get(&(1, 1)), Some(&int(2)));
        assert_eq!(op.hbar_power(), None);
    }
}
