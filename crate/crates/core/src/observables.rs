//! The observable algebra: complex-linear combinations of
//! `N^{αβ̄} = u′ z^α z̄^β` plus constants.
//!
//! Writing an element as `e = Σ c_{αβ̄} N^{αβ̄} + c₀`, the Poisson bracket
//! closes on the coefficient matrices: `{e, f} ↦ i (C D − D C)`, the
//! bilinear extension of `{N^{αβ̄}, N^{μν̄}} = i(δ_{βμ} N^{αν̄} − δ_{αν} N^{μβ̄})`.
//! Constants are central. `H = Σ_α N^{αᾱ}` has `C = I` and is central too.

use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Zero;

use crate::geometry::{radial_profile, OscillatorParams, PhasePoint};
use crate::polynomial::HoloPolynomial;
use crate::rational::{imag_unit, int, is_real, to_c64, CRational};
use crate::symplectic::{hamiltonian_field, ScalarField, TangentVector};
use crate::wirtinger::wirtinger_vec;
use crate::{Error, Result};

/// `Σ c_{αβ̄} N^{αβ̄} + constant`, coefficients row-major (`α` is the row).
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    m: usize,
    coeff: Vec<CRational>,
    constant: CRational,
}

fn check_index(index: usize, m: usize) -> Result<()> {
    if index < m {
        Ok(())
    } else {
        Err(Error::Index { index, m })
    }
}

impl AlgebraElement {
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            coeff: alloc::vec![CRational::zero(); m * m],
            constant: CRational::zero(),
        }
    }

    /// `N^{αβ̄}` (zero-based indices).
    pub fn basis(m: usize, alpha: usize, beta: usize) -> Result<Self> {
        check_index(alpha, m)?;
        check_index(beta, m)?;
        let mut e = Self::zero(m);
        e.coeff[alpha * m + beta] = int(1);
        Ok(e)
    }

    /// `H = Σ_α N^{αᾱ}`.
    pub fn hamiltonian(m: usize) -> Self {
        let mut e = Self::zero(m);
        for k in 0..m {
            e.coeff[k * m + k] = int(1);
        }
        e
    }

    pub fn constant(m: usize, c: CRational) -> Self {
        let mut e = Self::zero(m);
        e.constant = c;
        e
    }

    /// Builds an element from a row-major coefficient matrix.
    pub fn from_parts(m: usize, coeff: Vec<CRational>, constant: CRational) -> Result<Self> {
        if coeff.len() != m * m {
            return Err(Error::DimensionMismatch {
                expected: m * m,
                found: coeff.len(),
            });
        }
        Ok(Self { m, coeff, constant })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    /// `c_{αβ̄}`.
    pub fn coeff(&self, alpha: usize, beta: usize) -> &CRational {
        &self.coeff[alpha * self.m + beta]
    }

    pub fn coefficients(&self) -> &[CRational] {
        &self.coeff
    }

    pub fn constant_term(&self) -> &CRational {
        &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeff.iter().all(Zero::is_zero)
    }

    /// Real-valued function: Hermitian coefficient matrix, real constant.
    pub fn is_real(&self) -> bool {
        let m = self.m;
        is_real(&self.constant)
            && (0..m).all(|a| (0..m).all(|b| self.coeff[a * m + b] == self.coeff[b * m + a].conj()))
    }

    /// `Σ_α c_{αᾱ}`.
    pub fn trace(&self) -> CRational {
        (0..self.m)
            .map(|k| self.coeff[k * self.m + k].clone())
            .fold(CRational::zero(), |acc, v| acc + v)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: other.m,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            m: self.m,
            coeff: self
                .coeff
                .iter()
                .zip(&other.coeff)
                .map(|(a, b)| a + b)
                .collect(),
            constant: &self.constant + &other.constant,
        })
    }

    pub fn scale(&self, c: &CRational) -> Self {
        Self {
            m: self.m,
            coeff: self.coeff.iter().map(|a| a * c).collect(),
            constant: &self.constant * c,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&int(-1)))
    }

    /// The element as a function on phase space.
    pub fn as_field<'a>(&'a self, params: &'a OscillatorParams) -> Observable<'a> {
        Observable {
            element: self,
            params,
        }
    }
}

/// `Σ c_{αβ̄} u′ z^α z̄^β + constant` at `p`.
pub fn evaluate(
    e: &AlgebraElement,
    params: &OscillatorParams,
    p: &PhasePoint,
) -> Result<Complex64> {
    if e.m != params.m() {
        return Err(Error::DimensionMismatch {
            expected: params.m(),
            found: e.m,
        });
    }
    params.check(p)?;
    let u_prime = radial_profile(params, p.r())?.u_prime;
    let z = p.z();
    let mut acc = Complex64::new(0.0, 0.0);
    for alpha in 0..e.m {
        for beta in 0..e.m {
            let c = e.coeff(alpha, beta);
            if !c.is_zero() {
                acc += to_c64(c) * z[alpha] * z[beta].conj();
            }
        }
    }
    Ok(acc * u_prime + to_c64(&e.constant))
}

/// An [`AlgebraElement`] bound to parameters, usable as a [`ScalarField`].
#[derive(Debug, Clone, Copy)]
pub struct Observable<'a> {
    pub element: &'a AlgebraElement,
    pub params: &'a OscillatorParams,
}

impl ScalarField for Observable<'_> {
    fn eval(&self, p: &PhasePoint) -> Result<Complex64> {
        evaluate(self.element, self.params, p)
    }
}

/// Exact Poisson bracket of two elements: coefficient matrix `i[C, D]`,
/// constant zero.
pub fn structure_bracket(e1: &AlgebraElement, e2: &AlgebraElement) -> Result<AlgebraElement> {
    e1.check_same(e2)?;
    let m = e1.m;
    let i = imag_unit();
    let mut coeff = alloc::vec![CRational::zero(); m * m];
    for row in 0..m {
        for col in 0..m {
            let mut acc = CRational::zero();
            for k in 0..m {
                let cd = e1.coeff(row, k) * e2.coeff(k, col);
                let dc = e2.coeff(row, k) * e1.coeff(k, col);
                acc = acc + cd - dc;
            }
            coeff[row * m + col] = &i * acc;
        }
    }
    Ok(AlgebraElement {
        m,
        coeff,
        constant: CRational::zero(),
    })
}

/// `V^{αβ̄} = i(z^α ∂_β − z̄^β ∂_ᾱ)` at `p`, the Hamiltonian field of `N^{αβ̄}`.
pub fn closed_form_field(alpha: usize, beta: usize, p: &PhasePoint) -> Result<TangentVector> {
    let m = p.dim();
    check_index(alpha, m)?;
    check_index(beta, m)?;
    let i = Complex64::new(0.0, 1.0);
    let mut v = TangentVector::zero(m);
    v.holo[beta] += i * p.z()[alpha];
    v.anti[alpha] -= i * p.z()[beta].conj();
    Ok(v)
}

/// Outcome of [`preserves_polarization`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationReport {
    pub pass: bool,
    pub max_residual: f64,
}

/// Tests whether `X_f` preserves `F = span{∂_ᾱ}`, i.e. whether the
/// holomorphic components of `X_f` satisfy `∂_β̄ (X_f)^α = 0`. The residual
/// is the largest `|∂_β̄ (X_f)^α|` over all samples and index pairs.
pub fn preserves_polarization<F: ScalarField + ?Sized>(
    f: &F,
    params: &OscillatorParams,
    samples: &[PhasePoint],
    tol: f64,
) -> Result<PolarizationReport> {
    let mut worst: f64 = 0.0;
    for p in samples {
        worst = worst.max(polarization_residual(f, params, p)?);
    }
    Ok(PolarizationReport {
        pass: worst <= tol,
        max_residual: worst,
    })
}

/// `max_{α,β} |∂_β̄ (X_f)^α|` at one point.
pub fn polarization_residual<F: ScalarField + ?Sized>(
    f: &F,
    params: &OscillatorParams,
    p: &PhasePoint,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for beta in 0..params.m() {
        let pair = wirtinger_vec(
            |q| hamiltonian_field(f, params, q).map(|x| x.holo),
            params,
            p,
            beta,
        )?;
        for d in pair.anti {
            let r = crate::math::cabs(d);
            // NaN must not pass silently.
            worst = if r.is_nan() {
                f64::INFINITY
            } else {
                worst.max(r)
            };
        }
    }
    Ok(worst)
}

/// `f = u′ Σ_σ z̄^σ φ_σ(z) + χ(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableDecomposition {
    pub phi: Vec<HoloPolynomial>,
    pub chi: HoloPolynomial,
}

impl ObservableDecomposition {
    /// Evaluates the decomposition at `p`.
    pub fn reconstruct(&self, params: &OscillatorParams, p: &PhasePoint) -> Result<Complex64> {
        params.check(p)?;
        if self.phi.len() != params.m() {
            return Err(Error::DimensionMismatch {
                expected: params.m(),
                found: self.phi.len(),
            });
        }
        let u_prime = radial_profile(params, p.r())?.u_prime;
        let z = p.z();
        let sum: Complex64 = self
            .phi
            .iter()
            .zip(z)
            .map(|(phi, zs)| zs.conj() * phi.eval_at(z))
            .sum();
        Ok(sum * u_prime + self.chi.eval_at(z))
    }
}

/// `N^{αβ̄}`: `φ_σ = z^α δ_{βσ}`, `χ = 0`.
pub fn basis_decomposition(m: usize, alpha: usize, beta: usize) -> Result<ObservableDecomposition> {
    decompose(&AlgebraElement::basis(m, alpha, beta)?)
}

/// Decomposition of a general element: `φ_σ = Σ_α c_{ασ̄} z^α`, `χ = c₀`.
pub fn decompose(e: &AlgebraElement) -> Result<ObservableDecomposition> {
    let m = e.m;
    let mut phi = Vec::with_capacity(m);
    for sigma in 0..m {
        let mut poly = HoloPolynomial::zero(m);
        for alpha in 0..m {
            let c = e.coeff(alpha, sigma);
            if !c.is_zero() {
                poly.add_term(crate::polynomial::MultiIndex::unit(m, alpha), c.clone());
            }
        }
        phi.push(poly);
    }
    Ok(ObservableDecomposition {
        phi,
        chi: HoloPolynomial::constant(m, e.constant.clone()),
    })
}
