//! Kähler form, Hamiltonian vector fields and brackets, evaluated pointwise.
//!
//! Conventions:
//!
//! ```text
//! Ω = i g_{αβ̄} dz^α ∧ dz̄^β
//! ι_{X_f} Ω = −df
//! {f, g} = X_f(g)
//! ```
//!
//! which give `X_f = i g^{β̄α}(∂_β̄ f ∂_α − ∂_α f ∂_β̄)` and
//! `{f, g} = i g^{β̄α}(∂_β̄ f ∂_α g − ∂_α f ∂_β̄ g)`. With these,
//! `{N^{αβ̄}, N^{μν̄}} = i(δ_{βμ} N^{αν̄} − δ_{αν} N^{μβ̄})` and
//! `[X_f, X_g] = X_{{f,g}}`.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::geometry::{metric_at, MetricData, OscillatorParams, PhasePoint};
use crate::math::cabs;
use crate::wirtinger::{gradient, wirtinger_vec, WirtingerPair};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A complex-valued function on phase space.
pub trait ScalarField {
    fn eval(&self, p: &PhasePoint) -> Result<Complex64>;
}

impl<F> ScalarField for F
where
    F: Fn(&PhasePoint) -> Result<Complex64>,
{
    fn eval(&self, p: &PhasePoint) -> Result<Complex64> {
        self(p)
    }
}

/// The coordinate function `z^index`.
#[derive(Debug, Clone, Copy)]
pub struct Coordinate(pub usize);

impl ScalarField for Coordinate {
    fn eval(&self, p: &PhasePoint) -> Result<Complex64> {
        p.z().get(self.0).copied().ok_or(Error::Index {
            index: self.0,
            m: p.dim(),
        })
    }
}

/// The radial invariant `r = Σ |z^α|²`.
#[derive(Debug, Clone, Copy)]
pub struct Radial;

impl ScalarField for Radial {
    fn eval(&self, p: &PhasePoint) -> Result<Complex64> {
        Ok(Complex64::new(p.r(), 0.0))
    }
}

/// A complexified tangent vector `X = holo[α] ∂_α + anti[α] ∂_ᾱ`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    pub holo: Vec<Complex64>,
    pub anti: Vec<Complex64>,
}

impl TangentVector {
    pub fn zero(m: usize) -> Self {
        Self {
            holo: alloc::vec![ZERO; m],
            anti: alloc::vec![ZERO; m],
        }
    }

    /// `∂_index`.
    pub fn holo_unit(m: usize, index: usize) -> Self {
        let mut v = Self::zero(m);
        v.holo[index] = Complex64::new(1.0, 0.0);
        v
    }

    /// `∂_{index̄}`.
    pub fn anti_unit(m: usize, index: usize) -> Self {
        let mut v = Self::zero(m);
        v.anti[index] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.holo.len()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            holo: self.holo.iter().map(|v| v * c).collect(),
            anti: self.anti.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            holo: self
                .holo
                .iter()
                .zip(&other.holo)
                .map(|(a, b)| a + b)
                .collect(),
            anti: self
                .anti
                .iter()
                .zip(&other.anti)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Largest component modulus.
    pub fn max_abs(&self) -> f64 {
        self.holo
            .iter()
            .chain(&self.anti)
            .map(|v| cabs(*v))
            .fold(0.0, f64::max)
    }

    /// `max_α |anti[α] − conj(holo[α])|`; zero for real vector fields.
    pub fn reality_defect(&self) -> f64 {
        self.holo
            .iter()
            .zip(&self.anti)
            .map(|(h, a)| cabs(*a - h.conj()))
            .fold(0.0, f64::max)
    }

    fn flatten(&self) -> Vec<Complex64> {
        let mut v = self.holo.clone();
        v.extend_from_slice(&self.anti);
        v
    }
}

/// A complex 1-form `dz[α] dz^α + dz_bar[α] dz̄^α`.
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm {
    pub dz: Vec<Complex64>,
    pub dz_bar: Vec<Complex64>,
}

impl OneForm {
    pub fn max_abs(&self) -> f64 {
        self.dz
            .iter()
            .chain(&self.dz_bar)
            .map(|v| cabs(*v))
            .fold(0.0, f64::max)
    }
}

/// A vector field evaluated pointwise.
pub trait VectorField {
    fn eval(&self, p: &PhasePoint) -> Result<TangentVector>;
}

impl<F> VectorField for F
where
    F: Fn(&PhasePoint) -> Result<TangentVector>,
{
    fn eval(&self, p: &PhasePoint) -> Result<TangentVector> {
        self(p)
    }
}

fn check_vector(m: usize, v: &TangentVector) -> Result<()> {
    if v.holo.len() != m || v.anti.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: v.holo.len(),
        });
    }
    Ok(())
}

/// `Ω(X, Y) = i Σ g_{αβ̄}(X^α Ȳ^β − Y^α X̄^β)`, with `X̄^β` the `∂_β̄` component.
pub fn omega_at(
    params: &OscillatorParams,
    p: &PhasePoint,
    x: &TangentVector,
    y: &TangentVector,
) -> Result<Complex64> {
    let metric = metric_at(params, p)?;
    check_vector(params.m(), x)?;
    check_vector(params.m(), y)?;
    Ok(omega_with(&metric, x, y))
}

fn omega_with(metric: &MetricData, x: &TangentVector, y: &TangentVector) -> Complex64 {
    let m = metric.dim();
    let mut acc = ZERO;
    for alpha in 0..m {
        for beta in 0..m {
            acc += metric.g(alpha, beta)
                * (x.holo[alpha] * y.anti[beta] - y.holo[alpha] * x.anti[beta]);
        }
    }
    I * acc
}

/// The 1-form `ι_X Ω`.
pub fn interior_product(metric: &MetricData, x: &TangentVector) -> OneForm {
    let m = metric.dim();
    let mut dz = alloc::vec![ZERO; m];
    let mut dz_bar = alloc::vec![ZERO; m];
    for alpha in 0..m {
        for beta in 0..m {
            let g = metric.g(alpha, beta);
            dz[alpha] -= I * g * x.anti[beta];
            dz_bar[beta] += I * g * x.holo[alpha];
        }
    }
    OneForm { dz, dz_bar }
}

fn field_from_gradient(metric: &MetricData, grad: &WirtingerPair) -> TangentVector {
    let m = metric.dim();
    let mut v = TangentVector::zero(m);
    for alpha in 0..m {
        for beta in 0..m {
            let inv = metric.g_inv(beta, alpha);
            v.holo[alpha] += I * inv * grad.anti[beta];
            v.anti[beta] -= I * inv * grad.holo[alpha];
        }
    }
    v
}

/// `X_f` at `p`: `holo[α] = i Σ_β g^{β̄α} ∂_β̄ f`, `anti[β] = −i Σ_α g^{β̄α} ∂_α f`.
pub fn hamiltonian_field<F: ScalarField + ?Sized>(
    f: &F,
    params: &OscillatorParams,
    p: &PhasePoint,
) -> Result<TangentVector> {
    let metric = metric_at(params, p)?;
    let grad = gradient(f, params, p)?;
    Ok(field_from_gradient(&metric, &grad))
}

/// `ι_{X_f} Ω + df` at `p`; zero under the pinned conventions.
pub fn convention_residual<F: ScalarField + ?Sized>(
    f: &F,
    params: &OscillatorParams,
    p: &PhasePoint,
) -> Result<OneForm> {
    let metric = metric_at(params, p)?;
    let grad = gradient(f, params, p)?;
    let x = field_from_gradient(&metric, &grad);
    let mut form = interior_product(&metric, &x);
    for (a, d) in form.dz.iter_mut().zip(&grad.holo) {
        *a += d;
    }
    for (a, d) in form.dz_bar.iter_mut().zip(&grad.anti) {
        *a += d;
    }
    Ok(form)
}

/// `X_f` as a [`VectorField`].
pub struct HamiltonianField<'a, F: ?Sized> {
    pub function: &'a F,
    pub params: &'a OscillatorParams,
}

impl<F: ScalarField + ?Sized> VectorField for HamiltonianField<'_, F> {
    fn eval(&self, p: &PhasePoint) -> Result<TangentVector> {
        hamiltonian_field(self.function, self.params, p)
    }
}

/// `{f, g}(p) = i Σ g^{β̄α}(∂_β̄ f ∂_α g − ∂_α f ∂_β̄ g)`.
pub fn poisson_bracket<F, G>(
    f: &F,
    g: &G,
    params: &OscillatorParams,
    p: &PhasePoint,
) -> Result<Complex64>
where
    F: ScalarField + ?Sized,
    G: ScalarField + ?Sized,
{
    let metric = metric_at(params, p)?;
    let df = gradient(f, params, p)?;
    let dg = gradient(g, params, p)?;
    let m = params.m();
    let mut acc = ZERO;
    for alpha in 0..m {
        for beta in 0..m {
            acc += metric.g_inv(beta, alpha)
                * (df.anti[beta] * dg.holo[alpha] - df.holo[alpha] * dg.anti[beta]);
        }
    }
    Ok(I * acc)
}

/// `X(g)(p) = Σ X^α ∂_α g + X̄^α ∂_ᾱ g`.
pub fn apply_field<G: ScalarField + ?Sized>(
    x: &TangentVector,
    g: &G,
    params: &OscillatorParams,
    p: &PhasePoint,
) -> Result<Complex64> {
    check_vector(params.m(), x)?;
    let dg = gradient(g, params, p)?;
    Ok(contract(x, &dg))
}

fn contract(x: &TangentVector, d: &WirtingerPair) -> Complex64 {
    x.holo
        .iter()
        .zip(&d.holo)
        .map(|(a, b)| a * b)
        .sum::<Complex64>()
        + x.anti
            .iter()
            .zip(&d.anti)
            .map(|(a, b)| a * b)
            .sum::<Complex64>()
}

/// Derivative of every component of `y` along the vector `x` at `p`.
fn derivative_along<Y: VectorField + ?Sized>(
    x: &TangentVector,
    y: &Y,
    params: &OscillatorParams,
    p: &PhasePoint,
) -> Result<TangentVector> {
    let m = params.m();
    let mut flat = alloc::vec![ZERO; 2 * m];
    for index in 0..m {
        let pair = wirtinger_vec(|q| y.eval(q).map(|v| v.flatten()), params, p, index)?;
        for (k, slot) in flat.iter_mut().enumerate() {
            *slot += x.holo[index] * pair.holo[k] + x.anti[index] * pair.anti[k];
        }
    }
    let anti = flat.split_off(m);
    Ok(TangentVector { holo: flat, anti })
}

/// `[X, Y]^k = X(Y^k) − Y(X^k)` by differencing the component functions.
pub fn lie_bracket_fields<X, Y>(
    x: &X,
    y: &Y,
    params: &OscillatorParams,
    p: &PhasePoint,
) -> Result<TangentVector>
where
    X: VectorField + ?Sized,
    Y: VectorField + ?Sized,
{
    params.check(p)?;
    let xp = x.eval(p)?;
    let yp = y.eval(p)?;
    check_vector(params.m(), &xp)?;
    check_vector(params.m(), &yp)?;
    let x_of_y = derivative_along(&xp, y, params, p)?;
    let y_of_x = derivative_along(&yp, x, params, p)?;
    Ok(x_of_y.sub(&y_of_x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sample_points;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(m: usize, a: f64) -> OscillatorParams {
        OscillatorParams::new(m, a).unwrap()
    }

    /// `N^{αβ̄} = u′ z^α z̄^β`, written out independently of the observables module.
    fn n_field(
        params: &OscillatorParams,
        alpha: usize,
        beta: usize,
    ) -> impl Fn(&PhasePoint) -> Result<Complex64> + '_ {
        move |q: &PhasePoint| {
            let up = crate::geometry::radial_profile(params, q.r())?.u_prime;
            Ok(q.z()[alpha] * q.z()[beta].conj() * up)
        }
    }

    #[test]
    fn omega_is_antisymmetric() {
        let pr = params(2, 1.0);
        let p = PhasePoint::new(alloc::vec![c(1.0, 0.5), c(-0.3, 0.8)]);
        let x = TangentVector {
            holo: alloc::vec![c(1.0, 2.0), c(0.5, -1.0)],
            anti: alloc::vec![c(0.0, 1.0), c(3.0, 0.0)],
        };
        let y = TangentVector {
            holo: alloc::vec![c(-1.0, 0.2), c(0.0, 0.7)],
            anti: alloc::vec![c(2.0, 1.0), c(0.1, 0.1)],
        };
        assert_eq!(omega_at(&pr, &p, &x, &x).unwrap(), c(0.0, 0.0));
        let xy = omega_at(&pr, &p, &x, &y).unwrap();
        let yx = omega_at(&pr, &p, &y, &x).unwrap();
        assert!((xy + yx).norm() <= 1e-12);
    }

    #[test]
    fn omega_flat_unit_pair() {
        let pr = params(2, 0.0);
        let p = PhasePoint::new(alloc::vec![c(1.0, 0.0), c(1.0, 0.0)]);
        let v = omega_at(
            &pr,
            &p,
            &TangentVector::holo_unit(2, 0),
            &TangentVector::anti_unit(2, 0),
        )
        .unwrap();
        assert_eq!(v, c(0.0, 1.0));
    }

    #[test]
    fn hamiltonian_field_of_n11() {
        let pr = params(2, 1.0);
        let p = PhasePoint::new(alloc::vec![c(1.0, 0.0), c(1.0, 0.0)]);
        let x = hamiltonian_field(&n_field(&pr, 0, 0), &pr, &p).unwrap();
        let expect = TangentVector {
            holo: alloc::vec![c(0.0, 1.0), c(0.0, 0.0)],
            anti: alloc::vec![c(0.0, -1.0), c(0.0, 0.0)],
        };
        assert!(x.sub(&expect).max_abs() <= 1e-7);
        assert!(x.reality_defect() <= 1e-7);
    }

    #[test]
    fn constant_and_coordinate_fields() {
        let pr = params(2, 0.0);
        let p = PhasePoint::new(alloc::vec![c(0.4, 0.1), c(-1.0, 0.3)]);
        let k = |_: &PhasePoint| Ok(c(3.0, -2.0));
        assert_eq!(hamiltonian_field(&k, &pr, &p).unwrap().max_abs(), 0.0);
        let x = hamiltonian_field(&Coordinate(0), &pr, &p).unwrap();
        let expect = TangentVector {
            holo: alloc::vec![c(0.0, 0.0); 2],
            anti: alloc::vec![c(0.0, -1.0), c(0.0, 0.0)],
        };
        assert!(x.sub(&expect).max_abs() <= 1e-10);
    }

    #[test]
    fn convention_consistency_on_samples() {
        for &(m, a) in &[(2usize, 0.0), (2, 1.0), (3, 0.5)] {
            let pr = params(m, a);
            for p in sample_points(&pr, 10, 11, 0.1).unwrap() {
                for alpha in 0..m {
                    for beta in 0..m {
                        let r = convention_residual(&n_field(&pr, alpha, beta), &pr, &p).unwrap();
                        assert!(r.max_abs() <= 1e-7);
                    }
                    assert!(
                        convention_residual(&Coordinate(alpha), &pr, &p)
                            .unwrap()
                            .max_abs()
                            <= 1e-7
                    );
                }
                assert!(convention_residual(&Radial, &pr, &p).unwrap().max_abs() <= 1e-7);
                let xr = hamiltonian_field(&Radial, &pr, &p).unwrap();
                assert!(xr.reality_defect() <= 1e-7);
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let flat = params(2, 0.0);
        let curved = params(2, 1.0);
        let p = PhasePoint::new(alloc::vec![c(1.0, 0.0), c(1.0, 0.0)]);
        let n11 = n_field(&flat, 0, 0);
        let n12 = n_field(&flat, 0, 1);
        assert!(poisson_bracket(&n11, &n11, &flat, &p).unwrap().norm() <= 1e-12);
        assert!((poisson_bracket(&n11, &n12, &flat, &p).unwrap() - c(0.0, 1.0)).norm() <= 1e-7);
        let n11 = n_field(&curved, 0, 0);
        let n12 = n_field(&curved, 0, 1);
        let b = poisson_bracket(&n11, &n12, &curved, &p).unwrap();
        assert!((b - c(0.0, 0.866025403784438646763723170753)).norm() <= 1e-7);
        // Bracket equals X_f(g).
        let x = hamiltonian_field(&n11, &curved, &p).unwrap();
        assert!((apply_field(&x, &n12, &curved, &p).unwrap() - b).norm() <= 1e-7);
    }

    fn closed_v(alpha: usize, beta: usize) -> impl Fn(&PhasePoint) -> Result<TangentVector> {
        move |q: &PhasePoint| {
            let mut v = TangentVector::zero(q.dim());
            v.holo[beta] += I * q.z()[alpha];
            v.anti[alpha] -= I * q.z()[beta].conj();
            Ok(v)
        }
    }

    #[test]
    fn lie_bracket_of_v_fields() {
        let pr = params(2, 1.0);
        let p = PhasePoint::new(alloc::vec![c(0.9, 0.4), c(-0.5, 1.1)]);
        let v12 = closed_v(0, 1);
        let v21 = closed_v(1, 0);
        assert!(lie_bracket_fields(&v12, &v12, &pr, &p).unwrap().max_abs() <= 1e-12);
        // [V^{12̄}, V^{21̄}] = X_{{N^{12̄}, N^{21̄}}} = i(V^{11̄} − V^{22̄}).
        let got = lie_bracket_fields(&v12, &v21, &pr, &p).unwrap();
        let expect = closed_v(0, 0)(&p)
            .unwrap()
            .sub(&closed_v(1, 1)(&p).unwrap())
            .scale(I);
        assert!(got.sub(&expect).max_abs() <= 1e-6 * expect.max_abs());
        let got = lie_bracket_fields(&closed_v(0, 0), &closed_v(1, 1), &pr, &p).unwrap();
        assert!(got.max_abs() <= 1e-9);
    }

    #[test]
    fn jacobi_spot_check() {
        let pr = params(2, 1.0);
        let pts = sample_points(&pr, 3, 5, 0.5).unwrap();
        let f = n_field(&pr, 0, 1);
        let g = n_field(&pr, 1, 1);
        let h = n_field(&pr, 1, 0);
        let fg = |q: &PhasePoint| poisson_bracket(&f, &g, &pr, q);
        let gh = |q: &PhasePoint| poisson_bracket(&g, &h, &pr, q);
        let hf = |q: &PhasePoint| poisson_bracket(&h, &f, &pr, q);
        for p in &pts {
            let total = poisson_bracket(&fg, &h, &pr, p).unwrap()
                + poisson_bracket(&gh, &f, &pr, p).unwrap()
                + poisson_bracket(&hf, &g, &pr, p).unwrap();
            assert!(total.norm() <= 1e-5, "{total}");
        }
    }

    proptest! {
        #[test]
        fn poisson_bracket_is_antisymmetric(seed in 0u64..1000, i in 0usize..4, j in 0usize..4) {
            let pr = params(2, 1.0);
            let p = &sample_points(&pr, 1, seed, 0.2).unwrap()[0];
            let f = n_field(&pr, i / 2, i % 2);
            let g = n_field(&pr, j / 2, j % 2);
            let fg = poisson_bracket(&f, &g, &pr, p).unwrap();
            let gf = poisson_bracket(&g, &f, &pr, p).unwrap();
            prop_assert!((fg + gf).norm() <= 1e-7);
        }
    }
}
