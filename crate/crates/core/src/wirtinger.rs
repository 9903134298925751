//! Numerical Wirtinger derivatives.
//!
//! With `z^α = x + i y`, `∂/∂z^α = ½(∂_x − i ∂_y)` and
//! `∂/∂z̄^α = ½(∂_x + i ∂_y)`. Both real partials come from the five-point
//! central stencil
//!
//! ```text
//! f′(x) ≈ (f(x − 2h) − 8 f(x − h) + 8 f(x + h) − f(x + 2h)) / 12h
//! ```
//!
//! with `h = 1e-4 · max(1, |z^α|)`. Every stencil point is checked against
//! the metric domain before the field is evaluated there.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::geometry::{OscillatorParams, PhasePoint};
use crate::math::cabs;
use crate::symplectic::ScalarField;
use crate::{Error, Result};

/// Relative step of the differencing stencil.
pub const RELATIVE_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// `∂/∂z^α`
    Holomorphic,
    /// `∂/∂z̄^α`
    Antiholomorphic,
}

/// Both Wirtinger derivatives of a vector-valued map along coordinate `index`.
#[derive(Debug, Clone, PartialEq)]
pub struct WirtingerPair {
    pub holo: Vec<Complex64>,
    pub anti: Vec<Complex64>,
}

pub(crate) fn step(p: &PhasePoint, index: usize) -> f64 {
    RELATIVE_STEP * cabs(p.z()[index]).max(1.0)
}

fn stencil_point(
    params: &OscillatorParams,
    p: &PhasePoint,
    index: usize,
    delta: Complex64,
) -> Result<PhasePoint> {
    let q = p.shifted(index, delta);
    params.check_radius(q.r())?;
    Ok(q)
}

/// Wirtinger derivatives of every component of `map` along `index`.
pub fn wirtinger_vec<G>(
    mut map: G,
    params: &OscillatorParams,
    p: &PhasePoint,
    index: usize,
) -> Result<WirtingerPair>
where
    G: FnMut(&PhasePoint) -> Result<Vec<Complex64>>,
{
    params.check(p)?;
    if index >= p.dim() {
        return Err(Error::Index { index, m: p.dim() });
    }
    let h = step(p, index);
    let weights = [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)];
    let mut dx: Vec<Complex64> = Vec::new();
    let mut dy: Vec<Complex64> = Vec::new();
    for (direction, acc) in [
        (Complex64::new(1.0, 0.0), &mut dx),
        (Complex64::new(0.0, 1.0), &mut dy),
    ] {
        for &(offset, weight) in &weights {
            let q = stencil_point(params, p, index, direction * (offset * h))?;
            let values = map(&q)?;
            if acc.is_empty() {
                acc.resize(values.len(), Complex64::new(0.0, 0.0));
            }
            for (a, v) in acc.iter_mut().zip(values) {
                *a += v * weight;
            }
        }
        let denom = 12.0 * h;
        for a in acc.iter_mut() {
            *a /= denom;
        }
    }
    let i = Complex64::new(0.0, 1.0);
    let holo = dx
        .iter()
        .zip(&dy)
        .map(|(x, y)| (*x - i * *y) * 0.5)
        .collect();
    let anti = dx
        .iter()
        .zip(&dy)
        .map(|(x, y)| (*x + i * *y) * 0.5)
        .collect();
    Ok(WirtingerPair { holo, anti })
}

/// `(∂f/∂z^α, ∂f/∂z̄^α)` in one stencil sweep.
pub fn wirtinger_both<F: ScalarField + ?Sized>(
    field: &F,
    params: &OscillatorParams,
    p: &PhasePoint,
    index: usize,
) -> Result<(Complex64, Complex64)> {
    let pair = wirtinger_vec(|q| field.eval(q).map(|v| alloc::vec![v]), params, p, index)?;
    Ok((pair.holo[0], pair.anti[0]))
}

/// `∂f/∂z^α` or `∂f/∂z̄^α` at `p`.
pub fn wirtinger<F: ScalarField + ?Sized>(
    field: &F,
    params: &OscillatorParams,
    p: &PhasePoint,
    index: usize,
    kind: Kind,
) -> Result<Complex64> {
    let (holo, anti) = wirtinger_both(field, params, p, index)?;
    Ok(match kind {
        Kind::Holomorphic => holo,
        Kind::Antiholomorphic => anti,
    })
}

/// All holomorphic and antiholomorphic first derivatives of `field` at `p`.
pub fn gradient<F: ScalarField + ?Sized>(
    field: &F,
    params: &OscillatorParams,
    p: &PhasePoint,
) -> Result<WirtingerPair> {
    let m = p.dim();
    let mut holo = Vec::with_capacity(m);
    let mut anti = Vec::with_capacity(m);
    for index in 0..m {
        let (d, dbar) = wirtinger_both(field, params, p, index)?;
        holo.push(d);
        anti.push(dbar);
    }
    Ok(WirtingerPair { holo, anti })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn flat() -> OscillatorParams {
        OscillatorParams::new(2, 0.0).unwrap()
    }

    #[test]
    fn polynomial_derivative() {
        let f = |q: &PhasePoint| Ok(q.z()[0] * q.z()[0]);
        let p = PhasePoint::new(alloc::vec![c(3.0, 0.0), c(0.0, 0.0)]);
        let d = wirtinger(&f, &flat(), &p, 0, Kind::Holomorphic).unwrap();
        assert!((d - c(6.0, 0.0)).norm() <= 1e-6 * 6.0);
    }

    #[test]
    fn holomorphic_function_has_no_antiholomorphic_derivative() {
        let f = |q: &PhasePoint| Ok(q.z()[0]);
        let p = PhasePoint::new(alloc::vec![c(0.4, -1.0), c(0.2, 0.1)]);
        let d = wirtinger(&f, &flat(), &p, 0, Kind::Antiholomorphic).unwrap();
        assert!(d.norm() < 1e-12);
    }

    #[test]
    fn radial_derivative_is_conjugate_coordinate() {
        let f = |q: &PhasePoint| Ok(c(q.r(), 0.0));
        let p = PhasePoint::new(alloc::vec![c(2.0, 1.0), c(0.0, 0.0)]);
        let d = wirtinger(&f, &flat(), &p, 0, Kind::Holomorphic).unwrap();
        assert!((d - c(2.0, -1.0)).norm() <= 1e-6 * 5f64.sqrt());
        let dbar = wirtinger(&f, &flat(), &p, 0, Kind::Antiholomorphic).unwrap();
        assert!((dbar - c(2.0, 1.0)).norm() <= 1e-6 * 5f64.sqrt());
    }

    #[test]
    fn stencil_leaving_domain_is_rejected() {
        let pr = OscillatorParams::new(2, 1.0).unwrap();
        let f = |q: &PhasePoint| Ok(c(q.r(), 0.0));
        // r² − 1 is about 2e-9: the stencil steps straddle the boundary.
        let p = PhasePoint::new(alloc::vec![c(1.0 + 1e-9, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            wirtinger(&f, &pr, &p, 0, Kind::Holomorphic),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            wirtinger(&f, &pr, &p, 5, Kind::Holomorphic),
            Err(Error::Index { .. })
        ));
    }
}
