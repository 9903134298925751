//! The Ricci-flat Kähler metric on `{ z ∈ C^m : r^m > a^m }`.
//!
//! Everything is driven by the radial profile
//!
//! ```text
//! s(r)  = (r^m − a^m)^{1/m}
//! u′(r) = s / r
//! u″(r) = (a^m / r²) s^{1−m}
//! ```
//!
//! and the metric `g_{αβ̄} = u″ z̄^α z^β + u′ δ_{αβ}`. Since `g` is a rank-one
//! update of `u′·I`, its inverse and determinant have closed forms:
//! `g^{-1} = (1/u′)(I − (u″/s′) z̄ zᵀ)` and `det g = u′^{m−1} s′ = 1`, with
//! `s′ = u′ + r u″ = r^{m−1} s^{1−m}`.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand_chacha::ChaCha20Rng;
use rand_core::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg;
use crate::math::{ln, powf, powi, sqrt};
use crate::wirtinger::{self, Kind};
use crate::{Error, Result};

/// Largest allowed disagreement between the closed-form and LU inverses.
pub const INVERSE_TOLERANCE: f64 = 1e-8;

/// Consecutive rejections after which [`sample_points`] gives up.
pub const MAX_REJECTIONS: u32 = 10_000;

/// Global configuration: complex dimension `m`, deformation `a` and the
/// quantum of action `ħ`.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorParams {
    m: usize,
    a: f64,
    hbar: BigRational,
    even_m_only: bool,
}

impl OscillatorParams {
    /// Parameters with `ħ = 1`, accepting any `m ≥ 1`.
    pub fn new(m: usize, a: f64) -> Result<Self> {
        Self::with_hbar(m, a, BigRational::one())
    }

    pub fn with_hbar(m: usize, a: f64, hbar: BigRational) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams("m must be at least 1"));
        }
        if !a.is_finite() {
            return Err(Error::InvalidParams("a must be finite"));
        }
        if !hbar.is_positive() {
            return Err(Error::InvalidParams("hbar must be positive"));
        }
        Ok(Self {
            m,
            a,
            hbar,
            even_m_only: false,
        })
    }

    /// Restrict to even `m = 2n`.
    pub fn strict(self) -> Result<Self> {
        if self.m % 2 != 0 {
            return Err(Error::InvalidParams("strict mode requires even m"));
        }
        Ok(Self {
            even_m_only: true,
            ..self
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn hbar(&self) -> &BigRational {
        &self.hbar
    }

    /// `ħ` as a float, for reporting.
    pub fn hbar_f64(&self) -> f64 {
        crate::rational::rational_to_f64(&self.hbar)
    }

    pub fn is_strict(&self) -> bool {
        self.even_m_only
    }

    /// `a^m`.
    pub fn a_pow_m(&self) -> f64 {
        powi(self.a, self.m)
    }

    /// `r^m − a^m`; positive exactly on the domain.
    pub fn excess(&self, r: f64) -> f64 {
        powi(r, self.m) - self.a_pow_m()
    }

    /// Fails with [`Error::Domain`] unless `r > 0` and `r^m > a^m`.
    pub fn check_radius(&self, r: f64) -> Result<()> {
        let excess = self.excess(r);
        if r > 0.0 && excess > 0.0 {
            Ok(())
        } else {
            Err(Error::Domain { excess })
        }
    }

    /// Dimension and domain check for a point.
    pub fn check(&self, p: &PhasePoint) -> Result<()> {
        if p.dim() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: p.dim(),
            });
        }
        self.check_radius(p.r())
    }
}

/// A point of phase space given by its holomorphic coordinates. The radial
/// invariant `r = Σ |z^α|²` is always recomputed from `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePoint {
    z: Vec<Complex64>,
    r: f64,
}

impl PhasePoint {
    pub fn new(z: Vec<Complex64>) -> Self {
        let r = z.iter().map(|c| c.norm_sqr()).sum();
        Self { z, r }
    }

    pub fn from_slice(z: &[Complex64]) -> Self {
        Self::new(z.to_vec())
    }

    pub fn z(&self) -> &[Complex64] {
        &self.z
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    /// Copy of the point with `z^index` moved by `delta`.
    pub fn shifted(&self, index: usize, delta: Complex64) -> Self {
        let mut z = self.z.clone();
        z[index] += delta;
        Self::new(z)
    }

    pub fn into_coords(self) -> Vec<Complex64> {
        self.z
    }
}

/// Radial profile scalars at one value of `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialProfile {
    pub u_prime: f64,
    pub u_double_prime: f64,
    pub s: f64,
    pub s_prime: f64,
}

/// Evaluates `u′`, `u″`, `s` and `s′` at radius `r`.
pub fn radial_profile(params: &OscillatorParams, r: f64) -> Result<PotentialProfile> {
    params.check_radius(r)?;
    let m = params.m;
    // a = 0 is the flat metric; keep it exact instead of rounding through pow.
    let s = if params.a == 0.0 {
        r
    } else {
        powf(params.excess(r), 1.0 / m as f64)
    };
    let u_prime = s / r;
    let u_double_prime = if params.a == 0.0 {
        0.0
    } else {
        params.a_pow_m() / (r * r) * powf(s, 1.0 - m as f64)
    };
    Ok(PotentialProfile {
        u_prime,
        u_double_prime,
        s,
        s_prime: u_prime + r * u_double_prime,
    })
}

/// Metric matrix, its inverse and determinant at a point. Matrices are
/// `m × m`, row-major: `g[α·m + β] = g_{αβ̄}` and `g_inv[β·m + α] = g^{β̄α}`,
/// so that `Σ_α g^{β̄α} g_{αγ̄} = δ_{βγ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricData {
    m: usize,
    pub g: Vec<Complex64>,
    pub g_inv: Vec<Complex64>,
    pub det_g: f64,
    pub profile: PotentialProfile,
    /// Max entrywise gap between the closed-form and LU inverses.
    pub inverse_discrepancy: f64,
}

impl MetricData {
    pub fn dim(&self) -> usize {
        self.m
    }

    /// `g_{αβ̄}`.
    pub fn g(&self, alpha: usize, beta: usize) -> Complex64 {
        self.g[alpha * self.m + beta]
    }

    /// `g^{β̄α}`.
    pub fn g_inv(&self, beta: usize, alpha: usize) -> Complex64 {
        self.g_inv[beta * self.m + alpha]
    }

    pub fn is_positive_definite(&self) -> bool {
        linalg::is_positive_definite(&self.g, self.m)
    }

    /// Max `|g_{αβ̄} − conj(g_{βᾱ})|`.
    pub fn hermitian_defect(&self) -> f64 {
        linalg::max_hermitian_defect(&self.g, self.m)
    }

    /// Max entrywise deviation of `g · g_inv` from the identity.
    pub fn identity_defect(&self) -> f64 {
        let prod = linalg::matmul(&self.g, &self.g_inv, self.m);
        let mut id = alloc::vec![Complex64::new(0.0, 0.0); self.m * self.m];
        for k in 0..self.m {
            id[k * self.m + k] = Complex64::new(1.0, 0.0);
        }
        linalg::max_abs_diff(&prod, &id)
    }
}

fn assemble(profile: &PotentialProfile, z: &[Complex64]) -> Vec<Complex64> {
    let m = z.len();
    let mut g = Vec::with_capacity(m * m);
    for alpha in 0..m {
        for beta in 0..m {
            let mut entry = z[alpha].conj() * z[beta] * profile.u_double_prime;
            if alpha == beta {
                entry += profile.u_prime;
            }
            g.push(entry);
        }
    }
    g
}

fn closed_form_inverse(profile: &PotentialProfile, z: &[Complex64]) -> Vec<Complex64> {
    let m = z.len();
    let ratio = profile.u_double_prime / profile.s_prime;
    let scale = 1.0 / profile.u_prime;
    let mut inv = Vec::with_capacity(m * m);
    for beta in 0..m {
        for alpha in 0..m {
            let mut entry = -(z[beta].conj() * z[alpha]) * ratio;
            if alpha == beta {
                entry += 1.0;
            }
            inv.push(entry * scale);
        }
    }
    inv
}

/// Assembles the metric at `p`, inverts it in closed form and cross-checks
/// against LU inversion.
pub fn metric_at(params: &OscillatorParams, p: &PhasePoint) -> Result<MetricData> {
    params.check(p)?;
    let profile = radial_profile(params, p.r())?;
    let g = assemble(&profile, p.z());
    let g_inv = closed_form_inverse(&profile, p.z());
    let direct = linalg::inverse(&g, params.m).map_err(|_| Error::Conditioning {
        discrepancy: f64::INFINITY,
    })?;
    let discrepancy = linalg::max_abs_diff(&g_inv, &direct);
    if !(discrepancy <= INVERSE_TOLERANCE) {
        return Err(Error::Conditioning { discrepancy });
    }
    let det_g = linalg::determinant(&g, params.m).re;
    Ok(MetricData {
        m: params.m,
        g,
        g_inv,
        det_g,
        profile,
        inverse_discrepancy: discrepancy,
    })
}

/// `log det g` by direct LU determinant, without the inverse cross-check.
pub fn log_det_metric(params: &OscillatorParams, p: &PhasePoint) -> Result<f64> {
    params.check(p)?;
    let profile = radial_profile(params, p.r())?;
    let g = assemble(&profile, p.z());
    let det = linalg::determinant(&g, params.m).re;
    if !(det > 0.0) {
        return Err(Error::Singular);
    }
    Ok(ln(det))
}

/// Ricci form `R_{αβ̄} = −∂_α ∂_β̄ log det g` by nested Wirtinger
/// differencing. Row-major `m × m`.
pub fn ricci_at(params: &OscillatorParams, p: &PhasePoint) -> Result<Vec<Complex64>> {
    params.check(p)?;
    let m = params.m;
    let log_det = |q: &PhasePoint| log_det_metric(params, q).map(|v| Complex64::new(v, 0.0));
    let mut ricci = alloc::vec![Complex64::new(0.0, 0.0); m * m];
    for beta in 0..m {
        let inner =
            |q: &PhasePoint| wirtinger::wirtinger(&log_det, params, q, beta, Kind::Antiholomorphic);
        for alpha in 0..m {
            let mixed = wirtinger::wirtinger(&inner, params, p, alpha, Kind::Holomorphic)?;
            ricci[alpha * m + beta] = -mixed;
        }
    }
    Ok(ricci)
}

/// Deterministic seeded sampling of admissible points.
///
/// The generator is `ChaCha20Rng::seed_from_u64(seed)`; each coordinate is
/// `(x + i y)/√2` with `x` then `y` drawn from `rand_distr::StandardNormal`,
/// coordinates in index order. A candidate point is kept when
/// `r^m ≥ a^m + margin` (and `r > 0`); otherwise all `m` coordinates are
/// redrawn.
pub fn sample_points(
    params: &OscillatorParams,
    count: usize,
    seed: u64,
    margin: f64,
) -> Result<Vec<PhasePoint>> {
    if !(margin > 0.0) {
        return Err(Error::InvalidParams("margin must be positive"));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let scale = 1.0 / sqrt(2.0);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut rejected = 0u32;
        loop {
            let z: Vec<Complex64> = (0..params.m)
                .map(|_| {
                    let x: f64 = StandardNormal.sample(&mut rng);
                    let y: f64 = StandardNormal.sample(&mut rng);
                    Complex64::new(x * scale, y * scale)
                })
                .collect();
            let p = PhasePoint::new(z);
            if p.r() > 0.0 && params.excess(p.r()) >= margin {
                out.push(p);
                break;
            }
            rejected += 1;
            if rejected >= MAX_REJECTIONS {
                return Err(Error::Exhaustion { attempts: rejected });
            }
        }
    }
    Ok(out)
}

/// `ħ` from an integer ratio; convenience for callers that do not want to
/// depend on `num-rational` directly.
pub fn hbar_ratio(numer: i64, denom: i64) -> Result<BigRational> {
    if denom == 0 {
        return Err(Error::InvalidParams("hbar denominator is zero"));
    }
    let value = BigRational::new(BigInt::from(numer), BigInt::from(denom));
    if value.is_zero() || value.is_negative() {
        return Err(Error::InvalidParams("hbar must be positive"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::abs;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(m: usize, a: f64) -> OscillatorParams {
        OscillatorParams::new(m, a).unwrap()
    }

    #[test]
    fn params_invariants() {
        assert!(OscillatorParams::new(0, 1.0).is_err());
        assert!(OscillatorParams::new(3, 1.0).unwrap().strict().is_err());
        assert!(OscillatorParams::new(4, 1.0)
            .unwrap()
            .strict()
            .unwrap()
            .is_strict());
        assert!(OscillatorParams::with_hbar(2, 0.0, BigRational::zero()).is_err());
        assert!(hbar_ratio(-1, 2).is_err());
        assert_eq!(hbar_ratio(1, 2).unwrap().to_string(), "1/2");
    }

    #[test]
    fn flat_profile_is_trivial() {
        let prof = radial_profile(&params(2, 0.0), 3.7).unwrap();
        assert_eq!(prof.u_prime, 1.0);
        assert_eq!(prof.u_double_prime, 0.0);
    }

    #[test]
    fn curved_profile_matches_high_precision_values() {
        // Frozen from a 30-digit evaluation of (r²−1)^{1/2}/r and 1/(r²√(r²−1)) at r = 2.
        let prof = radial_profile(&params(2, 1.0), 2.0).unwrap();
        assert!(abs(prof.u_prime - 0.866025403784438646763723170753) < 1e-15);
        assert!(abs(prof.u_double_prime - 0.144337567297406441127287195125) < 1e-15);
        assert!(abs(prof.s - 2.0 * prof.u_prime) < 1e-15);
        // s′ = r^{m−1} s^{1−m}
        assert!(abs(prof.s_prime - 2.0 / prof.s) < 1e-14);
    }

    #[test]
    fn boundary_is_an_error() {
        assert!(matches!(
            radial_profile(&params(2, 1.0), 1.0),
            Err(Error::Domain { .. })
        ));
        assert!(radial_profile(&params(2, 1.0), 0.5).is_err());
        assert!(radial_profile(&params(2, 0.0), 0.0).is_err());
    }

    #[test]
    fn second_derivative_matches_differenced_first() {
        for &(m, a, r) in &[
            (2usize, 1.0, 2.0),
            (4, 0.5, 1.3),
            (3, 2.0, 2.5),
            (4, 2.0, 2.2),
        ] {
            let p = params(m, a);
            let h = 1e-4 * r;
            let up = |x: f64| radial_profile(&p, x).unwrap().u_prime;
            let numeric = (up(r - 2.0 * h) - 8.0 * up(r - h) + 8.0 * up(r + h) - up(r + 2.0 * h))
                / (12.0 * h);
            let exact = radial_profile(&p, r).unwrap().u_double_prime;
            assert!(abs(numeric - exact) <= 1e-6 * abs(exact), "m={m} a={a}");
        }
    }

    #[test]
    fn flat_metric_is_identity() {
        let p = PhasePoint::new(alloc::vec![c(1.0, 0.0), c(2.0, -1.0)]);
        let md = metric_at(&params(2, 0.0), &p).unwrap();
        assert_eq!(
            md.g,
            alloc::vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]
        );
        assert_eq!(md.det_g, 1.0);
    }

    #[test]
    fn curved_metric_entries() {
        let p = PhasePoint::new(alloc::vec![c(1.0, 0.0), c(1.0, 0.0)]);
        let md = metric_at(&params(2, 1.0), &p).unwrap();
        assert_eq!(p.r(), 2.0);
        assert!((md.g(0, 0) - c(1.01036297108184508789, 0.0)).norm() < 1e-15);
        assert!((md.g(0, 1) - c(0.144337567297406441127, 0.0)).norm() < 1e-15);
        // Independent oracle: 2×2 determinant by the cofactor formula.
        let det = md.g(0, 0) * md.g(1, 1) - md.g(0, 1) * md.g(1, 0);
        assert!(abs(det.re - 1.0) < 1e-14);
        assert!(abs(md.det_g - 1.0) < 1e-14);
    }

    #[test]
    fn inverse_and_spectrum_closed_forms() {
        let pr = params(4, 0.5);
        let pts = sample_points(&pr, 20, 3, 0.05).unwrap();
        for p in &pts {
            let md = metric_at(&pr, p).unwrap();
            assert!(abs(md.det_g - 1.0) <= 1e-10);
            assert!(md.identity_defect() <= 1e-12);
            assert!(md.hermitian_defect() == 0.0);
            assert!(md.is_positive_definite());
            // Eigenvalues are u′ (on z̄^⊥) and s′ (along z̄): check g z̄ = s′ z̄.
            let zbar: Vec<Complex64> = p.z().iter().map(|v| v.conj()).collect();
            for alpha in 0..4 {
                let gz: Complex64 = (0..4).map(|b| md.g(alpha, b) * zbar[b]).sum();
                assert!((gz - zbar[alpha] * md.profile.s_prime).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn domain_and_dimension_errors() {
        let pr = params(2, 1.0);
        let inside = PhasePoint::new(alloc::vec![c(0.5, 0.0), c(0.5, 0.0)]);
        assert!(matches!(metric_at(&pr, &inside), Err(Error::Domain { .. })));
        let wrong = PhasePoint::new(alloc::vec![c(2.0, 0.0)]);
        assert!(matches!(
            metric_at(&pr, &wrong),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn conditioning_breakdown_is_reported() {
        // Extremely close to the boundary the rank-one term dominates and LU
        // loses the closed form's accuracy.
        let pr = params(2, 1.0);
        let w = ((1.0 + 1e-12) / 2.0f64).sqrt();
        let p = PhasePoint::new(alloc::vec![c(w, 0.0), c(w, 0.0)]);
        match metric_at(&pr, &p) {
            Err(Error::Conditioning { discrepancy }) => assert!(discrepancy > INVERSE_TOLERANCE),
            other => panic!("expected breakdown, got {other:?}"),
        }
    }

    #[test]
    fn flat_ricci_is_exactly_zero() {
        let pr = params(2, 0.0);
        let p = PhasePoint::new(alloc::vec![c(0.3, 1.1), c(-0.7, 0.2)]);
        assert!(ricci_at(&pr, &p).unwrap().iter().all(|v| *v == c(0.0, 0.0)));
    }

    #[test]
    fn curved_ricci_vanishes() {
        let pr = params(2, 1.0);
        let p = PhasePoint::new(alloc::vec![c(1.2, 0.0), c(0.0, 0.7)]);
        for v in ricci_at(&pr, &p).unwrap() {
            assert!(v.norm() <= 1e-5, "{v}");
        }
        let pr = params(4, 2.0);
        let p = PhasePoint::new(alloc::vec![
            c(1.2, 0.3),
            c(0.0, 0.9),
            c(-0.6, 0.4),
            c(0.8, -0.5)
        ]);
        for v in ricci_at(&pr, &p).unwrap() {
            assert!(v.norm() <= 1e-5, "{v}");
        }
    }

    #[test]
    fn sampling_contract() {
        let flat = params(2, 0.0);
        assert!(sample_points(&flat, 0, 1, 0.1).unwrap().is_empty());
        let first = sample_points(&flat, 5, 42, 0.1).unwrap();
        let second = sample_points(&flat, 5, 42, 0.1).unwrap();
        assert_eq!(first.len(), 5);
        for (x, y) in first.iter().zip(&second) {
            for (u, v) in x.z().iter().zip(y.z()) {
                assert_eq!(u.re.to_bits(), v.re.to_bits());
                assert_eq!(u.im.to_bits(), v.im.to_bits());
            }
        }
        let pr = params(2, 1.0);
        for p in sample_points(&pr, 100, 7, 0.1).unwrap() {
            assert!(p.r() * p.r() >= 1.1);
        }
        assert!(sample_points(&pr, 1, 7, 0.0).is_err());
        assert_eq!(
            sample_points(&pr, 1, 7, 1e6),
            Err(Error::Exhaustion {
                attempts: MAX_REJECTIONS
            })
        );
    }
}
