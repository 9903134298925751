//! Sampled verification campaign over the geometry, symplectic and
//! observable layers.

use std::collections::BTreeMap;

use genosc_core::geometry::{metric_at, ricci_at, sample_points, OscillatorParams, PhasePoint};
use genosc_core::observables::{
    closed_form_field, evaluate, polarization_residual, structure_bracket, AlgebraElement,
};
use genosc_core::polynomial::{HoloPolynomial, MultiIndex};
use genosc_core::rational::{imag_unit, int, real};
use genosc_core::symplectic::{
    apply_field, convention_residual, hamiltonian_field, poisson_bracket, Coordinate, Radial,
};
use genosc_core::{Complex64, Error};
use rayon::prelude::*;

use crate::report::{
    max_residual, Check, ParamsEcho, Real, VerificationReport, SCHEMA_VERSION, TOOL_VERSION,
};
use crate::workers::with_workers;

/// Per-check tolerances.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    pub det: f64,
    pub inverse: f64,
    pub field: f64,
    pub bracket: f64,
    pub ricci: f64,
    pub polarization: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            det: 1e-10,
            inverse: 1e-8,
            field: 1e-7,
            bracket: 1e-7,
            ricci: 1e-5,
            polarization: 1e-5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub params: OscillatorParams,
    pub samples: usize,
    pub seed: u64,
    pub margin: f64,
    pub tolerances: Tolerances,
    /// Worker threads; `0` lets rayon choose. Never affects the report.
    pub workers: usize,
}

impl VerifyConfig {
    pub fn new(params: OscillatorParams, samples: usize, seed: u64) -> Self {
        Self {
            params,
            samples,
            seed,
            margin: 0.1,
            tolerances: Tolerances::default(),
            workers: 0,
        }
    }
}

/// Worst residual of each check at a single point.
#[derive(Debug, Clone, Copy, Default)]
struct PointResiduals {
    det: f64,
    inverse: f64,
    identity: f64,
    hermitian: f64,
    not_positive: f64,
    ricci: f64,
    field: f64,
    convention: f64,
    reality: f64,
    bracket: f64,
    bracket_field: f64,
    polarization_n: f64,
    polarization_holo: f64,
    polarization_control: f64,
}

fn or_inf(r: Result<f64, Error>) -> f64 {
    r.unwrap_or(f64::INFINITY)
}

/// Three fixed holomorphic polynomials used as positive polarization cases.
pub fn holomorphic_samples(m: usize) -> Vec<HoloPolynomial> {
    let last = m - 1;
    let mono = |exps: Vec<(usize, u32)>| {
        let mut k = vec![0u32; m];
        for (i, e) in exps {
            k[i] += e;
        }
        MultiIndex::new(k)
    };
    let mut p1 = HoloPolynomial::zero(m);
    p1.add_term(mono(vec![(0, 1), (last, 1)]), int(1));
    let mut p2 = HoloPolynomial::zero(m);
    p2.add_term(mono(vec![(0, 3)]), int(1));
    p2.add_term(mono(vec![(last, 1)]), imag_unit() * int(-2));
    let mut p3 = HoloPolynomial::zero(m);
    p3.add_term(mono(vec![]), real(1, 2));
    p3.add_term(mono(vec![(0, 1), (last, 2)]), real(3, 4));
    vec![p1, p2, p3]
}

fn basis_elements(m: usize) -> Vec<AlgebraElement> {
    (0..m * m)
        .map(|k| AlgebraElement::basis(m, k / m, k % m).expect("index in range"))
        .collect()
}

fn point_residuals(params: &OscillatorParams, p: &PhasePoint) -> PointResiduals {
    let m = params.m();
    let mut out = PointResiduals::default();
    match metric_at(params, p) {
        Ok(md) => {
            out.det = (md.det_g - 1.0).abs();
            out.inverse = md.inverse_discrepancy;
            out.identity = md.identity_defect();
            out.hermitian = md.hermitian_defect();
            out.not_positive = if md.is_positive_definite() { 0.0 } else { 1.0 };
        }
        Err(Error::Conditioning { discrepancy }) => {
            out.det = f64::INFINITY;
            out.inverse = discrepancy;
            out.identity = f64::INFINITY;
            out.hermitian = f64::INFINITY;
            out.not_positive = 1.0;
        }
        Err(_) => {
            out.det = f64::INFINITY;
            out.inverse = f64::INFINITY;
            out.identity = f64::INFINITY;
            out.hermitian = f64::INFINITY;
            out.not_positive = 1.0;
        }
    }
    out.ricci = or_inf(ricci_at(params, p).map(|r| max_residual(r.iter().map(|v| v.norm()))));

    let basis = basis_elements(m);
    let mut field = Vec::new();
    let mut convention = Vec::new();
    let mut reality = Vec::new();
    let mut pol_n = Vec::new();
    for (k, e) in basis.iter().enumerate() {
        let f = e.as_field(params);
        field.push(or_inf(hamiltonian_field(&f, params, p).and_then(|x| {
            let closed = closed_form_field(k / m, k % m, p)?;
            Ok(x.sub(&closed).max_abs())
        })));
        convention.push(or_inf(
            convention_residual(&f, params, p).map(|r| r.max_abs()),
        ));
        pol_n.push(or_inf(polarization_residual(&f, params, p)));
        if k / m == k % m {
            reality.push(or_inf(
                hamiltonian_field(&f, params, p).map(|x| x.reality_defect()),
            ));
        }
    }
    for alpha in 0..m {
        convention.push(or_inf(
            convention_residual(&Coordinate(alpha), params, p).map(|r| r.max_abs()),
        ));
    }
    convention.push(or_inf(
        convention_residual(&Radial, params, p).map(|r| r.max_abs()),
    ));
    reality.push(or_inf(
        hamiltonian_field(&Radial, params, p).map(|x| x.reality_defect()),
    ));

    let mut bracket = Vec::new();
    let mut bracket_field = Vec::new();
    for e1 in &basis {
        let f1 = e1.as_field(params);
        let x1 = hamiltonian_field(&f1, params, p);
        for e2 in &basis {
            let f2 = e2.as_field(params);
            let numeric = poisson_bracket(&f1, &f2, params, p);
            let exact = structure_bracket(e1, e2).and_then(|b| evaluate(&b, params, p));
            bracket.push(match (&numeric, exact) {
                (Ok(n), Ok(x)) => (n - x).norm(),
                _ => f64::INFINITY,
            });
            let along = x1
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|x| apply_field(x, &f2, params, p));
            bracket_field.push(match (numeric, along) {
                (Ok(n), Ok(x)) => (n - x).norm(),
                _ => f64::INFINITY,
            });
        }
    }

    let holo = holomorphic_samples(m);
    let pol_holo: Vec<f64> = holo
        .iter()
        .map(|h| or_inf(polarization_residual(h, params, p)))
        .collect();
    let control =
        |q: &PhasePoint| -> Result<Complex64, Error> { Ok(q.z()[0].conj() * q.z()[0].conj()) };
    out.polarization_control = polarization_residual(&control, params, p).unwrap_or(0.0);

    out.field = max_residual(field);
    out.convention = max_residual(convention);
    out.reality = max_residual(reality);
    out.bracket = max_residual(bracket);
    out.bracket_field = max_residual(bracket_field);
    out.polarization_n = max_residual(pol_n);
    out.polarization_holo = max_residual(pol_holo);
    out
}

fn check(name: &str, residual: f64, tol: f64) -> Check {
    Check {
        name: name.to_string(),
        pass: residual <= tol,
        expected_fail: false,
        detail: format!(
            "max residual {} <= {}",
            Real(residual).format(),
            Real(tol).format()
        ),
    }
}

/// Runs the campaign. Fails only when sampling itself fails.
pub fn run_verify(config: &VerifyConfig) -> Result<VerificationReport, Error> {
    if config.samples == 0 {
        return Err(Error::InvalidParams("samples must be at least 1"));
    }
    let params = &config.params;
    let points = sample_points(params, config.samples, config.seed, config.margin)?;
    let per_point: Vec<PointResiduals> = with_workers(config.workers, || {
        points
            .par_iter()
            .map(|p| point_residuals(params, p))
            .collect()
    });

    let worst = |f: fn(&PointResiduals) -> f64| max_residual(per_point.iter().map(f));
    let control_min = per_point
        .iter()
        .map(|r| r.polarization_control)
        .fold(f64::INFINITY, f64::min);

    let tol = &config.tolerances;
    let mut residuals = BTreeMap::new();
    let mut add = |name: &str, v: f64| {
        residuals.insert(name.to_string(), Real(v));
    };
    add("det", worst(|r| r.det));
    add("inverse", worst(|r| r.inverse));
    add("identity", worst(|r| r.identity));
    add("hermitian", worst(|r| r.hermitian));
    add("ricci", worst(|r| r.ricci));
    add("field", worst(|r| r.field));
    add("convention", worst(|r| r.convention));
    add("reality", worst(|r| r.reality));
    add("bracket", worst(|r| r.bracket));
    add("bracket_field", worst(|r| r.bracket_field));
    add("polarization_n", worst(|r| r.polarization_n));
    add("polarization_holomorphic", worst(|r| r.polarization_holo));
    add("polarization_control_min", control_min);

    let mut tolerances = BTreeMap::new();
    for (name, v) in [
        ("det", tol.det),
        ("inverse", tol.inverse),
        ("identity", tol.inverse),
        ("hermitian", tol.det),
        ("ricci", tol.ricci),
        ("field", tol.field),
        ("convention", tol.field),
        ("reality", tol.field),
        ("bracket", tol.bracket),
        ("bracket_field", tol.bracket),
        ("polarization_n", tol.polarization),
        ("polarization_holomorphic", tol.polarization),
        ("polarization_control_min", tol.polarization),
    ] {
        tolerances.insert(name.to_string(), Real(v));
    }

    let r = |name: &str| residuals[name].0;
    let non_pd = per_point.iter().filter(|p| p.not_positive > 0.0).count();
    let mut checks = vec![
        check("determinant", r("det"), tol.det),
        check("inverse_consistency", r("inverse"), tol.inverse),
        check("inverse_identity", r("identity"), tol.inverse),
        check("metric_hermitian", r("hermitian"), tol.det),
        Check {
            name: "metric_positive_definite".to_string(),
            pass: non_pd == 0,
            expected_fail: false,
            detail: format!(
                "{non_pd} of {} points not positive definite",
                per_point.len()
            ),
        },
        check("ricci", r("ricci"), tol.ricci),
        check("hamiltonian_field_closed_form", r("field"), tol.field),
        check("convention_consistency", r("convention"), tol.field),
        check("hamiltonian_field_reality", r("reality"), tol.field),
        check("bracket_structure_constants", r("bracket"), tol.bracket),
        check("bracket_field_consistency", r("bracket_field"), tol.bracket),
        check(
            "polarization_n_basis",
            r("polarization_n"),
            tol.polarization,
        ),
        check(
            "polarization_holomorphic",
            r("polarization_holomorphic"),
            tol.polarization,
        ),
    ];
    checks.push(Check {
        name: "polarization_negative_control".to_string(),
        pass: control_min > tol.polarization,
        expected_fail: true,
        detail: format!(
            "(conj z1)^2 must fail: min residual {} > {}",
            Real(control_min).format(),
            Real(tol.polarization).format()
        ),
    });

    let mut counts = BTreeMap::new();
    counts.insert("points".to_string(), per_point.len() as u64);
    counts.insert("basis_pairs".to_string(), (params.m() as u64).pow(4));

    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        command: "verify".to_string(),
        params: echo(params),
        seed: Some(config.seed),
        n_samples: config.samples,
        tolerances,
        residuals,
        counts,
        checks,
        pass: false,
    }
    .finalize())
}

pub fn echo(params: &OscillatorParams) -> ParamsEcho {
    ParamsEcho {
        m: params.m(),
        a: Real(params.a()),
        hbar: params.hbar().to_string(),
        even_m_only: params.is_strict(),
    }
}
