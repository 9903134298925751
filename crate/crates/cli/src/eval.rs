//! Point evaluation of the metric or of an algebra element.
//!
//! The point is read as a JSON array of `[re, im]` pairs, one per
//! coordinate, e.g. `[[1, 0], [0.5, -2]]`.
//!
//! Elements are written as `H`, `N<a>,<b>` (one-based indices, e.g. `N1,2`),
//! `const:<rational>`, or a JSON object
//! `{"coeff": [[c11, c12], [c21, c22]], "constant": c}` where each `c` is a
//! number, a rational string such as `"3/2"`, or a `[re, im]` pair of those.

use genosc_core::geometry::{metric_at, OscillatorParams, PhasePoint};
use genosc_core::observables::{evaluate, AlgebraElement};
use genosc_core::rational::CRational;
use genosc_core::Complex64;
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::Value;

use crate::report::{ParamsEcho, Real, SCHEMA_VERSION, TOOL_VERSION};
use crate::verify::echo;

/// Malformed input; reported as a usage error.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn bad(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

pub fn parse_point(text: &str) -> Result<PhasePoint, InputError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| bad(format!("point is not valid JSON: {e}")))?;
    let items = value
        .as_array()
        .ok_or_else(|| bad("point must be a JSON array of [re, im] pairs"))?;
    if items.is_empty() {
        return Err(bad("point must have at least one coordinate"));
    }
    let mut z = Vec::with_capacity(items.len());
    for item in items {
        let pair = item
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| bad("each coordinate must be [re, im]"))?;
        let re = pair[0]
            .as_f64()
            .ok_or_else(|| bad("coordinate parts must be numbers"))?;
        let im = pair[1]
            .as_f64()
            .ok_or_else(|| bad("coordinate parts must be numbers"))?;
        z.push(Complex64::new(re, im));
    }
    Ok(PhasePoint::new(z))
}

pub fn parse_rational(text: &str) -> Result<BigRational, InputError> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| bad(format!("invalid rational '{text}'")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| bad(format!("invalid rational '{text}'")))?;
    if den.is_zero() {
        return Err(bad(format!("zero denominator in '{text}'")));
    }
    Ok(BigRational::new(num, den))
}

fn real_from_json(v: &Value) -> Result<BigRational, InputError> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(i.into()))
            } else {
                let f = n.as_f64().ok_or_else(|| bad("unrepresentable number"))?;
                BigRational::from_float(f).ok_or_else(|| bad("non-finite coefficient"))
            }
        }
        _ => Err(bad("coefficient must be a number or rational string")),
    }
}

fn complex_from_json(v: &Value) -> Result<CRational, InputError> {
    match v {
        Value::Array(parts) if parts.len() == 2 => Ok(Complex::new(
            real_from_json(&parts[0])?,
            real_from_json(&parts[1])?,
        )),
        other => Ok(Complex::new(real_from_json(other)?, BigRational::zero())),
    }
}

fn index(text: &str, m: usize) -> Result<usize, InputError> {
    let k: usize = text
        .trim()
        .parse()
        .map_err(|_| bad(format!("invalid index '{text}'")))?;
    if k == 0 || k > m {
        return Err(bad(format!("index {k} out of range 1..={m}")));
    }
    Ok(k - 1)
}

pub fn parse_element(text: &str, m: usize) -> Result<AlgebraElement, InputError> {
    let text = text.trim();
    if text == "H" {
        return Ok(AlgebraElement::hamiltonian(m));
    }
    if let Some(c) = text.strip_prefix("const:") {
        return Ok(AlgebraElement::constant(
            m,
            Complex::new(parse_rational(c)?, BigRational::zero()),
        ));
    }
    if let Some(rest) = text.strip_prefix('N') {
        let (a, b) = rest
            .split_once(',')
            .ok_or_else(|| bad("expected N<a>,<b>"))?;
        return AlgebraElement::basis(m, index(a, m)?, index(b, m)?)
            .map_err(|e| bad(e.to_string()));
    }
    let value: Value =
        serde_json::from_str(text).map_err(|_| bad(format!("unrecognised element '{text}'")))?;
    let rows = value
        .get("coeff")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("element object needs a 'coeff' matrix"))?;
    if rows.len() != m {
        return Err(bad(format!("'coeff' must have {m} rows")));
    }
    let mut coeff = Vec::with_capacity(m * m);
    for row in rows {
        let row = row
            .as_array()
            .filter(|r| r.len() == m)
            .ok_or_else(|| bad(format!("each row must have {m} entries")))?;
        for c in row {
            coeff.push(complex_from_json(c)?);
        }
    }
    let constant = match value.get("constant") {
        Some(c) => complex_from_json(c)?,
        None => CRational::zero(),
    };
    AlgebraElement::from_parts(m, coeff, constant).map_err(|e| bad(e.to_string()))
}

type Pair = [Real; 2];

fn pair(z: Complex64) -> Pair {
    [Real(z.re), Real(z.im)]
}

fn matrix(entries: &[Complex64], m: usize) -> Vec<Vec<Pair>> {
    entries
        .chunks(m)
        .map(|row| row.iter().copied().map(pair).collect())
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileEcho {
    pub u_prime: Real,
    pub u_double_prime: Real,
    pub s: Real,
    pub s_prime: Real,
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricEval {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub target: &'static str,
    pub params: ParamsEcho,
    pub point: Vec<Pair>,
    pub r: Real,
    pub profile: ProfileEcho,
    pub g: Vec<Vec<Pair>>,
    pub g_inv: Vec<Vec<Pair>>,
    pub det_g: Real,
    pub inverse_discrepancy: Real,
}

#[derive(Debug, Clone, Serialize)]
pub struct ElementEval {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub target: &'static str,
    pub params: ParamsEcho,
    pub point: Vec<Pair>,
    pub r: Real,
    pub element: String,
    pub value: Pair,
}

pub fn eval_metric(
    params: &OscillatorParams,
    p: &PhasePoint,
) -> Result<MetricEval, genosc_core::Error> {
    let md = metric_at(params, p)?;
    let m = params.m();
    Ok(MetricEval {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        command: "eval",
        target: "metric",
        params: echo(params),
        point: p.z().iter().copied().map(pair).collect(),
        r: Real(p.r()),
        profile: ProfileEcho {
            u_prime: Real(md.profile.u_prime),
            u_double_prime: Real(md.profile.u_double_prime),
            s: Real(md.profile.s),
            s_prime: Real(md.profile.s_prime),
        },
        g: matrix(&md.g, m),
        g_inv: matrix(&md.g_inv, m),
        det_g: Real(md.det_g),
        inverse_discrepancy: Real(md.inverse_discrepancy),
    })
}

pub fn eval_element(
    params: &OscillatorParams,
    p: &PhasePoint,
    spec: &str,
    element: &AlgebraElement,
) -> Result<ElementEval, genosc_core::Error> {
    let value = evaluate(element, params, p)?;
    Ok(ElementEval {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        command: "eval",
        target: "element",
        params: echo(params),
        point: p.z().iter().copied().map(pair).collect(),
        r: Real(p.r()),
        element: spec.to_string(),
        value: pair(value),
    })
}
