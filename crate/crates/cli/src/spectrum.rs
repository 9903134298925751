//! Spectrum of the quantized Hamiltonian, degree by degree.

use genosc_core::geometry::OscillatorParams;
use genosc_core::quantize::{binomial, spectrum_of_h};
use genosc_core::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use std::fmt::Write as _;

use crate::report::ParamsEcho;
use crate::report::{SCHEMA_VERSION, TOOL_VERSION};
use crate::verify::echo;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub l: u32,
    /// Eigenvalue in units of ħ, exact (`p/q`).
    pub eigenvalue_hbar: String,
    /// Eigenvalue at the configured ħ, exact.
    pub eigenvalue: String,
    pub multiplicity: u64,
    /// Assembled operator equals `(l + m/2) ħ I` with the expected multiplicity.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: String,
    pub params: ParamsEcho,
    pub lmax: u32,
    pub rows: Vec<SpectrumRow>,
    pub pass: bool,
}

impl SpectrumReport {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "m = {}  hbar = {}", self.params.m, self.params.hbar);
        let _ = writeln!(
            out,
            "{:>4}  {:>12}  {:>12}  verified",
            "l", "E/hbar", "mult"
        );
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{:>4}  {:>12}  {:>12}  {}",
                row.l, row.eigenvalue_hbar, row.multiplicity, row.verified
            );
        }
        let _ = writeln!(out, "overall: {}", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}

pub fn run_spectrum(params: &OscillatorParams, lmax: u32) -> Result<SpectrumReport, Error> {
    let m = params.m();
    let mut rows = Vec::with_capacity(lmax as usize + 1);
    for l in 0..=lmax {
        let s = spectrum_of_h(params, l)?;
        // (l + m/2) = (2l + m)/2
        let expected = BigRational::new(BigInt::from(2 * u64::from(l) + m as u64), BigInt::from(2));
        let expected_mult = binomial(u64::from(l) + m as u64 - 1, m as u64 - 1);
        rows.push(SpectrumRow {
            l,
            eigenvalue_hbar: s.eigenvalue_hbar_units.to_string(),
            eigenvalue: s.eigenvalue.to_string(),
            multiplicity: s.multiplicity as u64,
            verified: s.eigenvalue_hbar_units == expected && s.multiplicity as u64 == expected_mult,
        });
    }
    let pass = rows.iter().all(|r| r.verified);
    Ok(SpectrumReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        command: "spectrum".to_string(),
        params: echo(params),
        lmax,
        rows,
        pass,
    })
}
