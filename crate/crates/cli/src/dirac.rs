//! Exhaustive exact check of the Dirac condition on the `N` basis.

use std::collections::BTreeMap;

use genosc_core::geometry::OscillatorParams;
use genosc_core::observables::AlgebraElement;
use genosc_core::quantize::dirac_residual;
use genosc_core::Error;
use rayon::prelude::*;

use crate::report::{Check, VerificationReport, SCHEMA_VERSION, TOOL_VERSION};
use crate::verify::echo;
use crate::workers::with_workers;

/// Pair count above which a warning is printed.
pub const DEFAULT_PAIR_BUDGET: u64 = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct DiracOutcome {
    pub report: VerificationReport,
    /// Set when `m⁴` exceeded the budget.
    pub over_budget: bool,
}

pub fn run_dirac(
    params: &OscillatorParams,
    l: u32,
    pair_budget: u64,
    workers: usize,
) -> Result<DiracOutcome, Error> {
    let m = params.m();
    let pairs = (m as u64).pow(4);
    let basis: Vec<AlgebraElement> = (0..m * m)
        .map(|k| AlgebraElement::basis(m, k / m, k % m))
        .collect::<Result<_, _>>()?;
    let index_pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (0..basis.len()).map(move |j| (i, j)))
        .collect();
    let results: Vec<Result<usize, Error>> = with_workers(workers, || {
        index_pairs
            .par_iter()
            .map(|&(i, j)| dirac_residual(&basis[i], &basis[j], l).map(|r| r.nnz()))
            .collect()
    });
    let mut nonzero_pairs = 0u64;
    let mut nonzero_entries = 0u64;
    for r in results {
        let nnz = r?;
        if nnz > 0 {
            nonzero_pairs += 1;
            nonzero_entries += nnz as u64;
        }
    }
    let mut counts = BTreeMap::new();
    counts.insert("pairs_checked".to_string(), index_pairs.len() as u64);
    counts.insert("nonzero_residuals".to_string(), nonzero_pairs);
    counts.insert("nonzero_entries".to_string(), nonzero_entries);
    counts.insert("degree".to_string(), u64::from(l));
    let check = Check {
        name: "dirac_exact".to_string(),
        pass: nonzero_pairs == 0,
        expected_fail: false,
        detail: format!(
            "[Q(N^ab), Q(N^cd)] + i hbar Q({{N^ab, N^cd}}) = 0 exactly for {} of {} pairs",
            index_pairs.len() as u64 - nonzero_pairs,
            index_pairs.len()
        ),
    };
    let report = VerificationReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        command: "dirac".to_string(),
        params: echo(params),
        seed: None,
        n_samples: 0,
        tolerances: BTreeMap::new(),
        residuals: BTreeMap::new(),
        counts,
        checks: vec![check],
        pass: false,
    }
    .finalize();
    Ok(DiracOutcome {
        report,
        over_budget: pairs > pair_budget,
    })
}
