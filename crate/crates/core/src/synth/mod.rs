//! Permutation-to-circuit synthesis.
//!
//! `synthesize` runs three phases: NOT gates so that `0` is fixed, rounds of
//! `Q = [P_e, P_map, T_ms, P_map^{-1}, P_e^{-1}]` that each fix `2^m` points,
//! and a rest synthesizer for the small residual support.

mod reduce;
mod rest;
mod select;
mod stages;
mod working;

#[cfg(test)]
mod tests;

pub use reduce::{reduce_support, reduction_m, Reduction};
pub use rest::{rest_improved, rest_naive};
pub use select::{select_pairs_distinct, select_pairs_independent, PairSelection};
pub use stages::{
    build_pe, build_pe_greedy, build_pmap, build_pmap_extended, build_q, fix_zero, main_swap,
    pe_construction, transposition_circuit, PeConstruction,
};

use crate::circuit::Circuit;
use crate::circuit::{CostModel, PhaseStats, SynthReport};
use crate::f2linalg::{default_section_size, LinalgError};
use crate::permutation::{Permutation, PermutationError};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, thiserror::Error)]
pub enum SynthError {
    #[error("found only {found} of {needed} required pairs")]
    InsufficientPairs { found: usize, needed: usize },
    #[error("P_map with m = {m} does not fit {n} wires")]
    PatternOverlap { m: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Permutation(#[from] PermutationError),
    #[error("width {n} is not supported")]
    TooWide { n: usize },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("value {0} appears more than once")]
    DuplicateValues(usize),
    #[error("value 0 cannot be mapped")]
    ZeroValue,
    #[error("transposition of {0} with itself")]
    EqualValues(usize),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RestStrategy {
    #[default]
    Naive,
    Improved,
}

impl fmt::Display for RestStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RestStrategy::Naive => "naive",
            RestStrategy::Improved => "improved",
        })
    }
}

impl FromStr for RestStrategy {
    type Err = SynthError;
    fn from_str(s: &str) -> Result<Self, SynthError> {
        match s {
            "naive" => Ok(RestStrategy::Naive),
            "improved" => Ok(RestStrategy::Improved),
            other => Err(SynthError::InvalidParameter(format!(
                "unknown rest strategy {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SynthOptions {
    pub rest_strategy: RestStrategy,
    pub cost_model: CostModel,
    /// PMH section size; `None` picks `round(log2(n) / 2)`.
    pub pmh_section: Option<usize>,
}

/// Widest permutation accepted by `synthesize`.
pub const MAX_SYNTH_WIDTH: usize = crate::permutation::MAX_WIDTH;

fn phase(name: &str, c: &Circuit, model: &CostModel, savings: u64) -> PhaseStats {
    PhaseStats {
        phase: name.to_string(),
        gates: c.len(),
        elementary: model.circuit_cost(c),
        shared_toffoli_savings: savings,
    }
}

/// Returns a circuit `C` with `C` simulating to `P`, plus statistics.
pub fn synthesize(
    p: &Permutation,
    opts: &SynthOptions,
) -> Result<(Circuit, SynthReport), SynthError> {
    let n = p.width();
    if n == 0 || n > MAX_SYNTH_WIDTH {
        return Err(SynthError::TooWide { n });
    }
    let section = match opts.pmh_section {
        Some(0) => return Err(SynthError::InvalidParameter("PMH section size 0".into())),
        Some(s) => s,
        None => default_section_size(n),
    };
    let model = &opts.cost_model;
    let support_initial = p.support_size();

    let (t0, p0) = fix_zero(p);
    let red = reduce_support(&p0, section)?;
    let residual = &red.residual;

    let (rest, savings) = match opts.rest_strategy {
        RestStrategy::Naive => (rest_naive(residual)?, 0),
        RestStrategy::Improved => {
            let out = rest::rest_improved_outcome(residual)?;
            let per_group = |k: usize| {
                ((k as u64 - 1) * model.toffoli_cost)
                    .saturating_sub((2 * k as u64 - 2) * model.cnot_cost)
            };
            let s = out
                .shared_toffoli_groups
                .iter()
                .map(|&k| per_group(k))
                .sum();
            (out.circuit, s)
        }
    };

    let mut reduction = Circuit::new(n);
    for q in red.rounds.iter().rev() {
        reduction.extend(q);
    }

    let mut circuit = Circuit::new(n);
    circuit.extend(&rest);
    circuit.extend(&reduction);
    circuit.extend(&t0);

    let phase_breakdown = vec![
        phase("fix_zero", &t0, model, 0),
        phase("reduce_support", &reduction, model, 0),
        phase("rest", &rest, model, savings),
    ];
    let report = SynthReport {
        iterations: red.rounds.len(),
        pairs_per_iteration: red.round_pairs.iter().map(Vec::len).collect(),
        gate_count: circuit.len(),
        elementary_estimate: model.circuit_cost(&circuit),
        support_initial,
        support_after_reduction: residual.support_size(),
        phase_breakdown,
    };
    Ok((circuit, report))
}
