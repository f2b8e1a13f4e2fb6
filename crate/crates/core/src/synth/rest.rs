//! Synthesis of the small-support residual.

use super::select::select_distinct;
use super::stages::{
    build_pe_greedy, build_q, main_swap, pmap_extended_with_groups, transposition_circuit,
};
use super::working::{MovedPoints, WorkingPerm};
use super::SynthError;
use crate::circuit::Circuit;
use crate::permutation::Permutation;

pub(crate) struct RestOutcome {
    pub circuit: Circuit,
    /// Sizes of shared-control Toffoli groups in the emitted `P_map` stages.
    pub shared_toffoli_groups: Vec<usize>,
}

/// Emits stage circuits generated as `T_k ⋯ T_1 P = I` (each an
/// involution) in the order that computes `P = T_1 ⋯ T_k`.
fn assemble(width: usize, stages: &[Circuit]) -> Circuit {
    let mut c = Circuit::new(width);
    for s in stages.iter().rev() {
        c.extend(s);
    }
    c
}

fn finish_with_transpositions(
    work: &mut WorkingPerm,
    stages: &mut Vec<Circuit>,
) -> Result<(), SynthError> {
    let n = work.width();
    while let Some(i) = work.smallest_moved() {
        let x = work.image(i);
        stages.push(transposition_circuit(i, x, n)?);
        work.left_swap(&[(i, x)]);
    }
    Ok(())
}

/// One transposition circuit per step: swap the smallest moved point back
/// into place until the support is empty. Simulates to `P`.
pub fn rest_naive(p: &Permutation) -> Result<Circuit, SynthError> {
    let mut work = WorkingPerm::new(p);
    let mut stages = Vec::new();
    finish_with_transpositions(&mut work, &mut stages)?;
    Ok(assemble(p.width(), &stages))
}

/// Largest `m ≤ ⌊log2 n⌋` whose extended `P_map` fits (`n ≥ 2m + 1`).
pub(crate) fn improved_start_m(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    let mut m = n.ilog2() as usize;
    while m > 0 && n < 2 * m + 1 {
        m -= 1;
    }
    m
}

pub(crate) fn rest_improved_outcome(p: &Permutation) -> Result<RestOutcome, SynthError> {
    if p.apply(0) != 0 {
        return Err(SynthError::InvalidParameter(
            "rest_improved needs P(0) = 0".into(),
        ));
    }
    let n = p.width();
    let mut work = WorkingPerm::new(p);
    let mut stages = Vec::new();
    let mut groups = Vec::new();
    let mut m = improved_start_m(n);
    while m >= 1 && work.support_size() > 0 {
        let pairs = match select_distinct(&work, m) {
            Ok(pairs) => pairs,
            Err(SynthError::InsufficientPairs { .. }) => {
                m -= 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let values: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        let pe = build_pe_greedy(&values, n)?;
        let (pmap, g) = pmap_extended_with_groups(m, n)?;
        let q = build_q(&pe, &pmap, main_swap(m, n)?);
        debug_assert!(pairs
            .iter()
            .all(|&(a, b)| q.apply(a as u64) == b as u64 && q.apply(b as u64) == a as u64));
        // P_map appears twice in Q.
        groups.extend(g.iter().chain(&g).copied());
        work.left_swap(&pairs);
        stages.push(q);
    }
    finish_with_transpositions(&mut work, &mut stages)?;
    Ok(RestOutcome {
        circuit: assemble(n, &stages),
        shared_toffoli_groups: groups,
    })
}

/// Rounds with distinct pairs, greedy `P_e` and extended `P_map`, starting
/// at `m = ⌊log2 n⌋` and lowering `m` whenever selection fails; once `m`
/// reaches 0 the at most 3 remaining points are finished by transpositions.
/// Simulates to `P`.
pub fn rest_improved(p: &Permutation) -> Result<Circuit, SynthError> {
    rest_improved_outcome(p).map(|o| o.circuit)
}
