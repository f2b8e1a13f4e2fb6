use super::select::select_independent;
use super::stages::{build_pe, build_pmap, build_q, main_swap};
use super::working::WorkingPerm;
use super::SynthError;
use crate::circuit::Circuit;
use crate::permutation::Permutation;

/// Output of the support-reduction loop.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// `Q_1 … Q_d` in generation order; each is an involution.
    pub rounds: Vec<Circuit>,
    /// Pairs swapped by each round.
    pub round_pairs: Vec<Vec<(usize, usize)>>,
    /// `P_r = Q_d ⋯ Q_1 P`.
    pub residual: Permutation,
}

/// `m = ⌊log2 n⌋ − 1`, or `None` when the reduction does not apply (n < 4).
pub fn reduction_m(n: usize) -> Option<usize> {
    (n >= 4).then(|| n.ilog2() as usize - 1)
}

/// Repeats: select `2^(m−1)` independent pairs, build
/// `Q = [P_e, P_map, T_ms, P_map^{-1}, P_e^{-1}]`, update `P ← Q P`; until
/// selection fails. The residual then has `|S| ≤ 2^(n/2−1)`.
pub fn reduce_support(p: &Permutation, pmh_section: usize) -> Result<Reduction, SynthError> {
    if p.apply(0) != 0 {
        return Err(SynthError::InvalidParameter(
            "reduce_support needs P(0) = 0; apply fix_zero first".into(),
        ));
    }
    let n = p.width();
    let Some(m) = reduction_m(n) else {
        return Ok(Reduction {
            rounds: vec![],
            round_pairs: vec![],
            residual: p.clone(),
        });
    };
    let pmap = build_pmap(m, n)?;
    let swap = main_swap(m, n)?;
    let mut work = WorkingPerm::new(p);
    let mut rounds = Vec::new();
    let mut round_pairs = Vec::new();
    loop {
        let sel = match select_independent(&work, m) {
            Ok(sel) => sel,
            Err(SynthError::InsufficientPairs { .. }) => break,
            Err(e) => return Err(e),
        };
        let pe = build_pe(&sel, pmh_section)?;
        let q = build_q(&pe, &pmap, swap.clone());
        debug_assert!(sel
            .pairs
            .iter()
            .all(|&(a, b)| q.apply(a as u64) == b as u64 && q.apply(b as u64) == a as u64));
        work.left_swap(&sel.pairs);
        rounds.push(q);
        round_pairs.push(sel.pairs);
    }
    Ok(Reduction {
        rounds,
        round_pairs,
        residual: work.into_permutation(),
    })
}
