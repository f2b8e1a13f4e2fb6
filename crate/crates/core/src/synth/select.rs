//! Choosing the pairs `(i, f(i))` that one round of the reduction swaps back.

use super::working::MovedPoints;
use super::SynthError;
use crate::f2linalg::{BitMatrix, SpanTracker};
use crate::permutation::Permutation;

/// Pairs chosen for one reduction round plus the matrices that drive `P_e`.
///
/// `v = [a_1 b_1 a_2 b_2 … | aug…]` holds the selected values as columns.
/// `u` agrees with `v` except where `b_t` was linearly dependent on the
/// columns before it; there a filler column is substituted (recorded in
/// `fillers` as 1-based column and value). Both are augmented with the same
/// columns to full rank `n × n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSelection {
    pub pairs: Vec<(usize, usize)>,
    pub fillers: Vec<(usize, u64)>,
    pub u: BitMatrix,
    pub v: BitMatrix,
}

impl PairSelection {
    /// `[a_1, b_1, a_2, b_2, …]`.
    pub fn values(&self) -> Vec<usize> {
        self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect()
    }
}

fn needed_pairs(m: usize) -> Result<usize, SynthError> {
    if m == 0 || m > 32 {
        return Err(SynthError::InvalidParameter(format!(
            "m = {m} must be in 1..=32"
        )));
    }
    Ok(1 << (m - 1))
}

pub(crate) fn select_independent<P: MovedPoints + ?Sized>(
    p: &P,
    m: usize,
) -> Result<PairSelection, SynthError> {
    let need = needed_pairs(m)?;
    let n = p.width();
    if 2 * need > n {
        return Err(SynthError::InvalidParameter(format!(
            "2^{m} columns do not fit in {n} wires"
        )));
    }
    let mut span = SpanTracker::new(n);
    let mut pairs = Vec::with_capacity(need);
    let mut fillers = Vec::new();
    let mut ucols: Vec<u64> = Vec::with_capacity(n);
    let mut vcols: Vec<u64> = Vec::with_capacity(n);
    for i in p.moved_ascending() {
        if pairs.len() == need {
            break;
        }
        let x = p.image(i);
        let (iv, xv) = (i as u64, x as u64);
        if span.contains(iv) || span.contains(xv) {
            continue;
        }
        pairs.push((i, x));
        vcols.extend([iv, xv]);
        span.insert(iv);
        ucols.push(iv);
        if span.insert(xv) {
            ucols.push(xv);
        } else {
            let z = span
                .smallest_outside()
                .expect("fewer than n columns leave room for a filler");
            span.insert(z);
            ucols.push(z);
            fillers.push((ucols.len(), z));
        }
    }
    if pairs.len() < need {
        return Err(SynthError::InsufficientPairs {
            found: pairs.len(),
            needed: need,
        });
    }
    while let Some(z) = span.smallest_outside() {
        span.insert(z);
        ucols.push(z);
        vcols.push(z);
    }
    Ok(PairSelection {
        pairs,
        fillers,
        u: BitMatrix::from_columns(n, &ucols),
        v: BitMatrix::from_columns(n, &vcols),
    })
}

/// Selects `2^(m−1)` pairs `(i, f(i))` whose vectors stay outside the span
/// of everything chosen before them, scanning the support in ascending order.
///
/// Fails with [`SynthError::InsufficientPairs`] when the support runs out,
/// which is the signal that ends the reduction loop.
pub fn select_pairs_independent(p: &Permutation, m: usize) -> Result<PairSelection, SynthError> {
    select_independent(p, m)
}

pub(crate) fn select_distinct<P: MovedPoints + ?Sized>(
    p: &P,
    m: usize,
) -> Result<Vec<(usize, usize)>, SynthError> {
    let need = needed_pairs(m)?;
    let mut used = std::collections::HashSet::with_capacity(2 * need);
    let mut pairs = Vec::with_capacity(need);
    for i in p.moved_ascending() {
        if pairs.len() == need {
            break;
        }
        let x = p.image(i);
        if used.contains(&i) || used.contains(&x) {
            continue;
        }
        used.insert(i);
        used.insert(x);
        pairs.push((i, x));
    }
    if pairs.len() < need {
        return Err(SynthError::InsufficientPairs {
            found: pairs.len(),
            needed: need,
        });
    }
    Ok(pairs)
}

/// Greedily selects `2^(m−1)` pairs `(i, f(i))` whose `2^m` values are
/// pairwise distinct. Always succeeds when `|S_P| > 3·2^(m−1) − 3`.
pub fn select_pairs_distinct(p: &Permutation, m: usize) -> Result<Vec<(usize, usize)>, SynthError> {
    select_distinct(p, m)
}
