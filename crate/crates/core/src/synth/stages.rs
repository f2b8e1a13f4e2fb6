//! Circuit building blocks of one reduction round and of the rest part.

use super::select::PairSelection;
use super::SynthError;
use crate::circuit::{Circuit, Gate};
use crate::f2linalg::{entry_mask, pmh_synthesize, BitMatrix};
use crate::permutation::Permutation;

/// NOT gates clearing the set bits of `P(0)`, and `P' = T∘P` with
/// `P'(0) = 0`.
pub fn fix_zero(p: &Permutation) -> (Circuit, Permutation) {
    let n = p.width();
    let c = p.apply(0);
    let mut t = Circuit::new(n);
    for wire in 1..=n {
        if c as u64 & entry_mask(n, wire) != 0 {
            t.push(Gate::not(wire));
        }
    }
    if c == 0 {
        return (t, p.clone());
    }
    let images = p.images().iter().map(|&x| x ^ c).collect();
    let fixed = Permutation::from_images(n, images).expect("xor by a constant is a bijection");
    (t, fixed)
}

/// Circuit swapping basis states `a` and `b` and fixing all others.
///
/// With `c = a ⊕ b` and pivot `t` the first wire where `c` is 1: CNOTs from
/// `q_t` onto the other differing wires make `a` and `b` differ only at
/// `q_t`; a `C^(n−1)NOT` on `q_t` whose controls match the remaining bits
/// swaps them; the CNOT fan is then undone.
pub fn transposition_circuit(a: usize, b: usize, n: usize) -> Result<Circuit, SynthError> {
    if a == b {
        return Err(SynthError::EqualValues(a));
    }
    if n == 0 || n > 64 || (n < 64 && (a >> n != 0 || b >> n != 0)) {
        return Err(SynthError::InvalidParameter(format!(
            "({a} {b}) does not fit {n} wires"
        )));
    }
    let diff = (a ^ b) as u64;
    let pivot = (1..=n)
        .find(|&w| diff & entry_mask(n, w) != 0)
        .expect("a != b");
    let fan: Vec<Gate> = (pivot + 1..=n)
        .filter(|&w| diff & entry_mask(n, w) != 0)
        .map(|w| Gate::cnot(pivot, w))
        .collect();
    // The endpoint with a 0 at the pivot is untouched by the fan.
    let base = if a as u64 & entry_mask(n, pivot) == 0 {
        a
    } else {
        b
    } as u64;
    let (pos, neg): (Vec<usize>, Vec<usize>) = (1..=n)
        .filter(|&w| w != pivot)
        .partition(|&w| base & entry_mask(n, w) != 0);
    let mut c = Circuit::new(n);
    for g in &fan {
        c.push(g.clone());
    }
    c.push(Gate::new(pivot, pos, neg).expect("controls exclude the pivot"));
    for g in fan.into_iter().rev() {
        c.push(g);
    }
    Ok(c)
}

/// Intermediate products of the `P_e` construction, exposed for inspection.
#[derive(Clone, Debug)]
pub struct PeConstruction {
    /// `R_1 = U^{-1}`.
    pub r1: BitMatrix,
    /// `V' = R_1 V`.
    pub v_prime: BitMatrix,
    /// Triangular fix-up, in application order.
    pub toffolis: Vec<Gate>,
    /// `V'` after the fix-up: unit upper triangular.
    pub v_double_prime: BitMatrix,
    /// `R_2 = V''^{-1}`.
    pub r2: BitMatrix,
    /// `R_1` network, Toffolis, `R_2` network.
    pub circuit: Circuit,
}

/// Builds `P_e` for an independent selection: a CNOT network for
/// `R_1 = U^{-1}`, Toffolis that give `V'` a unit diagonal, and a CNOT
/// network for `R_2 = V''^{-1}`. Maps `a_t ↦ e_(2t−1)` and `b_t ↦ e_(2t)`.
pub fn pe_construction(sel: &PairSelection, section: usize) -> Result<PeConstruction, SynthError> {
    let n = sel.u.nrows();
    let r1 = sel.u.invert()?;
    let v_prime = r1.mul(&sel.v)?;
    let mut cols = v_prime.column_bits().to_vec();
    let mut toffolis = Vec::new();
    for t in 1..=n {
        let col = cols[t - 1];
        if col & entry_mask(n, t) != 0 {
            continue;
        }
        // Only an even column whose b_t needed a filler lands here; it has
        // the form e_(t−1) ⊕ Σ_(j<t−1) k_j e_j with some k_j = 1.
        if t < 3 || col & entry_mask(n, t - 1) == 0 {
            return Err(SynthError::Internal(format!(
                "column {t} of V' has no usable pivot"
            )));
        }
        let t_low = (1..t - 1)
            .find(|&j| col & entry_mask(n, j) != 0)
            .ok_or_else(|| SynthError::Internal(format!("column {t} of V' lacks a low entry")))?;
        let gate = Gate::toffoli(t - 1, t_low, t);
        for c in cols.iter_mut() {
            *c = gate.apply(n, *c);
        }
        toffolis.push(gate);
    }
    let v_double_prime = BitMatrix::from_columns(n, &cols);
    let r2 = v_double_prime.invert()?;

    let mut circuit = pmh_synthesize(&r1, section)?;
    for g in &toffolis {
        circuit.push(g.clone());
    }
    circuit.extend(&pmh_synthesize(&r2, section)?);
    Ok(PeConstruction {
        r1,
        v_prime,
        toffolis,
        v_double_prime,
        r2,
        circuit,
    })
}

pub fn build_pe(sel: &PairSelection, section: usize) -> Result<Circuit, SynthError> {
    pe_construction(sel, section).map(|pe| pe.circuit)
}

/// Gate on `target` controlled by the last `m` wires matching `pattern`
/// (MSB on wire `n − m + 1`).
fn pattern_gate(target: usize, pattern: usize, m: usize, n: usize) -> Gate {
    let (pos, neg): (Vec<usize>, Vec<usize>) = (1..=m)
        .map(|k| n - m + k)
        .partition(|&w| pattern >> (n - w) & 1 == 1);
    Gate::new(target, pos, neg).expect("pattern controls exclude the target")
}

/// Maps `e_i ↦ y_i = |10…0⟩_(n−m)|i−1⟩_m` for each wire `i` in `wires`
/// (all ≤ n − m, none equal to 1).
fn push_pmap_steps(c: &mut Circuit, wires: impl IntoIterator<Item = usize>, m: usize, n: usize) {
    for i in wires {
        let pattern = i - 1;
        c.push(Gate::cnot(i, 1));
        for k in 1..=m {
            let w = n - m + k;
            if pattern >> (n - w) & 1 == 1 {
                c.push(Gate::cnot(i, w));
            }
        }
        c.push(pattern_gate(i, pattern, m, n));
    }
}

/// `P_map` for `2^m < n − m`: sends `e_i` to `y_i` for `i = 1..=2^m`.
/// `e_1 = y_1` already, so it contributes no gates.
pub fn build_pmap(m: usize, n: usize) -> Result<Circuit, SynthError> {
    if m == 0 || m >= n || (1usize << m) >= n - m {
        return Err(SynthError::PatternOverlap { m, n });
    }
    let mut c = Circuit::new(n);
    push_pmap_steps(&mut c, 2..=1 << m, m, n);
    Ok(c)
}

/// `P_map` valid up to `m = ⌊log2 n⌋`, also when `2^m > n − m`.
///
/// Returns the circuit and, for each `e_t` with `t > n − m`, the number of
/// Toffolis sharing the controls `q_1, q_(i+1)`.
pub(crate) fn pmap_extended_with_groups(
    m: usize,
    n: usize,
) -> Result<(Circuit, Vec<usize>), SynthError> {
    if m == 0 || n < 2 || m > n.ilog2() as usize {
        return Err(SynthError::InvalidParameter(format!(
            "m = {m} outside 1..=floor(log2 {n})"
        )));
    }
    let count = 1usize << m;
    let block_start = n - m + 1;
    let ext: Vec<usize> = (block_start..=count).collect();
    // q_(i+1) must stay clear of the last-m block.
    if !ext.is_empty() && n < 2 * m + 1 {
        return Err(SynthError::PatternOverlap { m, n });
    }
    let mut c = Circuit::new(n);
    for &t in &ext {
        let i = t - (n - m);
        c.push(Gate::cnot(t, 1));
        c.push(Gate::cnot(t, i + 1));
    }
    let mut groups = Vec::with_capacity(ext.len());
    for &t in &ext {
        let i = t - (n - m);
        let pattern = t - 1;
        let one_hot = 1usize << (m - i);
        let diff = one_hot ^ pattern;
        let mut k_count = 0;
        for k in 1..=m {
            if diff >> (m - k) & 1 == 1 {
                c.push(Gate::toffoli(1, i + 1, n - m + k));
                k_count += 1;
            }
        }
        groups.push(k_count);
        c.push(pattern_gate(i + 1, pattern, m, n));
    }
    push_pmap_steps(&mut c, 2..=count.min(n - m), m, n);
    Ok((c, groups))
}

/// `P_map` with the extension for `e_t`, `t > n − m`: those are first moved
/// to `e'_t` (bits `1, i+1, t` with `t = n − m + i`), their last-`m` block
/// set to `t − 1` by Toffolis on `q_1, q_(i+1)`, and `q_(i+1)` cleared by a
/// pattern-controlled `C^mNOT`. The remaining `e_t` follow [`build_pmap`].
pub fn build_pmap_extended(m: usize, n: usize) -> Result<Circuit, SynthError> {
    pmap_extended_with_groups(m, n).map(|(c, _)| c)
}

/// The `C^(n−m)NOT` on `q_n` controlled by `|10…0⟩` on the first `n − m`
/// wires; swaps `y_(2t−1) ↔ y_(2t)` for every `t`.
pub fn main_swap(m: usize, n: usize) -> Result<Gate, SynthError> {
    if m == 0 || m + 2 > n {
        return Err(SynthError::InvalidParameter(format!(
            "main swap needs 1 <= m <= n - 2 (m = {m}, n = {n})"
        )));
    }
    Ok(Gate::new(n, [1], 2..=n - m).expect("target outside controls"))
}

/// Greedy `P_e` for distinct values: sends `values[t−1] ↦ e_t` one value at
/// a time, never disturbing `e_(t'<t)`.
pub fn build_pe_greedy(values: &[usize], n: usize) -> Result<Circuit, SynthError> {
    if values.len() > n {
        return Err(SynthError::InvalidParameter(format!(
            "{} values exceed {n} basis vectors",
            values.len()
        )));
    }
    let mut seen = std::collections::HashSet::new();
    for &v in values {
        if v == 0 {
            return Err(SynthError::ZeroValue);
        }
        if !seen.insert(v) {
            return Err(SynthError::DuplicateValues(v));
        }
        if n < 64 && v >> n != 0 {
            return Err(SynthError::InvalidParameter(format!(
                "{v} exceeds {n} bits"
            )));
        }
    }
    let ones = |v: u64| -> Vec<usize> { (1..=n).filter(|&w| v & entry_mask(n, w) != 0).collect() };
    let mut c = Circuit::new(n);
    for (idx, &value) in values.iter().enumerate() {
        let t = idx + 1;
        let v = c.apply(value as u64);
        if v & entry_mask(n, t) == 0 {
            match ones(v).as_slice() {
                [t1] => c.push(Gate::cnot(*t1, t)),
                [t1, t2, ..] => c.push(Gate::toffoli(*t1, *t2, t)),
                [] => unreachable!("bijection keeps nonzero values nonzero"),
            }
        }
        let v = c.apply(value as u64);
        for w in ones(v).into_iter().filter(|&w| w != t) {
            c.push(Gate::cnot(t, w));
        }
    }
    Ok(c)
}

/// `Q = P_e^{-1} P_map^{-1} T_ms P_map P_e` as a gate list.
pub fn build_q(pe: &Circuit, pmap: &Circuit, swap: Gate) -> Circuit {
    let mut q = pe.clone();
    q.extend(pmap);
    q.push(swap);
    q.extend(&pmap.inverse());
    q.extend(&pe.inverse());
    q
}
