//! CNOT-network synthesis of invertible GF(2) linear maps.
//!
//! A row operation `row[t] ^= row[c]` on the working matrix corresponds to a
//! CNOT with control wire `c + 1` and target wire `t + 1`. Both routines
//! reduce `M` to the identity with such operations and then emit them in the
//! order that makes the circuit compute `x ↦ M x`.

use super::matrix::BitMatrix;
use super::LinalgError;
use crate::circuit::{Circuit, Gate};

/// Default partition size for [`pmh_synthesize`]: `max(1, round(log2(n) / 2))`.
pub fn default_section_size(n: usize) -> usize {
    if n < 2 {
        return 1;
    }
    (((n as f64).log2() / 2.0).round() as usize).max(1)
}

type RowOp = (usize, usize);

#[inline]
fn bit(row: u64, n: usize, col: usize) -> bool {
    row >> (n - 1 - col) & 1 == 1
}

/// Clears everything below the diagonal, leaving a unit upper-triangular
/// matrix. With `dedup`, each column section first cancels repeated
/// sub-row patterns (the partitioned elimination step).
fn lower_eliminate(
    rows: &mut [u64],
    n: usize,
    section: usize,
    dedup: bool,
) -> Result<Vec<RowOp>, LinalgError> {
    let mut ops = Vec::new();
    let mut sec_start = 0;
    while sec_start < n {
        let sec_end = (sec_start + section).min(n);
        let width = sec_end - sec_start;
        if dedup {
            let shift = n - sec_end;
            let pmask = (1u64 << width) - 1;
            let mut seen: Vec<Option<usize>> = vec![None; 1 << width];
            for r in sec_start..n {
                let p = (rows[r] >> shift & pmask) as usize;
                if p == 0 {
                    continue;
                }
                match seen[p] {
                    Some(first) => {
                        rows[r] ^= rows[first];
                        ops.push((first, r));
                    }
                    None => seen[p] = Some(r),
                }
            }
        }
        for col in sec_start..sec_end {
            let mut diag_one = bit(rows[col], n, col);
            for r in col + 1..n {
                if bit(rows[r], n, col) {
                    if !diag_one {
                        rows[col] ^= rows[r];
                        ops.push((r, col));
                        diag_one = true;
                    }
                    rows[r] ^= rows[col];
                    ops.push((col, r));
                }
            }
            if !diag_one {
                return Err(LinalgError::SingularMatrix);
            }
        }
        sec_start = sec_end;
    }
    Ok(ops)
}

fn check_square(m: &BitMatrix) -> Result<usize, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

/// Partitioned Gaussian elimination (Patel–Markov–Hayes): `O(n²/log n)`
/// CNOTs for an invertible `n × n` matrix.
pub fn pmh_synthesize(m: &BitMatrix, section_size: usize) -> Result<Circuit, LinalgError> {
    assert!(section_size >= 1, "section size must be positive");
    let n = check_square(m)?;
    let mut rows = m.rows_packed();
    let lower = lower_eliminate(&mut rows, n, section_size, true)?;
    // rows is now unit upper triangular U; eliminate U^T the same way. Each
    // row op on U^T is a column op on U, i.e. a CNOT with roles swapped.
    let mut rows_t = BitMatrix::from_rows(n, &rows).transpose().rows_packed();
    let upper = lower_eliminate(&mut rows_t, n, section_size, true)?;

    let mut circuit = Circuit::new(n);
    for &(c, t) in &upper {
        circuit.push(Gate::cnot(t + 1, c + 1));
    }
    for &(c, t) in lower.iter().rev() {
        circuit.push(Gate::cnot(c + 1, t + 1));
    }
    Ok(circuit)
}

/// Plain Gaussian elimination: below the diagonal first, then back
/// substitution above it. `O(n²)` CNOTs; baseline for [`pmh_synthesize`].
pub fn gaussian_synthesize(m: &BitMatrix) -> Result<Circuit, LinalgError> {
    let n = check_square(m)?;
    let mut rows = m.rows_packed();
    let mut ops = lower_eliminate(&mut rows, n, 1, false)?;
    for col in (0..n).rev() {
        for r in 0..col {
            if bit(rows[r], n, col) {
                rows[r] ^= rows[col];
                ops.push((col, r));
            }
        }
    }
    let mut circuit = Circuit::new(n);
    for &(c, t) in ops.iter().rev() {
        circuit.push(Gate::cnot(c + 1, t + 1));
    }
    Ok(circuit)
}
