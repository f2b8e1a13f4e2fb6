//! Linear algebra over GF(2) and synthesis of linear reversible maps into
//! CNOT networks.

mod bitvec;
mod cnot;
mod matrix;
mod span;

pub use bitvec::{entry_mask, full_mask, BitVec, MAX_DIM};
pub use cnot::{default_section_size, gaussian_synthesize, pmh_synthesize};
pub use matrix::BitMatrix;
pub use span::SpanTracker;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular over GF(2)")]
    SingularMatrix,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left:?} times {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// True iff `v` lies in the span tracked by `tracker`.
pub fn span_contains(tracker: &SpanTracker, v: BitVec) -> bool {
    assert_eq!(tracker.dim(), v.len(), "dimension mismatch");
    tracker.contains(v)
}
