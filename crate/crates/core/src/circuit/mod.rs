//! Gate-list IR for reversible circuits, the exact simulator used as the
//! correctness oracle, the elementary-gate cost model and the text format.

mod cost;
mod gate;
mod report;
mod text;

pub use cost::{elementary_cost, CostModel, GateClass, MctSmallFormula};
pub use gate::Gate;
pub use report::{PhaseStats, SynthReport};

use thiserror::Error;

use crate::f2linalg::{full_mask, MAX_DIM};
use crate::permutation::Permutation;

/// Widest circuit [`Circuit::simulate`] will tabulate.
pub const MAX_SIM_WIDTH: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("wire {wire} out of range for width {width}")]
    WireOutOfRange { wire: usize, width: usize },
    #[error("width {n} is outside the simulation range 1..={MAX_SIM_WIDTH}")]
    TooWide { n: usize },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// An ordered gate list on `width` wires. The first gate acts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        assert!(width <= MAX_DIM, "width {width} exceeds {MAX_DIM}");
        Circuit {
            width,
            gates: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn try_push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        let wire = gate.max_wire();
        if wire > self.width {
            return Err(CircuitError::WireOutOfRange {
                wire,
                width: self.width,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Panics if the gate does not fit the circuit width.
    pub fn push(&mut self, gate: Gate) {
        self.try_push(gate).expect("gate fits circuit width");
    }

    /// Appends all gates of `other` (which acts after `self`).
    pub fn extend(&mut self, other: &Circuit) {
        assert_eq!(self.width, other.width, "width mismatch");
        self.gates.extend_from_slice(&other.gates);
    }

    /// Every gate is self-inverse, so the inverse is the reversed list.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().cloned().collect(),
        }
    }

    /// Image of one packed basis state.
    pub fn apply(&self, x: u64) -> u64 {
        debug_assert!(x & !full_mask(self.width) == 0);
        self.gates.iter().fold(x, |x, g| {
            let c = g.compile(self.width);
            if x & c.mask == c.value {
                x ^ c.flip
            } else {
                x
            }
        })
    }

    /// The permutation computed by the circuit on all `2^width` basis states.
    pub fn simulate(&self) -> Result<Permutation, CircuitError> {
        let n = self.width;
        if n == 0 || n > MAX_SIM_WIDTH {
            return Err(CircuitError::TooWide { n });
        }
        // Track F^{-1}: after gate g, F' = g∘F so F'^{-1}(y) = F^{-1}(g(y)).
        // Only states matching the controls move, so each gate costs
        // 2^(n - controls - 1) swaps instead of a full pass.
        let size = 1usize << n;
        let mut inv: Vec<u32> = (0..size as u32).collect();
        let all = full_mask(n);
        for g in &self.gates {
            let c = g.compile(n);
            let free = all & !(c.mask | c.flip);
            let mut s = 0u64;
            loop {
                let y = (s | c.value) as usize;
                inv.swap(y, y | c.flip as usize);
                if s == free {
                    break;
                }
                s = s.wrapping_sub(free) & free;
            }
        }
        let mut images = vec![0usize; size];
        for (y, &x) in inv.iter().enumerate() {
            images[x as usize] = y;
        }
        Ok(Permutation::from_images(n, images).expect("gate circuits are bijective"))
    }
}
