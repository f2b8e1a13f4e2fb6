use std::fmt;

use super::CircuitError;
use crate::f2linalg::entry_mask;

/// A mixed-polarity multi-controlled NOT.
///
/// Flips wire `target` iff every positive control is 1 and every negative
/// control is 0. Wires are 1-based; wire 1 is the most significant bit of a
/// basis-state integer. Control lists are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    target: usize,
    pos: Vec<usize>,
    neg: Vec<usize>,
}

/// A gate lowered to bit masks for a fixed width: state `x` is flipped by
/// `flip` iff `x & mask == value`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Compiled {
    pub mask: u64,
    pub value: u64,
    pub flip: u64,
}

impl Gate {
    pub fn new(
        target: usize,
        pos: impl IntoIterator<Item = usize>,
        neg: impl IntoIterator<Item = usize>,
    ) -> Result<Gate, CircuitError> {
        let mut pos: Vec<usize> = pos.into_iter().collect();
        let mut neg: Vec<usize> = neg.into_iter().collect();
        pos.sort_unstable();
        neg.sort_unstable();
        let mut all: Vec<usize> = pos.iter().chain(&neg).copied().collect();
        all.push(target);
        if all.contains(&0) {
            return Err(CircuitError::InvalidGate("wire indices are 1-based".into()));
        }
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(CircuitError::InvalidGate(format!(
                "repeated wire among target {target} and controls {pos:?}/{neg:?}"
            )));
        }
        Ok(Gate { target, pos, neg })
    }

    pub fn not(target: usize) -> Gate {
        Gate::new(target, [], []).expect("valid NOT")
    }

    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::new(target, [control], []).expect("valid CNOT")
    }

    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Gate {
        Gate::new(target, [c1, c2], []).expect("valid Toffoli")
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn positive_controls(&self) -> &[usize] {
        &self.pos
    }

    pub fn negative_controls(&self) -> &[usize] {
        &self.neg
    }

    pub fn num_controls(&self) -> usize {
        self.pos.len() + self.neg.len()
    }

    /// Largest wire index the gate touches.
    pub fn max_wire(&self) -> usize {
        self.pos
            .iter()
            .chain(&self.neg)
            .copied()
            .fold(self.target, usize::max)
    }

    pub(crate) fn compile(&self, n: usize) -> Compiled {
        let pos = self.pos.iter().fold(0, |m, &w| m | entry_mask(n, w));
        let neg = self.neg.iter().fold(0, |m, &w| m | entry_mask(n, w));
        Compiled {
            mask: pos | neg,
            value: pos,
            flip: entry_mask(n, self.target),
        }
    }

    /// Applies the gate to a packed basis state of width `n`.
    pub fn apply(&self, n: usize, x: u64) -> u64 {
        let c = self.compile(n);
        if x & c.mask == c.value {
            x ^ c.flip
        } else {
            x
        }
    }
}

/// `t <target> <ctrl>…` with controls `q<i>` / `-q<i>`.
impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t {}", self.target)?;
        // Emit controls in wire order, polarity inline.
        let mut ctrls: Vec<(usize, bool)> = self
            .pos
            .iter()
            .map(|&w| (w, true))
            .chain(self.neg.iter().map(|&w| (w, false)))
            .collect();
        ctrls.sort_unstable();
        for (w, positive) in ctrls {
            if positive {
                write!(f, " q{w}")?;
            } else {
                write!(f, " -q{w}")?;
            }
        }
        Ok(())
    }
}
