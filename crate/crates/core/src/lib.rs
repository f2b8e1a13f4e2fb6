//! Synthesis of reversible circuits from permutations of `{0,1}^n`.
//!
//! Wire 1 is the most significant bit of a state index.

pub mod circuit;
pub mod f2linalg;
pub mod permutation;
pub mod synth;

pub use circuit::{elementary_cost, Circuit, CircuitError, CostModel, Gate, SynthReport};
pub use permutation::{Permutation, PermutationError};
pub use synth::{synthesize, RestStrategy, SynthError, SynthOptions};
