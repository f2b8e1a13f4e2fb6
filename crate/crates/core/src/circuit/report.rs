use serde::{Deserialize, Serialize};

/// Gate and elementary-cost totals for one pipeline phase.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseStats {
    pub phase: String,
    pub gates: usize,
    pub elementary: u64,
    /// Elementary gates saved if each group of Toffolis sharing both
    /// controls (extended `P_map`) is realized as `2k − 2` CNOTs plus one
    /// Toffoli. Reported only; `elementary` prices the gate list as emitted.
    pub shared_toffoli_savings: u64,
}

/// Statistics of one synthesis run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthReport {
    /// Rounds of the support-reduction loop.
    pub iterations: usize,
    pub pairs_per_iteration: Vec<usize>,
    pub gate_count: usize,
    /// Always the sum of per-gate costs of the emitted circuit.
    pub elementary_estimate: u64,
    pub support_initial: usize,
    pub support_after_reduction: usize,
    pub phase_breakdown: Vec<PhaseStats>,
}

impl SynthReport {
    pub fn phase(&self, name: &str) -> Option<&PhaseStats> {
        self.phase_breakdown.iter().find(|p| p.phase == name)
    }
}
