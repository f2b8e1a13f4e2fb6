use serde::{Deserialize, Serialize};

use super::{Circuit, Gate};

/// Which linear formula prices `C^mNOT` for `3 ≤ m ≤ ⌊n/2⌋`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MctSmallFormula {
    /// `12m − 22`.
    #[default]
    #[serde(rename = "12m22")]
    TwelveM22,
    /// `14m − 22`.
    #[serde(rename = "14m22")]
    FourteenM22,
}

/// Cost bucket of a gate, by control count `m` on an `n`-wire circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateClass {
    Not,
    Cnot,
    Toffoli,
    /// `3 ≤ m ≤ ⌊n/2⌋`.
    MctSmall,
    /// `⌊n/2⌋ < m ≤ n − 2`.
    MctLarge,
    /// `m = n − 1`.
    MctFull,
}

impl GateClass {
    pub fn of(m: usize, n: usize) -> GateClass {
        match m {
            0 => GateClass::Not,
            1 => GateClass::Cnot,
            2 => GateClass::Toffoli,
            m if m + 1 >= n => GateClass::MctFull,
            m if m <= n / 2 => GateClass::MctSmall,
            _ => GateClass::MctLarge,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GateClass::Not => "NOT",
            GateClass::Cnot => "CNOT",
            GateClass::Toffoli => "Toffoli",
            GateClass::MctSmall => "MCT(3..n/2)",
            GateClass::MctLarge => "MCT(n/2+1..n-2)",
            GateClass::MctFull => "MCT(n-1)",
        }
    }
}

/// Elementary-gate accounting for mixed-polarity MCT gates.
///
/// Base cost by control count `m` on `n` wires: NOT and CNOT cost 1, a
/// Toffoli `toffoli_cost`, `C^mNOT` for `3 ≤ m ≤ ⌊n/2⌋` costs `12m − 22`
/// (or `14m − 22`), for `⌊n/2⌋ < m ≤ n − 2` costs `24m − 40`, and
/// `C^(n−1)NOT` costs `mct_full_factor · n²`. Each negative control adds
/// `neg_control_surcharge` (a NOT before and after).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CostModel {
    pub not_cost: u64,
    pub cnot_cost: u64,
    pub toffoli_cost: u64,
    pub mct_small_formula: MctSmallFormula,
    pub mct_full_factor: u64,
    pub neg_control_surcharge: u64,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel {
            not_cost: 1,
            cnot_cost: 1,
            toffoli_cost: 15,
            mct_small_formula: MctSmallFormula::TwelveM22,
            mct_full_factor: 1,
            neg_control_surcharge: 2,
        }
    }
}

impl CostModel {
    pub fn mct_small(&self, m: u64) -> u64 {
        match self.mct_small_formula {
            MctSmallFormula::TwelveM22 => 12 * m - 22,
            MctSmallFormula::FourteenM22 => 14 * m - 22,
        }
    }

    pub fn mct_large(&self, m: u64) -> u64 {
        24 * m - 40
    }

    pub fn mct_full(&self, n: u64) -> u64 {
        self.mct_full_factor * n * n
    }

    /// Cost of an all-positive gate with `m` controls on `n` wires.
    pub fn base_cost(&self, m: usize, n: usize) -> u64 {
        let (m64, n64) = (m as u64, n as u64);
        match GateClass::of(m, n) {
            GateClass::Not => self.not_cost,
            GateClass::Cnot => self.cnot_cost,
            GateClass::Toffoli => self.toffoli_cost,
            GateClass::MctSmall => self.mct_small(m64),
            GateClass::MctLarge => self.mct_large(m64),
            GateClass::MctFull => self.mct_full(n64),
        }
    }

    pub fn gate_cost(&self, gate: &Gate, n: usize) -> u64 {
        self.base_cost(gate.num_controls(), n)
            + self.neg_control_surcharge * gate.negative_controls().len() as u64
    }

    pub fn circuit_cost(&self, circuit: &Circuit) -> u64 {
        circuit
            .gates()
            .iter()
            .map(|g| self.gate_cost(g, circuit.width()))
            .sum()
    }
}

/// Sum of per-gate elementary costs under `model`.
pub fn elementary_cost(circuit: &Circuit, model: &CostModel) -> u64 {
    model.circuit_cost(circuit)
}
