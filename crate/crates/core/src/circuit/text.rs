//! Line-oriented gate text:
//!
//! ```text
//! # width 4
//! t 4 q1 -q3
//! t 2 q1
//! t 1
//! ```
//!
//! One gate per line, target first, controls `q<i>` (fires on 1) or `-q<i>`
//! (fires on 0). Other lines starting with `#` and blank lines are ignored.

use std::fmt;
use std::str::FromStr;

use super::{Circuit, CircuitError, Gate};

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# width {}", self.width())?;
        for g in self.gates() {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

fn parse_wire(tok: &str) -> Option<usize> {
    tok.parse::<usize>().ok().filter(|&w| w >= 1)
}

impl FromStr for Circuit {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut circuit: Option<Circuit> = None;
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            let syntax = |message: String| CircuitError::Syntax {
                line: line_no,
                message,
            };
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                let mut toks = comment.split_whitespace();
                if toks.next() == Some("width") {
                    if circuit.is_some() {
                        return Err(syntax("duplicate width header".into()));
                    }
                    let n = toks
                        .next()
                        .and_then(parse_wire)
                        .filter(|&n| n <= crate::f2linalg::MAX_DIM)
                        .ok_or_else(|| syntax("bad width".into()))?;
                    circuit = Some(Circuit::new(n));
                }
                continue;
            }
            let c = circuit
                .as_mut()
                .ok_or_else(|| syntax("gate before `# width` header".into()))?;
            let mut toks = line.split_whitespace();
            if toks.next() != Some("t") {
                return Err(syntax(format!("expected gate line `t ...`, got {line:?}")));
            }
            let target_tok = toks.next().ok_or_else(|| syntax("missing target".into()))?;
            let target = parse_wire(target_tok.strip_prefix('q').unwrap_or(target_tok))
                .ok_or_else(|| syntax(format!("bad target {target_tok:?}")))?;
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            for tok in toks {
                let (list, body) = match tok.strip_prefix('-') {
                    Some(b) => (&mut neg, b),
                    None => (&mut pos, tok),
                };
                let w = body
                    .strip_prefix('q')
                    .and_then(parse_wire)
                    .ok_or_else(|| syntax(format!("bad control {tok:?}")))?;
                list.push(w);
            }
            let gate = Gate::new(target, pos, neg).map_err(|e| syntax(e.to_string()))?;
            c.try_push(gate)?;
        }
        circuit.ok_or(CircuitError::Syntax {
            line: 1,
            message: "missing `# width <n>` header".into(),
        })
    }
}
