//! Ordered nearest-neighbour CX circuits on a line topology.
//!
//! Gates are stored in time order: the first-listed gate acts on the
//! state first. Conjugation of operators folds in the same order, so
//! `conjugate_pauli` computes U P U† for the circuit unitary U.

use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::{conjugate_by_cx, CxGate, PauliString};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    gates: Vec<CxGate>,
}

impl Circuit {
    pub fn empty(n: usize) -> Self {
        Self { n, gates: Vec::new() }
    }

    pub fn new(n: usize, gates: Vec<CxGate>) -> Result<Self> {
        for g in &gates {
            g.check_range(n)?;
        }
        Ok(Self { n, gates })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[CxGate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: CxGate) -> Result<()> {
        g.check_range(self.n)?;
        self.gates.push(g);
        Ok(())
    }

    pub fn extend(&mut self, other: &Circuit) {
        debug_assert_eq!(self.n, other.n);
        self.gates.extend_from_slice(&other.gates);
    }

    /// The inverse circuit: CX gates are self-inverse, so just reversed order.
    pub fn inverted(&self) -> Circuit {
        let mut gates = self.gates.clone();
        gates.reverse();
        Self { n: self.n, gates }
    }

    /// Greedy as-soon-as-possible layering: each gate lands in the first
    /// layer after both its qubits are free.
    pub fn layers(&self) -> Vec<Vec<CxGate>> {
        let mut free = vec![0usize; self.n + 1];
        let mut layers: Vec<Vec<CxGate>> = Vec::new();
        for &g in &self.gates {
            let layer = free[g.control].max(free[g.target]);
            if layer == layers.len() {
                layers.push(Vec::new());
            }
            layers[layer].push(g);
            free[g.control] = layer + 1;
            free[g.target] = layer + 1;
        }
        layers
    }

    /// Layered depth; 0 for the empty circuit.
    pub fn depth(&self) -> usize {
        let mut free = vec![0usize; self.n + 1];
        let mut depth = 0;
        for &g in &self.gates {
            let layer = free[g.control].max(free[g.target]) + 1;
            free[g.control] = layer;
            free[g.target] = layer;
            depth = depth.max(layer);
        }
        depth
    }

    /// U P U† with the circuit's gates applied in time order.
    pub fn conjugate_pauli(&self, p: &PauliString) -> Result<PauliString> {
        if p.n() != self.n {
            return Err(Error::LengthMismatch(p.n(), self.n));
        }
        let mut cur = p.clone();
        for &g in &self.gates {
            cur = conjugate_by_cx(&cur, g)?;
        }
        Ok(cur)
    }

    /// Serializes to the circuit text format: a `qubits <n>` header and
    /// one `CX <control> <target>` line per gate. With `layered`, layers
    /// are separated by blank lines.
    pub fn to_text(&self, layered: bool) -> String {
        let mut out = format!("qubits {}\n", self.n);
        if layered {
            for (k, layer) in self.layers().iter().enumerate() {
                if k > 0 {
                    out.push('\n');
                }
                for g in layer {
                    out.push_str(&format!("CX {} {}\n", g.control, g.target));
                }
            }
        } else {
            for g in &self.gates {
                out.push_str(&format!("CX {} {}\n", g.control, g.target));
            }
        }
        out
    }

    /// Parses the text format emitted by [`Circuit::to_text`]; blank
    /// lines (layer separators) are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty circuit file".into()))?;
        let n = header
            .trim()
            .strip_prefix("qubits ")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad circuit header '{header}'")))?;
        let mut gates = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["CX", c, t] => {
                    let control = c
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad control '{c}'")))?;
                    let target = t
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad target '{t}'")))?;
                    gates.push(CxGate::new(control, target)?);
                }
                _ => return Err(Error::Parse(format!("bad circuit line '{line}'"))),
            }
        }
        Circuit::new(n, gates)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(false))
    }
}
