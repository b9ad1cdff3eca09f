//! Gate-level netlists of the multipliers.
//!
//! Gates are kept in topological order: every gate input is a primary input,
//! a constant, or an output of an earlier gate. Half and full adders are
//! primitive two-output cells; [`Netlist::expand`] lowers them to 2-input
//! gates.
//!
//! Net names: `pp_<row>_<col>` for partial-product cells (with `_p`, `_n`,
//! `_a` suffixes on their internal gates), `s_or_m` for the shared control
//! OR, `cs_<stage>_<col>_<idx>` for compressor cells and `cpa_<col>` for the
//! final carry-propagate adder. Adder outputs are `<cell>.s` and `<cell>.c`.

mod build;
mod emit;
mod read;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

pub use build::{build_netlist, build_scheme_netlist, build_scheme_netlist_traced};
pub use emit::{emit, EmitFormat};
pub use read::{read_gate_list, read_structural};

use crate::bitnum::{BitVec, Width};
use crate::error::{Error, Result};
use crate::ppgen::{ModeSignals, Scheme};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    And,
    Nand,
    Xor,
    Not,
    Or,
    Ha,
    Fa,
}

impl GateKind {
    pub const ALL: [GateKind; 7] = [
        GateKind::And,
        GateKind::Nand,
        GateKind::Xor,
        GateKind::Not,
        GateKind::Or,
        GateKind::Ha,
        GateKind::Fa,
    ];

    pub fn arity(self) -> usize {
        match self {
            GateKind::Not => 1,
            GateKind::Fa => 3,
            _ => 2,
        }
    }

    /// Adders drive a sum and a carry net.
    pub fn is_adder(self) -> bool {
        matches!(self, GateKind::Ha | GateKind::Fa)
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::And => "AND",
            GateKind::Nand => "NAND",
            GateKind::Xor => "XOR",
            GateKind::Not => "NOT",
            GateKind::Or => "OR",
            GateKind::Ha => "HA",
            GateKind::Fa => "FA",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for GateKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GateKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName {
                what: "gate kind",
                value: s.to_string(),
            })
    }
}

/// A signal in the netlist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Net {
    Input(usize),
    /// Output of a single-output gate.
    Gate(usize),
    /// Sum output of an adder cell.
    Sum(usize),
    /// Carry output of an adder cell.
    Carry(usize),
    Const(bool),
}

impl Default for Net {
    fn default() -> Self {
        Net::Const(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gate {
    pub kind: GateKind,
    pub name: String,
    pub inputs: Vec<Net>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Netlist {
    pub module: String,
    pub n: Width,
    pub inputs: Vec<String>,
    pub outputs: Vec<(String, Net)>,
    pub gates: Vec<Gate>,
}

impl Netlist {
    pub fn input_index(&self, name: &str) -> Option<usize> {
        self.inputs.iter().position(|i| i == name)
    }

    /// Whether the netlist has the unified `s`/`m` control inputs.
    pub fn has_controls(&self) -> bool {
        self.input_index("s").is_some() && self.input_index("m").is_some()
    }

    pub fn net_name(&self, net: Net) -> String {
        match net {
            Net::Input(i) => self.inputs[i].clone(),
            Net::Gate(g) => self.gates[g].name.clone(),
            Net::Sum(g) => format!("{}.s", self.gates[g].name),
            Net::Carry(g) => format!("{}.c", self.gates[g].name),
            Net::Const(b) => (b as u8).to_string(),
        }
    }

    pub fn gate_counts(&self) -> BTreeMap<GateKind, usize> {
        let mut counts = BTreeMap::new();
        for g in &self.gates {
            *counts.entry(g.kind).or_insert(0) += 1;
        }
        counts
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind == kind).count()
    }

    /// Sorted `KIND name inputs...` strings; equal for netlists with the
    /// same gate multiset.
    pub fn gate_signature(&self) -> Vec<String> {
        let mut sig: Vec<String> = self
            .gates
            .iter()
            .map(|g| {
                let ins: Vec<String> = g.inputs.iter().map(|&n| self.net_name(n)).collect();
                format!("{} {} {}", g.kind, g.name, ins.join(" "))
            })
            .collect();
        sig.sort();
        sig
    }

    /// Checks arity, topological order and that every net has one driver.
    pub fn check(&self) -> Result<()> {
        let err = |message: String| Error::Parse { line: 0, message };
        let mut names: HashSet<&str> = self.inputs.iter().map(String::as_str).collect();
        if names.len() != self.inputs.len() {
            return Err(err("duplicate input name".into()));
        }
        let valid = |net: Net, upto: usize| match net {
            Net::Input(i) => i < self.inputs.len(),
            Net::Gate(g) => g < upto && !self.gates[g].kind.is_adder(),
            Net::Sum(g) | Net::Carry(g) => g < upto && self.gates[g].kind.is_adder(),
            Net::Const(_) => true,
        };
        for (k, g) in self.gates.iter().enumerate() {
            if g.inputs.len() != g.kind.arity() {
                return Err(err(format!("gate {} has {} inputs", g.name, g.inputs.len())));
            }
            if let Some(bad) = g.inputs.iter().find(|&&n| !valid(n, k)) {
                return Err(err(format!("gate {} reads {bad:?} before it is driven", g.name)));
            }
            if !names.insert(&g.name) {
                return Err(err(format!("net {} has more than one driver", g.name)));
            }
        }
        let mut outs = HashSet::new();
        for (name, net) in &self.outputs {
            if !outs.insert(name) {
                return Err(err(format!("output {name} declared twice")));
            }
            if !valid(*net, self.gates.len()) {
                return Err(err(format!("output {name} is undriven")));
            }
        }
        Ok(())
    }

    /// Logic depth: longest gate path from any input to any output.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.gates.len()];
        let of = |net: Net, level: &[usize]| match net {
            Net::Gate(g) | Net::Sum(g) | Net::Carry(g) => level[g],
            _ => 0,
        };
        for (k, g) in self.gates.iter().enumerate() {
            level[k] = 1 + g.inputs.iter().map(|&n| of(n, &level)).max().unwrap_or(0);
        }
        self.outputs.iter().map(|&(_, n)| of(n, &level)).max().unwrap_or(0)
    }

    /// Evaluates 64 input vectors at once: bit `k` of `inputs[i]` is the
    /// value of input `i` in vector `k`. Returns one lane word per output.
    pub fn eval_lanes(&self, inputs: &[u64]) -> Result<Vec<u64>> {
        if inputs.len() != self.inputs.len() {
            let missing = self.inputs.get(inputs.len()).cloned().unwrap_or_default();
            return Err(Error::MissingInput(missing));
        }
        let mut values: Vec<[u64; 2]> = Vec::with_capacity(self.gates.len());
        let get = |net: Net, values: &[[u64; 2]]| match net {
            Net::Input(i) => inputs[i],
            Net::Gate(g) | Net::Sum(g) => values[g][0],
            Net::Carry(g) => values[g][1],
            Net::Const(b) => 0u64.wrapping_sub(b as u64),
        };
        for g in &self.gates {
            let x = get(g.inputs[0], &values);
            let v = match g.kind {
                GateKind::Not => [!x, 0],
                GateKind::And => [x & get(g.inputs[1], &values), 0],
                GateKind::Nand => [!(x & get(g.inputs[1], &values)), 0],
                GateKind::Or => [x | get(g.inputs[1], &values), 0],
                GateKind::Xor => [x ^ get(g.inputs[1], &values), 0],
                GateKind::Ha => {
                    let y = get(g.inputs[1], &values);
                    [x ^ y, x & y]
                }
                GateKind::Fa => {
                    let y = get(g.inputs[1], &values);
                    let z = get(g.inputs[2], &values);
                    [x ^ y ^ z, (x & y) | (z & (x ^ y))]
                }
            };
            values.push(v);
        }
        Ok(self.outputs.iter().map(|&(_, n)| get(n, &values)).collect())
    }

    /// Input lane words for a batch of at most 64 operand vectors.
    fn pack(&self, cases: &[(BitVec, BitVec, ModeSignals)]) -> Result<Vec<u64>> {
        let n = self.n.get();
        let controls = self.has_controls();
        let mut lanes = vec![0u64; self.inputs.len()];
        for (k, (a, b, sig)) in cases.iter().enumerate() {
            if a.width() != n || b.width() != n {
                return Err(Error::WidthMismatch {
                    left: n,
                    right: if a.width() != n { a.width() } else { b.width() },
                });
            }
            for i in 0..n {
                lanes[i] |= (a.bit(i) as u64) << k;
                lanes[n + i] |= (b.bit(i) as u64) << k;
            }
            if controls {
                lanes[2 * n] |= (sig.s() as u64) << k;
                lanes[2 * n + 1] |= (sig.m() as u64) << k;
            }
        }
        Ok(lanes)
    }

    /// Evaluates many `(a, b, signals)` vectors, 64 per pass. Dedicated
    /// netlists ignore the signals.
    pub fn eval_batch(&self, cases: &[(BitVec, BitVec, ModeSignals)]) -> Result<Vec<BitVec>> {
        let mut out = Vec::with_capacity(cases.len());
        for chunk in cases.chunks(64) {
            let lanes = self.eval_lanes(&self.pack(chunk)?)?;
            for k in 0..chunk.len() {
                let bits = lanes.iter().map(|w| (w >> k) & 1 == 1);
                out.push(BitVec::from_bits(bits)?);
            }
        }
        Ok(out)
    }

    /// Product of a single operand pair.
    pub fn eval_operands(&self, a: &BitVec, b: &BitVec, sig: ModeSignals) -> Result<BitVec> {
        Ok(self.eval_batch(&[(*a, *b, sig)])?.remove(0))
    }

    /// Decomposes every half and full adder into AND/XOR/OR gates.
    pub fn expand(&self) -> Netlist {
        let mut gates: Vec<Gate> = Vec::with_capacity(self.gates.len() * 3);
        // Old gate index -> (first output, second output) in the new list.
        let mut map: Vec<(Net, Net)> = Vec::with_capacity(self.gates.len());
        let remap = |net: Net, map: &[(Net, Net)]| match net {
            Net::Gate(g) | Net::Sum(g) => map[g].0,
            Net::Carry(g) => map[g].1,
            other => other,
        };
        let push = |gates: &mut Vec<Gate>, kind, name: String, inputs: Vec<Net>| {
            gates.push(Gate { kind, name, inputs });
            Net::Gate(gates.len() - 1)
        };
        for g in &self.gates {
            let ins: Vec<Net> = g.inputs.iter().map(|&n| remap(n, &map)).collect();
            let entry = match g.kind {
                GateKind::Ha => {
                    let s = push(&mut gates, GateKind::Xor, format!("{}_s", g.name), vec![ins[0], ins[1]]);
                    let c = push(&mut gates, GateKind::And, format!("{}_c", g.name), vec![ins[0], ins[1]]);
                    (s, c)
                }
                GateKind::Fa => {
                    let t = push(&mut gates, GateKind::Xor, format!("{}_t", g.name), vec![ins[0], ins[1]]);
                    let s = push(&mut gates, GateKind::Xor, format!("{}_s", g.name), vec![t, ins[2]]);
                    let u = push(&mut gates, GateKind::And, format!("{}_u", g.name), vec![ins[0], ins[1]]);
                    let v = push(&mut gates, GateKind::And, format!("{}_v", g.name), vec![t, ins[2]]);
                    let c = push(&mut gates, GateKind::Or, format!("{}_c", g.name), vec![u, v]);
                    (s, c)
                }
                kind => {
                    let o = push(&mut gates, kind, g.name.clone(), ins);
                    (o, o)
                }
            };
            map.push(entry);
        }
        Netlist {
            module: self.module.clone(),
            n: self.n,
            inputs: self.inputs.clone(),
            outputs: self
                .outputs
                .iter()
                .map(|(name, net)| (name.clone(), remap(*net, &map)))
                .collect(),
            gates,
        }
    }

    pub fn scheme_inputs(n: Width, scheme: Scheme) -> Vec<String> {
        let mut inputs: Vec<String> = (0..n.get()).map(|i| format!("a[{i}]")).collect();
        inputs.extend((0..n.get()).map(|i| format!("b[{i}]")));
        if scheme == Scheme::Unified {
            inputs.push("s".into());
            inputs.push("m".into());
        }
        inputs
    }
}

/// Evaluates `nl` under a named input assignment. Every input must be
/// assigned and every assigned name must be an input.
pub fn eval_netlist<S: AsRef<str>>(nl: &Netlist, assignment: &HashMap<S, bool>) -> Result<Vec<bool>> {
    let mut lanes = vec![0u64; nl.inputs.len()];
    let mut seen = vec![false; nl.inputs.len()];
    for (name, &value) in assignment {
        let i = nl
            .input_index(name.as_ref())
            .ok_or_else(|| Error::UnknownNet(name.as_ref().to_string()))?;
        lanes[i] = value as u64;
        seen[i] = true;
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::MissingInput(nl.inputs[i].clone()));
    }
    Ok(nl.eval_lanes(&lanes)?.into_iter().map(|w| w & 1 == 1).collect())
}
