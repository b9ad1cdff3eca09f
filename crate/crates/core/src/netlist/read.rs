//! Readers for both emitted formats, used to check that emitted text
//! describes the same circuit.

use std::collections::HashMap;

use super::emit::{FA_MODULE, HA_MODULE};
use super::{Gate, GateKind, Net, Netlist};
use crate::bitnum::Width;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Default)]
struct Nets {
    by_name: HashMap<String, Net>,
}

impl Nets {
    fn define(&mut self, line: usize, name: &str, net: Net) -> Result<()> {
        if self.by_name.insert(name.to_string(), net).is_some() {
            return Err(parse_err(line, format!("net `{name}` is driven twice")));
        }
        Ok(())
    }

    fn lookup(&self, line: usize, name: &str, consts: [&str; 2]) -> Result<Net> {
        if name == consts[0] {
            return Ok(Net::Const(false));
        }
        if name == consts[1] {
            return Ok(Net::Const(true));
        }
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| parse_err(line, format!("net `{name}` is used before it is driven")))
    }
}

fn width_from_inputs(inputs: &[String]) -> Result<Width> {
    Width::new(inputs.iter().filter(|i| i.starts_with("a[")).count())
}

/// Parses the `gate-list` format.
pub fn read_gate_list(text: &str) -> Result<Netlist> {
    const CONSTS: [&str; 2] = ["0", "1"];
    let mut nets = Nets::default();
    let mut inputs = Vec::new();
    let mut pending_outputs = Vec::new();
    let mut gates: Vec<Gate> = Vec::new();
    let mut module = String::from("gate_list");
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let t = raw.trim();
        if let Some(comment) = t.strip_prefix('#') {
            if line == 1 {
                if let Some(name) = comment.split_whitespace().next() {
                    module = name.to_string();
                }
            }
            continue;
        }
        if t.is_empty() {
            continue;
        }
        let mut words = t.split_whitespace();
        let head = words.next().unwrap();
        match head {
            "INPUT" => {
                for name in words {
                    nets.define(line, name, Net::Input(inputs.len()))?;
                    inputs.push(name.to_string());
                }
            }
            "OUTPUT" => {
                let (Some(name), Some(net), None) = (words.next(), words.next(), words.next()) else {
                    return Err(parse_err(line, "expected `OUTPUT <port> <net>`"));
                };
                pending_outputs.push((line, name.to_string(), net.to_string()));
            }
            kind => {
                let kind: GateKind = kind.parse().map_err(|e: Error| parse_err(line, e.to_string()))?;
                let name = words.next().ok_or_else(|| parse_err(line, "missing output net"))?;
                let ins = words
                    .map(|w| nets.lookup(line, w, CONSTS))
                    .collect::<Result<Vec<_>>>()?;
                if ins.len() != kind.arity() {
                    return Err(parse_err(line, format!("{kind} takes {} inputs", kind.arity())));
                }
                let g = gates.len();
                if kind.is_adder() {
                    nets.define(line, &format!("{name}.s"), Net::Sum(g))?;
                    nets.define(line, &format!("{name}.c"), Net::Carry(g))?;
                } else {
                    nets.define(line, name, Net::Gate(g))?;
                }
                gates.push(Gate {
                    kind,
                    name: name.to_string(),
                    inputs: ins,
                });
            }
        }
    }
    let outputs = pending_outputs
        .into_iter()
        .map(|(line, name, net)| Ok((name, nets.lookup(line, &net, CONSTS)?)))
        .collect::<Result<Vec<_>>>()?;
    let nl = Netlist {
        module,
        n: width_from_inputs(&inputs)?,
        inputs,
        outputs,
        gates,
    };
    nl.check()?;
    Ok(nl)
}

/// `[7:0]` -> 8.
fn bus_width(line: usize, decl: &str) -> Result<Option<(usize, &str)>> {
    let decl = decl.trim();
    if let Some(rest) = decl.strip_prefix('[') {
        let (range, name) = rest.split_once(']').ok_or_else(|| parse_err(line, "bad bus range"))?;
        let (hi, lo) = range.split_once(':').ok_or_else(|| parse_err(line, "bad bus range"))?;
        let hi: usize = hi.trim().parse().map_err(|_| parse_err(line, "bad bus range"))?;
        if lo.trim() != "0" {
            return Err(parse_err(line, "bus ranges must end at 0"));
        }
        Ok(Some((hi + 1, name.trim())))
    } else {
        Ok(None)
    }
}

/// `.a(x), .b(y)` -> {a: x, b: y}
fn named_ports(line: usize, args: &str) -> Result<HashMap<String, String>> {
    let mut ports = HashMap::new();
    for part in args.split("),") {
        let part = part.trim().trim_end_matches(')');
        let (port, net) = part
            .trim_start_matches('.')
            .split_once('(')
            .ok_or_else(|| parse_err(line, format!("bad port connection `{part}`")))?;
        ports.insert(port.trim().to_string(), net.trim().to_string());
    }
    Ok(ports)
}

/// Parses the `structural-hdl` format back into a netlist. Only the first
/// module (the multiplier) is read; the adder cell modules are recognized
/// by name.
pub fn read_structural(text: &str) -> Result<Netlist> {
    const CONSTS: [&str; 2] = ["1'b0", "1'b1"];
    let mut nets = Nets::default();
    let mut inputs: Vec<String> = Vec::new();
    let mut outputs = Vec::new();
    let mut gates: Vec<Gate> = Vec::new();
    let mut module = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with("//") {
            continue;
        }
        if t == "endmodule" {
            break;
        }
        let stmt = t
            .strip_suffix(';')
            .ok_or_else(|| parse_err(line, "expected `;`"))?
            .trim();
        let (keyword, rest) = stmt.split_once(char::is_whitespace).unwrap_or((stmt, ""));
        match keyword {
            "module" => {
                let name = rest.split('(').next().unwrap_or("").trim();
                module = Some(name.to_string());
            }
            "input" => {
                let names: Vec<String> = match bus_width(line, rest)? {
                    Some((w, name)) => (0..w).map(|i| format!("{name}[{i}]")).collect(),
                    None => rest.split(',').map(|s| s.trim().to_string()).collect(),
                };
                for name in names {
                    nets.define(line, &name, Net::Input(inputs.len()))?;
                    inputs.push(name);
                }
            }
            "output" | "wire" => {}
            "assign" => {
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| parse_err(line, "bad assign"))?;
                outputs.push((lhs.trim().to_string(), nets.lookup(line, rhs.trim(), CONSTS)?));
            }
            cell if cell == HA_MODULE || cell == FA_MODULE => {
                let kind = if cell == HA_MODULE { GateKind::Ha } else { GateKind::Fa };
                let (name, args) = rest.split_once('(').ok_or_else(|| parse_err(line, "bad instance"))?;
                let name = name.trim();
                let args = args
                    .trim()
                    .strip_suffix(')')
                    .ok_or_else(|| parse_err(line, "bad instance"))?;
                let ports = named_ports(line, args)?;
                let port = |p: &str| {
                    ports
                        .get(p)
                        .ok_or_else(|| parse_err(line, format!("missing port .{p}")))
                };
                let names: &[&str] = if kind == GateKind::Ha {
                    &["a", "b"]
                } else {
                    &["a", "b", "ci"]
                };
                let ins = names
                    .iter()
                    .map(|p| nets.lookup(line, port(p)?, CONSTS))
                    .collect::<Result<Vec<_>>>()?;
                let g = gates.len();
                nets.define(line, port("s")?, Net::Sum(g))?;
                nets.define(line, port("co")?, Net::Carry(g))?;
                gates.push(Gate {
                    kind,
                    name: name.to_string(),
                    inputs: ins,
                });
            }
            prim => {
                let kind: GateKind = prim.parse().map_err(|e: Error| parse_err(line, e.to_string()))?;
                let (_, args) = rest.split_once('(').ok_or_else(|| parse_err(line, "bad gate"))?;
                let args = args
                    .trim()
                    .strip_suffix(')')
                    .ok_or_else(|| parse_err(line, "bad gate"))?;
                let mut terms = args.split(',').map(str::trim);
                let out = terms.next().ok_or_else(|| parse_err(line, "missing output"))?;
                let ins = terms
                    .map(|w| nets.lookup(line, w, CONSTS))
                    .collect::<Result<Vec<_>>>()?;
                if ins.len() != kind.arity() {
                    return Err(parse_err(line, format!("{kind} takes {} inputs", kind.arity())));
                }
                nets.define(line, out, Net::Gate(gates.len()))?;
                gates.push(Gate {
                    kind,
                    name: out.to_string(),
                    inputs: ins,
                });
            }
        }
    }
    let nl = Netlist {
        module: module.ok_or_else(|| parse_err(0, "no module found"))?,
        n: width_from_inputs(&inputs)?,
        inputs,
        outputs,
        gates,
    };
    nl.check()?;
    Ok(nl)
}
