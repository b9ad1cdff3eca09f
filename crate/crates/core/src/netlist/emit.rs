use std::fmt::Write as _;
use std::str::FromStr;

use super::{GateKind, Net, Netlist};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    /// Synthesizable structural module text.
    StructuralHdl,
    /// One `KIND out in1 [in2 [in3]]` line per gate.
    GateList,
}

impl FromStr for EmitFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "structural-hdl" | "hdl" => Ok(EmitFormat::StructuralHdl),
            "gate-list" => Ok(EmitFormat::GateList),
            _ => Err(Error::UnknownName {
                what: "netlist format",
                value: s.to_string(),
            }),
        }
    }
}

/// Renders the netlist. Output is ASCII with `\n` line endings and a
/// trailing newline.
pub fn emit(nl: &Netlist, format: EmitFormat) -> String {
    match format {
        EmitFormat::GateList => gate_list(nl),
        EmitFormat::StructuralHdl => structural(nl),
    }
}

fn gate_list(nl: &Netlist) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {} n={} gates={}", nl.module, nl.n, nl.gates.len());
    let _ = writeln!(out, "INPUT {}", nl.inputs.join(" "));
    for (name, net) in &nl.outputs {
        let _ = writeln!(out, "OUTPUT {name} {}", nl.net_name(*net));
    }
    for g in &nl.gates {
        let _ = write!(out, "{} {}", g.kind, g.name);
        for &i in &g.inputs {
            let _ = write!(out, " {}", nl.net_name(i));
        }
        out.push('\n');
    }
    out
}

pub(super) const HA_MODULE: &str = "bwmul_ha";
pub(super) const FA_MODULE: &str = "bwmul_fa";

fn hdl_net(nl: &Netlist, net: Net) -> String {
    match net {
        Net::Input(i) => nl.inputs[i].clone(),
        Net::Gate(g) => nl.gates[g].name.clone(),
        Net::Sum(g) => format!("{}_s", nl.gates[g].name),
        Net::Carry(g) => format!("{}_c", nl.gates[g].name),
        Net::Const(b) => format!("1'b{}", b as u8),
    }
}

fn structural(nl: &Netlist) -> String {
    let n = nl.n.get();
    let controls = nl.has_controls();
    let mut out = String::new();
    let _ = writeln!(out, "// {}: {} gates", nl.module, nl.gates.len());
    let ports = if controls { "a, b, s, m, p" } else { "a, b, p" };
    let _ = writeln!(out, "module {} ({ports});", nl.module);
    let _ = writeln!(out, "  input [{}:0] a;", n - 1);
    let _ = writeln!(out, "  input [{}:0] b;", n - 1);
    if controls {
        let _ = writeln!(out, "  input s;");
        let _ = writeln!(out, "  input m;");
    }
    let _ = writeln!(out, "  output [{}:0] p;", nl.outputs.len() - 1);
    out.push('\n');
    for g in &nl.gates {
        if g.kind.is_adder() {
            let _ = writeln!(out, "  wire {0}_s, {0}_c;", g.name);
        } else {
            let _ = writeln!(out, "  wire {};", g.name);
        }
    }
    out.push('\n');
    for g in &nl.gates {
        let ins: Vec<String> = g.inputs.iter().map(|&i| hdl_net(nl, i)).collect();
        match g.kind {
            GateKind::Ha => {
                let _ = writeln!(
                    out,
                    "  {HA_MODULE} {0} (.a({1}), .b({2}), .s({0}_s), .co({0}_c));",
                    g.name, ins[0], ins[1]
                );
            }
            GateKind::Fa => {
                let _ = writeln!(
                    out,
                    "  {FA_MODULE} {0} (.a({1}), .b({2}), .ci({3}), .s({0}_s), .co({0}_c));",
                    g.name, ins[0], ins[1], ins[2]
                );
            }
            kind => {
                let prim = kind.name().to_ascii_lowercase();
                let _ = writeln!(out, "  {prim} g_{0} ({0}, {1});", g.name, ins.join(", "));
            }
        }
    }
    out.push('\n');
    for (name, net) in &nl.outputs {
        let _ = writeln!(out, "  assign {name} = {};", hdl_net(nl, *net));
    }
    let _ = writeln!(out, "endmodule");
    out.push('\n');
    let _ = writeln!(out, "module {HA_MODULE} (a, b, s, co);");
    let _ = writeln!(out, "  input a, b;");
    let _ = writeln!(out, "  output s, co;");
    let _ = writeln!(out, "  assign s = a ^ b;");
    let _ = writeln!(out, "  assign co = a & b;");
    let _ = writeln!(out, "endmodule");
    out.push('\n');
    let _ = writeln!(out, "module {FA_MODULE} (a, b, ci, s, co);");
    let _ = writeln!(out, "  input a, b, ci;");
    let _ = writeln!(out, "  output s, co;");
    let _ = writeln!(out, "  assign s = a ^ b ^ ci;");
    let _ = writeln!(out, "  assign co = (a & b) | (ci & (a ^ b));");
    let _ = writeln!(out, "endmodule");
    out
}
