use std::collections::HashMap;

use super::{Gate, GateKind, Net, Netlist};
use crate::bitnum::Width;
use crate::ppgen::{for_each_cell, CellExpr, Control, Scheme};
use crate::reduce::{reduce_rows, AdderCells, Phase, ReducerKind, ReductionTrace, Site};

struct Builder {
    n: usize,
    scheme: Scheme,
    gates: Vec<Gate>,
    products: HashMap<(usize, usize), Net>,
    s_or_m: Option<Net>,
}

impl Builder {
    fn gate(&mut self, kind: GateKind, name: String, inputs: Vec<Net>) -> Net {
        self.gates.push(Gate { kind, name, inputs });
        Net::Gate(self.gates.len() - 1)
    }

    fn adder(&mut self, kind: GateKind, site: Site, inputs: Vec<Net>) -> (Net, Net) {
        let name = match site.phase {
            Phase::Stage(s) => format!("cs_{s}_{}_{}", site.column, site.index),
            Phase::Final => format!("cpa_{}", site.column),
        };
        self.gates.push(Gate { kind, name, inputs });
        let g = self.gates.len() - 1;
        (Net::Sum(g), Net::Carry(g))
    }

    fn a(&self, i: usize) -> Net {
        Net::Input(i)
    }

    fn b(&self, j: usize) -> Net {
        Net::Input(self.n + j)
    }

    fn control(&mut self, ctrl: Control) -> Net {
        let (s, m) = (Net::Input(2 * self.n), Net::Input(2 * self.n + 1));
        match ctrl {
            Control::S => s,
            Control::M => m,
            Control::SOrM => match self.s_or_m {
                Some(net) => net,
                None => {
                    let net = self.gate(GateKind::Or, "s_or_m".into(), vec![s, m]);
                    self.s_or_m = Some(net);
                    net
                }
            },
        }
    }

    /// `a_i AND b_j`, shared between the cells that use it.
    fn product(&mut self, i: usize, j: usize, name: String) -> Net {
        if let Some(&net) = self.products.get(&(i, j)) {
            return net;
        }
        let (a, b) = (self.a(i), self.b(j));
        let net = self.gate(GateKind::And, name, vec![a, b]);
        self.products.insert((i, j), net);
        net
    }

    fn lower(&mut self, row: usize, col: usize, expr: CellExpr) -> Net {
        let name = format!("pp_{row}_{col}");
        match expr {
            CellExpr::One => Net::Const(true),
            CellExpr::Product { i, j } => self.product(i, j, name),
            CellExpr::NotProduct { i, j } => {
                let (a, b) = (self.a(i), self.b(j));
                self.gate(GateKind::Nand, name, vec![a, b])
            }
            CellExpr::ControlledXor { ctrl, i, j } => {
                let p = self.product(i, j, format!("{name}_p"));
                let c = self.control(ctrl);
                self.gate(GateKind::Xor, name, vec![c, p])
            }
            CellExpr::Control(ctrl) => self.control(ctrl),
            CellExpr::SignedOrMixedInverted { i, j } => {
                let p = self.product(i, j, format!("{name}_p"));
                let (s, m) = (self.control(Control::S), self.control(Control::M));
                let np = self.gate(GateKind::Not, format!("{name}_n"), vec![p]);
                let gated = self.gate(GateKind::And, format!("{name}_a"), vec![m, np]);
                self.gate(GateKind::Or, name, vec![s, gated])
            }
        }
    }
}

impl AdderCells for Builder {
    type Bit = Net;

    fn half_add(&mut self, site: Site, a: Net, b: Net) -> (Net, Net) {
        self.adder(GateKind::Ha, site, vec![a, b])
    }

    fn full_add(&mut self, site: Site, a: Net, b: Net, c: Net) -> (Net, Net) {
        self.adder(GateKind::Fa, site, vec![a, b, c])
    }
}

/// Netlist of the multiplier for `scheme` (dedicated, or the unified array
/// with `s`/`m` inputs), together with its reduction trace.
pub fn build_scheme_netlist_traced(n: Width, scheme: Scheme, reducer: ReducerKind) -> (Netlist, ReductionTrace) {
    let width = n.get();
    let mut b = Builder {
        n: width,
        scheme,
        gates: Vec::new(),
        products: HashMap::new(),
        s_or_m: None,
    };
    let mut rows: Vec<Vec<(usize, Net)>> = vec![Vec::new(); width];
    let mut cells = Vec::new();
    for_each_cell(n, scheme, |r, c, e| cells.push((r, c, e)));
    for (r, c, e) in cells {
        let net = b.lower(r, c, e);
        rows[r].push((c, net));
    }
    let mut trace = ReductionTrace::default();
    let outs = reduce_rows(&mut b, rows, n.product(), reducer, Some(&mut trace));
    let outputs = outs
        .into_iter()
        .enumerate()
        .map(|(k, net)| (format!("p[{k}]"), net.unwrap_or(Net::Const(false))))
        .collect();
    let nl = Netlist {
        module: format!("bwmul_{}_{}", b.scheme.name(), width),
        n,
        inputs: Netlist::scheme_inputs(n, scheme),
        outputs,
        gates: b.gates,
    };
    debug_assert!(nl.check().is_ok());
    (nl, trace)
}

pub fn build_scheme_netlist(n: Width, scheme: Scheme, reducer: ReducerKind) -> Netlist {
    build_scheme_netlist_traced(n, scheme, reducer).0
}

/// The unified multiplier: inputs `a`, `b`, `s`, `m`; output `p`.
pub fn build_netlist(n: Width, reducer: ReducerKind) -> Netlist {
    build_scheme_netlist(n, Scheme::Unified, reducer)
}
