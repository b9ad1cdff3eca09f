//! Area proxy: gate-equivalent cost of the unified multiplier against three
//! dedicated ones (unsigned, signed, mixed), each built with the same
//! reducer.
//!
//! Costs are counted on the generated netlists, so they always agree with
//! what `emit` writes out. Power is not modeled.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::bitnum::Width;
use crate::error::{Error, Result};
use crate::netlist::{build_scheme_netlist, GateKind, Netlist};
use crate::ppgen::Scheme;
use crate::reduce::ReducerKind;

/// Gate-equivalent weight of each primitive.
///
/// Default weights: and2 = 1, nand2 = 1, or2 = 1, not1 = 0.5, xor2 = 2,
/// halfadder = 3, fulladder = 6.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GateCostModel {
    pub and2: f64,
    pub nand2: f64,
    pub or2: f64,
    pub xor2: f64,
    pub not1: f64,
    pub halfadder: f64,
    pub fulladder: f64,
}

impl Default for GateCostModel {
    fn default() -> Self {
        GateCostModel {
            and2: 1.0,
            nand2: 1.0,
            or2: 1.0,
            xor2: 2.0,
            not1: 0.5,
            halfadder: 3.0,
            fulladder: 6.0,
        }
    }
}

impl GateCostModel {
    const KEYS: [&'static str; 7] = ["and2", "nand2", "or2", "xor2", "not1", "halfadder", "fulladder"];

    fn slot(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "and2" => &mut self.and2,
            "nand2" => &mut self.nand2,
            "or2" => &mut self.or2,
            "xor2" => &mut self.xor2,
            "not1" => &mut self.not1,
            "halfadder" => &mut self.halfadder,
            "fulladder" => &mut self.fulladder,
            _ => return None,
        })
    }

    pub fn weight(&self, kind: GateKind) -> f64 {
        match kind {
            GateKind::And => self.and2,
            GateKind::Nand => self.nand2,
            GateKind::Or => self.or2,
            GateKind::Xor => self.xor2,
            GateKind::Not => self.not1,
            GateKind::Ha => self.halfadder,
            GateKind::Fa => self.fulladder,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut copy = *self;
        for key in Self::KEYS {
            let v = *copy.slot(key).unwrap();
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::CostModel(format!("{key} must be a positive number, got {v}")));
            }
        }
        Ok(())
    }

    /// Defaults overridden by `key=value` lines. Blank lines and `#`
    /// comments are ignored.
    pub fn from_kv(text: &str) -> Result<Self> {
        let mut model = GateCostModel::default();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::CostModel(format!("line {}: expected key=value", k + 1)))?;
            let key = key.trim();
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::CostModel(format!("line {}: `{}` is not a number", k + 1, value.trim())))?;
            *model
                .slot(key)
                .ok_or_else(|| Error::CostModel(format!("line {}: unknown primitive `{key}`", k + 1)))? = value;
        }
        model.validate()?;
        Ok(model)
    }

    pub fn to_kv(&self) -> String {
        let mut copy = *self;
        let mut out = String::new();
        for key in Self::KEYS {
            let _ = writeln!(out, "{key}={}", copy.slot(key).unwrap());
        }
        out
    }

    pub fn cost(&self, nl: &Netlist) -> f64 {
        nl.gate_counts().iter().map(|(&k, &c)| self.weight(k) * c as f64).sum()
    }
}

/// Gate-equivalent cost of one multiplier configuration.
pub fn cost_of(scheme: Scheme, n: Width, reducer: ReducerKind, model: &GateCostModel) -> f64 {
    model.cost(&build_scheme_netlist(n, scheme, reducer))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaReport {
    pub n: Width,
    pub reducer: ReducerKind,
    pub model: GateCostModel,
    pub unified_cost: f64,
    pub unsigned_cost: f64,
    pub signed_cost: f64,
    pub mixed_cost: f64,
    /// `(unsigned + signed + mixed) / unified`.
    pub ratio: f64,
    pub depth_unified: usize,
    /// Gate population of the unified netlist, keyed by gate kind.
    pub unified_gates: BTreeMap<String, usize>,
    pub note: &'static str,
}

impl AreaReport {
    pub const NOTE: &'static str = "area proxy only; power is not modeled";

    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "width={}", self.n);
        let _ = writeln!(out, "reducer={}", self.reducer);
        let _ = writeln!(out, "unified_cost={}", self.unified_cost);
        let _ = writeln!(out, "unsigned_cost={}", self.unsigned_cost);
        let _ = writeln!(out, "signed_cost={}", self.signed_cost);
        let _ = writeln!(out, "mixed_cost={}", self.mixed_cost);
        let _ = writeln!(
            out,
            "dedicated_total={}",
            self.unsigned_cost + self.signed_cost + self.mixed_cost
        );
        let _ = writeln!(out, "ratio={:.4}", self.ratio);
        let _ = writeln!(out, "depth_unified={}", self.depth_unified);
        for (kind, count) in &self.unified_gates {
            let _ = writeln!(out, "unified_gates.{}={count}", kind.to_ascii_lowercase());
        }
        let _ = writeln!(out, "note={}", self.note);
        out
    }
}

/// Unified vs. three dedicated multipliers at width `n`.
pub fn compare(n: Width, reducer: ReducerKind, model: &GateCostModel) -> AreaReport {
    let unified = build_scheme_netlist(n, Scheme::Unified, reducer);
    let unified_cost = model.cost(&unified);
    let unsigned_cost = cost_of(Scheme::Unsigned, n, reducer, model);
    let signed_cost = cost_of(Scheme::Signed, n, reducer, model);
    let mixed_cost = cost_of(Scheme::Mixed, n, reducer, model);
    AreaReport {
        n,
        reducer,
        model: *model,
        unified_cost,
        unsigned_cost,
        signed_cost,
        mixed_cost,
        ratio: (unsigned_cost + signed_cost + mixed_cost) / unified_cost,
        depth_unified: unified.depth(),
        unified_gates: unified
            .gate_counts()
            .into_iter()
            .map(|(k, c)| (k.name().to_string(), c))
            .collect(),
        note: AreaReport::NOTE,
    }
}
