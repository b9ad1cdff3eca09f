//! Bit-accurate model of a unified Baugh-Wooley multiplier.
//!
//! One partial-product array, steered by the one-hot `(s, u, m)` control
//! lines, covers unsigned, signed and mixed (unsigned × signed)
//! multiplication, and therefore all four RV32M multiply instructions. The
//! crate builds the partial-product matrices for every scheme, reduces them
//! with ripple, Wallace or Dadda adders, checks them against native integer
//! arithmetic, emits and evaluates gate-level netlists, and estimates the
//! area saved over three dedicated multipliers.
//!
//! Operand widths run from 2 to 64 bits; products are exact up to 128 bits.

pub mod bitnum;
pub mod error;
pub mod metrics;
pub mod mulcore;
pub mod netlist;
pub mod oracle;
pub mod ppgen;
pub mod reduce;
pub mod render;

pub use bitnum::{decode_signed, decode_unsigned, encode_signed, encode_unsigned, BitVec, Width};
pub use error::{Error, Result};
pub use metrics::{compare, cost_of, AreaReport, GateCostModel};
pub use mulcore::{execute, execute_full, MulInstruction, MulOp};
pub use netlist::{build_netlist, emit, eval_netlist, EmitFormat, GateKind, Netlist};
pub use oracle::{ref_product, verify_exhaustive, verify_random, VerifyReport};
pub use ppgen::{
    demux_mode, pp_dedicated, pp_mixed, pp_signed, pp_unified, pp_unsigned, Mode, ModeSignals, PPCell, PPMatrix, Scheme,
};
pub use reduce::{reduce, reduce_traced, ReducerKind, ReductionTrace};
