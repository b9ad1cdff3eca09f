//! RV32M multiply instructions on top of the unified array.
//!
//! Operand mapping: the multiplier `a` is `rs2` and the multiplicand `b` is
//! `rs1`, so `mulhsu` (signed `rs1` × unsigned `rs2`) is exactly the mixed
//! scheme. `mul` takes the low half of the unsigned setting.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitnum::BitVec;
use crate::error::{Error, Result};
use crate::ppgen::{demux_mode, pp_bit_rows, ModeSignals, Scheme};
use crate::reduce::{reduce_bit_rows, ReducerKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MulOp {
    Mul,
    Mulh,
    Mulhu,
    Mulhsu,
}

impl MulOp {
    pub const ALL: [MulOp; 4] = [MulOp::Mul, MulOp::Mulh, MulOp::Mulhu, MulOp::Mulhsu];

    pub fn mnemonic(self) -> &'static str {
        match self {
            MulOp::Mul => "mul",
            MulOp::Mulh => "mulh",
            MulOp::Mulhu => "mulhu",
            MulOp::Mulhsu => "mulhsu",
        }
    }

    pub fn signals(self) -> ModeSignals {
        demux_mode(self)
    }

    /// Whether the instruction keeps the upper half of the product.
    pub fn is_high(self) -> bool {
        self != MulOp::Mul
    }
}

impl fmt::Display for MulOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.mnemonic())
    }
}

impl FromStr for MulOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mul" => Ok(MulOp::Mul),
            "mulh" => Ok(MulOp::Mulh),
            "mulhu" => Ok(MulOp::Mulhu),
            "mulhsu" => Ok(MulOp::Mulhsu),
            _ => Err(Error::UnknownMnemonic(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MulInstruction {
    pub op: MulOp,
    pub rs1: BitVec,
    pub rs2: BitVec,
}

impl MulInstruction {
    pub fn new(op: MulOp, rs1: BitVec, rs2: BitVec) -> Result<Self> {
        if rs1.width() != rs2.width() {
            return Err(Error::WidthMismatch {
                left: rs1.width(),
                right: rs2.width(),
            });
        }
        Ok(MulInstruction { op, rs1, rs2 })
    }

    /// 32-bit register operands.
    pub fn rv32(op: MulOp, rs1: u32, rs2: u32) -> Self {
        let r = |v: u32| BitVec::from_raw(32, v as u128).expect("32-bit register");
        MulInstruction {
            op,
            rs1: r(rs1),
            rs2: r(rs2),
        }
    }
}

/// Full `2n`-bit product of `rs1` × `rs2` under `mode`.
pub fn execute_full(rs1: &BitVec, rs2: &BitVec, mode: ModeSignals, reducer: ReducerKind) -> Result<BitVec> {
    let rows = pp_bit_rows(rs2, rs1, Scheme::Unified, mode)?;
    Ok(reduce_bit_rows(rows, 2 * rs1.width(), reducer))
}

/// Result register of `inst`: the low or high `n` bits of the product.
pub fn execute(inst: &MulInstruction, reducer: ReducerKind) -> Result<BitVec> {
    let full = execute_full(&inst.rs1, &inst.rs2, inst.op.signals(), reducer)?;
    Ok(if inst.op.is_high() {
        full.high_half()
    } else {
        full.low_half()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitnum::{encode_signed, encode_unsigned, Width};

    fn run32(op: MulOp, rs1: u32, rs2: u32) -> u32 {
        let r = execute(&MulInstruction::rv32(op, rs1, rs2), ReducerKind::Wallace).unwrap();
        r.decode_unsigned() as u32
    }

    #[test]
    fn rv32_examples() {
        assert_eq!(run32(MulOp::Mulhu, 0xFFFF_FFFF, 0xFFFF_FFFF), 0xFFFF_FFFE);
        assert_eq!(run32(MulOp::Mulh, 0x8000_0000, 0x8000_0000), 0x4000_0000);
        assert_eq!(run32(MulOp::Mulhsu, 0xFFFF_FFFF, 0x0000_0002), 0xFFFF_FFFF);
    }

    #[test]
    fn mul_n4_model() {
        let n = Width::new(4).unwrap();
        let inst = MulInstruction::new(
            MulOp::Mul,
            encode_unsigned(9, n).unwrap(),
            encode_unsigned(5, n).unwrap(),
        )
        .unwrap();
        assert_eq!(execute(&inst, ReducerKind::Ripple).unwrap().to_string(), "1101");
    }

    #[test]
    fn full_product_examples() {
        let n = Width::new(4).unwrap();
        let nine = encode_unsigned(9, n).unwrap();
        let five = encode_unsigned(5, n).unwrap();
        let p = execute_full(&nine, &five, ModeSignals::UNSIGNED, ReducerKind::Ripple).unwrap();
        assert_eq!(p.to_string(), "00101101");
        let zero = encode_unsigned(0, n).unwrap();
        let neg = encode_signed(-7, n).unwrap();
        for sig in [ModeSignals::SIGNED, ModeSignals::UNSIGNED, ModeSignals::MIXED] {
            for kind in ReducerKind::ALL {
                assert_eq!(execute_full(&neg, &zero, sig, kind).unwrap().decode_unsigned(), 0);
            }
        }
    }

    #[test]
    fn mulhsu_is_asymmetric() {
        let a = run32(MulOp::Mulhsu, 0xFFFF_FFFF, 2);
        let b = run32(MulOp::Mulhsu, 2, 0xFFFF_FFFF);
        // -1 * 2 = -2 -> high word all ones; 2 * (2^32 - 1) -> high word 1.
        assert_eq!((a, b), (0xFFFF_FFFF, 1));
    }

    #[test]
    fn width_mismatch() {
        let a = BitVec::zeros(4).unwrap();
        let b = BitVec::zeros(5).unwrap();
        assert!(MulInstruction::new(MulOp::Mul, a, b).is_err());
        assert!(execute_full(&a, &b, ModeSignals::SIGNED, ReducerKind::Dadda).is_err());
    }

    #[test]
    fn parse_mnemonics() {
        assert_eq!("MULHSU".parse::<MulOp>().unwrap(), MulOp::Mulhsu);
        assert!(matches!("divu".parse::<MulOp>(), Err(Error::UnknownMnemonic(_))));
    }
}
