//! Fixed-width bit vectors with unsigned and two's-complement readings.
//!
//! A [`BitVec`] stores at most 128 bits, which bounds operands to
//! [`Width::MAX`] = 64 bits so that every 2n-bit product is still exact.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Operand width of a multiplier, `2 <= n <= 64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Width(u8);

impl Width {
    pub const MIN: usize = 2;
    pub const MAX: usize = 64;

    pub fn new(n: usize) -> Result<Self> {
        if (Self::MIN..=Self::MAX).contains(&n) {
            Ok(Width(n as u8))
        } else {
            Err(Error::InvalidWidth(n))
        }
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// Width of the full product, `2n`.
    #[inline]
    pub fn product(self) -> usize {
        2 * self.get()
    }
}

impl TryFrom<usize> for Width {
    type Error = Error;
    fn try_from(n: usize) -> Result<Self> {
        Width::new(n)
    }
}

impl From<Width> for usize {
    fn from(w: Width) -> usize {
        w.get()
    }
}

impl fmt::Display for Width {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[inline]
fn mask(width: usize) -> u128 {
    if width >= 128 {
        u128::MAX
    } else {
        (1u128 << width) - 1
    }
}

/// An immutable bit sequence; index 0 is the least significant bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVec {
    width: u8,
    raw: u128,
}

impl BitVec {
    pub const MAX_WIDTH: usize = 128;

    /// Builds a vector from raw bits. Fails if `raw` has bits set at or
    /// above `width`.
    pub fn from_raw(width: usize, raw: u128) -> Result<Self> {
        if width == 0 || width > Self::MAX_WIDTH {
            return Err(Error::InvalidBitWidth(width));
        }
        if raw & !mask(width) != 0 {
            return Err(Error::OutOfRange {
                value: format!("{raw:#x}"),
                width,
                reading: "raw bits",
            });
        }
        Ok(BitVec {
            width: width as u8 - 1,
            raw,
        })
    }

    /// Keeps the low `width` bits of `raw`.
    pub fn truncate(width: usize, raw: u128) -> Result<Self> {
        if width == 0 || width > Self::MAX_WIDTH {
            return Err(Error::InvalidBitWidth(width));
        }
        Ok(BitVec {
            width: width as u8 - 1,
            raw: raw & mask(width),
        })
    }

    pub fn zeros(width: usize) -> Result<Self> {
        Self::from_raw(width, 0)
    }

    /// Collects bits given least significant first.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Result<Self> {
        let mut raw = 0u128;
        let mut width = 0usize;
        for bit in bits {
            if width == Self::MAX_WIDTH {
                return Err(Error::InvalidBitWidth(width + 1));
            }
            raw |= (bit as u128) << width;
            width += 1;
        }
        Self::from_raw(width, raw)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width as usize + 1
    }

    #[inline]
    pub fn raw(&self) -> u128 {
        self.raw
    }

    /// Bit `i`, or `false` past the top.
    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        i < self.width() && (self.raw >> i) & 1 == 1
    }

    #[inline]
    pub fn msb(&self) -> bool {
        self.bit(self.width() - 1)
    }

    pub fn bits(&self) -> impl DoubleEndedIterator<Item = bool> + ExactSizeIterator + '_ {
        (0..self.width()).map(move |i| self.bit(i))
    }

    pub fn decode_unsigned(&self) -> u128 {
        self.raw
    }

    pub fn decode_signed(&self) -> i128 {
        let w = self.width();
        if w == 128 {
            self.raw as i128
        } else if self.msb() {
            self.raw as i128 - (1i128 << w)
        } else {
            self.raw as i128
        }
    }

    /// `len` bits starting at `lo`.
    pub fn slice(&self, lo: usize, len: usize) -> Result<Self> {
        if lo + len > self.width() {
            return Err(Error::InvalidBitWidth(lo + len));
        }
        Self::truncate(len, self.raw >> lo)
    }

    /// Lower half of an even-width vector.
    pub fn low_half(&self) -> Self {
        let h = self.width() / 2;
        Self::truncate(h.max(1), self.raw).expect("half width is valid")
    }

    /// Upper half of an even-width vector.
    pub fn high_half(&self) -> Self {
        let h = self.width() / 2;
        Self::truncate(h.max(1), self.raw >> h).expect("half width is valid")
    }

    /// `high` placed above `self`.
    pub fn concat_above(&self, high: &BitVec) -> Result<Self> {
        let w = self.width() + high.width();
        if w > Self::MAX_WIDTH {
            return Err(Error::InvalidBitWidth(w));
        }
        Self::from_raw(w, self.raw | (high.raw << self.width()))
    }

    /// Hex rendering zero-padded to the vector width, e.g. `0xfffffffe`.
    pub fn to_hex(&self) -> String {
        let digits = self.width().div_ceil(4);
        format!("0x{:0digits$x}", self.raw)
    }
}

pub fn encode_unsigned(value: u128, n: Width) -> Result<BitVec> {
    let width = n.get();
    if value > mask(width) {
        return Err(Error::OutOfRange {
            value: value.to_string(),
            width,
            reading: "unsigned",
        });
    }
    BitVec::from_raw(width, value)
}

pub fn encode_signed(value: i128, n: Width) -> Result<BitVec> {
    let width = n.get();
    let lo = -(1i128 << (width - 1));
    let hi = (1i128 << (width - 1)) - 1;
    if value < lo || value > hi {
        return Err(Error::OutOfRange {
            value: value.to_string(),
            width,
            reading: "two's complement",
        });
    }
    BitVec::truncate(width, value as u128)
}

pub fn decode_unsigned(v: &BitVec) -> u128 {
    v.decode_unsigned()
}

pub fn decode_signed(v: &BitVec) -> i128 {
    v.decode_signed()
}

/// MSB-first, e.g. `1001`.
impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.bits().rev().map(|b| if b { '1' } else { '0' }).collect();
        f.pad(&s)
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({}'b{})", self.width(), self)
    }
}

/// Parses an MSB-first string of `0`/`1`; `_` separators are skipped.
impl FromStr for BitVec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let digits: Vec<char> = s.chars().filter(|&c| c != '_').collect();
        if digits.is_empty() || digits.iter().any(|&c| c != '0' && c != '1') {
            return Err(Error::InvalidBitString(s.to_string()));
        }
        BitVec::from_bits(digits.iter().rev().map(|&c| c == '1'))
    }
}
