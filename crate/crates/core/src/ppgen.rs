//! Partial-product generation for the unsigned, signed (Baugh-Wooley),
//! mixed and unified (s/u/m controlled) schemes.
//!
//! Every scheme is described once as a layout of [`CellExpr`]s: which
//! boolean function of the operand bits (and, for the unified scheme, of the
//! `s`/`m` control lines) sits at which column of which row. The matrix
//! generators evaluate a layout on concrete operands; the netlist builder
//! lowers the same layout to gates.
//!
//! All layouts keep exactly `n` rows: the constant-1 cells are folded into
//! existing rows.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitnum::{BitVec, Width};
use crate::error::{Error, Result};
use crate::mulcore::MulOp;

/// How the operands are read. In `Mixed`, the multiplier `a` is unsigned and
/// the multiplicand `b` is signed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Unsigned,
    Signed,
    Mixed,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Unsigned, Mode::Signed, Mode::Mixed];

    pub fn signals(self) -> ModeSignals {
        match self {
            Mode::Signed => ModeSignals::SIGNED,
            Mode::Unsigned => ModeSignals::UNSIGNED,
            Mode::Mixed => ModeSignals::MIXED,
        }
    }

    pub fn scheme(self) -> Scheme {
        match self {
            Mode::Unsigned => Scheme::Unsigned,
            Mode::Signed => Scheme::Signed,
            Mode::Mixed => Scheme::Mixed,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Unsigned => "unsigned",
            Mode::Signed => "signed",
            Mode::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unsigned" | "u" => Ok(Mode::Unsigned),
            "signed" | "s" => Ok(Mode::Signed),
            "mixed" | "m" => Ok(Mode::Mixed),
            _ => Err(Error::UnknownName {
                what: "mode",
                value: s.to_string(),
            }),
        }
    }
}

/// Which generator produced a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Unsigned,
    Signed,
    Mixed,
    Unified,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Unsigned => "unsigned",
            Scheme::Signed => "signed",
            Scheme::Mixed => "mixed",
            Scheme::Unified => "unified",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

/// The demultiplexed `(s, u, m)` control triple. Always one-hot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeSignals {
    s: bool,
    u: bool,
    m: bool,
}

impl ModeSignals {
    pub const SIGNED: ModeSignals = ModeSignals {
        s: true,
        u: false,
        m: false,
    };
    pub const UNSIGNED: ModeSignals = ModeSignals {
        s: false,
        u: true,
        m: false,
    };
    pub const MIXED: ModeSignals = ModeSignals {
        s: false,
        u: false,
        m: true,
    };

    pub fn new(s: bool, u: bool, m: bool) -> Result<Self> {
        if s as u8 + u as u8 + m as u8 != 1 {
            return Err(Error::NotOneHot { s, u, m });
        }
        Ok(ModeSignals { s, u, m })
    }

    /// Recovers the full triple from the two lines the hardware actually
    /// uses; `u` is implied by `s = m = 0`.
    pub fn from_s_m(s: bool, m: bool) -> Result<Self> {
        Self::new(s, !s && !m, m)
    }

    pub fn s(&self) -> bool {
        self.s
    }
    pub fn u(&self) -> bool {
        self.u
    }
    pub fn m(&self) -> bool {
        self.m
    }

    pub fn mode(&self) -> Mode {
        if self.s {
            Mode::Signed
        } else if self.m {
            Mode::Mixed
        } else {
            Mode::Unsigned
        }
    }
}

impl From<Mode> for ModeSignals {
    fn from(mode: Mode) -> Self {
        mode.signals()
    }
}

/// Maps an RV32M multiply instruction to its control signals. `mul` only
/// keeps the low half, which is the same in every mode, so it rides on the
/// unsigned setting.
pub fn demux_mode(op: MulOp) -> ModeSignals {
    match op {
        MulOp::Mulh => ModeSignals::SIGNED,
        MulOp::Mulhu | MulOp::Mul => ModeSignals::UNSIGNED,
        MulOp::Mulhsu => ModeSignals::MIXED,
    }
}

/// [`demux_mode`] on a textual mnemonic.
pub fn demux_mnemonic(mnemonic: &str) -> Result<ModeSignals> {
    mnemonic.parse().map(demux_mode)
}

/// A control line (or derived control net) of the unified array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Control {
    S,
    M,
    SOrM,
}

impl Control {
    #[inline]
    pub fn eval(self, sig: ModeSignals) -> bool {
        match self {
            Control::S => sig.s,
            Control::M => sig.m,
            Control::SOrM => sig.s | sig.m,
        }
    }
}

/// Boolean function computing one partial-product cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellExpr {
    One,
    /// `a_i · b_j`
    Product {
        i: usize,
        j: usize,
    },
    /// `NOT(a_i · b_j)`
    NotProduct {
        i: usize,
        j: usize,
    },
    /// `ctrl XOR a_i · b_j`
    ControlledXor {
        ctrl: Control,
        i: usize,
        j: usize,
    },
    /// The control value itself.
    Control(Control),
    /// `s OR (m AND NOT(a_i · b_j))`, the row-0 column-n cell of the unified array.
    SignedOrMixedInverted {
        i: usize,
        j: usize,
    },
}

impl CellExpr {
    #[inline]
    pub fn eval(self, a: &BitVec, b: &BitVec, sig: ModeSignals) -> bool {
        let p = |i: usize, j: usize| a.bit(i) & b.bit(j);
        match self {
            CellExpr::One => true,
            CellExpr::Product { i, j } => p(i, j),
            CellExpr::NotProduct { i, j } => !p(i, j),
            CellExpr::ControlledXor { ctrl, i, j } => ctrl.eval(sig) ^ p(i, j),
            CellExpr::Control(ctrl) => ctrl.eval(sig),
            CellExpr::SignedOrMixedInverted { i, j } => sig.s | (sig.m & !p(i, j)),
        }
    }

    /// The symbolic term this cell reduces to once the control lines are
    /// fixed; `None` when it is tied to 0.
    pub fn resolve(self, sig: ModeSignals) -> Option<Term> {
        match self {
            CellExpr::One => Some(Term::One),
            CellExpr::Product { i, j } => Some(Term::Product { i, j }),
            CellExpr::NotProduct { i, j } => Some(Term::Inverted { i, j }),
            CellExpr::ControlledXor { ctrl, i, j } => Some(if ctrl.eval(sig) {
                Term::Inverted { i, j }
            } else {
                Term::Product { i, j }
            }),
            CellExpr::Control(ctrl) => ctrl.eval(sig).then_some(Term::One),
            CellExpr::SignedOrMixedInverted { i, j } => {
                if sig.s {
                    Some(Term::One)
                } else if sig.m {
                    Some(Term::Inverted { i, j })
                } else {
                    None
                }
            }
        }
    }
}

/// What a cell of a concrete matrix stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Term {
    Product { i: usize, j: usize },
    Inverted { i: usize, j: usize },
    One,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match *self {
            Term::Product { i, j } => format!("a{i}b{j}"),
            Term::Inverted { i, j } => format!("~a{i}b{j}"),
            Term::One => "1".to_string(),
        };
        f.pad(&s)
    }
}

/// One weighted bit of a partial-product matrix, worth `2^column`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PPCell {
    pub column: usize,
    pub bit: bool,
    pub term: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PPMatrix {
    n: Width,
    rows: Vec<Vec<PPCell>>,
    scheme: Scheme,
}

impl PPMatrix {
    /// Assembles a matrix from explicit rows, checking the row-count and
    /// column invariants.
    pub fn from_rows(n: Width, scheme: Scheme, rows: Vec<Vec<PPCell>>) -> Result<Self> {
        let m = PPMatrix { n, rows, scheme };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n.get();
        if self.rows.len() != n {
            return Err(Error::MalformedMatrix(format!(
                "{} rows, expected {n}",
                self.rows.len()
            )));
        }
        for (r, row) in self.rows.iter().enumerate() {
            let mut seen = 0u128;
            for cell in row {
                if cell.column >= 2 * n {
                    return Err(Error::MalformedMatrix(format!(
                        "row {r}: column {} is outside the {}-bit product",
                        cell.column,
                        2 * n
                    )));
                }
                if seen >> cell.column & 1 == 1 {
                    return Err(Error::MalformedMatrix(format!(
                        "row {r}: column {} appears twice",
                        cell.column
                    )));
                }
                seen |= 1 << cell.column;
            }
        }
        Ok(())
    }

    pub fn n(&self) -> Width {
        self.n
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn rows(&self) -> &[Vec<PPCell>] {
        &self.rows
    }

    pub fn product_width(&self) -> usize {
        self.n.product()
    }

    pub fn cells(&self) -> impl Iterator<Item = &PPCell> {
        self.rows.iter().flatten()
    }

    /// Sum of all set cells' weights, modulo `2^(2n)`.
    pub fn weighted_sum(&self) -> u128 {
        let w = self.product_width();
        let sum = self
            .cells()
            .filter(|c| c.bit)
            .fold(0u128, |acc, c| acc.wrapping_add(1u128 << c.column));
        if w == 128 {
            sum
        } else {
            sum & ((1u128 << w) - 1)
        }
    }

    /// Number of cells in each of the `2n` columns.
    pub fn column_heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.product_width()];
        for c in self.cells() {
            h[c.column] += 1;
        }
        h
    }

    /// Cell-for-cell comparison of the rows, ignoring the scheme tag.
    pub fn same_cells(&self, other: &PPMatrix) -> bool {
        self.n == other.n && self.rows == other.rows
    }

    /// Value of row `r` as an integer (its cells' weighted sum).
    pub fn row_value(&self, r: usize) -> u128 {
        self.rows[r]
            .iter()
            .filter(|c| c.bit)
            .fold(0u128, |acc, c| acc.wrapping_add(1u128 << c.column))
    }
}

/// Calls `f(row, column, expr)` for every cell of `scheme`'s layout, rows in
/// order and columns ascending within a row.
pub fn for_each_cell(n: Width, scheme: Scheme, mut f: impl FnMut(usize, usize, CellExpr)) {
    use CellExpr::{ControlledXor, NotProduct, One, Product};
    let n = n.get();
    let last = n - 1;
    for i in 0..n {
        if i == 0 {
            for j in 0..last {
                f(0, j, Product { i: 0, j });
            }
            match scheme {
                Scheme::Unsigned => f(0, last, Product { i: 0, j: last }),
                Scheme::Signed => {
                    f(0, last, NotProduct { i: 0, j: last });
                    f(0, n, One);
                }
                Scheme::Mixed => {
                    f(0, last, Product { i: 0, j: last });
                    f(0, n, NotProduct { i: 0, j: last });
                }
                Scheme::Unified => {
                    f(
                        0,
                        last,
                        ControlledXor {
                            ctrl: Control::S,
                            i: 0,
                            j: last,
                        },
                    );
                    f(0, n, CellExpr::SignedOrMixedInverted { i: 0, j: last });
                }
            }
        } else if i < last {
            for j in 0..last {
                f(i, i + j, Product { i, j });
            }
            let top = last + i;
            match scheme {
                Scheme::Unsigned => f(i, top, Product { i, j: last }),
                Scheme::Signed | Scheme::Mixed => f(i, top, NotProduct { i, j: last }),
                Scheme::Unified => f(
                    i,
                    top,
                    ControlledXor {
                        ctrl: Control::SOrM,
                        i,
                        j: last,
                    },
                ),
            }
        } else {
            for j in 0..last {
                let col = last + j;
                match scheme {
                    Scheme::Unsigned | Scheme::Mixed => f(last, col, Product { i: last, j }),
                    Scheme::Signed => f(last, col, NotProduct { i: last, j }),
                    Scheme::Unified => f(
                        last,
                        col,
                        ControlledXor {
                            ctrl: Control::S,
                            i: last,
                            j,
                        },
                    ),
                }
            }
            let (hi, lo) = (2 * n - 1, 2 * n - 2);
            match scheme {
                Scheme::Unsigned => f(last, lo, Product { i: last, j: last }),
                Scheme::Signed => {
                    f(last, lo, Product { i: last, j: last });
                    f(last, hi, One);
                }
                Scheme::Mixed => {
                    f(last, lo, NotProduct { i: last, j: last });
                    f(last, hi, One);
                }
                Scheme::Unified => {
                    f(
                        last,
                        lo,
                        ControlledXor {
                            ctrl: Control::M,
                            i: last,
                            j: last,
                        },
                    );
                    f(last, hi, CellExpr::Control(Control::SOrM));
                }
            }
        }
    }
}

/// A layout cell: expression plus its column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayoutCell {
    pub column: usize,
    pub expr: CellExpr,
}

/// The full layout of `scheme` at width `n`, one vector per row.
pub fn layout(n: Width, scheme: Scheme) -> Vec<Vec<LayoutCell>> {
    let mut rows = vec![Vec::new(); n.get()];
    for_each_cell(n, scheme, |r, column, expr| rows[r].push(LayoutCell { column, expr }));
    rows
}

fn check_widths(a: &BitVec, b: &BitVec) -> Result<Width> {
    if a.width() != b.width() {
        return Err(Error::WidthMismatch {
            left: a.width(),
            right: b.width(),
        });
    }
    Width::new(a.width())
}

fn generate(a: &BitVec, b: &BitVec, scheme: Scheme, sig: ModeSignals) -> Result<PPMatrix> {
    let n = check_widths(a, b)?;
    let mut rows: Vec<Vec<PPCell>> = (0..n.get()).map(|_| Vec::with_capacity(n.get() + 1)).collect();
    for_each_cell(n, scheme, |r, column, expr| {
        let bit = expr.eval(a, b, sig);
        match expr.resolve(sig) {
            Some(term) => rows[r].push(PPCell { column, bit, term }),
            None => debug_assert!(!bit, "tied-off cell evaluated to 1"),
        }
    });
    Ok(PPMatrix { n, rows, scheme })
}

/// Cell values of the matrix [`generate`] would build, as rows of
/// `(column, bit)` without the symbolic terms.
pub fn pp_bit_rows(a: &BitVec, b: &BitVec, scheme: Scheme, sig: ModeSignals) -> Result<Vec<Vec<(usize, bool)>>> {
    let n = check_widths(a, b)?;
    let mut rows: Vec<Vec<(usize, bool)>> = (0..n.get()).map(|_| Vec::with_capacity(n.get() + 1)).collect();
    for_each_cell(n, scheme, |r, column, expr| {
        if expr.resolve(sig).is_some() {
            rows[r].push((column, expr.eval(a, b, sig)));
        }
    });
    Ok(rows)
}

/// Long-multiplication matrix: row `i` holds `a_i · b_j` at column `i + j`.
pub fn pp_unsigned(a: &BitVec, b: &BitVec) -> Result<PPMatrix> {
    generate(a, b, Scheme::Unsigned, ModeSignals::UNSIGNED)
}

/// Squeezed Baugh-Wooley matrix for signed × signed.
pub fn pp_signed(a: &BitVec, b: &BitVec) -> Result<PPMatrix> {
    generate(a, b, Scheme::Signed, ModeSignals::SIGNED)
}

/// Squeezed matrix for unsigned multiplier `a` × signed multiplicand `b`.
/// The `+1` at column `n-1` is folded into row 0 as the pair
/// `a0b{n-1}` (column `n-1`) and `~a0b{n-1}` (column `n`).
pub fn pp_mixed(a: &BitVec, b: &BitVec) -> Result<PPMatrix> {
    generate(a, b, Scheme::Mixed, ModeSignals::MIXED)
}

/// The merged array, driven by the control signals. Cells whose control
/// makes them constant 0 are left out, so the result matches the dedicated
/// generator for the selected mode cell for cell.
pub fn pp_unified(a: &BitVec, b: &BitVec, sig: ModeSignals) -> Result<PPMatrix> {
    generate(a, b, Scheme::Unified, sig)
}

/// Dedicated generator for `mode`.
pub fn pp_dedicated(a: &BitVec, b: &BitVec, mode: Mode) -> Result<PPMatrix> {
    match mode {
        Mode::Unsigned => pp_unsigned(a, b),
        Mode::Signed => pp_signed(a, b),
        Mode::Mixed => pp_mixed(a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitnum::{encode_signed, encode_unsigned};

    fn w(n: usize) -> Width {
        Width::new(n).unwrap()
    }

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    fn product_mod(value: i128, n: usize) -> u128 {
        (value as u128) & ((1u128 << (2 * n)) - 1)
    }

    #[test]
    fn unsigned_examples() {
        let m = pp_unsigned(&bv("1001"), &bv("0101")).unwrap();
        assert_eq!(m.weighted_sum(), 45);
        let m = pp_unsigned(&bv("0000"), &bv("1111")).unwrap();
        assert!(m.cells().all(|c| !c.bit));
        assert_eq!(m.weighted_sum(), 0);
    }

    #[test]
    fn unsigned_zero_rows() {
        let a = bv("0101");
        let m = pp_unsigned(&a, &bv("1111")).unwrap();
        for (i, row) in m.rows().iter().enumerate() {
            if !a.bit(i) {
                assert!(row.iter().all(|c| !c.bit), "row {i}");
            }
        }
    }

    #[test]
    fn signed_examples() {
        assert_eq!(pp_signed(&bv("1111"), &bv("1111")).unwrap().weighted_sum(), 1);
        assert_eq!(pp_signed(&bv("1000"), &bv("1000")).unwrap().weighted_sum(), 64);
    }

    #[test]
    fn mixed_examples() {
        assert_eq!(pp_mixed(&bv("1111"), &bv("1111")).unwrap().weighted_sum(), 241);
        assert_eq!(pp_mixed(&bv("0101"), &bv("1000")).unwrap().weighted_sum(), 216);
    }

    #[test]
    fn unified_examples() {
        let m = pp_unified(&bv("1001"), &bv("0101"), ModeSignals::UNSIGNED).unwrap();
        assert_eq!(m.weighted_sum(), 45);
        let m = pp_unified(&bv("1111"), &bv("1111"), ModeSignals::SIGNED).unwrap();
        assert_eq!(m.weighted_sum(), 1);
    }

    #[test]
    fn signed_cell_layout_n4() {
        let m = pp_signed(&bv("0000"), &bv("0000")).unwrap();
        let terms: Vec<Vec<(usize, String)>> = m
            .rows()
            .iter()
            .map(|r| r.iter().map(|c| (c.column, c.term.to_string())).collect())
            .collect();
        assert_eq!(
            terms[0],
            [(0, "a0b0"), (1, "a0b1"), (2, "a0b2"), (3, "~a0b3"), (4, "1")].map(|(c, t)| (c, t.to_string()))
        );
        assert_eq!(
            terms[2],
            [(2, "a2b0"), (3, "a2b1"), (4, "a2b2"), (5, "~a2b3")].map(|(c, t)| (c, t.to_string()))
        );
        assert_eq!(
            terms[3],
            [(3, "~a3b0"), (4, "~a3b1"), (5, "~a3b2"), (6, "a3b3"), (7, "1")].map(|(c, t)| (c, t.to_string()))
        );
    }

    #[test]
    fn mixed_row0_fold_in() {
        let m = pp_mixed(&bv("0000"), &bv("0000")).unwrap();
        let row0: Vec<(usize, String)> = m.rows()[0].iter().map(|c| (c.column, c.term.to_string())).collect();
        assert_eq!(row0[3], (3, "a0b3".to_string()));
        assert_eq!(row0[4], (4, "~a0b3".to_string()));
        let last: Vec<String> = m.rows()[3].iter().map(|c| c.term.to_string()).collect();
        assert_eq!(last, ["a3b0", "a3b1", "a3b2", "~a3b3", "1"]);
    }

    #[test]
    fn every_layout_keeps_n_rows() {
        for n in [2, 3, 4, 8, 32, 64] {
            for scheme in [Scheme::Unsigned, Scheme::Signed, Scheme::Mixed, Scheme::Unified] {
                let a = BitVec::zeros(n).unwrap();
                let m = generate(&a, &a, scheme, ModeSignals::SIGNED).unwrap();
                m.validate().unwrap();
                assert_eq!(m.rows().len(), n);
            }
        }
    }

    #[test]
    fn exhaustive_n4_all_schemes() {
        let n = w(4);
        for x in 0..16u128 {
            for y in 0..16u128 {
                let a = encode_unsigned(x, n).unwrap();
                let b = encode_unsigned(y, n).unwrap();
                let (sa, sb) = (a.decode_signed(), b.decode_signed());
                assert_eq!(pp_unsigned(&a, &b).unwrap().weighted_sum(), x * y);
                assert_eq!(pp_signed(&a, &b).unwrap().weighted_sum(), product_mod(sa * sb, 4));
                assert_eq!(pp_mixed(&a, &b).unwrap().weighted_sum(), product_mod(x as i128 * sb, 4));
                for mode in Mode::ALL {
                    let u = pp_unified(&a, &b, mode.signals()).unwrap();
                    let d = pp_dedicated(&a, &b, mode).unwrap();
                    assert!(u.same_cells(&d), "{mode} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn n2_has_no_intermediate_rows() {
        let n = w(2);
        for x in -2i128..2 {
            for y in -2i128..2 {
                let a = encode_signed(x, n).unwrap();
                let b = encode_signed(y, n).unwrap();
                assert_eq!(pp_signed(&a, &b).unwrap().weighted_sum(), product_mod(x * y, 2));
                let au = a.decode_unsigned() as i128;
                assert_eq!(pp_mixed(&a, &b).unwrap().weighted_sum(), product_mod(au * y, 2));
            }
        }
    }

    #[test]
    fn width_mismatch() {
        let e = pp_unsigned(&bv("1001"), &bv("101")).unwrap_err();
        assert_eq!(e, Error::WidthMismatch { left: 4, right: 3 });
        assert!(pp_unified(&bv("1"), &bv("1"), ModeSignals::SIGNED).is_err());
    }

    #[test]
    fn signals() {
        assert!(ModeSignals::new(true, true, false).is_err());
        assert!(ModeSignals::new(false, false, false).is_err());
        assert_eq!(ModeSignals::from_s_m(false, false).unwrap(), ModeSignals::UNSIGNED);
        assert!(ModeSignals::from_s_m(true, true).is_err());
        let sig = demux_mnemonic("mulh").unwrap();
        assert!(sig.s() && !sig.u() && !sig.m());
        let sig = demux_mnemonic("mulhu").unwrap();
        assert!(!sig.s() && sig.u() && !sig.m());
        let sig = demux_mnemonic("mulhsu").unwrap();
        assert!(!sig.s() && !sig.u() && sig.m());
        assert_eq!(demux_mnemonic("mul").unwrap(), ModeSignals::UNSIGNED);
        assert!(matches!(demux_mnemonic("div"), Err(Error::UnknownMnemonic(_))));
    }

    #[test]
    fn malformed_matrix_rejected() {
        let cell = PPCell {
            column: 0,
            bit: true,
            term: Term::One,
        };
        let e = PPMatrix::from_rows(w(2), Scheme::Unsigned, vec![vec![cell, cell], vec![]]);
        assert!(matches!(e, Err(Error::MalformedMatrix(_))));
        let far = PPCell { column: 4, ..cell };
        assert!(PPMatrix::from_rows(w(2), Scheme::Unsigned, vec![vec![far], vec![]]).is_err());
        assert!(PPMatrix::from_rows(w(2), Scheme::Unsigned, vec![vec![cell]]).is_err());
    }
}
