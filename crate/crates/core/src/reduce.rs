//! Partial-product summation: ripple accumulation, Wallace and Dadda trees.
//!
//! The reducers are written once against [`AdderCells`], which supplies the
//! half and full adder cells. With plain `bool`s ([`BitAdders`]) they compute a
//! product; with the netlist builder they emit the corresponding gates, so
//! the evaluated model and the generated hardware share one construction.
//!
//! Carries out of column `2n-1` are dropped: every scheme relies on the sum
//! being taken modulo `2^(2n)`.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitnum::BitVec;
use crate::error::{Error, Result};
use crate::ppgen::PPMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReducerKind {
    /// Rows accumulated one after another with ripple-carry adders.
    Ripple,
    /// Greedy column compression: every triple gets a full adder and every
    /// leftover pair a half adder, in every stage.
    #[default]
    Wallace,
    /// Minimal compression towards the 2, 3, 4, 6, 9, ... height targets.
    Dadda,
}

impl ReducerKind {
    pub const ALL: [ReducerKind; 3] = [ReducerKind::Ripple, ReducerKind::Wallace, ReducerKind::Dadda];

    pub fn name(self) -> &'static str {
        match self {
            ReducerKind::Ripple => "ripple",
            ReducerKind::Wallace => "wallace",
            ReducerKind::Dadda => "dadda",
        }
    }
}

impl fmt::Display for ReducerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for ReducerKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ripple" => Ok(ReducerKind::Ripple),
            "wallace" => Ok(ReducerKind::Wallace),
            "dadda" => Ok(ReducerKind::Dadda),
            _ => Err(Error::UnknownName {
                what: "reducer",
                value: s.to_string(),
            }),
        }
    }
}

/// Where an adder cell sits: reduction stage (or the final adder), column,
/// and its index among the cells of that stage and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Site {
    pub phase: Phase,
    pub column: usize,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// Tree stage, or row number for ripple accumulation. Starts at 1.
    Stage(usize),
    /// The carry-propagate adder resolving the last two rows.
    Final,
}

/// Supplier of adder cells for the reducers.
pub trait AdderCells {
    type Bit: Copy + Default;

    /// Returns `(sum, carry)`.
    fn half_add(&mut self, site: Site, a: Self::Bit, b: Self::Bit) -> (Self::Bit, Self::Bit);

    /// Returns `(sum, carry)`.
    fn full_add(&mut self, site: Site, a: Self::Bit, b: Self::Bit, c: Self::Bit) -> (Self::Bit, Self::Bit);
}

/// Adder cells on concrete bits.
#[derive(Debug, Default, Clone, Copy)]
pub struct BitAdders;

impl AdderCells for BitAdders {
    type Bit = bool;

    #[inline]
    fn half_add(&mut self, _: Site, a: bool, b: bool) -> (bool, bool) {
        (a ^ b, a & b)
    }

    #[inline]
    fn full_add(&mut self, _: Site, a: bool, b: bool, c: bool) -> (bool, bool) {
        (a ^ b ^ c, (a & b) | (c & (a ^ b)))
    }
}

/// Record of one reduction.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ReductionTrace {
    pub kind: ReducerKind,
    /// Column heights of the input matrix.
    pub initial: Vec<usize>,
    /// Column heights after each stage. The last profile (or `initial`, if
    /// no stage ran) has no column above 2.
    pub stages: Vec<Vec<usize>>,
    /// Full adders used as 3:2 compressors inside the tree.
    pub csa_count: usize,
    /// Half adders used inside the tree.
    pub tree_half_adders: usize,
    /// Full adders in carry-propagate chains (ripple rows and the final adder).
    pub cpa_full_adders: usize,
    /// Half adders in carry-propagate chains.
    pub cpa_half_adders: usize,
    /// Columns spanned by the final carry-propagate adder.
    pub final_adder_width: usize,
}

impl ReductionTrace {
    pub fn max_heights(&self) -> Vec<usize> {
        self.stages
            .iter()
            .map(|s| s.iter().copied().max().unwrap_or(0))
            .collect()
    }

    pub fn final_profile(&self) -> &[usize] {
        self.stages.last().unwrap_or(&self.initial)
    }

    pub fn full_adders(&self) -> usize {
        self.csa_count + self.cpa_full_adders
    }

    pub fn half_adders(&self) -> usize {
        self.tree_half_adders + self.cpa_half_adders
    }

    /// Line-oriented text report, MSB column first in each profile.
    pub fn to_report(&self) -> String {
        let profile = |h: &[usize]| {
            let cols: Vec<String> = h.iter().rev().map(|x| x.to_string()).collect();
            format!("{} (max {})", cols.join(" "), h.iter().max().unwrap_or(&0))
        };
        let mut out = String::new();
        let _ = writeln!(out, "reducer={}", self.kind);
        let _ = writeln!(out, "initial: {}", profile(&self.initial));
        for (k, s) in self.stages.iter().enumerate() {
            let _ = writeln!(out, "stage {}: {}", k + 1, profile(s));
        }
        let _ = writeln!(out, "csa_count={}", self.csa_count);
        let _ = writeln!(out, "tree_half_adders={}", self.tree_half_adders);
        let _ = writeln!(out, "cpa_full_adders={}", self.cpa_full_adders);
        let _ = writeln!(out, "cpa_half_adders={}", self.cpa_half_adders);
        let _ = writeln!(out, "final_adder_width={}", self.final_adder_width);
        out
    }
}

/// Dadda height targets below `max_height`, largest first.
pub fn dadda_targets(max_height: usize) -> Vec<usize> {
    let mut seq = vec![2usize];
    while let Some(&d) = seq.last() {
        let next = d * 3 / 2;
        if next >= max_height {
            break;
        }
        seq.push(next);
    }
    seq.retain(|&d| d < max_height);
    seq.reverse();
    seq
}

/// Column-major bit store, each column holding at most `stride` bits.
struct Columns<T> {
    stride: usize,
    lens: Vec<usize>,
    data: Vec<T>,
}

impl<T: Copy + Default> Columns<T> {
    fn new(width: usize, stride: usize) -> Self {
        Columns {
            stride,
            lens: vec![0; width],
            data: vec![T::default(); width * stride],
        }
    }

    fn width(&self) -> usize {
        self.lens.len()
    }

    fn height(&self, column: usize) -> usize {
        self.lens[column]
    }

    fn max_height(&self) -> usize {
        self.lens.iter().copied().max().unwrap_or(0)
    }

    fn push(&mut self, column: usize, bit: T) {
        let k = self.lens[column];
        assert!(k < self.stride, "column {column} overflow");
        self.data[column * self.stride + k] = bit;
        self.lens[column] = k + 1;
    }

    /// Bit `k` of `column`; consumed columns are emptied with [`Columns::reset`].
    fn take(&self, column: usize, k: usize) -> T {
        self.data[column * self.stride + k]
    }

    fn reset(&mut self, column: usize) {
        self.lens[column] = 0;
    }
}

struct Run<'a, C: AdderCells> {
    cells: &'a mut C,
    width: usize,
    /// Upper bound on any column height during reduction.
    capacity: usize,
    trace: Option<&'a mut ReductionTrace>,
}

impl<C: AdderCells> Run<'_, C> {
    fn note(&mut self, f: impl FnOnce(&mut ReductionTrace)) {
        if let Some(t) = self.trace.as_deref_mut() {
            f(t);
        }
    }

    fn columns(&self) -> Columns<C::Bit> {
        Columns::new(self.width, self.capacity)
    }

    fn push_carry(&self, next: &mut Columns<C::Bit>, column: usize, carry: C::Bit) {
        if column + 1 < self.width {
            next.push(column + 1, carry);
        }
    }

    fn end_stage(&mut self, cur: &Columns<C::Bit>, fas: usize, has: usize) {
        if self.trace.is_some() {
            let profile = cur.lens.clone();
            self.note(|t| {
                t.csa_count += fas;
                t.tree_half_adders += has;
                t.stages.push(profile);
            });
        }
    }

    fn wallace(&mut self, mut cur: Columns<C::Bit>) -> Columns<C::Bit> {
        let mut next = self.columns();
        let mut stage = 0;
        while cur.max_height() > 2 {
            stage += 1;
            let (mut fas, mut has) = (0, 0);
            for column in 0..self.width {
                let h = cur.height(column);
                let (mut k, mut index) = (0, 0);
                while k < h {
                    let site = Site {
                        phase: Phase::Stage(stage),
                        column,
                        index,
                    };
                    let (s, co) = match h - k {
                        1 => {
                            next.push(column, cur.take(column, k));
                            break;
                        }
                        2 => {
                            has += 1;
                            k += 2;
                            self.cells
                                .half_add(site, cur.take(column, k - 2), cur.take(column, k - 1))
                        }
                        _ => {
                            fas += 1;
                            k += 3;
                            let (a, b, c) = (
                                cur.take(column, k - 3),
                                cur.take(column, k - 2),
                                cur.take(column, k - 1),
                            );
                            self.cells.full_add(site, a, b, c)
                        }
                    };
                    next.push(column, s);
                    self.push_carry(&mut next, column, co);
                    index += 1;
                }
                cur.reset(column);
            }
            std::mem::swap(&mut cur, &mut next);
            self.end_stage(&cur, fas, has);
        }
        cur
    }

    fn dadda(&mut self, mut cur: Columns<C::Bit>) -> Columns<C::Bit> {
        let mut next = self.columns();
        for (k, target) in dadda_targets(cur.max_height()).into_iter().enumerate() {
            let stage = k + 1;
            let (mut fas, mut has) = (0, 0);
            for column in 0..self.width {
                let h = cur.height(column);
                let mut height = h + next.height(column);
                let (mut k, mut index) = (0, 0);
                while height > target {
                    let site = Site {
                        phase: Phase::Stage(stage),
                        column,
                        index,
                    };
                    let (s, co) = if height - target == 1 {
                        height -= 1;
                        has += 1;
                        k += 2;
                        self.cells
                            .half_add(site, cur.take(column, k - 2), cur.take(column, k - 1))
                    } else {
                        height -= 2;
                        fas += 1;
                        k += 3;
                        let (a, b, c) = (
                            cur.take(column, k - 3),
                            cur.take(column, k - 2),
                            cur.take(column, k - 1),
                        );
                        self.cells.full_add(site, a, b, c)
                    };
                    next.push(column, s);
                    self.push_carry(&mut next, column, co);
                    index += 1;
                }
                for j in k..h {
                    next.push(column, cur.take(column, j));
                }
                cur.reset(column);
            }
            std::mem::swap(&mut cur, &mut next);
            self.end_stage(&cur, fas, has);
        }
        cur
    }

    /// Adds `row` into `acc` with a ripple-carry chain.
    fn ripple_add(
        &mut self,
        phase: Phase,
        acc: &mut [Option<C::Bit>],
        row: Vec<Option<C::Bit>>,
    ) -> (usize, usize, usize) {
        let mut carry: Option<C::Bit> = None;
        let (mut fas, mut has) = (0, 0);
        let mut first = None;
        let last = row.iter().rposition(Option::is_some);
        for (column, r) in row.into_iter().enumerate() {
            if r.is_none() && carry.is_none() && last.is_none_or(|l| column > l) {
                break;
            }
            let site = Site {
                phase,
                column,
                index: 0,
            };
            let mut slots = [acc[column].take(), r, carry.take()];
            let count = slots.iter().filter(|b| b.is_some()).count();
            let mut it = slots.iter_mut().filter_map(Option::take);
            match count {
                0 => {}
                1 => acc[column] = it.next(),
                2 => {
                    let (s, co) = self.cells.half_add(site, it.next().unwrap(), it.next().unwrap());
                    acc[column] = Some(s);
                    carry = Some(co);
                    has += 1;
                    first.get_or_insert(column);
                }
                _ => {
                    let (a, b, c) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
                    let (s, co) = self.cells.full_add(site, a, b, c);
                    acc[column] = Some(s);
                    carry = Some(co);
                    fas += 1;
                    first.get_or_insert(column);
                }
            }
        }
        let span = first.map_or(0, |f| self.width - f);
        (fas, has, span)
    }

    fn ripple(&mut self, rows: Vec<Vec<(usize, C::Bit)>>) -> Columns<C::Bit> {
        let to_dense = |row: Vec<(usize, C::Bit)>, width: usize| {
            let mut dense: Vec<Option<C::Bit>> = vec![None; width];
            for (c, b) in row {
                dense[c] = Some(b);
            }
            dense
        };
        let mut rows = rows.into_iter();
        let mut acc = rows
            .next()
            .map_or_else(|| vec![None; self.width], |r| to_dense(r, self.width));
        let rest: Vec<_> = rows.collect();
        let split = rest.len().saturating_sub(1);
        let mut rest = rest.into_iter();
        for k in 0..split {
            let row = to_dense(rest.next().unwrap(), self.width);
            let (fas, has, _) = self.ripple_add(Phase::Stage(k + 1), &mut acc, row);
            let profile: Vec<usize> = acc.iter().map(|b| b.is_some() as usize).collect();
            self.note(|t| {
                t.cpa_full_adders += fas;
                t.cpa_half_adders += has;
                t.stages.push(profile);
            });
        }
        let mut cols = self.columns();
        for (c, b) in acc.into_iter().enumerate() {
            if let Some(b) = b {
                cols.push(c, b);
            }
        }
        if let Some(last) = rest.next() {
            for (c, b) in last {
                cols.push(c, b);
            }
            let profile = cols.lens.clone();
            self.note(|t| t.stages.push(profile));
        }
        cols
    }

    fn final_add(&mut self, cols: Columns<C::Bit>) -> Vec<Option<C::Bit>> {
        debug_assert!(cols.max_height() <= 2);
        let mut acc: Vec<Option<C::Bit>> = vec![None; self.width];
        let mut row: Vec<Option<C::Bit>> = vec![None; self.width];
        for c in 0..cols.width() {
            let h = cols.height(c);
            if h > 0 {
                acc[c] = Some(cols.take(c, 0));
            }
            if h > 1 {
                row[c] = Some(cols.take(c, 1));
            }
        }
        let (fas, has, span) = self.ripple_add(Phase::Final, &mut acc, row);
        self.note(|t| {
            t.cpa_full_adders += fas;
            t.cpa_half_adders += has;
            t.final_adder_width = span;
        });
        acc
    }
}

/// Sums weighted bits given as rows of `(column, bit)` into `width` output
/// columns (`None` for a column that is structurally zero).
pub fn reduce_rows<C: AdderCells>(
    cells: &mut C,
    rows: Vec<Vec<(usize, C::Bit)>>,
    width: usize,
    kind: ReducerKind,
    trace: Option<&mut ReductionTrace>,
) -> Vec<Option<C::Bit>> {
    let mut initial = vec![0; width];
    for &(c, _) in rows.iter().flatten() {
        initial[c] += 1;
    }
    let capacity = initial.iter().copied().max().unwrap_or(0).max(2) + 1;
    let mut run = Run {
        cells,
        width,
        capacity,
        trace,
    };
    let to_columns = |rows: Vec<Vec<(usize, C::Bit)>>| {
        let mut cols = Columns::new(width, capacity);
        for (c, b) in rows.into_iter().flatten() {
            cols.push(c, b);
        }
        cols
    };
    if run.trace.is_some() {
        let initial = initial.clone();
        run.note(|t| {
            *t = ReductionTrace {
                kind,
                initial,
                ..Default::default()
            }
        });
    }
    let cols = match kind {
        ReducerKind::Ripple => run.ripple(rows),
        ReducerKind::Wallace => run.wallace(to_columns(rows)),
        ReducerKind::Dadda => run.dadda(to_columns(rows)),
    };
    run.final_add(cols)
}

/// Reduces plain `(column, bit)` rows into a `width`-bit sum.
pub fn reduce_bit_rows(rows: Vec<Vec<(usize, bool)>>, width: usize, kind: ReducerKind) -> BitVec {
    to_bitvec(reduce_rows(&mut BitAdders, rows, width, kind, None))
}

fn matrix_rows(m: &PPMatrix) -> Vec<Vec<(usize, bool)>> {
    m.rows()
        .iter()
        .map(|r| r.iter().map(|c| (c.column, c.bit)).collect())
        .collect()
}

fn to_bitvec(bits: Vec<Option<bool>>) -> BitVec {
    BitVec::from_bits(bits.into_iter().map(|b| b.unwrap_or(false))).expect("product width is valid")
}

/// Reduces a partial-product matrix to its `2n`-bit sum.
pub fn reduce(m: &PPMatrix, kind: ReducerKind) -> BitVec {
    let bits = reduce_rows(&mut BitAdders, matrix_rows(m), m.product_width(), kind, None);
    to_bitvec(bits)
}

/// [`reduce`], also returning the stage-by-stage trace.
pub fn reduce_traced(m: &PPMatrix, kind: ReducerKind) -> (BitVec, ReductionTrace) {
    let mut trace = ReductionTrace::default();
    let bits = reduce_rows(
        &mut BitAdders,
        matrix_rows(m),
        m.product_width(),
        kind,
        Some(&mut trace),
    );
    (to_bitvec(bits), trace)
}
