//! Text tableaux of partial-product matrices, MSB on the left. Complemented
//! cells are prefixed with `~`.

use std::fmt::Write as _;

use crate::bitnum::BitVec;
use crate::ppgen::{Mode, PPMatrix};

fn operand_value(v: &BitVec, signed: bool) -> i128 {
    if signed {
        v.decode_signed()
    } else {
        v.decode_unsigned() as i128
    }
}

struct Grid {
    columns: usize,
    cell: usize,
}

impl Grid {
    /// `lead` in the two-character margin, then one slot per column (MSB first).
    fn line(&self, lead: &str, slots: &[Option<String>], tail: &str) -> String {
        let mut out = format!("{lead:<2}");
        for c in (0..self.columns).rev() {
            let text = slots.get(c).cloned().flatten().unwrap_or_default();
            let _ = write!(out, "{text:>w$}", w = self.cell);
        }
        if !tail.is_empty() {
            let _ = write!(out, "   {tail}");
        }
        out.trim_end().to_string()
    }

    fn rule(&self) -> String {
        format!("  {}", "-".repeat(self.columns * self.cell))
    }
}

/// Symbolic and numeric tableaux of `m` for operands `a` (multiplier) and
/// `b` (multiplicand), followed by the product. `mode` selects how operand
/// and product values are printed.
pub fn render_tableau(m: &PPMatrix, a: &BitVec, b: &BitVec, mode: Mode) -> String {
    let n = m.n().get();
    let width = m.product_width();
    let labels: Vec<Vec<(usize, String, bool)>> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|c| (c.column, c.term.to_string(), c.bit)).collect())
        .collect();
    let widest = labels
        .iter()
        .flatten()
        .map(|(_, t, _)| t.len())
        .chain([format!("a{}", n - 1).len()])
        .max()
        .unwrap_or(1);
    let grid = Grid {
        columns: width,
        cell: widest + 1,
    };
    let (a_signed, b_signed) = match mode {
        Mode::Unsigned => (false, false),
        Mode::Signed => (true, true),
        Mode::Mixed => (false, true),
    };
    let operand_slots = |name: char, v: Option<&BitVec>| -> Vec<Option<String>> {
        (0..n)
            .map(|i| {
                Some(match v {
                    Some(v) => (v.bit(i) as u8).to_string(),
                    None => format!("{name}{i}"),
                })
            })
            .collect()
    };
    let row_slots = |row: &[(usize, String, bool)], numeric: bool| -> Vec<Option<String>> {
        let mut slots = vec![None; width];
        for (c, t, bit) in row {
            slots[*c] = Some(if numeric { (*bit as u8).to_string() } else { t.clone() });
        }
        slots
    };
    let lead = |r: usize| if r + 1 == n { "+" } else { "" };

    let mut out = String::new();
    let _ = writeln!(out, "{} scheme, n={n}, {mode} operands", m.scheme());
    let _ = writeln!(out, "{}", grid.line("", &operand_slots('b', None), "multiplicand"));
    let _ = writeln!(out, "{}", grid.line("x", &operand_slots('a', None), "multiplier"));
    let _ = writeln!(out, "{}", grid.rule());
    for (r, row) in labels.iter().enumerate() {
        let _ = writeln!(
            out,
            "{}",
            grid.line(lead(r), &row_slots(row, false), &format!("row {r}"))
        );
    }
    let _ = writeln!(out, "{}", grid.rule());
    out.push('\n');

    let bv = format!("(={})", operand_value(b, b_signed));
    let av = format!("(={})", operand_value(a, a_signed));
    let _ = writeln!(out, "{}", grid.line("", &operand_slots('b', Some(b)), &bv));
    let _ = writeln!(out, "{}", grid.line("x", &operand_slots('a', Some(a)), &av));
    let _ = writeln!(out, "{}", grid.rule());
    for (r, row) in labels.iter().enumerate() {
        let _ = writeln!(out, "{}", grid.line(lead(r), &row_slots(row, true), ""));
    }
    let _ = writeln!(out, "{}", grid.rule());
    let sum = BitVec::truncate(width, m.weighted_sum()).expect("product width");
    let value = if mode == Mode::Unsigned {
        sum.decode_unsigned() as i128
    } else {
        sum.decode_signed()
    };
    let sum_slots: Vec<Option<String>> = sum.bits().map(|b| Some((b as u8).to_string())).collect();
    let _ = writeln!(out, "{}", grid.line("", &sum_slots, &format!("(={value})")));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ppgen::{pp_mixed, pp_unsigned};

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    #[test]
    fn long_multiplication_layout() {
        let (a, b) = (bv("0101"), bv("1001"));
        let text = render_tableau(&pp_unsigned(&a, &b).unwrap(), &a, &b, Mode::Unsigned);
        let lines: Vec<&str> = text.lines().collect();
        let numeric = &lines[lines.len() - 9..];
        let squash = |s: &str| s.split_whitespace().collect::<Vec<_>>().join(" ");
        assert_eq!(squash(numeric[0]), "1 0 0 1 (=9)");
        assert_eq!(squash(numeric[1]), "x 0 1 0 1 (=5)");
        assert_eq!(squash(numeric[3]), "1 0 0 1");
        assert_eq!(squash(numeric[4]), "0 0 0 0");
        assert_eq!(squash(numeric[5]), "1 0 0 1");
        assert_eq!(squash(numeric[6]), "+ 0 0 0 0");
        assert_eq!(squash(numeric[8]), "0 0 1 0 1 1 0 1 (=45)");
        // Shifted one column (5 characters) per row.
        assert_eq!(numeric[3].len() - numeric[4].len(), 5);
    }

    #[test]
    fn mixed_shows_folded_pair() {
        let (a, b) = (bv("1111"), bv("1111"));
        let text = render_tableau(&pp_mixed(&a, &b).unwrap(), &a, &b, Mode::Mixed);
        let row0 = text.lines().find(|l| l.ends_with("row 0")).unwrap();
        assert!(row0.contains("~a0b3  a0b3  a0b2"), "{row0}");
        assert!(text.contains("(=-15)"));
    }
}
