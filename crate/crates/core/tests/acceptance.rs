//! Acceptance suite. Runs each criterion in sequence (no libtest harness,
//! so wall-clock bounds are not skewed by parallel tests) and prints one
//! PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bwmul::oracle::{verify_exhaustive, verify_instructions, CaseGenerator};
use bwmul::ppgen::{for_each_cell, pp_bit_rows, pp_dedicated};
use bwmul::reduce::{reduce_bit_rows, AdderCells, BitAdders, Phase, Site};
use bwmul::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLEAU_BOUND: Duration = Duration::from_millis(1);
const EXHAUSTIVE_4_BOUND: Duration = Duration::from_secs(1);
const EXHAUSTIVE_8_BOUND: Duration = Duration::from_secs(30);
const RV32_BOUND: Duration = Duration::from_secs(120);
const RV32_CASES_PER_OP: u64 = 1_000_000;
const RV32_SEED: u64 = 0x5eed_0032;
const SAMPLED_PAIRS: usize = 1_000;
const RANDOM_MATRICES: usize = 10_000;
const NETLIST_VECTORS: usize = 100_000;
const AREA_RATIO: (f64, f64) = (2.5, 3.5);

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn w(n: usize) -> Width {
    Width::new(n).unwrap()
}

fn all_pairs(n: usize) -> impl Iterator<Item = (BitVec, BitVec)> {
    let span = 1u128 << n;
    (0..span)
        .flat_map(move |x| (0..span).map(move |y| (BitVec::from_raw(n, x).unwrap(), BitVec::from_raw(n, y).unwrap())))
}

fn ms(d: Duration) -> String {
    format!("{:.3} ms", d.as_secs_f64() * 1e3)
}

fn tableau() -> Outcome {
    let a = BitVec::from_raw(4, 0b0101).unwrap();
    let b = BitVec::from_raw(4, 0b1001).unwrap();
    let start = Instant::now();
    let m = pp_unsigned(&a, &b).unwrap();
    let product = reduce(&m, ReducerKind::Wallace);
    let elapsed = start.elapsed();
    // Each row as printed: its cells MSB first, its shift, its weighted value.
    let rows: Vec<(String, usize, u128)> = m
        .rows()
        .iter()
        .enumerate()
        .map(|(r, cells)| {
            let bits = cells.iter().rev().map(|c| if c.bit { '1' } else { '0' }).collect();
            let shift = cells.iter().map(|c| c.column).min().unwrap();
            (bits, shift, m.row_value(r))
        })
        .collect();
    let expected_rows = [("1001", 0, 9), ("0000", 1, 0), ("1001", 2, 36), ("0000", 3, 0)];
    let shown: Vec<String> = rows.iter().map(|(bits, shift, _)| format!("{bits}<<{shift}")).collect();
    let pass = rows
        .iter()
        .zip(expected_rows)
        .all(|((b, s, v), (eb, es, ev))| b == eb && *s == es && *v == ev)
        && product.to_string() == "00101101"
        && product.decode_unsigned() == 45
        && elapsed < TABLEAU_BOUND;
    outcome(
        pass,
        format!("rows {} product {} in {}", shown.join(" "), product, ms(elapsed)),
    )
}

fn exhaustive(n: usize, reducers: &[ReducerKind], bound: Duration) -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    let mut failures = 0;
    for &r in reducers {
        let report = verify_exhaustive(w(n), r).unwrap();
        cases += report.total_cases;
        failures += report.failures.len();
    }
    let elapsed = start.elapsed();
    outcome(
        failures == 0 && elapsed < bound,
        format!("{cases} cases, {failures} failures in {}", ms(elapsed)),
    )
}

fn structural_equality() -> Outcome {
    let mut checked = 0;
    let mut mismatches = 0;
    let mut check = |a: &BitVec, b: &BitVec| {
        for mode in Mode::ALL {
            let unified = pp_unified(a, b, mode.signals()).unwrap();
            let dedicated = pp_dedicated(a, b, mode).unwrap();
            checked += 1;
            if !unified.same_cells(&dedicated) {
                mismatches += 1;
            }
        }
    };
    for (a, b) in all_pairs(4) {
        check(&a, &b);
    }
    for n in [8, 16, 32] {
        let mut gen = CaseGenerator::new(w(n), 0xc311 + n as u64);
        for _ in 0..SAMPLED_PAIRS {
            let (a, b) = gen.next_pair();
            check(&a, &b);
        }
    }
    outcome(mismatches == 0, format!("{checked} matrices, {mismatches} mismatches"))
}

fn low_half_invariance() -> Outcome {
    let mut failures = 0;
    let mut pairs = 0;
    for (a, b) in all_pairs(8) {
        pairs += 1;
        let lows: Vec<BitVec> = Mode::ALL
            .iter()
            .map(|m| {
                execute_full(&b, &a, m.signals(), ReducerKind::Wallace)
                    .unwrap()
                    .low_half()
            })
            .collect();
        if lows.iter().any(|l| *l != lows[0]) {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("{pairs} pairs, {failures} failures"))
}

fn rv32_differential() -> Outcome {
    let start = Instant::now();
    let report = verify_instructions(w(32), &MulOp::ALL, RV32_CASES_PER_OP, RV32_SEED, ReducerKind::Wallace).unwrap();
    let elapsed = start.elapsed();
    let mut detail = format!("{report} (seed {RV32_SEED:#x}) in {}", ms(elapsed));
    if let Some(f) = report.failures.first() {
        detail.push_str(&format!("; first: {f}"));
    }
    outcome(report.passed() && elapsed < RV32_BOUND, detail)
}

fn reducers_agree(m: &PPMatrix) -> bool {
    let r = reduce(m, ReducerKind::Ripple);
    r == reduce(m, ReducerKind::Wallace) && r == reduce(m, ReducerKind::Dadda)
}

fn reducer_equivalence() -> Outcome {
    let mut cases = 0;
    let mut failures = 0;
    for n in [4, 8] {
        for (a, b) in all_pairs(n) {
            for mode in Mode::ALL {
                cases += 1;
                if !reducers_agree(&pp_unified(&a, &b, mode.signals()).unwrap()) {
                    failures += 1;
                }
            }
        }
    }
    // Arbitrary cell values on the unified layout, not only real products.
    let n = w(32);
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ed0);
    for _ in 0..RANDOM_MATRICES {
        let mut rows = vec![Vec::new(); 32];
        for_each_cell(n, Scheme::Unified, |r, c, _| rows[r].push((c, rng.random::<bool>())));
        let expected = rows
            .iter()
            .flatten()
            .fold(0u128, |acc, &(c, bit)| acc.wrapping_add((bit as u128) << c))
            & (u128::MAX >> 64);
        cases += 1;
        let sums: Vec<u128> = ReducerKind::ALL
            .iter()
            .map(|&k| reduce_bit_rows(rows.clone(), 64, k).raw())
            .collect();
        if sums.iter().any(|&s| s != expected) {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("{cases} matrices, {failures} disagreements"))
}

fn netlist_equivalence() -> Outcome {
    let mut cases = 0;
    let mut failures = 0;
    let mut check = |nl: &Netlist, batch: &[(BitVec, BitVec, ModeSignals)]| {
        let got = nl.eval_batch(batch).unwrap();
        for ((a, b, sig), p) in batch.iter().zip(got) {
            cases += 1;
            if p != execute_full(b, a, *sig, ReducerKind::Wallace).unwrap() {
                failures += 1;
            }
        }
    };
    for n in [2, 4] {
        let nl = build_netlist(w(n), ReducerKind::Wallace);
        let batch: Vec<_> = all_pairs(n)
            .flat_map(|(a, b)| Mode::ALL.map(|m| (a, b, m.signals())))
            .collect();
        check(&nl, &batch);
    }
    let nl = build_netlist(w(32), ReducerKind::Wallace);
    let mut gen = CaseGenerator::new(w(32), 0x0e71);
    let mut rng = ChaCha8Rng::seed_from_u64(0x0e72);
    let batch: Vec<_> = (0..NETLIST_VECTORS)
        .map(|_| {
            let (a, b) = gen.next_pair();
            (a, b, Mode::ALL[rng.random_range(0..3)].signals())
        })
        .collect();
    check(&nl, &batch);
    outcome(failures == 0, format!("{cases} vectors, {failures} failures"))
}

fn area_ratio() -> Outcome {
    let report = compare(w(32), ReducerKind::Wallace, &GateCostModel::default());
    let pass = report.ratio >= AREA_RATIO.0 && report.ratio <= AREA_RATIO.1;
    outcome(
        pass,
        format!(
            "ratio {:.4} (dedicated {} / unified {}); {}",
            report.ratio,
            report.unsigned_cost + report.signed_cost + report.mixed_cost,
            report.unified_cost,
            report.note
        ),
    )
}

fn site() -> Site {
    Site {
        phase: Phase::Final,
        column: 0,
        index: 0,
    }
}

fn sum_carry_table() -> Outcome {
    // (x, y, carry, sum) for x + y, then for NOT x + NOT y.
    let table = [
        [(0, 0, 0, 0), (1, 1, 1, 0)],
        [(0, 1, 0, 1), (1, 0, 0, 1)],
        [(1, 0, 0, 1), (0, 1, 0, 1)],
        [(1, 1, 1, 0), (0, 0, 0, 0)],
    ];
    let mut ok = 0;
    for row in table {
        let matches = row.iter().all(|&(x, y, carry, sum)| {
            let (s, c) = BitAdders.half_add(site(), x == 1, y == 1);
            (c as i32, s as i32) == (carry, sum)
        });
        let (x, y) = (row[0].0 == 1, row[0].1 == 1);
        let same_sum = BitAdders.half_add(site(), x, y).0 == BitAdders.half_add(site(), !x, !y).0;
        if matches && same_sum && row[1].0 == 1 - row[0].0 && row[1].1 == 1 - row[0].1 {
            ok += 1;
        }
    }
    outcome(ok == 4, format!("{ok}/4 rows"))
}

/// Mixed matrix before the fold-in: row 0 carries the inverted
/// `a0b{n-1}` at column `n-1`, plus a separate row holding a single 1 there.
fn mixed_unfolded(a: &BitVec, b: &BitVec) -> Vec<Vec<(usize, bool)>> {
    let n = a.width();
    let mut rows = pp_bit_rows(a, b, Scheme::Mixed, ModeSignals::MIXED).unwrap();
    let corner = a.bit(0) & b.bit(n - 1);
    rows[0].retain(|&(c, _)| c < n - 1);
    rows[0].push((n - 1, !corner));
    rows.push(vec![(n - 1, true)]);
    rows
}

fn mixed_fold_in() -> Outcome {
    // (a0b3, NOT a0b3, carry, sum) of NOT a0b3 + 1.
    let table = [(0, 1, 1, 0), (1, 0, 0, 1)];
    let rows_ok = table.iter().filter(|&&(x, nx, carry, sum)| {
        let (s, c) = BitAdders.half_add(site(), nx == 1, true);
        nx == 1 - x && (c as i32, s as i32) == (carry, sum) && sum == x && carry == nx
    });
    let rows_ok = rows_ok.count();
    let mut mismatches = 0;
    for (a, b) in all_pairs(4) {
        let pre = mixed_unfolded(&a, &b);
        let pre_sum = pre
            .iter()
            .flatten()
            .fold(0u128, |acc, &(c, bit)| acc + ((bit as u128) << c))
            & 0xff;
        let post = pp_mixed(&a, &b).unwrap();
        let expected = (a.decode_unsigned() as i128 * b.decode_signed()) as u128 & 0xff;
        let reduced = reduce_bit_rows(pre, 8, ReducerKind::Wallace).raw();
        if pre_sum != post.weighted_sum() || pre_sum != expected || reduced != expected {
            mismatches += 1;
        }
    }
    outcome(
        rows_ok == 2 && mismatches == 0,
        format!("{rows_ok}/2 rows; 256 pairs, {mismatches} mismatches"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("long-multiplication tableau, a=0101 b=1001, n=4", tableau),
        ("exhaustive n=4, 3 modes x 3 reducers", || {
            exhaustive(4, &ReducerKind::ALL, EXHAUSTIVE_4_BOUND)
        }),
        ("exhaustive n=8, 3 modes, wallace", || {
            exhaustive(8, &[ReducerKind::Wallace], EXHAUSTIVE_8_BOUND)
        }),
        ("unified generator equals dedicated cell for cell", structural_equality),
        ("low half identical across modes, all n=8 pairs", low_half_invariance),
        ("RV32 differential, 1e6 cases per instruction", rv32_differential),
        ("ripple, wallace and dadda agree", reducer_equivalence),
        ("netlist matches bit-level model", netlist_equivalence),
        ("area ratio of three dedicated to unified, n=32", area_ratio),
        ("sum of a pair equals sum of its complements", sum_carry_table),
        ("mixed +1 fold-in", mixed_fold_in),
    ];
    // Optional criterion numbers on the command line select a subset.
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(k + 1)) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let result = run();
        let verdict = if result.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {verdict} {name}: {} [{:.2} s]",
            k + 1,
            result.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!result.pass);
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
