//! Ground truth from native wide-integer arithmetic, and the exhaustive and
//! randomized drivers that check the partial-product path against it.
//!
//! Random cases come from ChaCha8 seeded with the caller's seed, so a report
//! can always be replayed. Work is sharded with rayon; results are merged in
//! case order, so reports do not depend on the worker count.

use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitnum::{BitVec, Width};
use crate::error::{Error, Result};
use crate::mulcore::{execute, MulInstruction, MulOp};
use crate::ppgen::{pp_unified, Mode};
use crate::reduce::{reduce, ReducerKind};

/// Largest width accepted by [`verify_exhaustive`] (`4^12` pairs).
pub const MAX_EXHAUSTIVE_WIDTH: usize = 12;

/// Chunk of random cases generated before a parallel check.
const CHUNK: usize = 1 << 16;

fn same_width(a: &BitVec, b: &BitVec) -> Result<Width> {
    if a.width() != b.width() {
        return Err(Error::WidthMismatch {
            left: a.width(),
            right: b.width(),
        });
    }
    Width::new(a.width())
}

/// The exact product of `a` and `b` read according to `mode` (in `Mixed`, `a`
/// unsigned and `b` signed), as a `2n`-bit two's-complement vector.
pub fn ref_product(a: &BitVec, b: &BitVec, mode: Mode) -> Result<BitVec> {
    let n = same_width(a, b)?;
    let raw = match mode {
        // Exact: both factors are below 2^64.
        Mode::Unsigned => a.decode_unsigned() * b.decode_unsigned(),
        Mode::Signed => (a.decode_signed() * b.decode_signed()) as u128,
        Mode::Mixed => (a.decode_unsigned() as i128 * b.decode_signed()) as u128,
    };
    BitVec::truncate(n.product(), raw)
}

/// RV32M result of `inst`, computed from the register readings directly.
pub fn ref_instruction(inst: &MulInstruction) -> Result<BitVec> {
    let n = same_width(&inst.rs1, &inst.rs2)?;
    let (rs1, rs2) = (&inst.rs1, &inst.rs2);
    let raw = match inst.op {
        MulOp::Mul | MulOp::Mulhu => rs1.decode_unsigned() * rs2.decode_unsigned(),
        MulOp::Mulh => (rs1.decode_signed() * rs2.decode_signed()) as u128,
        MulOp::Mulhsu => (rs1.decode_signed() * rs2.decode_unsigned() as i128) as u128,
    };
    let shift = if inst.op.is_high() { n.get() } else { 0 };
    BitVec::truncate(n.get(), raw >> shift)
}

/// What a verification case exercised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Subject {
    Mode(Mode),
    Instruction(MulOp),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Mode(m) => m.fmt(f),
            Subject::Instruction(op) => op.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub a: BitVec,
    pub b: BitVec,
    pub subject: Subject,
    pub expected: BitVec,
    pub actual: BitVec,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a={} b={} mode={} expected={} actual={}",
            self.a.to_hex(),
            self.b.to_hex(),
            self.subject,
            self.expected.to_hex(),
            self.actual.to_hex()
        )
    }
}

/// Outcome of a verification run. Passes iff `failures` is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub n: Width,
    pub reducer: ReducerKind,
    pub subjects: Vec<Subject>,
    pub seed: Option<u64>,
    pub total_cases: u64,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Same cases and outcomes, ignoring wall-clock time.
    pub fn same_outcome(&self, other: &VerifyReport) -> bool {
        self.n == other.n
            && self.subjects == other.subjects
            && self.seed == other.seed
            && self.total_cases == other.total_cases
            && self.failures == other.failures
    }

    /// One line per failure.
    pub fn failure_lines(&self) -> String {
        let mut out = String::new();
        for f in &self.failures {
            let _ = writeln!(out, "{f}");
        }
        out
    }

    /// Machine-readable `key=value` summary.
    pub fn summary(&self) -> String {
        let subjects: Vec<String> = self.subjects.iter().map(|s| s.to_string()).collect();
        let mut out = String::new();
        let _ = writeln!(out, "width={}", self.n);
        let _ = writeln!(out, "reducer={}", self.reducer);
        let _ = writeln!(out, "modes={}", subjects.join(","));
        match self.seed {
            Some(seed) => {
                let _ = writeln!(out, "seed={seed}");
            }
            None => {
                let _ = writeln!(out, "seed=exhaustive");
            }
        }
        let _ = writeln!(out, "total_cases={}", self.total_cases);
        let _ = writeln!(out, "failures={}", self.failures.len());
        let _ = writeln!(out, "elapsed_s={:.3}", self.elapsed.as_secs_f64());
        let _ = writeln!(out, "status={}", if self.passed() { "pass" } else { "fail" });
        out
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} cases, {} failures", self.total_cases, self.failures.len())
    }
}

/// Seeded operand source. A quarter of the operands are drawn from the
/// corner set {0, 1, 2, 2^(n-1) - 1, 2^(n-1), 2^(n-1) + 1, 2^n - 2, 2^n - 1};
/// the rest are uniform over `[0, 2^n)`.
#[derive(Debug, Clone)]
pub struct CaseGenerator {
    n: Width,
    rng: ChaCha8Rng,
    corners: Vec<u128>,
}

impl CaseGenerator {
    pub const CORNER_WEIGHT: f64 = 0.25;

    pub fn new(n: Width, seed: u64) -> Self {
        let w = n.get();
        let top = if w == 128 { u128::MAX } else { (1u128 << w) - 1 };
        let half = 1u128 << (w - 1);
        let mut corners = vec![0, 1, 2, half - 1, half, half + 1, top - 1, top];
        corners.sort_unstable();
        corners.dedup();
        CaseGenerator {
            n,
            rng: ChaCha8Rng::seed_from_u64(seed),
            corners,
        }
    }

    pub fn corners(&self) -> &[u128] {
        &self.corners
    }

    pub fn next_operand(&mut self) -> BitVec {
        let w = self.n.get();
        let raw = if self.rng.random_bool(Self::CORNER_WEIGHT) {
            self.corners[self.rng.random_range(0..self.corners.len())]
        } else {
            self.rng.random::<u128>()
        };
        BitVec::truncate(w, raw).expect("operand width")
    }

    pub fn next_pair(&mut self) -> (BitVec, BitVec) {
        let a = self.next_operand();
        let b = self.next_operand();
        (a, b)
    }
}

fn check_modes(a: BitVec, b: BitVec, modes: &[Mode], reducer: ReducerKind) -> Vec<Failure> {
    modes
        .iter()
        .filter_map(|&mode| {
            let expected = ref_product(&a, &b, mode).expect("equal widths");
            let m = pp_unified(&a, &b, mode.signals()).expect("equal widths");
            let actual = reduce(&m, reducer);
            (actual != expected).then_some(Failure {
                a,
                b,
                subject: Subject::Mode(mode),
                expected,
                actual,
            })
        })
        .collect()
}

/// Every pair at width `n` in every one-hot mode.
pub fn verify_exhaustive(n: Width, reducer: ReducerKind) -> Result<VerifyReport> {
    verify_exhaustive_modes(n, &Mode::ALL, reducer)
}

/// [`verify_exhaustive`] restricted to `modes`.
pub fn verify_exhaustive_modes(n: Width, modes: &[Mode], reducer: ReducerKind) -> Result<VerifyReport> {
    let w = n.get();
    if w > MAX_EXHAUSTIVE_WIDTH {
        return Err(Error::ExhaustiveTooWide { n: w });
    }
    let start = Instant::now();
    let span = 1u128 << w;
    let failures: Vec<Failure> = (0..span as u64)
        .into_par_iter()
        .flat_map_iter(|x| {
            let a = BitVec::from_raw(w, x as u128).expect("in range");
            (0..span).flat_map(move |y| {
                let b = BitVec::from_raw(w, y).expect("in range");
                check_modes(a, b, modes, reducer)
            })
        })
        .collect();
    Ok(VerifyReport {
        n,
        reducer,
        subjects: modes.iter().copied().map(Subject::Mode).collect(),
        seed: None,
        total_cases: (span * span) as u64 * modes.len() as u64,
        failures,
        elapsed: start.elapsed(),
    })
}

/// `count` corner-biased seeded pairs, each checked in every one-hot mode.
pub fn verify_random(n: Width, count: u64, seed: u64, reducer: ReducerKind) -> Result<VerifyReport> {
    verify_random_modes(n, &Mode::ALL, count, seed, reducer)
}

/// [`verify_random`] restricted to `modes`.
pub fn verify_random_modes(
    n: Width,
    modes: &[Mode],
    count: u64,
    seed: u64,
    reducer: ReducerKind,
) -> Result<VerifyReport> {
    let start = Instant::now();
    let failures = run_random(n, count, seed, |a, b| check_modes(a, b, modes, reducer))?;
    Ok(VerifyReport {
        n,
        reducer,
        subjects: modes.iter().copied().map(Subject::Mode).collect(),
        seed: Some(seed),
        total_cases: count * modes.len() as u64,
        failures,
        elapsed: start.elapsed(),
    })
}

/// Random differential test of the RV32M instructions (`rs1`, `rs2` drawn
/// from the corner-biased generator) against [`ref_instruction`].
pub fn verify_instructions(
    n: Width,
    ops: &[MulOp],
    count: u64,
    seed: u64,
    reducer: ReducerKind,
) -> Result<VerifyReport> {
    let start = Instant::now();
    let failures = run_random(n, count, seed, |rs1, rs2| {
        ops.iter()
            .filter_map(|&op| {
                let inst = MulInstruction { op, rs1, rs2 };
                let expected = ref_instruction(&inst).expect("equal widths");
                let actual = execute(&inst, reducer).expect("equal widths");
                (actual != expected).then_some(Failure {
                    a: rs1,
                    b: rs2,
                    subject: Subject::Instruction(op),
                    expected,
                    actual,
                })
            })
            .collect()
    })?;
    Ok(VerifyReport {
        n,
        reducer,
        subjects: ops.iter().copied().map(Subject::Instruction).collect(),
        seed: Some(seed),
        total_cases: count * ops.len() as u64,
        failures,
        elapsed: start.elapsed(),
    })
}

fn run_random<F>(n: Width, count: u64, seed: u64, check: F) -> Result<Vec<Failure>>
where
    F: Fn(BitVec, BitVec) -> Vec<Failure> + Sync,
{
    if count == 0 {
        return Err(Error::EmptyRun);
    }
    let mut gen = CaseGenerator::new(n, seed);
    let mut failures = Vec::new();
    let mut remaining = count;
    let mut pairs = Vec::with_capacity(CHUNK.min(count as usize));
    while remaining > 0 {
        let take = remaining.min(CHUNK as u64);
        pairs.clear();
        pairs.extend((0..take).map(|_| gen.next_pair()));
        let found: Vec<Failure> = pairs.par_iter().flat_map_iter(|&(a, b)| check(a, b)).collect();
        failures.extend(found);
        remaining -= take;
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitnum::{encode_signed, encode_unsigned};

    fn w(n: usize) -> Width {
        Width::new(n).unwrap()
    }

    #[test]
    fn ref_product_examples() {
        let n = w(4);
        let nine = encode_unsigned(9, n).unwrap();
        let five = encode_unsigned(5, n).unwrap();
        assert_eq!(ref_product(&nine, &five, Mode::Unsigned).unwrap().decode_unsigned(), 45);
        let m1 = encode_signed(-1, n).unwrap();
        assert_eq!(ref_product(&m1, &m1, Mode::Signed).unwrap().decode_unsigned(), 1);
        let fifteen = encode_unsigned(15, n).unwrap();
        let p = ref_product(&fifteen, &m1, Mode::Mixed).unwrap();
        assert_eq!(p.decode_signed(), -15);
        assert_eq!(p.to_hex(), "0xf1");
    }

    #[test]
    fn ref_product_width_mismatch() {
        let a = BitVec::zeros(4).unwrap();
        let b = BitVec::zeros(8).unwrap();
        assert!(matches!(
            ref_product(&a, &b, Mode::Signed),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn ref_product_n64_is_exact() {
        let n = w(64);
        let max = encode_unsigned(u64::MAX as u128, n).unwrap();
        let p = ref_product(&max, &max, Mode::Unsigned).unwrap();
        assert_eq!(p.decode_unsigned(), (u64::MAX as u128) * (u64::MAX as u128));
        let min = encode_signed(i64::MIN as i128, n).unwrap();
        let p = ref_product(&min, &min, Mode::Signed).unwrap();
        assert_eq!(p.decode_signed(), 1i128 << 126);
    }

    #[test]
    fn oracle_self_consistency() {
        let n = w(6);
        for x in 0..32u128 {
            for y in 0..64u128 {
                let a = encode_unsigned(x, n).unwrap();
                let b = encode_unsigned(y, n).unwrap();
                let u = ref_product(&a, &b, Mode::Unsigned).unwrap();
                if y < 32 {
                    assert_eq!(ref_product(&a, &b, Mode::Signed).unwrap(), u);
                    assert_eq!(ref_product(&a, &b, Mode::Mixed).unwrap(), u);
                }
            }
        }
    }

    #[test]
    fn exhaustive_small() {
        let r = verify_exhaustive(w(2), ReducerKind::Dadda).unwrap();
        assert_eq!(r.total_cases, 48);
        assert!(r.passed());
        let r = verify_exhaustive(w(4), ReducerKind::Ripple).unwrap();
        assert_eq!(r.total_cases, 768);
        assert!(r.passed());
        assert_eq!(r.to_string(), "768 cases, 0 failures");
    }

    #[test]
    fn exhaustive_limit() {
        assert_eq!(
            verify_exhaustive(w(13), ReducerKind::Wallace).unwrap_err(),
            Error::ExhaustiveTooWide { n: 13 }
        );
    }

    #[test]
    fn random_is_reproducible() {
        let mut g1 = CaseGenerator::new(w(32), 7);
        let mut g2 = CaseGenerator::new(w(32), 7);
        for _ in 0..100 {
            assert_eq!(g1.next_pair(), g2.next_pair());
        }
        let r1 = verify_random(w(32), 1, 99, ReducerKind::Wallace).unwrap();
        let r2 = verify_random(w(32), 1, 99, ReducerKind::Wallace).unwrap();
        assert!(r1.same_outcome(&r2));
        assert_eq!(r1.total_cases, 3);
        assert!(verify_random(w(8), 0, 1, ReducerKind::Ripple).is_err());
    }

    #[test]
    fn corner_bias() {
        let mut g = CaseGenerator::new(w(32), 3);
        let corners = g.corners().to_vec();
        assert_eq!(corners.len(), 8);
        let hits = (0..20_000)
            .filter(|_| corners.contains(&g.next_operand().decode_unsigned()))
            .count();
        // 25% corner draws, uniform draws essentially never land on a corner.
        assert!((4_500..5_500).contains(&hits), "{hits}");
    }

    #[test]
    fn summary_is_key_value() {
        let r = verify_random(w(8), 10, 5, ReducerKind::Dadda).unwrap();
        let s = r.summary();
        assert!(s.contains("seed=5\n"));
        assert!(s.contains("total_cases=30\n"));
        assert!(s.contains("status=pass\n"));
        assert!(s.lines().all(|l| l.contains('=')));
    }

    #[test]
    fn failure_line_format() {
        let a = BitVec::from_raw(4, 3).unwrap();
        let f = Failure {
            a,
            b: a,
            subject: Subject::Mode(Mode::Signed),
            expected: BitVec::from_raw(8, 9).unwrap(),
            actual: BitVec::from_raw(8, 1).unwrap(),
        };
        assert_eq!(f.to_string(), "a=0x3 b=0x3 mode=signed expected=0x09 actual=0x01");
    }

    #[test]
    fn ref_instruction_examples() {
        let r = |op, a, b| {
            ref_instruction(&MulInstruction::rv32(op, a, b))
                .unwrap()
                .decode_unsigned()
        };
        assert_eq!(r(MulOp::Mulhu, u32::MAX, u32::MAX), 0xFFFF_FFFE);
        assert_eq!(r(MulOp::Mulh, 0x8000_0000, 0x8000_0000), 0x4000_0000);
        assert_eq!(r(MulOp::Mulhsu, u32::MAX, 2), 0xFFFF_FFFF);
        assert_eq!(r(MulOp::Mul, 9, 5), 45);
    }
}
