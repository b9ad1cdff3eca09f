use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use bwmul::oracle::{verify_exhaustive_modes, verify_random_modes, MAX_EXHAUSTIVE_WIDTH};
use bwmul::render::render_tableau;
use bwmul::{
    compare, emit, encode_signed, encode_unsigned, pp_dedicated, reduce_traced, BitVec, EmitFormat, GateCostModel,
    Mode, ReducerKind, Width,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Unified signed/unsigned/mixed multiplier: verification, netlists, area reports.
#[derive(Parser)]
#[command(name = "bwmul", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the unified datapath against the wide-integer reference.
    Verify(VerifyArgs),
    /// Print the partial-product tableau for one operand pair.
    Trace(TraceArgs),
    /// Write the gate-level netlist of the unified multiplier.
    Emit(EmitArgs),
    /// Compare the gate cost of the unified array with three dedicated ones.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Unsigned,
    Signed,
    Mixed,
    All,
}

impl ModeArg {
    fn modes(self) -> Vec<Mode> {
        match self {
            ModeArg::Unsigned => vec![Mode::Unsigned],
            ModeArg::Signed => vec![Mode::Signed],
            ModeArg::Mixed => vec![Mode::Mixed],
            ModeArg::All => Mode::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SingleMode {
    Unsigned,
    Signed,
    Mixed,
}

impl From<SingleMode> for Mode {
    fn from(m: SingleMode) -> Mode {
        match m {
            SingleMode::Unsigned => Mode::Unsigned,
            SingleMode::Signed => Mode::Signed,
            SingleMode::Mixed => Mode::Mixed,
        }
    }
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum ReducerArg {
    Ripple,
    #[default]
    Wallace,
    Dadda,
}

impl From<ReducerArg> for ReducerKind {
    fn from(r: ReducerArg) -> ReducerKind {
        match r {
            ReducerArg::Ripple => ReducerKind::Ripple,
            ReducerArg::Wallace => ReducerKind::Wallace,
            ReducerArg::Dadda => ReducerKind::Dadda,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    StructuralHdl,
    GateList,
}

impl From<FormatArg> for EmitFormat {
    fn from(f: FormatArg) -> EmitFormat {
        match f {
            FormatArg::StructuralHdl => EmitFormat::StructuralHdl,
            FormatArg::GateList => EmitFormat::GateList,
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Coverage {
    /// Every operand pair (widths up to 12).
    #[arg(long)]
    exhaustive: bool,
    /// COUNT corner-biased random pairs.
    #[arg(long, value_name = "COUNT")]
    random: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    width: usize,
    #[arg(long, value_enum, default_value = "all")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "wallace")]
    reducer: ReducerArg,
    #[command(flatten)]
    coverage: Coverage,
    /// Seed for --random.
    #[arg(long, default_value_t = 0, requires = "random")]
    seed: u64,
}

#[derive(Args)]
struct TraceArgs {
    #[arg(long)]
    width: usize,
    /// Multiplier: decimal (leading '-' for signed operands) or 0x-prefixed raw bits.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Multiplicand, same syntax as --a.
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, value_enum)]
    mode: SingleMode,
    /// Also print the reduction stages of this reducer.
    #[arg(long, value_enum)]
    stages: Option<ReducerArg>,
}

#[derive(Args)]
struct EmitArgs {
    #[arg(long)]
    width: usize,
    #[arg(long, value_enum, default_value = "wallace")]
    reducer: ReducerArg,
    #[arg(long, value_enum, default_value = "structural-hdl")]
    format: FormatArg,
    /// Output file; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Lower adder cells to primitive gates.
    #[arg(long)]
    expand: bool,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    width: usize,
    #[arg(long, value_enum, default_value = "wallace")]
    reducer: ReducerArg,
    /// key=value file overriding the default gate costs.
    #[arg(long)]
    cost_model: Option<PathBuf>,
    /// Also write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

/// Failure kinds mapped onto exit codes.
enum Failure {
    Usage(String),
    Verification,
}

type CmdResult = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn width(n: usize) -> Result<Width, Failure> {
    Width::new(n).map_err(usage)
}

const MAX_LISTED_FAILURES: usize = 50;

fn verify(args: VerifyArgs) -> CmdResult {
    let n = width(args.width)?;
    let modes = args.mode.modes();
    let reducer = args.reducer.into();
    let report = if args.coverage.exhaustive {
        if n.get() > MAX_EXHAUSTIVE_WIDTH {
            return Err(Failure::Usage(format!(
                "--exhaustive supports widths up to {MAX_EXHAUSTIVE_WIDTH}, got {n}; use --random"
            )));
        }
        verify_exhaustive_modes(n, &modes, reducer)
    } else {
        let count = args.coverage.random.expect("clap enforces one coverage flag");
        verify_random_modes(n, &modes, count, args.seed, reducer)
    }
    .map_err(usage)?;
    for f in report.failures.iter().take(MAX_LISTED_FAILURES) {
        println!("FAIL {f}");
    }
    if report.failures.len() > MAX_LISTED_FAILURES {
        println!("... {} more failures", report.failures.len() - MAX_LISTED_FAILURES);
    }
    print!("{}", report.summary());
    println!("{report}");
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

/// Reads an operand: `0x` hex is taken as raw bits, decimal is range-checked
/// against the operand's signedness.
fn parse_operand(text: &str, n: Width, signed: bool, name: &str) -> Result<BitVec, Failure> {
    let bad = |e: &dyn std::fmt::Display| Failure::Usage(format!("--{name} {text}: {e}"));
    if let Some(hex) = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        let raw = u128::from_str_radix(&hex.replace('_', ""), 16).map_err(|e| bad(&e))?;
        return BitVec::from_raw(n.get(), raw).map_err(|e| bad(&e));
    }
    if signed {
        let v: i128 = text.parse().map_err(|e| bad(&e))?;
        encode_signed(v, n).map_err(|e| bad(&e))
    } else {
        if text.starts_with('-') {
            return Err(bad(&"negative value for an unsigned operand"));
        }
        let v: u128 = text.parse().map_err(|e| bad(&e))?;
        encode_unsigned(v, n).map_err(|e| bad(&e))
    }
}

fn trace(args: TraceArgs) -> CmdResult {
    let n = width(args.width)?;
    let mode: Mode = args.mode.into();
    let a = parse_operand(&args.a, n, mode == Mode::Signed, "a")?;
    let b = parse_operand(&args.b, n, mode != Mode::Unsigned, "b")?;
    let m = pp_dedicated(&a, &b, mode).map_err(usage)?;
    print!("{}", render_tableau(&m, &a, &b, mode));
    if let Some(kind) = args.stages {
        let (_, t) = reduce_traced(&m, kind.into());
        print!("{}", t.to_report());
    }
    Ok(())
}

fn write_output(path: Option<&PathBuf>, text: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(format!("stdout: {e}"))),
    }
}

fn emit_cmd(args: EmitArgs) -> CmdResult {
    let n = width(args.width)?;
    let mut nl = bwmul::build_netlist(n, args.reducer.into());
    if args.expand {
        nl = nl.expand();
    }
    write_output(args.out.as_ref(), &emit(&nl, args.format.into()))
}

fn report(args: ReportArgs) -> CmdResult {
    let n = width(args.width)?;
    let model = match &args.cost_model {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            GateCostModel::from_kv(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?
        }
        None => GateCostModel::default(),
    };
    let report = compare(n, args.reducer.into(), &model);
    if let Some(path) = &args.json {
        let json = serde_json::to_string_pretty(&report).map_err(usage)?;
        write_output(Some(path), &(json + "\n"))?;
    }
    print!("{}", report.to_kv());
    for line in model.to_kv().lines() {
        println!("cost.{line}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Trace(a) => trace(a),
        Command::Emit(a) => emit_cmd(a),
        Command::Report(a) => report(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
