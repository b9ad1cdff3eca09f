use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operand width {0} is not supported (expected 2..={max})", max = crate::bitnum::Width::MAX)]
    InvalidWidth(usize),

    #[error("bit vector width {0} is not supported (expected 1..=128)")]
    InvalidBitWidth(usize),

    #[error("value {value} does not fit in {width} bits ({reading})")]
    OutOfRange {
        value: String,
        width: usize,
        reading: &'static str,
    },

    #[error("operand widths differ: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    #[error("mode signals (s={s}, u={u}, m={m}) are not one-hot")]
    NotOneHot { s: bool, u: bool, m: bool },

    #[error("unknown multiplication mnemonic `{0}`")]
    UnknownMnemonic(String),

    #[error("unknown {what} `{value}`")]
    UnknownName { what: &'static str, value: String },

    #[error("invalid bit string `{0}`")]
    InvalidBitString(String),

    #[error("exhaustive verification is limited to n <= {max}, got n = {n}", max = crate::oracle::MAX_EXHAUSTIVE_WIDTH)]
    ExhaustiveTooWide { n: usize },

    #[error("case count must be at least 1")]
    EmptyRun,

    #[error("malformed partial-product matrix: {0}")]
    MalformedMatrix(String),

    #[error("netlist input `{0}` has no value in the assignment")]
    MissingInput(String),

    #[error("`{0}` is not an input of this netlist")]
    UnknownNet(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("cost model: {0}")]
    CostModel(String),
}
