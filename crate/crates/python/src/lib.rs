//! Python bindings. Operands are Python ints: negative values are encoded in
//! two's complement, non-negative values are taken as raw bits and must fit
//! the width. Products and results come back as raw unsigned ints.

use std::collections::HashMap;

use ::bwmul as core;
use core::oracle::{verify_exhaustive_modes, verify_random_modes, VerifyReport};
use core::{BitVec, EmitFormat, Mode, MulInstruction, MulOp, ReducerKind, Width};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn width(n: usize) -> PyResult<Width> {
    Width::new(n).map_err(err)
}

fn operand(value: i128, n: Width) -> PyResult<BitVec> {
    if value < 0 {
        core::encode_signed(value, n).map_err(err)
    } else {
        BitVec::from_raw(n.get(), value as u128).map_err(err)
    }
}

fn mode(name: &str) -> PyResult<Mode> {
    name.parse().map_err(err)
}

fn modes(name: &str) -> PyResult<Vec<Mode>> {
    if name == "all" {
        Ok(Mode::ALL.to_vec())
    } else {
        Ok(vec![mode(name)?])
    }
}

fn reducer(name: &str) -> PyResult<ReducerKind> {
    name.parse().map_err(err)
}

/// Bit string (MSB first) of `value` at `width` bits.
#[pyfunction]
fn encode(value: i128, width: usize) -> PyResult<String> {
    Ok(operand(value, self::width(width)?)?.to_string())
}

/// Unsigned value of an MSB-first bit string.
#[pyfunction]
fn decode_unsigned(bits: &str) -> PyResult<u128> {
    Ok(bits.parse::<BitVec>().map_err(err)?.decode_unsigned())
}

/// Two's complement value of an MSB-first bit string.
#[pyfunction]
fn decode_signed(bits: &str) -> PyResult<i128> {
    Ok(bits.parse::<BitVec>().map_err(err)?.decode_signed())
}

/// A partial-product matrix for one operand pair.
#[pyclass(name = "PPMatrix", frozen)]
struct PyPPMatrix {
    inner: core::PPMatrix,
    a: BitVec,
    b: BitVec,
    mode: Mode,
}

#[pymethods]
impl PyPPMatrix {
    /// Rows of `(column, bit, term)` cells.
    fn rows(&self) -> Vec<Vec<(usize, bool, String)>> {
        self.inner
            .rows()
            .iter()
            .map(|r| r.iter().map(|c| (c.column, c.bit, c.term.to_string())).collect())
            .collect()
    }

    fn weighted_sum(&self) -> u128 {
        self.inner.weighted_sum()
    }

    fn column_heights(&self) -> Vec<usize> {
        self.inner.column_heights()
    }

    #[pyo3(signature = (reducer = "wallace"))]
    fn reduce(&self, reducer: &str) -> PyResult<u128> {
        Ok(core::reduce(&self.inner, self::reducer(reducer)?).raw())
    }

    /// Line-oriented report of the reduction stages.
    #[pyo3(signature = (reducer = "wallace"))]
    fn trace(&self, reducer: &str) -> PyResult<String> {
        Ok(core::reduce_traced(&self.inner, self::reducer(reducer)?).1.to_report())
    }

    fn render(&self) -> String {
        core::render::render_tableau(&self.inner, &self.a, &self.b, self.mode)
    }

    fn __len__(&self) -> usize {
        self.inner.rows().len()
    }
}

/// Partial products of multiplier `a` and multiplicand `b`, from the unified
/// array (default) or the dedicated scheme for `mode`.
#[pyfunction]
#[pyo3(signature = (a, b, width, mode, unified = true))]
fn pp(a: i128, b: i128, width: usize, mode: &str, unified: bool) -> PyResult<PyPPMatrix> {
    let n = self::width(width)?;
    let (a, b, mode) = (operand(a, n)?, operand(b, n)?, self::mode(mode)?);
    let inner = if unified {
        core::pp_unified(&a, &b, mode.signals())
    } else {
        core::pp_dedicated(&a, &b, mode)
    }
    .map_err(err)?;
    Ok(PyPPMatrix { inner, a, b, mode })
}

/// Full `2*width`-bit product through the unified datapath.
#[pyfunction]
#[pyo3(signature = (rs1, rs2, width, mode, reducer = "wallace"))]
fn execute_full(rs1: i128, rs2: i128, width: usize, mode: &str, reducer: &str) -> PyResult<u128> {
    let n = self::width(width)?;
    let p = core::execute_full(
        &operand(rs1, n)?,
        &operand(rs2, n)?,
        self::mode(mode)?.signals(),
        self::reducer(reducer)?,
    )
    .map_err(err)?;
    Ok(p.raw())
}

/// Result register of an RV32M-style multiply (`mul`, `mulh`, `mulhu`, `mulhsu`).
#[pyfunction]
#[pyo3(signature = (op, rs1, rs2, width = 32, reducer = "wallace"))]
fn execute(op: &str, rs1: i128, rs2: i128, width: usize, reducer: &str) -> PyResult<u128> {
    let n = self::width(width)?;
    let inst =
        MulInstruction::new(op.parse::<MulOp>().map_err(err)?, operand(rs1, n)?, operand(rs2, n)?).map_err(err)?;
    Ok(core::execute(&inst, self::reducer(reducer)?).map_err(err)?.raw())
}

/// Reference product of multiplier `a` and multiplicand `b`, mod `2^(2*width)`.
#[pyfunction]
fn ref_product(a: i128, b: i128, width: usize, mode: &str) -> PyResult<u128> {
    let n = self::width(width)?;
    Ok(core::ref_product(&operand(a, n)?, &operand(b, n)?, self::mode(mode)?)
        .map_err(err)?
        .raw())
}

fn report_dict<'py>(py: Python<'py>, r: &VerifyReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("width", r.n.get())?;
    d.set_item("reducer", r.reducer.name())?;
    d.set_item("subjects", r.subjects.iter().map(|s| s.to_string()).collect::<Vec<_>>())?;
    d.set_item("seed", r.seed)?;
    d.set_item("total_cases", r.total_cases)?;
    d.set_item("failures", r.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>())?;
    d.set_item("elapsed_s", r.elapsed.as_secs_f64())?;
    d.set_item("passed", r.passed())?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (width, mode = "all", reducer = "wallace"))]
fn verify_exhaustive<'py>(py: Python<'py>, width: usize, mode: &str, reducer: &str) -> PyResult<Bound<'py, PyDict>> {
    let (n, modes, kind) = (self::width(width)?, modes(mode)?, self::reducer(reducer)?);
    let r = py.detach(|| verify_exhaustive_modes(n, &modes, kind)).map_err(err)?;
    report_dict(py, &r)
}

#[pyfunction]
#[pyo3(signature = (width, count, seed = 0, mode = "all", reducer = "wallace"))]
fn verify_random<'py>(
    py: Python<'py>,
    width: usize,
    count: u64,
    seed: u64,
    mode: &str,
    reducer: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let (n, modes, kind) = (self::width(width)?, modes(mode)?, self::reducer(reducer)?);
    let r = py
        .detach(|| verify_random_modes(n, &modes, count, seed, kind))
        .map_err(err)?;
    report_dict(py, &r)
}

/// Area comparison under the default gate-cost model, as key/value pairs.
#[pyfunction]
#[pyo3(signature = (width, reducer = "wallace"))]
fn compare(width: usize, reducer: &str) -> PyResult<HashMap<String, String>> {
    let r = core::compare(
        self::width(width)?,
        self::reducer(reducer)?,
        &core::GateCostModel::default(),
    );
    Ok(r.to_kv()
        .lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect())
}

/// Gate-level netlist of the unified multiplier.
#[pyclass(name = "Netlist", frozen)]
struct PyNetlist {
    inner: core::Netlist,
}

#[pymethods]
impl PyNetlist {
    #[new]
    #[pyo3(signature = (width, reducer = "wallace", expand = false))]
    fn new(width: usize, reducer: &str, expand: bool) -> PyResult<Self> {
        let nl = core::build_netlist(self::width(width)?, self::reducer(reducer)?);
        Ok(PyNetlist {
            inner: if expand { nl.expand() } else { nl },
        })
    }

    /// Text in `"structural-hdl"` or `"gate-list"` format.
    #[pyo3(signature = (format = "structural-hdl"))]
    fn emit(&self, format: &str) -> PyResult<String> {
        Ok(core::emit(&self.inner, format.parse::<EmitFormat>().map_err(err)?))
    }

    fn gate_counts(&self) -> HashMap<String, usize> {
        self.inner
            .gate_counts()
            .into_iter()
            .map(|(k, c)| (k.name().to_string(), c))
            .collect()
    }

    fn inputs(&self) -> Vec<String> {
        self.inner.inputs.clone()
    }

    fn depth(&self) -> usize {
        self.inner.depth()
    }

    /// Product of multiplier `a` and multiplicand `b` in `mode`.
    fn eval(&self, a: i128, b: i128, mode: &str) -> PyResult<u128> {
        let n = self.inner.n;
        let p = self
            .inner
            .eval_operands(&operand(a, n)?, &operand(b, n)?, self::mode(mode)?.signals())
            .map_err(err)?;
        Ok(p.raw())
    }

    fn __len__(&self) -> usize {
        self.inner.gates.len()
    }
}

#[pymodule]
#[pyo3(name = "bwmul")]
fn bwmul_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(encode, m)?)?;
    m.add_function(wrap_pyfunction!(decode_unsigned, m)?)?;
    m.add_function(wrap_pyfunction!(decode_signed, m)?)?;
    m.add_function(wrap_pyfunction!(pp, m)?)?;
    m.add_function(wrap_pyfunction!(execute_full, m)?)?;
    m.add_function(wrap_pyfunction!(execute, m)?)?;
    m.add_function(wrap_pyfunction!(ref_product, m)?)?;
    m.add_function(wrap_pyfunction!(verify_exhaustive, m)?)?;
    m.add_function(wrap_pyfunction!(verify_random, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_class::<PyPPMatrix>()?;
    m.add_class::<PyNetlist>()?;
    Ok(())
}
