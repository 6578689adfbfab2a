use clap::Parser;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use surfkit::cli_io::{execute, Cli, CliError};
use surfkit::curve_calculus::CurveCalculus;
use surfkit::mapping_class::MappingClassWord;
use surfkit::pants_trivalent::verify_quotient_connectivity;
use surfkit::surface_group::{is_conjugate as conjugate, GroupWord};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Runs a command-line invocation (without the program name) and returns its output.
#[pyfunction]
fn run(args: Vec<String>) -> PyResult<String> {
    let cli = Cli::try_parse_from(std::iter::once("surfkit".to_string()).chain(args)).map_err(value_err)?;
    execute(&cli).map_err(|e| match e {
        CliError::Io { .. } => PyOSError::new_err(e.to_string()),
        other => value_err(other),
    })
}

/// Whether two words in the surface group of the given genus are conjugate.
#[pyfunction]
fn is_conjugate(genus: u32, u: &str, v: &str) -> PyResult<bool> {
    let u = GroupWord::parse(genus, u).map_err(value_err)?;
    let v = GroupWord::parse(genus, v).map_err(value_err)?;
    conjugate(&u, &v).map_err(value_err)
}

/// Geometric intersection number of two curves written `name` or `name@word`.
#[pyfunction]
fn intersection(genus: u32, c1: &str, c2: &str) -> PyResult<usize> {
    let calc = CurveCalculus::new(genus).map_err(value_err)?;
    let curve = |s: &str| -> PyResult<_> {
        let (name, word) = s.split_once('@').unwrap_or((s, ""));
        let prefix = MappingClassWord::parse(genus, word).map_err(value_err)?;
        calc.curve(name.trim(), &prefix).map_err(value_err)
    };
    Ok(calc.intersection(&curve(c1)?, &curve(c2)?))
}

/// Number of trivalent graphs with `k` vertices, whether their shift graph is connected, and its diameter.
#[pyfunction]
fn pants_quotient(k: usize) -> PyResult<(usize, bool, usize)> {
    let r = verify_quotient_connectivity(k).map_err(value_err)?;
    Ok((r.classes, r.connected, r.diameter))
}

#[pymodule]
fn surfkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(is_conjugate, m)?)?;
    m.add_function(wrap_pyfunction!(intersection, m)?)?;
    m.add_function(wrap_pyfunction!(pants_quotient, m)?)?;
    Ok(())
}
