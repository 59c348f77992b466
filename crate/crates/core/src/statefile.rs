//! Plain-text state files.
//!
//! ```text
//! dims: 2 2
//! kind: pure
//! # one `re im` pair per line, composite index order
//! 0.7071067811865476 0
//! 0 0
//! 0 0
//! 0.7071067811865476 0
//! ```
//!
//! `kind: mixed` files list the density matrix row-major, `total_dim²`
//! pairs. `#` starts a comment anywhere on a line; blank lines are ignored.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::layout::PartyLayout;
use crate::linalg::{CMatrix, CVector};
use crate::scalar::Real;
use crate::state::{DensityMatrix, QuantumState, StateVector};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses a state file, validating the resulting state.
pub fn parse<T: Real>(text: &str) -> Result<QuantumState<T>> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    });

    let (ln, dims_line) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `dims:` line"))?;
    let dims_str = dims_line
        .strip_prefix("dims:")
        .ok_or_else(|| parse_err(ln, "expected `dims: n_1 n_2 ...`"))?;
    let dims = dims_str
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_err(ln, format!("bad dimension `{t}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let layout = PartyLayout::new(dims).map_err(|e| parse_err(ln, e.to_string()))?;

    let (ln, kind_line) = lines
        .next()
        .ok_or_else(|| parse_err(ln, "missing `kind:` line"))?;
    let kind = kind_line
        .strip_prefix("kind:")
        .map(str::trim)
        .ok_or_else(|| parse_err(ln, "expected `kind: pure|mixed`"))?;
    let expected = match kind {
        "pure" => layout.total_dim(),
        "mixed" => layout.total_dim() * layout.total_dim(),
        other => return Err(parse_err(ln, format!("unknown kind `{other}`"))),
    };

    let mut values: Vec<Complex<T>> = Vec::with_capacity(expected);
    let mut last = ln;
    for (ln, body) in lines {
        last = ln;
        let mut toks = body.split_whitespace();
        let (re, im) = match (toks.next(), toks.next(), toks.next()) {
            (Some(re), Some(im), None) => (re, im),
            _ => return Err(parse_err(ln, "expected `re im`")),
        };
        let re: T = re
            .parse()
            .map_err(|_| parse_err(ln, format!("bad number `{re}`")))?;
        let im: T = im
            .parse()
            .map_err(|_| parse_err(ln, format!("bad number `{im}`")))?;
        values.push(Complex::new(re, im));
    }
    if values.len() != expected {
        return Err(parse_err(
            last,
            format!("expected {expected} entries, found {}", values.len()),
        ));
    }

    if kind == "pure" {
        StateVector::new(layout, CVector::from_vec(values)).map(QuantumState::Pure)
    } else {
        let d = layout.total_dim();
        DensityMatrix::new(layout, CMatrix::from_row_slice(d, d, &values)).map(QuantumState::Mixed)
    }
}

/// Serializes a state; every number uses the shortest round-trip form.
pub fn to_string<T: Real>(state: &QuantumState<T>) -> String {
    let mut out = String::new();
    let dims: Vec<String> = state
        .layout()
        .dims()
        .iter()
        .map(|d| d.to_string())
        .collect();
    let _ = writeln!(out, "dims: {}", dims.join(" "));
    match state {
        QuantumState::Pure(s) => {
            let _ = writeln!(out, "kind: pure");
            for z in s.amplitudes().iter() {
                let _ = writeln!(out, "{} {}", z.re, z.im);
            }
        }
        QuantumState::Mixed(r) => {
            let _ = writeln!(out, "kind: mixed");
            let m = r.entries();
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    let z = m[(i, j)];
                    let _ = writeln!(out, "{} {}", z.re, z.im);
                }
            }
        }
    }
    out
}

pub fn read<T: Real>(path: impl AsRef<Path>) -> Result<QuantumState<T>> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write<T: Real>(path: impl AsRef<Path>, state: &QuantumState<T>) -> Result<()> {
    std::fs::write(path, to_string(state))?;
    Ok(())
}
