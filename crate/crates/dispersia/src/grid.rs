//! Sampled fields on rectangular position × time grids, with
//! deterministic CSV serialization.
//!
//! Values are stored time-major (all positions at the first time,
//! then all positions at the next), which matches how the solvers
//! produce them and how the space-time CSV is laid out. Every writer
//! emits a `#`-prefixed metadata header describing the medium, the
//! source, and the method, followed by a column-name line and rows
//! with 16 significant digits, so equal grids serialize to identical
//! bytes.

use std::io::{self, Write};

use thiserror::Error;

/// Errors from grid construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    /// An axis had no samples.
    #[error("axis {name} must not be empty")]
    EmptyAxis { name: &'static str },
    /// An axis was not strictly increasing (or contained a non-finite
    /// value) at the given index.
    #[error("axis {name} must be finite and strictly increasing (violated at index {index})")]
    NonMonotonicAxis { name: &'static str, index: usize },
    /// The value buffer does not match the axes.
    #[error("value buffer holds {got} samples but the grid is {nx} positions × {nt} times")]
    DimensionMismatch { got: usize, nx: usize, nt: usize },
}

/// Descriptive labels carried alongside a grid and emitted as CSV
/// metadata: what medium, what source, what method, and any extra
/// key/value pairs (kept in insertion order for determinism).
#[derive(Debug, Clone, PartialEq)]
pub struct GridMeta {
    pub dispersion: String,
    pub source: String,
    pub method: String,
    pub parameters: Vec<(String, String)>,
}

impl GridMeta {
    pub fn new(
        dispersion: impl Into<String>,
        source: impl Into<String>,
        method: impl Into<String>,
    ) -> Self {
        Self {
            dispersion: dispersion.into(),
            source: source.into(),
            method: method.into(),
            parameters: Vec::new(),
        }
    }

    /// Append one metadata key/value pair (builder style).
    pub fn with(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.parameters.push((key.into(), value.into()));
        self
    }

    /// Emit the `#`-prefixed metadata block that precedes every CSV
    /// table: dispersion, source, method, then the extra pairs in
    /// insertion order.
    pub fn write_header<W: Write + ?Sized>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "# dispersion: {}", self.dispersion)?;
        writeln!(out, "# source: {}", self.source)?;
        writeln!(out, "# method: {}", self.method)?;
        for (key, value) in &self.parameters {
            writeln!(out, "# {key}: {value}")?;
        }
        Ok(())
    }
}

/// A field sampled on the tensor grid of `x_values` × `t_values`,
/// stored time-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    x_values: Vec<f64>,
    t_values: Vec<f64>,
    u_values: Vec<f64>,
    meta: GridMeta,
}

fn check_axis(name: &'static str, axis: &[f64]) -> Result<(), GridError> {
    if axis.is_empty() {
        return Err(GridError::EmptyAxis { name });
    }
    if !axis[0].is_finite() {
        return Err(GridError::NonMonotonicAxis { name, index: 0 });
    }
    for (index, pair) in axis.windows(2).enumerate() {
        if !pair[1].is_finite() || pair[1] <= pair[0] {
            return Err(GridError::NonMonotonicAxis {
                name,
                index: index + 1,
            });
        }
    }
    Ok(())
}

impl FieldGrid {
    /// Build a grid, validating that both axes are finite and strictly
    /// increasing and that the time-major value buffer has exactly
    /// one sample per (x, t) pair.
    pub fn new(
        x_values: Vec<f64>,
        t_values: Vec<f64>,
        u_values: Vec<f64>,
        meta: GridMeta,
    ) -> Result<Self, GridError> {
        check_axis("x", &x_values)?;
        check_axis("t", &t_values)?;
        if u_values.len() != x_values.len() * t_values.len() {
            return Err(GridError::DimensionMismatch {
                got: u_values.len(),
                nx: x_values.len(),
                nt: t_values.len(),
            });
        }
        Ok(Self {
            x_values,
            t_values,
            u_values,
            meta,
        })
    }

    pub fn x_values(&self) -> &[f64] {
        &self.x_values
    }

    pub fn t_values(&self) -> &[f64] {
        &self.t_values
    }

    pub fn meta(&self) -> &GridMeta {
        &self.meta
    }

    /// Field value at position index `ix` and time index `it`.
    pub fn value(&self, ix: usize, it: usize) -> f64 {
        self.u_values[it * self.x_values.len() + ix]
    }

    /// All positions at time index `it`.
    pub fn time_slice(&self, it: usize) -> &[f64] {
        let nx = self.x_values.len();
        &self.u_values[it * nx..(it + 1) * nx]
    }

    /// Rows `x,t,u`, iterated time-major, after the metadata header.
    pub fn write_spacetime_csv<W: Write + ?Sized>(&self, out: &mut W) -> io::Result<()> {
        self.meta.write_header(out)?;
        writeln!(out, "x,t,u")?;
        for (it, t) in self.t_values.iter().enumerate() {
            for (ix, x) in self.x_values.iter().enumerate() {
                writeln!(out, "{x:.15e},{t:.15e},{:.15e}", self.value(ix, it))?;
            }
        }
        Ok(())
    }

    /// Rows `x,u` for one time index, with an optional extra column
    /// (e.g. an envelope) of the same length, after the metadata
    /// header.
    pub fn write_snapshot_csv<W: Write + ?Sized>(
        &self,
        out: &mut W,
        it: usize,
        extra: Option<(&str, &[f64])>,
    ) -> io::Result<()> {
        self.meta.write_header(out)?;
        let slice = self.time_slice(it);
        match extra {
            Some((label, column)) => {
                assert_eq!(
                    column.len(),
                    self.x_values.len(),
                    "extra column must have one entry per position"
                );
                writeln!(out, "x,u,{label}")?;
                for (ix, x) in self.x_values.iter().enumerate() {
                    writeln!(out, "{x:.15e},{:.15e},{:.15e}", slice[ix], column[ix])?;
                }
            }
            None => {
                writeln!(out, "x,u")?;
                for (ix, x) in self.x_values.iter().enumerate() {
                    writeln!(out, "{x:.15e},{:.15e}", slice[ix])?;
                }
            }
        }
        Ok(())
    }
}
