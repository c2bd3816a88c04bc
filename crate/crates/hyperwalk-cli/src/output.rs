//! Output formatting shared by the subcommands. All numeric output is
//! locale-free; probabilities carry 17 significant digits so repeated runs
//! are byte-identical and regression-diffable.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Csv,
    Json,
}

pub fn fmt_probability(p: f64) -> String {
    format!("{:.16e}", p)
}

/// Quote a CSV field that may contain commas (occupation lists, symmetry
/// sets). The field values never contain quotes themselves.
pub fn csv_quote(field: &str) -> String {
    format!("\"{}\"", field)
}

pub fn write_output(text: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}
