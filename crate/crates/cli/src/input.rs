use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use latpoly::constructions::{fixture, fixture_names};
use latpoly::ks_io::{Format, Orientation, ParseError, ParseErrorKind, PolytopeReader};
use latpoly::Polytope;

use crate::CliError;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Auto,
    Ks,
    Native,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrientationArg {
    Auto,
    Rows,
    Columns,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input file, `-` for standard input. May be repeated.
    #[arg(long)]
    pub file: Vec<PathBuf>,
    /// Built-in polytope by name. May be repeated.
    #[arg(long)]
    pub fixture: Vec<String>,
    #[arg(long, value_enum, default_value = "auto")]
    pub format: FormatArg,
    /// How to read KS matrices: rows as points, columns as points, or by shape.
    #[arg(long, value_enum, default_value = "auto")]
    pub orientation: OrientationArg,
    /// Skip malformed records instead of aborting.
    #[arg(long)]
    pub lenient: bool,
}

impl InputArgs {
    pub fn reader(&self, path: &Path) -> Result<PolytopeReader<Box<dyn BufRead>>, CliError> {
        let src: Box<dyn BufRead> = if path.as_os_str() == "-" {
            Box::new(BufReader::new(io::stdin()))
        } else {
            let f = File::open(path)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            Box::new(BufReader::new(f))
        };
        let format = match self.format {
            FormatArg::Auto => Format::Auto,
            FormatArg::Ks => Format::Ks,
            FormatArg::Native => Format::Native,
        };
        let orientation = match self.orientation {
            OrientationArg::Auto => Orientation::Auto,
            OrientationArg::Rows => Orientation::RowsArePoints,
            OrientationArg::Columns => Orientation::ColumnsArePoints,
        };
        Ok(PolytopeReader::new(src)
            .format(format)
            .orientation(orientation)
            .lenient(self.lenient))
    }

    /// Every polytope named on the command line, files first.
    pub fn load_all(&self) -> Result<Vec<Polytope>, CliError> {
        let mut out = Vec::new();
        for path in &self.file {
            for p in self.reader(path)? {
                out.push(p.map_err(|e| parse_error(path, e))?);
            }
        }
        for name in &self.fixture {
            out.push(fixture(name).ok_or_else(|| {
                CliError::input(format!(
                    "unknown fixture {name:?}; known: {}",
                    fixture_names().join(", ")
                ))
            })?);
        }
        Ok(out)
    }

    /// Exactly one polytope.
    pub fn load_one(&self) -> Result<Polytope, CliError> {
        let mut all = self.load_all()?;
        match all.len() {
            1 => Ok(all.pop().expect("one element")),
            0 => Err(CliError::input(
                "no input polytope (use --file or --fixture)",
            )),
            n => Err(CliError::input(format!("expected one polytope, got {n}"))),
        }
    }
}

pub fn parse_error(path: &Path, e: ParseError) -> CliError {
    let msg = format!("{}: {e}", path.display());
    match e.kind {
        ParseErrorKind::Geometry(g) => CliError::from_core(g).context(msg),
        ParseErrorKind::AmbiguousOrientation => CliError::unsupported(msg),
        _ => CliError::input(msg),
    }
}
