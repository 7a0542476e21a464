//! Text formats for polytopes.
//!
//! **Kreuzer–Skarke / PALP matrices.** A record is a header line with two
//! integers `r c` and an optional annotation, followed by `r` rows of `c`
//! integers. If `r < c` the columns are the points, if `r > c` the rows
//! are. A square matrix is tried both ways and accepted only if exactly one
//! reading is full-dimensional. Blank lines between records are ignored.
//!
//! **Native.** One polytope per line:
//!
//! ```text
//! d n x_11 ... x_1d x_21 ... x_nd
//! ```
//!
//! with the `n` vertices in lexicographic order. Blank lines and lines
//! starting with `#` are skipped.
//!
//! Both readers accept `-` and `−` (U+2212) as minus signs and LF or CRLF
//! line endings.

use std::io::BufRead;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::error::Error;
use crate::polytope::Polytope;
use crate::{IntMatrix, LatticePoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("read failed: {0}")]
    Io(String),
    #[error("malformed header")]
    MalformedHeader,
    #[error("not an integer: {0:?}")]
    BadInteger(String),
    #[error("expected {expected} entries, found {got}")]
    MatrixShapeMismatch { expected: usize, got: usize },
    #[error("input ended inside a record")]
    UnexpectedEof,
    #[error("square matrix with no unique full-dimensional reading")]
    AmbiguousOrientation,
    #[error(transparent)]
    Geometry(#[from] Error),
}

/// A parse failure with its 0-based record index and 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("record {record}, line {line}: {kind}")]
pub struct ParseError {
    pub record: usize,
    pub line: usize,
    pub kind: ParseErrorKind,
}

/// One matrix record of a KS file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KsRecord {
    pub header_rows: usize,
    pub header_cols: usize,
    /// Everything after the two header integers, verbatim.
    pub comment: String,
    pub matrix: IntMatrix,
    /// Line number of the header.
    pub line: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Auto,
    ColumnsArePoints,
    RowsArePoints,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    /// Decided from the first nonblank line: exactly two leading integers
    /// means KS, more means native.
    #[default]
    Auto,
    Ks,
    Native,
}

pub fn parse_int(tok: &str) -> Result<BigInt, ParseErrorKind> {
    let bad = || ParseErrorKind::BadInteger(tok.to_string());
    let normalized;
    let s = if let Some(rest) = tok.strip_prefix('−') {
        normalized = format!("-{rest}");
        normalized.as_str()
    } else {
        tok
    };
    // BigInt accepts a leading '+', which no format here uses
    if s.starts_with('+') {
        return Err(bad());
    }
    BigInt::from_str(s).map_err(|_| bad())
}

fn parse_ints(line: &str) -> Result<Vec<BigInt>, ParseErrorKind> {
    line.split_whitespace().map(parse_int).collect()
}

/// A positive integer token at the start of `s`, and the remainder.
fn leading_count(s: &str) -> Option<(usize, &str)> {
    let s = s.trim_start();
    let end = s.find(char::is_whitespace).unwrap_or(s.len());
    let v = s[..end].parse::<usize>().ok().filter(|&v| v > 0)?;
    Some((v, &s[end..]))
}

impl KsRecord {
    /// The polytope spanned by the points of the record.
    pub fn to_polytope(&self, orientation: Orientation) -> Result<Polytope, ParseErrorKind> {
        let rows_as_points = |m: &IntMatrix| Polytope::new((0..m.rows()).map(|i| m.row_point(i)));
        let (r, c) = (self.header_rows, self.header_cols);
        let p = match orientation {
            Orientation::RowsArePoints => rows_as_points(&self.matrix)?,
            Orientation::ColumnsArePoints => rows_as_points(&self.matrix.transpose())?,
            Orientation::Auto if r > c => rows_as_points(&self.matrix)?,
            Orientation::Auto if r < c => rows_as_points(&self.matrix.transpose())?,
            Orientation::Auto => {
                match (
                    rows_as_points(&self.matrix),
                    rows_as_points(&self.matrix.transpose()),
                ) {
                    (Ok(p), Err(_)) | (Err(_), Ok(p)) => p,
                    _ => return Err(ParseErrorKind::AmbiguousOrientation),
                }
            }
        };
        Ok(p)
    }
}

/// Streaming reader over either format, one polytope per item.
///
/// In strict mode the first error is returned and iteration stops. In
/// lenient mode bad records are logged and skipped.
pub struct PolytopeReader<R> {
    input: R,
    format: Format,
    orientation: Orientation,
    lenient: bool,
    line_no: usize,
    record: usize,
    pending: Option<String>,
    done: bool,
    skipped: usize,
}

impl<R: BufRead> PolytopeReader<R> {
    pub fn new(input: R) -> Self {
        PolytopeReader {
            input,
            format: Format::Auto,
            orientation: Orientation::Auto,
            lenient: false,
            line_no: 0,
            record: 0,
            pending: None,
            done: false,
            skipped: 0,
        }
    }

    pub fn format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }

    pub fn orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn lenient(mut self, lenient: bool) -> Self {
        self.lenient = lenient;
        self
    }

    /// Records skipped so far in lenient mode.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    fn err(&self, line: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            record: self.record,
            line,
            kind,
        }
    }

    /// Next line with content, trimmed, and its number.
    fn next_line(&mut self) -> Result<Option<(usize, String)>, ParseError> {
        if let Some(l) = self.pending.take() {
            return Ok(Some((self.line_no, l)));
        }
        loop {
            let mut buf = String::new();
            let n = self
                .input
                .read_line(&mut buf)
                .map_err(|e| self.err(self.line_no + 1, ParseErrorKind::Io(e.to_string())))?;
            if n == 0 {
                return Ok(None);
            }
            self.line_no += 1;
            let t = buf.trim();
            if t.is_empty() || (self.format == Format::Native && t.starts_with('#')) {
                continue;
            }
            return Ok(Some((self.line_no, t.to_string())));
        }
    }

    fn detect(&mut self) -> Result<(), ParseError> {
        if self.format != Format::Auto {
            return Ok(());
        }
        // comments are only meaningful in native files
        self.format = Format::Native;
        let Some((_, line)) = self.next_line()? else {
            return Ok(());
        };
        let leading = line
            .split_whitespace()
            .take_while(|t| parse_int(t).is_ok())
            .count();
        if leading == 2 {
            self.format = Format::Ks;
        }
        self.pending = Some(line);
        Ok(())
    }

    /// The next raw KS record.
    pub fn next_ks_record(&mut self) -> Option<Result<KsRecord, ParseError>> {
        let (line_no, header) = match self.next_line() {
            Ok(Some(x)) => x,
            Ok(None) => return None,
            Err(e) => return Some(Err(e)),
        };
        Some(self.read_ks_body(line_no, &header))
    }

    fn read_ks_body(&mut self, line_no: usize, header: &str) -> Result<KsRecord, ParseError> {
        let malformed = || self.err(line_no, ParseErrorKind::MalformedHeader);
        let (r, rest) = leading_count(header).ok_or_else(malformed)?;
        let (c, rest) = leading_count(rest).ok_or_else(malformed)?;
        let comment = rest.trim().to_string();
        let mut data = Vec::with_capacity(r * c);
        for _ in 0..r {
            let (ln, row) = self
                .next_line()?
                .ok_or_else(|| self.err(self.line_no, ParseErrorKind::UnexpectedEof))?;
            let vals = parse_ints(&row).map_err(|k| self.err(ln, k))?;
            if vals.len() != c {
                return Err(self.err(
                    ln,
                    ParseErrorKind::MatrixShapeMismatch {
                        expected: c,
                        got: vals.len(),
                    },
                ));
            }
            data.extend(vals);
        }
        let matrix = IntMatrix::new(r, c, data).expect("shape checked");
        Ok(KsRecord {
            header_rows: r,
            header_cols: c,
            comment,
            matrix,
            line: line_no,
        })
    }

    fn next_polytope(&mut self) -> Option<Result<Polytope, ParseError>> {
        if let Err(e) = self.detect() {
            return Some(Err(e));
        }
        match self.format {
            Format::Ks => {
                let rec = match self.next_ks_record()? {
                    Ok(r) => r,
                    Err(e) => return Some(Err(e)),
                };
                Some(
                    rec.to_polytope(self.orientation)
                        .map_err(|k| self.err(rec.line, k)),
                )
            }
            _ => {
                let (ln, line) = match self.next_line() {
                    Ok(Some(x)) => x,
                    Ok(None) => return None,
                    Err(e) => return Some(Err(e)),
                };
                Some(read_native(&line).map_err(|k| self.err(ln, k)))
            }
        }
    }
}

impl<R: BufRead> Iterator for PolytopeReader<R> {
    type Item = Result<Polytope, ParseError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if self.done {
                return None;
            }
            let item = self.next_polytope();
            match item {
                None => {
                    self.done = true;
                    return None;
                }
                Some(Ok(p)) => {
                    self.record += 1;
                    return Some(Ok(p));
                }
                Some(Err(e)) => {
                    self.record += 1;
                    let fatal = matches!(e.kind, ParseErrorKind::Io(_));
                    if self.lenient && !fatal {
                        log::warn!("skipping {e}");
                        self.skipped += 1;
                        continue;
                    }
                    self.done = true;
                    return Some(Err(e));
                }
            }
        }
    }
}

/// Polytopes from KS-format text.
pub fn parse_ks<R: BufRead>(input: R) -> PolytopeReader<R> {
    PolytopeReader::new(input).format(Format::Ks)
}

/// The native one-line form of `p`.
pub fn write_native(p: &Polytope) -> String {
    let mut out = format!("{} {}", p.dim(), p.num_vertices());
    for v in p.vertices() {
        for c in v.coords() {
            out.push(' ');
            out.push_str(&c.to_string());
        }
    }
    out
}

/// Parse one native line.
pub fn read_native(line: &str) -> Result<Polytope, ParseErrorKind> {
    let vals = parse_ints(line)?;
    let small = |i: usize| -> Result<usize, ParseErrorKind> {
        vals.get(i)
            .and_then(|v| usize::try_from(v).ok())
            .filter(|&v| v > 0)
            .ok_or(ParseErrorKind::MalformedHeader)
    };
    let (d, n) = (small(0)?, small(1)?);
    let expected = d
        .checked_mul(n)
        .and_then(|x| x.checked_add(2))
        .ok_or(ParseErrorKind::MalformedHeader)?;
    if vals.len() != expected {
        return Err(ParseErrorKind::MatrixShapeMismatch {
            expected: expected - 2,
            got: vals.len() - 2,
        });
    }
    let pts = vals[2..].chunks(d).map(|c| LatticePoint::new(c.to_vec()));
    Ok(Polytope::new(pts)?)
}

/// Polytopes from native-format text.
pub fn read_native_stream<R: BufRead>(input: R) -> PolytopeReader<R> {
    PolytopeReader::new(input).format(Format::Native)
}
