//! Text files holding one draw per line.
//!
//! Two layouts are read:
//!
//! * plain: one `0` (black) or `1` (white) per line, optionally preceded by a
//!   single header line such as `x`;
//! * spreadsheet export: comma-separated with a header row, taking the column
//!   named `x` (quotes around fields are ignored), e.g.
//!
//! ```text
//! "","x"
//! "1",0
//! "2",1
//! ```
//!
//! Files are always written in the plain layout without a header, except an
//! empty sequence which is written as the lone header line `x`.

use std::fs;
use std::path::Path;

use crate::error::{CoreError, ParseError, Result};
use crate::model::Color;
use crate::sequence::{ObservationSequence, Provenance};

pub fn read_sequence(path: impl AsRef<Path>) -> Result<ObservationSequence> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| ParseError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let draws = parse_draws(&text, path)?;
    Ok(ObservationSequence::new(
        draws,
        Provenance::Loaded {
            path: path.to_path_buf(),
        },
    ))
}

pub fn write_sequence(seq: &ObservationSequence, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render_sequence(seq)).map_err(|e| CoreError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Plain layout, newline-terminated.
pub fn render_sequence(seq: &ObservationSequence) -> String {
    if seq.is_empty() {
        return "x\n".to_string();
    }
    let mut out = String::with_capacity(seq.len() * 2);
    for c in seq.draws() {
        out.push(char::from(b'0' + c.code()));
        out.push('\n');
    }
    out
}

/// Parses file contents; `path` is only used in error messages.
pub fn parse_draws(text: &str, path: &Path) -> Result<Vec<Color>, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let Some((first_no, first)) = lines.next() else {
        return Err(ParseError::Empty {
            path: path.to_path_buf(),
        });
    };

    if first.contains(',') {
        let header: Vec<&str> = first.split(',').map(unquote).collect();
        let column =
            header
                .iter()
                .position(|h| *h == "x")
                .ok_or_else(|| ParseError::MissingColumn {
                    path: path.to_path_buf(),
                    line: first_no,
                })?;
        lines
            .map(|(no, line)| {
                let fields: Vec<&str> = line.split(',').map(unquote).collect();
                if fields.len() != header.len() {
                    return Err(ParseError::ColumnCount {
                        path: path.to_path_buf(),
                        line: no,
                        got: fields.len(),
                        expected: header.len(),
                    });
                }
                parse_token(fields[column], no, path)
            })
            .collect()
    } else {
        let mut draws = Vec::new();
        if let Ok(c) = parse_token(unquote(first), first_no, path) {
            draws.push(c);
        }
        for (no, line) in lines {
            draws.push(parse_token(unquote(line), no, path)?);
        }
        Ok(draws)
    }
}

fn unquote(field: &str) -> &str {
    let f = field.trim();
    f.strip_prefix('"')
        .and_then(|s| s.strip_suffix('"'))
        .unwrap_or(f)
}

fn parse_token(token: &str, line: usize, path: &Path) -> Result<Color, ParseError> {
    match token {
        "0" => Ok(Color::Black),
        "1" => Ok(Color::White),
        _ => Err(ParseError::BadToken {
            path: path.to_path_buf(),
            line,
            token: token.to_string(),
        }),
    }
}
