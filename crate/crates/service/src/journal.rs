//! Append-only session journal.
//!
//! One event per line, fields separated by a single tab:
//!
//! ```text
//! create   <id> <mode> <secret box or -> <balls per box> <created, unix ms>
//! observe  <id> <B|W>
//! undo     <id>
//! reveal   <id>
//! ```
//!
//! `mode` is `random-secret`, `chosen-secret` or `no-secret`. Blank lines and
//! lines starting with `#` are ignored. Replaying the file in order rebuilds
//! every session.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use sixbox_core::Color;

use crate::session::Mode;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Event {
    Create {
        id: String,
        mode: Mode,
        secret: Option<usize>,
        balls: u32,
        created_at_ms: u64,
    },
    Observe {
        id: String,
        color: Color,
    },
    Undo {
        id: String,
    },
    Reveal {
        id: String,
    },
}

impl Event {
    pub fn to_line(&self) -> String {
        match self {
            Event::Create {
                id,
                mode,
                secret,
                balls,
                created_at_ms,
            } => {
                let secret = secret.map_or_else(|| "-".to_string(), |s| s.to_string());
                format!(
                    "create\t{id}\t{}\t{secret}\t{balls}\t{created_at_ms}",
                    mode.name()
                )
            }
            Event::Observe { id, color } => format!("observe\t{id}\t{}", color.letter()),
            Event::Undo { id } => format!("undo\t{id}"),
            Event::Reveal { id } => format!("reveal\t{id}"),
        }
    }

    pub fn parse(line: &str) -> Result<Event, String> {
        let f: Vec<&str> = line.split('\t').collect();
        let bad = || format!("malformed event {line:?}");
        match (f[0], f.len()) {
            ("create", 6) => {
                let mode = match f[2] {
                    "random-secret" => Mode::RandomSecret,
                    "chosen-secret" => Mode::ChosenSecret,
                    "no-secret" => Mode::NoSecret,
                    _ => return Err(bad()),
                };
                let secret = match f[3] {
                    "-" => None,
                    s => Some(s.parse().map_err(|_| bad())?),
                };
                if secret.is_none() != (mode == Mode::NoSecret) {
                    return Err(bad());
                }
                Ok(Event::Create {
                    id: f[1].to_string(),
                    mode,
                    secret,
                    balls: f[4].parse().map_err(|_| bad())?,
                    created_at_ms: f[5].parse().map_err(|_| bad())?,
                })
            }
            ("observe", 3) => Ok(Event::Observe {
                id: f[1].to_string(),
                color: match f[2] {
                    "B" => Color::Black,
                    "W" => Color::White,
                    _ => return Err(bad()),
                },
            }),
            ("undo", 2) => Ok(Event::Undo {
                id: f[1].to_string(),
            }),
            ("reveal", 2) => Ok(Event::Reveal {
                id: f[1].to_string(),
            }),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug)]
pub struct Journal {
    file: File,
}

impl Journal {
    pub fn open(path: &Path) -> io::Result<Journal> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Journal { file })
    }

    /// Events with their 1-based line numbers; a missing file has none.
    pub fn load(path: &Path) -> io::Result<Vec<(usize, Event)>> {
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e),
        };
        let mut events = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let event = Event::parse(line).map_err(|m| {
                io::Error::new(
                    io::ErrorKind::InvalidData,
                    format!("{}:{}: {m}", path.display(), i + 1),
                )
            })?;
            events.push((i + 1, event));
        }
        Ok(events)
    }

    pub fn append(&mut self, event: &Event) -> io::Result<()> {
        writeln!(self.file, "{}", event.to_line())?;
        self.file.flush()
    }
}
