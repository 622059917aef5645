use std::io::{self, Write};

use evenhom_core::{AbelianGroup, Pair};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "evenhom/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
}

/// Writes either human-readable text or one JSON object per line.
pub struct Emitter {
    format: Format,
    out: io::Stdout,
}

impl Emitter {
    pub fn new(format: Format) -> Self {
        Emitter {
            format,
            out: io::stdout(),
        }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    /// Emits a record; `text` is printed verbatim in text mode.
    pub fn record(&mut self, kind: &str, fields: Value, text: impl AsRef<str>) {
        let mut lock = self.out.lock();
        let res = match self.format {
            Format::Text => {
                let t = text.as_ref();
                if t.ends_with('\n') || t.is_empty() {
                    write!(lock, "{t}")
                } else {
                    writeln!(lock, "{t}")
                }
            }
            Format::JsonLines => writeln!(lock, "{}", envelope(kind, fields)),
        };
        // A closed stdout is not worth a second error.
        let _ = res;
    }
}

pub fn envelope(kind: &str, fields: Value) -> Value {
    let mut obj = Map::new();
    obj.insert("schema".into(), json!(SCHEMA));
    obj.insert("record".into(), json!(kind));
    if let Value::Object(rest) = fields {
        obj.extend(rest);
    }
    Value::Object(obj)
}

pub fn pair_json(p: Pair) -> Value {
    json!([p.i, p.j])
}

pub fn group_json(g: &AbelianGroup) -> Value {
    json!({
        "free_rank": g.free_rank,
        "torsion": g.torsion_u64(),
        "text": g.to_string(),
    })
}
