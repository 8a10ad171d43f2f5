//! Output tables. Reals are always written with 17 significant digits so
//! that files round-trip exactly and never depend on locale.

use csv::{Terminator, WriterBuilder};

use crate::config::Format;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Int(i64),
    Real(f64),
    Bool(bool),
}

impl Value {
    fn render(&self) -> String {
        match *self {
            Value::Int(i) => i.to_string(),
            Value::Real(x) => format_real(x),
            Value::Bool(b) => b.to_string(),
        }
    }

    fn render_json(&self) -> String {
        match *self {
            Value::Real(x) if !x.is_finite() => "null".into(),
            _ => self.render(),
        }
    }
}

pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Column-oriented table with optional scalar metadata, written as `#`
/// comment lines in CSV and as a `meta` object in JSON.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub meta: Vec<(&'static str, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}={}\n", v.render()));
        }
        let mut w = WriterBuilder::new()
            .terminator(Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Value::render))
                .expect("in-memory write");
        }
        let bytes = w.into_inner().expect("in-memory flush");
        out.push_str(std::str::from_utf8(&bytes).expect("ASCII output"));
        out
    }

    pub fn to_json(&self) -> String {
        let object = |pairs: &mut dyn Iterator<Item = (&str, &Value)>| {
            let body: Vec<String> = pairs
                .map(|(k, v)| format!("{}: {}", quote(k), v.render_json()))
                .collect();
            format!("{{{}}}", body.join(", "))
        };
        let mut out = String::from("{\n");
        let meta = object(&mut self.meta.iter().map(|(k, v)| (*k, v)));
        out.push_str(&format!("  \"meta\": {meta},\n"));
        let columns: Vec<String> = self.columns.iter().map(|c| quote(c)).collect();
        out.push_str(&format!("  \"columns\": [{}],\n", columns.join(", ")));
        out.push_str("  \"rows\": [");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            out.push_str(&object(&mut self.columns.iter().copied().zip(row)));
        }
        out.push_str(if self.rows.is_empty() {
            "]\n}\n"
        } else {
            "\n  ]\n}\n"
        });
        out
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("string serializes")
}
