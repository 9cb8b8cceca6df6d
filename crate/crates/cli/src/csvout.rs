//! CSV document assembly.
//!
//! Rows are accumulated in memory and serialized in one pass, so output is a
//! pure function of the computed values: identical configs and seeds produce
//! byte-identical files no matter how the work was scheduled. Floats carry 17
//! significant digits (round-trip safe); complex values are emitted as two
//! columns.

use std::io::Write;
use std::path::Path;

/// An in-memory CSV with a mandatory header row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsvDoc {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvDoc {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(header: I) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(
            row.len(),
            self.header.len(),
            "row width must match the header"
        );
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(&self.header)
            .expect("in-memory write cannot fail");
        for row in &self.rows {
            writer.write_record(row).expect("in-memory write cannot fail");
        }
        writer.into_inner().expect("in-memory flush cannot fail")
    }

    /// Writes to the given path, or stdout when no path is set.
    pub fn write(&self, out: Option<&Path>) -> std::io::Result<()> {
        let bytes = self.to_bytes();
        match out {
            Some(path) => std::fs::write(path, bytes),
            None => std::io::stdout().write_all(&bytes),
        }
    }
}

/// 17 significant digits: 1 before the decimal point, 16 after.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

pub fn show<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

pub fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn joined(flags: &[&'static str]) -> String {
    flags.join(";")
}
