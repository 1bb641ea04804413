//! Output helpers: shortest round-trip float formatting and versioned CSV tables.

use std::fmt::Write as _;

/// First line of every CSV table.
pub const CSV_VERSION_LINE: &str = "# shearlab-csv v1";

/// Shortest decimal string that parses back to the same `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

/// A CSV table with a fixed header; cells are pre-formatted strings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row; panics if its width differs from the header.
    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width does not match header");
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{CSV_VERSION_LINE}").unwrap();
        writeln!(out, "{}", self.header.join(",")).unwrap();
        for row in &self.rows {
            writeln!(out, "{}", row.join(",")).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, 1e-300, -2.5e17, std::f64::consts::FRAC_1_SQRT_2] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(fmt_f64(1.0), "1.0");
    }

    #[test]
    fn renders_version_and_header() {
        let mut t = CsvTable::new(["a", "b"]);
        t.push(vec!["1.0".into(), "true".into()]);
        assert_eq!(t.render(), "# shearlab-csv v1\na,b\n1.0,true\n");
    }
}
