//! Number formatting and table serialisation shared by every command.

use serde_json::{json, Map, Value};

/// Rounds to 10 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.9e}").parse().expect("formatted float parses")
}

/// Shortest decimal text of `x` rounded to 10 significant digits. Negative
/// zero prints as `0`.
pub fn real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let r = round_sig(x);
    if r == 0.0 {
        return "0".into();
    }
    let magnitude = r.abs();
    if (1e-6..1e15).contains(&magnitude) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// Fixed decimals, without a sign on zero.
pub fn fixed(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Real(f64),
    Int(u64),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn opt_real(x: Option<f64>) -> Cell {
        x.map_or(Cell::Empty, Cell::Real)
    }

    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Real(x) => real(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Real(x) => serde_json::Number::from_f64(round_sig(*x)).map_or(Value::Null, Value::Number),
            Cell::Int(n) => json!(n),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> anyhow::Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        Ok(w.into_inner()?)
    }

    /// Rows as objects keyed by column name, plus the manifest.
    pub fn to_json(&self, manifest: Value) -> anyhow::Result<Vec<u8>> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .map(|c| c.to_string())
                    .zip(row.iter().map(Cell::json))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "columns": self.columns, "rows": rows, "manifest": manifest });
        let mut out = serde_json::to_vec_pretty(&doc)?;
        out.push(b'\n');
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_use_ten_significant_digits() {
        assert_eq!(real(2.0), "2");
        assert_eq!(real(-0.0), "0");
        assert_eq!(real(1.0 / 3.0), "0.3333333333");
        assert_eq!(real(-2.0 / 3.0), "-0.6666666667");
        assert_eq!(real(5.0 / 12.0), "0.4166666667");
        assert_eq!(real(123456789012.5), "123456789000");
        assert_eq!(real(1e-9), "1e-9");
        assert_eq!(real(0.1 + 0.2), "0.3");
    }

    #[test]
    fn fixed_drops_negative_zero() {
        assert_eq!(fixed(-0.001, 2), "0.00");
        assert_eq!(fixed(-0.284, 2), "-0.28");
        assert_eq!(fixed(0.01174, 4), "0.0117");
    }

    #[test]
    fn csv_quotes_awkward_labels() {
        let mut t = Table::new(&["source", "value"]);
        t.push(vec![Cell::Text("a,b".into()), Cell::Empty]);
        assert_eq!(
            String::from_utf8(t.to_csv().unwrap()).unwrap(),
            "source,value\n\"a,b\",\n"
        );
    }

    #[test]
    fn json_rows_mirror_columns() {
        let mut t = Table::new(&["x", "flag"]);
        t.push(vec![Cell::Real(0.5), Cell::Bool(true)]);
        let v: Value = serde_json::from_slice(&t.to_json(json!({})).unwrap()).unwrap();
        assert_eq!(v["rows"][0]["x"], json!(0.5));
        assert_eq!(v["rows"][0]["flag"], json!(true));
        assert_eq!(v["columns"], json!(["x", "flag"]));
    }
}
