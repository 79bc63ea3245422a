//! Tables and their CSV/JSON serialisation.

use serde_json::{json, Map, Number, Value};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
    /// Not applicable for this row.
    Empty,
}

/// Twelve significant digits, the fixed output precision.
pub fn format_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.11e}")
    } else {
        v.to_string()
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format_number(*v),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // round through the printed form so both formats carry the same digits
            Cell::Num(v) => format_number(*v)
                .parse::<f64>()
                .ok()
                .and_then(Number::from_f64)
                .map_or(Value::Null, Value::Number),
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

/// A result table with `key = value` metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            metadata: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    /// `#`-prefixed metadata, a header row, then comma-separated rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"config": {...}, "columns": [...], "rows": [[...], ...]}`.
    pub fn to_json(&self) -> String {
        let config: Map<String, Value> = self.metadata.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let doc = json!({ "config": config, "columns": self.columns, "rows": rows });
        let mut text = serde_json::to_string_pretty(&doc).expect("table values serialise");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(vec!["B0", "τ", "F"]);
        t.metadata.push(("system".into(), "ho".into()));
        t.rows.push(vec![Cell::Num(0.5), Cell::Num(1.0 / 3.0), Cell::Empty]);
        t.rows
            .push(vec![Cell::Int(2), Cell::Bool(true), Cell::Text("x".into())]);
        t
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "# system = ho");
        assert_eq!(lines[1], "B0,τ,F");
        assert_eq!(lines[2], "5.00000000000e-1,3.33333333333e-1,");
        assert_eq!(lines[3], "2,true,x");
    }

    #[test]
    fn json_layout() {
        let v: Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(v["config"]["system"], "ho");
        assert_eq!(v["columns"][1], "τ");
        assert_eq!(v["rows"][0][1].as_f64().unwrap(), 0.333333333333);
        assert!(v["rows"][0][2].is_null());
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_number(std::f64::consts::PI), "3.14159265359e0");
        assert_eq!(format_number(-1.0e-20), "-1.00000000000e-20");
        assert_eq!(format_number(f64::NAN), "NaN");
    }
}
